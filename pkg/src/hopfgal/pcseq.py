"""Subgroups of free nilpotent groups via induced triangular sequences.

A subgroup is stored as a sequence of members with strictly increasing
leading letters and positive leading exponents, closed enough that every
subgroup element factors as an ordered product of sequence powers.  That
gives exact membership tests, canonical coset remainders, and integer
coordinates, which the quotient and intersection routines below exploit.

Weight bookkeeping does the pruning: a member with leading letter of
weight w lies in the w-th term of the lower central series, so any
commutator whose leading weights sum past the class is trivial and can
be skipped without computing it.
"""

from __future__ import annotations

from .abelian import FgAbelianGroup
from .errors import (InternalCheckError, NotAbelianError, NotNormalError,
                     NotSubsetError, SizeLimitError, ValidationError)
from .matrices import (HnfSolver, IntMatrix, lattice_intersection,
                       left_kernel, row_space_basis)


def reduce_against(word, members):
    """Divide off leading powers of `members` (ascending leads) from the left.

    Returns (quotients, remainder): word = prod members[i]**q[i] * remainder
    with the remainder's coordinate at each member's leading letter lying
    in [0, leading exponent).
    """
    r = word
    qs = []
    for m in members:
        l, e = m.leading()
        c = r.exps[l]
        q = c // e
        qs.append(q)
        if q:
            r = m.pow(-q).mul(r)
    return qs, r


class PcSubgroup:
    """A subgroup presented by a full triangular member sequence."""

    __slots__ = ("parent", "seq")

    def __init__(self, parent, seq, _checked=False):
        if not _checked:
            raise ValidationError("construct subgroups via induced_sequence")
        self.parent = parent
        self.seq = tuple(seq)

    def reduce(self, word):
        if word.parent is not self.parent:
            raise ValidationError("word from a different ambient group")
        return reduce_against(word, self.seq)

    def remainder(self, word):
        return self.reduce(word)[1]

    def contains(self, word):
        return self.remainder(word).is_identity()

    def coords(self, word):
        qs, r = self.reduce(word)
        if not r.is_identity():
            raise InternalCheckError("coordinates of a non-member")
        return qs

    def is_trivial(self):
        return not self.seq

    def contains_subgroup(self, other):
        return all(self.contains(m) for m in other.seq)

    def leading_weights(self):
        w = self.parent.weights
        return [w[m.leading()[0]] for m in self.seq]

    def __len__(self):
        return len(self.seq)

    def __eq__(self, other):
        return (isinstance(other, PcSubgroup)
                and self.parent is other.parent and self.seq == other.seq)

    def __hash__(self):
        return hash(self.seq)

    def __repr__(self):
        return "PcSubgroup(%d members)" % len(self.seq)


def _canonicalize(F, members):
    """Box-reduce each member's tail against the deeper members."""
    seq = [members[l] for l in sorted(members)]
    for i in range(len(seq) - 2, -1, -1):
        _, r = reduce_against(seq[i], seq[i + 1:])
        seq[i] = r
    return seq


def induced_sequence(F, words):
    """The subgroup generated by `words`, as a full triangular sequence.

    >>> from .freenil import FreeNilGroup
    >>> F = FreeNilGroup(2, 2)
    >>> S = induced_sequence(F, [F.generator(0), F.generator(1)])
    >>> [m.exps for m in S.seq]
    [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    >>> x1, x2 = F.generator(0), F.generator(1)
    >>> T = induced_sequence(F, [x1.pow(2), x2.pow(2), F.word((0, 0, 1))])
    >>> [m.leading() for m in T.seq]
    [(0, 2), (1, 2), (2, 1)]
    """
    members = {}

    def insert(g):
        while not g.is_identity():
            l, e = g.leading()
            if e < 0:
                g = g.inverse()
                e = -e
            m = members.get(l)
            if m is None:
                members[l] = g
                return
            em = m.exps[l]
            q = e // em
            if q:
                g = m.pow(-q).mul(g)
            r = g.exps[l]
            if r:
                # smaller positive lead at the same letter: swap roles
                members[l] = g
                g = m

    for w in words:
        if w.parent is not F:
            raise ValidationError("generator from a different ambient group")
        insert(w)

    weights = F.weights
    while True:
        seq = [members[l] for l in sorted(members)]
        fresh = []
        for i in range(len(seq)):
            wi = weights[seq[i].leading()[0]]
            for j in range(i + 1, len(seq)):
                if wi + weights[seq[j].leading()[0]] > F.nclass:
                    continue
                for a in (seq[i], seq[i].inverse()):
                    for b in (seq[j], seq[j].inverse()):
                        _, r = reduce_against(a.comm(b), seq)
                        if not r.is_identity():
                            fresh.append(r)
        if not fresh:
            break
        for g in fresh:
            insert(g)
    return PcSubgroup(F, _canonicalize(F, members), _checked=True)


def trivial_subgroup(F):
    return PcSubgroup(F, (), _checked=True)


def whole_group(F):
    """The ambient group as a sequence: every letter with exponent one."""
    return PcSubgroup(F, tuple(F.word(_unit(len(F.letters), i))
                               for i in range(len(F.letters))), _checked=True)


def letter_span(F, indices):
    """Subgroup generated by a coordinate-closed set of letters.

    The caller promises the letter set is closed under basic-commutator
    formation inside the basis (true for "every letter touching a given
    generator block" and for "every letter of weight >= w"), which makes
    the unit-exponent sequence full as written.
    """
    return PcSubgroup(F, tuple(F.word(_unit(len(F.letters), i))
                               for i in sorted(indices)), _checked=True)


def derived_subgroup(F):
    """[F, F]: the letters of weight at least two.

    >>> from .freenil import FreeNilGroup
    >>> F = FreeNilGroup(2, 3)
    >>> [m.leading()[0] for m in derived_subgroup(F).seq]
    [2, 3, 4]
    """
    return letter_span(F, [i for i, w in enumerate(F.weights) if w >= 2])


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return e


def _conjugation_closure(F, base, conjugators):
    """Close the subgroup `base` under conjugation by the given words."""
    current = base
    weights = F.weights
    while True:
        fresh = []
        for m in current.seq:
            wm = weights[m.leading()[0]]
            for c in conjugators:
                if wm + weights[c.leading()[0]] > F.nclass:
                    continue
                for by in (c, c.inverse()):
                    _, r = current.reduce(m.conj(by))
                    if not r.is_identity():
                        fresh.append(r)
        if not fresh:
            return current
        current = induced_sequence(F, list(current.seq) + fresh)


def normal_closure(F, words):
    """Normal closure, by iterated conjugation with the ambient generators.

    >>> from .freenil import FreeNilGroup
    >>> F = FreeNilGroup(2, 2)
    >>> x1, x2 = F.generator(0), F.generator(1)
    >>> R = normal_closure(F, [x1.pow(2), x2.pow(2)])
    >>> [m.leading() for m in R.seq]
    [(0, 2), (1, 2), (2, 2)]
    """
    gens = [F.generator(i) for i in range(F.rank)]
    return _conjugation_closure(F, induced_sequence(F, words), gens)


def derived_in(S):
    """[S, S] for a sequence-presented subgroup S."""
    F = S.parent
    weights = F.weights
    comms = []
    for i in range(len(S.seq)):
        wi = weights[S.seq[i].leading()[0]]
        for j in range(i + 1, len(S.seq)):
            if wi + weights[S.seq[j].leading()[0]] > F.nclass:
                continue
            comms.append(S.seq[i].comm(S.seq[j]))
    return _conjugation_closure(F, induced_sequence(F, comms), list(S.seq))


def commutator_subgroup(F, S, T):
    """Normal closure of {[s, t]} over the two member sequences.

    Equals the commutator subgroup [S, T] whenever S and T are normal in
    the ambient group, which holds everywhere this engine uses it.

    >>> from .freenil import FreeNilGroup
    >>> F = FreeNilGroup(2, 2)
    >>> x1, x2 = F.generator(0), F.generator(1)
    >>> R = normal_closure(F, [x1.pow(2), x2.pow(2), F.word((0, 0, 1))])
    >>> RF = commutator_subgroup(F, R, whole_group(F))
    >>> RF.contains(F.word((0, 0, 2)))   # [x1^2, x2] = c^2 in class 2
    True
    >>> RF.contains(F.word((0, 0, 1)))
    False
    """
    weights = F.weights
    comms = []
    for s in S.seq:
        ws = weights[s.leading()[0]]
        for t in T.seq:
            if ws + weights[t.leading()[0]] > F.nclass:
                continue
            comms.append(s.comm(t))
    return normal_closure(F, comms)


def intersect_with_kernel(S, phi):
    """S /\\ Ker(phi), with phi a linear map on weight-one coordinates.

    `phi` is an IntMatrix with one row per ambient generator; an element
    with weight-one vector v is in the kernel iff v * phi = 0.  Because
    the target is torsion free this needs no saturation step.
    """
    F = S.parent
    if phi.rows != F.rank:
        raise ValidationError("phi needs one row per generator")
    if not S.seq:
        return S
    rows = IntMatrix([m.weight_one() for m in S.seq], cols=F.rank).mul(phi)
    combos = left_kernel(rows)
    gens = []
    for x in combos.to_rows():
        g = F.identity()
        for m, c in zip(S.seq, x):
            if c:
                g = g.mul(m.pow(c))
        gens.append(g)
    gens.extend(derived_in(S).seq)
    return induced_sequence(F, gens)


def intersect(S, T):
    """S /\\ T by downward recursion through the class filtration.

    At each level the top-weight letters span a central block Z; members
    leading below the top weight truncate onto full sequences one class
    down, the recursive intersection V is lifted back, and the central
    defects of the two reductions define a homomorphism V -> Z/(Z_S+Z_T)
    whose kernel, corrected by explicit central witnesses, is S /\\ T.
    """
    F = S.parent
    if T.parent is not F:
        raise ValidationError("subgroups of different ambient groups")
    if S.is_trivial() or T.is_trivial():
        return trivial_subgroup(F)
    weights = F.weights
    m_total = len(F.letters)
    top = [i for i in range(m_total) if weights[i] == F.nclass]
    z_offset = m_total - len(top)

    if F.nclass == 1:
        rows_s = IntMatrix([list(m.exps) for m in S.seq], cols=m_total)
        rows_t = IntMatrix([list(m.exps) for m in T.seq], cols=m_total)
        meet = lattice_intersection(rows_s, rows_t)
        return induced_sequence(F, [F.word(r) for r in meet.to_rows()])

    def split(P):
        low = [m for m in P.seq if weights[m.leading()[0]] < F.nclass]
        central = [list(m.exps[z_offset:]) for m in P.seq
                   if weights[m.leading()[0]] == F.nclass]
        return low, IntMatrix(central, cols=len(top))

    s_low, s_lat = split(S)
    t_low, t_lat = split(T)
    low_group = F.truncated()

    def project(ms):
        return PcSubgroup(low_group, [F.truncate_word(m) for m in ms],
                          _checked=True)

    V = intersect(project(s_low), project(t_low))

    def central_defect(word):
        # word lies over a common truncation; after dividing off the
        # below-top members on each side only a central part may remain
        _, rs = reduce_against(word, s_low)
        _, rt = reduce_against(word, t_low)
        for r in (rs, rt):
            if any(r.exps[:z_offset]):
                raise InternalCheckError("reduction left a non-central part")
        return (list(rs.exps[z_offset:]), list(rt.exps[z_offset:]))

    defects = []
    for v in V.seq:
        rs, rt = central_defect(F.lift_word(v))
        defects.append([a - b for a, b in zip(rs, rt)])
    dmat = IntMatrix(defects, cols=len(top))

    lat_basis = row_space_basis(s_lat.stack(t_lat))
    kern = left_kernel(dmat.stack(lat_basis))
    xrows = row_space_basis(
        IntMatrix([k[:len(V.seq)] for k in kern.to_rows()],
                  cols=len(V.seq)))

    combo_gens = []
    for x in xrows.to_rows():
        g = low_group.identity()
        for v, c in zip(V.seq, x):
            if c:
                g = g.mul(v.pow(c))
        combo_gens.append(g)
    combo_gens.extend(derived_in(V).seq)
    M = induced_sequence(low_group, combo_gens)

    stacked = s_lat.stack(t_lat)
    solver = HnfSolver(stacked)
    witnesses = []
    for m in M.seq:
        lifted = F.lift_word(m)
        rs, rt = central_defect(lifted)
        target = [a - b for a, b in zip(rs, rt)]
        x = solver.solve(target)
        if x is None:
            raise InternalCheckError("central defect left the glue lattice")
        a_part = [0] * len(top)
        for coef, row in zip(x[:s_lat.rows], s_lat.to_rows()):
            if coef:
                for k in range(len(top)):
                    a_part[k] += coef * row[k]
        z = [a - r for a, r in zip(a_part, rs)]
        exps = [0] * m_total
        exps[z_offset:] = z
        witnesses.append(lifted.mul(F.word(exps)))

    central_rows = lattice_intersection(s_lat, t_lat)
    for row in central_rows.to_rows():
        exps = [0] * m_total
        exps[z_offset:] = row
        witnesses.append(F.word(exps))
    return induced_sequence(F, witnesses)


def abelian_quotient(N, D):
    """Invariant factors of N/D for D normal in N with N/D abelian.

    >>> from .freenil import FreeNilGroup
    >>> F = FreeNilGroup(2, 2)
    >>> c1 = induced_sequence(F, [F.word((0, 0, 1))])
    >>> c2 = induced_sequence(F, [F.word((0, 0, 2))])
    >>> str(abelian_quotient(c1, c2))
    'Z/2'
    >>> str(abelian_quotient(c1, trivial_subgroup(F)))
    'Z'
    >>> str(abelian_quotient(c1, c1))
    '0'
    """
    F = N.parent
    if D.parent is not F:
        raise ValidationError("subgroups of different ambient groups")
    for d in D.seq:
        if not N.contains(d):
            raise NotSubsetError("denominator is not inside the numerator")
    weights = F.weights
    for d in D.seq:
        wd = weights[d.leading()[0]]
        for n in N.seq:
            if wd + weights[n.leading()[0]] > F.nclass:
                continue
            for by in (n, n.inverse()):
                if not D.contains(d.conj(by)):
                    raise NotNormalError(
                        "denominator is not normal in the numerator")
    t = len(N.seq)
    rel = []
    for i in range(t):
        wi = weights[N.seq[i].leading()[0]]
        for j in range(i + 1, t):
            if wi + weights[N.seq[j].leading()[0]] > F.nclass:
                continue
            plain = N.seq[i].comm(N.seq[j])
            if not D.contains(plain):
                raise NotAbelianError("quotient is not abelian")
            for a in (N.seq[i], N.seq[i].inverse()):
                for b in (N.seq[j], N.seq[j].inverse()):
                    rel.append(N.coords(a.comm(b)))
    for d in D.seq:
        rel.append(N.coords(d))
    return FgAbelianGroup.from_relation_matrix(t, IntMatrix(rel, cols=t))


def materialize_quotient(F, R, max_order=2048):
    """The finite quotient F/R as a multiplication table, via coset reps.

    Canonical remainders are complete coset invariants, so breadth-first
    exploration from the identity enumerates each coset exactly once.
    Raises SizeLimitError if the quotient is infinite or too large.
    """
    from collections import deque

    from .groups import FiniteGroup

    ident = R.remainder(F.identity())
    if not ident.is_identity():
        raise InternalCheckError("identity coset has a nontrivial remainder")
    reps = [F.identity()]
    index = {F.identity().exps: 0}
    steps = []
    for i in range(F.rank):
        steps.append(F.generator(i))
        steps.append(F.generator(i).inverse())
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in steps:
            w = R.remainder(reps[i].mul(g))
            if w.exps not in index:
                if len(reps) >= max_order:
                    raise SizeLimitError(
                        "quotient exceeds %d elements" % max_order)
                index[w.exps] = len(reps)
                reps.append(w)
                queue.append(len(reps) - 1)
    n = len(reps)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            row.append(index[R.remainder(reps[a].mul(reps[b])).exps])
        table.append(row)
    return FiniteGroup(table, validate=False), reps
