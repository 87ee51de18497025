"""Hopf formulae evaluated exactly inside free nilpotent truncations.

For a presentation of a group of nilpotency class <= c, the classical
Hopf quotient ([F,F] /\\ R) / [R,F] can be computed in the free
nilpotent group of class c+1: the omitted part gamma_{c+2}(F) already
lies in [R,F], so nothing is lost.  That gives second homology exactly.

Third homology comes from the two-fold version: the presentation is
squared into a pullback, covered by a bigger free nilpotent group, and
the same kind of quotient is taken over both kernels.  Truncation is
not exact there, and it fails in a specific way: the intersection of
the two kernels at class k admits elements whose defect only shows
above class k (the obstruction word has higher weight).  So the
numerator and denominator are generated one class deeper and then
shadowed down to the working class before the quotient is formed.  No
exactness is claimed even then; the value is recomputed at the next
working class and only reported when two consecutive classes agree.
"""

from __future__ import annotations

import hashlib
import json

from .abelian import PrimeSet, torsion_closure_rows
from .errors import SizeLimitError, ValidationError
from .freenil import FreeNilGroup, NilHom
from .matrices import IntMatrix
from .pcseq import (abelian_quotient, commutator_subgroup, induced_sequence,
                    intersect, intersect_with_kernel, letter_span,
                    normal_closure, whole_group)

DEFAULT_MAX_CLASS = 4
DEFAULT_RANK_CAP = 8


# ---- word expressions ----------------------------------------------------

def _parse_word(text, names):
    """Parse a word over named generators into a small syntax tree.

    Grammar: a word is a sequence of factors; a factor is an atom with an
    optional integer exponent; an atom is a generator name, a
    parenthesized word, or a commutator [u,v] = u^-1 v^-1 u v.  Longest
    declared name wins, so adjacent single-letter generators need no
    separator.
    """
    by_length = sorted(names, key=len, reverse=True)
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and (text[pos].isspace() or text[pos] == "*"):
            pos += 1

    def fail(what):
        raise ValidationError("%s at position %d in %r" % (what, pos, text))

    def atom():
        nonlocal pos
        ch = text[pos]
        if ch == "(":
            pos += 1
            node = word(")")
            pos += 1
            return node
        if ch == "[":
            pos += 1
            left = word(",")
            pos += 1
            right = word("]")
            pos += 1
            return ("comm", left, right)
        for name in by_length:
            if text.startswith(name, pos):
                pos += len(name)
                return ("gen", name)
        fail("unknown generator")

    def integer():
        nonlocal pos
        skip()
        start = pos
        if pos < len(text) and text[pos] in "+-":
            pos += 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start or not text[start:pos].lstrip("+-"):
            fail("expected an exponent")
        return int(text[start:pos])

    def factor():
        nonlocal pos
        node = atom()
        skip()
        if pos < len(text) and text[pos] == "^":
            pos += 1
            node = ("pow", node, integer())
        return node

    def word(closer):
        nonlocal pos
        parts = []
        skip()
        while pos < len(text) and text[pos] != closer:
            parts.append(factor())
            skip()
        if closer and pos >= len(text):
            fail("missing %r" % closer)
        return ("seq", parts)

    tree = word("")
    return tree


def _eval_word(node, gens, F):
    kind = node[0]
    if kind == "gen":
        return gens[node[1]]
    if kind == "seq":
        out = F.identity()
        for part in node[1]:
            out = out.mul(_eval_word(part, gens, F))
        return out
    if kind == "pow":
        return _eval_word(node[1], gens, F).pow(node[2])
    return _eval_word(node[1], gens, F).comm(_eval_word(node[2], gens, F))


# ---- presentations -------------------------------------------------------

class NilPresentation:
    """A finite presentation together with a verified class bound.

    >>> p = NilPresentation(["x", "y"], ["x^2", "y^2", "[x,y]"], 1)
    >>> p.rank
    2
    >>> NilPresentation(["x", "y"], ["x^4", "y^2", "(xy)^2"], 1)
    Traceback (most recent call last):
        ...
    hopfgal.errors.ValidationError: relators do not force nilpotency \
class <= 1
    """

    __slots__ = ("names", "relators", "nclass", "_trees", "_ambients",
                 "_kernels")

    def __init__(self, names, relators, nclass, verify=True):
        names = [str(n) for n in names]
        if not names or len(set(names)) != len(names):
            raise ValidationError("generator names must be distinct")
        if any(not n or n[0] in "0123456789^()[],*-+" or
               any(c.isspace() or c in "^()[],*" for c in n) for n in names):
            raise ValidationError("generator names clash with word syntax")
        if nclass < 1:
            raise ValidationError("class bound must be at least 1")
        self.names = names
        self.relators = [str(r) for r in relators]
        self.nclass = int(nclass)
        self._trees = [_parse_word(r, names) for r in self.relators]
        self._ambients = {}
        self._kernels = {}
        if verify:
            self._verify_class()

    @property
    def rank(self):
        return len(self.names)

    def ambient(self, k):
        """(free nilpotent group of class k, relators evaluated there)."""
        entry = self._ambients.get(k)
        if entry is None:
            F = FreeNilGroup(self.rank, k)
            gens = {n: F.generator(i) for i, n in enumerate(self.names)}
            entry = (F, [_eval_word(t, gens, F) for t in self._trees])
            self._ambients[k] = entry
        return entry

    def kernel_at(self, k):
        """Normal closure of the relators at class k."""
        R = self._kernels.get(k)
        if R is None:
            F, rels = self.ambient(k)
            R = normal_closure(F, rels)
            self._kernels[k] = R
        return R

    def _verify_class(self):
        # class <= c for the presented group means its (c+1)st lower
        # central term dies, i.e. every weight-(c+1) basis letter of the
        # class-(c+1) truncation falls into the relator closure.  For
        # nilpotent groups this is an exact criterion; a non-nilpotent
        # group whose lower central series stalls is outside the scope
        # of truncated computation and cannot be detected here.
        k = self.nclass + 1
        F, _ = self.ambient(k)
        R = self.kernel_at(k)
        for i, w in enumerate(F.weights):
            if w == k and not R.contains(F.word(
                    tuple(1 if j == i else 0 for j in range(len(F.letters))))):
                raise ValidationError(
                    "relators do not force nilpotency class <= %d"
                    % self.nclass)

    def input_digest(self):
        blob = json.dumps({"gens": self.names, "rels": self.relators,
                           "class": self.nclass}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def __repr__(self):
        return "NilPresentation(%r, %r, class=%d)" % (
            self.names, self.relators, self.nclass)


def parse_presentation(text):
    """Read the three-line presentation format.

    >>> parse_presentation("gens: x y\\nrels: x^2, y^2, [x,y]\\nclass: 1")
    NilPresentation(['x', 'y'], ['x^2', 'y^2', '[x,y]'], class=1)
    """
    names = rels = nclass = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            names = line[5:].split()
        elif line.startswith("rels:"):
            rels = [r.strip() for r in line[5:].split(",")]
            # commutator relators contain commas; re-balance brackets
            rels = _rejoin_relators(rels)
        elif line.startswith("class:"):
            nclass = int(line[6:].strip())
        else:
            raise ValidationError("unrecognized line %r" % line)
    if names is None or rels is None or nclass is None:
        raise ValidationError("presentation needs gens:, rels: and class:")
    return NilPresentation(names, rels, nclass)


def _rejoin_relators(pieces):
    out = []
    depth = 0
    for piece in pieces:
        if depth > 0:
            out[-1] = out[-1] + "," + piece
        elif piece:
            out.append(piece)
        depth = out[-1].count("[") - out[-1].count("]") if out else 0
    if depth:
        raise ValidationError("unbalanced commutator brackets")
    return [r for r in out if r]


# ---- presentation cubes --------------------------------------------------

class PresentationCube:
    """A free nilpotent ambient with the kernels of its face maps."""

    __slots__ = ("n", "ambient", "kernels", "provenance")

    def __init__(self, n, ambient, kernels, provenance):
        self.n = n
        self.ambient = ambient
        self.kernels = kernels
        self.provenance = provenance

    def __repr__(self):
        return "PresentationCube(n=%d, rank=%d, class=%d)" % (
            self.n, self.ambient.rank, self.ambient.nclass)


def build_presentation_cube(pres, n, k=None, rank_cap=DEFAULT_RANK_CAP):
    """Realize an n-fold presentation at working class k.

    For n=1 this is the presentation itself: the ambient group with the
    relator closure as the only kernel.  For n=2 the ambient is squared
    over the presented group, the resulting fiber product is covered by
    a fresh free nilpotent group (one generator per diagonal generator
    pair plus one per relator, since conjugates of the pairs (1, r)
    already normally generate the off-diagonal part), and both
    projection kernels are returned.
    """
    if n not in (1, 2):
        raise ValidationError("only 1- and 2-fold cubes are supported")
    if k is None:
        k = pres.nclass + 1
    if k < pres.nclass + 1:
        raise ValidationError("working class must exceed the class bound")
    F, rels = pres.ambient(k)
    if n == 1:
        return PresentationCube(1, F, [pres.kernel_at(k)], {
            "construction": "presentation", "working_class": k,
            "rank": F.rank, "input": pres.input_digest()})

    d = F.rank
    t = len(rels)
    if d + t > rank_cap:
        raise SizeLimitError(
            "pullback cover needs rank %d, above the cap %d"
            % (d + t, rank_cap))
    Q = FreeNilGroup(d + t, k)
    # the cover sends the first d generators to diagonal pairs (x, x)
    # and the remaining t to pairs (1, r); its first projection kills
    # exactly the letters whose leaves touch a relator generator
    contents = []
    for i, letter in enumerate(Q.letters):
        if letter.left is None:
            contents.append(frozenset([i]))
        else:
            contents.append(contents[letter.left] | contents[letter.right])
    high = [i for i, cs in enumerate(contents) if any(j >= d for j in cs)]
    K0 = letter_span(Q, high)

    # the second projection is the first one twisted by the automorphism
    # fixing the diagonal generators and dividing each relator generator
    # by the lifted relator word, so its kernel is the image of K0
    section = NilHom(F, Q, [Q.generator(i) for i in range(d)])
    images = [Q.generator(i) for i in range(d)]
    images += [Q.generator(d + l).mul(section.apply(rels[l]).inverse())
               for l in range(t)]
    twist = NilHom(Q, Q, images)
    K1 = induced_sequence(Q, [twist.apply(m) for m in K0.seq])

    return PresentationCube(2, Q, [K0, K1], {
        "construction": "pullback-cover", "working_class": k,
        "rank": Q.rank, "diagonal_rank": d, "relators": t,
        "input": pres.input_digest()})


# ---- evaluation ----------------------------------------------------------

def _subgroup_info(S):
    return {"generators": len(S.seq),
            "leading_weights": S.leading_weights()}


def _cube_pieces(cube):
    """Kernel intersection, numerator and plain denominator of a cube."""
    Q = cube.ambient
    K = cube.kernels[0]
    for other in cube.kernels[1:]:
        K = intersect(K, other)
    N = intersect_with_kernel(K, IntMatrix.identity(Q.rank))
    if cube.n == 1:
        D = commutator_subgroup(Q, whole_group(Q), cube.kernels[0])
    else:
        inner = commutator_subgroup(Q, whole_group(Q), K)
        cross = commutator_subgroup(Q, cube.kernels[0], cube.kernels[1])
        D = induced_sequence(Q, list(inner.seq) + list(cross.seq))
    return K, N, D


def _shadow(S, low):
    """Image of a subgroup in a lower-class truncation of its parent.

    Basis letters of the lower truncation are a prefix of the higher
    one's, so words shadow down by coordinate prefix.
    """
    head = len(low.letters)
    return induced_sequence(low, [low.word(m.exps[:head]) for m in S.seq])


def evaluate_cube(cube, primes=None):
    """One Hopf quotient at the cube's own class.

    Returns (value, numerator info, denominator info).  The numerator is
    the derived subgroup met with all kernels; since the ambient
    abelianization is free, this is also the full torsion preimage, so
    the same numerator serves every prime set.  The denominator is the
    product of kernel-intersection commutators over all splittings of
    the directions, enlarged to its torsion closure when primes are
    given.
    """
    K, N, D = _cube_pieces(cube)
    if primes is not None and primes.primes:
        D = _torsion_closure_in(K, D, primes)
    value = abelian_quotient(N, D)
    return value, _subgroup_info(N), _subgroup_info(D)


def _value_at(pres, n, k, primes, rank_cap):
    """Shadowed Hopf quotient at working class k.

    The cube is built one class deeper and its pieces are shadowed down
    to class k: the deeper intersection refutes elements of the kernel
    intersection whose defect is invisible at class k itself.
    """
    cube = build_presentation_cube(pres, n, k + 1, rank_cap)
    K, N, D = _cube_pieces(cube)
    low = FreeNilGroup(cube.ambient.rank, k)
    N = _shadow(N, low)
    D = _shadow(D, low)
    if primes is not None and primes.primes:
        D = _torsion_closure_in(_shadow(K, low), D, primes)
    value = abelian_quotient(N, D)
    return value, _subgroup_info(N), _subgroup_info(D)


def _torsion_closure_in(K, D, primes):
    """Preimage in K of the local torsion of the abelian quotient K/D."""
    t = len(K.seq)
    if t == 0:
        return D
    nclass = K.parent.nclass
    weights = K.parent.weights
    rows = [K.coords(m) for m in D.seq]
    for i in range(t):
        for j in range(i + 1, t):
            a, b = K.seq[i], K.seq[j]
            if weights[a.leading()[0]] + weights[b.leading()[0]] > nclass:
                continue
            for u in (a, a.inverse()):
                for v in (b, b.inverse()):
                    rows.append(K.coords(u.comm(v)))
    closure = torsion_closure_rows(t, IntMatrix(rows, cols=t), primes)
    gens = list(D.seq)
    for row in closure.to_rows():
        g = K.parent.identity()
        for m, c in zip(K.seq, row):
            if c:
                g = g.mul(m.pow(c))
        gens.append(g)
    return induced_sequence(K.parent, gens)


class HopfResult:
    """Outcome of a Hopf evaluation, including how it was trusted."""

    __slots__ = ("value", "numerator", "denominator", "working_class",
                 "stabilization", "oracle_checked", "provenance")

    def __init__(self, value, numerator, denominator, working_class,
                 stabilization, oracle_checked, provenance):
        self.value = value
        self.numerator = numerator
        self.denominator = denominator
        self.working_class = working_class
        self.stabilization = stabilization
        self.oracle_checked = oracle_checked
        self.provenance = provenance

    @property
    def is_conclusive(self):
        return self.stabilization != "UNSTABLE"

    def to_json(self):
        return {
            "value": None if self.value is None else self.value.to_json(),
            "numerator": self.numerator,
            "denominator": self.denominator,
            "working_class": self.working_class,
            "stabilization": self.stabilization,
            "oracle_checked": self.oracle_checked,
            "provenance": self.provenance,
        }

    def __repr__(self):
        return "HopfResult(%r, class=%d, %s)" % (
            self.value, self.working_class, self.stabilization)


def _provenance(pres, n, primes, classes):
    return {"input": pres.input_digest(), "n": n,
            "primes": sorted(primes.primes) if primes else [],
            "classes": list(classes)}


def _normalize_primes(primes):
    if primes is None:
        return None
    if not isinstance(primes, PrimeSet):
        primes = PrimeSet(primes)
    return primes if primes.primes else None


def hopf_h2(pres, primes=None):
    """Second homology of the presented group, exactly.

    With primes given, the quotient of second homology by its torsion
    at those primes (computed from the closed denominator, not by
    quotienting the plain answer).
    """
    primes = _normalize_primes(primes)
    k = pres.nclass + 1
    cube = build_presentation_cube(pres, 1, k)
    value, num, den = evaluate_cube(cube, primes)
    return HopfResult(value, num, den, k, "NONE", None,
                      _provenance(pres, 1, primes, [k]))


def hopf_pi_n(pres, n=2, primes=None, max_class=DEFAULT_MAX_CLASS,
              rank_cap=DEFAULT_RANK_CAP):
    """Hopf value for an n-fold presentation of the given group.

    n=1 is exact at class c+1.  For n=2 the shadowed quotient is
    evaluated at consecutive working classes until two agree (each
    evaluation builds one class deeper than it reports); an agreement
    is reported STABLE, exhaustion of the class budget yields an
    UNSTABLE result whose value is None.  An UNSTABLE result is never
    a number: the caller gets the verdict, not a guess.
    """
    primes = _normalize_primes(primes)
    if n == 1:
        return hopf_h2(pres, primes)
    k0 = pres.nclass + 1
    if max_class < k0 + 2:
        raise ValidationError("stabilization needs to build at class %d; "
                              "raise max_class" % (k0 + 2))
    runs = {}

    def run(k):
        if k not in runs:
            runs[k] = _value_at(pres, n, k, primes, rank_cap)
        return runs[k]

    for k in range(k0, max_class - 1):
        try:
            value, num, den = run(k)
            nxt, _, _ = run(k + 1)
        except SizeLimitError:
            if not runs:
                raise
            break
        if value == nxt:
            return HopfResult(value, num, den, k, "STABLE", None,
                              _provenance(pres, n, primes, [k, k + 1]))
    return HopfResult(None, None, None, max_class, "UNSTABLE", None,
                      _provenance(pres, n, primes, sorted(runs)))


def hopf_pi_n_localized(pres, primes, n=2, max_class=DEFAULT_MAX_CLASS,
                        rank_cap=DEFAULT_RANK_CAP):
    """Localized variant; an empty prime set recovers the plain value."""
    return hopf_pi_n(pres, n=n, primes=primes, max_class=max_class,
                     rank_cap=rank_cap)
