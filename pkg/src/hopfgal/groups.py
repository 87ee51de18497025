"""Finite groups as multiplication tables, with the constructions the
Galois and Hopf layers need: subgroups, quotients, pullbacks, commutator
subgroups, and the prime-set closure operator.

Elements are indices 0..order-1 and 0 is always the identity.  Everything
is immutable and deterministic: subgroup members are sorted, quotient
representatives are minimal, and breadth-first closures follow generator
order as given.
"""

from __future__ import annotations

from .abelian import FgAbelianGroup, PrimeSet
from .errors import (
    NotAbelianError, NotNormalError, NotSubsetError, SizeLimitError,
    ValidationError,
)

MAX_ORDER = 5040
_ASSOC_CHECK_BOUND = 64


class FiniteGroup:
    """A finite group given by its multiplication table.

    >>> Z3 = FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    >>> Z3.mul(1, 2), Z3.inverse(1)
    (0, 2)
    >>> Z3.element_order(1)
    3
    """

    __slots__ = ("table", "order", "inv", "name")

    def __init__(self, table, name=None, validate=True):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise ValidationError("empty table")
        if any(len(row) != n for row in table):
            raise ValidationError("table is not square")
        self.table = table
        self.order = n
        self.name = name
        if validate:
            self._validate()
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if table[g][h] == 0 and table[h][g] == 0:
                    inv[g] = h
                    break
            if inv[g] is None:
                raise ValidationError("element %d has no inverse" % g)
        self.inv = tuple(inv)

    def _validate(self):
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise ValidationError("row %d is not a permutation" % i)
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise ValidationError("column %d is not a permutation" % j)
        if any(self.table[0][g] != g or self.table[g][0] != g
               for g in range(n)):
            raise ValidationError("index 0 is not a two-sided identity")
        if n <= _ASSOC_CHECK_BOUND:
            t = self.table
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise ValidationError(
                                "associativity fails at (%d,%d,%d)"
                                % (a, b, c))

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, g):
        return self.inv[g]

    def conjugate(self, g, by):
        """by^-1 * g * by."""
        t = self.table
        return t[t[self.inv[by]][g]][by]

    def commutator(self, a, b):
        """a^-1 * b^-1 * a * b."""
        t = self.table
        return t[t[t[self.inv[a]][self.inv[b]]][a]][b]

    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def power(self, g, m):
        if m < 0:
            return self.power(self.inv[g], -m)
        x = 0
        for _ in range(m):
            x = self.table[x][g]
        return x

    def elements(self):
        return range(self.order)

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a]
                   for a in range(self.order) for b in range(a))

    def trivial_subgroup(self):
        return Subgroup(self, (0,))

    def full_subgroup(self):
        return Subgroup(self, range(self.order))

    def generated_subgroup(self, gens):
        """Closure of the generators, breadth-first from the identity."""
        gens = [g for g in gens]
        seen = {0}
        queue = [0]
        for x in queue:
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(self, seen, _checked=True)

    def normal_closure(self, gens):
        conj = {self.conjugate(x, g)
                for x in gens for g in range(self.order)}
        return self.generated_subgroup(sorted(conj))

    def center(self):
        t = self.table
        members = [z for z in range(self.order)
                   if all(t[z][g] == t[g][z] for g in range(self.order))]
        return Subgroup(self, members, _checked=True)

    def derived_subgroup(self):
        return commutator_subgroup(self.full_subgroup(), self.full_subgroup())

    def lower_central_series(self):
        """[G, [G,G], [G,[G,G]], ...] down to the stable term."""
        series = [self.full_subgroup()]
        while True:
            nxt = commutator_subgroup(series[-1], self.full_subgroup())
            if nxt.members == series[-1].members:
                return series
            series.append(nxt)

    def is_nilpotent(self):
        return len(self.lower_central_series()[-1]) == 1

    def nilpotency_class(self):
        series = self.lower_central_series()
        if len(series[-1]) != 1:
            return None
        return len(series) - 1

    def abelian_invariants(self):
        """Invariant factors, for an abelian group, by order statistics.

        For each prime p, counting solutions of x^(p^i) = e recovers the
        conjugate partition of the cyclic p-power exponents.
        """
        if not self.is_abelian():
            raise NotAbelianError("abelian_invariants needs an abelian group")
        n = self.order
        orders = []
        m = n
        p = 2
        primes = []
        while m > 1:
            if m % p == 0:
                primes.append(p)
                while m % p == 0:
                    m //= p
            p += 1 if p == 2 else 2
        for p in primes:
            counts = [1]
            q = p
            while True:
                c = sum(1 for g in range(n) if self.power(g, q) == 0)
                counts.append(c)
                if c == counts[-2]:
                    counts.pop()
                    break
                q *= p
            # k_i = number of cyclic factors with exponent >= i
            ks = []
            for i in range(1, len(counts)):
                ratio = counts[i] // counts[i - 1]
                k = 0
                while ratio > 1:
                    ratio //= p
                    k += 1
                ks.append(k)
            for j in range(ks[0] if ks else 0):
                lam = sum(1 for k in ks if k > j)
                orders.append(p ** lam)
        return FgAbelianGroup.from_orders(orders)

    def quotient(self, N):
        """Quotient by a normal subgroup: (group, projection).

        Coset representatives are the minimal indices, so the identity
        coset is represented by 0.
        """
        if N.ambient is not self:
            raise ValidationError("subgroup of a different group")
        if not N.is_normal():
            raise NotNormalError("quotient needs a normal subgroup")
        rep_of = [None] * self.order
        reps = []
        for g in range(self.order):
            if rep_of[g] is None:
                coset = sorted(self.table[g][x] for x in N.members)
                r = coset[0]
                reps.append(r)
                for y in coset:
                    rep_of[y] = r
        reps.sort()
        index = {r: i for i, r in enumerate(reps)}
        table = [[index[rep_of[self.table[a][b]]] for b in reps]
                 for a in reps]
        Q = FiniteGroup(table, validate=False)
        proj = GroupHom(self, Q, [index[rep_of[g]] for g in range(self.order)],
                        validate=False)
        return Q, proj

    def abelianization(self):
        return self.quotient(self.derived_subgroup())

    def to_json(self):
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["table"])

    def __repr__(self):
        return "FiniteGroup(order=%d%s)" % (
            self.order, ", name=%r" % self.name if self.name else "")


class Subgroup:
    """A subgroup as a sorted member tuple inside an ambient group."""

    __slots__ = ("ambient", "members")

    def __init__(self, ambient, members, _checked=False):
        self.ambient = ambient
        self.members = tuple(sorted(set(int(m) for m in members)))
        if not _checked:
            ms = set(self.members)
            if 0 not in ms:
                raise ValidationError("subgroup must contain the identity")
            for a in self.members:
                if ambient.inv[a] not in ms:
                    raise ValidationError("not inverse-closed")
                for b in self.members:
                    if ambient.table[a][b] not in ms:
                        raise ValidationError("not closed under product")

    def __contains__(self, g):
        return g in set(self.members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.ambient is other.ambient
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.ambient), self.members))

    def __repr__(self):
        return "Subgroup(order=%d of %r)" % (len(self.members), self.ambient)

    def is_normal(self):
        G = self.ambient
        ms = set(self.members)
        return all(G.conjugate(x, g) in ms
                   for x in self.members for g in G.elements())

    def is_central(self):
        G = self.ambient
        t = G.table
        return all(t[z][g] == t[g][z]
                   for z in self.members for g in G.elements())

    def contains_subgroup(self, other):
        return set(other.members) <= set(self.members)

    def intersection(self, other):
        if self.ambient is not other.ambient:
            raise ValidationError("subgroups of different groups")
        return Subgroup(self.ambient,
                        set(self.members) & set(other.members),
                        _checked=True)

    def product_with(self, other):
        """HK as a subgroup; requires one factor normal so HK is closed."""
        if self.ambient is not other.ambient:
            raise ValidationError("subgroups of different groups")
        if not (self.is_normal() or other.is_normal()):
            raise NotNormalError("HK needs a normal factor")
        t = self.ambient.table
        return Subgroup(self.ambient,
                        {t[h][k] for h in self.members for k in other.members},
                        _checked=True)

    def as_group(self):
        """(the subgroup as a group in its own right, inclusion hom)."""
        index = {m: i for i, m in enumerate(self.members)}
        t = self.ambient.table
        table = [[index[t[a][b]] for b in self.members] for a in self.members]
        H = FiniteGroup(table, validate=False)
        incl = GroupHom(H, self.ambient, self.members, validate=False)
        return H, incl


class GroupHom:
    """A homomorphism as a total mapping of element indices.

    >>> Z4 = cyclic_table_group(4)
    >>> Z2 = cyclic_table_group(2)
    >>> f = GroupHom(Z4, Z2, [0, 1, 0, 1])
    >>> sorted(f.kernel().members)
    [0, 2]
    >>> f.is_surjective()
    True
    """

    __slots__ = ("domain", "codomain", "mapping")

    def __init__(self, domain, codomain, mapping, validate=True):
        self.domain = domain
        self.codomain = codomain
        self.mapping = tuple(int(x) for x in mapping)
        if len(self.mapping) != domain.order:
            raise ValidationError("mapping length mismatch")
        if validate:
            if self.mapping[0] != 0:
                raise ValidationError("identity must map to identity")
            dt, ct, m = domain.table, codomain.table, self.mapping
            for a in range(domain.order):
                for b in range(domain.order):
                    if m[dt[a][b]] != ct[m[a]][m[b]]:
                        raise ValidationError(
                            "not a homomorphism at (%d,%d)" % (a, b))

    def __call__(self, g):
        return self.mapping[g]

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.domain is other.domain
                and self.codomain is other.codomain
                and self.mapping == other.mapping)

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.mapping))

    def __repr__(self):
        return "GroupHom(%r -> %r)" % (self.domain, self.codomain)

    def kernel(self):
        return Subgroup(self.domain,
                        [g for g in self.domain.elements()
                         if self.mapping[g] == 0],
                        _checked=True)

    def image(self):
        return Subgroup(self.codomain, set(self.mapping), _checked=True)

    def image_of(self, sub):
        return Subgroup(self.codomain,
                        {self.mapping[g] for g in sub.members},
                        _checked=True)

    def preimage_of(self, sub):
        ms = set(sub.members)
        return Subgroup(self.domain,
                        [g for g in self.domain.elements()
                         if self.mapping[g] in ms],
                        _checked=True)

    def is_surjective(self):
        return len(set(self.mapping)) == self.codomain.order

    def is_injective(self):
        return len(set(self.mapping)) == self.domain.order

    def is_isomorphism(self):
        return self.is_surjective() and self.is_injective()

    def then(self, other):
        """self followed by other (their composite as one hom)."""
        if other.domain is not self.codomain:
            raise ValidationError("composition mismatch")
        return GroupHom(self.domain, other.codomain,
                        [other.mapping[x] for x in self.mapping],
                        validate=False)

    def restrict(self, sub):
        """Restriction to a subgroup of the domain, as a hom of groups."""
        H, incl = sub.as_group()
        return GroupHom(H, self.codomain,
                        [self.mapping[m] for m in sub.members],
                        validate=False), incl


def identity_hom(G):
    return GroupHom(G, G, range(G.order), validate=False)


def inner_automorphism(G, g):
    return GroupHom(G, G, [G.conjugate(x, g) for x in G.elements()],
                    validate=False)


def cyclic_table_group(n):
    # local duplicate of corpus.cyclic to keep doctests self-contained
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)],
                       validate=False)


class DirectProduct:
    """A x B with projections, injections, and index helpers."""

    __slots__ = ("group", "left", "right", "proj0", "proj1", "inj0", "inj1")

    def __init__(self, A, B, max_order=MAX_ORDER):
        n = A.order * B.order
        if n > max_order:
            raise SizeLimitError("product order %d exceeds bound %d"
                                 % (n, max_order))
        bo = B.order
        at, bt = A.table, B.table
        table = [[0] * n for _ in range(n)]
        for a1 in range(A.order):
            for b1 in range(bo):
                r = table[a1 * bo + b1]
                ra = at[a1]
                rb = bt[b1]
                for a2 in range(A.order):
                    base = ra[a2] * bo
                    for b2 in range(bo):
                        r[a2 * bo + b2] = base + rb[b2]
        self.group = FiniteGroup(table, validate=False)
        self.left = A
        self.right = B
        self.proj0 = GroupHom(self.group, A, [i // bo for i in range(n)],
                              validate=False)
        self.proj1 = GroupHom(self.group, B, [i % bo for i in range(n)],
                              validate=False)
        self.inj0 = GroupHom(A, self.group, [a * bo for a in range(A.order)],
                             validate=False)
        self.inj1 = GroupHom(B, self.group, range(bo), validate=False)

    def pair(self, a, b):
        return a * self.right.order + b

    def split(self, x):
        return divmod(x, self.right.order)


def direct_product(A, B, max_order=MAX_ORDER):
    return DirectProduct(A, B, max_order=max_order)


def pullback(f, g, max_order=MAX_ORDER):
    """Fiber product of f and g: (group, projection to dom f, to dom g)."""
    if f.codomain is not g.codomain:
        raise ValidationError("pullback needs a common codomain")
    prod = DirectProduct(f.domain, g.domain, max_order=max_order)
    members = [prod.pair(a, b)
               for a in f.domain.elements() for b in g.domain.elements()
               if f(a) == g(b)]
    sub = Subgroup(prod.group, members, _checked=True)
    P, incl = sub.as_group()
    return P, incl.then(prod.proj0), incl.then(prod.proj1)


def pairing_hom(f, g):
    """<f, g>: common domain -> codomain(f) x codomain(g)."""
    if f.domain is not g.domain:
        raise ValidationError("pairing needs a common domain")
    prod = DirectProduct(f.codomain, g.codomain)
    return GroupHom(f.domain, prod.group,
                    [prod.pair(f(x), g(x)) for x in f.domain.elements()],
                    validate=False), prod


def commutator_subgroup(H, K):
    """[H, K], the standard commutator subgroup.

    Generated by all pairwise commutators and kept stable under
    conjugation by elements of H and K.
    """
    if H.ambient is not K.ambient:
        raise ValidationError("subgroups of different groups")
    G = H.ambient
    gens = {G.commutator(h, k) for h in H.members for k in K.members}
    gens.discard(0)
    while True:
        sub = G.generated_subgroup(sorted(gens))
        extra = {G.conjugate(x, g)
                 for x in sub.members
                 for g in H.members + K.members} - set(sub.members)
        if not extra:
            return sub
        gens |= extra


def closure_P(A, K, primes):
    """Preimage of the local torsion of A/K; K must contain [A,A].

    Equivalently {a : a^m in K for some number m of the prime set}.

    >>> Z12 = cyclic_table_group(12)
    >>> K = Z12.generated_subgroup([6])
    >>> closure_P(Z12, K, PrimeSet([2])).members
    (0, 3, 6, 9)
    """
    if K.ambient is not A:
        raise ValidationError("subgroup of a different group")
    if not K.is_normal():
        raise NotNormalError("closure needs a normal subgroup")
    if not K.contains_subgroup(A.derived_subgroup()):
        raise NotSubsetError("closure needs K to contain the commutator "
                             "subgroup")
    Q, proj = A.quotient(K)
    return Subgroup(A, [a for a in A.elements()
                        if primes.is_number(Q.element_order(proj(a)))],
                    _checked=True)


def local_torsion_is_trivial(G, primes):
    """No element beyond the identity has its order a number of the set."""
    return all(not primes.is_number(G.element_order(g))
               for g in range(1, G.order))


def from_permutations(degree, generators, max_order=MAX_ORDER):
    """Closure of permutation generators, BFS from the identity.

    Permutations are one-line images of 0..degree-1.  Element indices
    follow discovery order, so the identity is 0.
    """
    gens = []
    for p in generators:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise ValidationError("not a permutation of 0..%d" % (degree - 1))
        gens.append(p)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    for x in elems:
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in index:
                if len(elems) >= max_order:
                    raise SizeLimitError("closure exceeds bound %d"
                                         % max_order)
                index[y] = len(elems)
                elems.append(y)
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i][j] = index[tuple(q[p[k]] for k in range(degree))]
    return FiniteGroup(table, validate=False)


def minimal_generating_indices(G):
    """A small generating set, chosen greedily and deterministically."""
    gens = []
    current = {0}
    while len(current) < G.order:
        best = None
        best_size = len(current)
        for g in range(1, G.order):
            if g in current:
                continue
            size = len(G.generated_subgroup(gens + [g]).members)
            if size > best_size:
                best, best_size = g, size
                if size == G.order:
                    break
        gens.append(best)
        current = set(G.generated_subgroup(gens).members)
    return gens


def all_homs(A, B):
    """Every homomorphism A -> B, by extending generator images."""
    gens = minimal_generating_indices(A)
    if not gens:
        return [GroupHom(A, B, [0] * A.order, validate=False)]
    pools = []
    for g in gens:
        d = A.element_order(g)
        pools.append([h for h in B.elements() if d % B.element_order(h) == 0])
    out = []
    assignment = [0] * len(gens)

    def extend(images):
        mapping = [None] * A.order
        mapping[0] = 0
        queue = [0]
        for x in queue:
            for g, h in zip(gens, images):
                y = A.table[x][g]
                im = B.table[mapping[x]][h]
                if mapping[y] is None:
                    mapping[y] = im
                    queue.append(y)
                elif mapping[y] != im:
                    return None
        return mapping

    def rec(i):
        if i == len(gens):
            mapping = extend(assignment)
            if mapping is None:
                return
            dt, bt = A.table, B.table
            for a in range(A.order):
                for b in range(A.order):
                    if mapping[dt[a][b]] != bt[mapping[a]][mapping[b]]:
                        return
            out.append(GroupHom(A, B, mapping, validate=False))
            return
        for h in pools[i]:
            assignment[i] = h
            rec(i + 1)

    rec(0)
    return out


def surjections(A, B):
    return [f for f in all_homs(A, B) if f.is_surjective()]


def surjections_up_to_precomposition(A, B):
    """Surjections A -> B, one per inner-precomposition class."""
    seen = set()
    out = []
    for f in surjections(A, B):
        key = min(tuple(f.mapping[A.conjugate(x, g)]
                        for x in A.elements())
                  for g in A.elements())
        if key not in seen:
            seen.add(key)
            out.append(GroupHom(A, B, key, validate=False))
    return out
