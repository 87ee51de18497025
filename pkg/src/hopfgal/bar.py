"""Integral group homology of finite groups via the normalized bar
resolution.

This is the package's oracle: a deliberately simple construction whose
only clever part is the Smith normal form it delegates to.  Every
Hopf-formula value is compared against it.

The degree-n chain group has one basis element per n-tuple of
non-identity group elements, ordered lexicographically.  The boundary of
a tuple is the usual alternating sum, with any face containing the
identity dropped.
"""

from __future__ import annotations

from .abelian import FgAbelianGroup
from .errors import SizeLimitError, ValidationError
from .matrices import IntMatrix, snf_diagonal


class BarConfig:
    """Size policy: largest group order allowed per homology degree."""

    __slots__ = ("max_order_by_degree", "default_max_order")

    def __init__(self, max_order_by_degree=None, default_max_order=6):
        self.max_order_by_degree = dict(
            max_order_by_degree if max_order_by_degree is not None
            else {1: 64, 2: 16, 3: 12})
        self.default_max_order = int(default_max_order)

    def bound_for(self, degree):
        return self.max_order_by_degree.get(degree, self.default_max_order)


DEFAULT_CONFIG = BarConfig()


class BarChainBasis:
    """The n-tuples of non-identity elements, in lexicographic order.

    >>> from hopfgal.corpus import cyclic
    >>> BarChainBasis(cyclic(3), 2).size
    4
    >>> list(BarChainBasis(cyclic(3), 1))
    [(1,), (2,)]
    """

    __slots__ = ("group", "degree", "size")

    def __init__(self, group, degree):
        if degree < 0:
            raise ValidationError("degree must be >= 0")
        self.group = group
        self.degree = degree
        self.size = (group.order - 1) ** degree

    def index_of(self, tup):
        # lexicographic rank; element indices are 1..order-1
        idx = 0
        base = self.group.order - 1
        for g in tup:
            idx = idx * base + (g - 1)
        return idx

    def __iter__(self):
        base = self.group.order - 1
        for idx in range(self.size):
            tup = []
            rem = idx
            for _ in range(self.degree):
                rem, d = divmod(rem, base)
                tup.append(d + 1)
            yield tuple(reversed(tup))


_MAX_BASIS = 500_000


def bar_boundary(G, n, max_basis=_MAX_BASIS):
    """Matrix of d_n: C_n -> C_{n-1}, one row per degree-n tuple.

    >>> from hopfgal.corpus import cyclic
    >>> bar_boundary(cyclic(2), 1).to_rows()
    [[0]]
    >>> bar_boundary(cyclic(2), 2).to_rows()
    [[2]]
    >>> bar_boundary(cyclic(3), 2).shape
    (4, 2)
    """
    if n < 1:
        raise ValidationError("boundary needs degree >= 1")
    src = BarChainBasis(G, n)
    dst = BarChainBasis(G, n - 1)
    if src.size > max_basis:
        raise SizeLimitError("bar basis of size %d exceeds bound %d"
                             % (src.size, max_basis))
    triplets = []
    mul = G.mul
    for i, tup in enumerate(src):
        acc = {}
        faces = [(tup[1:], 1)]
        sign = -1
        for k in range(1, n):
            merged = mul(tup[k - 1], tup[k])
            if merged != 0:
                faces.append((tup[:k - 1] + (merged,) + tup[k + 1:], sign))
            sign = -sign
        faces.append((tup[:-1], sign))
        for face, s in faces:
            acc[face] = acc.get(face, 0) + s
        for face, s in acc.items():
            if s:
                triplets.append((i, dst.index_of(face), s))
    return IntMatrix.from_triplets(src.size, dst.size, triplets)


def homology(G, n, config=DEFAULT_CONFIG):
    """H_n(G, Z) as invariant factors, for n >= 1.

    >>> from hopfgal.corpus import cyclic, klein4
    >>> homology(cyclic(4), 1)
    FgAbelianGroup(0, [4])
    >>> homology(klein4(), 2)
    FgAbelianGroup(0, [2])
    >>> homology(cyclic(2), 3)
    FgAbelianGroup(0, [2])
    >>> homology(cyclic(1), 3)
    FgAbelianGroup(0, [])
    """
    if n < 1:
        raise ValidationError("homology is computed for degrees >= 1")
    if G.order > config.bound_for(n):
        raise SizeLimitError(
            "order %d exceeds the degree-%d bound %d"
            % (G.order, n, config.bound_for(n)))
    b_n = BarChainBasis(G, n).size
    if b_n == 0:
        return FgAbelianGroup.trivial()
    d_n = bar_boundary(G, n)
    d_up = bar_boundary(G, n + 1)
    rank_n = len(snf_diagonal(d_n))
    diag_up = snf_diagonal(d_up)
    free = b_n - rank_n - len(diag_up)
    # ker(d_n) is a saturated sublattice, so the torsion of the homology
    # equals the torsion of Z^{b_n} / im(d_{n+1})
    return FgAbelianGroup(free, [d for d in diag_up if d > 1])


def unnormalized_homology(G, n, max_basis=_MAX_BASIS):
    """Same homology from the unnormalized complex (all tuples).

    Exists purely to cross-check the normalized construction on tiny
    groups; matrices grow like order^n.
    """
    if n < 1:
        raise ValidationError("homology is computed for degrees >= 1")
    o = G.order
    if o ** (n + 1) > max_basis:
        raise SizeLimitError("unnormalized basis exceeds bound")

    def boundary(k):
        src = o ** k
        triplets = []
        for idx in range(src):
            tup = []
            rem = idx
            for _ in range(k):
                rem, d = divmod(rem, o)
                tup.append(d)
            tup.reverse()
            acc = {}
            faces = [(tuple(tup[1:]), 1)]
            sign = -1
            for t in range(1, k):
                merged = G.mul(tup[t - 1], tup[t])
                faces.append((tuple(tup[:t - 1]) + (merged,)
                              + tuple(tup[t + 1:]), sign))
                sign = -sign
            faces.append((tuple(tup[:-1]), sign))
            for face, s in faces:
                acc[face] = acc.get(face, 0) + s
            for face, s in acc.items():
                if s:
                    j = 0
                    for g in face:
                        j = j * o + g
                    triplets.append((idx, j, s))
        return IntMatrix.from_triplets(src, o ** (k - 1), triplets)

    b_n = o ** n
    d_n = boundary(n)
    d_up = boundary(n + 1)
    rank_n = len(snf_diagonal(d_n))
    diag_up = snf_diagonal(d_up)
    free = b_n - rank_n - len(diag_up)
    return FgAbelianGroup(free, [d for d in diag_up if d > 1])
