"""Finitely generated abelian groups in invariant-factor form.

A group is stored as a free rank plus a divisibility chain d_1 | d_2 | ...
with every d_i > 1.  This normal form makes equality structural, which is
what every cross-check in the package ultimately compares.
"""

from __future__ import annotations

from math import gcd

from .errors import NotSubsetError, ValidationError
from .matrices import (
    IntMatrix, divisibility_chain, hnf, rank, row_space_basis, snf,
    snf_diagonal, solve_left,
)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeSet:
    """A finite set of primes, defining which torsion is 'local'.

    >>> PrimeSet([3, 2]).is_number(12)
    True
    >>> PrimeSet([2]).is_number(6)
    False
    >>> PrimeSet([]).is_number(1)
    True
    """

    __slots__ = ("primes",)

    def __init__(self, primes=()):
        ps = sorted(set(int(p) for p in primes))
        for p in ps:
            if not _is_prime(p):
                raise ValidationError("not a prime: %r" % (p,))
        self.primes = tuple(ps)

    def __contains__(self, p):
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __eq__(self, other):
        return isinstance(other, PrimeSet) and self.primes == other.primes

    def __hash__(self):
        return hash(self.primes)

    def __repr__(self):
        return "PrimeSet(%r)" % (list(self.primes),)

    def is_number(self, m):
        """True for positive m whose prime factors all lie in the set.

        These are exactly the numbers in the multiplicative monoid the set
        generates, so 1 always qualifies.
        """
        m = int(m)
        if m <= 0:
            return False
        for p in self.primes:
            while m % p == 0:
                m //= p
        return m == 1

    def part_of(self, n):
        """Largest divisor of n that is a number of this set.

        >>> PrimeSet([2]).part_of(12)
        4
        >>> PrimeSet([2, 3]).part_of(12)
        12
        """
        n = abs(int(n))
        if n == 0:
            raise ValidationError("no local part of 0")
        out = 1
        for p in self.primes:
            while n % p == 0:
                n //= p
                out *= p
        return out

    def coprime_part_of(self, n):
        n = abs(int(n))
        if n == 0:
            raise ValidationError("no coprime part of 0")
        return n // self.part_of(n)


class FgAbelianGroup:
    """Invariant-factor normal form of a finitely generated abelian group.

    >>> FgAbelianGroup.from_orders([6, 4])
    FgAbelianGroup(0, [2, 12])
    >>> FgAbelianGroup.from_orders([6, 4]).order()
    24
    >>> FgAbelianGroup(1, [2]).order() is None
    True
    """

    __slots__ = ("free_rank", "factors")

    def __init__(self, free_rank=0, factors=()):
        fs = tuple(int(d) for d in factors)
        if any(d < 2 for d in fs):
            raise ValidationError("invariant factors must be > 1")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValidationError("factors must form a chain: %r" % (fs,))
        self.free_rank = int(free_rank)
        if self.free_rank < 0:
            raise ValidationError("negative free rank")
        self.factors = fs

    @classmethod
    def trivial(cls):
        return cls(0, ())

    @classmethod
    def from_orders(cls, orders):
        """Normalize an arbitrary list of cyclic orders (0 means infinite)."""
        free = sum(1 for d in orders if d == 0)
        chain = divisibility_chain([d for d in orders if d])
        return cls(free, [d for d in chain if d > 1])

    @classmethod
    def from_relation_matrix(cls, n_gens, rel):
        """Cokernel of rel acting on Z^n_gens (rows are relations)."""
        if rel.cols not in (n_gens, 0):
            raise ValidationError("relation width mismatch")
        if rel.rows == 0 or rel.cols == 0:
            return cls(n_gens, ())
        diag = snf_diagonal(rel)
        return cls(n_gens - len(diag), [d for d in diag if d > 1])

    def direct_sum(self, other):
        return FgAbelianGroup.from_orders(
            [0] * (self.free_rank + other.free_rank)
            + list(self.factors) + list(other.factors))

    def order(self):
        if self.free_rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    def is_trivial(self):
        return self.free_rank == 0 and not self.factors

    def torsion_part(self, primes=None):
        """The subgroup of elements with finite order in the given primes.

        With primes=None, all torsion.

        >>> FgAbelianGroup.from_orders([12]).torsion_part(PrimeSet([2]))
        FgAbelianGroup(0, [4])
        >>> FgAbelianGroup(1, [6]).torsion_part(PrimeSet([2, 3]))
        FgAbelianGroup(0, [6])
        """
        if primes is None:
            return FgAbelianGroup(0, self.factors)
        return FgAbelianGroup.from_orders(
            [primes.part_of(d) for d in self.factors])

    def quotient_by_torsion(self, primes=None):
        """Quotient by the torsion of the given primes (all if None).

        >>> FgAbelianGroup.from_orders([12]).quotient_by_torsion(PrimeSet([2]))
        FgAbelianGroup(0, [3])
        >>> FgAbelianGroup(1, [6]).quotient_by_torsion(PrimeSet([2, 3]))
        FgAbelianGroup(1, [])
        """
        if primes is None:
            return FgAbelianGroup(self.free_rank, ())
        stripped = [d // primes.part_of(d) for d in self.factors]
        return FgAbelianGroup.from_orders([0] * self.free_rank + stripped)

    def exponent(self):
        """Least common multiple of element orders; None if unbounded."""
        if self.free_rank:
            return None
        return self.factors[-1] if self.factors else 1

    def to_json(self):
        return {"free_rank": self.free_rank, "factors": list(self.factors)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["free_rank"], obj["factors"])

    def __eq__(self, other):
        return (isinstance(other, FgAbelianGroup)
                and self.free_rank == other.free_rank
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.free_rank, self.factors))

    def __repr__(self):
        return "FgAbelianGroup(%d, %r)" % (self.free_rank, list(self.factors))

    def __str__(self):
        parts = ["Z"] * self.free_rank + ["Z/%d" % d for d in self.factors]
        return " + ".join(parts) if parts else "0"


def unimodular_inverse(V):
    """Inverse of a unimodular integer matrix."""
    H, U = hnf(V)
    if H != IntMatrix.identity(V.rows):
        raise ValidationError("matrix is not unimodular")
    return U


def lattice_quotient_invariants(num, den):
    """Invariants of rowspan(num) / rowspan(den) as an abelian group.

    Both arguments are row-generating sets of lattices in the same Z^n;
    rowspan(den) must lie inside rowspan(num).
    """
    base = row_space_basis(num)
    coeffs = []
    for drow in den.to_rows():
        c = solve_left(base, drow)
        if c is None:
            raise NotSubsetError("denominator lattice not inside numerator")
        coeffs.append(c)
    return FgAbelianGroup.from_relation_matrix(
        base.rows, IntMatrix(coeffs, cols=base.rows))


def torsion_closure_rows(n_gens, rel, primes):
    """Rows spanning the preimage in Z^n of the local torsion of Z^n / rel.

    An element of the quotient is local torsion when some number of the
    prime set kills it.  Returned rows, together with rel itself, generate
    the full preimage lattice.
    """
    if rel.rows == 0 or n_gens == 0:
        return IntMatrix([], cols=n_gens)
    D, _, V = snf(rel)
    Vinv = unimodular_inverse(V)
    rows = []
    for i in range(min(rel.rows, n_gens)):
        d = D.entry(i, i)
        if d == 0:
            break
        stripped = d // primes.part_of(d)
        if stripped != d:
            rows.append([stripped * x for x in Vinv.row(i)])
    return IntMatrix(rows, cols=n_gens)


def presented_invariants(n_gens, rel):
    """Shorthand for the cokernel invariants of a relation matrix."""
    return FgAbelianGroup.from_relation_matrix(n_gens, rel)
