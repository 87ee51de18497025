"""Named reference groups used by the test corpus and the CLI.

Everything is produced by constructors rather than shipped tables, so the
corpus cannot drift from the group operations.  The two standing corpora:

* nilpotent_corpus: the groups whose homology both engines can reach
  (cyclic 2..16, the two-generator abelian examples, D4, Q8);
* full_corpus: adds the symmetric groups S3 and S4, which only the
  finite-group paths (bar homology, Galois checks) consume.
"""

from __future__ import annotations

from .errors import ValidationError
from .groups import FiniteGroup, direct_product, from_permutations


def cyclic(n):
    """Z/n with addition mod n.

    >>> cyclic(4).element_order(1)
    4
    """
    if n < 1:
        raise ValidationError("order must be positive")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)],
                       name="Z%d" % n, validate=False)


def dihedral(n):
    """Dihedral group of order 2n: rotations r^i and reflections r^i s.

    Index i + n*j encodes r^i s^j; s r s = r^-1.

    >>> dihedral(4).order
    8
    >>> dihedral(3).is_abelian()
    False
    """
    if n < 1:
        raise ValidationError("need n >= 1")

    def mul(x, y):
        i, j = x % n, x // n
        k, l = y % n, y // n
        return (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)

    return FiniteGroup([[mul(x, y) for y in range(2 * n)]
                        for x in range(2 * n)],
                       name="D%d" % n, validate=False)


_QUNITS = (
    (1, 0, 0, 0), (-1, 0, 0, 0),
    (0, 1, 0, 0), (0, -1, 0, 0),
    (0, 0, 1, 0), (0, 0, -1, 0),
    (0, 0, 0, 1), (0, 0, 0, -1),
)


def quaternion8():
    """The quaternion group {+-1, +-i, +-j, +-k}.

    >>> Q8 = quaternion8()
    >>> Q8.center().members
    (0, 1)
    >>> sorted(set(Q8.element_order(g) for g in Q8.elements()))
    [1, 2, 4]
    """
    index = {u: i for i, u in enumerate(_QUNITS)}

    def mul(u, v):
        a1, b1, c1, d1 = u
        a2, b2, c2, d2 = v
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    table = [[index[mul(u, v)] for v in _QUNITS] for u in _QUNITS]
    return FiniteGroup(table, name="Q8", validate=False)


def symmetric(n):
    """Symmetric group on n points, n <= 4.

    >>> symmetric(3).order
    6
    >>> symmetric(4).derived_subgroup().members == tuple(range(24))
    False
    """
    if n < 1 or n > 4:
        raise ValidationError("symmetric corpus covers n <= 4 only")
    if n == 1:
        return cyclic(1)
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    G = from_permutations(n, gens)
    return FiniteGroup(G.table, name="S%d" % n, validate=False)


def abelian(orders):
    """Direct product of cyclic groups of the given orders.

    >>> abelian([2, 4]).abelian_invariants()
    FgAbelianGroup(0, [2, 4])
    """
    orders = list(orders)
    if not orders:
        return cyclic(1)
    G = cyclic(orders[0])
    for m in orders[1:]:
        G = direct_product(G, cyclic(m)).group
    name = "x".join("Z%d" % m for m in orders)
    return FiniteGroup(G.table, name=name, validate=False)


def klein4():
    return abelian([2, 2])


_NAMED = {}


def _register(name, builder):
    _NAMED[name.lower()] = builder


for _n in range(1, 17):
    _register("Z%d" % _n, (lambda k: (lambda: cyclic(k)))(_n))
    _register("C%d" % _n, (lambda k: (lambda: cyclic(k)))(_n))
for _n in range(1, 9):
    _register("D%d" % _n, (lambda k: (lambda: dihedral(k)))(_n))
for _n in range(1, 5):
    _register("S%d" % _n, (lambda k: (lambda: symmetric(k)))(_n))
_register("Q8", quaternion8)
_register("trivial", lambda: cyclic(1))
_register("V4", klein4)
_register("Z2xZ2", klein4)
_register("Z2xZ4", lambda: abelian([2, 4]))
_register("Z3xZ3", lambda: abelian([3, 3]))


def named_group(name):
    """Look up a corpus group by name (case-insensitive).

    Product names compose with 'x': 'Z2xZ6' builds the product.
    """
    key = name.lower()
    if key in _NAMED:
        return _NAMED[key]()
    if "x" in key:
        parts = key.split("x")
        if all(p.startswith("z") and p[1:].isdigit() for p in parts):
            return abelian([int(p[1:]) for p in parts])
    raise ValidationError("unknown group name: %r" % (name,))


def nilpotent_corpus():
    """The nilpotent groups of order <= 16 both homology engines cover."""
    out = [("Z%d" % n, cyclic(n)) for n in range(2, 17)]
    out += [("Z2xZ2", klein4()),
            ("Z2xZ4", abelian([2, 4])),
            ("Z3xZ3", abelian([3, 3])),
            ("D4", dihedral(4)),
            ("Q8", quaternion8())]
    return out


def full_corpus():
    """Nilpotent corpus plus the symmetric groups S3 and S4."""
    return nilpotent_corpus() + [("S3", symmetric(3)), ("S4", symmetric(4))]


def corpus_up_to(max_order):
    return [(name, G) for name, G in full_corpus() if G.order <= max_order]


def group_from_json(obj):
    """Accepts a name, a multiplication table, or permutation generators."""
    if "name" in obj:
        return named_group(obj["name"])
    if "table" in obj:
        G = FiniteGroup.from_json(obj)
        if "order" in obj and obj["order"] != G.order:
            raise ValidationError("order field says %r but the table has "
                                  "%d elements" % (obj["order"], G.order))
        return G
    if "generators" in obj:
        return from_permutations(obj["degree"], obj["generators"])
    raise ValidationError("unrecognized group description")
