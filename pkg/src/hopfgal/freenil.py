"""Free nilpotent groups of finite rank and class, with exact arithmetic.

Elements are Mal'cev normal forms: exponent vectors over a Hall basis of
basic commutators, denoting the product b_1^e_1 ... b_m^e_m in basis
order.  Multiplication is collection from the left; the commutator tails
it needs are computed once per letter pair inside a truncated free
associative algebra (the Magnus embedding) and memoized.

The algebra model doubles as an independent multiplication oracle: the
embedding g -> 1 + (higher terms) is faithful on the class-c truncation,
so disagreement between collection and the model is a hard bug.
"""

from __future__ import annotations

from .errors import InternalCheckError, SizeLimitError, ValidationError
from .matrices import HnfSolver, IntMatrix

MAX_BASIS = 2000


def witt_number(d, w):
    """Rank of the weight-w layer of the free Lie ring on d generators.

    >>> [witt_number(2, w) for w in range(1, 6)]
    [2, 1, 2, 3, 6]
    >>> witt_number(1, 3)
    0
    """
    def mobius(n):
        out = 1
        p = 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                out = -out
            p += 1
        if n > 1:
            out = -out
        return out

    total = 0
    e = 1
    while e <= w:
        if w % e == 0:
            total += mobius(e) * d ** (w // e)
        e += 1
    return total // w


class HallLetter:
    """One basic commutator: a generator, or a bracket of earlier letters."""

    __slots__ = ("index", "weight", "left", "right")

    def __init__(self, index, weight, left=None, right=None):
        self.index = index
        self.weight = weight
        self.left = left
        self.right = right

    def __repr__(self):
        if self.left is None:
            return "x%d" % self.index
        return "[%d,%d]" % (self.left, self.right)


class FreeNilGroup:
    """Free nilpotent group of the given rank and class.

    >>> F = FreeNilGroup(2, 2)
    >>> len(F.letters)
    3
    >>> FreeNilGroup(2, 3).basis_size()
    5
    >>> FreeNilGroup(1, 5).basis_size()
    1
    """

    def __init__(self, rank, nclass, max_basis=MAX_BASIS):
        if rank < 1 or nclass < 1:
            raise ValidationError("need rank >= 1 and class >= 1")
        self.rank = rank
        self.nclass = nclass
        letters = [HallLetter(i, 1) for i in range(rank)]
        for w in range(2, nclass + 1):
            pairs = []
            for u in range(len(letters)):
                lu = letters[u]
                for v in range(u):
                    if lu.weight + letters[v].weight != w:
                        continue
                    if lu.left is not None and lu.right > v:
                        continue
                    pairs.append((u, v))
            pairs.sort()
            for u, v in pairs:
                if len(letters) >= max_basis:
                    raise SizeLimitError("Hall basis exceeds bound %d"
                                         % max_basis)
                letters.append(HallLetter(len(letters), w, u, v))
        self.letters = letters
        self.weights = tuple(l.weight for l in letters)
        self._identity = NilWord(self, (0,) * len(letters))
        self._tails = {}
        self._magnus_letters = None
        self._solvers = {}
        self._truncated = None

    def basis_size(self):
        return len(self.letters)

    def weight_counts(self):
        counts = [0] * (self.nclass + 1)
        for l in self.letters:
            counts[l.weight] += 1
        return counts[1:]

    def identity(self):
        return self._identity

    def generator(self, i):
        if not 0 <= i < self.rank:
            raise ValidationError("no generator %d" % i)
        exps = [0] * len(self.letters)
        exps[i] = 1
        return NilWord(self, tuple(exps))

    def word(self, exps):
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.letters):
            raise ValidationError("exponent vector length mismatch")
        return NilWord(self, exps)

    # ---- collection -----------------------------------------------------

    def multiply(self, u, v):
        """Normal form of u * v by collection from the left.

        >>> F = FreeNilGroup(2, 2)
        >>> x1, x2 = F.generator(0), F.generator(1)
        >>> F.multiply(x2, x1).exps   # x2 x1 = x1 x2 [x2,x1]
        (1, 1, 1)
        >>> xy = F.multiply(x1, x2)
        >>> F.multiply(xy, xy).exps   # (x1 x2)^2 = x1^2 x2^2 c
        (2, 2, 1)
        """
        if u.parent is not self or v.parent is not self:
            raise ValidationError("words from a different group")
        return NilWord(self, self._collect(u.syllables() + v.syllables()))

    def inverse(self, u):
        sylls = [(l, -e) for l, e in reversed(u.syllables())]
        return NilWord(self, self._collect(sylls))

    def _collect(self, syllables):
        weights = self.weights
        nclass = self.nclass
        body = [list(s) for s in syllables if s[1]]
        out = [0] * len(self.letters)
        while body:
            # stages go in increasing letter order; tails only ever insert
            # strictly heavier letters, so the current minimum is final once
            # its occurrences are consumed
            cur = min(s[0] for s in body)
            while True:
                pos = next((i for i, s in enumerate(body) if s[0] == cur),
                           None)
                if pos is None:
                    break
                # bubble to the front; everything before the first
                # occurrence carries a strictly later letter
                while pos > 0:
                    t, f = body[pos - 1]
                    e = body[pos][1]
                    body[pos - 1], body[pos] = body[pos], body[pos - 1]
                    if weights[t] + weights[cur] <= nclass:
                        tail = self.tail(t, cur, f, e)
                        if tail:
                            body[pos + 1:pos + 1] = [list(s) for s in tail]
                    pos -= 1
                out[cur] += body[0][1]
                del body[0]
        return tuple(out)

    def tail(self, t, l, f, e):
        """Syllables of [b_t^f, b_l^e], the collection correction term."""
        key = (t, l, f, e)
        val = self._tails.get(key)
        if val is None:
            if t == l or self.weights[t] + self.weights[l] > self.nclass:
                val = ()
            else:
                af = _alg_power(self._magnus_letter(t), f, self.nclass)
                be = _alg_power(self._magnus_letter(l), e, self.nclass)
                val = tuple(self.extract(
                    _alg_comm(af, be, self.nclass)).syllables())
            self._tails[key] = val
        return val

    # ---- Magnus model ---------------------------------------------------

    def _magnus_letter(self, i):
        if self._magnus_letters is None:
            self._magnus_letters = [None] * len(self.letters)
        z = self._magnus_letters[i]
        if z is None:
            letter = self.letters[i]
            if letter.left is None:
                z = {(): 1, (i,): 1}
            else:
                z = _alg_comm(self._magnus_letter(letter.left),
                              self._magnus_letter(letter.right), self.nclass)
            self._magnus_letters[i] = z
        return z

    def magnus_image(self, u):
        """Image of a normal form in the truncated free algebra."""
        z = {(): 1}
        for l, e in u.syllables():
            z = _alg_mul(z, _alg_power(self._magnus_letter(l), e,
                                       self.nclass), self.nclass)
        return z

    def _solver(self, w):
        solver = self._solvers.get(w)
        if solver is None:
            rows = []
            idx = [i for i in range(len(self.letters))
                   if self.weights[i] == w]
            monomials = sorted(
                {m for i in idx for m in self._magnus_letter(i) if len(m) == w})
            mono_pos = {m: j for j, m in enumerate(monomials)}
            for i in idx:
                z = self._magnus_letter(i)
                row = [0] * len(monomials)
                for m, cval in z.items():
                    if len(m) == w:
                        row[mono_pos[m]] = cval
                rows.append(row)
            solver = (idx, mono_pos, HnfSolver(
                IntMatrix(rows, cols=len(monomials))))
            self._solvers[w] = solver
        return solver

    def extract(self, z):
        """Recover the normal form whose Magnus image is z.

        Peels one weight layer at a time; a layer that is not an integer
        combination of basic-commutator leading terms means z was not the
        image of a group element, which is an internal bug.
        """
        exps = [0] * len(self.letters)
        residue = z
        for w in range(1, self.nclass + 1):
            layer = {m: c for m, c in residue.items() if len(m) == w and c}
            if not layer:
                continue
            idx, mono_pos, solver = self._solver(w)
            target = [0] * len(mono_pos)
            for m, c in layer.items():
                if m not in mono_pos:
                    raise InternalCheckError(
                        "weight-%d layer outside the Hall span" % w)
                target[mono_pos[m]] = c
            coeffs = solver.solve(target)
            if coeffs is None:
                raise InternalCheckError(
                    "weight-%d layer is not an integer Hall combination" % w)
            strip = {(): 1}
            for i, c in zip(idx, coeffs):
                exps[i] = c
                if c:
                    strip = _alg_mul(strip,
                                     _alg_power(self._magnus_letter(i), c,
                                                self.nclass), self.nclass)
            residue = _alg_mul(_alg_inverse(strip, self.nclass),
                               residue, self.nclass)
        if any(c for m, c in residue.items() if m):
            raise InternalCheckError("nonidentity residue after extraction")
        if residue.get((), 0) != 1:
            raise InternalCheckError("unit coefficient corrupted")
        return NilWord(self, tuple(exps))

    def multiply_via_model(self, u, v):
        """Independent product via the algebra model (oracle for multiply)."""
        return self.extract(_alg_mul(self.magnus_image(u),
                                     self.magnus_image(v), self.nclass))

    # ---- truncation -----------------------------------------------------

    def truncated(self):
        """The class-(c-1) group on the same generators.

        Its Hall letters are exactly the weight < c prefix of this basis,
        so truncating a word is dropping the top-weight coordinates.
        """
        if self.nclass == 1:
            raise ValidationError("cannot truncate class 1")
        if self._truncated is None:
            self._truncated = FreeNilGroup(self.rank, self.nclass - 1)
        return self._truncated

    def truncate_word(self, u):
        low = self.truncated()
        return NilWord(low, u.exps[:len(low.letters)])

    def lift_word(self, u):
        """Zero-pad a word of the truncation back into this group.

        A section of truncate_word, not a homomorphism.
        """
        low = self.truncated()
        if u.parent is not low:
            raise ValidationError("word not from the truncation")
        return NilWord(self, u.exps + (0,) * (len(self.letters)
                                              - len(low.letters)))

    def __repr__(self):
        return "FreeNilGroup(rank=%d, class=%d)" % (self.rank, self.nclass)


class NilWord:
    """An element in Mal'cev normal form."""

    __slots__ = ("parent", "exps")

    def __init__(self, parent, exps):
        self.parent = parent
        self.exps = exps

    def syllables(self):
        return [(i, e) for i, e in enumerate(self.exps) if e]

    def is_identity(self):
        return not any(self.exps)

    def leading(self):
        """(letter index, exponent) of the first nonzero coordinate."""
        for i, e in enumerate(self.exps):
            if e:
                return i, e
        return None

    def weight_one(self):
        """The generator-exponent vector (the abelianization image)."""
        return list(self.exps[:self.parent.rank])

    def mul(self, other):
        return self.parent.multiply(self, other)

    def inverse(self):
        return self.parent.inverse(self)

    def pow(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.parent.identity()
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base)
            n >>= 1
        return out

    def conj(self, by):
        """by^-1 * self * by."""
        return by.inverse().mul(self).mul(by)

    def comm(self, other):
        """[self, other] = self^-1 other^-1 self other."""
        return self.inverse().mul(other.inverse()).mul(self).mul(other)

    def __eq__(self, other):
        return (isinstance(other, NilWord) and self.parent is other.parent
                and self.exps == other.exps)

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return "NilWord(%r)" % (self.exps,)

    def to_json(self):
        return {"rank": self.parent.rank, "class": self.parent.nclass,
                "exponents": list(self.exps)}


class NilHom:
    """Homomorphism between free nilpotent groups, given on generators."""

    __slots__ = ("src", "dst", "images", "_letter_images")

    def __init__(self, src, dst, images):
        if len(images) != src.rank:
            raise ValidationError("need one image per generator")
        for w in images:
            if w.parent is not dst:
                raise ValidationError("images must live in the codomain")
        self.src = src
        self.dst = dst
        self.images = list(images)
        self._letter_images = {}

    def letter_image(self, i):
        img = self._letter_images.get(i)
        if img is None:
            letter = self.src.letters[i]
            if letter.left is None:
                img = self.images[i]
            else:
                img = self.letter_image(letter.left).comm(
                    self.letter_image(letter.right))
            self._letter_images[i] = img
        return img

    def apply(self, u):
        out = self.dst.identity()
        for l, e in u.syllables():
            out = out.mul(self.letter_image(l).pow(e))
        return out


# ---- truncated free associative algebra ---------------------------------
#
# Elements are dicts mapping generator-index tuples (noncommutative
# monomials) to integer coefficients; monomials longer than the class are
# dropped.  Group elements embed as units 1 + (degree >= 1 terms).

def _alg_mul(a, b, nclass):
    out = {}
    for m1, c1 in a.items():
        room = nclass - len(m1)
        for m2, c2 in b.items():
            if len(m2) > room:
                continue
            key = m1 + m2
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _alg_inverse(a, nclass):
    if a.get((), 0) != 1:
        raise InternalCheckError("inverting a non-unit algebra element")
    neg = {m: -c for m, c in a.items() if m}
    out = {(): 1}
    term = {(): 1}
    for _ in range(nclass):
        term = _alg_mul(term, neg, nclass)
        if not term:
            break
        for m, c in term.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def _alg_power(a, n, nclass):
    if n < 0:
        a = _alg_inverse(a, nclass)
        n = -n
    out = {(): 1}
    while n:
        if n & 1:
            out = _alg_mul(out, a, nclass)
        n >>= 1
        if n:
            a = _alg_mul(a, a, nclass)
    return out


def _alg_comm(a, b, nclass):
    return _alg_mul(_alg_mul(_alg_inverse(a, nclass),
                             _alg_inverse(b, nclass), nclass),
                    _alg_mul(a, b, nclass), nclass)
