"""Arithmetic, squarefree testing, factorization and irreducible enumeration
in A = F_q[t].

Polynomials are immutable coefficient tuples, low degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  The canonical order
on polynomials of fixed degree is by the integer value of the coefficient
vector read low-to-high in base q (each coefficient by its field index), which
is the same order the field constructor uses for moduli.

Factorization is squarefree decomposition, then distinct-degree splitting,
then seeded equal-degree splitting; it is a pure function of (input, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import limits
from .errors import InputError, ResourceLimit
from .ffield import Field, FieldElem, factorize_int


class Poly:
    """A polynomial over a Field; the ambient ring is F_q[t]."""

    __slots__ = ("field", "coeffs", "_key")

    def __init__(self, field: Field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._key = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (field.one(),))

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def constant(cls, c: FieldElem) -> "Poly":
        return cls(c.field, (c,))

    @classmethod
    def from_ints(cls, field: Field, ints) -> "Poly":
        """Coefficients low-to-high as canonical element indices."""
        return cls(field, tuple(field.elem_at(i % field.q) for i in ints))

    @classmethod
    def from_index(cls, field: Field, degree: int, j: int) -> "Poly":
        """The j-th monic polynomial of the given degree in canonical order."""
        cs = []
        for _ in range(degree):
            cs.append(field.elem_at(j % field.q))
            j //= field.q
        cs.append(field.one())
        return cls(field, tuple(cs))

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.field.index(self.coeffs[-1]) == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def norm(self) -> int:
        if self.is_zero():
            raise InputError("the zero polynomial has no norm")
        return self.field.q**self.degree

    def key(self) -> tuple:
        """Hashable key; tuple comparison reproduces the canonical order
        (degree, then integer value of the coefficient vector in base q)."""
        if self._key is None:
            F = self.field
            self._key = (self.degree, tuple(F.index(c) for c in reversed(self.coeffs)))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.key() == other.key()

    def __hash__(self):
        return hash((id(self.field),) + self.key())

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            ci = F.index(c)
            if ci == 0:
                continue
            if i == 0:
                terms.append(str(ci))
            elif i == 1:
                terms.append(f"{ci}*t" if ci != 1 else "t")
            else:
                terms.append(f"{ci}*t^{i}" if ci != 1 else f"t^{i}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        z = F.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = F.sub(a[i], c)
        return Poly(F, a)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.neg(c) for c in self.coeffs))

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, FieldElem):
            return Poly(F, tuple(F.mul(c, other) for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [F.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        db = other.degree
        rem = list(self.coeffs)
        if len(rem) - 1 < db:
            return Poly.zero(F), self
        monic_div = F.index(other.coeffs[-1]) == 1
        inv_lead = None if monic_div else other.coeffs[-1].inverse()
        quo = [F.zero()] * (len(rem) - db)
        bc = other.coeffs
        while len(rem) - 1 >= db and rem:
            k = len(rem) - 1 - db
            c = rem[-1] if monic_div else F.mul(rem[-1], inv_lead)
            quo[k] = c
            for j in range(db + 1):
                rem[k + j] = F.sub(rem[k + j], F.mul(c, bc[j]))
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.field)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def monic(self) -> tuple[FieldElem, "Poly"]:
        """Split into (unit, monic part); raises on zero."""
        if self.is_zero():
            raise InputError("zero polynomial has no monic normalisation")
        lead = self.coeffs[-1]
        if self.field.index(lead) == 1:
            return lead, self
        inv = lead.inverse()
        return lead, Poly(self.field, tuple(c * inv for c in self.coeffs))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            scale = F.from_int(i)
            out.append(F.mul(self.coeffs[i], scale))
        return Poly(F, out)

    def evaluate(self, x: FieldElem) -> FieldElem:
        """Horner evaluation; x may live in an extension built over self.field."""
        E = x.field
        if E is self.field:
            coeffs = self.coeffs
        else:
            coeffs = tuple(E.embed(c) for c in self.coeffs)
        if not coeffs:
            return E.zero()
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = E.add(E.mul(acc, x), c)
        return acc


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()[1]


def powmod(base: Poly, n: int, mod: Poly) -> Poly:
    out = Poly.one(base.field) % mod
    b = base % mod
    while n:
        if n & 1:
            out = (out * b) % mod
        b = (b * b) % mod
        n >>= 1
    return out


# -- squarefreeness and factorization -----------------------------------------


def is_squarefree(f: Poly) -> bool:
    """True iff no irreducible square divides f.

    Uses gcd(f, f'); f' = 0 with deg f > 0 means f is a p-th power, the
    characteristic-p pitfall the derivative test must special-case.
    """
    if f.is_zero():
        raise InputError("squarefreeness of the zero polynomial is undefined")
    if f.degree <= 0:
        return True
    fp = f.derivative()
    if fp.is_zero():
        return False
    return gcd(f, fp).degree == 0


@dataclass(frozen=True)
class Factorization:
    unit: FieldElem
    factors: tuple[tuple[Poly, int], ...]  # (monic irreducible, exponent), canonical order

    def expand(self) -> Poly:
        out = Poly.constant(self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out

    def num_prime_factors(self) -> int:
        return len(self.factors)

    def mobius(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1


def _pth_root(f: Poly) -> Poly:
    """Inverse Frobenius on a polynomial with vanishing derivative: f = g(t^p)."""
    F = f.field
    p = F.p
    root_pow = F.q // p  # a -> a^{q/p} is the inverse of a -> a^p
    cs = []
    for i in range(0, len(f.coeffs), p):
        cs.append(F.pow(f.coeffs[i], root_pow))
    return Poly(F, cs)


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """f monic; returns pairwise-coprime monic squarefree parts with multiplicities."""
    out: list[tuple[Poly, int]] = []
    if f.degree == 0:
        return out
    fp = f.derivative()
    if fp.is_zero():
        for g, m in _squarefree_decomposition(_pth_root(f)):
            out.append((g, m * f.field.p))
        return out
    c = gcd(f, fp)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        c = c // y
        w = y
        i += 1
    if c.degree > 0:
        for g, m in _squarefree_decomposition(_pth_root(c)):
            out.append((g, m * f.field.p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """f monic squarefree; returns (product of irreducibles of degree d, d)."""
    out = []
    q = f.field.q
    x = Poly.x(f.field)
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of a monic product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    F = f.field
    q = F.q
    n = f.degree
    while True:
        a = Poly(F, tuple(F.elem_at(rng.randrange(q)) for _ in range(n)))
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < n:
            break
        if q % 2 == 1:
            b = powmod(a, (q**d - 1) // 2, f)
            g = gcd(b - Poly.one(F), f)
        else:
            # characteristic 2: additive trace map splits instead
            t = a
            acc = a
            for _ in range(d * F.e - 1):
                t = powmod(t, 2, f)
                acc = acc + t
            g = gcd(acc, f)
        if 0 < g.degree < n:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _stable_seed(seed: int, key: tuple) -> int:
    out = seed & 0xFFFFFFFFFFFFFFFF
    for part in key:
        items = part if isinstance(part, tuple) else (part,)
        for v in items:
            out = (out * 1000003 + v + 0x9E3779B9) & 0xFFFFFFFFFFFFFFFF
    return out


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles; deterministic given seed."""
    if f.is_zero():
        raise InputError("cannot factor the zero polynomial")
    unit, g = f.monic()
    found: dict[tuple, tuple[Poly, int]] = {}
    rng = random.Random(_stable_seed(seed, g.key()))
    for part, mult in _squarefree_decomposition(g):
        for prod, d in _distinct_degree(part):
            for p in _equal_degree(prod, d, rng):
                k = p.key()
                if k in found:
                    q0, e0 = found[k]
                    found[k] = (q0, e0 + mult)
                else:
                    found[k] = (p, mult)
    factors = tuple(sorted(found.values(), key=lambda t: t[0].key()))
    return Factorization(unit=unit, factors=factors)


# -- enumeration -----------------------------------------------------------------


def monics(F: Field, d: int):
    """All monic polynomials of degree exactly d, canonical order."""
    if F.q**d > limits.limit_census():
        raise ResourceLimit(f"enumerating {F.q}^{d} monic polynomials exceeds the census limit")
    for j in range(F.q**d):
        yield Poly.from_index(F, d, j)


def irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d (necklace formula)."""
    total = 0
    for m in _divisors(d):
        total += _mobius_int(m) * q ** (d // m)
    return total // d


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize_int(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _mobius_int(n: int) -> int:
    f = factorize_int(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test; constants are units, not irreducibles."""
    if f.degree < 1:
        return False
    _, g = f.monic()
    n = g.degree
    if n == 1:
        return True
    q = f.field.q
    x = Poly.x(f.field)
    if powmod(x, q**n, g) != x % g:
        return False
    for r in factorize_int(n):
        h = powmod(x, q ** (n // r), g)
        if gcd(h - x, g).degree != 0:
            return False
    return True


def irreducibles(F: Field, d: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree exactly d in canonical order (cached)."""
    if d < 1:
        raise InputError("irreducible enumeration needs degree >= 1")
    cache = F._cache.setdefault("irreducibles", {})
    got = cache.get(d)
    if got is None:
        got = tuple(f for f in monics(F, d) if is_irreducible(f))
        if len(got) != irreducible_count(F.q, d):
            raise AssertionError("irreducible enumeration disagrees with the necklace count")
        cache[d] = got
    return got


def squarefree_monics(F: Field, d: int) -> tuple[Poly, ...]:
    """All monic squarefree polynomials of degree exactly d (cached)."""
    cache = F._cache.setdefault("squarefree_monics", {})
    got = cache.get(d)
    if got is None:
        got = tuple(f for f in monics(F, d) if d == 0 or is_squarefree(f))
        cache[d] = got
    return got


# -- text format ------------------------------------------------------------------


def elem_to_json(a: FieldElem):
    """Prime-field elements as ints; tower elements as digit vectors over the base."""
    if a.field.base is None:
        return a.coeffs[0]
    return [elem_to_json(c) for c in a.coeffs]


def elem_from_json(F: Field, data) -> FieldElem:
    if isinstance(data, int):
        # an int denotes the image of that integer (prime-field constant)
        return F.from_int(data)
    if F.base is None:
        raise InputError("nested coefficient vector given for a prime field")
    return FieldElem(F, tuple(elem_from_json(F.base, d) for d in data))


def poly_to_json(f: Poly) -> list:
    return [elem_to_json(c) for c in f.coeffs]


def poly_from_json(F: Field, data) -> Poly:
    return Poly(F, tuple(elem_from_json(F, d) for d in data))
