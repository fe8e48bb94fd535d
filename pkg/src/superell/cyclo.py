"""Exact arithmetic in Z[zeta_ell] for an odd prime ell, and in its quadratic
extension by an adjoined square root.

Elements are stored in the power basis {1, zeta, ..., zeta^{ell-2}} so that
equality and the zero test are coordinatewise; coordinates are plain Python
ints and therefore unbounded.  The adjoined radicand q must be coprime to ell
in the characteristic sense (p != ell), which keeps {1, sqrt(q)} linearly
independent over Q(zeta_ell): the only quadratic subfield of Q(zeta_ell) is
Q(sqrt(+-ell)).
"""

from __future__ import annotations

from .errors import InputError
from .ffield import is_prime


class CycInt:
    """An element of Z[zeta_ell] in the basis {1, zeta, ..., zeta^{ell-2}}."""

    __slots__ = ("ell", "coords")

    def __init__(self, ell: int, coords):
        coords = tuple(coords)
        if len(coords) != ell - 1:
            raise InputError(f"need {ell - 1} coordinates, got {len(coords)}")
        self.ell = ell
        self.coords = coords

    @classmethod
    def from_int(cls, ell: int, n: int) -> "CycInt":
        return cls(ell, (n,) + (0,) * (ell - 2))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_int(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_int(self) -> int:
        if not self.is_int():
            raise InputError(f"{self} is not a rational integer")
        return self.coords[0]

    def _check(self, other: "CycInt"):
        if self.ell != other.ell:
            raise InputError("mixed cyclotomic orders")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.ell, other)
        self._check(other)
        return CycInt(self.ell, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.ell, other)
        self._check(other)
        return CycInt(self.ell, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CycInt(self.ell, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.ell, tuple(a * other for a in self.coords))
        self._check(other)
        ell = self.ell
        n = ell - 1
        conv = [0] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                conv[i + j] += a * b
        # fold zeta^ell = 1, then expand zeta^{ell-1} = -(1 + ... + zeta^{ell-2})
        folded = [0] * ell
        for e, c in enumerate(conv):
            folded[e % ell] += c
        top = folded[ell - 1]
        return CycInt(ell, tuple(folded[i] - top for i in range(n)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_int() and self.coords[0] == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.ell == other.ell and self.coords == other.coords

    def __hash__(self):
        return hash((self.ell, self.coords))

    def __repr__(self):
        return f"CycInt(ell={self.ell}, {list(self.coords)})"

    def to_json(self) -> dict:
        return {"ell": self.ell, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycInt":
        return cls(int(data["ell"]), tuple(int(c) for c in data["coords"]))


def mu_embed(ell: int, k: int) -> CycInt:
    """zeta^k in basis form; the fixed embedding of mu_ell into Z[zeta_ell]."""
    if ell == 2 or not is_prime(ell) or ell % 2 == 0:
        raise InputError(f"ell must be an odd prime, got {ell}")
    k %= ell
    if k < ell - 1:
        coords = [0] * (ell - 1)
        coords[k] = 1
        return CycInt(ell, coords)
    return CycInt(ell, (-1,) * (ell - 1))


def conjugate(x: CycInt) -> CycInt:
    """Complex conjugation zeta -> zeta^{-1}; an involution."""
    out = CycInt.from_int(x.ell, 0)
    for i, c in enumerate(x.coords):
        if c:
            out = out + mu_embed(x.ell, -i) * c
    return out


def is_zero(x: CycInt) -> bool:
    return x.is_zero()


class SqrtExt:
    """a + b*sqrt(radicand) with a, b in Z[zeta_ell].

    Only constructed with radicand q = p^e where p != ell, so equality is
    componentwise.
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a: CycInt, b: CycInt, radicand: int):
        if radicand <= 0:
            raise InputError("radicand must be positive")
        if a.ell != b.ell:
            raise InputError("mixed cyclotomic orders")
        self.a = a
        self.b = b
        self.radicand = radicand

    def _check(self, other: "SqrtExt"):
        if self.radicand != other.radicand or self.a.ell != other.a.ell:
            raise InputError("mixed quadratic extensions")

    def __add__(self, other: "SqrtExt") -> "SqrtExt":
        self._check(other)
        return SqrtExt(self.a + other.a, self.b + other.b, self.radicand)

    def __mul__(self, other: "SqrtExt") -> "SqrtExt":
        self._check(other)
        q = self.radicand
        return SqrtExt(
            self.a * other.a + self.b * other.b * q,
            self.a * other.b + self.b * other.a,
            q,
        )

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SqrtExt):
            return NotImplemented
        return (
            self.radicand == other.radicand and self.a == other.a and self.b == other.b
        )

    def __repr__(self):
        return f"SqrtExt({self.a!r} + {self.b!r}*sqrt({self.radicand}))"


def sqrt_ext_for(ell: int, p: int, a: CycInt, b: CycInt, radicand: int) -> SqrtExt:
    """Guarded constructor: refuses p == ell, where independence would fail."""
    if p == ell:
        raise InputError("sqrt(q) with p == ell is not independent of Q(zeta_ell)")
    return SqrtExt(a, b, radicand)
