"""Dirichlet L-functions as exact polynomials in u = q^{-s} with coefficients
in Z[zeta_ell], removal of the trivial unit-circle factor of even characters,
and the exact central-point vanishing decision.

For an even primitive character the Dirichlet sum carries one factor
(1 - zeta^k u) coming from the unramified place at infinity; the completed
L-function here is the quotient by that factor, which is the reading under
which the degree bookkeeping deg L* = deg f - 2 and the zeta-function
decomposition both hold.  The factor is unique because the quotient's inverse
roots all have absolute value sqrt(q), never 1.

The central point is u = q^{-1/2}.  When the exponent e of q = p^e is even
this is 1/p^{e/2} and the decision is a single integer-vector zero test in
Z[zeta_ell]; when e is odd the value is split into components along 1 and
sqrt(q), which are independent over Q(zeta_ell) since p != ell.
"""

from __future__ import annotations

import json

from .characters import DirichletChar, char_context, char_sum
from .cyclo import CycInt, mu_embed
from .errors import InputError, InvariantViolation
from .ffield import factorize_int
from .polyring import poly_to_json


class LPoly:
    """L(u, chi) = sum c_n u^n with CycInt coefficients; c_0 = 1."""

    __slots__ = ("ell", "q", "coeffs", "char_ref")

    def __init__(self, ell: int, q: int, coeffs, char_ref=None):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs or coeffs[0] != CycInt.from_int(ell, 1):
            raise InputError("an L-polynomial has constant coefficient 1")
        self.ell = ell
        self.q = q
        self.coeffs = tuple(coeffs)
        self.char_ref = char_ref

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return (self.ell, self.q, self.coeffs) == (other.ell, other.q, other.coeffs)

    def __repr__(self):
        return f"LPoly(q={self.q}, ell={self.ell}, coeffs={[list(c.coords) for c in self.coeffs]})"

    def __mul__(self, other: "LPoly") -> "LPoly":
        if self.q != other.q or self.ell != other.ell:
            raise InputError("mixed L-polynomial products")
        zero = CycInt.from_int(self.ell, 0)
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return LPoly(self.ell, self.q, out)

    def conjugate_coeffs(self) -> "LPoly":
        from .cyclo import conjugate

        return LPoly(self.ell, self.q, [conjugate(c) for c in self.coeffs])

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "ell": self.ell,
            "coeffs": [c.to_json() for c in self.coeffs],
            "char": self.char_ref,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LPoly":
        return cls(
            int(data["ell"]),
            int(data["q"]),
            [CycInt.from_json(c) for c in data["coeffs"]],
            data.get("char"),
        )


def l_polynomial(chi: DirichletChar, *, verify_orthogonality: bool = False) -> LPoly:
    """L(u, chi) by direct character sums: c_n = sum of chi(g) over monic g of
    degree n, for n = 0 .. deg(conductor) - 1."""
    degf = chi.degree
    coeffs = [char_sum(chi, n) for n in range(degf)]
    if verify_orthogonality:
        extra = char_sum(chi, degf)
        if not extra.is_zero():
            raise InvariantViolation(
                "orthogonality", f"degree-{degf} character sum is {extra!r}, not 0"
            )
    return LPoly(chi.ell, chi.field.q, coeffs, char_ref=chi.to_json())


def dual_char(chi: DirichletChar) -> DirichletChar:
    """The conjugate character: every conductor exponent e goes to ell - e."""
    return chi.dual()


def _divide_unit_root(L: LPoly, k: int) -> "LPoly | None":
    """Exact quotient L / (1 - zeta^k u), or None if the division has remainder."""
    zk = mu_embed(L.ell, k)
    # synthetic division: q_i = c_i + zeta^k * q_{i-1}
    out = []
    acc = CycInt.from_int(L.ell, 0)
    for i in range(L.degree + 1):
        acc = L.coeffs[i] + zk * acc
        out.append(acc)
    if not out[-1].is_zero():
        return None
    return LPoly(L.ell, L.q, out[:-1])


def trivial_factor_candidates(L: LPoly) -> list[int]:
    """All k in Z/ell with (1 - zeta^k u) dividing L exactly."""
    return [k for k in range(L.ell) if _divide_unit_root(L, k) is not None]


def strip_trivial_factor(L: LPoly, chi: DirichletChar) -> tuple[LPoly, "int | None"]:
    """Remove the unit-circle factor of an even character's L; odd L is returned
    unchanged with k = None.  When several k divide (never observed; the
    stripped polynomial has no unit-circle roots), the smallest is taken."""
    if not chi.even:
        return L, None
    ks = trivial_factor_candidates(L)
    if not ks:
        raise InvariantViolation(
            "even-trivial-zero", f"no mu_ell root factor in L of {chi!r}"
        )
    k = ks[0]
    return _divide_unit_root(L, k), k


def twist_exponent(model) -> int:
    """The exponent k_c with c^((q-1)/ell) = zeta^{k_c} for the model's twist
    constant c.  The curve's L-data is that of the untwisted character with u
    replaced by zeta^{k_c} u, because (c/P) = zeta^{k_c deg P}."""
    F = model.field
    ctx = char_context(F, model.ell)
    val = F.pow(model.twist, (F.q - 1) // model.ell)
    k = ctx.zeta_pow_index.get(F.index(val))
    if k is None:  # pragma: no cover - twist is a unit
        raise InvariantViolation("twist-class", "twist constant outside the unit group")
    return k


def rescale_by_root(L: LPoly, k: int) -> LPoly:
    """L(zeta^k u): multiplies c_n by zeta^{kn}; rotates all roots by zeta^{-k}."""
    if k % L.ell == 0:
        return L
    return LPoly(
        L.ell,
        L.q,
        [c * mu_embed(L.ell, k * n) for n, c in enumerate(L.coeffs)],
        char_ref=L.char_ref,
    )


def central_value_is_zero(L: LPoly) -> bool:
    """Exact decision whether L(q^{-1/2}) = 0.

    Clearing denominators by q^{deg/2}, the value is sum c_n (sqrt q)^{deg-n}.
    For q = p^e with e even this is a single Z[zeta_ell] sum; for e odd it
    splits into A + B sqrt(q) whose components must vanish separately.
    """
    fac = factorize_int(L.q)
    if len(fac) != 1:
        raise InputError(f"{L.q} is not a prime power")
    (p, e), = fac.items()
    deg = L.degree
    if e % 2 == 0:
        s = p ** (e // 2)
        acc = CycInt.from_int(L.ell, 0)
        for n, c in enumerate(L.coeffs):
            acc = acc + c * s ** (deg - n)
        return acc.is_zero()
    from .cyclo import SqrtExt, sqrt_ext_for

    a = CycInt.from_int(L.ell, 0)
    b = CycInt.from_int(L.ell, 0)
    q = L.q
    for n, c in enumerate(L.coeffs):
        m = deg - n
        if m % 2 == 0:
            a = a + c * q ** (m // 2)
        else:
            b = b + c * q ** ((m - 1) // 2)
    value: SqrtExt = sqrt_ext_for(L.ell, p, a, b, q)  # validates independence (p != ell)
    return value.is_zero()


# -- append-only cache -----------------------------------------------------------


def _canon(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(chi: DirichletChar) -> str:
    return _canon(
        {
            "field": chi.field.descriptor(),
            "ell": chi.ell,
            "factors": [[poly_to_json(P), e] for P, e in chi.exponent_map],
        }
    )


class LCache:
    """Append-only JSON-lines cache of L-polynomials keyed by character.

    Every line carries a sha256 checksum of its canonical payload; a mismatch
    raises CacheCorrupt so the caller can rebuild.
    """

    def __init__(self, path):
        import hashlib

        self._hashlib = hashlib
        self.path = path
        self.table: dict[str, dict] = {}
        self.hits = 0
        self.misses = 0
        try:
            fh = open(path, "r", encoding="utf-8")
        except FileNotFoundError:
            return
        with fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                body = {"key": rec["key"], "value": rec["value"]}
                digest = self._hashlib.sha256(_canon(body).encode()).hexdigest()
                if digest != rec.get("checksum"):
                    from .errors import CacheCorrupt

                    raise CacheCorrupt(f"bad checksum in {path}")
                self.table[rec["key"]] = rec["value"]

    def get(self, chi: DirichletChar) -> "LPoly | None":
        val = self.table.get(cache_key(chi))
        if val is None:
            self.misses += 1
            return None
        self.hits += 1
        return LPoly.from_json(val)

    def put(self, chi: DirichletChar, L: LPoly) -> None:
        key = cache_key(chi)
        if key in self.table:
            return
        value = L.to_json()
        self.table[key] = value
        body = {"key": key, "value": value}
        digest = self._hashlib.sha256(_canon(body).encode()).hexdigest()
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(_canon({"key": key, "value": value, "checksum": digest}) + "\n")
