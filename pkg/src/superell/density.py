"""Local densities of the squarefree sieve for binary forms over F_q[t].

For a form F(u, v) and a monic irreducible pi, the local count c_pi is the
number of pairs (u, v) in (A/pi^2)^2 with F(u, v) = 0 mod pi^2, and the local
factor is 1 - c_pi / |pi|^4.  Products of these factors over pi (with the
finitely many primes of norm <= deg F excluded, where a factor could vanish)
converge to the density of squarefree specializations F(numer, denom).

Two exact routes to c_pi are implemented: a literal brute force over |pi|^4
pairs, and a valuation-structured shortcut for forms with constant
coefficients (split off the u- and v-multiplicities, count the dehomogenized
roots mod pi^2, and count the locus (u, v) = (0, 0) mod pi separately).  The
shortcut is cross-checked against brute force in the tests.

The single-variable mode (m = 1) exists as a convergence oracle: the density
of squarefree monic polynomials is exactly 1 - 1/q from degree 2 on.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .curves import SuperellipticModel
from .errors import InputError, ResourceLimit
from .families import BinaryForm, homogenize
from .ffield import Field
from .polyring import Poly, irreducibles, is_squarefree, poly_to_json

BRUTE_FORCE_LIMIT = 10**8


def product_form(M0: SuperellipticModel) -> BinaryForm:
    """The homogenized product F = prod F_i of all non-constant components."""
    f = Poly.one(M0.field)
    for D in M0.components:
        f = f * D
    return homogenize(f)


@dataclass(frozen=True)
class LocalFactor:
    prime: Poly
    c: int
    factor: Fraction

    @property
    def flagged_zero(self) -> bool:
        """True when the factor vanishes: the excluded-prime scenario."""
        return self.factor == 0

    def to_json(self) -> dict:
        return {
            "prime": poly_to_json(self.prime),
            "c": self.c,
            "num": str(self.factor.numerator),
            "den": str(self.factor.denominator),
        }


@dataclass
class DensityReport:
    form: BinaryForm
    truncation_degree: int
    excluded: list[Poly]
    factors: list[LocalFactor]
    truncated_product: Fraction
    empirical: "dict | None" = dc_field(default=None)

    def to_json(self) -> dict:
        out = {
            "schema_version": 1,
            "kind": "density",
            "form": self.form.to_json(),
            "truncation_degree": self.truncation_degree,
            "excluded": [poly_to_json(p) for p in self.excluded],
            "factors": [f.to_json() for f in self.factors],
            "truncated_product": {
                "num": str(self.truncated_product.numerator),
                "den": str(self.truncated_product.denominator),
            },
            "empirical": self.empirical,
        }
        return out


def excluded_primes(F_form: BinaryForm) -> list[Poly]:
    """All monic irreducibles with norm at most deg F; only at these could a
    local factor vanish, because F mod pi has at most deg(F) * |pi| zeros."""
    d = F_form.degree
    F = F_form.field
    out: list[Poly] = []
    deg = 1
    while F.q**deg <= d:
        out.extend(irreducibles(F, deg))
        deg += 1
    return out


# -- local counts ----------------------------------------------------------------


def _residues(F: Field, degree: int):
    """All polynomials of degree < degree, canonical order."""
    q = F.q
    for j in range(q**degree):
        cs = []
        k = j
        for _ in range(degree):
            cs.append(F.elem_at(k % q))
            k //= q
        yield Poly(F, cs)


def local_count_brute(F_form: BinaryForm, pi: Poly) -> int:
    F = F_form.field
    pi2 = pi * pi
    size = F.q ** (2 * pi.degree)
    if size * size > BRUTE_FORCE_LIMIT:
        raise ResourceLimit(f"brute-force local count at |pi|^4 = {size * size}")
    res = list(_residues(F, 2 * pi.degree))
    d = F_form.degree
    count = 0
    for u in res:
        upows = [Poly.one(F)]
        for _ in range(d):
            upows.append((upows[-1] * u) % pi2)
        for v in res:
            vpows = [Poly.one(F)]
            for _ in range(d):
                vpows.append((vpows[-1] * v) % pi2)
            acc = Poly.zero(F)
            for i, c in enumerate(F_form.coeffs):
                if c.is_zero():
                    continue
                acc = acc + upows[i] * vpows[d - i] * c
            if (acc % pi2).is_zero():
                count += 1
    return count


def _root_count_mod_pi2(g: Poly, pi: Poly) -> int:
    """Number of w in A/pi^2 with g(w) = 0 mod pi^2, by root scan plus lifting:
    a simple root mod pi lifts uniquely; a critical root lifts |pi| ways or 0."""
    F = g.field
    pi2 = pi * pi
    gp = g.derivative()
    total = 0
    for r in _residues(F, pi.degree):
        if not _eval_mod(g, r, pi).is_zero():
            continue
        if not _eval_mod(gp, r, pi).is_zero():
            total += 1
        elif _eval_mod(g, r, pi2).is_zero():
            total += F.q**pi.degree
    return total


def _eval_mod(g: Poly, r: Poly, mod: Poly) -> Poly:
    """g(r) mod `mod` by Horner on polynomial residues."""
    F = g.field
    acc = Poly.zero(F)
    for c in reversed(g.coeffs):
        acc = (acc * r + Poly.constant(c)) % mod
    return acc


def _split_uv_multiplicity(F_form: BinaryForm) -> tuple[int, int]:
    """(mult of u, mult of v) in F: v-multiplicity is deg F - deg f, and
    u-multiplicity is the valuation of f at 0."""
    f = F_form.dehomogenized()
    s_v = F_form.degree - f.degree
    s_u = 0
    for c in f.coeffs:
        if c.is_zero():
            s_u += 1
        else:
            break
    return s_u, s_v


def local_count(F_form: BinaryForm, pi: Poly) -> int:
    """c_pi via the valuation-structured shortcut when applicable, else brute
    force.  Applicable: constant coefficients, squarefree-form multiplicity
    pattern (u- and v-multiplicities at most 1) and total degree >= 2."""
    d = F_form.degree
    s_u, s_v = _split_uv_multiplicity(F_form)
    if d < 2 or s_u > 1 or s_v > 1:
        return local_count_brute(F_form, pi)
    F = F_form.field
    size = F.q**pi.degree
    g = F_form.dehomogenized()  # F(x, 1)
    count = _root_count_mod_pi2(g, pi) * (size * size - size)
    if s_v == 1:
        count += size * size - size  # pi | v needs v = 0 mod pi^2, u a unit
    count += size * size  # (u, v) = (0, 0) mod pi: valuation >= d >= 2
    return count


def local_factor(F_form: BinaryForm, pi: Poly) -> LocalFactor:
    if not pi.is_monic() or pi.degree < 1:
        raise InputError("local factors need a monic irreducible prime")
    c = local_count(F_form, pi)
    norm4 = F_form.field.q ** (4 * pi.degree)
    return LocalFactor(prime=pi, c=c, factor=1 - Fraction(c, norm4))


def truncated_density(
    F_form: BinaryForm, deg_max: int, *, empirical: "dict | None" = None
) -> DensityReport:
    """Exact product of local factors over non-excluded primes of degree <= deg_max."""
    excluded = {p.key() for p in excluded_primes(F_form)}
    factors = []
    prod = Fraction(1)
    F = F_form.field
    for deg in range(1, deg_max + 1):
        for pi in irreducibles(F, deg):
            if pi.key() in excluded:
                continue
            lf = local_factor(F_form, pi)
            if lf.flagged_zero:
                from .errors import InvariantViolation

                raise InvariantViolation(
                    "nonvanishing-local-factor",
                    f"included prime {pi!r} has vanishing local factor",
                )
            factors.append(lf)
            prod *= lf.factor
    return DensityReport(
        form=F_form,
        truncation_degree=deg_max,
        excluded=[p for p in excluded_primes(F_form)],
        factors=factors,
        truncated_product=prod,
        empirical=empirical,
    )


# -- m = 1 oracle mode ---------------------------------------------------------------


def squarefree_density_exact(q: int) -> Fraction:
    """The full product over primes of (1 - |pi|^{-2}), telescoped through the
    zeta function of F_q[t]: exactly 1 - 1/q."""
    return Fraction(q - 1, q)


def exhaustive_squarefree_count(F: Field, degree: int) -> int:
    """Number of squarefree monic polynomials of the given degree, counted by
    marking every product h^2 * m (h monic non-constant) in a table: a direct
    realisation of the definition, independent of gcd machinery.

    Prime fields only; coefficients are handled as plain int vectors mod p so
    that degree 8 at q = 7 stays affordable.
    """
    if F.base is not None:
        raise InputError("the exhaustive squarefree oracle supports prime fields only")
    p = F.p
    if p**degree > 2 * 10**7:
        raise ResourceLimit("exhaustive squarefree count too large")
    if degree <= 1:
        return p**degree
    total = p**degree
    marked = bytearray(total)

    def decode(j: int, deg: int) -> list[int]:
        cs = []
        for _ in range(deg):
            cs.append(j % p)
            j //= p
        cs.append(1)
        return cs

    def mul(a: list[int], b: list[int]) -> list[int]:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [v % p for v in out]

    for k in range(1, degree // 2 + 1):
        mdeg = degree - 2 * k
        for jh in range(p**k):
            h = decode(jh, k)
            h2 = mul(h, h)
            for jm in range(p**mdeg):
                f = mul(h2, decode(jm, mdeg))
                code = 0
                for c in reversed(f[:-1]):
                    code = code * p + c
                marked[code] = 1
    return total - sum(marked)


def squarefree_frequency(F: Field, degree: int) -> Fraction:
    """Exhaustively counted fraction of squarefree monic polynomials of the
    given degree; equals 1 - 1/q exactly for degree >= 2."""
    return Fraction(exhaustive_squarefree_count(F, degree), F.q**degree)


# -- seeded sampling -------------------------------------------------------------------


class _LCG:
    """64-bit linear congruential generator; platform-independent."""

    __slots__ = ("state",)

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & self.MASK
        for _ in range(4):
            self.next_raw()

    def next_raw(self) -> int:
        self.state = (self.state * self.MULT + self.INC) & self.MASK
        return self.state

    def below(self, n: int) -> int:
        return (self.next_raw() >> 24) % n


def _sample_poly(F: Field, max_deg: int, rng: _LCG) -> Poly:
    return Poly(F, tuple(F.elem_at(rng.below(F.q)) for _ in range(max_deg + 1)))


def _strip_excluded(val: Poly, excluded: list[Poly]) -> Poly:
    for pi in excluded:
        while not val.is_zero() and (val % pi).is_zero():
            val = val // pi
    return val


def passes_squarefree_filter(F_form: BinaryForm, numer: Poly, denom: Poly, excluded) -> bool:
    """True when F(numer, denom) is nonzero and squarefree away from the
    excluded primes (squarefree as an ideal of the localized ring)."""
    val = F_form.evaluate(numer, denom)
    if val.is_zero():
        return False
    val = _strip_excluded(val, excluded)
    return val.degree == 0 or is_squarefree(val)


def empirical_density(
    M0: SuperellipticModel,
    h_deg: int,
    samples: int,
    seed: int,
    *,
    coprime_only: bool = False,
) -> "dict | None":
    """Fraction of seeded-random pairs (numer, denom) with deg <= h_deg whose
    specialization product F(numer, denom) is squarefree away from the
    excluded primes; deterministic given seed.

    By default pairs are drawn uniformly from the full box (all pairs of degree
    <= h_deg), the regime in which the local-factor product is the limit; when
    no prime is excluded, a non-coprime pair never passes the filter, since
    gcd^d divides the product and d >= 2.  With coprime_only=True, non-coprime
    pairs are rejected and resampled, which rescales the frequency by roughly
    the inverse density of coprime pairs, about q/(q-1).
    """
    if samples == 0:
        return None
    from .polyring import gcd as poly_gcd

    F_form = product_form(M0)
    excluded = excluded_primes(F_form)
    F = M0.field
    rng = _LCG(seed)
    hits = 0
    for _ in range(samples):
        while True:
            numer = _sample_poly(F, h_deg, rng)
            denom = _sample_poly(F, h_deg, rng)
            if numer.is_zero() and denom.is_zero():
                continue
            if coprime_only and poly_gcd(numer, denom).degree != 0:
                continue
            break
        if passes_squarefree_filter(F_form, numer, denom, excluded):
            hits += 1
    return {
        "samples": samples,
        "hits": hits,
        "frequency": hits / samples,
        "seed": seed,
        "coprime_only": coprime_only,
    }
