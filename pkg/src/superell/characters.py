"""Power residue symbols of prime order ell, the Dirichlet characters they
generate, enumeration of all primitive order-ell characters, and exact
counting formulas.

The embedding of mu_ell(F_q) into Z[zeta_ell] is fixed once per (field, ell):
zeta := g0^((q-1)/ell) for g0 the canonical primitive root, mapped to the
formal zeta.  Any fixed choice of embedding only replaces every character by
a fixed power of itself, which permutes the enumerated list; determinism is
what matters here.

A character is an exponent map over the distinct monic irreducible factors of
its (squarefree) conductor.  Bulk evaluation goes through per-prime residue
symbol tables built from a discrete log over (A/P)^*; the tables are checked
against the direct square-and-multiply symbol in the test suite.
"""

from __future__ import annotations

import itertools

from . import limits
from .cyclo import CycInt, mu_embed
from .errors import InputError, InvariantViolation, ResourceLimit
from .ffield import Field, factorize_int, is_prime, primitive_root
from .polyring import (
    Poly,
    factor,
    gcd,
    irreducible_count,
    poly_from_json,
    poly_to_json,
    powmod,
    squarefree_monics,
)

_ZERO_SENTINEL = -(10**6)


class MuValue:
    """Zero, or a root of unity zeta^k; multiplicative with Zero absorbing."""

    __slots__ = ("ell", "k")

    def __init__(self, ell: int, k):
        self.ell = ell
        self.k = None if k is None else k % ell

    @classmethod
    def zero(cls, ell: int) -> "MuValue":
        return cls(ell, None)

    @classmethod
    def root(cls, ell: int, k: int) -> "MuValue":
        return cls(ell, k)

    def is_zero(self) -> bool:
        return self.k is None

    def __mul__(self, other: "MuValue") -> "MuValue":
        if self.ell != other.ell:
            raise InputError("mixed orders in MuValue product")
        if self.k is None or other.k is None:
            return MuValue.zero(self.ell)
        return MuValue(self.ell, self.k + other.k)

    def __pow__(self, n: int) -> "MuValue":
        if self.k is None:
            return MuValue.zero(self.ell) if n != 0 else MuValue.root(self.ell, 0)
        return MuValue(self.ell, self.k * n)

    def to_cyc(self) -> CycInt:
        if self.k is None:
            return CycInt.from_int(self.ell, 0)
        return mu_embed(self.ell, self.k)

    def __eq__(self, other):
        if not isinstance(other, MuValue):
            return NotImplemented
        return self.ell == other.ell and self.k == other.k

    def __hash__(self):
        return hash((self.ell, self.k))

    def __repr__(self):
        return f"MuValue({'0' if self.k is None else f'zeta^{self.k}'})"


# -- per-(field, ell) context ---------------------------------------------------


class CharContext:
    """Fixed zeta embedding plus cached residue-symbol tables for one (F_q, ell)."""

    def __init__(self, field: Field, ell: int):
        if not is_prime(ell) or ell == 2:
            raise InputError(f"character order must be an odd prime, got {ell}")
        if (field.q - 1) % ell != 0:
            raise InputError(f"q = {field.q} is not 1 mod {ell}")
        self.field = field
        self.ell = ell
        g0 = primitive_root(field)
        self.zeta = field.pow(g0, (field.q - 1) // ell)
        self.zeta_pow_index = {}
        z = field.one()
        for k in range(ell):
            self.zeta_pow_index[field.index(z)] = k
            z = field.mul(z, self.zeta)
        from collections import OrderedDict

        self._symtabs: "OrderedDict[tuple, list[int]]" = OrderedDict()
        self._symtab_entries = 0
        self._symtab_budget = 4 * 10**6  # total cached table entries before eviction
        self._sc: dict[tuple, list[list[int]]] = {}
        self._addtab = None

    # residue index of a polynomial of degree < deg P
    def _residue_index(self, f: Poly) -> int:
        F = self.field
        q = F.q
        out = 0
        for c in reversed(f.coeffs):
            out = out * q + F.index(c)
        return out

    def add_table(self):
        """q x q table of element-index addition (cached per field)."""
        tab = self.field._cache.get("add_idx")
        if tab is None:
            F = self.field
            if F.q > 2048:
                raise ResourceLimit(f"index add table for {F} too large")
            elems = [F.elem_at(i) for i in range(F.q)]
            tab = [[F.index(F.add(a, b)) for b in elems] for a in elems]
            F._cache["add_idx"] = tab
        return tab

    def symbol_table(self, P: Poly) -> list[int]:
        """s0[residue index] = exponent k with (r/P) = zeta^k; sentinel for P | r.

        Built from a discrete log over (A/P)^*: (r/P) = r^((|P|-1)/ell) lands in
        mu_ell(F_q) because q = 1 mod ell, so the exponent is k0 * dlog(r) mod ell.
        """
        key = P.key()
        tab = self._symtabs.get(key)
        if tab is not None:
            self._symtabs.move_to_end(key)
            return tab
        F = self.field
        size = F.q**P.degree
        if size > limits.SYMBOL_TABLE_LIMIT:
            raise ResourceLimit(f"symbol table for |P| = {size} exceeds the limit")
        m = size - 1
        # generator of the cyclic group (A/P)^*
        cof = [m // r for r in factorize_int(m)]
        gen = None
        one = Poly.one(F)
        for j in range(1, size):
            cand = self._residue_poly(j, P.degree)
            if (cand % P).is_zero() or gcd(cand, P).degree != 0:
                continue
            if all(powmod(cand, c, P) != one for c in cof):
                gen = cand
                break
        if gen is None:  # pragma: no cover - P must then be reducible
            raise InvariantViolation("residue-symbol-modulus", f"{P!r} has no generator; reducible?")
        zp = powmod(gen, m // self.ell, P)
        if zp.degree > 0:
            raise InvariantViolation("symbol-constant", f"{P!r}: zeta' not constant; P reducible?")
        k0 = self.zeta_pow_index.get(F.index(zp.coeffs[0]) if zp.coeffs else 0)
        if k0 is None:  # pragma: no cover
            raise InvariantViolation("symbol-root", f"{P!r}: zeta' outside mu_ell")
        tab = [_ZERO_SENTINEL] * size
        ell = self.ell
        # enumerate powers of gen in the residue-index domain: multiplication
        # by the fixed gen is F_q-linear, so it folds over precomputed digit maps
        q = F.q
        add_tab = self.add_table()
        x = Poly.x(F)
        mg = []  # mg[j][a] = index of a * t^j * gen mod P
        tj_gen = gen % P
        for _ in range(P.degree):
            row = [0] * q
            for a in range(1, q):
                row[a] = self._residue_index((tj_gen * F.elem_at(a)) % P)
            mg.append(row)
            tj_gen = (tj_gen * x) % P
        cur = 1  # index of the residue 1
        for dlog in range(m):
            tab[cur] = (k0 * dlog) % ell
            nxt = 0
            rem = cur
            j = 0
            while rem:
                d = rem % q
                if d:
                    nxt = _full_add(nxt, mg[j][d], q, add_tab)
                rem //= q
                j += 1
            cur = nxt
        while self._symtabs and self._symtab_entries + size > self._symtab_budget:
            _, old = self._symtabs.popitem(last=False)
            self._symtab_entries -= len(old)
        self._symtabs[key] = tab
        self._symtab_entries += size
        return tab

    def _residue_poly(self, idx: int, degree: int) -> Poly:
        F = self.field
        cs = []
        for _ in range(degree):
            cs.append(F.elem_at(idx % F.q))
            idx //= F.q
        return Poly(F, cs)

    def scaled_power_residues(self, P: Poly, j: int) -> list[int]:
        """SC[a] = residue index of a * t^j mod P, for every element index a."""
        key = (P.key(), j)
        sc = self._sc.get(key)
        if sc is None:
            F = self.field
            tj = powmod(Poly.x(F), j, P) if j > 0 else Poly.one(F) % P
            sc = [self._residue_index(tj * F.elem_at(a)) for a in range(F.q)]
            self._sc[key] = sc
        return sc


def char_context(field: Field, ell: int) -> CharContext:
    key = ("charctx", ell)
    ctx = field._cache.get(key)
    if ctx is None:
        ctx = CharContext(field, ell)
        field._cache[key] = ctx
    return ctx


# -- the residue symbol ------------------------------------------------------------


def residue_symbol(g: Poly, P: Poly, ell: int) -> MuValue:
    """The order-ell power residue symbol (g/P), computed as g^((|P|-1)/ell) mod P.

    The power is a square-and-multiply on polynomials mod P; the result is
    asserted to be a constant in mu_ell(F_q).
    """
    ctx = char_context(g.field, ell)
    if (g % P).is_zero():
        return MuValue.zero(ell)
    r = powmod(g, (g.field.q**P.degree - 1) // ell, P)
    if r.degree > 0:
        raise InvariantViolation("symbol-constant", f"symbol of {g!r} mod {P!r} is not constant")
    c = r.coeffs[0] if r.coeffs else g.field.zero()
    k = ctx.zeta_pow_index.get(g.field.index(c))
    if k is None:
        raise InvariantViolation("symbol-root", f"symbol value of {g!r} mod {P!r} outside mu_ell")
    return MuValue.root(ell, k)


# -- Dirichlet characters ------------------------------------------------------------


class DirichletChar:
    """An order-ell character given by exponents over its squarefree conductor."""

    __slots__ = ("ell", "field", "exponent_map", "zeta", "even", "_conductor")

    def __init__(self, field: Field, ell: int, exponent_map):
        ctx = char_context(field, ell)
        pairs = []
        seen = set()
        for P, e in exponent_map:
            if not P.is_monic() or P.degree < 1:
                raise InputError("conductor factors must be monic and non-constant")
            if e % ell == 0:
                raise InputError("exponents must be nonzero mod ell")
            if P.key() in seen:
                raise InputError("repeated conductor factor")
            seen.add(P.key())
            pairs.append((P, e % ell))
        if not pairs:
            raise InputError("a primitive order-ell character needs a non-trivial conductor")
        pairs.sort(key=lambda t: (t[0].degree, t[0].key()))
        self.field = field
        self.ell = ell
        self.exponent_map = tuple(pairs)
        self.zeta = ctx.zeta
        self.even = sum(e * P.degree for P, e in pairs) % ell == 0
        self._conductor = None

    @property
    def conductor(self) -> Poly:
        if self._conductor is None:
            f = Poly.one(self.field)
            for P, _ in self.exponent_map:
                f = f * P
            self._conductor = f
        return self._conductor

    @property
    def degree(self) -> int:
        return sum(P.degree for P, _ in self.exponent_map)

    def eval(self, g: Poly) -> MuValue:
        """chi(g) = prod of residue symbols; zero when g shares a conductor factor."""
        out = MuValue.root(self.ell, 0)
        for P, e in self.exponent_map:
            out = out * residue_symbol(g, P, self.ell) ** e
            if out.is_zero():
                return out
        return out

    def power(self, j: int) -> "DirichletChar":
        if j % self.ell == 0:
            raise InputError("power would be the principal character")
        return DirichletChar(
            self.field, self.ell, [(P, (e * j) % self.ell) for P, e in self.exponent_map]
        )

    def dual(self) -> "DirichletChar":
        return self.power(self.ell - 1)

    def key(self) -> tuple:
        return (self.ell, tuple((P.key(), e) for P, e in self.exponent_map))

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return self.field is other.field and self.key() == other.key()

    def __hash__(self):
        return hash((id(self.field),) + self.key())

    def __repr__(self):
        parts = ", ".join(f"({P!r})^{e}" for P, e in self.exponent_map)
        return f"DirichletChar(ell={self.ell}, {parts})"

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "field": self.field.descriptor(),
            "factors": [[poly_to_json(P), e] for P, e in self.exponent_map],
        }

    @classmethod
    def from_json(cls, field: Field, data: dict) -> "DirichletChar":
        ell = int(data["ell"])
        pairs = [(poly_from_json(field, pj), int(e)) for pj, e in data["factors"]]
        return cls(field, ell, pairs)


def char_from_model(model) -> DirichletChar:
    """The order-ell character attached to y^ell = c * prod D_i^i: exponent i on
    every prime dividing D_i.  The constant c does not enter; see
    `lfunction.twist_exponent` for how twists act on L-polynomials."""
    exponent_map = []
    for i, D in enumerate(model.components, start=1):
        if D.degree < 1:
            continue
        for P, _ in factor(D).factors:  # exponents are all 1: D is squarefree
            exponent_map.append((P, i))
    return DirichletChar(model.field, model.ell, exponent_map)


def char_eval(chi: DirichletChar, g: Poly) -> MuValue:
    return chi.eval(g)


# -- bulk character sums -----------------------------------------------------------


def _full_add(r: int, s: int, q: int, add_tab) -> int:
    out = 0
    mult = 1
    while r or s:
        out += add_tab[r % q][s % q] * mult
        r //= q
        s //= q
        mult *= q
    return out


def char_value_counts(chi: DirichletChar, degree: int) -> tuple[list[int], int]:
    """Over monic g of the given degree: counts[k] = #{g : chi(g) = zeta^k},
    plus the number of g with chi(g) = 0.  Exact, by residue tracking."""
    ctx = char_context(chi.field, chi.ell)
    q = chi.field.q
    ell = chi.ell
    if q**degree > limits.limit_census():
        raise ResourceLimit(f"{q}^{degree} character evaluations exceed the census limit")
    add_tab = ctx.add_table()
    primes = []
    for P, e in chi.exponent_map:
        s0 = ctx.symbol_table(P)
        sc = [ctx.scaled_power_residues(P, j) for j in range(degree + 1)]
        primes.append((s0, e, sc))
    counts = [0] * ell
    zeros = 0
    if degree == 0:
        counts[0] = 1
        return counts, zeros
    nprimes = len(primes)
    init = tuple(primes[i][2][degree][1] for i in range(nprimes))  # residue of t^degree

    sc0 = [primes[i][2][0] for i in range(nprimes)]
    s0s = [primes[i][0] for i in range(nprimes)]
    exps = [primes[i][1] for i in range(nprimes)]

    def descend(level: int, res: tuple):
        nonlocal zeros
        if level == 0:
            # innermost: only the constant digit of each residue moves
            base = [(r - r % q, r % q) for r in res]
            for a in range(q):
                tot = 0
                for i in range(nprimes):
                    hi, d0 = base[i]
                    r2 = hi + add_tab[d0][sc0[i][a]]
                    tot += exps[i] * s0s[i][r2]
                if tot < 0:
                    zeros += 1
                else:
                    counts[tot % ell] += 1
            return
        for a in range(q):
            if a == 0:
                descend(level - 1, res)
            else:
                nxt = tuple(
                    _full_add(res[i], primes[i][2][level][a], q, add_tab)
                    for i in range(nprimes)
                )
                descend(level - 1, nxt)

    descend(degree - 1, init)
    return counts, zeros


def char_sum(chi: DirichletChar, degree: int) -> CycInt:
    """Sum of chi(g) over monic g of exactly the given degree, in Z[zeta_ell]."""
    counts, _ = char_value_counts(chi, degree)
    out = CycInt.from_int(chi.ell, 0)
    for k, c in enumerate(counts):
        if c:
            out = out + mu_embed(chi.ell, k) * c
    return out


# -- counting formulas ----------------------------------------------------------------


def count_all_primitive(q: int, d: int) -> int:
    """Number of primitive Dirichlet characters (all orders) with conductor degree d."""
    if d < 0:
        raise InputError("negative conductor degree")
    if d == 0:
        return 1
    if d == 1:
        return q * q - 2 * q
    return q ** (2 * d - 2) * (q - 1) ** 2


def count_order_ell_exact(q: int, ell: int, d: int) -> int:
    """Exact number of primitive order-ell characters with conductor degree d:
    the coefficient of u^d in prod_P (1 + (ell-1) u^{deg P}), truncated."""
    if (q - 1) % ell != 0:
        raise InputError(f"q = {q} is not 1 mod {ell}")
    if d < 0:
        raise InputError("negative conductor degree")
    coeffs = [0] * (d + 1)
    coeffs[0] = 1
    for m in range(1, d + 1):
        nm = irreducible_count(q, m)
        # multiply truncated series by (1 + (ell-1) u^m)^nm
        for _ in range(nm):
            for i in range(d, m - 1, -1):
                coeffs[i] += (ell - 1) * coeffs[i - m]
    return coeffs[d]


def enumerate_order_ell(F: Field, ell: int, n: int) -> list[DirichletChar]:
    """All primitive order-ell characters with conductor degree <= n, realised as
    exponent assignments over squarefree monic conductors (equivalently, as the
    component tuples (D_1, ..., D_{ell-1}) of superelliptic models)."""
    char_context(F, ell)  # validates q = 1 mod ell
    if F.q**n > limits.limit_census():
        raise ResourceLimit(f"enumeration at degree {n} over {F} exceeds the census limit")
    out: list[DirichletChar] = []
    for d in range(1, n + 1):
        for f in squarefree_monics(F, d):
            primes = [P for P, _ in factor(f).factors]
            for assignment in itertools.product(range(1, ell), repeat=len(primes)):
                out.append(DirichletChar(F, ell, list(zip(primes, assignment))))
    return out
