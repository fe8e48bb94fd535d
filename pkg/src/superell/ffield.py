"""Exact arithmetic in finite fields F_{p^e} and their extension towers.

Construction is deterministic: the modulus at every tower level is the
lexicographically smallest monic irreducible over the level below, where a
polynomial is keyed by the integer value of its coefficient vector read low
degree first (each coefficient by its canonical index in the base).  Two
constructions with equal inputs therefore produce bit-identical moduli, and
the descriptor (p, tower degrees, modulus vectors) is a stable cache key.

Extensions are always built over the field at hand, so subfield elements
embed as constant coefficient vectors and no embedding search is ever needed.

Elements are immutable; every public value may be shared freely.
"""

from __future__ import annotations

from . import limits
from .errors import InputError, ResourceLimit

_PRIME_CACHE: dict[int, "Field"] = {}


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine for n <= 2**40)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize_int(n: int, limit: int = 2**22) -> dict[int, int]:
    """Trial-division factorization of n; raises ResourceLimit beyond the bound."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > limit:
            raise ResourceLimit(f"cannot factor {n} by trial division up to {limit}")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FieldElem:
    """An element of a Field, stored as a coefficient vector over the base.

    For a prime field the vector holds a single int in 0..p-1; for a tower
    level it holds FieldElems of the base field.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "Field", coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def inverse(self):
        return self.field.inverse(self)

    def is_zero(self) -> bool:
        return self.field.index(self) == 0

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"<{self.field.index(self)} in {self.field}>"


class Field:
    """F_{p^e}, either a prime field or a single extension step over `base`."""

    __slots__ = ("p", "base", "rel_degree", "e", "q", "modulus", "_cache")

    def __init__(self, p: int, base: "Field | None", rel_degree: int, modulus):
        self.p = p
        self.base = base
        self.rel_degree = rel_degree
        self.e = rel_degree if base is None else base.e * rel_degree
        self.q = p**self.e
        self.modulus = modulus  # coefficient tuple over base, length rel_degree+1, monic
        self._cache: dict = {}

    # -- construction ------------------------------------------------------

    def tower_degrees(self) -> list[int]:
        if self.base is None:
            return []
        return self.base.tower_degrees() + [self.rel_degree]

    def descriptor(self) -> dict:
        """JSON-serialisable identity: (p, tower degrees, modulus index vectors)."""
        moduli = []
        f: Field | None = self
        while f is not None and f.base is not None:
            base = f.base
            moduli.append([base.index(c) for c in f.modulus])
            f = base
        moduli.reverse()
        return {"p": self.p, "tower": self.tower_degrees(), "moduli": moduli}

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- element plumbing ---------------------------------------------------

    def zero(self) -> FieldElem:
        return self.from_int(0)

    def one(self) -> FieldElem:
        return self.from_int(1)

    def from_int(self, n: int) -> FieldElem:
        """The image of the integer n under Z -> F_p -> F."""
        if self.base is None:
            return FieldElem(self, (n % self.p,))
        c0 = self.base.from_int(n)
        zero = self.base.zero()
        return FieldElem(self, (c0,) + (zero,) * (self.rel_degree - 1))

    def embed(self, a: FieldElem) -> FieldElem:
        """Embed an element of the base field as a constant vector."""
        if a.field is self:
            return a
        if self.base is None or a.field is not self.base:
            raise InputError("embed expects an element of the immediate base field")
        zero = self.base.zero()
        return FieldElem(self, (a,) + (zero,) * (self.rel_degree - 1))

    def index(self, a: FieldElem) -> int:
        """Canonical integer of an element: coefficient vector read low-to-high, base p."""
        if self.base is None:
            return a.coeffs[0]
        qb = self.base.q
        out = 0
        for c in reversed(a.coeffs):
            out = out * qb + self.base.index(c)
        return out

    def elem_at(self, idx: int) -> FieldElem:
        """Inverse of index()."""
        if self.base is None:
            return FieldElem(self, (idx % self.p,))
        qb = self.base.q
        cs = []
        for _ in range(self.rel_degree):
            cs.append(self.base.elem_at(idx % qb))
            idx //= qb
        return FieldElem(self, tuple(cs))

    def elements(self):
        """All elements in canonical index order (materialised and cached)."""
        elems = self._cache.get("elements")
        if elems is None:
            if self.q > limits.zech_limit():
                raise ResourceLimit(f"enumeration of {self} exceeds the table limit")
            elems = tuple(self.elem_at(i) for i in range(self.q))
            self._cache["elements"] = elems
        return elems

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.base is None:
            return FieldElem(self, ((a.coeffs[0] + b.coeffs[0]) % self.p,))
        base = self.base
        return FieldElem(self, tuple(base.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.base is None:
            return FieldElem(self, ((a.coeffs[0] - b.coeffs[0]) % self.p,))
        base = self.base
        return FieldElem(self, tuple(base.sub(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElem) -> FieldElem:
        if self.base is None:
            return FieldElem(self, ((-a.coeffs[0]) % self.p,))
        base = self.base
        return FieldElem(self, tuple(base.neg(x) for x in a.coeffs))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.base is None:
            return FieldElem(self, ((a.coeffs[0] * b.coeffs[0]) % self.p,))
        base = self.base
        n = self.rel_degree
        if base.base is None:
            # one tower step over the prime field: pure int arithmetic
            p = self.p
            ac = [c.coeffs[0] for c in a.coeffs]
            bc = [c.coeffs[0] for c in b.coeffs]
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(ac):
                if x:
                    for j, y in enumerate(bc):
                        prod[i + j] += x * y
            red = self._int_reduction_rows()
            for k in range(2 * n - 2, n - 1, -1):
                c = prod[k] % p
                if c:
                    row = red[k - n]
                    for j in range(n):
                        prod[j] += c * row[j]
            return FieldElem(self, tuple(FieldElem(base, (v % p,)) for v in prod[:n]))
        prod = [base.zero()] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if base.index(x) == 0:
                continue
            for j, y in enumerate(b.coeffs):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        red = self._reduction_rows()
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if base.index(c) == 0:
                continue
            row = red[k - n]
            for j in range(n):
                prod[j] = base.add(prod[j], base.mul(c, row[j]))
        return FieldElem(self, tuple(prod[:n]))

    def _int_reduction_rows(self):
        rows = self._cache.get("int_red_rows")
        if rows is None:
            base = self.base
            rows = tuple(
                tuple(base.index(c) for c in row) for row in self._reduction_rows()
            )
            self._cache["int_red_rows"] = rows
        return rows

    def _reduction_rows(self):
        # row k = coefficient vector of t^{n+k} mod modulus, k = 0..n-2
        rows = self._cache.get("red_rows")
        if rows is None:
            base = self.base
            n = self.rel_degree
            # t^n = -(m_0 + m_1 t + ... + m_{n-1} t^{n-1})
            cur = [base.neg(c) for c in self.modulus[:n]]
            rows = [tuple(cur)]
            for _ in range(n - 2):
                top = cur[-1]
                cur = [base.zero()] + cur[:-1]
                if base.index(top) != 0:
                    first = rows[0]
                    cur = [base.add(cur[j], base.mul(top, first[j])) for j in range(n)]
                rows.append(tuple(cur))
            rows = tuple(rows)
            self._cache["red_rows"] = rows
        return rows

    def pow(self, a: FieldElem, n: int) -> FieldElem:
        if n < 0:
            return self.pow(self.inverse(a), -n)
        out = self.one()
        b = a
        while n:
            if n & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            n >>= 1
        return out

    def inverse(self, a: FieldElem) -> FieldElem:
        if self.index(a) == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.q - 2)


# -- polynomial helpers over an arbitrary Field (used for modulus search) ----


def _vec_trim(v: list) -> list:
    while v and v[-1].is_zero():
        v.pop()
    return v


def _vec_mulmod(F: Field, a: list, b: list, mod: list) -> list:
    prod = [F.zero()] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            prod[i + j] = prod[i + j] + x * y
    return _vec_divmod(F, prod, mod)[1]


def _vec_divmod(F: Field, a: list, b: list) -> tuple[list, list]:
    a = list(a)
    _vec_trim(a)
    db = len(b) - 1
    inv_lead = b[-1].inverse()
    q = [F.zero()] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] * inv_lead
        q[k] = c
        for j in range(db + 1):
            a[k + j] = a[k + j] - c * b[j]
        _vec_trim(a)
    return q, a


def _vec_gcd_is_one(F: Field, a: list, b: list) -> bool:
    a, b = list(a), list(b)
    _vec_trim(a)
    _vec_trim(b)
    while b:
        a, b = b, _vec_divmod(F, a, b)[1]
    return len(a) == 1


def _vec_powmod_x(F: Field, npow: int, mod: list) -> list:
    """t^npow mod `mod`, square-and-multiply on the exponent."""
    result = [F.one()]
    base_poly = [F.zero(), F.one()]
    if len(mod) - 1 == 1:
        base_poly = _vec_divmod(F, base_poly, mod)[1]
    while npow:
        if npow & 1:
            result = _vec_mulmod(F, result, base_poly, mod)
        base_poly = _vec_mulmod(F, base_poly, base_poly, mod)
        npow >>= 1
    return result


def _is_irreducible_vec(F: Field, mod: list) -> bool:
    """Rabin test for a monic polynomial given as a coefficient vector over F."""
    n = len(mod) - 1
    if n == 1:
        return True
    Q = F.q
    # t^{Q^n} == t mod f
    xq = _vec_powmod_x(F, Q**n, mod)
    x = _vec_divmod(F, [F.zero(), F.one()], mod)[1]
    if xq != x:
        return False
    for r in factorize_int(n):
        h = _vec_powmod_x(F, Q ** (n // r), mod)
        diff = list(h)
        while len(diff) < 2:
            diff.append(F.zero())
        diff[1] = diff[1] - F.one()
        _vec_trim(diff)
        if not diff:
            return False
        if not _vec_gcd_is_one(F, diff, mod):
            return False
    return True


def _canonical_modulus(F: Field, n: int) -> tuple:
    """Smallest monic irreducible of degree n over F in canonical vector order."""
    Q = F.q
    for j in range(Q**n):
        cs = []
        k = j
        for _ in range(n):
            cs.append(F.elem_at(k % Q))
            k //= Q
        cand = cs + [F.one()]
        if _is_irreducible_vec(F, cand):
            return tuple(cand)
    raise AssertionError("no irreducible of requested degree found")  # pragma: no cover


# -- public constructors -----------------------------------------------------


def make_field(p: int, e: int) -> Field:
    """The canonical field with p^e elements; deterministic across runs."""
    if e < 1:
        raise InputError(f"extension degree must be positive, got {e}")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p**e > limits.FIELD_SIZE_LIMIT:
        raise ResourceLimit(f"field size {p}^{e} exceeds limit {limits.FIELD_SIZE_LIMIT}")
    prime = _PRIME_CACHE.get(p)
    if prime is None:
        # modulus (t - 0): the conventional marker for a prime field
        prime = Field(p, None, 1, None)
        prime.modulus = (prime.zero(), prime.one())
        _PRIME_CACHE[p] = prime
    if e == 1:
        return prime
    return extend_field(prime, e)


def extend_field(F: Field, n: int) -> Field:
    """The canonical degree-n tower extension of F (identity for n = 1)."""
    if n < 1:
        raise InputError(f"extension degree must be positive, got {n}")
    if n == 1:
        return F
    if F.q**n > limits.FIELD_SIZE_LIMIT:
        raise ResourceLimit(f"field size {F.q}^{n} exceeds limit {limits.FIELD_SIZE_LIMIT}")
    key = ("ext", n)
    ext = F._cache.get(key)
    if ext is None:
        ext = Field(F.p, F, n, None)
        ext.modulus = _canonical_modulus(F, n)
        F._cache[key] = ext
    return ext


def primitive_root(F: Field) -> FieldElem:
    """The canonically smallest generator of F^*; exact order check via q-1 factors."""
    cached = F._cache.get("primitive_root")
    if cached is not None:
        return cached
    m = F.q - 1
    if m == 0:
        raise InputError("multiplicative group of a 1-element structure")
    if m == 1:
        g = F.one()
        F._cache["primitive_root"] = g
        return g
    primes = list(factorize_int(m))
    cofactors = [m // r for r in primes]
    one = F.one()
    for idx in range(1, F.q):
        g = F.elem_at(idx)
        if all(F.pow(g, c) != one for c in cofactors):
            F._cache["primitive_root"] = g
            return g
    raise AssertionError("multiplicative group of a finite field is cyclic")  # pragma: no cover


# -- discrete-log tables -------------------------------------------------------


class LogTable:
    """Multiplicative log/antilog plus Zech logarithms for a small field.

    exp[k] = index of g^k, dlog[index] = k (dlog[0] = -1 for the zero element),
    zech[k] = dlog(1 + g^k) with -1 when 1 + g^k = 0.  All arithmetic on ints.
    """

    __slots__ = ("field", "order", "exp", "dlog", "zech")

    def __init__(self, field: Field):
        q = field.q
        if q > limits.zech_limit():
            raise ResourceLimit(f"log table for {field} exceeds SUPERELL_ZECH_LIMIT")
        g = primitive_root(field)
        m = q - 1
        exp = [0] * m
        dlog = [-1] * q
        cur = field.one()
        for k in range(m):
            i = field.index(cur)
            exp[k] = i
            dlog[i] = k
            cur = field.mul(cur, g)
        p = field.p
        zech = [0] * m
        for k in range(m):
            i = exp[k]
            d0 = i % p
            zech[k] = dlog[i - d0 + (d0 + 1) % p]
        self.field = field
        self.order = m
        self.exp = exp
        self.dlog = dlog
        self.zech = zech

    def log(self, a: FieldElem) -> int:
        k = self.dlog[self.field.index(a)]
        if k < 0:
            raise ZeroDivisionError("log of zero")
        return k


def log_table(F: Field) -> LogTable:
    tab = F._cache.get("logtable")
    if tab is None:
        tab = LogTable(F)
        F._cache["logtable"] = tab
    return tab
