"""Arithmetic in GF(p^n) with an explicit irreducible modulus.

Field elements are integer codes in ``[0, p^n)``: the base-p digits of a
code are the coefficients of z^0 .. z^{n-1}.  Multiplication and
inversion go through discrete log / antilog tables built at construction
time, so a field object is immutable and cheap to share.

Conventions (all deterministic, recorded in serialized output):
  * AUTO modulus = the monic primitive polynomial of degree n with the
    least integer encoding sum(c_i * p^i), c_n = 1 included.
  * The designated primitive element is the nonzero code of least
    integer value whose multiplicative order is p^n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivideByZero, LogOfZero, MixedFields, NotPrime, ReducibleModulus


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# ----------------------------------------------------------------------
# Dense polynomial helpers over GF(p).  Polynomials are tuples of
# coefficients (c0, c1, ...), highest nonzero last.
# ----------------------------------------------------------------------

def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a by monic b over GF(p)."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - db
            for i in range(db + 1):
                a[shift + i] = (a[shift + i] - lead * b[i]) % p
        a.pop()
    return _trim(a)


def _irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(modulus) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for enc in range(p ** deg):
            div = []
            e = enc
            for _ in range(deg):
                div.append(e % p)
                e //= p
            div.append(1)
            if not _poly_mod(modulus, tuple(div), p):
                return False
    return True


class GF:
    """Descriptor for GF(p^n): modulus, primitive element, log tables."""

    def __init__(self, p: int, n: int, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        self.p = p
        self.n = n
        self.order = p ** n
        if modulus is None:
            modulus = self._auto_modulus()
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not _irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
        self.modulus = modulus

        q1 = self.order - 1
        self._q1_factors = prime_factors(q1) if q1 > 1 else []
        self.primitive = self._find_primitive()
        self._build_tables()

    # -- bootstrap arithmetic (digit based, used before tables exist) --

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + (c % self.p)
        return v

    def _mul_raw(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by monic modulus
        for i in range(len(prod) - 1, n - 1, -1):
            lead = prod[i]
            if lead:
                prod[i] = 0
                for j in range(n):
                    prod[i - n + j] = (prod[i - n + j] - lead * self.modulus[j]) % p
        return self._encode(prod[:n])

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _has_full_order(self, a: int) -> bool:
        q1 = self.order - 1
        for r in self._q1_factors:
            if self._pow_raw(a, q1 // r) == 1:
                return False
        return True

    def _auto_modulus(self) -> tuple[int, ...]:
        p, n = self.p, self.n
        for enc in range(p ** n, 2 * p ** n):
            coeffs = []
            e = enc
            for _ in range(n + 1):
                coeffs.append(e % p)
                e //= p
            cand = tuple(coeffs)
            if cand[0] == 0:
                continue
            if not _irreducible(cand, p):
                continue
            # require the residue of x (the z of the labelling) to be primitive
            self.modulus = cand
            self._q1_factors = prime_factors(p ** n - 1) if p ** n > 2 else []
            zcode = (-cand[0]) % p if n == 1 else p
            if p ** n == 2 or self._has_full_order(zcode):
                return cand
        raise ReducibleModulus(f"no primitive polynomial found for GF({p}^{n})")  # pragma: no cover

    def _find_primitive(self) -> int:
        if self.order == 2:
            return 1
        for a in range(1, self.order):
            if self._has_full_order(a):
                return a
        raise ReducibleModulus("no primitive element")  # pragma: no cover

    def _build_tables(self):
        q = self.order
        self.antilog_table = [0] * (q - 1)
        self.log_table = [-1] * q
        v = 1
        for i in range(q - 1):
            self.antilog_table[i] = v
            self.log_table[v] = i
            v = self._mul_raw(v, self.primitive)
        if v != 1:
            raise ReducibleModulus("primitive element order mismatch")  # pragma: no cover

    # -- public integer-code arithmetic ---------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p, r, mult = self.p, 0, 1
        for _ in range(self.n):
            r += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        p, r, mult = self.p, 0, 1
        for _ in range(self.n):
            r += ((-a) % p) * mult
            a //= p
            mult *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog_table[(self.log_table[a] + self.log_table[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("inverse of zero")
        return self.antilog_table[(-self.log_table[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivideByZero("negative power of zero")
            return 1 if e == 0 else 0
        return self.antilog_table[(self.log_table[a] * e) % (self.order - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def log(self, a: int) -> int:
        if a == 0:
            raise LogOfZero("discrete log of zero")
        return self.log_table[a]

    def antilog(self, e: int) -> int:
        return self.antilog_table[e % (self.order - 1)]

    # -- element interface ---------------------------------------------

    def element(self, value) -> "FieldElement":
        """Wrap an integer code or coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise MixedFields("element from a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.order)
        return FieldElement(self, self._encode(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def z(self) -> "FieldElement":
        return FieldElement(self, self.primitive)

    def elements(self):
        return (FieldElement(self, a) for a in range(self.order))

    def describe(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus),
            "primitive": self._digits(self.primitive),
        }

    def __repr__(self):
        return f"GF({self.p}^{self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))


@dataclass(frozen=True)
class FieldElement:
    field: GF
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.code))

    def _check(self, other: "FieldElement") -> "FieldElement":
        if not isinstance(other, FieldElement):
            other = self.field.element(other)
        if other.field != self.field:
            raise MixedFields("operands from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(other.code)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.code == self.code
        )

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return f"<{self.code} in GF({self.field.p}^{self.field.n})>"


# ----------------------------------------------------------------------
# Flat functional API mirroring the field operation contracts.
# ----------------------------------------------------------------------

AUTO = None


@lru_cache(maxsize=None)
def _cached_field(p: int, n: int, modulus) -> GF:
    return GF(p, n, modulus)


def field_create(p: int, n: int, modulus=AUTO) -> GF:
    key = tuple(c % p for c in modulus) if modulus is not None else None
    return _cached_field(p, n, key)


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.code))


def field_pow(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.frobenius(a.code))


def discrete_log(a: FieldElement) -> int:
    return a.field.log(a.code)
