"""Arithmetic in finite fields F_q, q = p^e.

Elements are stored as integer codes ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``
where ``[c0, c1, ...]`` is the coefficient list of the residue polynomial.
All vector and matrix code in the package works on these codes through the
lookup tables of :class:`FieldSpec`; :class:`FieldElement` is the checked,
user-facing wrapper.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    DegreeZero,
    DivisionByZero,
    FieldTooLarge,
    MixedFields,
    NonPrimeCharacteristic,
)

DEFAULT_MAX_Q = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q = p**e``; raise if q is not a prime power."""
    if q < 2:
        raise NonPrimeCharacteristic(f"q={q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"q={q} is not a prime power")
    return p, e


# -- polynomials over F_p, coefficient lists with constant term first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, mod, p)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over F_p.

    Candidates are ordered by their lower coefficients read as a base-p
    number (highest-degree coefficient most significant).
    """
    if e == 1:
        return (0, 1)
    for code in range(p ** e):
        low = [(code // p ** i) % p for i in range(e)]
        poly = low + [1]
        if low[0] != 0 and is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeCharacteristic(f"p={self.p} is not prime")
        if self.e < 1:
            raise DegreeZero(f"extension degree must be >= 1, got {self.e}")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if self.e > 1 and not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})" if self.e == 1 else f"FieldSpec(q={self.p}^{self.e}, modulus={list(self.modulus)})"

    # -- code <-> coefficient list ------------------------------------------

    def coeffs(self, code: int) -> list[int]:
        return [(code // self.p ** i) % self.p for i in range(self.e)]

    def code(self, coeffs: Sequence[int] | int) -> int:
        if isinstance(coeffs, int):
            if not 0 <= coeffs < self.q:
                raise ValueError(f"element code {coeffs} out of range for q={self.q}")
            return coeffs
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    # -- tables -------------------------------------------------------------

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        p, e = self.p, self.e
        rows = []
        for a in range(self.q):
            ca = self.coeffs(a)
            rows.append(tuple(
                sum(((x + y) % p) * p ** i for i, (x, y) in enumerate(zip(ca, self.coeffs(b))))
                for b in range(self.q)
            ))
        return tuple(rows)

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in range(self.q):
            ca = self.coeffs(a)
            rows.append(tuple(
                self.code(_poly_mulmod(ca, self.coeffs(b), self.modulus, self.p) or [0])
                for b in range(self.q)
            ))
        return tuple(rows)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.code([-c for c in self.coeffs(a)]) for a in range(self.q))

    @cached_property
    def inv_table(self) -> tuple[int, ...]:
        inv = [0] * self.q
        for a in range(1, self.q):
            inv[a] = self.mul_table[a].index(1)
        return tuple(inv)

    # -- code arithmetic (hot paths use the tables directly) ----------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self.inv_table[a]

    def sign(self, s: int) -> int:
        """Code of +1 or -1."""
        return 1 if s > 0 else self.neg_table[1]

    # -- element views ------------------------------------------------------

    def __call__(self, value: Sequence[int] | int) -> "FieldElement":
        return FieldElement(self, self.code(value))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def to_json(self, code: int) -> list[int]:
        return self.coeffs(code)

    def format(self, code: int) -> str:
        """Token used in text files: ``3`` for prime fields, ``[c0,c1]`` otherwise."""
        if self.e == 1:
            return str(code)
        return "[" + ",".join(map(str, self.coeffs(code))) + "]"

    def parse(self, token: str | int | Sequence[int]) -> int:
        if isinstance(token, (int, list, tuple)):
            return self.code(token)
        token = token.strip()
        if token.startswith("["):
            return self.code([int(t) for t in token.strip("[]").split(",") if t.strip()])
        return self.code(int(token))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = self.mul_table[x][a]
            n += 1
        return n


@lru_cache(maxsize=None)
def _field_cached(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e, smallest_irreducible(p, e))


def field_new(p: int, e: int = 1, *, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Build F_{p^e} with the smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"p={p} is not prime")
    if e < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {e}")
    if p ** e > max_q:
        raise FieldTooLarge(f"q={p ** e} exceeds the configured cap {max_q}")
    return _field_cached(p, e)


def field_from_q(q: int, *, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    p, e = prime_power(q)
    return field_new(p, e, max_q=max_q)


_Q_LITERAL = re.compile(r"^\s*(?:q\s*=\s*)?(\d+)(?:\s*\^\s*(\d+))?\s*$")


def parse_field(text: str, *, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Parse ``q=4``, ``q=2^2``, ``4`` or ``2^2``."""
    m = _Q_LITERAL.match(str(text))
    if not m:
        raise ValueError(f"cannot parse field literal {text!r}")
    base, exp = int(m.group(1)), m.group(2)
    if exp is not None:
        return field_new(base, int(exp), max_q=max_q)
    return field_from_q(base, max_q=max_q)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine elements of {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field.code(other % self.field.p if self.field.e == 1 else other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.code)

    def __repr__(self) -> str:
        if self.field.e == 1:
            return f"{self.code} (mod {self.field.p})"
        return f"{self.coeffs}"


def elements(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def vector_to_json(field: FieldSpec, vec: Iterable[int]) -> list[list[int]]:
    return [field.coeffs(c) for c in vec]
