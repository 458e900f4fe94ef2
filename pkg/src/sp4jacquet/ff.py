"""Exact arithmetic in F_q (q an odd prime), its quadratic extension F_{q^2},
and the characters of their unit groups and additive groups.

Elements of F_q are plain ints in [0, q); elements of F_{q^2} are pairs
(a, b) meaning a + b*sqrt(delta) for a fixed non-square delta.  The thin
FieldElem wrapper exists for code that wants operator syntax; everything
performance-sensitive works on raw ints.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

SUPPORTED_Q = (3, 5, 7, 11)


class FieldError(ArithmeticError):
    pass


def check_q(q):
    if q not in SUPPORTED_Q:
        raise FieldError(f"unsupported field size {q}; supported: {SUPPORTED_Q}")


def finv(a, q):
    """Inverse of a mod q.  Raises FieldError on zero."""
    a %= q
    if a == 0:
        raise FieldError("division by zero in F_%d" % q)
    return pow(a, q - 2, q)


def legendre(a, q):
    """Legendre symbol of a mod q: +1 square, -1 non-square, 0 zero."""
    a %= q
    if a == 0:
        return 0
    s = pow(a, (q - 1) // 2, q)
    return 1 if s == 1 else -1


@lru_cache(maxsize=None)
def smallest_nonsquare(q):
    check_q(q)
    for d in range(2, q):
        if legendre(d, q) == -1:
            return d
    raise FieldError("no non-square found")  # unreachable for odd q > 2


def psi0(x, q):
    """The fixed additive character x -> exp(2*pi*i*x/q)."""
    return cmath.exp(2j * math.pi * (x % q) / q)


@dataclass(frozen=True)
class FieldElem:
    """An element of F_q.  Convenience wrapper over ints."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.modulus != self.modulus:
                raise FieldError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElem(self.value + self._coerce(other), self.modulus)

    def __sub__(self, other):
        return FieldElem(self.value - self._coerce(other), self.modulus)

    def __mul__(self, other):
        return FieldElem(self.value * self._coerce(other), self.modulus)

    def __neg__(self):
        return FieldElem(-self.value, self.modulus)

    def inv(self):
        return FieldElem(finv(self.value, self.modulus), self.modulus)

    def __truediv__(self, other):
        return FieldElem(
            self.value * finv(self._coerce(other), self.modulus), self.modulus
        )

    __radd__ = __add__
    __rmul__ = __mul__


def field_arith(a: FieldElem, b, op: str) -> FieldElem:
    """Dispatch table for binary/unary field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# F_{q^2} = F_q(sqrt(delta)), elements as pairs (a, b)


def ext_mul(x, y, q):
    d = smallest_nonsquare(q)
    a, b = x
    c, e = y
    return ((a * c + d * b * e) % q, (a * e + b * c) % q)


def ext_norm(x, q):
    """Norm a^2 - delta*b^2 down to F_q."""
    d = smallest_nonsquare(q)
    a, b = x
    return (a * a - d * b * b) % q


def ext_frobenius(x, q):
    a, b = x
    return (a, (-b) % q)


def ext_units(q):
    """All q^2 - 1 units of F_{q^2}."""
    return [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]


@lru_cache(maxsize=None)
def fq_generator(q):
    """A generator of F_q^x, found by exhaustive order test."""
    check_q(q)
    for g in range(2, q):
        x, order = g, 1
        while x != 1:
            x = x * g % q
            order += 1
        if order == q - 1:
            return g
    raise FieldError("no generator")


@lru_cache(maxsize=None)
def fq_dlog(q):
    g = fq_generator(q)
    table, x = {}, 1
    for k in range(q - 1):
        table[x] = k
        x = x * g % q
    return table


@lru_cache(maxsize=None)
def fq2_generator(q):
    check_q(q)
    n = q * q - 1
    for g in ext_units(q):
        x, order = g, 1
        while x != (1, 0):
            x = ext_mul(x, g, q)
            order += 1
        if order == n:
            return g
    raise FieldError("no generator")


@lru_cache(maxsize=None)
def fq2_dlog(q):
    g = fq2_generator(q)
    table, x = {}, (1, 0)
    for k in range(q * q - 1):
        table[x] = k
        x = ext_mul(x, g, q)
    return table


# ---------------------------------------------------------------------------
# Norm-one subgroup of F_{q^2}^x (cyclic of order q+1); parametrizes the
# cuspidal characters of SL_2(F_q).


@lru_cache(maxsize=None)
def norm_one_generator(q):
    for x in ext_units(q):
        if ext_norm(x, q) != 1:
            continue
        y, order = x, 1
        while y != (1, 0):
            y = ext_mul(y, x, q)
            order += 1
        if order == q + 1:
            return x
    raise FieldError("no norm-one generator")


@lru_cache(maxsize=None)
def norm_one_dlog(q):
    g = norm_one_generator(q)
    table, x = {}, (1, 0)
    for k in range(q + 1):
        table[x] = k
        x = ext_mul(x, g, q)
    return table


# ---------------------------------------------------------------------------
# Multiplicative characters


@dataclass(frozen=True)
class MultChar:
    """A character of a cyclic group, indexed against a fixed generator.

    group is 'fq' (order q-1), 'fq2' (order q^2-1) or 'norm1' (order q+1).
    """

    group: str
    q: int
    exponent: int

    @property
    def order(self):
        return {"fq": self.q - 1, "fq2": self.q * self.q - 1, "norm1": self.q + 1}[
            self.group
        ]

    def _dlog(self, x):
        if self.group == "fq":
            return fq_dlog(self.q)[x % self.q]
        if self.group == "fq2":
            return fq2_dlog(self.q)[x]
        return norm_one_dlog(self.q)[x]

    def __call__(self, x):
        n = self.order
        return cmath.exp(2j * math.pi * self.exponent * self._dlog(x) / n)

    def is_trivial(self):
        return self.exponent % self.order == 0

    def inverse_index(self):
        return (-self.exponent) % self.order


def mult_char_table(group: str, q: int):
    """All characters of F_q^x ('fq'), F_{q^2}^x ('fq2') or the norm-one
    subgroup ('norm1'), ordered by exponent."""
    check_q(q)
    n = {"fq": q - 1, "fq2": q * q - 1, "norm1": q + 1}[group]
    return [MultChar(group, q, k) for k in range(n)]


def gauss_sum(q):
    """Quadratic Gauss sum sum_t legendre(t) psi0(t); squares to legendre(-1)*q."""
    return sum(legendre(t, q) * psi0(t, q) for t in range(1, q))
