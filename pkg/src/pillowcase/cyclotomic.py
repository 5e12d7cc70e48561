"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a rational polynomial in ``zeta = exp(2 pi i / N)`` reduced
modulo the N-th cyclotomic polynomial, so equality is coefficient equality.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidInput

Scalar = Union[int, Fraction, "Cyclotomic"]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficients low degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1]
        out[k] = q
        if q:
            for i, c in enumerate(den):
                num[k + i] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, x in enumerate(b):
                a[k + i] -= c * x
    return _trim(q), _trim(a[: len(b) - 1])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """``s`` with ``s * a = 1`` modulo the irreducible polynomial ``m``."""
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:  # pragma: no cover - m is irreducible and a is nonzero mod m
        raise ZeroDivisionError("not invertible")
    c = r1[0]
    _, s1 = _poly_divmod(s1, m) if len(s1) >= len(m) else ([], s1)
    return [x / c for x in s1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, lowest degree first."""
    if N < 1:
        raise InvalidInput(f"N must be positive, got {N}")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """Q(zeta_N) with a cached table of reduced powers of zeta."""

    def __init__(self, N: int):
        self.N = N
        phi = cyclotomic_polynomial(N)
        self.degree = len(phi) - 1
        powers = []
        cur = [0] * self.degree
        cur[0] = 1
        for _ in range(N):
            powers.append(tuple(cur))
            # multiply by zeta and reduce the overflow with Phi_N
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, phi[:-1])]
        self.powers = powers

    def __repr__(self) -> str:
        return f"CyclotomicField({self.N})"

    def zero(self) -> "Cyclotomic":
        return Cyclotomic(self, (Fraction(0),) * self.degree)

    def one(self) -> "Cyclotomic":
        return self.from_rational(1)

    def from_rational(self, q) -> "Cyclotomic":
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(q)
        return Cyclotomic(self, tuple(c))

    def zeta_power(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self, tuple(Fraction(c) for c in self.powers[k % self.N]))

    def from_exponents(self, terms: dict[int, Fraction]) -> "Cyclotomic":
        """``sum q * zeta**k`` for ``k, q`` in ``terms``."""
        acc = [Fraction(0)] * self.degree
        for k, q in terms.items():
            if q:
                for i, p in enumerate(self.powers[k % self.N]):
                    if p:
                        acc[i] += q * p
        return Cyclotomic(self, tuple(acc))


@lru_cache(maxsize=None)
def field(N: int) -> CyclotomicField:
    if N < 1:
        raise InvalidInput(f"N must be positive, got {N}")
    return CyclotomicField(N)


class Cyclotomic:
    __slots__ = ("F", "coeffs", "_hash")

    def __init__(self, F: CyclotomicField, coeffs: tuple[Fraction, ...]):
        self.F = F
        self.coeffs = coeffs
        self._hash = None

    # -- coercion
    def _lift(self, other) -> tuple["Cyclotomic", "Cyclotomic"] | None:
        if isinstance(other, Cyclotomic):
            if other.F.N == self.F.N:
                return self, other
            M = self.F.N * other.F.N // math.gcd(self.F.N, other.F.N)
            return self.embed(M), other.embed(M)
        if isinstance(other, (int, Fraction)):
            return self, self.F.from_rational(other)
        return None

    def embed(self, M: int) -> "Cyclotomic":
        """Image in Q(zeta_M) for a multiple M of N."""
        if M % self.F.N:
            raise InvalidInput(f"cannot embed Q(zeta_{self.F.N}) into Q(zeta_{M})")
        step = M // self.F.N
        return field(M).from_exponents({k * step: c for k, c in enumerate(self.coeffs)})

    # -- arithmetic
    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.F, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.F, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.F, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.F, tuple(x * other for x in self.coeffs))
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        terms[i + j] = terms.get(i + j, 0) + x * y
        return a.F.from_exponents(terms)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclotomic":
        N = self.F.N
        return self.F.from_exponents({(-k) % N: c for k, c in enumerate(self.coeffs)})

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # extended Euclid: s * a + t * Phi_N = 1
        s = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_polynomial(self.F.N)])
        return Cyclotomic(self.F, tuple(s + [Fraction(0)] * (self.F.degree - len(s))))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.F.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            # hash the value as an element of the field it minimally lives in is
            # too costly; rational values hash like Fractions, others by N
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.F.N, self.coeffs))
        return self._hash

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.F.N)
        return complex(sum(float(c) * z ** k for k, c in enumerate(self.coeffs) if c))

    def real_sign(self) -> int:
        """Sign of a real element; zero is decided exactly."""
        if self.is_zero():
            return 0
        if self != self.conjugate():
            raise InvalidInput(f"{self} is not real")
        import mpmath
        with mpmath.workdps(60):
            z = mpmath.exp(2j * mpmath.pi / self.F.N)
            v = mpmath.re(sum(mpmath.mpf(c.numerator) / c.denominator * z ** k
                              for k, c in enumerate(self.coeffs) if c))
        if abs(v) < mpmath.mpf(10) ** -40:  # pragma: no cover - nonzero algebraic numbers are far from 0 here
            raise ArithmeticError(f"cannot decide the sign of {self}")
        return 1 if v > 0 else -1

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyc{self.F.N}(" + (" + ".join(terms) or "0") + ")"


def root_of_unity(t, N: int) -> Cyclotomic:
    """``exp(2 pi i t)`` in Q(zeta_N); the denominator of ``t`` must divide ``N``."""
    v = Fraction(getattr(t, "value", t))
    v -= math.floor(v)
    if N % v.denominator:
        raise InvalidInput(f"denominator of {v} does not divide N = {N}")
    return field(N).zeta_power(v.numerator * (N // v.denominator))


def imaginary_unit(N: int) -> Cyclotomic:
    return root_of_unity(Fraction(1, 4), N)
