"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q(zeta_n) as a tuple of integer numerators over one positive common
denominator.  Elements of different orders are promoted to the lcm order
before arithmetic, so equality and hashing never depend on the order an
element happens to be stored at.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Union

from .errors import DivisionByZero, OrderTooLarge

Scalar = Union["CycloNum", int, Fraction]

DEFAULT_MAX_ORDER = 64


def max_order() -> int:
    """Upper bound on cyclotomic orders (and group orders), from the environment."""
    try:
        return int(os.environ.get("TORPLANE_MAX_ORDER", DEFAULT_MAX_ORDER))
    except ValueError:
        return DEFAULT_MAX_ORDER


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    sign, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    if m > 1:
        sign = -sign
    return sign


def _divide_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dd]
        quot[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact division of cyclotomic polynomials")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for m in divisors(n)[:-1]:
        poly = _divide_monic(poly, cyclotomic_poly(m))
    return tuple(poly)


@lru_cache(maxsize=None)
def _zeta_powers(n: int) -> tuple[tuple[int, ...], ...]:
    # zeta_n^k for 0 <= k < n in the power basis.
    phi_poly = cyclotomic_poly(n)
    deg = len(phi_poly) - 1
    vec = [1] + [0] * (deg - 1)
    out = []
    for _ in range(n):
        out.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            for i in range(deg):
                vec[i] -= top * phi_poly[i]
    return tuple(out)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # Tr(zeta^k) / phi(n): order independent, used for hashing.
    phi = euler_phi(n)
    weights = []
    for k in range(phi):
        g = gcd(n, k)
        m = n // g
        weights.append(Fraction(mobius(m) * phi // euler_phi(m), phi))
    return tuple(weights)


def reduce_exponents(coeffs: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial in zeta_n (any length) to the power basis."""
    powers = _zeta_powers(n)
    phi = len(powers[0])
    out = list(coeffs[:phi]) + [0] * max(0, phi - len(coeffs))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            for i, p in enumerate(powers[k % n]):
                if p:
                    out[i] += c * p
    return out


def _promote(num: tuple[int, ...], n: int, target: int) -> tuple[int, ...]:
    if n == target:
        return num
    step = target // n
    powers = _zeta_powers(target)
    out = [0] * len(powers[0])
    for j, c in enumerate(num):
        if c:
            for i, p in enumerate(powers[j * step]):
                if p:
                    out[i] += c * p
    return tuple(out)


def _check_order(n: int) -> None:
    if n > max_order():
        raise OrderTooLarge(f"cyclotomic order {n} exceeds TORPLANE_MAX_ORDER={max_order()}")


def _solve_rational(columns: list[list[int]], rhs: list) -> Optional[list[Fraction]]:
    """Solve sum_j x_j * columns[j] == rhs exactly; None if inconsistent."""
    rows = len(rhs)
    ncols = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][ncols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = mat[i][ncols]
    return x


class CycloNum:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("n", "num", "den")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, CycloNum):
            self.n, self.num, self.den = value.n, value.num, value.den
            return
        q = Fraction(value)
        self.n, self.num, self.den = 1, (q.numerator,), q.denominator

    @classmethod
    def _make(cls, n: int, num, den: int = 1) -> "CycloNum":
        num = tuple(num)
        if n > 1 and not any(num[1:]):
            n, num = 1, num[:1]
        if not any(num):
            n, num, den = 1, (0,), 1
        g = gcd(den, *num)
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self = object.__new__(cls)
        self.n, self.num, self.den = n, num, den
        return self

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "CycloNum":
        """Build from rational coefficients on zeta_n^0, zeta_n^1, ... (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        ints = [f.numerator * (den // f.denominator) for f in fr]
        if n > 1:
            _check_order(n)
        return cls._make(n, reduce_exponents(ints, n), den)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return self.n == 1

    def is_one(self) -> bool:
        return self.n == 1 and self.den == 1 and self.num[0] == 1

    def __bool__(self) -> bool:
        return any(self.num)

    def to_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_complex(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * w**k for k, c in enumerate(self.num)) / self.den

    # -- alignment ----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "CycloNum":
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum(other)
        return NotImplemented

    def at_order(self, m: int) -> tuple[int, ...]:
        """Numerators after promotion to order m (a multiple of self.n)."""
        if m % self.n:
            raise ValueError(f"order {self.n} does not divide {m}")
        return _promote(self.num, self.n, m)

    def _align(self, other: "CycloNum"):
        if self.n == other.n:
            return self.n, self.num, other.num
        n = lcm(self.n, other.n)
        _check_order(n)
        return n, _promote(self.num, self.n, n), _promote(other.num, other.n, n)

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        n, a, b = self._align(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycloNum._make(n, (x + y for x, y in zip(a, b)), d1)
        return CycloNum._make(n, (x * d2 + y * d1 for x, y in zip(a, b)), d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._make(self.n, (-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.n == 1:
            c = self.num[0]
            return CycloNum._make(other.n, (c * x for x in other.num), self.den * other.den)
        if other.n == 1:
            c = other.num[0]
            return CycloNum._make(self.n, (c * x for x in self.num), self.den * other.den)
        n, a, b = self._align(other)
        phi = len(a)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycloNum._make(n, reduce_exponents(conv, n), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return CycloNum._make(1, (self.den,), self.num[0])
        support = [k for k, c in enumerate(self.num) if c]
        n = self.n
        powers = _zeta_powers(n)
        if len(support) == 1:
            k = support[0]
            c = self.num[k]
            return CycloNum._make(n, (self.den * p for p in powers[(n - k) % n]), c)
        phi = len(self.num)
        columns = []
        for j in range(phi):
            shifted = [0] * j + list(self.num)
            columns.append(reduce_exponents(shifted, n))
        sol = _solve_rational(columns, [1] + [0] * (phi - 1))
        assert sol is not None
        sol = [s * self.den for s in sol]
        return CycloNum.from_coeffs(n, sol)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.n == other.n and self.den == other.den:
            return self.num == other.num
        _, a, b = self._align(other)
        d1, d2 = self.den, other.den
        return all(x * d2 == y * d1 for x, y in zip(a, b))

    def __hash__(self):
        w = _trace_weights(self.n)
        tr = sum((c * wk for c, wk in zip(self.num, w) if c), Fraction(0))
        return hash(tr / self.den)

    # -- canonical form and printing ---------------------------------------
    def minimal_form(self) -> "CycloNum":
        """The same element stored at the smallest possible cyclotomic order."""
        if self.n == 1:
            return self
        for m in divisors(self.n)[1:-1]:
            columns = [list(_promote(tuple(1 if i == j else 0 for i in range(euler_phi(m))), m, self.n))
                       for j in range(euler_phi(m))]
            sol = _solve_rational(columns, list(self.num))
            if sol is not None:
                sol = [s / self.den for s in sol]
                return CycloNum.from_coeffs(m, sol)
        return self

    def __repr__(self):
        return f"CycloNum({str(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = CycloNum(0)
ONE = CycloNum(1)


def cyclo_make(n: int, k: int) -> CycloNum:
    """The root of unity zeta_n^k."""
    if n < 1:
        raise ValueError("order must be positive")
    _check_order(n)
    k %= n
    return CycloNum._make(n, _zeta_powers(n)[k], 1)


def as_cyclo(value: Scalar) -> CycloNum:
    return value if isinstance(value, CycloNum) else CycloNum(value)


def root_order(a: Scalar) -> Optional[int]:
    """n if a is a primitive n-th root of unity, else None."""
    a = as_cyclo(a)
    if a.is_zero() or a.den != 1:
        return None
    if a.n == 1:
        return {1: 1, -1: 2}.get(a.num[0])
    bound = a.n if a.n % 2 == 0 else 2 * a.n
    if a**bound != ONE:
        return None
    for m in divisors(bound):
        if a**m == ONE:
            return m
    return None  # pragma: no cover


def eq_power(alpha: Scalar, beta: Scalar, m: int) -> bool:
    """True iff alpha == beta**m exactly."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    return as_cyclo(alpha) == as_cyclo(beta) ** m


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: CycloNum) -> str:
    """Render in the scalar grammar: rationals as p/q, roots as z{n}^{k}."""
    if a.n == 1:
        return _format_rational(Fraction(a.num[0], a.den))
    a = a.minimal_form()
    if a.n == 1:
        return _format_rational(Fraction(a.num[0], a.den))
    order = root_order(a)
    if order is not None:
        for k in range(1, order):
            if gcd(k, order) == 1 and cyclo_make(order, k) == a:
                return f"z{order}^{k}"
    support = [k for k, c in enumerate(a.num) if c]
    parts = []
    for k in support:
        c = Fraction(a.num[k], a.den)
        if k == 0:
            parts.append(_format_rational(c))
        elif c == 1:
            parts.append(f"z{a.n}^{k}")
        elif c == -1:
            parts.append(f"-z{a.n}^{k}")
        else:
            parts.append(f"{_format_rational(c)}*z{a.n}^{k}")
    if len(parts) == 1:
        return parts[0]
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return f"({text})"
