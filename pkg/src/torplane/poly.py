"""Sparse exact polynomials over cyclotomic scalars.

UniPoly is keyed by a single exponent, BiPoly by an exponent pair (i, j)
for x^i y^j.  Values are immutable once built.

Large products go through Kronecker substitution: coefficients are
promoted to one cyclotomic order, scaled to integers and packed, together
with the zeta exponent, into a single big integer whose product is taken
with GMP.  Composition of plane automorphisms multiplies degrees, so the
schoolbook product is only used for small operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional

import gmpy2

from .cyclo import (
    ONE,
    ZERO,
    CycloNum,
    Scalar,
    _check_order,
    _promote,
    as_cyclo,
    euler_phi,
    reduce_exponents,
)

# Below this many pairwise term products the schoolbook loop is faster.
KRONECKER_THRESHOLD = 256


def _kron_product(a: list, b: list, nvars: int) -> list:
    """Product of two term lists [(exponent tuple, CycloNum)] by packing into big integers."""
    order = lcm(*(c.n for _, c in a), *(c.n for _, c in b))
    _check_order(order)
    phi = euler_phi(order)
    zdim = 2 * phi - 1

    def integerize(items):
        den = lcm(*(c.den for _, c in items))
        rows = []
        peak = 0
        for e, c in items:
            s = den // c.den
            vec = [x * s for x in _promote(c.num, c.n, order)]
            peak = max(peak, max(abs(x) for x in vec))
            rows.append((e, vec))
        return den, rows, peak

    den_a, rows_a, peak_a = integerize(a)
    den_b, rows_b, peak_b = integerize(b)
    lo_a = [min(e[k] for e, _ in rows_a) for k in range(nvars)]
    lo_b = [min(e[k] for e, _ in rows_b) for k in range(nvars)]
    hi_a = [max(e[k] for e, _ in rows_a) for k in range(nvars)]
    hi_b = [max(e[k] for e, _ in rows_b) for k in range(nvars)]
    sizes = [hi_a[k] - lo_a[k] + hi_b[k] - lo_b[k] + 1 for k in range(nvars)]
    strides = [0] * nvars
    step = zdim
    for k in range(nvars - 1, -1, -1):
        strides[k] = step
        step *= sizes[k]
    total = step

    bound = peak_a * peak_b * min(len(rows_a), len(rows_b)) * phi
    nbytes = (bound.bit_length() + 2 + 7) // 8

    def pack(rows, lo):
        pos = bytearray(total * nbytes)
        neg = bytearray(total * nbytes)
        for e, vec in rows:
            base = sum((e[k] - lo[k]) * strides[k] for k in range(nvars))
            for z, c in enumerate(vec):
                if c:
                    off = (base + z) * nbytes
                    if c > 0:
                        pos[off:off + nbytes] = c.to_bytes(nbytes, "little")
                    else:
                        neg[off:off + nbytes] = (-c).to_bytes(nbytes, "little")
        return gmpy2.mpz(int.from_bytes(pos, "little") - int.from_bytes(neg, "little"))

    prod = int(pack(rows_a, lo_a) * pack(rows_b, lo_b))
    zero_chunk = b"\x00" * (nbytes - 1) + b"\x80"
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(zero_chunk * total, "little")
    buf = memoryview((prod + offset).to_bytes(total * nbytes, "little"))

    grouped: dict[int, list[int]] = {}
    for s in range(total):
        chunk = buf[s * nbytes:(s + 1) * nbytes]
        if chunk == zero_chunk:
            continue
        mono, z = divmod(s, zdim)
        vec = grouped.get(mono)
        if vec is None:
            vec = grouped[mono] = [0] * zdim
        vec[z] = int.from_bytes(chunk, "little") - half

    den = den_a * den_b
    shift = [lo_a[k] + lo_b[k] for k in range(nvars)]
    out = []
    for mono, vec in grouped.items():
        exps = []
        rest = mono
        for k in range(nvars - 1, -1, -1):
            rest, r = divmod(rest, sizes[k]) if k else (0, rest)
            exps.append(r + shift[k])
        c = CycloNum._make(order, reduce_exponents(vec, order), den)
        if c:
            out.append((tuple(reversed(exps)), c))
    return out


def _schoolbook(a: dict, b: dict, add_keys) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = add_keys(ka, kb)
            c = ca * cb
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
    return out


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


def _add_terms(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        prev = out.get(k)
        if prev is None:
            out[k] = c if sign > 0 else -c
        else:
            s = prev + c if sign > 0 else prev - c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


class UniPoly:
    """Univariate polynomial sum c_k t^k with cyclotomic coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[dict] = None):
        items = {} if terms is None else terms
        self.terms = {int(k): as_cyclo(c) for k, c in items.items() if c}
        if any(k < 0 for k in self.terms):
            raise ValueError("negative exponent")
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "UniPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "UniPoly":
        return cls({k: c})

    @classmethod
    def t(cls) -> "UniPoly":
        return cls({1: ONE})

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls({0: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "UniPoly":
        return cls(dict(enumerate(coeffs)))

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return max(self.terms) if self.terms else None

    def low_degree(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    def lc(self) -> CycloNum:
        return self.terms[max(self.terms)] if self.terms else ZERO

    def coeff(self, k: int) -> CycloNum:
        return self.terms.get(k, ZERO)

    def support(self) -> list[int]:
        return sorted(self.terms)

    def items(self):
        return sorted(self.terms.items(), reverse=True)

    def truncate_below(self, k: int) -> "UniPoly":
        """Terms of degree >= k."""
        return UniPoly._wrap({e: c for e, c in self.terms.items() if e >= k})

    def truncate_above(self, k: int) -> "UniPoly":
        """Terms of degree <= k."""
        return UniPoly._wrap({e: c for e, c in self.terms.items() if e <= k})

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (CycloNum, int)) or type(other).__name__ == "Fraction":
            return UniPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniPoly._wrap(_add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniPoly._wrap(_add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "UniPoly":
        c = as_cyclo(c)
        if not c:
            return UniPoly()
        return UniPoly._wrap({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (CycloNum, int)) or type(other).__name__ == "Fraction":
            return self.scale(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return UniPoly()
        if len(self.terms) * len(other.terms) < KRONECKER_THRESHOLD:
            return UniPoly._wrap(_clean(_schoolbook(self.terms, other.terms, int.__add__)))
        prod = _kron_product([((k,), c) for k, c in self.terms.items()],
                             [((k,), c) for k, c in other.terms.items()], 1)
        return UniPoly._wrap({e[0]: c for e, c in prod})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = UniPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, arg):
        """Evaluate at a scalar, or compose with a polynomial argument."""
        if isinstance(arg, (UniPoly, BiPoly)):
            return compose_powers(self.terms, arg)
        arg = as_cyclo(arg)
        result = ZERO
        prev = None
        for k in sorted(self.terms, reverse=True):
            if prev is not None:
                result = result * arg ** (prev - k)
            result = result + self.terms[k]
            prev = k
        if prev:
            result = result * arg**prev
        return result

    def scale_var(self, c: Scalar) -> "UniPoly":
        """f(c t)."""
        c = as_cyclo(c)
        return UniPoly._wrap(_clean({k: v * c**k for k, v in self.terms.items()}))

    # -- comparison / printing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.terms == other.terms
        if isinstance(other, (CycloNum, int)):
            return self == UniPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def to_str(self, var: str = "t") -> str:
        from .text import format_terms

        return format_terms([({var: k}, c) for k, c in self.items()])

    def __str__(self):
        return self.to_str("t")

    def __repr__(self):
        return f"UniPoly({self.to_str()!r})"


class BiPoly:
    """Bivariate polynomial sum c_ij x^i y^j with cyclotomic coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[dict] = None):
        items = {} if terms is None else terms
        self.terms = {(int(i), int(j)): as_cyclo(c) for (i, j), c in items.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "BiPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): ONE})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): ONE})

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def constant(cls, c: Scalar) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, f: UniPoly, var: str) -> "BiPoly":
        """Embed f as a polynomial in x or in y."""
        if var == "x":
            return cls._wrap({(k, 0): c for k, c in f.terms.items()})
        if var == "y":
            return cls._wrap({(0, k): c for k, c in f.terms.items()})
        raise ValueError(var)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Total degree, or None for the zero polynomial."""
        return max(i + j for i, j in self.terms) if self.terms else None

    def deg_x(self) -> Optional[int]:
        return max(i for i, _ in self.terms) if self.terms else None

    def deg_y(self) -> Optional[int]:
        return max(j for _, j in self.terms) if self.terms else None

    def coeff(self, i: int, j: int) -> CycloNum:
        return self.terms.get((i, j), ZERO)

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly._wrap({k: c for k, c in self.terms.items() if k[0] + k[1] == d})

    def top_form(self) -> "BiPoly":
        d = self.degree()
        return BiPoly() if d is None else self.homogeneous_part(d)

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self.terms}) <= 1

    def items(self):
        """Terms in graded lexicographic order (x > y), highest first."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def to_uni(self, var: str) -> UniPoly:
        """View a polynomial in one variable only as a UniPoly."""
        idx = 0 if var == "x" else 1
        if any(k[1 - idx] for k in self.terms):
            raise ValueError(f"polynomial involves a variable other than {var}")
        return UniPoly._wrap({k[idx]: c for k, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (CycloNum, int)) or type(other).__name__ == "Fraction":
            return BiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BiPoly._wrap(_add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BiPoly._wrap(_add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "BiPoly":
        c = as_cyclo(c)
        if not c:
            return BiPoly()
        if c.is_one():
            return self
        return BiPoly._wrap({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (CycloNum, int)) or type(other).__name__ == "Fraction":
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return BiPoly()
        if len(self.terms) * len(other.terms) < KRONECKER_THRESHOLD:
            return BiPoly._wrap(_clean(_schoolbook(
                self.terms, other.terms, lambda p, q: (p[0] + q[0], p[1] + q[1]))))
        return BiPoly._wrap(dict(_kron_product(list(self.terms.items()), list(other.terms.items()), 2)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = BiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def subs(self, u, v):
        """p(u, v) for polynomial (or scalar) arguments u, v of a common type."""
        if not self.terms:
            return _zero_like(u)
        by_x: dict[int, dict[int, CycloNum]] = {}
        for (i, j), c in self.terms.items():
            by_x.setdefault(i, {})[j] = c
        vpow = PowerCache(v)
        upow = PowerCache(u)
        result = _zero_like(u)
        for i, row in by_x.items():
            inner = _zero_like(u)
            for j, c in row.items():
                inner = inner + vpow[j] * c
            result = result + (upow[i] * inner if i else inner)
        return result

    def __call__(self, u, v):
        return self.subs(u, v)

    # -- comparison / printing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (CycloNum, int)):
            return self == BiPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        from .text import format_terms

        return format_terms([({"x": i, "y": j}, c) for (i, j), c in self.items()])

    def __repr__(self):
        return f"BiPoly({str(self)!r})"


def _one_like(p):
    if isinstance(p, BiPoly):
        return BiPoly.constant(1)
    if isinstance(p, UniPoly):
        return UniPoly.constant(1)
    return ONE


def _zero_like(p):
    if isinstance(p, BiPoly):
        return BiPoly()
    if isinstance(p, UniPoly):
        return UniPoly()
    return ZERO


class PowerCache:
    """Lazily computed powers p^0, p^1, ... of a fixed polynomial."""

    def __init__(self, base):
        self.base = base
        self.powers = [_one_like(base), base]

    def __getitem__(self, k: int):
        while len(self.powers) <= k:
            n = len(self.powers)
            half = self.powers[n // 2]
            other = self.powers[n - n // 2]
            self.powers.append(half * other)
        return self.powers[k]


def compose_powers(terms: dict, arg, cache: Optional[PowerCache] = None):
    """sum c_k arg^k for a univariate coefficient map {k: c_k}."""
    cache = cache if cache is not None and cache.base is arg else PowerCache(arg)
    result = _zero_like(arg)
    for k, c in terms.items():
        result = result + cache[k] * c
    return result


@dataclass(frozen=True)
class GradedParts:
    """Components of f in the Z/dZ grading A_{d,i} = t^i k[t^d]."""

    modulus: int
    parts: tuple

    def total(self) -> UniPoly:
        out = UniPoly()
        for p in self.parts:
            out = out + p
        return out


def grade_decompose(f: UniPoly, d: int) -> GradedParts:
    if d < 1:
        raise ValueError("modulus must be positive")
    buckets: list[dict] = [{} for _ in range(d)]
    for k, c in f.terms.items():
        buckets[k % d][k] = c
    return GradedParts(d, tuple(UniPoly._wrap(b) for b in buckets))


def in_grading_class(f: UniPoly, d: int, i: int) -> bool:
    """True iff every exponent of f is congruent to i mod d (zero is in every class)."""
    if not 0 <= i < d:
        raise ValueError("residue out of range")
    return all(k % d == i for k in f.terms)
