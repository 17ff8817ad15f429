"""Cyclic quotient surfaces X_{d,e} = A^2 / G_{d,e}.

G_{d,e} is generated by g = diag(zeta^e, zeta) with zeta a primitive d-th
root of unity.  The curve C_{a,b} = {y^a = x^b} is parameterized by
(x, y) = (t^a, t^b).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import BadParameters
from .jonq import check_surface_params
from .poly import BiPoly


@dataclass(frozen=True)
class CyclicSurf:
    d: int
    e: int
    e_prime: int
    c: tuple[int, ...]

    def __str__(self):
        return f"X_{{{self.d},{self.e}}}"


@dataclass(frozen=True)
class MonomialCurve:
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class EmbeddingCandidate:
    label: str
    a: Optional[int] = None
    b: Optional[int] = None
    exponents: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class EmbeddingClasses:
    """Candidate representatives; an upper bound on the number of classes."""

    surface: CyclicSurf
    candidates: tuple[EmbeddingCandidate, ...]
    upper_bound: bool = True


def make_surface(d: int, e: int) -> CyclicSurf:
    check_surface_params(d, e)
    if d == 1:
        return CyclicSurf(1, 1, 1, ())
    e_prime = pow(e, -1, d)
    c = tuple((-k * e) % d for k in range(1, d))
    return CyclicSurf(d, e, e_prime, c)


def surfaces_isomorphic(s1: CyclicSurf, s2: CyclicSurf) -> bool:
    if s1.d != s2.d:
        return False
    return s1.e == s2.e or (s1.e * s2.e) % s1.d == 1 % s1.d


def invariant_generators(s: CyclicSurf) -> list[BiPoly]:
    """y^d, x*y^{c_1}, ..., x^{d-1}*y^{c_{d-1}}, x^d."""
    gens = [BiPoly.monomial(0, s.d)]
    gens += [BiPoly.monomial(k, ck) for k, ck in enumerate(s.c, start=1)]
    gens.append(BiPoly.monomial(s.d, 0))
    return gens


def curve_image_exponents(s: CyclicSurf, a: int, b: int) -> MonomialCurve:
    """Exponents of t in the image of C_{a,b} under the invariant embedding."""
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise BadParameters(f"(a, b) = ({a}, {b}) must be coprime positive integers")
    exps = [s.d * b] + [k * a + ck * b for k, ck in enumerate(s.c, start=1)] + [s.d * a]
    return MonomialCurve(tuple(exps))


def is_image_smooth(m: MonomialCurve) -> bool:
    """Smooth iff the gcd of the exponents is itself one of them."""
    return gcd(*m.exponents) in m.exponents


def axes_equivalent(s: CyclicSurf) -> bool:
    return (s.e * s.e - 1) % s.d == 0


def _folds_into_axis(s: CyclicSurf, a: int, b: int) -> Optional[str]:
    """Axis label when C_{a,b} is G-stable and a triangular map sends it to that axis."""
    if a == 1 and (s.e * b - 1) % s.d == 0:
        return "C_y"
    if b == 1 and (a - s.e) % s.d == 0:
        return "C_x"
    return None


def enumerate_embedding_classes(s: CyclicSurf) -> EmbeddingClasses:
    """Candidate classes of embedded lines through or off the singular point."""
    if s.d == 1:
        raise BadParameters("the enumeration needs a singular surface (d > 1)")
    out = []
    if axes_equivalent(s):
        out.append(EmbeddingCandidate("C_x ~ C_y"))
    else:
        out += [EmbeddingCandidate("C_x"), EmbeddingCandidate("C_y")]
    swap = axes_equivalent(s)
    for total in range(2, s.d + 1):
        for a in range(1, total):
            b = total - a
            if gcd(a, b) != 1 or _folds_into_axis(s, a, b):
                continue
            if swap and b < a:
                continue  # the swap descends and carries C_{a,b} to C_{b,a}
            m = curve_image_exponents(s, a, b)
            if is_image_smooth(m):
                label = f"C_{{{a},{b}}}"
                if swap and a != b:
                    label += f" ~ C_{{{b},{a}}}"
                out.append(EmbeddingCandidate(label, a, b, m.exponents))
    return EmbeddingClasses(s, tuple(out))
