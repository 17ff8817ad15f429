"""Structure computations inside Jonq+, the maps (alpha*x + f(y), beta*y).

Minus-side questions are answered by conjugating with the swap: a
TriMinus(alpha, beta, f) is tau o TriPlus(beta, alpha, f) o tau, see
``mirror``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, lcm
from typing import Optional, Sequence

from .cyclo import ONE, CycloNum, cyclo_make, root_order
from .errors import BadParameters, NotCommuting, NotSemisimple
from .planeaut import AutWord, TorusElem, TriMinus, TriPlus
from .poly import UniPoly, in_grading_class

JonqPlus = TriPlus


@dataclass(frozen=True)
class UnipotentPlus:
    """mu: (x, y) -> (x + g(y), y)."""

    g: UniPoly

    def as_map(self) -> TriPlus:
        return TriPlus(ONE, ONE, self.g)

    def inverse_map(self) -> TriPlus:
        return TriPlus(ONE, ONE, -self.g)

    def conjugate(self, phi: TriPlus) -> AutWord:
        """The word mu^-1 o phi o mu."""
        return AutWord.of(self.inverse_map(), phi, self.as_map())


class InvolutionType(str, Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"
    NOT_INVOLUTION = "not_involution"


def mirror(phi: TriMinus) -> TriPlus:
    """The TriPlus conjugate tau o phi o tau of a TriMinus map."""
    return TriPlus(phi.beta, phi.alpha, phi.f)


def jonq_compose(g1: TriPlus, g2: TriPlus) -> TriPlus:
    """g1 o g2 in closed form."""
    f = g2.f.scale(g1.alpha) + g1.f.scale_var(g2.beta)
    return TriPlus(g1.alpha * g2.alpha, g1.beta * g2.beta, f)


def rho(phi: TriPlus) -> TorusElem:
    return TorusElem(phi.alpha, phi.beta)


def _resonant(phi: TriPlus, m: int) -> bool:
    return phi.beta**m == phi.alpha


def is_semisimple(phi: TriPlus) -> bool:
    """No coefficient a_m of f sits at a resonance alpha == beta^m."""
    return not any(_resonant(phi, m) for m in phi.f.terms)


def conjugator_to_torus(phi: TriPlus) -> UnipotentPlus:
    """mu with mu^-1 o phi o mu == rho(phi); b_m = a_m / (beta^m - alpha)."""
    if not is_semisimple(phi):
        raise NotSemisimple(f"{phi} has a resonant coefficient")
    g = {m: a / (phi.beta**m - phi.alpha) for m, a in phi.f.terms.items()}
    return UnipotentPlus(UniPoly(g))


def element_order(phi: TriPlus) -> Optional[int]:
    if not is_semisimple(phi):
        return None
    ra, rb = root_order(phi.alpha), root_order(phi.beta)
    if ra is None or rb is None:
        return None
    return lcm(ra, rb)


def brute_force_order(phi: TriPlus, bound: int = 24) -> Optional[int]:
    """Smallest k <= bound with phi^k == id, by repeated composition."""
    power = phi
    for k in range(1, bound + 1):
        if power.alpha.is_one() and power.beta.is_one() and power.f.is_zero():
            return k
        power = jonq_compose(phi, power)
    return None


def commute(g1: TriPlus, g2: TriPlus) -> bool:
    """a_m (beta2^m - alpha2) == b_m (beta1^m - alpha1) for every m."""
    for m in set(g1.f.terms) | set(g2.f.terms):
        lhs = g1.f.coeff(m) * (g2.beta**m - g2.alpha)
        rhs = g2.f.coeff(m) * (g1.beta**m - g1.alpha)
        if lhs != rhs:
            return False
    return True


def simultaneous_conjugator(phis: Sequence[TriPlus]) -> UnipotentPlus:
    """One mu putting every element of a commuting semisimple set into the torus."""
    for i, a in enumerate(phis):
        for b in phis[i + 1:]:
            if not commute(a, b):
                raise NotCommuting(f"{a} and {b} do not commute")
    for phi in phis:
        if not is_semisimple(phi):
            raise NotSemisimple(f"{phi} has a resonant coefficient")
    g: dict[int, CycloNum] = {}
    for m in sorted({m for phi in phis for m in phi.f.terms}):
        for phi in phis:
            if not _resonant(phi, m):
                g[m] = phi.f.coeff(m) / (phi.beta**m - phi.alpha)
                break
    return UnipotentPlus(UniPoly(g))


def check_surface_params(d: int, e: int) -> None:
    if d < 1 or (d == 1 and e != 1) or (d > 1 and not (1 <= e < d and gcd(d, e) == 1)):
        raise BadParameters(f"invalid surface parameters (d, e) = ({d}, {e})")


def generator_map(d: int, e: int) -> TriPlus:
    """g = diag(zeta_d^e, zeta_d), the generator of G_{d,e}."""
    return TriPlus(cyclo_make(d, e), cyclo_make(d, 1))


def in_normalizer_plus(phi: TriPlus, d: int, e: int) -> bool:
    """f lies in A_{d,e}; then phi commutes with the generator of G_{d,e}."""
    check_surface_params(d, e)
    return in_grading_class(phi.f, d, e % d)


def involution_type(phi: TriPlus) -> InvolutionType:
    a, b, f = phi.alpha, phi.beta, phi.f
    if a == 1 and b == -1 and all(m % 2 for m in f.terms):
        return InvolutionType.TYPE1
    if a == -1 and b == 1:
        return InvolutionType.TYPE2
    if a == -1 and b == -1 and all(m % 2 == 0 for m in f.terms):
        return InvolutionType.TYPE3
    return InvolutionType.NOT_INVOLUTION
