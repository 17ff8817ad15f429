"""Random instances shared by the property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from torplane.cyclo import CycloNum, cyclo_make
from torplane.planeaut import Affine, AutWord, TriMinus, TriPlus
from torplane.poly import UniPoly

SMALL = [2, -2, 1, -1, Fraction(1, 2), Fraction(-1, 2)]


def small_coeff(rng: random.Random) -> CycloNum:
    """+-2, +-1, +-1/2, sometimes times a power of zeta_3 or zeta_4."""
    c = CycloNum(rng.choice(SMALL))
    r = rng.random()
    if r < 0.25:
        c = c * cyclo_make(3, rng.randrange(1, 3))
    elif r < 0.5:
        c = c * cyclo_make(4, rng.randrange(1, 4))
    return c


def random_uni(rng: random.Random, degree: int, low: int = 0) -> UniPoly:
    terms = {degree: small_coeff(rng)}
    for k in range(low, degree):
        if rng.random() < 0.5:
            terms[k] = small_coeff(rng)
    return UniPoly(terms)


def random_word(rng: random.Random, max_len: int = 4, max_deg: int = 4) -> AutWord:
    """An alternating word of triangular maps, sometimes with an affine factor in front."""
    side = rng.randrange(2)
    factors = []
    for _ in range(rng.randint(1, max_len)):
        cls = TriPlus if side == 0 else TriMinus
        factors.append(cls(small_coeff(rng), small_coeff(rng), random_uni(rng, rng.randint(2, max_deg))))
        side ^= 1
    if rng.random() < 0.5:
        factors.insert(0, random_affine(rng))
    return AutWord(tuple(factors))


def random_affine(rng: random.Random) -> Affine:
    while True:
        p, q, s, t = (small_coeff(rng) for _ in range(4))
        if p * t != q * s:
            return Affine(p, q, s, t, small_coeff(rng), small_coeff(rng))

