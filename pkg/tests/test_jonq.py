import random

import pytest

from torplane import jonq
from torplane.cyclo import ONE, CycloNum, cyclo_make
from torplane.errors import BadParameters, NotCommuting, NotSemisimple
from torplane.jonq import InvolutionType, JonqPlus, UnipotentPlus
from torplane.planeaut import AutWord, TorusElem, TriMinus
from torplane.poly import UniPoly
from torplane.text import parse_unipoly

from helpers import random_uni, small_coeff


def J(alpha, beta, f="0"):
    return JonqPlus(alpha, beta, parse_unipoly(f, "yt"))


def torus_word(phi):
    return AutWord.of(jonq.rho(phi).as_map())


def test_rho():
    assert jonq.rho(J(2, 3, "y^4")) == TorusElem(2, 3)
    assert jonq.rho(J(-1, 1, "y^2")) == TorusElem(-1, 1)
    rng = random.Random(1)
    for _ in range(10):
        a = J(small_coeff(rng), small_coeff(rng), str(random_uni(rng, 3)).replace("t", "y"))
        b = J(small_coeff(rng), small_coeff(rng), str(random_uni(rng, 3)).replace("t", "y"))
        assert jonq.rho(jonq.jonq_compose(a, b)) == jonq.rho(a) * jonq.rho(b)


def test_jonq_compose_matches_words():
    a, b = J(2, -1, "y^3 + y"), J(cyclo_make(3, 1), 5, "y^2 - 1")
    assert AutWord.of(jonq.jonq_compose(a, b)).components == AutWord.of(a, b).components


def test_semisimple():
    assert jonq.is_semisimple(J(-1, 1, "y^2"))
    assert not jonq.is_semisimple(J(1, 1, "y"))
    assert not jonq.is_semisimple(J(CycloNum(2) ** 3, 2, "y^3"))


def test_conjugator_examples():
    mu = jonq.conjugator_to_torus(J(-1, 1, "y^2"))
    assert mu.g == parse_unipoly("1/2*y^2", "y")
    assert mu.conjugate(J(-1, 1, "y^2")).components == torus_word(J(-1, 1)).components
    assert jonq.conjugator_to_torus(J(2, 1)).g.is_zero()
    z3 = cyclo_make(3, 1)
    phi = J(z3, z3, "y^2")
    mu = jonq.conjugator_to_torus(phi)
    assert mu.g.coeff(2) == 1 / (z3**2 - z3)
    assert mu.conjugate(phi).components == torus_word(phi).components
    with pytest.raises(NotSemisimple):
        jonq.conjugator_to_torus(J(1, 1, "y"))


def test_element_order():
    assert jonq.element_order(J(1, -1, "y^3 + y")) == 2
    assert jonq.element_order(J(1, 1, "y")) is None
    assert jonq.element_order(J(cyclo_make(5, 4), cyclo_make(5, 1))) == 5
    assert jonq.brute_force_order(J(1, -1, "y^3 + y")) == 2
    assert jonq.element_order(J(2, 1)) is None


def test_commute():
    assert not jonq.commute(J(1, 1, "y^2"), J(2, 1))
    phi = J(-1, 1, "y^2")
    assert jonq.commute(phi, phi)
    assert jonq.commute(J(1, 3), J(1, 5))


def test_simultaneous():
    phi = J(-1, 1, "y^2")
    assert jonq.simultaneous_conjugator([phi]) == jonq.conjugator_to_torus(phi)
    mu = jonq.simultaneous_conjugator([phi, J(1, 1)])
    assert mu == UnipotentPlus(parse_unipoly("1/2*y^2", "y"))
    with pytest.raises(NotCommuting):
        jonq.simultaneous_conjugator([J(1, 1, "y"), J(2, 1)])


def test_normalizer_membership():
    assert jonq.in_normalizer_plus(J(1, 1, "y^2"), 3, 2)
    assert not jonq.in_normalizer_plus(J(1, 1, "y"), 3, 2)
    assert jonq.in_normalizer_plus(J(7, 2), 5, 3)
    g = AutWord.of(jonq.generator_map(3, 2))
    phi = AutWord.of(J(2, -1, "y^2 + y^5"))
    assert AutWord.of(*phi.factors, *g.factors).components == AutWord.of(*g.factors, *phi.factors).components
    with pytest.raises(BadParameters):
        jonq.in_normalizer_plus(J(1, 1), 4, 2)


def test_involution_types():
    assert jonq.involution_type(J(1, -1, "y^3 + y")) is InvolutionType.TYPE1
    assert jonq.involution_type(J(-1, 1, "y^2")) is InvolutionType.TYPE2
    assert jonq.involution_type(J(-1, -1, "y^2 + 1")) is InvolutionType.TYPE3
    assert jonq.involution_type(J(1, 1, "y")) is InvolutionType.NOT_INVOLUTION
    for phi in (J(1, -1, "y^3 + y"), J(-1, 1, "y^2 + y^5"), J(-1, -1, "y^2 + 1")):
        assert jonq.brute_force_order(phi) == 2


def test_mirror():
    m = TriMinus(2, 3, UniPoly({2: ONE}))
    assert jonq.mirror(m) == J(3, 2, "y^2")
