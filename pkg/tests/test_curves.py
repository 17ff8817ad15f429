import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torplane.curves import (
    CurveForm,
    CurveType,
    EquivariantCase,
    ams_check,
    classify_form,
    equivariant_rectify,
    equivariant_type,
    isobarycenter,
    rectify,
    stabilizer,
)
from torplane.cyclo import ONE, CycloNum, cyclo_make
from torplane.errors import BadParameters, InvalidForm, NotEmbedding, NotEquivariant
from torplane.planeaut import IDENTITY, AutWord, TriMinus, TriPlus, apply, apply_point
from torplane.poly import BiPoly, UniPoly
from torplane.text import parse_unipoly
from torplane.toric import make_surface

from helpers import random_uni, small_coeff

t = UniPoly.t()


def U(text):
    return parse_unipoly(text, "t")


def proportional(p: BiPoly, q: BiPoly) -> bool:
    (mono, coeff), *_ = q.items()
    return not p.is_zero() and p == q.scale(p.coeff(*mono) / coeff)


def test_classify_examples():
    assert classify_form(CurveForm.cusp(2, 3)) is CurveType.VI
    assert classify_form(CurveForm("par2", kappas=(1, 2, 3))) is CurveType.IV
    assert classify_form(CurveForm("par2", eps_y=1, a=1, b=2, kappas=(1,))) is CurveType.V
    assert classify_form(CurveForm.axis_y()) is CurveType.I
    assert classify_form(CurveForm("par2", eps_x=1, eps_y=1)) is CurveType.II
    assert classify_form(CurveForm("par1", eps_y=1, p_roots=(0, 1))) is CurveType.III


@pytest.mark.parametrize("kwargs", [
    dict(form_kind="par2", a=2, b=4, kappas=(1,)),
    dict(form_kind="par2", kappas=(1, 1)),
    dict(form_kind="par2", kappas=(0,)),
    dict(form_kind="par1", kappas=(1,)),
    dict(form_kind="par3"),
])
def test_invalid_forms(kwargs):
    with pytest.raises(InvalidForm):
        CurveForm(**kwargs)


def test_parallel_lines():
    c = CurveForm("par1", p_roots=(0, 1))
    with pytest.raises(InvalidForm):
        classify_form(c)
    assert stabilizer(c).tag == "ProductForm"


def test_stabilizer_examples():
    assert stabilizer(CurveForm.axis_y()).tag == "JonqPlus"
    st23 = stabilizer(CurveForm.cusp(2, 3))
    assert st23.tag == "TorusSub" and st23.params == {"a": 2, "b": 3}
    cross = stabilizer(CurveForm("par2", eps_x=1, eps_y=1))
    assert cross.tag == "NormalizerOfTorus" and cross.conjugator == IDENTITY


def test_stabilizer_conjugators():
    # the conjugator sends C onto the model curve, so model o conjugator cuts out C
    c = CurveForm("par2", a=1, b=3, kappas=(2,))
    s = stabilizer(c)
    assert s.tag == "JonqPlus"
    assert proportional(apply(s.conjugator, BiPoly.y()), c.equation())
    c = CurveForm("par2", kappas=(1, -1))
    s = stabilizer(c)
    assert s.tag == "NormalizerOfTorus"
    assert proportional(apply(s.conjugator, BiPoly.x() * BiPoly.y()), c.equation())


def test_type_v_isobarycenter():
    c = CurveForm("par2", eps_y=1, a=1, b=2, kappas=(2,))
    s = stabilizer(c)
    assert s.tag == "QuasitorusRank1" and s.params["isobarycenter"] == 1
    assert isobarycenter([ONE, CycloNum(3)]) == 2


def test_type_iv_symmetries():
    s = stabilizer(CurveForm("par2", eps_x=1, eps_y=1, kappas=(1, -1)))
    assert s.tag == "FiniteExtOfScalars"
    assert len(s.generators) >= 4


def test_ams():
    assert ams_check(t, t**3)
    assert not ams_check(t**2, t**3)
    assert ams_check(t, UniPoly())
    with pytest.raises(BadParameters):
        ams_check(UniPoly.constant(1), UniPoly.constant(2))


def test_rectify_examples():
    w = rectify(t, t**2)
    assert w == AutWord.of(TriMinus(1, 1, UniPoly({2: -1})))
    assert apply_point(w, t, t**2) == (t, UniPoly())
    assert rectify(t, UniPoly()) == IDENTITY
    with pytest.raises(NotEmbedding):
        rectify(t**2, t**3)
    with pytest.raises(BadParameters):
        rectify(t + 1, t**2)


def _axis(u, v):
    return (u.is_zero() and v.degree() == 1) or (v.is_zero() and u.degree() == 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_rectify_random_lines(seed):
    rng = random.Random(seed)
    u, v = t.scale(small_coeff(rng)), UniPoly()
    for k in range(rng.randint(1, 3)):
        f = random_uni(rng, rng.randint(2, 3), low=1)
        g = (TriPlus if k % 2 else TriMinus)(small_coeff(rng), small_coeff(rng), f)
        u, v = g.apply_to(u, v)
    w = rectify(u, v)
    assert _axis(*apply_point(w, u, v))


def test_equivariant_examples():
    s = make_surface(3, 2)
    assert equivariant_type(t**2, t, s) is EquivariantCase.PLUS
    assert equivariant_type(t, t**2, s) is EquivariantCase.MINUS
    with pytest.raises(NotEquivariant):
        equivariant_type(t**3 + t, t, s)
    w = equivariant_rectify(t**2, t, s)
    assert w == AutWord.of(TriPlus(1, 1, UniPoly({2: -1})))
    assert apply_point(w, t**2, t) == (UniPoly(), t)


def test_spot_checks():
    # gamma_{a,b}(t0) scales y^a - x^b by t0^(ab)
    t0 = cyclo_make(7, 2) * 3
    for a, b in [(2, 3), (3, 5), (1, 4)]:
        eq = CurveForm.cusp(a, b).equation()
        gamma = AutWord.of(TriPlus(t0**a, t0**b))
        assert apply(gamma, eq) == eq.scale(t0 ** (a * b))
    # Jonquieres maps keep y = 0
    y = BiPoly.y()
    phi = AutWord.of(TriPlus(2, -3, U("t^4 - t + 1")))
    assert apply(phi, y) == y.scale(-3)
    # (x, x^b - y) keeps y*(y - x^b)
    b = 3
    eq = CurveForm("par2", eps_y=1, a=1, b=b, kappas=(1,)).equation()
    g = AutWord.of(TriMinus(1, -1, UniPoly({b: ONE})))
    assert apply(g, eq) == eq
