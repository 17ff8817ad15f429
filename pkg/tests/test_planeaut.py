import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torplane.errors import NotAutomorphism, NotReduced
from torplane.planeaut import (
    IDENTITY,
    Affine,
    AutWord,
    Swap,
    TriMinus,
    TriPlus,
    apply,
    compose,
    invert,
    jvdk_factor,
    normal_form,
    word_degree,
)
from torplane.poly import BiPoly, UniPoly
from torplane.text import parse_bipoly, parse_word

from helpers import random_word

x, y = BiPoly.x(), BiPoly.y()


def P(text):
    return parse_bipoly(text)


def test_apply_examples():
    assert apply(IDENTITY, P("y^3 - x^2")) == P("y^3 - x^2")
    assert apply(AutWord.of(TriMinus(1, 1, UniPoly({3: 1}))), y) == P("y + x^3")
    assert apply(AutWord.of(Swap()), P("y - x^3")) == P("x - y^3")


def test_compose_example():
    # the rightmost factor acts first: (x, y + x^3) and then (x + y^2, y)
    w = compose(parse_word("TriPlus(1,1,t^2)"), parse_word("TriMinus(1,1,t^3)"))
    u, v = w.components
    assert (u, v) == (x + (y + x**3) ** 2, y + x**3)
    assert w.degree() == 6
    # the other order gives (x + y^2, y + (x + y^2)^3)
    w2 = compose(parse_word("TriMinus(1,1,t^3)"), parse_word("TriPlus(1,1,t^2)"))
    assert w2.components == (x + y**2, y + (x + y**2) ** 3)


def test_compose_identity_and_inverse():
    w = parse_word("TriPlus(2,1,t^2); Affine(1,1,0,1,1,0); TriMinus(1,z3,x^3)")
    assert compose(w, IDENTITY).components == w.components
    assert compose(w, invert(w)).components == (x, y)
    assert compose(invert(w), w).components == (x, y)


def test_invert_elements():
    g = TriPlus(2, 3, UniPoly({4: 1}))
    gi = g.inverse()
    assert gi.alpha * 2 == 1 and gi.beta * 3 == 1
    assert AutWord.of(g, gi).is_identity_map()
    assert Swap().inverse() == Swap()
    a = Affine(1, 2, 0, 1, 3, 4)
    assert a.inverse() == Affine(1, -2, 0, 1, 5, -4)


def test_jvdk_examples():
    assert jvdk_factor(x, y) == IDENTITY
    assert jvdk_factor(P("x + y^2"), y) == AutWord.of(TriPlus(1, 1, UniPoly({2: 1})))
    w = jvdk_factor(P("x + y^2"), P("y + (x + y^2)^3"))
    assert w == parse_word("TriMinus(1,1,x^3); TriPlus(1,1,y^2)")
    assert w.components == (P("x + y^2"), P("y + (x + y^2)^3"))


@pytest.mark.parametrize("u, v", [("x^2", "y"), ("x + y^2", "x^2 + y"), ("x", "x"), ("1", "y")])
def test_jvdk_rejects(u, v):
    with pytest.raises(NotAutomorphism):
        jvdk_factor(P(u), P(v))


def test_normal_form_examples():
    assert normal_form(parse_word("TriPlus(1,1,t^2); TriPlus(1,1,-t^2)")) == IDENTITY
    nf = normal_form(parse_word("TriPlus(1,1,t^2); TriPlus(2,1,t^2)"))
    assert nf == parse_word("TriPlus(1,1,2*y^2); Affine(2,0,0,1)")
    assert nf.components == (2 * x + 2 * y**2, y)


def test_word_degree_examples():
    assert word_degree(parse_word("TriPlus(1,1,t^2); TriMinus(1,1,t^3)")) == 6
    assert word_degree(parse_word("TriPlus(1,1,t^5)")) == 5
    assert word_degree(IDENTITY) == 1
    with pytest.raises(NotReduced):
        word_degree(parse_word("TriPlus(1,1,t^2); TriPlus(1,1,t^3)"))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_roundtrip_property(seed):
    w = random_word(random.Random(seed), max_len=3, max_deg=3)
    nf = normal_form(w)
    assert normal_form(nf) == nf
    assert jvdk_factor(*w.components) == nf
    assert nf.components == w.components
    assert word_degree(w) == w.degree()


def test_normal_form_with_swaps_and_roots():
    w = parse_word("Swap; TriPlus(z4,1,t^3); Swap; Affine(z3,0,1,1,1,0); Swap")
    nf = normal_form(w)
    assert nf.components == w.components
    assert jvdk_factor(*w.components) == nf
