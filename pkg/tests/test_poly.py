import random

from hypothesis import given, settings
from hypothesis import strategies as st

from torplane import poly
from torplane.cyclo import cyclo_make
from torplane.poly import BiPoly, UniPoly, grade_decompose, in_grading_class
from torplane.text import parse_bipoly, parse_unipoly

from helpers import random_uni

t = UniPoly.t()
x, y = BiPoly.x(), BiPoly.y()


def test_uni_basics():
    f = t**3 + t.scale(2)
    assert f.degree() == 3 and f.low_degree() == 1
    assert f.lc() == 1 and f.coeff(1) == 2
    assert UniPoly().degree() is None
    assert f(2) == 12
    assert f(t**2) == t**6 + (t**2).scale(2)
    assert f.scale_var(-1) == -f


def test_bi_basics():
    p = (x + y**2) ** 2
    assert p.degree() == 4 and p.deg_x() == 2 and p.deg_y() == 4
    assert p.top_form() == y**4
    assert not p.is_homogeneous() and p.top_form().is_homogeneous()
    assert p.subs(y, x) == (y + x**2) ** 2
    assert p.subs(x, x) == (x + x**2) ** 2
    assert str(p) == "y^4 + 2*x*y^2 + x^2"


def test_grade_decompose_examples():
    parts = grade_decompose(t**3 + t, 2)
    assert parts.parts[1] == t**3 + t and parts.parts[0].is_zero()
    parts = grade_decompose(t**5 + (t**2).scale(2), 3)
    assert parts.parts[2] == t**5 + (t**2).scale(2)
    assert parts.parts[0].is_zero() and parts.parts[1].is_zero()
    assert all(p.is_zero() for p in grade_decompose(UniPoly(), 7).parts)


def test_in_grading_class_examples():
    assert in_grading_class(t**2, 3, 2)
    assert in_grading_class(-(t**2), 3, 2)
    assert not in_grading_class(t**2 + t, 3, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7))
def test_grade_decompose_total(seed, d):
    f = random_uni(random.Random(seed), 9)
    parts = grade_decompose(f, d)
    assert parts.total() == f
    assert all(in_grading_class(p, d, i) for i, p in enumerate(parts.parts))


def test_kronecker_matches_schoolbook(monkeypatch):
    rng = random.Random(5)
    f = parse_bipoly("(x + 2*y + z3*x*y - 1/2)^6")
    g = parse_bipoly("(x - y^2 + z4)^5") + BiPoly({(7, 1): cyclo_make(12, 5)})
    fast = f * g
    monkeypatch.setattr(poly, "KRONECKER_THRESHOLD", 10**9)
    slow = f * g
    assert fast == slow
    a, b = random_uni(rng, 40), random_uni(rng, 35)
    slow_u = a * b
    monkeypatch.setattr(poly, "KRONECKER_THRESHOLD", 1)
    assert a * b == slow_u


def test_uni_compose_associative():
    f, g, h = parse_unipoly("t^3 - t"), parse_unipoly("2*t^2 + z3"), parse_unipoly("t + 1/2")
    assert f(g(h)) == f(g)(h)
