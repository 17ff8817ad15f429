import pytest

from torplane.cyclo import cyclo_make
from torplane.errors import NotAutomorphism, ParseError
from torplane.planeaut import Affine, AutWord, Swap, TriMinus, TriPlus
from torplane.poly import BiPoly, UniPoly
from torplane.text import parse_bipoly, parse_elem, parse_scalar, parse_unipoly, parse_word


def test_scalars():
    assert parse_scalar("3/4") * 4 == 3
    assert parse_scalar("z4^2") == -1
    assert parse_scalar("(1 + z3)^3") == -1
    assert parse_scalar("2^-2") * 4 == 1


def test_polynomials():
    x, y = BiPoly.x(), BiPoly.y()
    assert parse_bipoly("x + y^2") == x + y**2
    assert parse_bipoly("(x - y)*(x + y)") == x**2 - y**2
    assert parse_bipoly("z4*x*y/2") == (x * y).scale(cyclo_make(4, 1) / 2)
    assert parse_unipoly("t^2 - 1", "t") == UniPoly({2: 1, 0: -1})


@pytest.mark.parametrize("bad", ["x +", "x^y", "(x", "x $ y", "x/y", "x^-1", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_bipoly(bad)


def test_variable_restriction():
    with pytest.raises(ParseError):
        parse_unipoly("x + t", "t")


def test_elements():
    assert parse_elem("Swap") == Swap()
    assert parse_elem("TriPlus(1, 2, t^2)") == TriPlus(1, 2, UniPoly({2: 1}))
    assert parse_elem("TriMinus(1,1,x^3)") == TriMinus(1, 1, UniPoly({3: 1}))
    assert parse_elem("Affine(0,1,1,0)") == Affine(0, 1, 1, 0)
    with pytest.raises(ParseError):
        parse_elem("TriPlus(1,1,x)")
    with pytest.raises(ParseError):
        parse_elem("Shear(1)")
    with pytest.raises(NotAutomorphism):
        parse_elem("Affine(1,1,1,1)")


def test_word_roundtrip():
    text = "TriPlus(1, 1, y^2); TriMinus(z3^1, -1, 1/2*x^3); Affine(1, 2, 0, 1, 3, 4); Swap"
    w = parse_word(text)
    assert str(w) == text
    assert parse_word(str(w)) == w
    assert parse_word("identity") == AutWord()
