"""Acyclic plane curves in canonical form and rectification of embedded lines.

Canonical forms come in two shapes:

* ``par1``: y^{eps_y} * p(x) = 0, where p has the simple roots ``p_roots``;
* ``par2``: x^{eps_x} * y^{eps_y} * prod (y^a - kappa_i * x^b) = 0.

C_y = {y = 0} and C_x = {x = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Optional, Sequence

from .cyclo import ONE, ZERO, CycloNum, as_cyclo
from .errors import BadParameters, InvalidForm, NotEmbedding, NotEquivariant
from .linalg import Mat2
from .planeaut import IDENTITY, Affine, AutWord, TriMinus, TriPlus
from .poly import BiPoly, UniPoly, in_grading_class
from .toric import CyclicSurf


class CurveType(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"


@dataclass(frozen=True)
class CurveForm:
    form_kind: str
    eps_x: int = 0
    eps_y: int = 0
    a: int = 1
    b: int = 1
    kappas: tuple = ()
    p_roots: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kappas", tuple(as_cyclo(k) for k in self.kappas))
        object.__setattr__(self, "p_roots", tuple(as_cyclo(k) for k in self.p_roots))
        self.validate()

    def validate(self) -> None:
        if self.form_kind not in ("par1", "par2"):
            raise InvalidForm(f"unknown form kind {self.form_kind!r}")
        if self.eps_x not in (0, 1) or self.eps_y not in (0, 1):
            raise InvalidForm("eps flags must be 0 or 1")
        if len(set(self.p_roots)) != len(self.p_roots):
            raise InvalidForm("roots of p must be simple")
        if len(set(self.kappas)) != len(self.kappas):
            raise InvalidForm("kappas must be pairwise distinct")
        if any(not k for k in self.kappas):
            raise InvalidForm("kappas must be nonzero")
        if self.form_kind == "par2":
            if self.a < 1 or self.b < 1 or gcd(self.a, self.b) != 1:
                raise InvalidForm("need a, b >= 1 with gcd(a, b) = 1")
        elif self.eps_x or self.kappas:
            raise InvalidForm("par1 forms carry only eps_y and roots of p")

    @classmethod
    def axis_y(cls) -> "CurveForm":
        """C_y = {y = 0}."""
        return cls("par1", eps_y=1)

    @classmethod
    def cusp(cls, a: int, b: int) -> "CurveForm":
        """C_{a,b} = {y^a = x^b}."""
        return cls("par2", a=a, b=b, kappas=(ONE,))

    def equation(self) -> BiPoly:
        x, y = BiPoly.x(), BiPoly.y()
        out = BiPoly.constant(1)
        if self.eps_y:
            out = out * y
        if self.form_kind == "par1":
            for r in self.p_roots:
                out = out * (x - r)
            return out
        if self.eps_x:
            out = out * x
        for k in self.kappas:
            out = out * (y**self.a - (x**self.b).scale(k))
        return out


@dataclass(frozen=True)
class StabDescriptor:
    tag: str
    params: dict = field(default_factory=dict)
    conjugator: AutWord = IDENTITY
    generators: tuple = ()
    note: str = ""


# -- classification -----------------------------------------------------------


def classify_form(c: CurveForm) -> CurveType:
    if c.form_kind == "par1":
        r = len(c.p_roots)
        if not c.eps_y:
            if r == 1:
                return CurveType.I
            raise InvalidForm("parallel lines without a transversal are not connected"
                              if r else "empty curve")
        return (CurveType.I, CurveType.II)[r] if r < 2 else CurveType.III
    r = len(c.kappas)
    if r == 0 or c.a == c.b == 1:
        n = c.eps_x + c.eps_y + r
        if n == 0:
            raise InvalidForm("empty curve")
        return (CurveType.I, CurveType.II)[n - 1] if n < 3 else CurveType.IV
    if c.a == 1:
        if c.eps_y + r >= 2:
            return CurveType.V
        return CurveType.II if c.eps_x else CurveType.I
    if c.b == 1:
        if c.eps_x + r >= 2:
            return CurveType.V
        return CurveType.II if c.eps_y else CurveType.I
    return CurveType.VI


# -- stabilizers --------------------------------------------------------------


def affine_symmetries(points: Sequence[CycloNum]) -> list[tuple[CycloNum, CycloNum]]:
    """Maps z -> a*z + c permuting a finite set (|set| >= 2), by trying point pairs."""
    pts = list(points)
    if len(pts) < 2:
        raise BadParameters("need at least two points")
    target = set(pts)
    p0, p1 = pts[0], pts[1]
    out = []
    for q0, q1 in permutations(pts, 2):
        a = (q1 - q0) / (p1 - p0)
        c = q0 - a * p0
        if {a * z + c for z in pts} == target:
            out.append((a, c))
    return sorted(out, key=lambda ac: (str(ac[0]), str(ac[1])))


def _mobius(src: Sequence[tuple], dst: Sequence[tuple]) -> Optional[Mat2]:
    """Matrix sending three points of P^1 to three points, up to scalars."""

    def frame(p):
        m = Mat2(p[0][0], p[1][0], p[0][1], p[1][1])
        if not m.det():
            return None
        lam = m.inverse().apply_vector(p[2])
        if not lam[0] or not lam[1]:
            return None
        return Mat2(p[0][0] * lam[0], p[1][0] * lam[1], p[0][1] * lam[0], p[1][1] * lam[1])

    fs, fd = frame(src), frame(dst)
    if fs is None or fd is None:
        return None
    return (fd * fs.inverse()).normalized()


def _same_point(p, q) -> bool:
    return p[0] * q[1] == p[1] * q[0]


def projective_symmetries(points: Sequence[tuple]) -> list[Mat2]:
    """PGL(2) elements permuting n >= 3 points of P^1, normalized."""
    pts = list(points)
    if len(pts) < 3:
        raise BadParameters("need at least three points")
    out = []
    for img in permutations(pts, 3):
        m = _mobius(pts[:3], img)
        if m is None:
            continue
        moved = [m.apply_vector(p) for p in pts]
        if all(any(_same_point(q, p) for p in pts) for q in moved) and m not in out:
            out.append(m)
    return sorted(out, key=str)


def _directions(c: CurveForm) -> list[tuple]:
    """Points of P^1 for the lines through the origin in an a = b = 1 form."""
    out = [(ONE, ZERO)] if c.eps_y else []
    out += [(ONE, k) for k in c.kappas]
    if c.eps_x:
        out.append((ZERO, ONE))
    return out


def _to_cross(p: tuple, q: tuple) -> AutWord:
    """Linear map sending the lines spanned by p and q to C_y and C_x."""
    m = Mat2(p[0], q[0], p[1], q[1]).inverse()
    if m.is_identity():
        return IDENTITY
    return AutWord.of(Affine(m.a, m.b, m.c, m.d))


def stabilizer(c: CurveForm) -> StabDescriptor:
    """Symbolic description of Stab(C); ``conjugator`` maps C to the model curve."""
    if c.form_kind == "par1" and not c.eps_y and len(c.p_roots) >= 2:
        syms = affine_symmetries(c.p_roots)
        return StabDescriptor("ProductForm", {"torus": "T_{0,1}", "unipotent": "U-"},
                              generators=tuple(syms),
                              note="parallel lines x = root: T_{0,1} . U- . Stab(K)")
    kind = classify_form(c)
    if kind is CurveType.I:
        return _stab_single(c)
    if kind is CurveType.II:
        return StabDescriptor("NormalizerOfTorus", {}, _cross_conjugator(c),
                              note="conjugate of N(T) in GL(2)")
    if kind is CurveType.III:
        syms = affine_symmetries(c.p_roots)
        return StabDescriptor("QuasitorusRank1", {"torus": "T_{0,1}"}, generators=tuple(syms),
                              note="T_{0,1} extended by the affine symmetries x -> a*x + c of the roots")
    if kind is CurveType.IV:
        mats = projective_symmetries(_directions(c))
        return StabDescriptor("FiniteExtOfScalars", {"torus": "T_{1,1}"}, generators=tuple(mats),
                              note="scalars extended by the listed matrices (up to scalars)")
    if kind is CurveType.V:
        return _stab_type_v(c)
    return _stab_type_vi(c)


def _stab_single(c: CurveForm) -> StabDescriptor:
    if c.form_kind == "par1":
        if c.eps_y:
            return StabDescriptor("JonqPlus")
        r = c.p_roots[0]
        return StabDescriptor("JonqMinus", {}, AutWord.of(Affine(ONE, ZERO, ZERO, ONE, -r, ZERO)))
    if c.eps_y:
        return StabDescriptor("JonqPlus")
    if c.eps_x:
        return StabDescriptor("JonqMinus")
    k = c.kappas[0]
    if c.a == 1:
        # y = k*x^b goes to C_y under (x, y - k*x^b).
        return StabDescriptor("JonqPlus", {}, AutWord.of(TriMinus(ONE, ONE, UniPoly({c.b: -k}))))
    # y^a = k*x goes to C_x under (x - y^a/k, y).
    return StabDescriptor("JonqMinus", {}, AutWord.of(TriPlus(ONE, ONE, UniPoly({c.a: -ONE / k}))))


def _cross_conjugator(c: CurveForm) -> AutWord:
    if c.form_kind == "par1":
        return AutWord.of(Affine(ONE, ZERO, ZERO, ONE, -c.p_roots[0], ZERO))
    if c.a == c.b == 1 or not c.kappas:
        p, q = _directions(c)
        return _to_cross(p, q)
    k = c.kappas[0]
    if c.a == 1:
        return AutWord.of(TriMinus(ONE, ONE, UniPoly({c.b: -k})))
    return AutWord.of(TriPlus(ONE, ONE, UniPoly({c.a: -ONE / k})))


def _stab_type_v(c: CurveForm) -> StabDescriptor:
    if c.a == 1:
        members = list(c.kappas) + ([ZERO] if c.eps_y else [])
        z0 = isobarycenter(members)
        conj = AutWord.of(TriMinus(ONE, ONE, UniPoly({c.b: -z0})))
    else:
        members = [ONE / k for k in c.kappas] + ([ZERO] if c.eps_x else [])
        z0 = isobarycenter(members)
        conj = AutWord.of(TriPlus(ONE, ONE, UniPoly({c.a: -z0})))
    return StabDescriptor("QuasitorusRank1", {"isobarycenter": z0}, conj,
                          note="conjugate into T by the listed map")


def _stab_type_vi(c: CurveForm) -> StabDescriptor:
    if len(c.kappas) == 1:
        return StabDescriptor("TorusSub", {"a": c.a, "b": c.b},
                              note="T_{a,b} = {(t^a x, t^b y)}")
    ks = set(c.kappas)
    mults = sorted({k / c.kappas[0] for k in c.kappas if {k / c.kappas[0] * q for q in ks} == ks},
                   key=str)
    return StabDescriptor("QuasitorusRank1", {"a": c.a, "b": c.b}, generators=tuple(mults),
                          note="T_{a,b} times the maps (s*x, y) with s^-b among the multipliers")


def isobarycenter(points: Sequence[CycloNum]) -> CycloNum:
    return sum(points, ZERO) * Fraction(1, len(points))


# -- Abhyankar-Moh-Suzuki -------------------------------------------------------


def ams_check(u: UniPoly, v: UniPoly) -> bool:
    du, dv = u.degree() or 0, v.degree() or 0
    if du == 0 and dv == 0:
        raise BadParameters("both components are constant")
    if du == 0 or dv == 0:
        return True
    return du % dv == 0 or dv % du == 0


def _push(steps: list, kind: type, f: UniPoly) -> None:
    if steps and isinstance(steps[-1], kind):
        steps[-1] = kind(ONE, ONE, steps[-1].f + f)
        if steps[-1].f.is_zero():
            steps.pop()
    else:
        steps.append(kind(ONE, ONE, f))


def rectify(u: UniPoly, v: UniPoly) -> AutWord:
    """A word sending the parameterized line (u(t), v(t)) to (a*t, 0) or (0, b*t)."""
    if u.coeff(0) or v.coeff(0):
        raise BadParameters("components must vanish at t = 0")
    steps: list = []
    while not u.is_zero() and not v.is_zero():
        du, dv = u.degree(), v.degree()
        if du >= dv:
            n, rem = divmod(du, dv)
            if rem:
                raise NotEmbedding(f"neither of the degrees {du}, {dv} divides the other")
            c = u.lc() / v.lc() ** n
            u = u - (v**n).scale(c)
            _push(steps, TriPlus, UniPoly({n: -c}))
        else:
            n, rem = divmod(dv, du)
            if rem:
                raise NotEmbedding(f"neither of the degrees {du}, {dv} divides the other")
            c = v.lc() / u.lc() ** n
            v = v - (u**n).scale(c)
            _push(steps, TriMinus, UniPoly({n: -c}))
    rest = u if v.is_zero() else v
    if rest.is_zero() or rest.degree() != 1:
        raise NotEmbedding("the reduced parameterization is not linear in t")
    return AutWord(tuple(reversed(steps)))


class EquivariantCase(str, Enum):
    PLUS = "plus_case"
    MINUS = "minus_case"


def equivariant_type(u: UniPoly, v: UniPoly, s: CyclicSurf) -> EquivariantCase:
    d = s.d
    if in_grading_class(u, d, s.e % d) and in_grading_class(v, d, 1 % d):
        return EquivariantCase.PLUS
    if in_grading_class(u, d, 1 % d) and in_grading_class(v, d, s.e_prime % d):
        return EquivariantCase.MINUS
    raise NotEquivariant("the parameterization is not stable under G_{d,e}")


def factor_in_normalizer(g, s: CyclicSurf) -> bool:
    """TriPlus needs f in A_{d,e}, TriMinus f in A_{d,e'}; affine maps must be diagonal."""
    if isinstance(g, TriPlus):
        return in_grading_class(g.f, s.d, s.e % s.d)
    if isinstance(g, TriMinus):
        return in_grading_class(g.f, s.d, s.e_prime % s.d)
    return False


def equivariant_rectify(u: UniPoly, v: UniPoly, s: CyclicSurf) -> AutWord:
    equivariant_type(u, v, s)
    w = rectify(u, v)
    for g in w.factors:
        if not factor_in_normalizer(g, s):
            raise NotEquivariant(f"factor {g} leaves the normalizer")
    return w
