"""Plane polynomial automorphisms as words of elementary maps.

A word ``[g1, g2, ..., gs]`` denotes the map g1 o g2 o ... o gs, so the
rightmost factor acts first and the components of the word are
``g1(g2(...gs(x, y)))``.

Canonical form
--------------
Every automorphism has exactly one factorization of the shape

    [L] T1 T2 ... Tk [A]

where L = (x + c*y, y) is an optional leading shear, the T's alternate
between TriPlus(1, 1, f) and TriMinus(1, 1, f) with deg f >= 2, f has no
constant term, only T1..T(k-1) may carry a linear term, and A is an
optional trailing affine map.  A purely affine map is a single Affine.

``jvdk_factor`` reaches this form by peeling leading forms off the
components.  ``normal_form`` reaches it without expanding anything, by
reducing the word in the amalgamated product Aff *_B J, where J is the
group of maps (a*x + f(y), b*y + c) and B is its intersection with Aff,
and then choosing fixed coset representatives.  The two routes are
independent, which is what makes the round trip test meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import prod
from typing import Iterable, Optional, Union

from .cyclo import ONE, ZERO, CycloNum, Scalar, as_cyclo
from .errors import NotAutomorphism, NotReduced
from .poly import BiPoly, PowerCache, UniPoly, compose_powers

X = BiPoly.x()
Y = BiPoly.y()


def _nonzero(c: Scalar, name: str) -> CycloNum:
    c = as_cyclo(c)
    if not c:
        raise NotAutomorphism(f"{name} must be nonzero")
    return c


def _as_uni(f) -> UniPoly:
    return f if isinstance(f, UniPoly) else UniPoly.constant(f)


@dataclass(frozen=True)
class Affine:
    """(x, y) -> (p*x + q*y + r, s*x + t*y + w)."""

    p: CycloNum
    q: CycloNum
    s: CycloNum
    t: CycloNum
    r: CycloNum = ZERO
    w: CycloNum = ZERO

    def __post_init__(self):
        for name in ("p", "q", "s", "t", "r", "w"):
            object.__setattr__(self, name, as_cyclo(getattr(self, name)))
        if not self.det():
            raise NotAutomorphism("affine map with zero determinant")

    @classmethod
    def identity(cls) -> "Affine":
        return cls(ONE, ZERO, ZERO, ONE)

    def det(self) -> CycloNum:
        return self.p * self.t - self.q * self.s

    def is_identity(self) -> bool:
        return (self.p.is_one() and self.t.is_one() and not self.q and not self.s
                and not self.r and not self.w)

    def in_borel(self) -> bool:
        """True when the map also lies in the de Jonquieres group (s == 0)."""
        return not self.s

    def apply_to(self, u, v):
        return (u * self.p + v * self.q + self.r, u * self.s + v * self.t + self.w)

    def then(self, other: "Affine") -> "Affine":
        """self o other."""
        o = other
        return Affine(
            self.p * o.p + self.q * o.s, self.p * o.q + self.q * o.t,
            self.s * o.p + self.t * o.s, self.s * o.q + self.t * o.t,
            self.p * o.r + self.q * o.w + self.r, self.s * o.r + self.t * o.w + self.w,
        )

    def inverse(self) -> "Affine":
        d = self.det()
        p, q, s, t = self.t / d, -self.q / d, -self.s / d, self.p / d
        return Affine(p, q, s, t, -(p * self.r + q * self.w), -(s * self.r + t * self.w))

    def degree(self) -> int:
        return 1

    def __str__(self):
        vals = ", ".join(str(c) for c in (self.p, self.q, self.s, self.t, self.r, self.w))
        return f"Affine({vals})"


@dataclass(frozen=True)
class TriPlus:
    """(x, y) -> (alpha*x + f(y), beta*y)."""

    alpha: CycloNum
    beta: CycloNum
    f: UniPoly = field(default_factory=UniPoly)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _nonzero(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _nonzero(self.beta, "beta"))
        object.__setattr__(self, "f", _as_uni(self.f))

    def apply_to(self, u, v):
        return (u * self.alpha + compose_powers(self.f.terms, v), v * self.beta)

    def inverse(self) -> "TriPlus":
        ia, ib = self.alpha.inverse(), self.beta.inverse()
        return TriPlus(ia, ib, -self.f.scale_var(ib).scale(ia))

    def degree(self) -> int:
        d = self.f.degree()
        return max(1, d or 0)

    def __str__(self):
        return f"TriPlus({self.alpha}, {self.beta}, {self.f.to_str('y')})"


@dataclass(frozen=True)
class TriMinus:
    """(x, y) -> (alpha*x, beta*y + f(x))."""

    alpha: CycloNum
    beta: CycloNum
    f: UniPoly = field(default_factory=UniPoly)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _nonzero(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _nonzero(self.beta, "beta"))
        object.__setattr__(self, "f", _as_uni(self.f))

    def apply_to(self, u, v):
        return (u * self.alpha, v * self.beta + compose_powers(self.f.terms, u))

    def inverse(self) -> "TriMinus":
        ia, ib = self.alpha.inverse(), self.beta.inverse()
        return TriMinus(ia, ib, -self.f.scale_var(ia).scale(ib))

    def degree(self) -> int:
        d = self.f.degree()
        return max(1, d or 0)

    def __str__(self):
        return f"TriMinus({self.alpha}, {self.beta}, {self.f.to_str('x')})"


@dataclass(frozen=True)
class Swap:
    """tau: (x, y) -> (y, x)."""

    def apply_to(self, u, v):
        return (v, u)

    def inverse(self) -> "Swap":
        return self

    def degree(self) -> int:
        return 1

    def __str__(self):
        return "Swap"


ElemMap = Union[Affine, TriPlus, TriMinus, Swap]


@dataclass(frozen=True)
class TorusElem:
    """Diagonal map (x, y) -> (alpha*x, beta*y)."""

    alpha: CycloNum
    beta: CycloNum

    def __post_init__(self):
        object.__setattr__(self, "alpha", _nonzero(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _nonzero(self.beta, "beta"))

    def as_map(self) -> TriPlus:
        return TriPlus(self.alpha, self.beta)

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        return TorusElem(self.alpha * other.alpha, self.beta * other.beta)


@dataclass(frozen=True)
class AutWord:
    """A composite g1 o g2 o ... o gs of elementary maps; rightmost acts first."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def of(cls, *maps: ElemMap) -> "AutWord":
        return cls(tuple(maps))

    @cached_property
    def components(self) -> tuple[BiPoly, BiPoly]:
        u, v = X, Y
        for g in reversed(self.factors):
            u, v = g.apply_to(u, v)
        return u, v

    def is_identity_map(self) -> bool:
        return self.components == (X, Y)

    def degree(self) -> int:
        """max(deg u, deg v) of the composed components."""
        u, v = self.components
        return max(u.degree() or 0, v.degree() or 0)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return "; ".join(str(g) for g in self.factors) if self.factors else "identity"


IDENTITY = AutWord()


def apply(w: AutWord, p: BiPoly) -> BiPoly:
    """p o w."""
    u, v = w.components
    return p.subs(u, v)


def apply_point(w: AutWord, u, v):
    """Image of a parameterized point (u, v) under w (any ring elements)."""
    for g in reversed(w.factors):
        u, v = g.apply_to(u, v)
    return u, v


def compose(w1: AutWord, w2: AutWord) -> AutWord:
    """w1 o w2; components are computed from w2's by applying w1's factors."""
    out = AutWord(w1.factors + w2.factors)
    if "components" in w2.__dict__:
        u, v = apply_point(w1, *w2.components)
        out.__dict__["components"] = (u, v)
    return out


def invert(w: AutWord) -> AutWord:
    return AutWord(tuple(g.inverse() for g in reversed(w.factors)))


# -- factorization by peeling leading forms ----------------------------------


def _affine_from(u: BiPoly, v: BiPoly) -> Affine:
    try:
        return Affine(u.coeff(1, 0), u.coeff(0, 1), v.coeff(1, 0), v.coeff(0, 1),
                      u.coeff(0, 0), v.coeff(0, 0))
    except NotAutomorphism:
        raise NotAutomorphism("terminal affine map is not invertible") from None


def _ratio(top_a: BiPoly, top_b: BiPoly) -> Optional[CycloNum]:
    """c with top_a == c * top_b, or None."""
    key = next(iter(top_b.items()))[0]
    ca = top_a.terms.get(key)
    if ca is None:
        return None
    c = ca / top_b.terms[key]
    return c if top_a == top_b.scale(c) else None


def _peel(high: BiPoly, low: BiPoly) -> tuple[dict, BiPoly]:
    """Strip c*low^n terms (n >= 2) while deg high > deg low; returns (f terms, rest)."""
    f: dict[int, CycloNum] = {}
    dl = low.degree()
    if dl is None or dl == 0:
        raise NotAutomorphism("degree reduction stalls on a constant component")
    powers = PowerCache(low)
    while True:
        dh = high.degree()
        if dh is None or dh <= dl:
            return f, high
        n, rem = divmod(dh, dl)
        if rem:
            raise NotAutomorphism(f"degree {dh} is not a multiple of {dl}")
        ln = powers[n]
        c = _ratio(high.top_form(), ln.homogeneous_part(dh))
        if c is None:
            raise NotAutomorphism("leading forms are not proportional")
        f[n] = c
        high = high - ln.scale(c)


def jvdk_factor(u: BiPoly, v: BiPoly) -> AutWord:
    """Factor the map (u, v) into the canonical elementary word."""
    if (u.degree() or 0) <= 1 and (v.degree() or 0) <= 1:
        a = _affine_from(u, v)
        return IDENTITY if a.is_identity() else AutWord.of(a)
    factors: list = []
    if u.degree() == v.degree():
        c = _ratio(u.top_form(), v.top_form())
        if c is None:
            raise NotAutomorphism("leading forms of equal degree are not proportional")
        factors.append(Affine(ONE, c, ZERO, ONE))
        u = u - v.scale(c)
    while True:
        du, dv = u.degree() or 0, v.degree() or 0
        if du <= 1 and dv <= 1:
            break
        plus = du > dv
        high, low = (u, v) if plus else (v, u)
        f, high = _peel(high, low)
        dh, dl = high.degree() or 0, low.degree() or 0
        if dh == dl and dl > 1:
            c = _ratio(high.top_form(), low.top_form())
            if c is None:
                raise NotAutomorphism("leading forms of equal degree are not proportional")
            f[1] = c
            high = high - low.scale(c)
        poly = UniPoly._wrap(f)
        factors.append(TriPlus(ONE, ONE, poly) if plus else TriMinus(ONE, ONE, poly))
        u, v = (high, low) if plus else (low, high)
        if (u.degree() or 0) > 1 and u.degree() == v.degree():  # pragma: no cover
            raise NotAutomorphism("degree reduction stalls")
    a = _affine_from(u, v)
    if not a.is_identity():
        factors.append(a)
    return AutWord(tuple(factors))


# -- the amalgam Aff *_B J ----------------------------------------------------


@dataclass(frozen=True)
class _Jonq:
    """(alpha*x + f(y), beta*y + gamma), the general de Jonquieres map."""

    alpha: CycloNum
    f: UniPoly
    beta: CycloNum
    gamma: CycloNum

    def then(self, o: "_Jonq") -> "_Jonq":
        """self o o."""
        lin = UniPoly({1: o.beta, 0: o.gamma})
        f = o.f.scale(self.alpha) + compose_powers(self.f.terms, lin)
        return _Jonq(self.alpha * o.alpha, f, self.beta * o.beta, self.beta * o.gamma + self.gamma)

    def in_borel(self) -> bool:
        return (self.f.degree() or 0) <= 1

    def to_affine(self) -> Affine:
        return Affine(self.alpha, self.f.coeff(1), ZERO, self.beta, self.f.coeff(0), self.gamma)

    @classmethod
    def from_affine(cls, a: Affine) -> "_Jonq":
        return cls(a.p, UniPoly({1: a.q, 0: a.r}), a.t, a.w)


_TAU = Affine(ZERO, ONE, ONE, ZERO)


def _syllables(factors: Iterable[ElemMap]) -> list:
    out = []
    for g in factors:
        if isinstance(g, TriPlus) and (g.f.degree() or 0) >= 2:
            out.append(("J", _Jonq(g.alpha, g.f, g.beta, ZERO)))
        elif isinstance(g, TriMinus) and (g.f.degree() or 0) >= 2:
            out += [("A", _TAU), ("J", _Jonq(g.beta, g.f, g.alpha, ZERO)), ("A", _TAU)]
        elif isinstance(g, TriPlus):
            out.append(("A", Affine(g.alpha, g.f.coeff(1), ZERO, g.beta, g.f.coeff(0), ZERO)))
        elif isinstance(g, TriMinus):
            out.append(("A", Affine(g.alpha, ZERO, g.f.coeff(1), g.beta, ZERO, g.f.coeff(0))))
        elif isinstance(g, Swap):
            out.append(("A", _TAU))
        else:
            out.append(("A", g))
    return out


def _as_kind(kind: str, item):
    k, obj = item
    if k == kind:
        return obj
    return obj.to_affine() if kind == "A" else _Jonq.from_affine(obj)


def _reduce(syl: list) -> list:
    """Merge neighbours of equal type and absorb elements of B until alternating."""
    stack: list = []
    for item in syl:
        stack.append(item)
        while len(stack) >= 2:
            (k1, a), (k2, b) = stack[-2], stack[-1]
            if k1 == k2:
                kind = k1
            elif b.in_borel():
                kind = k1
            elif a.in_borel():
                kind = k2
            else:
                break
            stack[-2:] = [(kind, _as_kind(kind, stack[-2]).then(_as_kind(kind, stack[-1])))]
    return stack


def normal_form(w: AutWord) -> AutWord:
    """The canonical factorization, computed by reduction in the amalgam."""
    syl = _reduce(_syllables(w.factors))
    if not any(k == "J" and not obj.in_borel() for k, obj in syl):
        total = reduce(Affine.then, (_as_kind("A", it) for it in syl), Affine.identity())
        return IDENTITY if total.is_identity() else AutWord.of(total)

    # Left coset representatives: U(h) = (x + h(y), y) for J, R_c = (c*x + y, x) for Aff.
    reps = []
    carry = Affine.identity()
    for kind, h in syl:
        if kind == "J":
            h = _Jonq.from_affine(carry).then(h)
            binv = ONE / h.beta
            shifted = compose_powers(h.f.terms, UniPoly({1: binv, 0: -h.gamma * binv}))
            f1, f0 = shifted.coeff(1), shifted.coeff(0)
            reps.append(("U", shifted.truncate_below(2)))
            carry = Affine(h.alpha, f1 * h.beta, ZERO, h.beta, f1 * h.gamma + f0, h.gamma)
        else:
            h = carry.then(h)
            c = h.p / h.s
            reps.append(("R", c))
            carry = Affine(ZERO, ONE, ONE, -c).then(h)

    # Write R_c = tau o (x, y + c*x) and move every tau to the right end.
    out: list = []
    parity = 0
    pending: Optional[CycloNum] = None
    for i, (kind, val) in enumerate(reps):
        if kind == "R":
            parity ^= 1
            if i == 0:
                if val:
                    out.append(Affine(ONE, val, ZERO, ONE))
            else:
                pending = val
            continue
        if pending is not None:
            prev = out[-1]
            out[-1] = type(prev)(ONE, ONE, prev.f + UniPoly({1: pending}))
            pending = None
        out.append(TriPlus(ONE, ONE, val) if parity == 0 else TriMinus(ONE, ONE, val))
    tail = _TAU if parity else Affine.identity()
    if pending is not None:
        shear = Affine(ONE, pending, ZERO, ONE) if parity else Affine(ONE, ZERO, pending, ONE)
        tail = shear.then(tail)
    tail = tail.then(carry)
    if not tail.is_identity():
        out.append(tail)
    return AutWord(tuple(out))


def word_degree(w: AutWord) -> int:
    """Product of the degrees of the non-affine factors of a reduced word."""
    syl = _syllables(w.factors)
    degs = [obj.f.degree() for k, obj in syl if k == "J"]
    reduced = _reduce(syl)
    kept = [obj.f.degree() for k, obj in reduced if k == "J" and not obj.in_borel()]
    if kept != degs:
        raise NotReduced("adjacent triangular factors of the same side merge")
    return prod(degs)


def side_of(g: ElemMap) -> Optional[str]:
    """'plus' or 'minus' for a triangular factor of degree >= 2, None otherwise."""
    if isinstance(g, TriPlus) and (g.f.degree() or 0) >= 2:
        return "plus"
    if isinstance(g, TriMinus) and (g.f.degree() or 0) >= 2:
        return "minus"
    return None


__all__ = [
    "Affine", "TriPlus", "TriMinus", "Swap", "ElemMap", "TorusElem", "AutWord", "IDENTITY",
    "apply", "apply_point", "compose", "invert", "jvdk_factor", "normal_form", "word_degree",
    "side_of",
]
