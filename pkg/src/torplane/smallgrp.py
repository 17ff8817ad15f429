"""Finite subgroups of GL(2) over cyclotomic fields and their invariants.

Matrices act on column vectors, and a polynomial transforms by
f -> f o g, i.e. f(g * (x, y)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Optional, Sequence

from .cyclo import ONE, ZERO, CycloNum, cyclo_make, max_order, root_order
from .errors import NotFiniteWithinBound, NotHomogeneous, OrderTooLarge
from .linalg import Mat2, nullspace, rref
from .poly import BiPoly, UniPoly

DEFAULT_LINE_ORDER = 8
DEFAULT_ROOT_HEIGHT = 3


@dataclass(frozen=True)
class FinGroup:
    elements: tuple[Mat2, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m: Mat2) -> bool:
        return m in self._members

    @property
    def _members(self) -> frozenset:
        cache = self.__dict__.get("_set")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_set", cache)
        return cache


def q8_generators() -> list[Mat2]:
    i = cyclo_make(4, 1)
    return [Mat2(ZERO, ONE, -ONE, ZERO), Mat2(ZERO, i, i, ZERO)]


def cyclic_generator(d: int, e: int) -> Mat2:
    return Mat2.diag(cyclo_make(d, e), cyclo_make(d, 1))


def group_closure(gens: Sequence[Mat2], bound: Optional[int] = None) -> FinGroup:
    """All products of the generators, if there are at most ``bound`` of them."""
    cap = max_order()
    if bound is not None and bound < 1:
        raise ValueError("bound must be positive")
    limit = cap if bound is None else min(bound, cap)
    ident = Mat2.identity()
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = g * m
                if p not in seen:
                    seen.add(p)
                    elements.append(p)
                    nxt.append(p)
                    if len(elements) > limit:
                        if bound is None or limit < bound:
                            raise OrderTooLarge(f"group order exceeds TORPLANE_MAX_ORDER={cap}")
                        raise NotFiniteWithinBound(f"more than {bound} elements")
        frontier = nxt
    return FinGroup(tuple(elements))


def matrix_order(m: Mat2, bound: Optional[int] = None) -> Optional[int]:
    bound = max_order() if bound is None else bound
    power = m
    for k in range(1, bound + 1):
        if power.is_identity():
            return k
        power = power * m
    return None


def is_pseudoreflection(m: Mat2) -> bool:
    """Non-identity, finite order, and fixing a line pointwise."""
    if m.is_identity():
        return False
    if (m - Mat2.identity()).det():
        return False
    return matrix_order(m) is not None


def is_small(g: FinGroup) -> bool:
    return not any(is_pseudoreflection(m) for m in g.elements)


def is_abelian(g: FinGroup) -> bool:
    els = g.elements
    return all(a * b == b * a for i, a in enumerate(els) for b in els[i + 1:])


def reynolds(f: BiPoly, g: FinGroup) -> BiPoly:
    total = BiPoly()
    for m in g.elements:
        total = total + m.act(f)
    return total.scale(Fraction(1, g.order))


def _monomials(k: int) -> list[tuple[int, int]]:
    return [(k - j, j) for j in range(k + 1)]


def invariant_basis_up_to(g: FinGroup, degmax: int) -> dict[int, list[BiPoly]]:
    """Reduced echelon basis of the invariants in each degree 1..degmax."""
    if degmax < 1:
        raise ValueError("degmax must be positive")
    out = {}
    for k in range(1, degmax + 1):
        monos = _monomials(k)
        rows = []
        for i, j in monos:
            avg = reynolds(BiPoly.monomial(i, j), g)
            rows.append([avg.coeff(*mono) for mono in monos])
        red, _ = rref(rows)
        out[k] = [BiPoly({mono: c for mono, c in zip(monos, row)}) for row in red]
    return out


@dataclass(frozen=True)
class Relation:
    """sum coeff * prod f_i^e_i == 0 over the listed exponent vectors."""

    exponents: tuple[tuple[int, ...], ...]
    coefficients: tuple[CycloNum, ...]
    dimension: int

    def expand(self, invariants: Sequence[BiPoly]) -> BiPoly:
        total = BiPoly()
        for exps, c in zip(self.exponents, self.coefficients):
            term = BiPoly.constant(c)
            for f, e in zip(invariants, exps):
                term = term * f**e
            total = total + term
        return total

    def __str__(self):
        from .text import format_terms

        names = [f"f{i + 1}" for i in range(len(self.exponents[0]))] if self.exponents else []
        return format_terms([(dict(zip(names, e)), c) for e, c in zip(self.exponents, self.coefficients)])


def _homogeneous_degree(f: BiPoly) -> int:
    if f.is_zero() or not f.is_homogeneous():
        raise NotHomogeneous(f"{f} is not a nonzero homogeneous polynomial")
    return f.degree()


def _weighted_exponents(degs: Sequence[int], total: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, remaining, acc):
        if i == len(degs):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for e in range(remaining // degs[i] + 1):
            rec(i + 1, remaining - e * degs[i], acc + [e])

    rec(0, total, [])
    return out


def find_relation(invariants: Sequence[BiPoly], weighted_degree: int) -> Optional[Relation]:
    """A linear dependency among the products of the invariants of the given degree."""
    degs = [_homogeneous_degree(f) for f in invariants]
    if any(d == 0 for d in degs):
        raise NotHomogeneous("constant invariants are not allowed")
    exps = _weighted_exponents(degs, weighted_degree)
    # The last invariant is the most significant, so f3^2 leads.
    exps.sort(key=lambda e: tuple(reversed(e)), reverse=True)
    if len(exps) < 2:
        return None
    products = []
    for e in exps:
        p = BiPoly.constant(1)
        for f, k in zip(invariants, e):
            p = p * f**k
        products.append(p)
    monos = sorted({m for p in products for m in p.terms})
    rows = [[p.coeff(*m) for p in products] for m in monos]
    basis = nullspace(rows, len(exps))
    if not basis:
        return None
    v = basis[-1]
    lead = next(c for c in v if c)
    v = [c / lead for c in v]
    support = [(e, c) for e, c in zip(exps, v) if c]
    return Relation(tuple(e for e, _ in support), tuple(c for _, c in support), len(basis))


def in_normalizer(h: Mat2, g: FinGroup) -> bool:
    hinv = h.inverse()
    return all(h * m * hinv in g for m in g.elements)


@dataclass(frozen=True)
class LinesResult:
    directions: tuple[tuple[CycloNum, CycloNum], ...]
    degenerate: bool = False
    complete: bool = True
    working_order: int = DEFAULT_LINE_ORDER


def _deflate(q: UniPoly, r: CycloNum) -> Optional[UniPoly]:
    """q / (s - r) if r is a root, else None."""
    deg = q.degree()
    coeffs = [q.coeff(k) for k in range(deg, -1, -1)]
    out = []
    acc = ZERO
    for c in coeffs:
        acc = acc * r + c
        out.append(acc)
    if out[-1]:
        return None
    quot = out[:-1]
    return UniPoly({deg - 1 - i: c for i, c in enumerate(quot)})


def _candidate_roots(order: int, height: int):
    mags = sorted({Fraction(p, q) for p in range(1, height + 1) for q in range(1, height + 1)})
    yield ZERO
    for r in mags:
        for k in range(order):
            yield cyclo_make(order, k) * r


def _scalar_orders(values) -> list[int]:
    out = []
    for c in values:
        ro = root_order(c)
        out.append(ro if ro is not None else c.n)
    return out


def smooth_lines_on_quotient(g: Optional[FinGroup], f_sing: BiPoly,
                             order: Optional[int] = None,
                             height: int = DEFAULT_ROOT_HEIGHT) -> LinesResult:
    """Directions v with f_sing(v*t) == 0, found by root search in Q(zeta_L)."""
    if f_sing.is_zero():
        return LinesResult((), degenerate=True, complete=False, working_order=order or DEFAULT_LINE_ORDER)
    deg = _homogeneous_degree(f_sing)
    if order is None:
        orders = [DEFAULT_LINE_ORDER] + _scalar_orders(f_sing.terms.values())
        if g is not None:
            orders += _scalar_orders(e for m in g.elements for e in m.entries() if e)
        order = lcm(*orders)
        if order > max_order():
            raise OrderTooLarge(f"working order {order} exceeds TORPLANE_MAX_ORDER")
    q = UniPoly({j: c for (i, j), c in f_sing.terms.items()})
    dirs: list[tuple[CycloNum, CycloNum]] = []
    found = 0
    if (q.degree() or 0) < deg:
        dirs.append((ZERO, ONE))
        found += deg - (q.degree() or 0)
    seen = set()
    for r in _candidate_roots(order, height):
        if q.degree() is None or q.degree() == 0:
            break
        if r in seen:
            continue
        seen.add(r)
        mult = 0
        while True:
            nq = _deflate(q, r)
            if nq is None:
                break
            q, mult = nq, mult + 1
        if mult:
            dirs.append((ONE, r))
            found += mult
    dirs.sort(key=_direction_key)
    return LinesResult(tuple(dirs), complete=found == deg, working_order=order)


def _direction_key(v):
    x, y = v
    return (0 if x else 1, str(y))
