"""Text grammar for scalars and polynomials.

Terms are joined by ``+``/``-``; a term is a product of factors joined by
``*``.  A factor is an integer, a root of unity ``z{n}`` (usually written
``z{n}^{k}``), one of the variables ``x``, ``y``, ``t``, or a
parenthesized expression, each optionally raised to ``^k``.  A ``/``
between factors divides by a constant, so ``1/2*x^3`` reads as expected.

Printing emits terms in graded lexicographic order with coefficients in
the same grammar, so output always parses back to the same value.
"""

from __future__ import annotations

import re

from .cyclo import ONE, CycloNum, as_cyclo, cyclo_make, format_scalar
from .errors import ParseError
from .poly import BiPoly, UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|z(\d+)|([xyt])|(\S))")
_VARS = "xyt"

# A parsed expression is a dict {(ex, ey, et): CycloNum}.


def _tokens(text: str) -> list[tuple[str, object]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, zeta, var, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif zeta is not None:
            out.append(("zeta", int(zeta)))
        elif var is not None:
            out.append(("var", var))
        elif sym in "+-*/^()":
            out.append((sym, sym))
        else:
            raise ParseError(f"unexpected character {sym!r} in {text!r}")
    out.append(("end", None))
    return out


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, CycloNum(0)) + (c if sign > 0 else -c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(p + q for p, q in zip(ka, kb))
            out[k] = out.get(k, CycloNum(0)) + ca * cb
    return {k: c for k, c in out.items() if c}


def _const(c) -> dict:
    c = as_cyclo(c)
    return {(0, 0, 0): c} if c else {}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> dict:
        if self.peek() == "end":
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self) -> dict:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            if op == "*":
                acc = _pmul(acc, rhs)
            else:
                if not rhs or set(rhs) != {(0, 0, 0)}:
                    raise ParseError("can only divide by a nonzero constant")
                inv = rhs[(0, 0, 0)].inverse()
                acc = {k: c * inv for k, c in acc.items()}
        return acc

    def factor(self) -> dict:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            k = self.take("int")[1]
            if neg:
                if set(base) != {(0, 0, 0)}:
                    raise ParseError("negative exponent on a non-constant")
                return _const(base[(0, 0, 0)] ** (-k))
            out = _const(1)
            for _ in range(k):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> dict:
        kind, val = self.take()
        if kind == "int":
            return _const(val)
        if kind == "zeta":
            if val < 1:
                raise ParseError("root of unity order must be positive")
            return _const(cyclo_make(val, 1))
        if kind == "var":
            exps = [0, 0, 0]
            exps[_VARS.index(val)] = 1
            return {tuple(exps): ONE}
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def _parse(text: str) -> dict:
    if not isinstance(text, str):
        raise ParseError("expected text")
    return _Parser(text).parse()


def _used(terms: dict) -> set[str]:
    return {_VARS[i] for k in terms for i in range(3) if k[i]}


def parse_scalar(text: str) -> CycloNum:
    terms = _parse(text)
    if _used(terms):
        raise ParseError(f"expected a constant, got {text!r}")
    return terms.get((0, 0, 0), CycloNum(0))


def parse_bipoly(text: str) -> BiPoly:
    """Polynomial in x and y."""
    terms = _parse(text)
    if "t" in _used(terms):
        raise ParseError(f"variable t not allowed in {text!r}")
    return BiPoly._wrap({(k[0], k[1]): c for k, c in terms.items()})


def parse_unipoly(text: str, allowed: str = "xyt") -> UniPoly:
    """Polynomial in a single variable drawn from ``allowed``."""
    terms = _parse(text)
    used = _used(terms)
    if len(used) > 1 or not used <= set(allowed):
        raise ParseError(f"expected a polynomial in one of {', '.join(allowed)}: {text!r}")
    idx = _VARS.index(used.pop()) if used else 0
    return UniPoly._wrap({k[idx]: c for k, c in terms.items()})


def format_coefficient_term(c: CycloNum, mono: str) -> tuple[bool, str]:
    """(negative, body) for one term; body omits the sign."""
    s = format_scalar(c)
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if not mono:
        return neg, s
    if s == "1":
        return neg, mono
    return neg, f"{s}*{mono}"


def format_terms(terms: list) -> str:
    """Join [(exponent map, coefficient)] already in print order."""
    pieces = []
    for exps, c in terms:
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in exps.items() if k)
        pieces.append(format_coefficient_term(c, mono))
    if not pieces:
        return "0"
    neg, body = pieces[0]
    out = f"-{body}" if neg else body
    for neg, body in pieces[1:]:
        out += f" - {body}" if neg else f" + {body}"
    return out


def _split_top(text: str, sep: str) -> list[str]:
    """Split at separators that are not nested inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


_CALL = re.compile(r"^\s*([A-Za-z]+)\s*(?:\((.*)\))?\s*$", re.S)


def parse_elem(text: str):
    """One elementary map: TriPlus(a,b,f), TriMinus(a,b,f), Affine(p,q,s,t[,r,w]) or Swap."""
    from .planeaut import Affine, Swap, TriMinus, TriPlus

    m = _CALL.match(text)
    if m is None:
        raise ParseError(f"cannot read elementary map {text!r}")
    name, inner = m.group(1), m.group(2)
    args = _split_top(inner, ",") if inner is not None and inner.strip() else []
    if name == "Swap" and not args:
        return Swap()
    if name in ("TriPlus", "TriMinus") and len(args) in (2, 3):
        f = parse_unipoly(args[2], "yt" if name == "TriPlus" else "xt") if len(args) == 3 else UniPoly()
        cls = TriPlus if name == "TriPlus" else TriMinus
        return cls(parse_scalar(args[0]), parse_scalar(args[1]), f)
    if name == "Affine" and len(args) in (4, 6):
        return Affine(*(parse_scalar(a) for a in args))
    raise ParseError(f"cannot read elementary map {text!r}")


def parse_word(text: str):
    """Factors separated by ';', leftmost applied last; 'identity' is the empty word."""
    from .planeaut import AutWord

    body = text.strip()
    if body in ("", "identity"):
        return AutWord()
    return AutWord(tuple(parse_elem(p) for p in _split_top(body, ";") if p))
