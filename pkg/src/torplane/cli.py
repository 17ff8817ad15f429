"""Command line front end.

Every command prints one record.  The default structured format is a
``schema: 1`` header followed by ``key: value`` lines; ``--format plain``
prints the same fields without the header, in ``key = value`` form.

Exit status is 0 on success, 2 for unreadable input and 3 for domain
errors; error records carry the error class name as ``error``.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from typing import Callable, Optional, Sequence

from . import curves, jonq, planeaut, smallgrp, toric
from .cyclo import CycloNum, format_scalar
from .errors import BadParameters, ParseError, TorplaneError
from .linalg import Mat2
from .planeaut import Affine, AutWord, Swap, TriMinus, TriPlus
from .poly import BiPoly, UniPoly
from .text import _split_top, parse_bipoly, parse_elem, parse_scalar, parse_unipoly, parse_word

SCHEMA = 1
EXIT_OK, EXIT_PARSE, EXIT_DOMAIN = 0, 2, 3

Record = list  # of (key, value) pairs


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so errors become records."""

    def error(self, message):
        raise ParseError(message)


# -- rendering -------------------------------------------------------------


def _text(v, plain: bool) -> str:
    if isinstance(v, bool):
        return ("yes" if v else "no") if plain else ("true" if v else "false")
    if v is None:
        return "none"
    if isinstance(v, CycloNum):
        return format_scalar(v)
    if isinstance(v, UniPoly):
        return v.to_str("t")
    if isinstance(v, tuple):
        return "(" + ", ".join(_text(x, plain) for x in v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(_text(x, plain) for x in v) + "]"
    return str(v)


def render(command: str, record: Record, fmt: str) -> str:
    plain = fmt == "plain"
    lines = [] if plain else [f"schema: {SCHEMA}", f"command: {command}"]
    for key, value in record:
        if plain and isinstance(value, list):
            # only the outer brackets go; nested lists keep theirs
            lines.append(f"{key.replace('_', ' ')} = {_text(value, True)[1:-1] or '-'}")
        elif plain:
            lines.append(f"{key.replace('_', ' ')} = {_text(value, True)}")
        else:
            lines.append(f"{key}: {_text(value, False)}")
    return "\n".join(lines) + "\n"


def _word_fields(w: AutWord, prefix: str = "factor") -> Record:
    rec: Record = [("word", str(w)), ("factors", len(w))]
    for i, g in enumerate(w.factors, start=1):
        key = f"{prefix}.{i}"
        rec.append((f"{key}.kind", type(g).__name__))
        if isinstance(g, TriPlus):
            rec += [(f"{key}.alpha", g.alpha), (f"{key}.beta", g.beta), (f"{key}.f", g.f.to_str("y"))]
        elif isinstance(g, TriMinus):
            rec += [(f"{key}.alpha", g.alpha), (f"{key}.beta", g.beta), (f"{key}.f", g.f.to_str("x"))]
        elif isinstance(g, Affine):
            rec += [(f"{key}.matrix", [g.p, g.q, g.s, g.t]), (f"{key}.vector", [g.r, g.w])]
    return rec


# -- argument helpers --------------------------------------------------------


def _scalars(text: Optional[str]) -> list[CycloNum]:
    if text is None or not text.strip():
        return []
    return [parse_scalar(p) for p in _split_top(text, ",")]


def _matrix(text: str) -> Mat2:
    vals = _scalars(text)
    if len(vals) != 4:
        raise ParseError(f"a matrix needs 4 entries, got {text!r}")
    return Mat2(*vals)


def _tri_plus(text: str) -> TriPlus:
    g = parse_elem(text)
    if not isinstance(g, TriPlus):
        raise BadParameters("expected a TriPlus(alpha, beta, f) map")
    return g


def _pair(text: str) -> tuple[int, int]:
    try:
        d, e = (int(p) for p in text.split(","))
    except ValueError:
        raise ParseError(f"expected 'd,e', got {text!r}") from None
    return d, e


def _uni_t(text: str) -> UniPoly:
    return parse_unipoly(text, "t")


# -- aut ---------------------------------------------------------------------


def cmd_aut_factor(a) -> Record:
    w = planeaut.jvdk_factor(parse_bipoly(a.u), parse_bipoly(a.v))
    return _word_fields(w) + [("degree", w.degree())]


def cmd_aut_compose(a) -> Record:
    w = planeaut.compose(parse_word(a.w1), parse_word(a.w2))
    u, v = w.components
    return [("word", str(w)), ("u", u), ("v", v), ("degree", w.degree())]


def cmd_aut_normal_form(a) -> Record:
    return _word_fields(planeaut.normal_form(parse_word(a.word)))


def cmd_aut_degree(a) -> Record:
    w = parse_word(a.word)
    deg = planeaut.word_degree(w)
    return [("degree", deg), ("composed_degree", w.degree())]


def cmd_aut_apply(a) -> Record:
    return [("result", planeaut.apply(parse_word(a.word), parse_bipoly(a.p)))]


def cmd_aut_invert(a) -> Record:
    return _word_fields(planeaut.invert(parse_word(a.word)))


# -- jonq --------------------------------------------------------------------


def cmd_jonq_analyze(a) -> Record:
    phi = _tri_plus(a.phi)
    ss = jonq.is_semisimple(phi)
    rec: Record = [("alpha", phi.alpha), ("beta", phi.beta), ("f", phi.f.to_str("y")),
                   ("rho", (phi.alpha, phi.beta)), ("semisimple", ss),
                   ("order", jonq.element_order(phi)),
                   ("involution_type", jonq.involution_type(phi).value)]
    if ss:
        rec.append(("conjugator", jonq.conjugator_to_torus(phi).g.to_str("y")))
    return rec


def cmd_jonq_conjugate(a) -> Record:
    phis = [_tri_plus(p) for p in a.phi]
    mu = jonq.conjugator_to_torus(phis[0]) if len(phis) == 1 else jonq.simultaneous_conjugator(phis)
    ok = all(mu.conjugate(p).components == planeaut.AutWord.of(jonq.rho(p).as_map()).components
             for p in phis)
    return [("mu", str(mu.as_map())), ("g", mu.g.to_str("y")), ("verified", ok)]


def cmd_jonq_commute(a) -> Record:
    if len(a.phi) != 2:
        raise BadParameters("commute takes exactly two --phi maps")
    g1, g2 = (_tri_plus(p) for p in a.phi)
    direct = AutWord.of(g1, g2).components == AutWord.of(g2, g1).components
    return [("commute", jonq.commute(g1, g2)), ("composition_check", direct)]


def cmd_jonq_normalizer_member(a) -> Record:
    phi = _tri_plus(a.phi)
    member = jonq.in_normalizer_plus(phi, a.d, a.e)
    g = jonq.generator_map(a.d, a.e)
    direct = AutWord.of(phi, g).components == AutWord.of(g, phi).components
    return [("member", member), ("commutes_with_generator", direct)]


# -- toric -------------------------------------------------------------------


def _surface(a) -> toric.CyclicSurf:
    return toric.make_surface(a.d, a.e)


def cmd_toric_info(a) -> Record:
    s = _surface(a)
    return [("d", s.d), ("e", s.e), ("e_prime", s.e_prime), ("c", list(s.c)),
            ("generators", [str(m) for m in toric.invariant_generators(s)]),
            ("axes_equivalent", toric.axes_equivalent(s))]


def cmd_toric_iso(a) -> Record:
    s1, s2 = toric.make_surface(a.d1, a.e1), toric.make_surface(a.d2, a.e2)
    return [("isomorphic", toric.surfaces_isomorphic(s1, s2))]


def cmd_toric_generators(a) -> Record:
    return [("generators", [str(m) for m in toric.invariant_generators(_surface(a))])]


def cmd_toric_embed(a) -> Record:
    s = _surface(a)
    m = toric.curve_image_exponents(s, a.a, a.b)
    return [("surface", str(s)), ("curve", f"C_{{{a.a},{a.b}}}"),
            ("exponents", list(m.exponents)), ("smooth", toric.is_image_smooth(m))]


def cmd_toric_classes(a) -> Record:
    res = toric.enumerate_embedding_classes(_surface(a))
    rec: Record = [("surface", str(res.surface)), ("candidates", len(res.candidates)),
                   ("upper_bound", res.upper_bound)]
    for i, c in enumerate(res.candidates, start=1):
        rec.append((f"candidate.{i}", c.label))
        if c.exponents is not None:
            rec.append((f"candidate.{i}.exponents", list(c.exponents)))
    return rec


# -- curve -------------------------------------------------------------------


def _form(a) -> curves.CurveForm:
    return curves.CurveForm(a.form, a.eps_x, a.eps_y, a.a, a.b,
                            tuple(_scalars(a.kappas)), tuple(_scalars(a.roots)))


def cmd_curve_classify(a) -> Record:
    c = _form(a)
    return [("equation", c.equation()), ("type", curves.classify_form(c).value)]


def cmd_curve_stab(a) -> Record:
    st = curves.stabilizer(_form(a))
    rec: Record = [("tag", st.tag)]
    rec += [(f"param.{k}", v) for k, v in st.params.items()]
    rec.append(("conjugator", str(st.conjugator)))
    gens = []
    for g in st.generators:
        gens.append(f"z -> {format_scalar(g[0])}*z + {format_scalar(g[1])}" if isinstance(g, tuple) else str(g))
    rec.append(("generators", gens))
    if st.note:
        rec.append(("note", st.note))
    return rec


def cmd_curve_ams(a) -> Record:
    u, v = _uni_t(a.u), _uni_t(a.v)
    return [("deg_u", u.degree()), ("deg_v", v.degree()), ("ams", curves.ams_check(u, v))]


def cmd_curve_rectify(a) -> Record:
    u, v = _uni_t(a.u), _uni_t(a.v)
    rec: Record = []
    if a.equivariant:
        s = toric.make_surface(*_pair(a.equivariant))
        rec.append(("case", curves.equivariant_type(u, v, s).value))
        w = curves.equivariant_rectify(u, v, s)
    else:
        w = curves.rectify(u, v)
    iu, iv = planeaut.apply_point(w, u, v)
    return rec + _word_fields(w) + [("image_u", iu), ("image_v", iv)]


# -- group -------------------------------------------------------------------


def _group(a, required: bool = True) -> Optional[smallgrp.FinGroup]:
    gens = []
    if a.preset == "q8":
        gens = smallgrp.q8_generators()
    elif a.preset == "cyclic":
        if a.d is None or a.e is None:
            raise BadParameters("the cyclic preset needs --d and --e")
        jonq.check_surface_params(a.d, a.e)
        gens = [smallgrp.cyclic_generator(a.d, a.e)]
    gens += [_matrix(g) for g in a.gen or []]
    if not gens:
        if required:
            raise BadParameters("give --preset or at least one --gen matrix")
        return None
    return smallgrp.group_closure(gens, a.bound)


def cmd_group_closure(a) -> Record:
    g = _group(a)
    return [("order", g.order), ("abelian", smallgrp.is_abelian(g)), ("small", smallgrp.is_small(g)),
            ("elements", [str(m) for m in g.elements])]


def cmd_group_small(a) -> Record:
    g = _group(a)
    refl = [str(m) for m in g.elements if smallgrp.is_pseudoreflection(m)]
    return [("small", not refl), ("pseudoreflections", refl)]


def cmd_group_invariants(a) -> Record:
    basis = smallgrp.invariant_basis_up_to(_group(a), a.degmax)
    return [(f"degree.{k}", [str(p) for p in v]) for k, v in basis.items()]


def cmd_group_relation(a) -> Record:
    invs = [parse_bipoly(f) for f in a.invariant]
    rel = smallgrp.find_relation(invs, a.degree)
    if rel is None:
        return [("relation", None)]
    return [("relation", str(rel)), ("dimension", rel.dimension),
            ("verified", rel.expand(invs).is_zero())]


def cmd_group_normalizer(a) -> Record:
    return [("member", smallgrp.in_normalizer(_matrix(a.matrix), _group(a)))]


def cmd_group_lines(a) -> Record:
    res = smallgrp.smooth_lines_on_quotient(_group(a, required=False), parse_bipoly(a.f), a.order)
    return [("directions", list(res.directions)), ("count", len(res.directions)),
            ("complete", res.complete), ("degenerate", res.degenerate),
            ("working_order", res.working_order)]


# -- parser ------------------------------------------------------------------


def _add(sub, name: str, func: Callable, help: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help, allow_abbrev=False)
    p.set_defaults(func=func)
    return p


def _form_args(p) -> None:
    p.add_argument("--form", choices=["par1", "par2"], default="par2")
    p.add_argument("--eps-x", type=int, default=0)
    p.add_argument("--eps-y", type=int, default=0)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--kappas", default="", help="comma separated scalars")
    p.add_argument("--roots", default="", help="roots of p for par1 forms")


def _group_args(p) -> None:
    p.add_argument("--preset", choices=["q8", "cyclic"])
    p.add_argument("--d", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--gen", action="append", help="matrix entries a,b,c,d (row major)")
    p.add_argument("--bound", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torplane", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--format", choices=["structured", "plain"], default="structured")
    parser.add_argument("--input", metavar="FILE", help="read options from a key: value record")
    parser.add_argument("--batch", metavar="FILE", help="run one command line per line")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    sub = groups.add_parser("aut", help="plane automorphisms").add_subparsers(dest="cmd", required=True)
    p = _add(sub, "factor", cmd_aut_factor, "Jung-van der Kulk factorization of (u, v)")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p = _add(sub, "compose", cmd_aut_compose, "w1 o w2")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p = _add(sub, "normal-form", cmd_aut_normal_form, "canonical factorization of a word")
    p.add_argument("--word", required=True)
    p = _add(sub, "degree", cmd_aut_degree, "degree of a reduced word")
    p.add_argument("--word", required=True)
    p = _add(sub, "apply", cmd_aut_apply, "p o w")
    p.add_argument("--word", required=True)
    p.add_argument("--p", required=True)
    p = _add(sub, "invert", cmd_aut_invert, "inverse word")
    p.add_argument("--word", required=True)

    sub = groups.add_parser("jonq", help="de Jonquieres maps").add_subparsers(dest="cmd", required=True)
    p = _add(sub, "analyze", cmd_jonq_analyze, "semisimplicity, order and involution type")
    p.add_argument("--phi", required=True)
    p = _add(sub, "conjugate", cmd_jonq_conjugate, "conjugate one or several maps into the torus")
    p.add_argument("--phi", action="append", required=True)
    p = _add(sub, "commute", cmd_jonq_commute, "commutation test")
    p.add_argument("--phi", action="append", required=True)
    p = _add(sub, "normalizer-member", cmd_jonq_normalizer_member, "membership in N+_{d,e}")
    p.add_argument("--phi", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)

    sub = groups.add_parser("toric", help="surfaces X_{d,e}").add_subparsers(dest="cmd", required=True)
    for name, func, text in [("info", cmd_toric_info, "derived parameters"),
                             ("generators", cmd_toric_generators, "invariant monomials"),
                             ("classes", cmd_toric_classes, "candidate embedded line classes")]:
        p = _add(sub, name, func, text)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--e", type=int, required=True)
    p = _add(sub, "iso", cmd_toric_iso, "isomorphism of two surfaces")
    for k in ("--d1", "--e1", "--d2", "--e2"):
        p.add_argument(k, type=int, required=True)
    p = _add(sub, "embed", cmd_toric_embed, "image of C_{a,b} and its smoothness")
    for k in ("--d", "--e", "--a", "--b"):
        p.add_argument(k, type=int, required=True)

    sub = groups.add_parser("curve", help="acyclic curves").add_subparsers(dest="cmd", required=True)
    _form_args(_add(sub, "classify", cmd_curve_classify, "type I-VI of a canonical form"))
    _form_args(_add(sub, "stab", cmd_curve_stab, "stabilizer descriptor"))
    p = _add(sub, "ams", cmd_curve_ams, "degree divisibility test")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p = _add(sub, "rectify", cmd_curve_rectify, "send a parameterized line to an axis")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--equivariant", metavar="D,E")

    sub = groups.add_parser("group", help="finite subgroups of GL(2)").add_subparsers(dest="cmd", required=True)
    for name, func, text in [("closure", cmd_group_closure, "generated group"),
                             ("small", cmd_group_small, "pseudoreflection test")]:
        _group_args(_add(sub, name, func, text))
    p = _add(sub, "invariants", cmd_group_invariants, "invariant basis per degree")
    _group_args(p)
    p.add_argument("--degmax", type=int, required=True)
    p = _add(sub, "relation", cmd_group_relation, "relation among invariants")
    p.add_argument("--invariant", action="append", required=True)
    p.add_argument("--degree", type=int, required=True)
    p = _add(sub, "normalizer", cmd_group_normalizer, "normalizer membership")
    _group_args(p)
    p.add_argument("--matrix", required=True)
    p = _add(sub, "lines", cmd_group_lines, "directions on which f vanishes")
    _group_args(p)
    p.add_argument("--f", required=True)
    p.add_argument("--order", type=int)
    return parser


# -- driver ------------------------------------------------------------------


def _read_record(path: str) -> tuple[list[str], list[str]]:
    """(command words, option tokens) from a key: value file."""
    command: list[str] = []
    tokens: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ParseError(f"record line without ':' in {path}: {line!r}")
            key, value = key.strip(), value.strip()
            if key == "command":
                command = value.split()
            elif key != "schema":
                tokens += [f"--{key.replace('_', '-')}", value]
    return command, tokens


def run(argv: Sequence[str], fmt: Optional[str] = None) -> tuple[int, str]:
    """Run one command; returns (exit code, output text)."""
    parser = build_parser()
    argv = list(argv)
    command = " ".join(argv[:2])
    try:
        pre, _ = _pre_parser().parse_known_args(argv)
        fmt = fmt or pre.format
        if pre.input:
            cmd_words, tokens = _read_record(pre.input)
            rest = [t for t in argv if t not in ("--input", pre.input)]
            positional = [t for t in rest[:2] if not t.startswith("-")]
            if len(positional) < 2:
                rest = cmd_words + rest
            argv = rest[:2] + tokens + rest[2:]
        args = parser.parse_args(argv)
        command = f"{args.group} {args.cmd}"
        record = args.func(args)
        return EXIT_OK, render(command, record, fmt)
    except TorplaneError as exc:
        code = EXIT_PARSE if isinstance(exc, ParseError) else EXIT_DOMAIN
        return code, render(command, [("error", exc.code), ("message", str(exc))], fmt or "structured")
    except OSError as exc:
        return EXIT_PARSE, render(command, [("error", "ParseError"), ("message", str(exc))],
                                  fmt or "structured")


def _pre_parser() -> argparse.ArgumentParser:
    pre = _Parser(add_help=False, allow_abbrev=False)
    pre.add_argument("--format", choices=["structured", "plain"], default="structured")
    pre.add_argument("--input")
    pre.add_argument("--batch")
    return pre


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pre, rest = _pre_parser().parse_known_args(argv)
    except ParseError as exc:
        sys.stdout.write(render("", [("error", exc.code), ("message", str(exc))], "structured"))
        return EXIT_PARSE
    if pre.batch:
        worst = EXIT_OK
        outputs = []
        try:
            with open(pre.batch, encoding="utf-8") as fh:
                lines = [ln.strip() for ln in fh]
        except OSError as exc:
            sys.stdout.write(render("", [("error", "ParseError"), ("message", str(exc))], pre.format))
            return EXIT_PARSE
        for line in lines:
            if not line or line.startswith("#"):
                continue
            code, text = run(shlex.split(line), pre.format)
            worst = max(worst, code)
            outputs.append(text)
        sys.stdout.write("\n".join(outputs))
        return worst
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
