"""Batch command-line interface.

Every invocation prints one JSON envelope {"command", "space", "inputs",
"result"} on standard output and exits 0 for a success or positive
verdict, 1 for a negative verdict, 2 when no verdict could be reached,
and 64 for unusable input.  Identical invocations produce byte-identical
output: floats are serialized in shortest round-trip decimal form and
all randomness is seeded.

Functions are written in a small prefix mini-language:

    const(re,im)            constant re + im*i
    poly(c0,c1,...)         polynomial, coefficients as literals re+imi
    mobius(a_re,a_im,th)    lam * (a - z) / (1 - conj(a) z), lam = e^{i th}
    add(e,e)  mul(e,e)      pointwise sum and product
    compose(e,e)            left argument composed with the right
    recip(e)  pow(e,alpha)  reciprocal and principal-branch power
"""

from __future__ import annotations

import argparse
import cmath
import csv
import dataclasses
import json
import math
import re
import sys

from .analytic_core import (
    Add,
    AnalyticExpr,
    Compose,
    Const,
    Moebius,
    MoebiusMap,
    Mul,
    Poly,
    Pow,
    Recip,
)
from .axiom_harness import run_all
from .characterization import (
    AutomorphismFit,
    InvertibilityReport,
    IsometryReport,
    MultiplierVerdict,
    check_invertible,
    check_isometry,
    inverse_symbols,
)
from .errors import ParseError, WcolabError
from .operators import DEFAULT_SEED, WcoSymbols, finite_section
from .quadrature import GridConfig, default_config
from .spaces import NormBreakdown, SpaceSpec, norm, parse_space, seminorm

_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class _ExprParser:
    """Recursive-descent parser for the function mini-language."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            self.fail(f"expected '{ch}'")
        self.pos += 1

    def number(self) -> float:
        self.skip_ws()
        m = _NUMBER_RE.match(self.text, self.pos)
        if m is None:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def complex_literal(self) -> complex:
        first = self.number()
        self.skip_ws()
        if self.peek() == "i":
            self.pos += 1
            return complex(0.0, first)
        if self.peek() in "+-":
            second = self.number()
            self.skip_ws()
            if self.peek() != "i":
                self.fail("expected 'i' after the imaginary part")
            self.pos += 1
            return complex(first, second)
        return complex(first, 0.0)

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a function name")
        return self.text[start : self.pos]

    def expression(self) -> AnalyticExpr:
        self.skip_ws()
        start = self.pos
        name = self.name()
        self.expect("(")
        if name == "const":
            re_part = self.number()
            self.expect(",")
            im_part = self.number()
            self.expect(")")
            return Const(complex(re_part, im_part))
        if name == "poly":
            coeffs = [self.complex_literal()]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                coeffs.append(self.complex_literal())
                self.skip_ws()
            self.expect(")")
            return Poly(tuple(coeffs))
        if name == "mobius":
            a_re = self.number()
            self.expect(",")
            a_im = self.number()
            self.expect(",")
            theta = self.number()
            self.expect(")")
            return Moebius(MoebiusMap(complex(a_re, a_im), cmath.exp(1j * theta)))
        if name in ("add", "mul", "compose"):
            left = self.expression()
            self.expect(",")
            right = self.expression()
            self.expect(")")
            node = {"add": Add, "mul": Mul, "compose": Compose}[name]
            return node(left, right)
        if name == "recip":
            inner = self.expression()
            self.expect(")")
            return Recip(inner)
        if name == "pow":
            inner = self.expression()
            self.expect(",")
            exponent = self.number()
            self.expect(")")
            return Pow(inner, exponent)
        self.pos = start
        self.fail(f"unknown function '{name}'")


def parse_expression(s: str) -> AnalyticExpr:
    """Parse a mini-language string into an expression tree.

    Raises ParseError with the failing position; node constructors may
    additionally reject semantically invalid input (a mobius parameter
    outside the disk, a reciprocal of a vanishing function).
    """
    if s is None or not s.strip():
        raise ParseError("empty expression", 0)
    parser = _ExprParser(s)
    expr = parser.expression()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        parser.fail("unexpected trailing input")
    return expr


def _fmt_real(x: float) -> str:
    return repr(float(x))


def _fmt_literal(c: complex) -> str:
    c = complex(c)
    if c.imag == 0.0:
        return _fmt_real(c.real)
    if c.real == 0.0:
        return _fmt_real(c.imag) + "i"
    sign = "+" if c.imag > 0 else "-"
    return f"{_fmt_real(c.real)}{sign}{_fmt_real(abs(c.imag))}i"


def format_expression(e: AnalyticExpr) -> str:
    """Render an expression tree back into the mini-language."""
    if isinstance(e, Const):
        v = complex(e.value)
        return f"const({_fmt_real(v.real)},{_fmt_real(v.imag)})"
    if isinstance(e, Poly):
        return "poly(" + ",".join(_fmt_literal(c) for c in e.coeffs) + ")"
    if isinstance(e, Moebius):
        a = complex(e.map.a)
        theta = math.atan2(e.map.lam.imag, e.map.lam.real)
        return f"mobius({_fmt_real(a.real)},{_fmt_real(a.imag)},{_fmt_real(theta)})"
    if isinstance(e, Add):
        return f"add({format_expression(e.left)},{format_expression(e.right)})"
    if isinstance(e, Mul):
        return f"mul({format_expression(e.left)},{format_expression(e.right)})"
    if isinstance(e, Compose):
        return f"compose({format_expression(e.outer)},{format_expression(e.inner)})"
    if isinstance(e, Recip):
        return f"recip({format_expression(e.inner)})"
    if isinstance(e, Pow):
        return f"pow({format_expression(e.inner)},{_fmt_real(e.exponent)})"
    raise ParseError(f"no mini-language form for {type(e).__name__}")


def _jsonify(obj):
    if isinstance(obj, AnalyticExpr):
        return format_expression(obj)
    if isinstance(obj, SpaceSpec):
        return str(obj)
    if isinstance(obj, MoebiusMap):
        return {"a": _jsonify(obj.a), "lam": _jsonify(obj.lam)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonify(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(obj)
    return str(obj)


def _envelope(command: str, space, inputs: dict, result) -> dict:
    return {
        "command": command,
        "space": str(space) if space is not None else None,
        "inputs": _jsonify(inputs),
        "result": _jsonify(result),
    }


class _Usage(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="wcolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, space_required=True):
        if space_required:
            p.add_argument("--space", required=True, help="space string, e.g. bloch:1 or hardy:2")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for probe families")
        p.add_argument("--ntheta", type=int, default=None, help="angular grid size (power of two)")
        p.add_argument("--nradial", type=int, default=None, help="radial node count")
        p.add_argument("--rmax", type=float, default=None, help="outermost grid radius")
        p.add_argument("--json", metavar="PATH", default=None, help="also write the envelope to a file")

    p = sub.add_parser("norm", help="norm of a function in a space")
    common(p)
    p.add_argument("--fn", required=True, help="function in the mini-language")

    p = sub.add_parser("seminorm", help="seminorm of a function in a decomposed-norm space")
    common(p)
    p.add_argument("--fn", required=True)

    for name, help_text in (
        ("check-invertible", "invertibility verdict for a weighted composition operator"),
        ("check-isometry", "surjective-isometry verdict on a decomposed-norm space"),
        ("invert", "inverse symbols of an invertible operator"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.add_argument("--F", required=True, help="weight symbol")
        p.add_argument("--phi", required=True, help="composition symbol")

    p = sub.add_parser("axioms", help="run the axiom suite on one space")
    common(p)

    p = sub.add_parser("section", help="finite section matrix of an operator")
    common(p, space_required=False)
    p.add_argument("--F", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--dim", type=int, default=16, help="section dimension N")
    p.add_argument("--csv", metavar="PATH", default=None, help="write the matrix as CSV re,im pairs")
    return parser


def _grid_from_args(args) -> GridConfig:
    cfg = default_config()
    overrides = {}
    if args.ntheta is not None:
        overrides["n_theta"] = args.ntheta
    if args.nradial is not None:
        overrides["n_radial"] = args.nradial
    if args.rmax is not None:
        overrides["r_max"] = args.rmax
        overrides["sup_radii"] = None
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    return cfg


def _grid_inputs(cfg: GridConfig) -> dict:
    return {"n_theta": cfg.n_theta, "n_radial": cfg.n_radial, "r_max": cfg.r_max}


def _run_section(args, cfg) -> tuple:
    w = WcoSymbols(parse_expression(args.F), parse_expression(args.phi))
    section = finite_section(w, args.dim, cfg)
    result = {"dimension": section.dimension, "radius": section.radius}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in section.entries:
                flat = []
                for v in row:
                    flat.extend((repr(float(v.real)), repr(float(v.imag))))
                writer.writerow(flat)
        result["csv_path"] = args.csv
    else:
        result["entries"] = [
            [{"re": float(v.real), "im": float(v.imag)} for v in row] for row in section.entries
        ]
    return result, 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(f"wcolab: {exc}", file=sys.stderr)
        return 64

    # Input phase: anything rejected here is a usage error, not a crash.
    try:
        cfg = _grid_from_args(args)
        space = parse_space(args.space) if getattr(args, "space", None) else None
        fn = parse_expression(args.fn) if getattr(args, "fn", None) else None
        w = None
        if getattr(args, "F", None):
            w = WcoSymbols(parse_expression(args.F), parse_expression(args.phi))
    except WcolabError as exc:
        print(f"wcolab: {exc}", file=sys.stderr)
        return 64

    inputs = {"seed": args.seed, "grid": _grid_inputs(cfg)}
    for key in ("fn", "F", "phi"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value

    try:
        if args.subcommand == "norm":
            result, code = norm(space, fn, cfg), 0
        elif args.subcommand == "seminorm":
            result, code = {"seminorm": seminorm(space, fn, cfg)}, 0
        elif args.subcommand == "check-invertible":
            report = check_invertible(w, space, cfg, args.seed)
            code = {"Invertible": 0, "NotInvertible": 1, "Inconclusive": 2}[report.verdict]
            result = report
        elif args.subcommand == "check-isometry":
            report = check_isometry(w, space, cfg, args.seed)
            result, code = report, 0 if report.surjective_isometry else 1
        elif args.subcommand == "invert":
            report = check_invertible(w, space, cfg, args.seed)
            code = {"Invertible": 0, "NotInvertible": 1, "Inconclusive": 2}[report.verdict]
            result = {
                "verdict": report.verdict,
                "inverse_weight": report.inverse_weight,
                "inverse_map": report.inverse_map,
                "roundtrip_residual": report.roundtrip_residual,
            }
            if report.verdict == "Inconclusive" and report.automorphism.found and report.zero_count == 0:
                # The formal inverse exists; only its boundedness is unsettled.
                G, psi = inverse_symbols(w, report.automorphism)
                result["inverse_weight"] = G
                result["inverse_map"] = psi
                result["caveat"] = report.caveat
        elif args.subcommand == "axioms":
            reports = run_all(space, cfg, args.seed)
            result = list(reports)
            code = 0 if all(r.passed for r in reports) else 1
        elif args.subcommand == "section":
            result, code = _run_section(args, cfg)
        else:
            raise AssertionError(args.subcommand)
    except WcolabError as exc:
        result = {"error": type(exc).__name__, "message": str(exc)}
        code = 2

    document = json.dumps(_envelope(args.subcommand, space, inputs, result), indent=2) + "\n"
    sys.stdout.write(document)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(document)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
