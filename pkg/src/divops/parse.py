"""Polynomial expressions and curve description files.

Expression grammar: integers, rationals written ``p/q``, symbols, ``+ - * ^``
(``**`` also accepted), parentheses, and implicit products are NOT allowed.

Curve files are line oriented::

    # Legendre family
    name: legendre
    params: lam
    a1: 0
    a2: -(1 + lam)
    a3: 0
    a4: lam
    a6: 0

``params`` is a comma/space separated list (may be empty); all five
coefficients a1, a2, a3, a4, a6 are required; ``#`` starts a comment.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import Poly
from .curve import COEFF_NAMES, WeierstrassCurve


class CurveFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<curve>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def parse_poly(text: str, symbols: Sequence[str]) -> Poly:
    symbols = tuple(symbols)
    src = text.replace("^", "**").strip()
    if not src:
        raise ValueError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree.body, symbols, text)


def _eval(node, symbols, text) -> Poly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Poly.const(symbols, node.value)
    if isinstance(node, ast.Name):
        if node.id not in symbols:
            raise ValueError(f"unknown symbol {node.id!r} in {text!r} (declared: {', '.join(symbols) or 'none'})")
        return Poly.var(symbols, node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, symbols, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0):
                raise ValueError(f"exponents must be nonnegative integer literals in {text!r}")
            return _eval(node.left, symbols, text) ** exp.value
        left, right = _eval(node.left, symbols, text), _eval(node.right, symbols, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right:
                raise ValueError(f"division only by nonzero constants in {text!r}")
            return left.div_exact(Fraction(right.constant_value()))
    raise ValueError(f"unsupported syntax in {text!r}")


def parse_curve_text(text: str, source: str = "<curve>") -> WeierstrassCurve:
    entries = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise CurveFileError(f"expected 'key: value', got {raw.strip()!r}", lineno, source)
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in COEFF_NAMES and key not in ("params", "name"):
            raise CurveFileError(f"unknown key {key!r}", lineno, source)
        if key in entries:
            raise CurveFileError(f"duplicate key {key!r}", lineno, source)
        entries[key] = value
        lines[key] = lineno
    last = len(text.splitlines())
    params = tuple(p for p in entries.get("params", "").replace(",", " ").split() if p)
    for p in params:
        if not p.isidentifier():
            raise CurveFileError(f"bad parameter name {p!r}", lines.get("params"), source)
    coeffs = {}
    for n in COEFF_NAMES:
        if n not in entries:
            raise CurveFileError(f"missing coefficient {n}", last, source)
        try:
            coeffs[n] = parse_poly(entries[n], params)
        except ValueError as exc:
            raise CurveFileError(str(exc), lines[n], source) from None
    try:
        return WeierstrassCurve(params, name=entries.get("name", Path(source).stem), **coeffs)
    except ValueError as exc:
        raise CurveFileError(str(exc), lines.get("params"), source) from None


def load_curve(path) -> WeierstrassCurve:
    path = Path(path)
    return parse_curve_text(path.read_text(), source=str(path))


def curve_to_text(curve: WeierstrassCurve) -> str:
    out = [f"name: {curve.name}", f"params: {', '.join(curve.params)}"]
    out += [f"{n}: {c}" for n, c in curve.coefficients().items()]
    return "\n".join(out) + "\n"
