"""Divided-power differential operators sum c_{a,b}(x, y) dx^[a] dy^[b] on a
Weierstrass curve, in ambient presentation.

Coefficients are stored reduced modulo f.  For operators that preserve the
ideal (f) (everything built from the tangent derivation does) this does not
change the induced endomorphism of the coordinate ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .algebra import Poly, binomial, ratnum
from .curve import WeierstrassCurve, basis_monomials, reduce, weierstrass_f

Index = Tuple[int, int]


class DividedOp:
    __slots__ = ("curve", "terms")

    def __init__(self, curve: WeierstrassCurve, terms: Mapping[Index, Poly] | None = None, reduced: bool = False):
        self.curve = curve
        clean: Dict[Index, Poly] = {}
        for idx, c in (terms or {}).items():
            if not isinstance(c, Poly):
                c = Poly.const(curve.ring_symbols, c)
            elif c.symbols == curve.params and c.symbols != curve.ring_symbols:
                c = curve.lift(c)
            if not reduced:
                c = reduce(c, curve)
            if c:
                clean[tuple(idx)] = c
        self.terms = clean

    # constructors
    @classmethod
    def identity(cls, curve) -> "DividedOp":
        return cls(curve, {(0, 0): curve.one()}, reduced=True)

    @classmethod
    def zero(cls, curve) -> "DividedOp":
        return cls(curve, {}, reduced=True)

    @classmethod
    def scalar(cls, curve, c) -> "DividedOp":
        if isinstance(c, Poly):
            return cls(curve, {(0, 0): curve.lift(c) if c.symbols == curve.params else c})
        return cls(curve, {(0, 0): Poly.const(curve.ring_symbols, c)}, reduced=True)

    @classmethod
    def from_ordinary(cls, curve, terms: Mapping[Index, Poly]) -> "DividedOp":
        """Convert sum c_{a,b} dx^a dy^b using dx^a = a! dx^[a]."""
        return cls(curve, {idx: c * (factorial(idx[0]) * factorial(idx[1])) for idx, c in terms.items()})

    # structure
    @property
    def order(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def coefficient(self, a: int, b: int) -> Poly:
        return self.terms.get((a, b), Poly.zero(self.curve.ring_symbols))

    def ordinary_coefficient(self, a: int, b: int) -> Poly:
        """Coefficient of dx^a dy^b in the ordinary-power presentation (may be fractional)."""
        return self.coefficient(a, b).div_exact(factorial(a) * factorial(b))

    def _same(self, other: "DividedOp"):
        if other.curve != self.curve:
            raise ValueError("operators live on different curves")

    def __add__(self, other):
        if not isinstance(other, DividedOp):
            other = DividedOp.scalar(self.curve, other)
        self._same(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            v = out.get(idx)
            v = c if v is None else v + c
            if v:
                out[idx] = v
            else:
                out.pop(idx, None)
        return DividedOp(self.curve, out, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return DividedOp(self.curve, {i: -c for i, c in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Left multiplication by a scalar or parameter polynomial; ``@``/``compose`` for products."""
        if isinstance(other, DividedOp):
            return compose(self, other)
        if isinstance(other, Poly):
            c = self.curve.lift(other) if other.symbols == self.curve.params else other
            return DividedOp(self.curve, {i: v * c for i, v in self.terms.items()})
        return DividedOp(self.curve, {i: v * other for i, v in self.terms.items()}, reduced=True)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, other)

    def __truediv__(self, d):
        d = ratnum(d)
        return DividedOp(self.curve, {i: v.div_exact(d) for i, v in self.terms.items()}, reduced=True)

    def __eq__(self, other):
        if not isinstance(other, DividedOp):
            return NotImplemented
        return self.curve == other.curve and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_indices(self) -> List[Index]:
        return sorted(self.terms, key=lambda ab: (-(ab[0] + ab[1]), -ab[0]))

    def reduce_mod_p(self, prime: int) -> "DividedOp":
        return DividedOp(self.curve, {i: c.reduce_mod_p(prime) for i, c in self.terms.items()}, reduced=True)

    def serialize(self) -> str:
        """Deterministic text form "(c) * dx^[a] dy^[b] + ..." (highest order first)."""
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[i]}) * dx^[{i[0]}] dy^[{i[1]}]" for i in self.sorted_indices())

    __str__ = serialize

    def __repr__(self):
        return f"DividedOp<{self.curve.name}: {self.serialize()}>"


def divided_partial(p: Poly, a: int, b: int) -> Poly:
    """dx^[a] dy^[b] applied to an ambient polynomial (integer operation)."""
    if a:
        p = p.divided_diff("x", a)
    if b:
        p = p.divided_diff("y", b)
    return p


def tangent_derivation(curve: WeierstrassCurve) -> DividedOp:
    """P = f_y dx - f_x dy, the invariant vector field dual to dx / f_y."""
    cache = curve._cache
    if "P" not in cache:
        f = weierstrass_f(curve)
        cache["P"] = DividedOp(curve, {(1, 0): f.diff("y"), (0, 1): -f.diff("x")})
    return cache["P"]


def compose(p: DividedOp, q: DividedOp) -> DividedOp:
    """Product p o q.

    Uses dx^[m] o c = sum_k D^[k](c) dx^[m-k] (componentwise in x and y) and
    dx^[m] dx^[n] = C(m+n, n) dx^[m+n].
    """
    p._same(q)
    acc: Dict[Index, Poly] = {}
    for (a, b), c in p.terms.items():
        for (a2, b2), d in q.terms.items():
            for k in range(a + 1):
                dk = d.divided_diff("x", k) if k else d
                if not dk:
                    continue
                for l in range(b + 1):
                    dkl = dk.divided_diff("y", l) if l else dk
                    if not dkl:
                        continue
                    na, nb = a - k + a2, b - l + b2
                    mult = binomial(na, a2) * binomial(nb, b2)
                    term = c * dkl
                    if mult != 1:
                        term = term * mult
                    key = (na, nb)
                    acc[key] = acc[key] + term if key in acc else term
    return DividedOp(p.curve, acc)


def power(p: DividedOp, n: int) -> DividedOp:
    if n < 0:
        raise ValueError("negative power")
    out = DividedOp.identity(p.curve)
    for _ in range(n):
        out = compose(p, out)
    return out


def tangent_power(curve: WeierstrassCurve, n: int) -> DividedOp:
    """P^n, cached per curve."""
    cache = curve._cache.setdefault("Ppow", {})
    if n not in cache:
        cache[n] = DividedOp.identity(curve) if n == 0 else compose(tangent_derivation(curve), tangent_power(curve, n - 1))
    return cache[n]


def apply(p: DividedOp, h) -> Poly:
    """Action on a ring element (ambient divided partials, then reduction modulo f)."""
    curve = p.curve
    h = getattr(h, "poly", h)
    if h.symbols != curve.ring_symbols:
        raise ValueError("ring element over the wrong symbols")
    out = Poly.zero(curve.ring_symbols)
    for (a, b), c in p.terms.items():
        d = divided_partial(h, a, b)
        if d:
            out = out + c * d
    return reduce(out, curve)


def equals_on_curve(p: DividedOp, q: DividedOp, degree_bound: Optional[int] = None) -> bool:
    return first_difference(p, q, degree_bound) is None


def first_difference(p: DividedOp, q: DividedOp, degree_bound: Optional[int] = None):
    """First basis monomial x^i, x^i y (i <= bound) on which p and q disagree, else None."""
    p._same(q)
    if degree_bound is None:
        degree_bound = max(p.order, q.order) + 2
    if degree_bound < max(p.order, q.order):
        raise ValueError("degree_bound must be at least the operator order")
    for m in basis_monomials(p.curve, degree_bound):
        u, v = apply(p, m), apply(q, m)
        if u != v:
            return {"monomial": str(m), "lhs": str(u), "rhs": str(v)}
    return None


@dataclass(frozen=True)
class IntegralityResult:
    integral: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.integral


def is_integral(p: DividedOp) -> IntegralityResult:
    """All coefficients in the divided-power basis have integer coefficients."""
    for idx in p.sorted_indices():
        bad = p.terms[idx].non_integral_witness()
        if bad is not None:
            exps, value = bad
            mono = Poly.monomial(p.curve.ring_symbols, exps)
            return IntegralityResult(
                False,
                {"multi_index": list(idx), "monomial": str(mono), "value": str(value), "coefficient": str(p.terms[idx])},
            )
    return IntegralityResult(True)


def action_integrality(p: DividedOp, degree_bound: Optional[int] = None) -> IntegralityResult:
    """Integrality of p applied to every basis monomial up to order + 2."""
    if degree_bound is None:
        degree_bound = max(p.order, 0) + 2
    for m in basis_monomials(p.curve, degree_bound):
        r = apply(p, m)
        bad = r.non_integral_witness()
        if bad is not None:
            return IntegralityResult(False, {"monomial": str(m), "image": str(r), "value": str(bad[1])})
    return IntegralityResult(True)


def power_over_factorial(p: DividedOp, n: int):
    """p^n / n! if every division is exact over the integers, else a witness dict."""
    if n < 1:
        raise ValueError("n >= 1 required")
    op = power(p, n) / factorial(n)
    res = is_integral(op)
    if res.integral:
        return op
    return {"divisor": factorial(n), **res.witness}
