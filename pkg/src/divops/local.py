"""Operators at the origin of the curve: sum_j a_j(z) dz^[j], a_j truncated series."""
from __future__ import annotations

from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .algebra import LaurentSeries, Poly, binomial, ratnum
from .curve import WeierstrassCurve, tangent_coefficient_series

DEFAULT_PRECISION = 24


class LocalOp:
    __slots__ = ("symbols", "terms", "precision")

    def __init__(self, symbols: Sequence[str], terms: Mapping[int, LaurentSeries], precision: int | None = None):
        self.symbols = tuple(symbols)
        clean = {}
        for j, s in terms.items():
            if s.symbols != self.symbols:
                raise ValueError("coefficient series over the wrong symbols")
            if not s.is_zero():
                clean[j] = s
        if precision is None:
            precision = min((s.precision for s in terms.values()), default=1 << 30)
        self.terms = {j: s.truncate(precision) for j, s in clean.items()}
        self.terms = {j: s for j, s in self.terms.items() if not s.is_zero()}
        self.precision = precision

    @classmethod
    def multiplication(cls, series: LaurentSeries) -> "LocalOp":
        return cls(series.symbols, {0: series}, series.precision)

    @classmethod
    def identity(cls, symbols, precision: int) -> "LocalOp":
        return cls.multiplication(LaurentSeries.monomial(symbols, 0, precision))

    @classmethod
    def divided_d(cls, symbols, j: int, precision: int) -> "LocalOp":
        return cls(symbols, {j: LaurentSeries.monomial(symbols, 0, precision)}, precision)

    @property
    def max_order(self) -> int:
        return max(self.terms, default=-1)

    def coefficient(self, j: int) -> LaurentSeries:
        if j in self.terms:
            return self.terms[j]
        return LaurentSeries(self.symbols, self.precision, [], self.precision)

    def __add__(self, other: "LocalOp") -> "LocalOp":
        prec = min(self.precision, other.precision)
        out = dict(self.terms)
        for j, s in other.terms.items():
            out[j] = out[j] + s if j in out else s
        return LocalOp(self.symbols, out, prec)

    def __neg__(self):
        return LocalOp(self.symbols, {j: -s for j, s in self.terms.items()}, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LocalOp":
        """Multiply by a rational or a parameter polynomial."""
        return LocalOp(self.symbols, {j: s * c for j, s in self.terms.items()}, self.precision)

    def __truediv__(self, d) -> "LocalOp":
        return LocalOp(self.symbols, {j: s / ratnum(d) for j, s in self.terms.items()}, self.precision)

    def __matmul__(self, other):
        return local_compose(self, other)

    def map_coefficients(self, fn) -> "LocalOp":
        return LocalOp(self.symbols, {j: s.map_coefficients(fn) for j, s in self.terms.items()}, self.precision)

    def reduce_mod_p(self, prime: int) -> "LocalOp":
        return self.map_coefficients(lambda c: c.reduce_mod_p(prime))

    def agrees_with(self, other: "LocalOp", precision: int | None = None) -> bool:
        prec = min(self.precision, other.precision)
        if precision is not None:
            prec = min(prec, precision)
        for j in set(self.terms) | set(other.terms):
            if not self.coefficient(j).truncate(prec).agrees_with(other.coefficient(j).truncate(prec)):
                return False
        return True

    def first_bad_coefficient(self):
        """First (j, exponent, value) violating regularity or integrality, else None."""
        for j in sorted(self.terms):
            s = self.terms[j]
            for k, c in s.items():
                if k < 0:
                    return {"order": j, "exponent": k, "value": str(c), "reason": "pole at O"}
                bad = c.non_integral_witness()
                if bad is not None:
                    return {"order": j, "exponent": k, "value": str(c), "reason": "non-integral"}
        return None

    def is_regular_integral(self) -> bool:
        return self.first_bad_coefficient() is None

    def __str__(self):
        if not self.terms:
            return f"0 + O(z^{self.precision})"
        return " + ".join(f"[{self.terms[j]}] dz^[{j}]" for j in sorted(self.terms))

    __repr__ = __str__


def local_compose(p: LocalOp, q: LocalOp) -> LocalOp:
    """(sum a_j d^[j]) o (sum b_k d^[k]) = sum a_j D^[i](b_k) C(j-i+k, k) d^[j-i+k]."""
    if p.symbols != q.symbols:
        raise ValueError("symbol mismatch")
    acc: Dict[int, LaurentSeries] = {}
    prec = None
    for j, a in p.terms.items():
        for k, b in q.terms.items():
            for i in range(j + 1):
                db = b.divided_derivative(i)
                term = a * db
                if prec is None or term.precision < prec:
                    prec = term.precision
                if db.is_zero():
                    continue
                m = binomial(j - i + k, k)
                if m != 1:
                    term = term * m
                key = j - i + k
                acc[key] = acc[key] + term if key in acc else term
    if prec is None:
        prec = min(p.precision, q.precision)
    return LocalOp(p.symbols, acc, prec)


def p_local(curve: WeierstrassCurve, N: int = DEFAULT_PRECISION) -> LocalOp:
    """The tangent derivation at O: s(z) dz with s(0) = 1."""
    if N < 4:
        raise ValueError("p_local needs N >= 4")
    return LocalOp(curve.params, {1: tangent_coefficient_series(curve, N)}, N)


def p_local_power(curve: WeierstrassCurve, k: int, N: int = DEFAULT_PRECISION) -> LocalOp:
    cache = curve._cache.setdefault(("Plocal", N), {})
    if k not in cache:
        if k == 0:
            cache[k] = LocalOp.identity(curve.params, N)
        else:
            cache[k] = local_compose(p_local(curve, N), p_local_power(curve, k - 1, N))
    return cache[k]


def from_p_polynomial(
    poly: Iterable[Tuple[object, int]], curve: WeierstrassCurve, N: int = DEFAULT_PRECISION, divisor=1
) -> LocalOp:
    """Local expansion of (sum c_k P^k) / divisor."""
    total = None
    for c, k in poly:
        term = p_local_power(curve, k, N).scale(c)
        total = term if total is None else total + term
    if total is None:
        return LocalOp(curve.params, {}, N)
    return total / divisor if divisor != 1 else total


def frobenius_descent(p: LocalOp, prime: int) -> LocalOp:
    """Keep terms z^l dz^[j] with p | l and p | j, sending them to z^(l/p) dz^[j/p].

    Coefficients must already be reduced modulo ``prime``.
    """
    for s in p.terms.values():
        for _, c in s.items():
            if not c.is_integral() or any(v < 0 or v >= prime for v in c.terms.values()):
                raise ValueError(f"coefficient {c} is not reduced mod {prime}")
    prec = -(-p.precision // prime)
    out = {}
    for j, s in p.terms.items():
        if j % prime:
            continue
        kept = {k // prime: c for k, c in s.items() if k % prime == 0}
        out[j // prime] = LaurentSeries.from_dict(p.symbols, kept, prec)
    return LocalOp(p.symbols, out, prec)
