"""Weierstrass curves, their affine coordinate ring, and expansions at the origin.

Ring elements live in ``Poly`` over ``params + ("x", "y")``; the canonical
residue modulo the Weierstrass polynomial has y-degree at most one.  Local
expansions use the chart z = -x/y, w = -1/y at the identity O.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra import LaurentSeries, Poly, series_from_poly

COEFF_NAMES = ("a1", "a2", "a3", "a4", "a6")
RESERVED = {"x", "y", "z", "w"}


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients in Q[params].

    Singular members are allowed.
    """

    params: Tuple[str, ...]
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    name: str = "curve"
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        bad = RESERVED.intersection(self.params)
        if bad:
            raise ValueError(f"parameter names {sorted(bad)} are reserved")
        for n in COEFF_NAMES:
            c = getattr(self, n)
            if not isinstance(c, Poly):
                c = Poly.const(self.params, c)
                object.__setattr__(self, n, c)
            if c.symbols != self.params:
                raise ValueError(f"{n} is over {c.symbols}, expected {self.params}")

    @classmethod
    def from_values(cls, params: Sequence[str] = (), name: str = "curve", **coeffs) -> "WeierstrassCurve":
        params = tuple(params)
        vals = {}
        for n in COEFF_NAMES:
            v = coeffs.pop(n, 0)
            vals[n] = v if isinstance(v, Poly) else Poly.const(params, v)
        if coeffs:
            raise TypeError(f"unknown coefficients {sorted(coeffs)}")
        return cls(params, name=name, **vals)

    @property
    def ring_symbols(self) -> Tuple[str, ...]:
        return self.params + ("x", "y")

    def coefficients(self) -> Dict[str, Poly]:
        return {n: getattr(self, n) for n in COEFF_NAMES}

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coefficients().values())

    def specialize(self, values: Mapping[str, object], name: str | None = None) -> "WeierstrassCurve":
        """Substitute rational values for some parameters."""
        rest = tuple(p for p in self.params if p not in values)
        coeffs = {}
        for n, c in self.coefficients().items():
            coeffs[n] = c.subs(dict(values)).extend(rest) if c.symbols else c
            coeffs[n] = coeffs[n].restrict(rest) if coeffs[n].symbols != rest else coeffs[n]
        return WeierstrassCurve(rest, name=name or f"{self.name}{dict(values)}", **coeffs)

    def reduce_mod_p(self, prime: int) -> "WeierstrassCurve":
        coeffs = {n: c.reduce_mod_p(prime) for n, c in self.coefficients().items()}
        return WeierstrassCurve(self.params, name=f"{self.name} mod {prime}", **coeffs)

    # ring helpers
    def lift(self, c: Poly) -> Poly:
        """Embed a parameter polynomial into the ring symbols."""
        return c.extend(self.ring_symbols)

    def x(self) -> Poly:
        return Poly.var(self.ring_symbols, "x")

    def y(self) -> Poly:
        return Poly.var(self.ring_symbols, "y")

    def one(self) -> Poly:
        return Poly.const(self.ring_symbols, 1)

    def describe(self) -> dict:
        return {"name": self.name, "params": list(self.params), **{n: str(c) for n, c in self.coefficients().items()}}


def legendre() -> WeierstrassCurve:
    """y^2 = x(x-1)(x-lam)."""
    P = ("lam",)
    lam = Poly.var(P, "lam")
    return WeierstrassCurve(P, Poly.zero(P), -(lam + 1), Poly.zero(P), lam, Poly.zero(P), name="legendre")


def general() -> WeierstrassCurve:
    """The curve with symbolic coefficients a1, a2, a3, a4, a6."""
    P = COEFF_NAMES
    return WeierstrassCurve(P, *(Poly.var(P, n) for n in P), name="general")


def tate_reduction() -> WeierstrassCurve:
    """The nodal cubic y^2 + xy = x^3."""
    return WeierstrassCurve.from_values((), name="tate", a1=1)


def weierstrass_f(curve: WeierstrassCurve) -> Poly:
    """f = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6."""
    x, y, L = curve.x(), curve.y(), curve.lift
    return y * y + L(curve.a1) * x * y + L(curve.a3) * y - x ** 3 - L(curve.a2) * x * x - L(curve.a4) * x - L(curve.a6)


def _y_square(curve: WeierstrassCurve) -> Tuple[Poly, Poly]:
    """y^2 = r0(x) + r1(x) y on the curve."""
    x, L = curve.x(), curve.lift
    r0 = x ** 3 + L(curve.a2) * x * x + L(curve.a4) * x + L(curve.a6)
    r1 = -(L(curve.a1) * x + L(curve.a3))
    return r0, r1


def y_power(curve: WeierstrassCurve, j: int) -> Tuple[Poly, Poly]:
    """Reduced y^j as (A, B) with y^j = A + B y, A and B free of y."""
    cache = curve._cache.setdefault("ypow", {})
    if j in cache:
        return cache[j]
    if j == 0:
        res = (curve.one(), Poly.zero(curve.ring_symbols))
    elif j == 1:
        res = (Poly.zero(curve.ring_symbols), curve.one())
    else:
        a, b = y_power(curve, j - 1)
        r0, r1 = _y_square(curve)
        # y * (a + b y) = b r0 + (a + b r1) y
        res = (b * r0, a + b * r1)
    cache[j] = res
    return res


def reduce(p: Poly, curve: WeierstrassCurve) -> Poly:
    """Canonical residue of ``p`` modulo f: a polynomial with y-degree <= 1."""
    syms = curve.ring_symbols
    if p.symbols != syms:
        raise ValueError(f"polynomial over {p.symbols}, curve ring is over {syms}")
    if all(e[-1] <= 1 for e in p.terms):
        return p
    low: Dict = {}
    high: Dict[int, Dict] = {}
    for e, c in p.terms.items():
        j = e[-1]
        if j <= 1:
            low[e] = c
        else:
            high.setdefault(j, {})[e[:-1] + (0,)] = c
    out = Poly._raw(syms, low)
    y = curve.y()
    for j, terms in high.items():
        part = Poly._raw(syms, terms)
        a, b = y_power(curve, j)
        out = out + part * a + part * b * y
    return out


@dataclass(frozen=True)
class CurveElement:
    """A residue A(x) + B(x) y of the coordinate ring."""

    curve: WeierstrassCurve
    poly: Poly

    @classmethod
    def of(cls, curve: WeierstrassCurve, p: Poly) -> "CurveElement":
        return cls(curve, reduce(p, curve))

    @property
    def A(self) -> Poly:
        return Poly._raw(self.poly.symbols, {e: c for e, c in self.poly.terms.items() if e[-1] == 0})

    @property
    def B(self) -> Poly:
        return Poly._raw(
            self.poly.symbols, {e[:-1] + (0,): c for e, c in self.poly.terms.items() if e[-1] == 1}
        )

    def __add__(self, other: "CurveElement") -> "CurveElement":
        return CurveElement(self.curve, self.poly + other.poly)

    def __sub__(self, other: "CurveElement") -> "CurveElement":
        return CurveElement(self.curve, self.poly - other.poly)

    def __mul__(self, other):
        if isinstance(other, CurveElement):
            return CurveElement.of(self.curve, self.poly * other.poly)
        return CurveElement(self.curve, self.poly * other)

    def __pow__(self, n: int) -> "CurveElement":
        out = CurveElement(self.curve, self.curve.one())
        for _ in range(n):
            out = out * self
        return out

    def is_integral(self) -> bool:
        return self.poly.is_integral()

    def __str__(self):
        return str(self.poly)


def basis_monomials(curve: WeierstrassCurve, degree_bound: int) -> List[Poly]:
    """x^i and x^i y for i <= degree_bound."""
    x, y = curve.x(), curve.y()
    out = []
    for i in range(degree_bound + 1):
        out.append(x ** i)
        out.append(x ** i * y)
    return out


# ---------------------------------------------------------------------------
# local expansions at O


def _params_series(curve, k, prec, c=1):
    return LaurentSeries.monomial(curve.params, k, prec, c)


def chart_series_w(curve: WeierstrassCurve, N: int) -> LaurentSeries:
    """w(z) = z^3 + a1 z^4 + ... solving the chart equation modulo z^N.

    The fixed-point map w <- z^3 + a1 zw + a2 z^2 w + a3 w^2 + a4 zw^2 + a6 w^3
    raises valuations, so the coefficient of z^n in its output only depends on
    coefficients of w below n.  Evaluating it lazily fixes one coefficient per
    step (see ``chart_series_w_iterated`` for the plain iteration).
    """
    if N < 4:
        raise ValueError("chart_series_w needs N >= 4")
    key = ("w", N)
    if key in curve._cache:
        return curve._cache[key]
    P = curve.params
    zero = Poly.zero(P)
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    w = [zero] * N  # w[n] = coefficient of z^n
    w2 = [zero] * N  # coefficients of w^2, filled as soon as they are determined
    w3 = [zero] * N
    for n in range(3, N):
        c = Poly.const(P, 1) if n == 3 else zero
        if a1:
            c = c + a1 * w[n - 1]
        if a2:
            c = c + a2 * w[n - 2]
        if a3:
            c = c + a3 * w2[n]
        if a4:
            c = c + a4 * w2[n - 1]
        if a6:
            c = c + a6 * w3[n]
        w[n] = c
        # w^2 and w^3 coefficients of index m need w up to m - 3 and m - 6
        m = n + 3
        if m < N:
            w2[m] = _conv(w, w, m, 3)
        m = n + 6
        if m < N:
            w3[m] = _conv(w2, w, m, 3)
    series = LaurentSeries(P, 0, w, N)
    curve._cache[key] = series
    return series


def _conv(a, b, m, lo):
    acc = Poly.zero(a[0].symbols)
    for i in range(lo, m - lo + 1):
        if a[i] and b[m - i]:
            acc = acc + a[i] * b[m - i]
    return acc


def chart_series_w_iterated(curve: WeierstrassCurve, N: int) -> LaurentSeries:
    """Plain fixed-point iteration for w(z), run until the truncation is stable."""
    z = _params_series(curve, 1, N + 1)
    z3 = _params_series(curve, 3, N)
    w = z3
    for _ in range(N):
        w2 = w * w
        nxt = (
            z3
            + z * w * curve.a1
            + z * z * w * curve.a2
            + w2 * curve.a3
            + z * w2 * curve.a4
            + w2 * w * curve.a6
        ).truncate(N)
        if nxt == w:
            return w
        w = nxt
    return w


def chart_equation(curve: WeierstrassCurve) -> Poly:
    """F(z, w) = z^3 + a1 zw + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3 - w."""
    syms = curve.params + ("z", "w")
    z, w = Poly.var(syms, "z"), Poly.var(syms, "w")
    L = lambda c: c.extend(syms)
    return z ** 3 + L(curve.a1) * z * w + L(curve.a2) * z * z * w + L(curve.a3) * w * w + L(curve.a4) * z * w * w + L(curve.a6) * w ** 3 - w


def local_xy(curve: WeierstrassCurve, N: int) -> Tuple[LaurentSeries, LaurentSeries]:
    """x(z) = z/w(z) and y(z) = -1/w(z), both known modulo z^N."""
    if N < 4:
        raise ValueError("local_xy needs N >= 4")
    w = chart_series_w(curve, N + 6)
    z = _params_series(curve, 1, N + 10)
    inv = w.inverse()
    return (z * inv).truncate(N), (-inv).truncate(N)


def omega_series(curve: WeierstrassCurve, N: int) -> LaurentSeries:
    """Expansion of dx / (2y + a1 x + a3) as a series in z (times dz), modulo z^N.

    With x = z/w and y = -1/w this is (w - z w') / (w (a1 z + a3 w - 2)), and
    dividing numerator and denominator by z^3 leaves unit series only.
    """
    key = ("omega", N)
    if key in curve._cache:
        return curve._cache[key]
    w = chart_series_w(curve, N + 3)
    z = _params_series(curve, 1, N + 4)
    num = w - z * w.derivative().truncate(N + 3)
    den = w * (z * curve.a1 + w * curve.a3 - 2)
    num = _shift(num, -3)
    den = _shift(den, -3)
    om = (num * den.inverse()).truncate(N)
    if om.precision < N:
        raise ArithmeticError(f"omega expansion only reached precision {om.precision} < {N}")
    curve._cache[key] = om
    return om


def _shift(s: LaurentSeries, k: int) -> LaurentSeries:
    return LaurentSeries(s.symbols, s.valuation + k, s.coeffs, s.precision + k, s.var)


def omega_series_xy(curve: WeierstrassCurve, N: int) -> LaurentSeries:
    """dx / (2y + a1 x + a3) computed literally from the Laurent expansions x(z), y(z)."""
    x, y = local_xy(curve, N + 6)
    den = y * 2 + x * curve.a1 + _params_series(curve, 0, N + 10, 1) * curve.a3
    return (x.derivative() * den.inverse()).truncate(N)


def invariant_differential(curve: WeierstrassCurve, N: int) -> List[Poly]:
    """[alpha_1, ..., alpha_N] with omega = sum_i alpha_{i+1} z^i dz."""
    if N < 1:
        raise ValueError("need N >= 1")
    om = omega_series(curve, max(N, 4))
    return [om.coefficient(i) for i in range(N)]


I_SIGN = -1  # omega = -d(sum I_n z^n / n) with xi = z


def i_coefficients(curve: WeierstrassCurve, N: int) -> List[Poly]:
    """[I_1, ..., I_N] with I_n = -alpha_n."""
    return [a * I_SIGN for a in invariant_differential(curve, N)]


def tangent_coefficient_series(curve: WeierstrassCurve, N: int) -> LaurentSeries:
    """s(z) = 1 - a1 z - 2 a3 w - a2 z^2 - 2 a4 z w - 3 a6 w^2 (coefficient of d/dz)."""
    w = chart_series_w(curve, N)
    z = _params_series(curve, 1, N + 1)
    one = _params_series(curve, 0, N + 1)
    s = one - z * curve.a1 - w * (curve.a3 * 2) - z * z * curve.a2 - z * w * (curve.a4 * 2) - w * w * (curve.a6 * 3)
    return s.truncate(N)


def evaluate_on_chart(curve: WeierstrassCurve, p: Poly, N: int) -> LaurentSeries:
    """Expand a ring polynomial in x, y at O (x = x(z), y = y(z))."""
    x, y = local_xy(curve, N)
    return series_from_poly(p, {"x": x, "y": y})
