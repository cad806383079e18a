"""Exact coefficient arithmetic: rationals, sparse multivariate polynomials,
truncated Laurent series.

Rationals are :class:`fractions.Fraction`; coefficients that happen to be
integers are stored as plain ``int`` (mixed arithmetic is exact either way and
integer fast paths matter for the operator powers computed elsewhere).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exps = Tuple[int, ...]
Scalar = (int, Fraction)


def ratnum(value) -> int | Fraction:
    """Canonical exact rational: ``int`` when the denominator is 1."""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return ratnum(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return ratnum(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _fmt_scalar(c) -> str:
    if isinstance(c, Fraction):
        return f"({c.numerator}/{c.denominator})"
    return str(c)


class NonIntegralError(ValueError):
    """Raised when an integral-only operation meets a fractional coefficient."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Poly:
    """Sparse polynomial over Q in a fixed, ordered tuple of symbols.

    Values are immutable; ``terms`` maps exponent tuples to nonzero rationals.
    """

    __slots__ = ("symbols", "terms", "_hash")

    def __init__(self, symbols: Sequence[str], terms: Mapping[Exps, object] | None = None):
        self.symbols = tuple(symbols)
        n = len(self.symbols)
        clean: Dict[Exps, object] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match symbols {self.symbols}")
                c = ratnum(c)
                if c:
                    clean[e] = _norm(clean.get(e, 0) + c) if e in clean else c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, symbols: Tuple[str, ...], terms: Dict[Exps, object]) -> "Poly":
        p = cls.__new__(cls)
        p.symbols = symbols
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, symbols) -> "Poly":
        return cls._raw(tuple(symbols), {})

    @classmethod
    def const(cls, symbols, c) -> "Poly":
        symbols = tuple(symbols)
        c = ratnum(c)
        return cls._raw(symbols, {(0,) * len(symbols): c} if c else {})

    @classmethod
    def var(cls, symbols, name: str) -> "Poly":
        symbols = tuple(symbols)
        e = [0] * len(symbols)
        e[symbols.index(name)] = 1
        return cls._raw(symbols, {tuple(e): 1})

    @classmethod
    def monomial(cls, symbols, exps: Exps, c=1) -> "Poly":
        return cls(symbols, {tuple(exps): c})

    # coercion
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.symbols != self.symbols:
                raise ValueError(f"symbol lists differ: {self.symbols} vs {other.symbols}")
            return other
        if isinstance(other, Scalar) or isinstance(other, Rational):
            return Poly.const(self.symbols, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _norm(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.symbols, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.symbols, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar) or (isinstance(other, Rational) and not isinstance(other, Poly)):
            c = ratnum(other)
            if not c:
                return Poly.zero(self.symbols)
            return Poly._raw(self.symbols, {e: _norm(v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.symbols)
        out: Dict[Exps, object] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Poly._raw(self.symbols, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.symbols, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def div_exact(self, d) -> "Poly":
        """Divide every coefficient by the rational scalar ``d``."""
        d = ratnum(d)
        if not d:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly._raw(self.symbols, {e: _norm(Fraction(c) / d) for e, c in self.terms.items()})

    __truediv__ = div_exact

    # comparisons
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.symbols == other.symbols and self.terms == other.terms
        if isinstance(other, Scalar):
            c = ratnum(other)
            if not c:
                return not self.terms
            return self.terms == {(0,) * len(self.symbols): c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.symbols), 0)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def non_integral_witness(self):
        for e in self.sorted_exps():
            c = self.terms[e]
            if type(c) is not int:
                return (e, c)
        return None

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.symbols.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_exps(self):
        # ascending total degree, ties: lexicographically larger exponent vector first
        return sorted(self.terms, key=lambda e: (sum(e), tuple(-a for a in e)))

    # transformations
    def reduce_mod_p(self, prime: int) -> "Poly":
        bad = self.non_integral_witness()
        if bad is not None:
            raise NonIntegralError(f"cannot reduce non-integral coefficient {bad[1]} at {bad[0]} mod {prime}", bad)
        return Poly._raw(self.symbols, {e: c % prime for e, c in self.terms.items() if c % prime})

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.symbols, {e: fn(c) for e, c in self.terms.items()})

    def diff(self, name: str, k: int = 1) -> "Poly":
        """Ordinary k-th partial derivative."""
        i = self.symbols.index(name)
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a >= k:
                f = 1
                for t in range(a - k + 1, a + 1):
                    f *= t
                ne = e[:i] + (a - k,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * f
        return Poly._raw(self.symbols, {e: _norm(c) for e, c in out.items() if c})

    def divided_diff(self, name: str, k: int) -> "Poly":
        """Divided partial derivative: x^a -> C(a, k) x^(a-k)."""
        if k == 0:
            return self
        i = self.symbols.index(name)
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a >= k:
                ne = e[:i] + (a - k,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * binomial(a, k)
        return Poly._raw(self.symbols, {e: _norm(c) for e, c in out.items() if c})

    def extend(self, symbols: Sequence[str]) -> "Poly":
        """Re-embed into a larger symbol list containing all current symbols."""
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        idx = [symbols.index(s) for s in self.symbols]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(symbols)
            for j, a in zip(idx, e):
                ne[j] = a
            out[tuple(ne)] = c
        return Poly._raw(symbols, out)

    def restrict(self, symbols: Sequence[str]) -> "Poly":
        """Drop symbols that do not occur; raises if a dropped symbol occurs."""
        symbols = tuple(symbols)
        idx = [self.symbols.index(s) for s in symbols]
        keep = set(idx)
        out = {}
        for e, c in self.terms.items():
            if any(a for j, a in enumerate(e) if j not in keep):
                raise ValueError(f"{self} involves symbols outside {symbols}")
            out[tuple(e[j] for j in idx)] = c
        return Poly._raw(symbols, out)

    def split(self, names: Sequence[str]) -> Dict[Exps, "Poly"]:
        """Coefficients with respect to ``names``, as polynomials in the rest."""
        outer = [self.symbols.index(n) for n in names]
        inner = [j for j in range(len(self.symbols)) if j not in outer]
        inner_syms = tuple(self.symbols[j] for j in inner)
        buckets: Dict[Exps, Dict[Exps, object]] = {}
        for e, c in self.terms.items():
            key = tuple(e[j] for j in outer)
            buckets.setdefault(key, {})[tuple(e[j] for j in inner)] = c
        return {k: Poly._raw(inner_syms, v) for k, v in buckets.items()}

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute rationals or polynomials (over a common symbol list) for symbols."""
        target = None
        for v in values.values():
            if isinstance(v, Poly):
                target = v.symbols
                break
        if target is None:
            target = tuple(s for s in self.symbols if s not in values)
        result = Poly.zero(target)
        cache: Dict[Tuple[str, int], Poly] = {}

        def power(name, k):
            key = (name, k)
            if key not in cache:
                v = values[name]
                base = v if isinstance(v, Poly) else Poly.const(target, v)
                cache[key] = base ** k
            return cache[key]

        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for s, a in zip(self.symbols, e):
                if not a:
                    continue
                if s in values:
                    term = term * power(s, a)
                else:
                    term = term * Poly.monomial(target, _unit(target, s, a))
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, object]):
        val = 0
        for e, c in self.terms.items():
            t = c
            for s, a in zip(self.symbols, e):
                if a:
                    t = t * ratnum(point[s]) ** a
            val += t
        return ratnum(val)

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.sorted_exps():
            c = self.terms[e]
            mono = "*".join(
                s if a == 1 else f"{s}^{a}" for s, a in zip(self.symbols, e) if a
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = _fmt_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_scalar(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.symbols}, {str(self)!r})"


def _unit(symbols, name, a) -> Exps:
    e = [0] * len(symbols)
    e[symbols.index(name)] = a
    return tuple(e)


_BINOM: Dict[Tuple[int, int], int] = {}


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    key = (n, k)
    v = _BINOM.get(key)
    if v is None:
        from math import comb

        v = _BINOM[key] = comb(n, k)
    return v


# ---------------------------------------------------------------------------
# truncated Laurent series


class LaurentSeries:
    """Truncated Laurent series sum_{k >= valuation} c_k z^k + O(z^precision).

    Coefficients are :class:`Poly` over a common parameter symbol list.  The
    zero series is stored with no coefficients and ``valuation == precision``.
    """

    __slots__ = ("var", "symbols", "valuation", "coeffs", "precision")

    def __init__(self, symbols, valuation: int, coeffs: Sequence, precision: int, var: str = "z"):
        self.symbols = tuple(symbols)
        self.var = var
        coeffs = [c if isinstance(c, Poly) else Poly.const(self.symbols, c) for c in coeffs]
        for c in coeffs:
            if c.symbols != self.symbols:
                raise ValueError("series coefficient symbol mismatch")
        coeffs = coeffs[: max(0, precision - valuation)]
        start = 0
        while start < len(coeffs) and coeffs[start].is_zero():
            start += 1
        coeffs = coeffs[start:]
        valuation += start
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            valuation = precision
        self.valuation = valuation
        self.coeffs = coeffs
        self.precision = precision

    @classmethod
    def from_dict(cls, symbols, terms: Mapping[int, object], precision: int, var="z"):
        terms = {k: v for k, v in terms.items() if k < precision}
        if not terms:
            return cls(symbols, precision, [], precision, var)
        lo = min(terms)
        return cls(symbols, lo, [terms.get(k, 0) for k in range(lo, max(terms) + 1)], precision, var)

    @classmethod
    def monomial(cls, symbols, k: int, precision: int, c=1, var="z"):
        return cls.from_dict(symbols, {k: c}, precision, var)

    def coefficient(self, k: int) -> Poly:
        if k >= self.precision:
            raise ValueError(f"coefficient of {self.var}^{k} unknown at precision {self.precision}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Poly.zero(self.symbols)

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.valuation + i, c

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError("expected a LaurentSeries")
        if other.symbols != self.symbols or other.var != self.var:
            raise ValueError("series over different symbols or variables")

    def truncate(self, precision: int) -> "LaurentSeries":
        precision = min(precision, self.precision)
        return LaurentSeries(self.symbols, self.valuation, self.coeffs, precision, self.var)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return self + LaurentSeries.monomial(self.symbols, 0, self.precision, other, self.var)
        self._check(other)
        prec = min(self.precision, other.precision)
        terms: Dict[int, Poly] = {}
        for s in (self, other):
            for k, c in s.items():
                if k < prec:
                    terms[k] = terms[k] + c if k in terms else c
        return LaurentSeries.from_dict(self.symbols, terms, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.symbols, self.valuation, [-c for c in self.coeffs], self.precision, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Poly,) + Scalar) or isinstance(other, Rational):
            return LaurentSeries(self.symbols, self.valuation, [c * other for c in self.coeffs], self.precision, self.var)
        self._check(other)
        # sound bookkeeping: unknown tails start at v(a) + N(b) and v(b) + N(a)
        prec = min(self.valuation + other.precision, other.valuation + self.precision)
        v = self.valuation + other.valuation
        n = max(0, min(prec - v, len(self.coeffs) + len(other.coeffs) - 1))
        out = [Poly.zero(self.symbols)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return LaurentSeries(self.symbols, v, out, prec, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.monomial(self.symbols, 0, max(self.precision - self.valuation, 1), 1, self.var)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; the leading coefficient must be a nonzero rational."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series with no known nonzero coefficient")
        lead = self.coeffs[0]
        if not lead.is_constant():
            raise ZeroDivisionError(f"leading coefficient {lead} is not an invertible scalar")
        inv_lead = Fraction(1) / Fraction(lead.constant_value())
        v = self.valuation
        rel = self.precision - v
        out = [Poly.const(self.symbols, inv_lead)]
        for k in range(1, rel):
            acc = Poly.zero(self.symbols)
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(acc * (-inv_lead))
        return LaurentSeries(self.symbols, -v, out, -v + rel, self.var)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return LaurentSeries(
            self.symbols, self.valuation, [c.div_exact(other) for c in self.coeffs], self.precision, self.var
        )

    def derivative(self) -> "LaurentSeries":
        terms = {k - 1: c * k for k, c in self.items() if k}
        return LaurentSeries.from_dict(self.symbols, terms, self.precision - 1, self.var)

    def divided_derivative(self, j: int) -> "LaurentSeries":
        """z^l -> C(l, j) z^(l-j), extended to negative l by the generalized binomial."""
        if j == 0:
            return self
        terms = {k - j: c * _gen_binom(k, j) for k, c in self.items()}
        return LaurentSeries.from_dict(self.symbols, terms, self.precision - j, self.var)

    def compose_power(self, k: int) -> "LaurentSeries":
        """Substitute z -> z^k (k >= 1)."""
        if k < 1:
            raise ValueError("compose_power needs k >= 1")
        terms = {e * k: c for e, c in self.items()}
        return LaurentSeries.from_dict(self.symbols, terms, self.precision * k, self.var)

    def map_coefficients(self, fn) -> "LaurentSeries":
        return LaurentSeries(self.symbols, self.valuation, [fn(c) for c in self.coeffs], self.precision, self.var)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.symbols == other.symbols
            and self.valuation == other.valuation
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def agrees_with(self, other: "LaurentSeries", precision: int | None = None) -> bool:
        """Equality of all coefficients below the common (or given) precision."""
        prec = min(self.precision, other.precision)
        if precision is not None:
            prec = min(prec, precision)
        lo = min(self.valuation, other.valuation, prec)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, prec))

    def __hash__(self):
        return hash((self.symbols, self.valuation, self.precision, tuple(self.coeffs)))

    def __str__(self):
        parts = []
        for k, c in self.items():
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            parts.append(cs if k == 0 else f"{cs}*{self.var}^{k}")
        parts.append(f"O({self.var}^{self.precision})")
        return " + ".join(parts)

    __repr__ = __str__


def _gen_binom(n: int, k: int) -> int:
    num = 1
    for t in range(k):
        num *= n - t
    den = 1
    for t in range(2, k + 1):
        den *= t
    return num // den


def series_from_poly(p: Poly, values: Mapping[str, LaurentSeries]) -> LaurentSeries:
    """Evaluate a polynomial at series; symbols not in ``values`` become coefficients."""
    names = list(values)
    first = next(iter(values.values()))
    rest = tuple(s for s in p.symbols if s not in values)
    if rest != first.symbols:
        raise ValueError(f"remaining symbols {rest} do not match series coefficients {first.symbols}")
    powers: Dict[Tuple[str, int], LaurentSeries] = {}

    def power(name, a):
        if (name, a) not in powers:
            powers[(name, a)] = values[name] if a == 1 else power(name, a - 1) * values[name]
        return powers[(name, a)]

    unbounded = 1 << 30
    total = LaurentSeries(rest, unbounded, [], unbounded, first.var)
    for exps, coeff in p.split(names).items():
        term = None
        for name, a in zip(names, exps):
            if a:
                term = power(name, a) if term is None else term * power(name, a)
        if term is None:
            term = LaurentSeries.monomial(rest, 0, unbounded, coeff, first.var)
        else:
            term = term * coeff
        total = total + term
    if total.precision == unbounded:
        prec = min(s.precision for s in values.values())
        total = total.truncate(prec)
    return total
