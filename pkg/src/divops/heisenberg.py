"""Fock space C[b_-1, b_-2, ...], the Lambda polynomials, and the integral lattice.

A Fock monomial is a sorted tuple of positive mode numbers: ``(1, 1, 2)`` is
b_-1^2 b_-2.  Lambda_n is the coefficient of t^(n+1) in exp(sum_j X_j t^j / j);
the substitution X_j -> b_-j turns it into the complete homogeneous symmetric
function h_(n+1) written in power sums, so the monomials in
Lambda_0, Lambda_1, ... (keyed here by sorted tuples of Lambda indices) form a
Z-basis of the integral form.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from .algebra import NonIntegralError, Poly, ratnum

Monomial = Tuple[int, ...]
LambdaMonomial = Tuple[int, ...]


def x_symbols(n: int) -> Tuple[str, ...]:
    return tuple(f"X{j}" for j in range(1, n + 1))


@lru_cache(maxsize=None)
def lambda_poly(n: int, nvars: int | None = None) -> Poly:
    """Lambda_n in Q[X_1, ..., X_nvars] via (n+1) Lambda_n = sum_j X_j Lambda_(n-j), Lambda_-1 = 1."""
    if n < 0:
        raise ValueError("Lambda_n needs n >= 0")
    k = n + 1 if nvars is None else nvars
    if k < n + 1:
        raise ValueError(f"Lambda_{n} involves X_1..X_{n + 1}")
    syms = x_symbols(k)
    prev = [Poly.const(syms, 1)]  # prev[m] = Lambda_(m-1)
    for m in range(1, n + 2):
        acc = Poly.zero(syms)
        for j in range(1, m + 1):
            acc = acc + Poly.var(syms, f"X{j}") * prev[m - j]
        prev.append(acc.div_exact(m))
    return prev[n + 1]


class FockElement:
    """Finite linear combination of Fock monomials with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        out: Dict[Monomial, object] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            if any(m <= 0 for m in mono):
                raise ValueError(f"Fock monomials use positive mode numbers, got {mono}")
            c = ratnum(c)
            v = out.get(mono, 0) + c
            if v:
                out[mono] = ratnum(v)
            else:
                out.pop(mono, None)
        self.terms = out

    @classmethod
    def vacuum(cls) -> "FockElement":
        return cls({(): 1})

    @classmethod
    def mode(cls, m: int) -> "FockElement":
        """b_-m."""
        return cls({(m,): 1})

    def __add__(self, other: "FockElement") -> "FockElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FockElement(out)

    def __neg__(self):
        return FockElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FockElement):
            out: Dict[Monomial, object] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(sorted(m1 + m2))
                    out[m] = out.get(m, 0) + c1 * c2
            return FockElement(out)
        c = ratnum(other)
        return FockElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, d):
        d = Fraction(ratnum(d))
        return FockElement({k: Fraction(v) / d for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int:
        """Maximal mode weight (L_0 eigenvalue) among the terms."""
        return max((sum(m) for m in self.terms), default=0)

    def max_mode(self) -> int:
        return max((max(m) for m in self.terms if m), default=0)

    def homogeneous_parts(self) -> Dict[int, "FockElement"]:
        parts: Dict[int, Dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: FockElement(t) for d, t in parts.items()}

    def sorted_monomials(self) -> List[Monomial]:
        return sorted(self.terms, key=lambda m: (sum(m), len(m), tuple(-a for a in m)))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self.terms[m]
            mono = _fmt_modes(m)
            neg = c < 0
            mag = -c if neg else c
            mag_s = f"({mag.numerator}/{mag.denominator})" if isinstance(mag, Fraction) else str(mag)
            body = mag_s if mono == "1" else (mono if mag == 1 else f"{mag_s}*{mono}")
            parts.append(("-" if neg else "") + body if not parts else (" - " if neg else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


def _fmt_modes(m: Monomial) -> str:
    if not m:
        return "1"
    out = []
    for k in sorted(set(m)):
        e = m.count(k)
        out.append(f"b_-{k}" if e == 1 else f"b_-{k}^{e}")
    return "*".join(out)


def psi_substitute(p: Poly, r: int) -> FockElement:
    """X_m -> b_(r m); states need r < 0, giving products of b_-(|r| m)."""
    if r == 0:
        raise ValueError("r must be nonzero")
    if r > 0:
        raise ValueError("positive modes annihilate the vacuum; use r < 0 for Fock states")
    idx = [int(s[1:]) for s in p.symbols]
    terms = {}
    for e, c in p.terms.items():
        mono = []
        for j, a in zip(idx, e):
            mono += [-r * j] * a
        terms[tuple(mono)] = c
    return FockElement(terms)


def generator(n: int, r: int = 1) -> FockElement:
    """Lambda_n evaluated at X_m -> b_-(r m)."""
    return psi_substitute(lambda_poly(n), -r)


# ---------------------------------------------------------------------------
# Lambda basis


class LambdaCoords(dict):
    """Coordinates in the basis of monomials Lambda_(n1) ... Lambda_(nk) (sorted index tuples)."""

    def is_integral(self) -> bool:
        return all(type(v) is int for v in self.values())

    def non_integral_witness(self):
        for k in sorted(self, key=lambda t: (sum(i + 1 for i in t), t)):
            if type(self[k]) is not int:
                return {"lambda_monomial": _fmt_lambda(k), "coordinate": str(self[k])}
        return None

    def __str__(self):
        if not self:
            return "0"
        return " + ".join(f"{v}*{_fmt_lambda(k)}" for k, v in sorted(self.items(), key=lambda kv: (sum(i + 1 for i in kv[0]), kv[0])))


def _fmt_lambda(k: LambdaMonomial) -> str:
    return "*".join(f"L{n}" for n in k) if k else "1"


def _lc_mul(a: Mapping, b: Mapping) -> Dict:
    out: Dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(sorted(k1 + k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def power_sum_in_lambda(m: int) -> Tuple[Tuple[LambdaMonomial, int], ...]:
    """b_-m written in the Lambda basis (Newton: p_m = m h_m - sum_j p_j h_(m-j))."""
    acc: Dict[LambdaMonomial, int] = {(m - 1,): m}
    for j in range(1, m):
        for k, v in _lc_mul(dict(power_sum_in_lambda(j)), {(m - j - 1,): 1}).items():
            acc[k] = acc.get(k, 0) - v
    return tuple(sorted((k, v) for k, v in acc.items() if v))


@lru_cache(maxsize=None)
def _monomial_in_lambda(mono: Monomial) -> Tuple[Tuple[LambdaMonomial, int], ...]:
    acc: Dict = {(): 1}
    for m in mono:
        acc = _lc_mul(acc, dict(power_sum_in_lambda(m)))
    return tuple(sorted(acc.items()))


def to_lambda_basis(e: FockElement) -> LambdaCoords:
    """Coordinates of e in the Lambda-monomial basis; integral iff e lies in the integral form."""
    out: Dict = {}
    for mono, c in e.terms.items():
        for k, v in _monomial_in_lambda(mono):
            out[k] = out.get(k, 0) + c * v
    return LambdaCoords({k: ratnum(v) for k, v in out.items() if v})


@lru_cache(maxsize=None)
def lambda_generator_fock(n: int) -> FockElement:
    return generator(n, 1)


def from_lambda_basis(coords: Mapping[LambdaMonomial, object]) -> FockElement:
    total = FockElement()
    for k, c in coords.items():
        term = FockElement.vacuum()
        for n in k:
            term = term * lambda_generator_fock(n)
        total = total + term * c
    return total


def lambda_monomial(*indices: int) -> FockElement:
    return from_lambda_basis({tuple(sorted(indices)): 1})


def partitions(n: int, largest: int | None = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def lambda_basis(weight: int) -> List[LambdaMonomial]:
    """Basis Lambda-monomials of a given mode weight (parts of the partition minus one)."""
    return [tuple(sorted(p - 1 for p in part)) for part in partitions(weight)]


# ---------------------------------------------------------------------------
# Heisenberg action


def mode_action(n: int, e: FockElement) -> FockElement:
    """b_n on the Fock module: b_-m multiplies, b_m acts as m d/db_-m, b_0 as 0."""
    if n == 0:
        return FockElement()
    if n < 0:
        return e * FockElement.mode(-n)
    out: Dict = {}
    for mono, c in e.terms.items():
        k = mono.count(n)
        if k:
            lst = list(mono)
            lst.remove(n)
            key = tuple(lst)
            out[key] = out.get(key, 0) + c * k * n
    return FockElement(out)


def l_action(m: int, e: FockElement) -> FockElement:
    """L_m = sum_(n<0) (m-n) b_n d/db_(n-m), m >= -1: replaces one b_-k (k > m) by k b_-(k-m)."""
    if m < -1:
        raise ValueError("only L_m with m >= -1 preserve the integral form")
    out: Dict = {}
    for mono, c in e.terms.items():
        for k in set(mono):
            if k <= m:
                continue
            mult = mono.count(k)
            lst = list(mono)
            lst.remove(k)
            lst.append(k - m)
            key = tuple(sorted(lst))
            out[key] = out.get(key, 0) + c * mult * k
    return FockElement(out)


def cocycle(f: Mapping[int, object], g: Mapping[int, object]):
    """-Res_(t=0) f dg for Laurent polynomials given as {exponent: coefficient}."""
    total = 0
    for j, gj in g.items():
        fj = f.get(-j, 0)
        if fj and j:
            total += j * ratnum(fj) * ratnum(gj)
    return ratnum(-total)


# ---------------------------------------------------------------------------
# Frobenius on the reduction mod p


def frobenius_lambda_index(n: int, prime: int) -> int | None:
    """Lambda_n -> Lambda_((n+1)/p - 1) when p | n+1, else None (the image is 0)."""
    if (n + 1) % prime:
        return None
    return (n + 1) // prime - 1


def frobenius_coords(coords: Mapping[LambdaMonomial, int], prime: int) -> LambdaCoords:
    out: Dict = {}
    for k, c in coords.items():
        if type(c) is not int:
            raise NonIntegralError(f"coordinate {c} of {_fmt_lambda(k)} is not integral")
        c %= prime
        if not c:
            continue
        img = [frobenius_lambda_index(n, prime) for n in k]
        if any(i is None for i in img):
            continue
        key = tuple(sorted(img))
        out[key] = (out.get(key, 0) + c) % prime
    return LambdaCoords({k: v for k, v in out.items() if v})


def reduce_coords(coords: Mapping[LambdaMonomial, int], prime: int) -> LambdaCoords:
    out = {}
    for k, c in coords.items():
        if type(c) is not int:
            raise NonIntegralError(f"coordinate {c} of {_fmt_lambda(k)} is not integral")
        if c % prime:
            out[k] = c % prime
    return LambdaCoords(out)


def frobenius_pi(e: FockElement, prime: int) -> FockElement:
    """Frobenius on the integral form mod p, returned as the integral lift with coordinates in [0, p)."""
    coords = to_lambda_basis(e)
    bad = coords.non_integral_witness()
    if bad is not None:
        raise NonIntegralError(f"element is not in the integral form: {bad}", bad)
    return from_lambda_basis(frobenius_coords(coords, prime))


def equal_mod_p(e1: FockElement, e2: FockElement, prime: int) -> bool:
    """Equality in the reduction mod p of the integral form."""
    return reduce_coords(to_lambda_basis(e1 - e2), prime) == {}
