"""Truncated universal Witt vectors: coordinates X_1..X_N of 1 + sum X_i t^i.

Operators are finite sums c(X) d^alpha with ordinary partial derivatives.
The invariant field attached to b_-i is multiplication by t^i on the group,
d_i + X_1 d_(i+1) + X_2 d_(i+2) + ...; ``psi_univ_displayed`` keeps the
alternative rule d_i + X_i d_(i+1) + X_(i+1) d_(i+2) + ... so that the two
can be compared (they agree for i = 1 only).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import Poly, binomial

MultiIndex = Tuple[int, ...]


def witt_symbols(N: int, letter: str = "X") -> Tuple[str, ...]:
    return tuple(f"{letter}{i}" for i in range(1, N + 1))


def _unit(N: int, k: int, a: int = 1) -> MultiIndex:
    return tuple(a if j == k - 1 else 0 for j in range(N))


class WittOp:
    __slots__ = ("N", "symbols", "terms")

    def __init__(self, N: int, terms: Mapping[MultiIndex, Poly] | None = None):
        self.N = N
        self.symbols = witt_symbols(N)
        clean = {}
        for alpha, c in (terms or {}).items():
            if len(alpha) != N:
                raise ValueError(f"multi-index {alpha} does not have length {N}")
            c = c if isinstance(c, Poly) else Poly.const(self.symbols, c)
            if c.symbols != self.symbols:
                raise ValueError("coefficient over the wrong symbols")
            if c:
                clean[alpha] = clean[alpha] + c if alpha in clean else c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def partial(cls, N: int, k: int) -> "WittOp":
        if not 1 <= k <= N:
            raise ValueError(f"index {k} outside 1..{N}")
        return cls(N, {_unit(N, k): Poly.const(witt_symbols(N), 1)})

    def X(self, k: int) -> Poly:
        return Poly.var(self.symbols, f"X{k}")

    def __add__(self, other: "WittOp") -> "WittOp":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return WittOp(self.N, out)

    def __neg__(self):
        return WittOp(self.N, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> "WittOp":
        """Left multiplication by a polynomial or scalar."""
        return WittOp(self.N, {a: v * c for a, v in self.terms.items()})

    def __matmul__(self, other: "WittOp") -> "WittOp":
        return witt_compose(self, other)

    def __eq__(self, other):
        return isinstance(other, WittOp) and self.N == other.N and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def support(self) -> List[int]:
        """Variable indices that are differentiated in some term."""
        return sorted({k + 1 for a in self.terms for k, e in enumerate(a) if e})

    def apply(self, p: Poly, letter: str = "X") -> Poly:
        """Act on a polynomial, reading X_k as the variable ``letter``k of p."""
        names = witt_symbols(self.N, letter)
        rename = {s: Poly.var(p.symbols, n) for s, n in zip(self.symbols, names)}
        out = Poly.zero(p.symbols)
        for alpha, c in self.terms.items():
            d = p
            for k, e in enumerate(alpha):
                if e:
                    d = d.diff(names[k], e)
                if not d:
                    break
            if d:
                out = out + c.subs(rename) * d
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for alpha in sorted(self.terms, key=lambda a: (-sum(a), tuple(-e for e in a))):
            d = " ".join(f"d{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(alpha) if e) or "1"
            parts.append(f"({self.terms[alpha]})*{d}")
        return " + ".join(parts)

    __repr__ = __str__


def witt_compose(p: WittOp, q: WittOp) -> WittOp:
    """(c d^alpha)(e d^beta) = sum_gamma<=alpha C(alpha, gamma) c d^gamma(e) d^(alpha-gamma+beta)."""
    if p.N != q.N:
        raise ValueError("truncation levels differ")
    N = p.N
    out: Dict[MultiIndex, Poly] = {}

    def sub_indices(alpha):
        if not alpha:
            yield ()
            return
        for g in range(alpha[0] + 1):
            for rest in sub_indices(alpha[1:]):
                yield (g,) + rest

    for alpha, c in p.terms.items():
        for beta, e in q.terms.items():
            for gamma in sub_indices(alpha):
                d = e
                mult = 1
                for k, g in enumerate(gamma):
                    if g:
                        d = d.diff(f"X{k + 1}", g)
                        mult *= binomial(alpha[k], g)
                if not d:
                    continue
                key = tuple(a - g + b for a, g, b in zip(alpha, gamma, beta))
                term = c * d * mult
                out[key] = out[key] + term if key in out else term
    return WittOp(N, out)


def commutator(p: WittOp, q: WittOp) -> WittOp:
    return witt_compose(p, q) - witt_compose(q, p)


# ---------------------------------------------------------------------------
# the operators


def psi_univ(i: int, N: int) -> WittOp:
    """Invariant field for b_-i: d_i + sum_{k>=1, i+k<=N} X_k d_(i+k)."""
    if not 1 <= i <= N:
        raise ValueError(f"need 1 <= i <= N, got i={i}, N={N}")
    op = WittOp.partial(N, i)
    for k in range(1, N - i + 1):
        op = op + WittOp.partial(N, i + k) * Poly.var(witt_symbols(N), f"X{k}")
    return op


def psi_univ_displayed(i: int, N: int) -> WittOp:
    """Alternative rule d_i + sum_{k>=i, k+1<=N} X_k d_(k+1)."""
    if not 1 <= i <= N:
        raise ValueError(f"need 1 <= i <= N, got i={i}, N={N}")
    op = WittOp.partial(N, i)
    for k in range(i, N):
        op = op + WittOp.partial(N, k + 1) * Poly.var(witt_symbols(N), f"X{k}")
    return op


def perturbed_control(N: int) -> WittOp:
    """d_1 + 2 X_1 d_2: a deliberately non-invariant field."""
    return WittOp.partial(N, 1) + WittOp.partial(N, 2) * (Poly.var(witt_symbols(N), "X1") * 2)


# ---------------------------------------------------------------------------
# the group law


@dataclass(frozen=True)
class CoproductTable:
    N: int
    Z: Tuple[Poly, ...]

    @property
    def symbols(self) -> Tuple[str, ...]:
        return self.Z[0].symbols

    def coordinate(self, i: int) -> Poly:
        return self.Z[i - 1]


def witt_coproduct(N: int) -> CoproductTable:
    """Z_i = X_i + Y_i + sum_{j+k=i} X_j Y_k from (1 + sum X t^i)(1 + sum Y t^i)."""
    if N < 1:
        raise ValueError("N >= 1 required")
    syms = witt_symbols(N, "X") + witt_symbols(N, "Y")
    X = [Poly.const(syms, 1)] + [Poly.var(syms, f"X{i}") for i in range(1, N + 1)]
    Y = [Poly.const(syms, 1)] + [Poly.var(syms, f"Y{i}") for i in range(1, N + 1)]
    Z = tuple(sum((X[j] * Y[i - j] for j in range(i + 1)), Poly.zero(syms)) for i in range(1, N + 1))
    return CoproductTable(N, Z)


def check_counit(table: CoproductTable) -> Optional[dict]:
    N = table.N
    zero_y = {f"Y{i}": 0 for i in range(1, N + 1)}
    zero_x = {f"X{i}": 0 for i in range(1, N + 1)}
    for i, z in enumerate(table.Z, 1):
        if z.subs(zero_y) != Poly.var(witt_symbols(N, "X"), f"X{i}"):
            return {"coordinate": i, "side": "Y=0"}
        if z.subs(zero_x) != Poly.var(witt_symbols(N, "Y"), f"Y{i}"):
            return {"coordinate": i, "side": "X=0"}
    return None


def check_coassociativity(N: int) -> Optional[dict]:
    """Z(Z(X, Y), W) = Z(X, Z(Y, W)) coordinatewise; returns a witness or None."""
    syms = witt_symbols(N, "X") + witt_symbols(N, "Y") + witt_symbols(N, "W")
    table = witt_coproduct(N)
    var = {s: Poly.var(syms, s) for s in syms}
    xy = [z.subs({**{f"X{i}": var[f"X{i}"] for i in range(1, N + 1)}, **{f"Y{i}": var[f"Y{i}"] for i in range(1, N + 1)}})
          for z in table.Z]
    yw = [z.subs({**{f"X{i}": var[f"Y{i}"] for i in range(1, N + 1)}, **{f"Y{i}": var[f"W{i}"] for i in range(1, N + 1)}})
          for z in table.Z]
    for k, z in enumerate(table.Z, 1):
        left = z.subs({**{f"X{i}": xy[i - 1] for i in range(1, N + 1)}, **{f"Y{i}": var[f"W{i}"] for i in range(1, N + 1)}})
        right = z.subs({**{f"X{i}": var[f"X{i}"] for i in range(1, N + 1)}, **{f"Y{i}": yw[i - 1] for i in range(1, N + 1)}})
        if left != right:
            return {"coordinate": k, "difference": str(left - right)}
    return None


# ---------------------------------------------------------------------------
# checks


@dataclass
class WittCheck:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def check_commuting(N: int, rule=psi_univ) -> WittCheck:
    """[D_i, D_j] for i < j <= N vanishes up to terms differentiating only X_k with k > N - 1."""
    if N < 2:
        raise ValueError("N >= 2 required")
    ops = {i: rule(i, N) for i in range(1, N + 1)}
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            c = commutator(ops[i], ops[j])
            inner = [k for k in c.support() if k <= N - 1]
            if inner:
                return WittCheck(False, {"i": i, "j": j, "commutator": str(c), "index": inner[0]})
    return WittCheck(True)


def check_invariance(i: int, N: int, op: WittOp | None = None) -> WittCheck:
    """Left invariance on Z_k, k + 1 <= N: D acting on the Y-alphabet of Z_k equals D(X_k) evaluated at Z."""
    if not 1 <= i <= N:
        raise ValueError(f"need 1 <= i <= N, got i={i}, N={N}")
    if op is None:
        op = psi_univ(i, N)
    table = witt_coproduct(N)
    syms = table.symbols
    at_z = {f"X{k}": table.coordinate(k) for k in range(1, N + 1)}
    xk = witt_symbols(N)
    for k in range(1, N):
        lhs = op.apply(table.coordinate(k), letter="Y")
        coeff = op.apply(Poly.var(xk, f"X{k}"))
        rhs = coeff.subs(at_z) if coeff.total_degree() > 0 else Poly.const(syms, coeff.constant_value() if coeff else 0)
        if lhs != rhs:
            return WittCheck(False, {"coordinate": k, "lhs": str(lhs), "rhs": str(rhs)})
    return WittCheck(True)
