"""Cartier operator on h*omega via the (2p-2)-fold partial derivative of f^(p-1) h."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import Poly
from .curve import CurveElement, WeierstrassCurve, basis_monomials, reduce, weierstrass_f, y_power
from .psi import Check, VerificationReport
from .weyl import DividedOp, apply

DESK_PRIMES = (2, 3, 5, 7)


def _as_poly(curve: WeierstrassCurve, h) -> Poly:
    h = getattr(h, "poly", h)
    if isinstance(h, Poly):
        return h
    return Poly.const(curve.ring_symbols, h)


def _check_prime(prime: int, max_prime: int):
    if prime < 2 or any(prime % q == 0 for q in range(2, int(prime ** 0.5) + 1)):
        raise ValueError(f"{prime} is not prime")
    if prime > max_prime:
        raise ValueError(f"prime {prime} above the configured bound {max_prime}")


def cartier_numerator(curve: WeierstrassCurve, h, prime: int, max_prime: int = 7) -> CurveElement:
    """d^(2p-2)/dx^(p-1)dy^(p-1) (f^(p-1) h), reduced mod p and mod f."""
    _check_prime(prime, max_prime)
    if not curve.is_integral():
        raise ValueError("curve coefficients must be integral")
    g = (weierstrass_f(curve) ** (prime - 1) * _as_poly(curve, h)).reduce_mod_p(prime)
    d = g.diff("x", prime - 1).diff("y", prime - 1).reduce_mod_p(prime)
    return CurveElement(curve, reduce(d, curve).reduce_mod_p(prime))


# ---------------------------------------------------------------------------
# p-th roots in F_p[x, y]/(f)


@dataclass
class PthRootResult:
    root: Optional[CurveElement]
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.root is not None


def _solve_mod_p(rows: List[List[int]], rhs: List[int], prime: int) -> Tuple[Optional[List[int]], Optional[List[int]]]:
    """Solve rows * v = rhs over F_p; on failure return a left null vector c with c.rhs != 0."""
    m, n = len(rows), len(rows[0]) if rows else 0
    # augmented with an identity block tracking row operations
    aug = [[v % prime for v in rows[i]] + [rhs[i] % prime] + [int(i == k) for k in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, prime)
        aug[r] = [(v * inv) % prime for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % prime for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if aug[i][n]:
            return None, aug[i][n + 1:]
    sol = [0] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol, None


def pth_root(u, curve: WeierstrassCurve, prime: int) -> PthRootResult:
    """g = A(x) + B(x) y with g^p = u in F_p[x, y]/(f), or the obstruction.

    Over F_p, g^p = A(x^p) + B(x^p) y^p and y^p = R + S y, so the unknown
    coefficients of A, B enter linearly.
    """
    if curve.params:
        raise ValueError("pth_root needs the curve parameters specialized to integers")
    syms = curve.ring_symbols
    up = reduce(_as_poly(curve, u), curve).reduce_mod_p(prime)
    if not up:
        return PthRootResult(CurveElement(curve, up))
    R, S = (c.reduce_mod_p(prime) for c in y_power(curve, prime))
    dx = up.degree_in("x")
    da = dx // prime + 1
    db = dx // prime + 1
    x = curve.x()
    y = curve.y()
    # images of the unknown basis elements x^i and x^i y under g -> g^p
    columns: List[Poly] = []
    labels = []
    for i in range(da + 1):
        columns.append(x ** (prime * i))
        labels.append(("A", i))
    for i in range(db + 1):
        columns.append(reduce((x ** (prime * i)) * (R + S * y), curve).reduce_mod_p(prime))
        labels.append(("B", i))
    monos = sorted(set(up.terms).union(*(c.terms for c in columns)))
    rows = [[int(c.terms.get(mono, 0)) for c in columns] for mono in monos]
    rhs = [int(up.terms.get(mono, 0)) for mono in monos]
    sol, null = _solve_mod_p(rows, rhs, prime)
    if sol is None:
        functional = {str(Poly.monomial(syms, monos[i])): c for i, c in enumerate(null) if c}
        return PthRootResult(None, {"reason": f"not a {prime}-th power", "input": str(up),
                                    "obstruction": functional})
    root = Poly.zero(syms)
    for (kind, i), c in zip(labels, sol):
        if c:
            root = root + (x ** i if kind == "A" else x ** i * y) * c
    return PthRootResult(CurveElement(curve, root))


def cartier_apply(curve: WeierstrassCurve, h, prime: int) -> PthRootResult:
    """g with C(h omega) = g omega."""
    return pth_root(cartier_numerator(curve, h, prime), curve, prime)


# ---------------------------------------------------------------------------
# operator identities


def p2_candidate(curve: WeierstrassCurve) -> DividedOp:
    """P + a1."""
    from .weyl import tangent_derivation

    return tangent_derivation(curve) + DividedOp.scalar(curve, curve.lift(curve.a1))


def p3_candidate(curve: WeierstrassCurve, constant: Poly | int | None = None) -> DividedOp:
    """P^2/2! + constant (default 2(1 + lam) on the Legendre family)."""
    from .weyl import tangent_power

    op = tangent_power(curve, 2) / 2
    if constant is None:
        constant = 2 * (1 + Poly.var(curve.params, "lam"))
    if isinstance(constant, Poly):
        constant = curve.lift(constant)
    return op + DividedOp.scalar(curve, constant)


def operator_identity_check(
    curve: WeierstrassCurve, prime: int, candidate: DividedOp, degree_bound: int = 6, label: str = "candidate"
) -> VerificationReport:
    """Compare the Cartier numerator with candidate(h) mod p on x^i, x^i y for i <= degree_bound."""
    rep = VerificationReport({"element": label, "prime": prime, "degree_bound": degree_bound}, curve.describe())
    for m in basis_monomials(curve, degree_bound):
        lhs = cartier_numerator(curve, m, prime).poly
        rhs = apply(candidate, m).reduce_mod_p(prime)
        if lhs != rhs:
            rep.checks.append(Check("cartier_identity", False,
                                    {"monomial": str(m), "numerator": str(lhs), "candidate": str(rhs)}))
            return rep
    rep.checks.append(Check("cartier_identity", True, None, candidate.serialize()))
    return rep
