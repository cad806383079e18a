"""The morphism b_-j -> alpha_j P and the verification engines built on it."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import NonIntegralError, Poly
from .curve import WeierstrassCurve, invariant_differential
from .heisenberg import FockElement, frobenius_pi, generator
from .local import DEFAULT_PRECISION, LocalOp, from_p_polynomial, frobenius_descent
from .weyl import DividedOp, action_integrality, is_integral, tangent_power

CONVENTIONS = {
    "tangent_derivation": "P = f_y dx - f_x dy",
    "lambda_indexing": "Lambda_n = coefficient of t^(n+1) in exp(sum X_j t^j / j)",
    "psi_rule": "b_-j -> alpha_j P, extended multiplicatively",
    "i_sign": "I_n = -alpha_n (xi = z)",
    "frobenius_pi": "Lambda_n -> Lambda_((n+1)/p - 1) if p | n+1 else 0, multiplicative",
    "frobenius_descent": "z^l dz^[j] -> z^(l/p) dz^[j/p] if p | l and p | j, else dropped",
    "frobenius_twist": "target side evaluated with parameters raised to the p-th power",
}


class PrecisionError(ValueError):
    pass


@dataclass
class Check:
    name: str
    verdict: bool
    witness: Optional[dict] = None
    artifact: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.artifact is not None:
            d["artifact"] = self.artifact
        return d


@dataclass
class VerificationReport:
    subject: dict
    curve: dict
    checks: List[Check] = field(default_factory=list)
    conventions: Dict[str, str] = field(default_factory=lambda: dict(CONVENTIONS))
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(c.verdict for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, with_timings: bool = False) -> dict:
        return {
            "subject": self.subject,
            "curve": self.curve,
            "conventions": self.conventions,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
            "timings": {k: round(v, 4) for k, v in sorted(self.timings.items())} if with_timings else {},
        }

    def to_json(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_dict(with_timings), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.subject.get('label', self.subject.get('element'))} on {self.curve['name']}: "
                 f"{'PASS' if self.verdict else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.verdict else 'FAIL'}] {c.name}")
            if c.witness:
                lines.append(f"      witness: {json.dumps(c.witness, sort_keys=True)}")
        return "\n".join(lines)


def _subject(e: FockElement, label: str | None, **extra) -> dict:
    d = {"element": str(e)}
    if label:
        d["label"] = label
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# the morphism


def alphas(curve: WeierstrassCurve, n: int, N: int | None = None) -> List[Poly]:
    """alpha_1..alpha_n; with an explicit series precision N, requesting n > N is an error."""
    if N is not None and n > N:
        raise PrecisionError(f"mode b_-{n} needs alpha_{n}, beyond series precision {N}")
    return invariant_differential(curve, max(n, 4))[:n]


def psi_p_polynomial(e: FockElement, curve: WeierstrassCurve, N: int | None = None) -> Dict[int, Poly]:
    """Image of e as a polynomial sum_k c_k P^k with c_k in Q[params]."""
    al = alphas(curve, e.max_mode(), N) if e.max_mode() else []
    out: Dict[int, Poly] = {}
    for mono, c in e.terms.items():
        coeff = Poly.const(curve.params, c)
        for m in mono:
            coeff = coeff * al[m - 1]
        k = len(mono)
        out[k] = out[k] + coeff if k in out else coeff
    return {k: v for k, v in out.items() if v}


def psi_image(e: FockElement, curve: WeierstrassCurve, N: int | None = None) -> DividedOp:
    op = DividedOp.zero(curve)
    for k, c in sorted(psi_p_polynomial(e, curve, N).items()):
        op = op + tangent_power(curve, k) * c
    return op


def psi_local(e: FockElement, curve: WeierstrassCurve, N: int = DEFAULT_PRECISION) -> LocalOp:
    poly = psi_p_polynomial(e, curve, N)
    return from_p_polynomial([(c, k) for k, c in sorted(poly.items())], curve, N)


# ---------------------------------------------------------------------------
# verifiers


def verify_integral(e: FockElement, curve: WeierstrassCurve, label: str | None = None) -> VerificationReport:
    """Coefficient integrality of the image plus the action-integrality cross-check."""
    rep = VerificationReport(_subject(e, label), curve.describe())
    t0 = time.perf_counter()
    op = psi_image(e, curve)
    rep.timings["psi_image"] = time.perf_counter() - t0
    res = is_integral(op)
    rep.checks.append(Check("chart_integrality", res.integral, res.witness, op.serialize() if res.integral else None))
    t0 = time.perf_counter()
    act = action_integrality(op)
    rep.timings["action_integrality"] = time.perf_counter() - t0
    rep.checks.append(Check("action_integrality", act.integral, act.witness))
    return rep


def verify_global(e: FockElement, curve: WeierstrassCurve, N: int = DEFAULT_PRECISION, label: str | None = None) -> VerificationReport:
    """Regularity and integrality of the local expansion at O, modulo z^N."""
    rep = VerificationReport(_subject(e, label, precision=N), curve.describe())
    order = max((len(m) for m in e.terms), default=0)
    effective = N - max(order - 1, 0)
    if effective < 2 or e.max_mode() > N:
        rep.checks.append(
            Check("precision", False, {"requested": N, "operator_order": order, "max_mode": e.max_mode(),
                                       "reason": "precision insufficient"})
        )
        return rep
    t0 = time.perf_counter()
    loc = psi_local(e, curve, N)
    rep.timings["local_expansion"] = time.perf_counter() - t0
    bad = loc.first_bad_coefficient()
    rep.checks.append(
        Check("regular_integral_at_O", bad is None, bad, f"checked modulo z^{loc.precision}")
    )
    return rep


def _twist(op: LocalOp, prime: int) -> LocalOp:
    if not op.symbols:
        return op
    powers = {s: Poly.var(op.symbols, s) ** prime for s in op.symbols}
    return op.map_coefficients(lambda c: c.subs(powers))


def verify_frobenius(
    e: FockElement,
    curve: WeierstrassCurve,
    prime: int,
    N: int = DEFAULT_PRECISION,
    label: str | None = None,
    twist: bool = True,
) -> VerificationReport:
    """descent(local Psi(e) mod p) against local Psi(Frob(e)) mod p.

    With ``twist`` the target side has every curve parameter t replaced by t^p,
    which is what the descent produces on coefficients; with integer
    coefficients the twist is the identity mod p.
    """
    rep = VerificationReport(_subject(e, label, prime=prime, precision=N, twist=twist), curve.describe())
    if not twist:
        rep.conventions.pop("frobenius_twist")
    if not curve.is_integral():
        rep.checks.append(Check("frobenius_compatibility", False, {"reason": "curve coefficients not integral"}))
        return rep
    try:
        target = frobenius_pi(e, prime)
    except NonIntegralError as exc:
        rep.checks.append(Check("frobenius_compatibility", False, {"reason": "element not integral", **(exc.witness or {})}))
        return rep
    t0 = time.perf_counter()
    lhs_full = psi_local(e, curve, N)
    try:
        lhs = frobenius_descent(lhs_full.reduce_mod_p(prime), prime)
    except (NonIntegralError, ValueError) as exc:
        rep.checks.append(Check("frobenius_compatibility", False, {"reason": f"local image not integral: {exc}"}))
        return rep
    rhs = psi_local(target, curve, N).reduce_mod_p(prime)
    if twist:
        rhs = _twist(rhs, prime)
    rep.timings["frobenius"] = time.perf_counter() - t0
    prec = min(lhs.precision, rhs.precision)
    ok = lhs.agrees_with(rhs, prec)
    witness = None
    if not ok:
        for j in sorted(set(lhs.terms) | set(rhs.terms)):
            a, b = lhs.coefficient(j).truncate(prec), rhs.coefficient(j).truncate(prec)
            if not a.agrees_with(b):
                witness = {"order": j, "descended": str(a), "target": str(b)}
                break
    rep.subject["frobenius_image"] = str(target)
    rep.checks.append(Check("frobenius_compatibility", ok, witness, f"compared modulo z^{prec}"))
    return rep


# ---------------------------------------------------------------------------
# batch driver


def lambda_subjects(max_degree: int, scales: Sequence[int] = (1, 2)) -> List[Tuple[str, FockElement]]:
    """Monomials in the generators Lambda_n(b_-r) (n >= 1, r in scales) of total Lambda-degree sum n <= max_degree."""
    gens = [(n, r) for n in range(1, max_degree + 1) for r in scales]
    out = []
    for size in range(1, max_degree + 1):
        for combo in combinations_with_replacement(gens, size):
            if sum(n for n, _ in combo) > max_degree:
                continue
            e = FockElement.vacuum()
            for n, r in combo:
                e = e * generator(n, r)
            label = "*".join(f"L{n}(b_-{r})" for n, r in combo)
            out.append((label, e))
    return out


@dataclass
class BatchResult:
    curve: dict
    config: dict
    reports: List[VerificationReport]

    @property
    def verdict(self) -> bool:
        return all(r.verdict for r in self.reports)

    def findings(self) -> List[dict]:
        out = []
        for r in self.reports:
            for c in r.checks:
                if not c.verdict:
                    out.append({"subject": r.subject, "check": c.name, "witness": c.witness})
        return out

    def to_dict(self, with_timings: bool = False) -> dict:
        return {
            "curve": self.curve,
            "config": self.config,
            "summary": {
                "subjects": len(self.reports),
                "passed": sum(r.verdict for r in self.reports),
                "verdict": self.verdict,
            },
            "findings": self.findings(),
            "reports": [r.to_dict(with_timings) for r in self.reports],
        }

    def to_json(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_dict(with_timings), indent=2, sort_keys=True)

    def to_text(self) -> str:
        head = (f"batch on {self.curve['name']} {self.config}: "
                f"{sum(r.verdict for r in self.reports)}/{len(self.reports)} subjects pass")
        return "\n".join([head] + [r.to_text() for r in self.reports])


def batch_verify(
    curve: WeierstrassCurve,
    max_degree: int,
    primes: Sequence[int] = (),
    N: int = DEFAULT_PRECISION,
    scales: Sequence[int] = (1, 2),
) -> BatchResult:
    """Run all verifiers on every Lambda-monomial subject; failures are findings, never exceptions."""
    reports = []
    for label, e in lambda_subjects(max_degree, scales):
        merged = VerificationReport(_subject(e, label, precision=N), curve.describe())
        parts = [verify_integral(e, curve, label), verify_global(e, curve, N, label)]
        for p in primes:
            parts.append(verify_frobenius(e, curve, p, N, label))
        for part in parts:
            for c in part.checks:
                if "prime" in part.subject:
                    c = Check(f"{c.name}[p={part.subject['prime']}]", c.verdict, c.witness, c.artifact)
                merged.checks.append(c)
            for k, v in part.timings.items():
                merged.timings[k] = merged.timings.get(k, 0.0) + v
        reports.append(merged)
    config = {"max_degree": max_degree, "primes": list(primes), "precision": N, "scales": list(scales)}
    return BatchResult(curve.describe(), config, reports)
