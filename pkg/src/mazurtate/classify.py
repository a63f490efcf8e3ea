"""Dichotomy classification of the Iwasawa invariants of Mazur-Tate elements.

At a good ordinary prime the level-n invariants either stabilize to the
invariants of the p-adic L-function (case A: every element integral) or the
lambda-invariant is maximal, p^n - 1, at every level with constant negative
mu given by ord_p of the normalized L-value (case B).  Verdicts here are
evidence-based at finite level; when neither pattern is certified within the
computed range the report says so instead of extrapolating.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .boundary import BoundaryCongruenceResult, boundary_congruence
from .curves import EllipticCurve
from .elements import (
    check_norm_relation,
    check_theta0_identity,
    mazur_tate,
    stabilized_mazur_tate,
    working_precision,
)
from .errors import NotGoodOrdinary, PrecisionInsufficient
from .hecke import eigensymbol, normalize
from .modsym import cached_space
from .padics import unit_root, valuation

MULTIPLICITY_ONE_NOTE = (
    "A boundary congruence at squarefree level is the mod-p multiplicity-one "
    "pattern for the Eisenstein eigenvalue system; a refutation for a curve "
    "with rational p-torsion indicates that multiplicity one fails."
)


@dataclass(frozen=True)
class MTRequest:
    curve: EllipticCurve
    p: int
    n_max: int = 2
    mode: str = "neron"  # "neron" | "cohomological"
    precision: int | None = None

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")
        if self.mode not in ("neron", "cohomological"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class LevelRow:
    n: int
    mu_coh: int
    mu: int            # in the operative normalization
    lam: int
    is_maximal: bool   # lam == p^n - 1
    integral: bool     # mu >= 0 in the operative normalization


@dataclass(frozen=True)
class StabilizedRow:
    n: int
    mu: int            # cohomological scale
    lam: int
    settled: bool = False  # equal to the previous level's (mu, lambda)


@dataclass
class DichotomyReport:
    label: str | None
    p: int
    n_max: int
    mode: str
    verdict: str                       # "CaseA" | "CaseB" | "Inconclusive"
    per_level: list = field(default_factory=list)
    stabilized: list = field(default_factory=list)
    lratio_valuation: int | None = None
    normalization_shift: int = 0
    norm_relation_verified: bool = False
    theta0_identity_verified: bool = False
    boundary: BoundaryCongruenceResult | None = None
    commentary: str = ""
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict in ("CaseA", "CaseB") else 2

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "p": self.p,
            "n_max": self.n_max,
            "mode": self.mode,
            "verdict": self.verdict,
            "lratio_valuation": self.lratio_valuation,
            "normalization_shift": self.normalization_shift,
            "norm_relation_verified": self.norm_relation_verified,
            "theta0_identity_verified": self.theta0_identity_verified,
            "per_level": [
                {
                    "n": r.n,
                    "mu_coh": r.mu_coh,
                    "mu": r.mu,
                    "lambda": r.lam,
                    "is_maximal": r.is_maximal,
                    "integral": r.integral,
                }
                for r in self.per_level
            ],
            "stabilized": [
                {"n": r.n, "mu": r.mu, "lambda": r.lam, "settled": r.settled} for r in self.stabilized
            ],
            "diagnostics": list(self.diagnostics),
            "commentary": self.commentary,
        }
        if self.boundary is not None:
            b = {
                "p": self.boundary.p,
                "solvable": self.boundary.solvable,
                "boundary_rank": self.boundary.boundary_rank,
                "cusp_classes": [f"{a}/{c}" for a, c in self.boundary.class_representatives],
            }
            if self.boundary.witness is not None:
                b["witness"] = list(self.boundary.witness.values)
            if self.boundary.certificate is not None:
                b["refutation"] = {
                    "combination": [[i, c] for i, c in self.boundary.certificate.combination],
                    "inconsistent_value": self.boundary.certificate.inconsistent_value,
                }
            d["boundary"] = b
        return d


def _require_good_ordinary(curve: EllipticCurve, p: int):
    if p == 2 or curve.conductor % p == 0:
        raise NotGoodOrdinary(f"p = {p} is not a good odd prime for conductor {curve.conductor}")
    if curve.a_ell(p) % p == 0:
        raise NotGoodOrdinary(f"a_{p} = {curve.a_ell(p)} is divisible by p; not ordinary")


def classify(request: MTRequest) -> DichotomyReport:
    """Run the full pipeline and classify into the finite-level dichotomy."""
    curve, p, n_max = request.curve, request.p, request.n_max
    _require_good_ordinary(curve, p)
    space = cached_space(curve.conductor)
    sym = eigensymbol(space, curve)
    sym, norm_data = normalize(sym, curve, request.mode)

    shift = 0
    lratio_val = None
    if request.mode == "neron":
        shift = int(valuation(norm_data.scalar, p))
        lratio_val = int(valuation(curve.lratio, p)) if curve.lratio else 0

    report = DichotomyReport(
        label=curve.label,
        p=p,
        n_max=n_max,
        mode=request.mode,
        verdict="Inconclusive",
        lratio_valuation=lratio_val,
        normalization_shift=shift,
    )

    elements = [mazur_tate(sym, p, n) for n in range(n_max + 1)]
    for n, theta in enumerate(elements):
        inv = theta.iwasawa_invariants()
        mu_op = inv.mu + shift
        report.per_level.append(
            LevelRow(n, inv.mu, mu_op, inv.lam, inv.lam == p**n - 1, mu_op >= 0)
        )

    report.theta0_identity_verified = check_theta0_identity(sym, curve, p)
    if not report.theta0_identity_verified:
        report.diagnostics.append("theta_0 interpolation identity failed")

    precision = request.precision or working_precision(n_max, min(0, shift))
    for _ in range(3):
        try:
            alpha = unit_root(curve.a_ell(p), p, precision)
            stabilized = [stabilized_mazur_tate(sym, alpha, p, n) for n in range(n_max + 1)]
            rows = []
            for n, s in enumerate(stabilized):
                inv = s.iwasawa_invariants()
                settled = bool(rows) and (inv.mu, inv.lam) == (rows[-1].mu, rows[-1].lam)
                rows.append(StabilizedRow(n, inv.mu, inv.lam, settled))
            report.stabilized = rows
            report.norm_relation_verified = all(
                check_norm_relation(sym, alpha, p, n).passed for n in range(1, n_max + 1)
            )
            break
        except PrecisionInsufficient:
            precision *= 2
    else:
        raise PrecisionInsufficient(f"stabilized invariants undetermined at precision {precision}")

    report.boundary = boundary_congruence(sym, p)
    if report.boundary.solvable or _has_rational_p_torsion_signature(curve, p):
        report.commentary = MULTIPLICITY_ONE_NOTE

    if request.mode == "neron" and curve.a_ell(p) != 2:
        # theta_0 = (a_p - 2) phi({inf}-{0}) sigma_1 forces this valuation
        expected_mu0 = lratio_val + int(valuation(Fraction(curve.a_ell(p) - 2), p))
        if report.per_level[0].mu != expected_mu0:
            report.diagnostics.append(
                f"mu(theta_0) = {report.per_level[0].mu} differs from "
                f"ord_p(lratio (a_p - 2)) = {expected_mu0}"
            )

    _apply_verdict(report, p, n_max, request.mode)
    return report


def _has_rational_p_torsion_signature(curve: EllipticCurve, p: int, ell_limit: int = 50) -> bool:
    """Eisenstein congruence signature a_ell = ell + 1 mod p at good ell."""
    ell = 2
    while ell <= ell_limit:
        if curve.conductor % ell and (curve.a_ell(ell) - ell - 1) % p:
            return False
        ell += 1
        while any(ell % d == 0 for d in range(2, int(ell**0.5) + 1)):
            ell += 1
    return True


def _apply_verdict(report: DichotomyReport, p: int, n_max: int, mode: str):
    rows = report.per_level
    if mode == "neron" and rows[0].mu < 0:
        # case-B pattern: constant negative mu, maximal lambda at every level
        ok = all(r.mu == rows[0].mu and r.is_maximal for r in rows)
        if ok:
            report.verdict = "CaseB"
        else:
            report.diagnostics.append(
                "mu(theta_0) < 0 but the constant-mu/maximal-lambda pattern broke"
            )
        return
    if not all(r.integral for r in rows):
        report.diagnostics.append(
            "non-integral level found without a negative mu at level 0; no verdict"
        )
        return
    if mode == "cohomological":
        report.diagnostics.append(
            "cohomological mode: integrality is automatic, case B is undetectable"
        )
    if n_max < 2:
        report.diagnostics.append("need n_max >= 2 to certify stabilization")
        return
    top, prev = report.stabilized[-1], report.stabilized[-2]
    if (top.mu, top.lam) != (prev.mu, prev.lam):
        report.diagnostics.append("stabilized invariants have not settled at the top levels")
        return
    for stab, plain in ((top, rows[-1]), (prev, rows[-2])):
        if (stab.mu, stab.lam) != (plain.mu_coh, plain.lam):
            report.diagnostics.append(
                f"level-{plain.n} invariants differ from the stabilized ones; not yet in the stable range"
            )
            return
    report.verdict = "CaseA"


@dataclass(frozen=True)
class MaximalityReport:
    holds: bool
    t: int
    ord_p_phi0: int
    alphas: tuple          # unit residues mod p^t satisfying the congruence
    conclusions_verified: bool | None


def maximality_criterion(sym, p: int, n_max: int, t: int = 1, sample_bound: int = 10000, rng=None) -> MaximalityReport:
    """Search for a unit alpha with phi({inf}-{a/p^{n+1}}) = alpha phi({inf}-{a/p^n}) mod p^t.

    Exhaustive over a when p^{n+1} <= sample_bound, random sampling beyond.
    When a witness exists and t > ord_p(phi({inf}-{0})), the level-n elements
    must have mu = ord_p(phi({inf}-{0})) and maximal lambda; that conclusion
    is re-verified on computed invariants.
    """
    import random

    rng = rng or random.Random(0)
    phi0 = sym.value_infinity_minus(0)
    if phi0 == 0:
        raise ValueError("criterion needs phi({inf}-{0}) nonzero")
    m = int(valuation(phi0, p))
    modulus = p**t
    candidates = [u for u in range(1, modulus) if u % p]
    for n in range(0, n_max + 1):
        q = p ** (n + 1)
        if q <= sample_bound:
            a_values = [a for a in range(1, q) if a % p]
        else:
            a_values = {rng.randrange(1, q) for _ in range(200)}
            a_values = [a for a in a_values if a % p] or [1]
        for a in a_values:
            lower = sym.value_infinity_minus(Fraction(a, p**n))
            upper = sym.value_infinity_minus(Fraction(a, q))
            if lower.denominator % p == 0 or upper.denominator % p == 0:
                raise ValueError("criterion needs a p-integral symbol")
            x = int(lower) % modulus if lower.denominator == 1 else (lower.numerator * pow(lower.denominator, -1, modulus)) % modulus
            y = int(upper) % modulus if upper.denominator == 1 else (upper.numerator * pow(upper.denominator, -1, modulus)) % modulus
            candidates = [u for u in candidates if (y - u * x) % modulus == 0]
            if not candidates:
                return MaximalityReport(False, t, m, (), None)
    if t <= m:
        return MaximalityReport(False, t, m, tuple(candidates), None)
    verified = True
    for n in range(n_max + 1):
        inv = mazur_tate(sym, p, n).iwasawa_invariants()
        if inv.mu != m or inv.lam != p**n - 1:
            verified = False
    return MaximalityReport(True, t, m, tuple(candidates), verified)
