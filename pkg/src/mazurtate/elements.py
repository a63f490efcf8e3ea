"""Mazur-Tate elements of a modular symbol, p-stabilization, norm relations.

The raw element of level n collects the values phi({inf}-{a/p^n}) over units
a into the group ring of (Z/p^n)^x; the level-n element proper is its image
in the ring of the degree-p^n layer, indexed by powers of gamma through the
one-unit discrete logarithm.  Stabilized elements carry precision-tracked
p-adic coefficients derived from the unit root alpha.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groupring import GroupLevel, GroupRingElement
from .padics import PAdic

DEFAULT_GUARD_DIGITS = 20


def working_precision(n_max: int, mu_floor: int = 0) -> int:
    return n_max + abs(mu_floor) + DEFAULT_GUARD_DIGITS


@dataclass(frozen=True)
class RawMazurTateElement:
    """Element of Q[(Z/p^n)^x]: value phi({inf}-{a/p^n}) attached to sigma_a."""

    p: int
    n: int
    values: dict  # unit a mod p^n -> Fraction

    def coefficient_sum(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def project_to_layer(self, generator_unit: int = 0) -> GroupRingElement:
        """Image in the group ring of the degree-p^{n-1} layer."""
        level = GroupLevel(self.p, self.n - 1, generator_unit)
        coeffs = [Fraction(0)] * level.order
        for a, v in self.values.items():
            coeffs[level.exponent_of(a)] += v
        return GroupRingElement(level, coeffs)


def raw_mazur_tate(sym, p: int, n: int) -> RawMazurTateElement:
    """Level-n raw element (n >= 1); sym only needs value_infinity_minus."""
    if n < 1:
        raise ValueError("raw elements start at level 1")
    q = p**n
    values = {a: sym.value_infinity_minus(Fraction(a, q)) for a in range(1, q) if a % p}
    return RawMazurTateElement(p, n, values)


def mazur_tate(sym, p: int, n: int, generator_unit: int = 0) -> GroupRingElement:
    """Level-n Mazur-Tate element (n >= 0) on the degree-p^n layer."""
    return raw_mazur_tate(sym, p, n + 1).project_to_layer(generator_unit)


def stabilized_mazur_tate(sym, alpha: PAdic, p: int, n: int) -> GroupRingElement:
    """theta_n of the p-stabilized symbol, via the corestriction identity.

    For n >= 1 this is theta_n(phi) - alpha^{-1} cor(theta_{n-1}(phi)); at
    n = 0 the scaled-divisor evaluator is applied directly.
    """
    precision = alpha.precision
    inv_alpha = alpha.inverse()
    if n == 0:
        scaled = sym.scaled(p)
        s_new = Fraction(0)
        s_old = Fraction(0)
        for a in range(1, p):
            s_new += sym.value_infinity_minus(Fraction(a, p))
            s_old += scaled.value_infinity_minus(Fraction(a, p))
        coeff = PAdic.from_rational(s_new, p, precision) - inv_alpha * PAdic.from_rational(s_old, p, precision)
        return GroupRingElement(GroupLevel(p, 0), [coeff])
    plain = mazur_tate(sym, p, n).to_padic(precision)
    lifted = mazur_tate(sym, p, n - 1).corestriction().to_padic(precision)
    return plain - lifted.scale(inv_alpha)


def stabilized_mazur_tate_direct(sym, alpha: PAdic, p: int, n: int) -> GroupRingElement:
    """Same element, recomputed from stabilized values divisor by divisor."""
    precision = alpha.precision
    inv_alpha = alpha.inverse()
    if n == 0:
        return stabilized_mazur_tate(sym, alpha, p, n)
    level = GroupLevel(p, n)
    scaled = sym.scaled(p)
    q = p ** (n + 1)
    s_new = [Fraction(0)] * level.order
    s_old = [Fraction(0)] * level.order
    for a in range(1, q):
        if a % p == 0:
            continue
        k = level.exponent_of(a)
        s_new[k] += sym.value_infinity_minus(Fraction(a, q))
        s_old[k] += scaled.value_infinity_minus(Fraction(a, q))
    coeffs = [
        PAdic.from_rational(x, p, precision) - inv_alpha * PAdic.from_rational(y, p, precision)
        for x, y in zip(s_new, s_old)
    ]
    return GroupRingElement(level, coeffs)


@dataclass(frozen=True)
class ResidualReport:
    """Comparison of two p-adic group-ring elements coefficient by coefficient."""

    level_n: int
    passed: bool
    residual_valuation_floors: tuple

    @property
    def min_floor(self) -> int:
        return min(self.residual_valuation_floors)


def _compare(a: GroupRingElement, b: GroupRingElement, n: int) -> ResidualReport:
    diff = a - b
    floors = tuple(c.valuation_lower_bound() for c in diff.coeffs)
    passed = all(c.is_zero_to_precision for c in diff.coeffs)
    return ResidualReport(n, passed, floors)


def check_norm_relation(sym, alpha: PAdic, p: int, n: int) -> ResidualReport:
    """Recompute theta_n(phi^alpha) along both routes and compare exactly.

    Left: divisor-level stabilized evaluation.  Right: group-ring combination
    theta_n - alpha^{-1} cor(theta_{n-1}).  The difference must vanish to
    working precision.
    """
    if n < 1:
        raise ValueError("the norm relation compares levels n and n-1; need n >= 1")
    left = stabilized_mazur_tate_direct(sym, alpha, p, n)
    right = stabilized_mazur_tate(sym, alpha, p, n)
    return _compare(left, right, n)


def check_norm_compatibility(sym, alpha: PAdic, p: int, n: int) -> ResidualReport:
    """project(theta_{n+1}(phi^alpha)) = alpha * theta_n(phi^alpha).

    Holds exactly (to precision) precisely when alpha is the unit root and
    sym is the matching eigensymbol; fails loudly for a corrupted alpha.
    """
    upper = stabilized_mazur_tate(sym, alpha, p, n + 1).project()
    lower = stabilized_mazur_tate(sym, alpha, p, n).scale(alpha)
    return _compare(upper, lower, n)


def interpolation_at_trivial_character(sym, alpha: PAdic, p: int) -> ResidualReport:
    """Augmentation identity for the bottom stabilized element.

    The norm-compatible system divides theta_n(phi^alpha) by alpha^{n+1}, so
    the bottom layer satisfies
        alpha^{-1} * aug(theta_0(phi^alpha)) = (1 - 1/alpha)^2 * phi({inf}-{0}).
    """
    aug = stabilized_mazur_tate(sym, alpha, p, 0).augmentation()
    inv_alpha = alpha.inverse()
    one = PAdic.from_rational(1, p, alpha.precision)
    phi0 = PAdic.from_rational(sym.value_infinity_minus(0), p, alpha.precision)
    expected = (one - inv_alpha) * (one - inv_alpha) * phi0
    diff = inv_alpha * aug - expected
    return ResidualReport(0, diff.is_zero_to_precision, (diff.valuation_lower_bound(),))


def theta0_interpolation_factor(curve, p: int) -> int:
    """a_p - eps(p) - 1 with eps(p) = 1 at good reduction and 0 at bad.

    theta_0 equals this factor times phi({inf}-{0}) sigma_1; at good primes it
    is the familiar a_p - 2.
    """
    eps = 1 if curve.conductor % p != 0 else 0
    return curve.a_ell(p) - eps - 1


def check_theta0_identity(sym, curve, p: int) -> bool:
    """Exact test of theta_0 = (a_p - eps - 1) phi({inf}-{0}) sigma_1."""
    theta0 = mazur_tate(sym, p, 0)
    expected = Fraction(theta0_interpolation_factor(curve, p)) * sym.value_infinity_minus(0)
    return theta0.coeffs == (expected,)
