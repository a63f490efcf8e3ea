import math
import random
from fractions import Fraction

import pytest

from mazurtate.errors import NotAGenerator, PrecisionInsufficient, ZeroElement
from mazurtate.groupring import (
    GroupLevel,
    GroupRingElement,
    invariants_with_generator,
    one_unit_exponent,
    sum_cancellation_check,
)
from mazurtate.padics import PAdic


def test_t_basis_of_gamma():
    L = GroupLevel(5, 1)
    gamma = GroupRingElement(L, [0, 1, 0, 0, 0])
    assert gamma.t_coefficients() == [1, 1, 0, 0, 0]


def test_t_basis_of_norm_element():
    L = GroupLevel(5, 1)
    norm = GroupRingElement.norm_element(L)
    assert norm.t_coefficients() == [math.comb(5, k + 1) for k in range(5)]
    inv = norm.iwasawa_invariants()
    assert (inv.mu, inv.lam) == (0, 4)


def test_t_basis_roundtrip_random():
    rng = random.Random(0)
    for _ in range(100):
        p, n = rng.choice([(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)])
        L = GroupLevel(p, n)
        F = GroupRingElement(L, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(L.order)])
        assert GroupRingElement.from_t_coefficients(L, F.t_coefficients()) == F


def test_invariants_examples():
    L = GroupLevel(5, 1)
    F = GroupRingElement.from_t_coefficients(L, [Fraction(5), Fraction(1), Fraction(25), 0, 0])
    assert F.iwasawa_invariants().as_tuple() == (0, 1)
    G = GroupRingElement.identity(L).scale(5)
    assert G.iwasawa_invariants().as_tuple() == (1, 0)


def test_invariants_zero_element():
    with pytest.raises(ZeroElement):
        GroupRingElement.zero(GroupLevel(3, 1)).iwasawa_invariants()


def test_invariants_negative_mu():
    L = GroupLevel(3, 1)
    F = GroupRingElement(L, [Fraction(1, 9), 0, 0])
    inv = F.iwasawa_invariants()
    assert (inv.mu, inv.lam) == (-2, 0)


def test_corestriction_of_identity_is_norm():
    one = GroupRingElement.identity(GroupLevel(5, 0))
    assert one.corestriction() == GroupRingElement.norm_element(GroupLevel(5, 1))


def test_projection_composition_identities():
    rng = random.Random(1)
    for _ in range(50):
        p, n = rng.choice([(3, 1), (5, 1), (5, 2), (7, 1)])
        L = GroupLevel(p, n)
        F = GroupRingElement(L, [Fraction(rng.randint(-9, 9)) for _ in range(L.order)])
        assert F.corestriction().project() == F.scale(p)
    norm = GroupRingElement.norm_element(GroupLevel(5, 1))
    assert norm.project() == GroupRingElement.identity(GroupLevel(5, 0)).scale(5)
    assert GroupRingElement.zero(GroupLevel(5, 0)).corestriction().is_zero()


def test_scalar_shift_of_invariants():
    rng = random.Random(2)
    for _ in range(50):
        p, n = rng.choice([(3, 2), (5, 1), (7, 1)])
        L = GroupLevel(p, n)
        F = GroupRingElement(L, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(L.order)])
        if F.is_zero():
            continue
        inv = F.iwasawa_invariants()
        scaled = F.scale(Fraction(p**2, p + 2)).iwasawa_invariants()
        assert scaled.mu == inv.mu + 2
        assert scaled.lam == inv.lam


def test_generator_independence_examples():
    L = GroupLevel(5, 2)
    rng = random.Random(3)
    F = GroupRingElement(L, [Fraction(rng.randint(-9, 9), 5 ** rng.randint(0, 1)) for _ in range(25)])
    base = F.iwasawa_invariants().as_tuple()
    assert invariants_with_generator(F, 2).as_tuple() == base  # gamma' = gamma^2
    assert invariants_with_generator(F, 1).as_tuple() == base
    with pytest.raises(NotAGenerator):
        invariants_with_generator(F, 5)
    with pytest.raises(NotAGenerator):
        invariants_with_generator(F, 10)


def test_alternative_generator_unit_in_level():
    # the layer built on sigma_u for another unit u gives the same invariants
    F_default = GroupRingElement(GroupLevel(5, 2), [Fraction(k % 7 - 3, 5) for k in range(25)])
    inv = F_default.iwasawa_invariants()
    # sigma_{1+p} exponent table consistency
    assert one_unit_exponent(6, 5, 2) == 1
    with pytest.raises(NotAGenerator):
        GroupLevel(5, 2, generator_unit=1 + 25)  # 1 + p^2 is not a layer generator
    other = GroupLevel(5, 2, generator_unit=11)  # sigma_11 generates
    coeffs = [None] * 25
    for k in range(25):
        coeffs[other.exponent_of(pow(6, k, 125))] = F_default.coeffs[k]
    F_other = GroupRingElement(other, coeffs)
    assert F_other.iwasawa_invariants().as_tuple() == inv.as_tuple()


def test_sum_cancellation_constructed_instance():
    # F1 = T, F2 = -T + p*u: the sum has lambda 0 and mu >= 1
    L = GroupLevel(5, 1)
    F1 = GroupRingElement.from_t_coefficients(L, [0, 1, 0, 0, 0])
    F2 = GroupRingElement.from_t_coefficients(L, [Fraction(10), -1, 0, 0, 0])
    rep = sum_cancellation_check(F1, F2)
    assert rep.hypothesis_met
    assert rep.conclusion_holds
    assert rep.sum_invariants.lam == 0 and rep.sum_invariants.mu >= 1


def test_sum_cancellation_hypothesis_not_met():
    L = GroupLevel(5, 1)
    F1 = GroupRingElement.from_t_coefficients(L, [1, 0, 0, 0, 0])
    F2 = GroupRingElement.from_t_coefficients(L, [0, 1, 0, 0, 0])
    rep = sum_cancellation_check(F1, F2)
    assert not rep.hypothesis_met
    assert rep.conclusion_holds is None


def test_mixed_coefficient_kinds_forbidden():
    with pytest.raises(ValueError):
        GroupRingElement(GroupLevel(3, 1), [Fraction(1), PAdic(3, 1, 5), Fraction(0)])


def test_padic_invariants_and_precision_guard():
    L = GroupLevel(5, 1)
    F = GroupRingElement(L, [PAdic(5, 5, 6), PAdic(5, 1, 6), PAdic(5, 0, 6), PAdic(5, 0, 6), PAdic(5, 0, 6)])
    inv = F.iwasawa_invariants()
    assert (inv.mu, inv.lam) == (0, 0)  # T-coeffs start 5+1+... = 6, a unit
    allz = GroupRingElement(L, [PAdic(5, 0, 4)] * 5)
    with pytest.raises(PrecisionInsufficient):
        allz.iwasawa_invariants()


def test_serialization_roundtrip():
    L = GroupLevel(7, 1, generator_unit=8)
    F = GroupRingElement(L, [Fraction(k - 3, 7) for k in range(7)])
    assert GroupRingElement.from_dict(F.to_dict()) == F
    d = F.to_dict()
    assert all(isinstance(s, str) for s in d["coeffs"])


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        GroupRingElement(GroupLevel(3, 2), [Fraction(1)] * 3)
