import random
from fractions import Fraction

from mazurtate.groupring import GroupLevel, GroupRingElement
from mazurtate.synthetic import (
    TowerCase,
    check_tower,
    make_admissible_tower,
    make_plain_tower,
    run_tower_suite,
)


def test_pure_corestriction_tower():
    # theta_0 = p^{-1} sigma_1, all stabilized increments zero, alpha = 1
    theta = GroupRingElement(GroupLevel(5, 0), [Fraction(1, 5)])
    seq = [theta]
    for _ in range(3):
        theta = theta.corestriction()
        seq.append(theta)
    case = TowerCase(5, Fraction(1), tuple(seq), True)
    verdict = check_tower(case)
    assert verdict.applicable and verdict.conclusion_holds
    for n, el in enumerate(seq):
        inv = el.iwasawa_invariants()
        assert inv.mu == -1
        assert inv.lam == 5**n - 1


def test_admissible_towers_have_negative_constant_mu():
    rng = random.Random(4)
    case = make_admissible_tower(3, 3, rng, depth=2)
    mu0 = case.sequence[0].iwasawa_invariants().mu
    assert mu0 == -2
    for n, el in enumerate(case.sequence):
        inv = el.iwasawa_invariants()
        assert inv.mu == mu0
        assert inv.lam == 3**n - 1


def test_plain_towers_not_applicable():
    rng = random.Random(5)
    for _ in range(20):
        case = make_plain_tower(5, 2, rng)
        verdict = check_tower(case)
        assert not verdict.applicable
        assert verdict.conclusion_holds is None


def test_suite_200_admissible_sequences_zero_violations():
    total_admissible = 0
    for p in (3, 5):
        report = run_tower_suite(p, 3, 100, seed=7)
        assert report.passed
        total_admissible += report.applicable
    assert total_admissible == 200
