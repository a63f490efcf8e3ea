import math
import random
from fractions import Fraction

import pytest

from mazurtate.errors import NotOrdinary, PrecisionInsufficient
from mazurtate.padics import PAdic, unit_root, valuation


def test_valuation_examples():
    assert valuation(Fraction(1, 7), 7) == -1
    assert valuation(Fraction(0), 5) == math.inf
    assert valuation(Fraction(50, 4), 5) == 2


def test_valuation_rejects_non_prime():
    with pytest.raises(ValueError):
        valuation(Fraction(1), 6)
    with pytest.raises(ValueError):
        valuation(Fraction(1), 2)


def test_valuation_multiplicative():
    rng = random.Random(0)
    for _ in range(300):
        p = rng.choice([3, 5, 7, 11])
        x = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 500))
        y = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 500))
        assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


def test_unit_root_mod_p_is_ap():
    alpha = unit_root(1, 5, 1)
    assert alpha.residue % 5 == 1


def test_unit_root_matches_brute_force_scan():
    # oracle: scan every residue mod 5^4 for roots of x^2 - x + 5
    # congruent to a_p = 1 mod 5
    m = 5**4
    roots = [x for x in range(m) if (x * x - x + 5) % m == 0 and x % 5 == 1]
    assert len(roots) == 1
    assert unit_root(1, 5, 4).residue == roots[0]


def test_unit_root_not_ordinary():
    with pytest.raises(NotOrdinary):
        unit_root(5, 5, 3)


def test_unit_root_precision_coherence():
    rng = random.Random(1)
    for _ in range(50):
        p = rng.choice([3, 5, 7])
        a_p = rng.randint(-2 * p, 2 * p)
        if a_p % p == 0:
            continue
        big = unit_root(a_p, p, 9)
        for smaller in (1, 3, 6):
            assert big.residue % p**smaller == unit_root(a_p, p, smaller).residue
        # a unit, and a root to stated precision
        assert big.valuation() == 0
        assert (big * big - a_p * big + p).is_zero_to_precision


def test_padic_arithmetic_tracks_min_precision():
    x = PAdic(5, 7, 6)
    y = PAdic(5, 3, 4)
    assert (x + y).precision == 4
    assert (x * y).precision == 4
    assert (x - y).precision == 4


def test_padic_division_by_positive_valuation_loses_precision():
    x = PAdic(5, 50, 6)
    y = PAdic(5, 5, 6)
    q = x / y
    assert q.precision == 5
    assert q.residue == 10
    with pytest.raises(PrecisionInsufficient):
        PAdic(5, 1, 6) / PAdic(5, 5, 6)  # quotient would leave Z_p
    with pytest.raises(PrecisionInsufficient):
        PAdic(5, 5, 1) / PAdic(5, 5, 1)  # precision would drop to 0


def test_padic_zero_to_precision_is_flagged():
    z = PAdic(5, 5**4, 4)
    assert z.is_zero_to_precision
    with pytest.raises(PrecisionInsufficient):
        z.valuation()
    assert z.valuation_lower_bound() == 4


def test_padic_from_rational_requires_integrality():
    x = PAdic.from_rational(Fraction(3, 4), 5, 3)
    assert (4 * x.residue - 3) % 5**3 == 0
    with pytest.raises(ValueError):
        PAdic.from_rational(Fraction(1, 5), 5, 3)


def test_padic_inverse_and_equality():
    x = PAdic(7, 12, 5)
    assert (x * x.inverse()) == 1
    assert PAdic(7, 5, 3) == PAdic(7, 5 + 7**3, 5)
