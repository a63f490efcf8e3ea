import pytest

from mazurtate.curves import EllipticCurve
from mazurtate.errors import BoundExceeded, InputError

from .conftest import make_curve


def brute_force_count(curve, ell):
    """Oracle: enumerate every affine point pair plus infinity."""
    cnt = 1
    for x in range(ell):
        for y in range(ell):
            lhs = y * y + curve.a1 * x * y + curve.a3 * y
            rhs = x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6
            if (lhs - rhs) % ell == 0:
                cnt += 1
    return cnt


def test_11a_a5_equals_1_by_direct_count():
    curve = make_curve("11a")
    assert 5 + 1 - brute_force_count(curve, 5) == 1
    assert curve.a_ell(5) == 1


def test_11a_split_multiplicative_at_11():
    curve = make_curve("11a")
    assert curve.reduction_type(11) == "split"
    assert curve.a_ell(11) == 1
    # the quadratic-residue criterion on -c6 agrees
    assert pow(-curve.c6 % 11, (11 - 1) // 2, 11) == 1


def test_hasse_bound_good_primes():
    for label in ("11a", "26b1", "50b1", "174b1"):
        curve = make_curve(label)
        for ell in (2, 3, 5, 7, 11, 13, 17, 19, 23):
            if curve.conductor % ell == 0:
                continue
            a = curve.a_ell(ell)
            assert a * a <= 4 * ell


def test_point_count_matches_oracle_on_samples():
    curve = make_curve("26b1")
    for ell in (3, 5, 7, 11, 17):
        assert curve.count_points(ell) == brute_force_count(curve, ell)


def test_reduction_types_of_fixtures():
    assert make_curve("26b1").reduction_type(2) == "split"
    assert make_curve("26b1").reduction_type(13) == "nonsplit"
    assert make_curve("50b1").reduction_type(5) == "additive"
    assert make_curve("50b1").a_ell(5) == 0
    assert make_curve("174b1").reduction_type(29) == "split"


def test_torsion_congruence_signatures():
    # rational p-torsion forces a_ell = ell + 1 mod p at good ell
    for label, p in (("11a", 5), ("26b1", 7), ("50b1", 5), ("174b1", 7)):
        curve = make_curve(label)
        for ell in range(2, 50):
            if not all(ell % d for d in range(2, ell)) or ell == 1:
                continue
            if curve.conductor % ell == 0:
                continue
            assert (curve.a_ell(ell) - ell - 1) % p == 0, (label, ell)


def test_good_ordinary_detection():
    assert make_curve("11a").is_good_ordinary(5)
    assert make_curve("26b1").is_good_ordinary(7)
    assert not make_curve("50b1").is_good_ordinary(5)


def test_bound_exceeded():
    with pytest.raises(BoundExceeded):
        make_curve("11a").a_ell(100003, bound=1000)


def test_input_validation():
    with pytest.raises(InputError):
        EllipticCurve(0, 0, 0, 0, 0, conductor=11)  # singular
    with pytest.raises(InputError):
        EllipticCurve(0, -1, 1, -10, -20, conductor=7)  # 11 | disc but not 7


def test_json_roundtrip(tmp_path):
    curve = make_curve("26b1")
    path = tmp_path / "c.json"
    path.write_text(__import__("json").dumps(curve.to_dict()))
    loaded = EllipticCurve.from_json_file(path)
    assert loaded.to_dict() == curve.to_dict()
    assert loaded.lratio == curve.lratio


def test_discriminants():
    assert make_curve("11a").discriminant == -(11**5)
    assert make_curve("26b1").discriminant == -(2**7) * 13
    assert make_curve("50b1").discriminant == -(2**5) * 5**2
    assert abs(make_curve("174b1").discriminant) == 2**7 * 3**7 * 29
