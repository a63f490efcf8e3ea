import math
import random
from fractions import Fraction

from mazurtate.cusps import boundary_space_matrix, cusp_classes
from mazurtate.linalg import rref_mod_p
from mazurtate.modsym import INFINITY, _euler_phi, apply_matrix_to_cusp, as_cusp, build_space

from .test_modsym import random_gamma0


def test_class_counts():
    assert len(cusp_classes(26)) == 4
    assert len(cusp_classes(11)) == 2
    assert len(cusp_classes(1)) == 1


def test_class_count_formula_random_levels():
    rng = random.Random(0)
    for _ in range(30):
        N = rng.randint(1, 100)
        expected = sum(_euler_phi(math.gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
        assert len(cusp_classes(N)) == expected


def test_n26_representatives_match_expected_cusps():
    table = cusp_classes(26)
    ids = {
        table.classify(INFINITY),
        table.classify(0),
        table.classify(Fraction(1, 2)),
        table.classify(Fraction(1, 13)),
    }
    assert len(ids) == 4  # the four stated cusps hit all four classes


def test_classification_constant_on_orbits():
    rng = random.Random(5)
    for N in (11, 26, 50, 174):
        table = cusp_classes(N)
        for _ in range(100):
            cusp = as_cusp((rng.randint(-40, 40), rng.randint(0, 40)))
            gamma = random_gamma0(N, rng)
            assert table.classify(apply_matrix_to_cusp(gamma, cusp)) == table.classify(cusp)


def test_infinity_equivalent_to_one_over_level():
    table = cusp_classes(26)
    assert table.classify(INFINITY) == table.classify(Fraction(1, 26))
    assert table.classify(0) == table.classify(5)  # integers are in the class of 0


def test_boundary_matrix_ranks_and_constants():
    sp = build_space(11)
    B, table = boundary_space_matrix(sp, 5)
    assert len(rref_mod_p(B, 5)[1]) == len(table) - 1 == 1
    sp = build_space(26)
    B, table = boundary_space_matrix(sp, 7)
    assert len(rref_mod_p(B, 7)[1]) <= 3
    # the all-ones vector lies in the kernel of the transpose
    for row in B:
        assert sum(row) % 7 == 0


def test_boundary_rows_satisfy_manin_relations():
    # a random psi induces generator values B.psi that obey the S/T relations
    rng = random.Random(6)
    for N, p in ((26, 7), (50, 5)):
        sp = build_space(N)
        B, table = boundary_space_matrix(sp, p)
        psi = [rng.randrange(p) for _ in range(len(table))]
        vals = [sum(B[i][k] * psi[k] for k in range(len(psi))) % p for i in range(len(sp.p1))]
        for i in range(len(sp.p1)):
            assert (vals[i] + vals[sp.sigma[i]]) % p == 0
            assert (vals[i] + vals[sp.tau[i]] + vals[sp.tau[sp.tau[i]]]) % p == 0
