import pytest
from fractions import Fraction

from mazurtate.curves import EllipticCurve
from mazurtate.hecke import eigensymbol
from mazurtate.modsym import build_space

CURVE_DATA = {
    "11a": dict(a1=0, a2=-1, a3=1, a4=-10, a6=-20, conductor=11, lratio=Fraction(1, 5)),
    "26b1": dict(a1=1, a2=-1, a3=1, a4=-3, a6=3, conductor=26, lratio=Fraction(1, 7)),
    "50b1": dict(a1=1, a2=1, a3=1, a4=-3, a6=1, conductor=50, lratio=Fraction(1, 5)),
    "174b1": dict(a1=-5, a2=-18, a3=-18, a4=0, a6=0, conductor=174, lratio=Fraction(1)),
}


def make_curve(label):
    return EllipticCurve(label=label, **CURVE_DATA[label])


@pytest.fixture(scope="session")
def curves():
    return {label: make_curve(label) for label in CURVE_DATA}


@pytest.fixture(scope="session")
def spaces():
    return {N: build_space(N) for N in (11, 26, 50, 174)}


@pytest.fixture(scope="session")
def eigensymbols(curves, spaces):
    return {
        label: eigensymbol(spaces[curve.conductor], curve)
        for label, curve in curves.items()
    }
