"""Elliptic curves over Q: Weierstrass quantities, reduction types, a_ell.

The conductor is a required input (no Tate's algorithm here); it is validated
against the discriminant.  Good-reduction eigenvalues come from brute-force
point counting; at bad primes a_ell = ell - #E^ns(F_ell), which covers the
split/nonsplit/additive trichotomy uniformly (including ell = 2, 3 where the
quadratic-residue test on -c6 breaks down).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundExceeded, InputError
from .padics import is_prime

DEFAULT_ELL_BOUND = 100000


def _legendre(a: int, ell: int) -> int:
    a %= ell
    if a == 0:
        return 0
    return 1 if pow(a, (ell - 1) // 2, ell) == 1 else -1


@dataclass
class EllipticCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    label: str | None = None
    lratio: Fraction | None = None  # L(E,1)/Omega_E, supplied (Neron normalization)
    lratio_source: str | None = None
    _ap_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.discriminant == 0:
            raise InputError("singular Weierstrass model")
        if self.conductor < 1:
            raise InputError("conductor must be positive")
        for p in self.bad_primes():
            if self.conductor % p != 0:
                raise InputError(
                    f"prime {p} divides the discriminant but not the stated conductor {self.conductor}"
                )

    # -- classical b/c quantities --

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -(self.b2**3) + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        return -self.b2 * self.b2 * self.b8 - 8 * self.b4**3 - 27 * self.b6 * self.b6 + 9 * self.b2 * self.b4 * self.b6

    def bad_primes(self):
        # primes dividing the discriminant (= bad reduction for a minimal model)
        n = abs(self.discriminant)
        out = []
        d = 2
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            out.append(n)
        return out

    # -- point counts and eigenvalues --

    def count_points(self, ell: int) -> int:
        """#E(F_ell) counting every projective point of the reduced model."""
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        cnt = 1  # point at infinity
        if ell == 2:
            for x in range(2):
                for y in range(2):
                    if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                        cnt += 1
            return cnt
        for x in range(ell):
            b = (a1 * x + a3) % ell
            f = (x**3 + a2 * x * x + a4 * x + a6) % ell
            cnt += 1 + _legendre(b * b + 4 * f, ell)
        return cnt

    def singular_points(self, ell: int):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        pts = []
        for x in range(ell):
            for y in range(ell):
                F = (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % ell
                Fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % ell
                Fy = (2 * y + a1 * x + a3) % ell
                if F == 0 and Fx == 0 and Fy == 0:
                    pts.append((x, y))
        return pts

    def reduction_type(self, ell: int) -> str:
        """'good', 'split', 'nonsplit' or 'additive' at ell."""
        if self.conductor % ell != 0:
            return "good"
        v = 0
        n = self.conductor
        while n % ell == 0:
            n //= ell
            v += 1
        if v >= 2:
            return "additive"
        return "split" if self.a_ell(ell) == 1 else "nonsplit"

    def a_ell(self, ell: int, bound: int = DEFAULT_ELL_BOUND) -> int:
        """Hecke eigenvalue a_ell, cached."""
        if ell in self._ap_cache:
            return self._ap_cache[ell]
        if not is_prime(ell):
            raise InputError(f"{ell} is not prime")
        if ell > bound:
            raise BoundExceeded(f"ell = {ell} exceeds the point-counting bound {bound}")
        if self.conductor % ell != 0:
            a = ell + 1 - self.count_points(ell)
            if a * a > 4 * ell:
                raise InputError(f"a_{ell} = {a} violates the Hasse bound; bad input model")
        else:
            # ell - #E^ns(F_ell): +-1 multiplicative, 0 additive
            nonsingular = self.count_points(ell) - len(self.singular_points(ell))
            a = ell - nonsingular
            if ell >= 5 and self._multiplicity(ell) == 1:
                # cross-check against the quadratic-residue criterion on -c6
                assert a == _legendre(-self.c6, ell), "split/nonsplit criteria disagree"
        self._ap_cache[ell] = a
        return a

    def _multiplicity(self, ell: int) -> int:
        v, n = 0, self.conductor
        while n % ell == 0:
            n //= ell
            v += 1
        return v

    def is_good_ordinary(self, p: int) -> bool:
        return self.conductor % p != 0 and self.a_ell(p) % p != 0

    # -- JSON interchange --

    @classmethod
    def from_dict(cls, d: dict) -> "EllipticCurve":
        try:
            lratio = None
            if d.get("lratio") is not None:
                lratio = Fraction(str(d["lratio"]))
            return cls(
                a1=int(d["a1"]),
                a2=int(d["a2"]),
                a3=int(d["a3"]),
                a4=int(d["a4"]),
                a6=int(d["a6"]),
                conductor=int(d["conductor"]),
                label=d.get("label"),
                lratio=lratio,
                lratio_source=d.get("lratio_source"),
            )
        except (KeyError, ValueError) as exc:
            raise InputError(f"malformed curve record: {exc}") from exc

    @classmethod
    def from_json_file(cls, path) -> "EllipticCurve":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = {
            "a1": self.a1,
            "a2": self.a2,
            "a3": self.a3,
            "a4": self.a4,
            "a6": self.a6,
            "conductor": self.conductor,
        }
        if self.label:
            d["label"] = self.label
        if self.lratio is not None:
            d["lratio"] = str(self.lratio)
        if self.lratio_source:
            d["lratio_source"] = self.lratio_source
        return d
