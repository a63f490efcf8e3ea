"""Hecke operators on Manin symbols and eigensymbol extraction.

T_ell (ell coprime to the level) acts through Merel's family of integral
matrices of determinant ell; the one-dimensional eigenspace attached to a
rational newform is cut out by intersecting kernels of T_ell - a_ell on the
plus-subspace of the sign involution, walking primes in ascending order up to
the Sturm bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import EllipticCurve
from .errors import EigenspaceNotOneDimensional, InconsistentEigenvalues, RankPositive
from .linalg import column_stack, mat_mul, nullspace
from .modsym import ManinSymbolSpace, ModularSymbol, psi_index


def merel_matrices(n: int):
    """Merel's set of determinant-n integer matrices a > b >= 0, d > c >= 0."""
    for a in range(1, n + 1):
        for d in range((n + a - 1) // a, n + 2 - a):
            bc = a * d - n
            if bc == 0:
                for b in range(a):
                    yield a, b, 0, d
                for c in range(1, d):
                    yield a, 0, c, d
            else:
                for b in range((bc - 1) // (d - 1) + 1, a):
                    if bc % b == 0:
                        yield a, b, bc // b, d


def hecke_matrix(space: ManinSymbolSpace, ell: int):
    """Matrix of T_ell on basis coordinates (ell must not divide the level)."""
    if space.N % ell == 0:
        raise ValueError(f"T_{ell} via Merel matrices requires ell coprime to the level")
    N = space.N
    index = space.p1.index
    dim = space.dimension
    rows = []
    for b in space.basis:
        c, d = space.p1[b]
        acc = [Fraction(0)] * dim
        for p, q, r, s in merel_matrices(ell):
            expr = space.expressions[index((c * p + d * r) % N, (c * q + d * s) % N)]
            for t in range(dim):
                if expr[t]:
                    acc[t] += expr[t]
        rows.append(acc)
    return rows


def sturm_bound(space: ManinSymbolSpace) -> int:
    return -(-psi_index(space.N) // 6)


def _good_primes(N: int):
    ell = 2
    while True:
        if N % ell != 0:
            yield ell
        ell += 1
        while any(ell % d == 0 for d in range(2, int(math.isqrt(ell)) + 1)):
            ell += 1


def eigensymbol(space: ManinSymbolSpace, curve: EllipticCurve) -> ModularSymbol:
    """The plus-eigensymbol of the curve, cohomologically normalized.

    Intersects kernels of (T_ell - a_ell) inside the +1-eigenspace of the
    sign involution until the cut is one-dimensional.
    """
    if curve.conductor != space.N:
        raise ValueError("curve conductor does not match the space level")
    dim = space.dimension
    J = space.involution_matrix()
    jm = [row[:] for row in J]
    for i in range(dim):
        jm[i][i] -= 1
    K = nullspace(jm, dim)  # columns spanning the plus subspace
    if not K:
        raise InconsistentEigenvalues("plus-subspace is trivial")
    bound = sturm_bound(space)
    for ell in _good_primes(space.N):
        if ell > bound:
            raise EigenspaceNotOneDimensional(
                f"eigenspace still {len(K)}-dimensional past the Sturm bound {bound}"
            )
        a = curve.a_ell(ell)
        T = hecke_matrix(space, ell)
        Kmat = column_stack(K)
        M = mat_mul(T, Kmat)
        for i, col in enumerate(K):
            for r in range(dim):
                M[r][i] -= a * col[r]
        Z = nullspace(M, len(K))
        K = [[sum(Kmat[r][j] * z[j] for j in range(len(z))) for r in range(dim)] for z in Z]
        if not K:
            raise InconsistentEigenvalues(
                f"no symbol matches the eigenvalue system at ell = {ell}"
            )
        if len(K) == 1:
            break
    sym = ModularSymbol(space, K[0], sign="+")
    return _content_one(sym)


def _content_one(sym: ModularSymbol) -> ModularSymbol:
    """Rescale so all generator values are integers of collective gcd 1.

    Sign convention: the value at {inf}-{0} is made positive when nonzero,
    otherwise the first nonzero generator value is.
    """
    vals = sym.generator_values()
    nonzero = [v for v in vals if v]
    if not nonzero:
        return sym
    den = 1
    for v in nonzero:
        den = den * v.denominator // math.gcd(den, v.denominator)
    num = 0
    for v in nonzero:
        num = math.gcd(num, abs(v.numerator * (den // v.denominator)))
    scale = Fraction(den, num)
    anchor = sym.value_infinity_minus(0)
    lead = anchor if anchor else nonzero[0]
    if lead * scale < 0:
        scale = -scale
    return ModularSymbol(sym.space, [scale * c for c in sym.coords], sign=sym.sign)


@dataclass(frozen=True)
class NormalizationData:
    mode: str                      # "cohomological" | "neron"
    scalar: Fraction | None = None  # c with c * phi_stored = phi_Neron (neron mode)


def normalize(sym: ModularSymbol, curve: EllipticCurve, mode: str = "cohomological"):
    """Apply the requested normalization; returns (symbol, NormalizationData).

    The stored symbol is always the content-one integral one.  Neron mode does
    not rescale the coordinates: it records the scalar c with
    c * phi({inf}-{0}) = L(E,1)/Omega_E, and downstream reports shift
    mu-invariants by ord_p(c).
    """
    sym = _content_one(sym)
    if mode == "cohomological":
        return sym, NormalizationData("cohomological")
    if mode != "neron":
        raise ValueError(f"unknown normalization mode {mode!r}")
    if curve.lratio is None:
        raise RankPositive("neron mode requires the L(E,1)/Omega_E ratio")
    phi0 = sym.value_infinity_minus(0)
    if phi0 == 0:
        raise RankPositive("neron normalization undefined: phi({inf}-{0}) = 0")
    return sym, NormalizationData("neron", curve.lratio / phi0)
