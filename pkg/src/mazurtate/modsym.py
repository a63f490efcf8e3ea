"""Weight-2 modular symbols for Gamma_0(N) via Manin symbols.

The space is presented as the free Q-module on P^1(Z/N) modulo the two-term
and three-term relations of Manin; every generator carries an expression over
a chosen quotient basis, and arbitrary divisors are evaluated through the
continued-fraction (Manin) trick.  The generator indexed by (c:d), with
SL_2(Z) lift g having bottom row (c,d), stands for the divisor {g.0}-{g.inf}.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import LevelTooLarge
from .linalg import mat_vec

INFINITY = math.inf

DEFAULT_MAX_INDEX = 20000


def _xgcd(a: int, b: int):
    if b == 0:
        return (1, 0, a) if a >= 0 else (-1, 0, -a)
    x, y, g = _xgcd(b, a % b)
    return y, x - y * (a // b), g


def _lift_unit(n: int, d: int, a: int) -> int:
    """Lift a unit a mod d (d | n) to a unit mod n."""
    u, v = 1, n
    g = math.gcd(v, d)
    while g > 1:
        u *= g
        v //= g
        g = math.gcd(v, g)
    x, y, _ = _xgcd(u, v)
    return (u * x + a * y * v) % n


class P1List:
    """Canonical representatives of P^1(Z/N) with index lookup."""

    def __init__(self, N: int):
        self.N = N
        if N == 1:
            self._list = [(0, 0)]
        else:
            reps = set()
            for u in range(N):
                for v in range(N):
                    r = self.normalize(u, v)
                    if r is not None:
                        reps.add(r)
            self._list = sorted(reps)
        self._index = {r: i for i, r in enumerate(self._list)}

    def normalize(self, u: int, v: int):
        """Canonical form of (u:v), or None if the pair is not primitive mod N."""
        N = self.N
        if N == 1:
            return (0, 0)
        u %= N
        v %= N
        if u == 0:
            return (0, 1) if math.gcd(v, N) == 1 else None
        _, s, g = _xgcd(N, u)
        if math.gcd(g, v) > 1:
            return None
        s = _lift_unit(N, N // g, s % (N // g))
        v = (s * v) % N
        if g == 1:
            return (1, v)
        v = min((v * t) % N for t in range(1, N, N // g) if math.gcd(N, t) == 1)
        return (g, v)

    def index(self, u: int, v: int) -> int:
        r = self.normalize(u, v)
        if r is None:
            raise ValueError(f"({u}:{v}) is not primitive mod {self.N}")
        return self._index[r]

    def __len__(self):
        return len(self._list)

    def __getitem__(self, i):
        return self._list[i]


def lift_to_sl2z(c: int, d: int, N: int):
    """An SL_2(Z) matrix with bottom row congruent to (c,d) mod N."""
    if N == 1:
        return (1, 0, 0, 1)
    c %= N
    d %= N
    if c == 0 and d == 0:
        raise ValueError("not a projective point")
    # adjust within the class so that gcd(c,d)=1 as integers
    if c == 0:
        c = N
    g = math.gcd(c, d)
    if g > 1:
        # replace d by d + kN coprime to c
        k = 1
        while math.gcd(c, d + k * N) > 1:
            k += 1
        d += k * N
    x, y, g = _xgcd(c, d)
    assert g == 1
    # bottom row (c,d); top row solves a*d - b*c = 1
    return (y, -x, c, d)


# --- standard index, elliptic point and cusp counting for X_0(N) ---


def _prime_factors(N: int):
    out = []
    n = N
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def psi_index(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z)."""
    out = N
    for p, _ in _prime_factors(N):
        out = out // p * (p + 1)
    return out


def _euler_phi(n: int) -> int:
    out = n
    for p, _ in _prime_factors(n):
        out = out // p * (p - 1)
    return out


def cusp_count(N: int) -> int:
    total = 0
    d = 1
    while d * d <= N:
        if N % d == 0:
            total += _euler_phi(math.gcd(d, N // d))
            if d != N // d:
                total += _euler_phi(math.gcd(N // d, d))
        d += 1
    return total


def elliptic_point_counts(N: int):
    """(nu_2, nu_3) for Gamma_0(N)."""
    if N % 4 == 0:
        nu2 = 0
    else:
        nu2 = 1
        for p, _ in _prime_factors(N):
            if p == 2:
                continue
            nu2 *= 1 + (1 if p % 4 == 1 else -1)
    if N % 9 == 0:
        nu3 = 0
    else:
        nu3 = 1
        for p, _ in _prime_factors(N):
            if p == 3:
                continue
            nu3 *= 1 + (1 if p % 3 == 1 else -1)
    return nu2, nu3


def genus_x0(N: int) -> int:
    nu2, nu3 = elliptic_point_counts(N)
    g = Fraction(1) + Fraction(psi_index(N), 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusp_count(N), 2)
    assert g.denominator == 1
    return int(g)


# --- cusps and divisors ---


def as_cusp(x):
    """Normalize to a reduced pair (a, c) with c >= 0; infinity is (1, 0)."""
    if x is INFINITY:
        return (1, 0)
    if isinstance(x, tuple):
        a, c = x
    else:
        f = Fraction(x)
        a, c = f.numerator, f.denominator
    if c == 0:
        return (1, 0)
    if c < 0:
        a, c = -a, -c
    g = math.gcd(abs(a), c)
    if g > 1:
        a, c = a // g, c // g
    return (a, c)


def scale_cusp(m: int, cusp):
    a, c = cusp
    return as_cusp((m * a, c))


def apply_matrix_to_cusp(mat, cusp):
    a, b, c, d = mat
    u, v = cusp
    return as_cusp((a * u + b * v, c * u + d * v))


class Divisor:
    """Degree-0 formal sum of cusps."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        acc = {}
        for coeff, cusp in terms:
            cusp = as_cusp(cusp)
            acc[cusp] = acc.get(cusp, 0) + coeff
        self.terms = tuple((c, pt) for pt, c in sorted(acc.items()) if c)
        if sum(c for c, _ in self.terms) != 0:
            raise ValueError("divisor must have degree 0")

    @classmethod
    def difference(cls, r, s):
        """{r} - {s}"""
        return cls([(1, r), (-1, s)])

    @classmethod
    def infinity_minus(cls, r):
        return cls.difference(INFINITY, r)

    def apply_matrix(self, mat):
        return Divisor([(c, apply_matrix_to_cusp(mat, pt)) for c, pt in self.terms])

    def scale(self, m: int):
        return Divisor([(c, scale_cusp(m, pt)) for c, pt in self.terms])

    def __repr__(self):
        return " + ".join(f"{c}*{{{a}/{d}}}" for c, (a, d) in self.terms) or "0"


def convergent_symbol_pairs(cusp):
    """Bottom rows (q_k, +-q_{k-1}) of the unimodular path matrices joining the
    continued-fraction convergents of the cusp to infinity."""
    a, b = cusp
    if b == 0:
        return []
    out = []
    q_km2, q_km1 = 1, 0  # q_{-2}, q_{-1}
    num, den = a, b
    k = 0
    while den != 0:
        digit = num // den
        num, den = den, num - digit * den
        q_k = digit * q_km1 + q_km2
        sign = 1 if k % 2 == 1 else -1
        out.append((q_k, sign * q_km1))
        q_km2, q_km1 = q_km1, q_k
        k += 1
    return out


class ManinSymbolSpace:
    """Quotient presentation of the weight-2 modular symbols on Gamma_0(N)."""

    def __init__(self, N, p1, basis, expressions, sigma, tau):
        self.N = N
        self.p1 = p1
        self.basis = basis          # P^1 indices of the free generators
        self.expressions = expressions  # per P^1 index: tuple of Fraction over basis
        self.sigma = sigma          # index action of the order-2 relation matrix
        self.tau = tau              # index action of the order-3 relation matrix
        self.dimension = len(basis)
        self._involution = None

    def expression(self, i: int):
        return self.expressions[i]

    def generator_matrix(self, i: int):
        c, d = self.p1[i]
        return lift_to_sl2z(c, d, self.N)

    def generator_divisor_pair(self, i: int):
        """Cusp pair (g.0, g.inf) whose difference the generator represents."""
        a, b, c, d = self.generator_matrix(i)
        return as_cusp((b, d)), as_cusp((a, c))

    def involution_index(self, i: int) -> int:
        c, d = self.p1[i]
        return self.p1.index(-c, d)

    def involution_matrix(self):
        """Matrix of the sign involution on basis coordinates."""
        if self._involution is None:
            self._involution = [list(self.expressions[self.involution_index(b)]) for b in self.basis]
        return self._involution

    def symbol(self, coords, sign=None) -> "ModularSymbol":
        return ModularSymbol(self, coords, sign)

    def zero_symbol(self) -> "ModularSymbol":
        return ModularSymbol(self, [Fraction(0)] * self.dimension)


def build_space(N: int, max_index: int = DEFAULT_MAX_INDEX) -> ManinSymbolSpace:
    """Construct the Manin-symbol presentation at level N.

    Two-term relations are folded in combinatorially (they pair generators up
    to sign); the remaining three-term relations go through sparse Gaussian
    elimination over Q, pivoting on smallest-denominator entries.
    """
    if N < 1:
        raise ValueError("level must be positive")
    if psi_index(N) > max_index:
        raise LevelTooLarge(f"index {psi_index(N)} of Gamma_0({N}) exceeds bound {max_index}")
    p1 = P1List(N)
    m = len(p1)
    index = p1.index
    sigma = [index(d, -c) for c, d in p1]
    tau = [index(d, -c - d) for c, d in p1]

    # x + x.S = 0: fixed points die, otherwise pair with a sign.
    zero = [False] * m
    rep = list(range(m))
    rep_sign = [1] * m
    for i in range(m):
        j = sigma[i]
        if j == i:
            zero[i] = True
        elif j > i:
            rep[j] = i
            rep_sign[j] = -1

    def as_term(i):
        if zero[i]:
            return None
        return rep[i], rep_sign[i]

    # x + x.T + x.T^2 = 0, one relation per tau-orbit
    rows = []
    seen = [False] * m
    for i in range(m):
        if seen[i]:
            continue
        orbit = [i, tau[i], tau[tau[i]]]
        for j in orbit:
            seen[j] = True
        row = {}
        for j in orbit:
            t = as_term(j)
            if t is None:
                continue
            var, sgn = t
            row[var] = row.get(var, Fraction(0)) + sgn
        row = {k: v for k, v in row.items() if v}
        if row:
            rows.append(row)

    # sparse elimination; pivot_rows maps pivot variable -> reduced row
    pivot_rows = {}
    pivot_order = []
    for row in rows:
        row = dict(row)
        changed = True
        while changed:
            changed = False
            for var in list(row):
                if var in pivot_rows and row.get(var):
                    coeff = row.pop(var)
                    for v2, c2 in pivot_rows[var].items():
                        row[v2] = row.get(v2, Fraction(0)) - coeff * c2
                        if not row[v2]:
                            del row[v2]
                    changed = True
        row = {k: v for k, v in row.items() if v}
        if not row:
            continue
        piv = min(row, key=lambda k: (row[k].denominator, abs(row[k].numerator), k))
        c = row.pop(piv)
        pivot_rows[piv] = {k: v / c for k, v in row.items()}
        pivot_order.append(piv)

    # back-substitute so pivot rows involve free variables only
    for piv in reversed(pivot_order):
        row = pivot_rows[piv]
        for var in [v for v in row if v in pivot_rows]:
            coeff = row.pop(var)
            for v2, c2 in pivot_rows[var].items():
                row[v2] = row.get(v2, Fraction(0)) - coeff * c2
                if not row[v2]:
                    del row[v2]

    variables = [i for i in range(m) if not zero[i] and rep[i] == i]
    free = sorted(v for v in variables if v not in pivot_rows)
    dim = len(free)
    pos = {b: t for t, b in enumerate(free)}

    zero_expr = tuple([Fraction(0)] * dim)
    var_expr = {}
    for v in variables:
        if v in pivot_rows:
            e = [Fraction(0)] * dim
            for k, c in pivot_rows[v].items():
                e[pos[k]] = -c
            var_expr[v] = tuple(e)
        else:
            e = [Fraction(0)] * dim
            e[pos[v]] = Fraction(1)
            var_expr[v] = tuple(e)

    expressions = []
    for i in range(m):
        if zero[i]:
            expressions.append(zero_expr)
        else:
            base = var_expr[rep[i]]
            expressions.append(base if rep_sign[i] == 1 else tuple(-x for x in base))

    expected = 2 * genus_x0(N) + cusp_count(N) - 1 if N > 1 else 0
    if dim != expected:
        raise RuntimeError(f"dimension {dim} at level {N} disagrees with 2g+c-1 = {expected}")

    return ManinSymbolSpace(N, p1, free, expressions, sigma, tau)


@lru_cache(maxsize=32)
def cached_space(N: int) -> ManinSymbolSpace:
    return build_space(N)


class ModularSymbol:
    """Rational modular symbol stored as coordinates over the quotient basis."""

    def __init__(self, space: ManinSymbolSpace, coords, sign=None):
        self.space = space
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != space.dimension:
            raise ValueError("coordinate length does not match space dimension")
        self.sign = sign
        self._generator_values = None

    # -- linear structure --

    def __add__(self, other):
        if other.space is not self.space:
            raise ValueError("symbols live on different spaces")
        return ModularSymbol(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if other.space is not self.space:
            raise ValueError("symbols live on different spaces")
        return ModularSymbol(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return ModularSymbol(self.space, [scalar * c for c in self.coords], self.sign)

    def __neg__(self):
        return Fraction(-1) * self

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # -- values --

    def generator_values(self):
        """Values on every Manin generator (index-aligned with P^1)."""
        if self._generator_values is None:
            coords = self.coords
            nz = [t for t, c in enumerate(coords) if c]
            vals = []
            for expr in self.space.expressions:
                vals.append(sum(expr[t] * coords[t] for t in nz) if nz else Fraction(0))
            self._generator_values = tuple(vals)
        return self._generator_values

    def value_on_generator(self, i: int) -> Fraction:
        return self.generator_values()[i]

    def value_infinity_minus(self, r) -> Fraction:
        """phi({inf} - {r}) by the Manin trick."""
        cusp = as_cusp(r)
        if cusp[1] == 0:
            return Fraction(0)
        vals = self.generator_values()
        N = self.space.N
        index = self.space.p1.index
        total = Fraction(0)
        for qk, qk1 in convergent_symbol_pairs(cusp):
            total += vals[index(qk % N, qk1 % N)]
        return total

    def value(self, divisor: Divisor) -> Fraction:
        return sum((-c) * self.value_infinity_minus(pt) for c, pt in divisor.terms)

    def scaled(self, m: int) -> "ScaledSymbol":
        """Divisor-level evaluator for phi | [[m,0],[0,1]]."""
        return ScaledSymbol(self, m)

    # -- sign involution --

    def involution(self) -> "ModularSymbol":
        new = mat_vec(self.space.involution_matrix(), list(self.coords))
        return ModularSymbol(self.space, new)

    def plus_part(self) -> "ModularSymbol":
        s = self + self.involution()
        return ModularSymbol(self.space, [c / 2 for c in s.coords], sign="+")

    def minus_part(self) -> "ModularSymbol":
        s = self - self.involution()
        return ModularSymbol(self.space, [c / 2 for c in s.coords], sign="-")

    def split(self):
        return self.plus_part(), self.minus_part()

    def __repr__(self):
        return f"ModularSymbol(level={self.space.N}, coords={self.coords})"


class ScaledSymbol:
    """phi | [[m,0],[0,1]] as a divisor-level evaluator."""

    def __init__(self, symbol: ModularSymbol, m: int):
        self.symbol = symbol
        self.m = m

    def value_infinity_minus(self, r) -> Fraction:
        return self.symbol.value_infinity_minus(scale_cusp(self.m, as_cusp(r)))

    def value(self, divisor: Divisor) -> Fraction:
        return self.symbol.value(divisor.scale(self.m))
