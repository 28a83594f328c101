"""Exact rational phases, Chebyshev trace polynomials, and mod-2 linear algebra.

Everything downstream leans on two facts: twists and Chern-Simons values are
roots of unity carried exactly as elements of Q/Z, while matrix entries are
finite sums of such roots evaluated in double precision.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

DEFAULT_TOL = 1e-9


def comparison_tolerance() -> float:
    """Matrix-entry comparison tolerance; MTCFORGE_TOL overrides 1e-9."""
    env = os.environ.get("MTCFORGE_TOL")
    if env:
        tol = float(env)
        if tol <= 0:
            raise ValueError("MTCFORGE_TOL must be positive")
        return tol
    return DEFAULT_TOL


@dataclass(frozen=True)
class RationalPhase:
    """An element t of Q/Z standing for the unit complex number e^{2*pi*i*t}.

    Canonical form: 0 <= numerator < denominator, gcd = 1.  Arithmetic is
    exact; only to_complex() leaves the rationals.
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not (0 <= self.numerator < self.denominator):
            raise ValueError("phase not in canonical range [0, 1)")
        if gcd(self.numerator, self.denominator) != 1 and self.numerator != 0:
            raise ValueError("phase not reduced")
        if self.numerator == 0 and self.denominator != 1:
            raise ValueError("zero phase must have denominator 1")

    @staticmethod
    def of(num: int | Fraction, den: int = 1) -> "RationalPhase":
        f = Fraction(num, den) % 1
        return RationalPhase(f.numerator, f.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.numerator / self.denominator)

    def order(self) -> int:
        """Multiplicative order of e^{2*pi*i*t} as a root of unity."""
        return self.denominator

    def __add__(self, other):
        return RationalPhase.of(self.as_fraction() + _as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other):
        return RationalPhase.of(self.as_fraction() - _as_fraction(other))

    def __neg__(self):
        return RationalPhase.of(-self.as_fraction())

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return RationalPhase.of(self.as_fraction() * k)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def _as_fraction(x) -> Fraction:
    if isinstance(x, RationalPhase):
        return x.as_fraction()
    return Fraction(x)


PHASE_ZERO = RationalPhase(0, 1)
PHASE_HALF = RationalPhase(1, 2)


def phase_normalize(num: int, den: int) -> RationalPhase:
    """Canonical representative of num/den in Q/Z."""
    if den == 0:
        raise ValueError("zero denominator")
    return RationalPhase.of(Fraction(num, den))


def phase_cos(t: Fraction | RationalPhase, scale: int = 2) -> float:
    """scale * cos(2*pi*t) with the angle reduced exactly mod 1 first."""
    f = _as_fraction(t) % 1
    return scale * math.cos(2 * math.pi * f.numerator / f.denominator)


def phase_sin(t: Fraction | RationalPhase) -> float:
    f = _as_fraction(t) % 1
    return math.sin(2 * math.pi * f.numerator / f.denominator)


def chebyshev(j: int, t: complex) -> complex:
    """Character of the (j+1)-dimensional irreducible at trace t.

    Three-term recursion D_{j+2} = t*D_{j+1} - D_j with D_0 = 1, D_1 = t;
    equals sin((j+1)a)/sin(a) at t = 2cos(a).  The recursion is used rather
    than the sine ratio so the value stays defined at sin(a) = 0.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if j == 0:
        return 1.0
    prev, cur = 1.0, t
    for _ in range(j - 1):
        prev, cur = cur, t * cur - prev
    return cur


def chebyshev_table(degrees: int, ts: np.ndarray) -> np.ndarray:
    """Matrix T[i, j] = chebyshev(j, ts[i]) for j = 0..degrees-1."""
    ts = np.asarray(ts)
    out = np.empty((ts.shape[0], degrees), dtype=ts.dtype)
    if degrees >= 1:
        out[:, 0] = 1.0
    if degrees >= 2:
        out[:, 1] = ts
    for j in range(2, degrees):
        out[:, j] = ts * out[:, j - 1] - out[:, j - 2]
    return out


def as_mod2(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64) % 2
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    return A.astype(np.uint8)


def _row_reduce_mod2(M: np.ndarray):
    A = as_mod2(M).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        hit = None
        for rr in range(r, rows):
            if A[rr, c]:
                hit = rr
                break
        if hit is None:
            continue
        A[[r, hit]] = A[[hit, r]]
        for rr in range(rows):
            if rr != r and A[rr, c]:
                A[rr] ^= A[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def mod2_rank(M) -> int:
    return len(_row_reduce_mod2(M)[1])


def mod2_kernel(M) -> list[np.ndarray]:
    """Basis of the null space {v : Mv = 0} over F_2."""
    A, pivots = _row_reduce_mod2(M)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.uint8)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = A[i, fc]
        basis.append(v)
    return basis


def mod2_span(basis: list[np.ndarray], width: int | None = None) -> list[np.ndarray]:
    """All vectors in the F_2-span of basis, trivial vector first."""
    if width is None:
        if not basis:
            raise ValueError("width required for an empty basis")
        width = len(basis[0])
    out = []
    for mask in range(2 ** len(basis)):
        v = np.zeros(width, dtype=np.uint8)
        for i, b in enumerate(basis):
            if mask >> i & 1:
                v ^= b
        out.append(v)
    return out


def parity_exp_sum(p: int, j: int, l: int, r: int, parity: int, *, literal: bool = False) -> complex:
    """Sum over m of fixed parity in [1, p-1] of the four-term exponential
    combination (e^{(j+l)mr*pi*i/p} - e^{(j-l)...} - e^{(-j+l)...} + e^{(-j-l)...}).

    The closed-form case analysis requires gcd(r, p) = 1 and r odd; pass
    literal=True to evaluate the defining sum directly instead.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if literal:
        return parity_exp_sum_literal(p, j, l, r, parity)
    if gcd(r, p) != 1:
        raise ValueError("r must be a unit mod p")
    if r % 2 == 0:
        raise ValueError("closed form needs odd r; use literal=True")
    if j % p == 0 or l % p == 0:
        # at j or l in {0, p} the four exponentials cancel in pairs
        return 0.0
    if p % 2 == 1:
        if j != l:
            if (j + l) % 2 == 1:
                return float((-1) ** parity * p) if j + l == p else 0.0
            return 0.0
        return float(-p)
    if j != l:
        if (j + l) % 2 == 1:
            return 0.0
        return float((-1) ** parity * p) if j + l == p else 0.0
    if parity == 0:
        return 0.0 if j + l == p else float(-p)
    return float(-2 * p) if j + l == p else float(-p)


def parity_exp_sum_literal(p: int, j: int, l: int, r: int, parity: int) -> complex:
    tot = 0j
    for m in range(1, p):
        if m % 2 != parity:
            continue
        for sj in (1, -1):
            for sl in (1, -1):
                tot += sj * sl * cmath.exp(1j * math.pi * (sj * j + sl * l) * m * r / p)
    return tot


def parity_exp_sum_table(p: int, r: int, parity: int) -> np.ndarray:
    """Literal sums T(p, j, l, parity) for all j, l in [0, p], vectorized.

    Uses T = S[j+l] - S[j-l] - S[l-j] + S[-j-l] with S[s] = sum_m e^{i*pi*s*m*r/p}.
    """
    ms = np.arange(1, p)
    ms = ms[ms % 2 == parity]
    s_vals = np.arange(-2 * p, 2 * p + 1)
    S = np.exp(1j * np.pi * r / p * np.outer(s_vals, ms)).sum(axis=1)

    def at(s):
        return S[s + 2 * p]

    jj, ll = np.meshgrid(np.arange(p + 1), np.arange(p + 1), indexing="ij")
    return at(jj + ll) - at(jj - ll) - at(ll - jj) + at(-jj - ll)
