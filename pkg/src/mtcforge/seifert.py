"""Seifert fibered spaces over S^2 with three singular fibers.

Covers the genus-0, three-fiber surgery presentations: fiber constants and
Kauffman-variable phases, the non-Abelian character list, closed-form
Chern-Simons and adjoint-torsion values, the mod-2 homology test, and the
action of central representations on the character list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np

from .algebra import PHASE_HALF, PHASE_ZERO, RationalPhase, mod2_kernel, mod2_span


@dataclass(frozen=True)
class SeifertFiber:
    """Singular fiber (p, q) with Euclid pair p*s - q*r = 1, 0 <= r < p.

    c is the surgery constant entering Chern-Simons values and A is the
    phase of the associated Kauffman variable, A_var = e^{2*pi*i*A}.
    """

    p: int
    q: int
    r: int
    s: int
    c: int
    A: RationalPhase

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be >= 2")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p},{self.q}) not coprime")
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError("Euclid pair invalid")

    @property
    def rank(self) -> int:
        """Number of admissible degrees 0..p-2."""
        return self.p - 1

    def n_of(self, j: int) -> Fraction:
        """Eigenvalue parameter of the degree-j character on this fiber."""
        if not 0 <= j <= self.p - 2:
            raise ValueError("degree out of range")
        if self.q % 2 == 0 and j % 2 == 0:
            return Fraction(self.p - 1 - j, 2)
        return Fraction(j + 1, 2)


def _fiber(p: int, q: int) -> SeifertFiber:
    if p < 2:
        raise ValueError(f"fiber order p={p} must be >= 2")
    if gcd(p, q) != 1:
        raise ValueError(f"fiber ({p},{q}) must be coprime")
    r = (-pow(q, -1, p)) % p
    s = (1 + q * r) // p
    if q % 2 == 1:
        c = p * q * s - r
    else:
        c = p * q * s - r * (p - 1) ** 2
    A = RationalPhase.of(Fraction(c, 4 * p) + Fraction(1, 2))
    return SeifertFiber(p, q, r, s, c, A)


@dataclass(frozen=True)
class SeifertData:
    fibers: tuple[SeifertFiber, SeifertFiber, SeifertFiber]

    @property
    def p(self) -> tuple[int, int, int]:
        return tuple(f.p for f in self.fibers)

    @property
    def q(self) -> tuple[int, int, int]:
        return tuple(f.q for f in self.fibers)

    def tag(self) -> str:
        return "sfs" + ",".join(f"({f.p},{f.q})" for f in self.fibers)


def make_sfs(pairs) -> SeifertData:
    """Seifert data from three (p, q) surgery pairs."""
    pairs = tuple(pairs)
    if len(pairs) != 3:
        raise ValueError("exactly three fibers required")
    return SeifertData(tuple(_fiber(p, q) for p, q in pairs))


@dataclass(frozen=True)
class SfsCharacter:
    """Non-Abelian character indexed by degrees j = (j1, j2, j3).

    lam is the central holonomy exponent (h acts as e^{2*pi*i*lam} I) and
    n_k the rotation numbers: the k-th generator has eigenvalues
    e^{+-2*pi*i*n_k/p_k}.
    """

    j: tuple[int, int, int]
    lam: RationalPhase
    n: tuple[Fraction, Fraction, Fraction]

    def key(self):
        return (self.n, self.lam)


def _character(M: SeifertData, j: tuple[int, int, int]) -> SfsCharacter:
    lam = PHASE_HALF if j[0] % 2 == 0 else PHASE_ZERO
    n = tuple(f.n_of(jk) for f, jk in zip(M.fibers, j))
    return SfsCharacter(j, lam, n)


def enumerate_characters(M: SeifertData) -> list[SfsCharacter]:
    """All non-Abelian characters: even-degree block then odd, lexicographic."""
    evens = [range(0, f.p - 1, 2) for f in M.fibers]
    odds = [range(1, f.p - 1, 2) for f in M.fibers]
    js = list(product(*evens)) + list(product(*odds))
    return [_character(M, j) for j in js]


def character_count(M: SeifertData) -> int:
    ps = M.p
    return math.prod(p // 2 for p in ps) + math.prod((p - 1) // 2 for p in ps)


def _validate(M: SeifertData, chi: SfsCharacter) -> None:
    for f, jk in zip(M.fibers, chi.j):
        if not 0 <= jk <= f.p - 2:
            raise ValueError("character does not belong to this manifold")
    if _character(M, chi.j) != chi:
        raise ValueError("character data inconsistent with manifold")


def _cs_value(M: SeifertData, j: tuple[int, int, int]) -> RationalPhase:
    total = Fraction(0)
    for f, jk in zip(M.fibers, j):
        total += Fraction(-f.c * (jk + 1) ** 2, 4 * f.p)
    return RationalPhase.of(total)


def cs_invariant(M: SeifertData, chi: SfsCharacter) -> RationalPhase:
    """Chern-Simons value sum_k -c_k (j_k+1)^2 / (4 p_k) mod 1, exact."""
    _validate(M, chi)
    return _cs_value(M, chi.j)


def _torsion_value(M: SeifertData, n: tuple[Fraction, ...]) -> float:
    out = 1.0
    for f, nk in zip(M.fibers, n):
        s = math.sin(2 * math.pi * float((f.r * nk) % f.p) / f.p)
        out *= f.p / (4 * s * s)
    return out


def torsion(M: SeifertData, chi: SfsCharacter) -> float:
    """Adjoint torsion p1 p2 p3 / prod_k 4 sin^2(2 pi r_k n_k / p_k)."""
    _validate(M, chi)
    return _torsion_value(M, chi.n)


def quantum_dimension(M: SeifertData, chi: SfsCharacter) -> float:
    """Signed product of the per-fiber Kauffman quantum dimensions."""
    out = 1.0
    for f, jk in zip(M.fibers, chi.j):
        out *= tlj_dim(f.A, jk)
    return out


def tlj_dim(A: RationalPhase, j: int) -> float:
    """(-1)^j [j+1] at Kauffman variable e^{2*pi*i*A}."""
    t = A.as_fraction()
    denom = math.sin(2 * math.pi * float((2 * t) % 1))
    num = math.sin(2 * math.pi * float((2 * (j + 1) * t) % 1))
    return (-1) ** j * num / denom


def z2_homology_sphere(M: SeifertData) -> bool:
    """True when q1 p2 p3 + p1 q2 p3 + p1 p2 q3 is odd."""
    p1, p2, p3 = M.p
    q1, q2, q3 = M.q
    return (q1 * p2 * p3 + p1 * q2 * p3 + p1 * p2 * q3) % 2 == 1


def relation_matrix_mod2(M: SeifertData) -> np.ndarray:
    """Abelianized relations mod 2 on (x1, x2, x3, h): rows p_k x_k + q_k h
    from the fiber relations plus x1 + x2 + x3 from the base relation."""
    rows = np.zeros((4, 4), dtype=np.uint8)
    for k, f in enumerate(M.fibers):
        rows[k, k] = f.p % 2
        rows[k, 3] = f.q % 2
    rows[3, :3] = 1
    return rows


@dataclass(frozen=True)
class CentralRep:
    """A homomorphism to the center, recorded as exponents on (x1,x2,x3,h),
    with the permutation it induces on the character list and the exact
    per-label Chern-Simons differences."""

    sigma: tuple[int, int, int, int]
    permutation: tuple[int, ...]
    cs_diffs: tuple[RationalPhase, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.sigma)

    @property
    def is_bosonic(self) -> bool:
        return all(d == PHASE_ZERO for d in self.cs_diffs)

    @property
    def is_fermionic(self) -> bool:
        return not self.is_bosonic and all(d in (PHASE_ZERO, PHASE_HALF) for d in self.cs_diffs)


def _act(M: SeifertData, chi: SfsCharacter, sigma) -> tuple:
    """Image key (n, lam) of a character under a central twist."""
    ns = []
    for f, nk, sk in zip(M.fibers, chi.n, sigma[:3]):
        if sk:
            nk = (nk + Fraction(f.p, 2)) % f.p
            if nk > Fraction(f.p, 2):
                nk = f.p - nk
        ns.append(nk)
    lam = chi.lam + RationalPhase.of(Fraction(int(sigma[3]), 2))
    return (tuple(ns), lam)


def central_reps(M: SeifertData, chars: list[SfsCharacter] | None = None,
                 cs_values: list[RationalPhase] | None = None) -> list[CentralRep]:
    """All central representations with their induced label permutations.

    Solves p_k s(x_k) + q_k s(h) = 0, s(x1)+s(x2)+s(x3) = 0 over F_2.
    Raises if a twist would carry a label outside the candidate set.
    """
    if chars is None:
        chars = enumerate_characters(M)
    if cs_values is None:
        cs_values = [_cs_value(M, c.j) for c in chars]
    L = len(chars)
    identity = tuple(range(L))
    zero_diffs = tuple([PHASE_ZERO] * L)
    index = None
    out = []
    for v in mod2_span(mod2_kernel(relation_matrix_mod2(M)), width=4):
        sigma = tuple(int(x) for x in v)
        if not any(sigma):
            out.append(CentralRep(sigma, identity, zero_diffs))
            continue
        if index is None:
            index = {c.key(): i for i, c in enumerate(chars)}
        perm = []
        for c in chars:
            key = _act(M, c, sigma)
            if key not in index:
                raise ValueError(f"central twist {sigma} leaves the candidate label set")
            perm.append(index[key])
        diffs = tuple(cs_values[perm[i]] - cs_values[i] for i in range(L))
        out.append(CentralRep(sigma, tuple(perm), diffs))
    return out
