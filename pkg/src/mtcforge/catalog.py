"""Reference constructions of premodular data, independent of any manifold.

Kauffman-bracket categories at a root of unity, their unitary cousins, the
rank-(r+2) integral subcategories attached to odd orthogonal groups at level
two, graded products, and the structural checks (transparency, modularity,
Verlinde fusion) used to certify candidate data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .algebra import PHASE_ZERO, RationalPhase, comparison_tolerance, phase_sin


@dataclass(frozen=True)
class ModularData:
    """Label set with quantum dimensions, exact twists, un-normalized S-matrix
    (unit row/column first, S[0,0] = 1), total dimension squared, and an
    optional Z2 grading.  Arrays are frozen read-only."""

    labels: tuple[str, ...]
    dims: np.ndarray
    twists: tuple[RationalPhase, ...]
    s_tilde: np.ndarray
    total_dim_sq: float
    grading: tuple[int, ...] | None = None

    def __post_init__(self):
        dims = np.ascontiguousarray(self.dims, dtype=float)
        S = np.ascontiguousarray(self.s_tilde, dtype=complex)
        dims.setflags(write=False)
        S.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "s_tilde", S)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def validate(self, tol: float | None = None, require_dim_sum: bool = True) -> "ModularData":
        tol = comparison_tolerance() if tol is None else tol
        r = self.rank
        S = self.s_tilde
        if S.shape != (r, r) or len(self.dims) != r or len(self.twists) != r:
            raise ValueError("inconsistent rank")
        if not np.all(np.isfinite(S)):
            raise ValueError("non-finite S entries")
        scale = max(1.0, np.abs(S).max())
        if np.abs(S - S.T).max() > tol * scale:
            raise ValueError("S-matrix not symmetric")
        if abs(S[0, 0] - 1.0) > tol:
            raise ValueError("S[0,0] must be 1 (unit-normalized)")
        if np.abs(S[0, :] - self.dims).max() > tol * scale:
            raise ValueError("first S row must equal quantum dimensions")
        # candidates report the dim-sum identity through the admissibility
        # check instead; it can genuinely fail for inadmissible label sets
        if require_dim_sum and abs(float(np.sum(self.dims**2)) - self.total_dim_sq) \
                > tol * max(1.0, self.total_dim_sq):
            raise ValueError("sum of dims^2 must equal total_dim_sq")
        if self.twists[0] != PHASE_ZERO:
            raise ValueError("unit twist must be trivial")
        if self.grading is not None and len(self.grading) != r:
            raise ValueError("grading length mismatch")
        return self

    def theta(self) -> np.ndarray:
        """Diagonal of the T-matrix as complex numbers."""
        return np.array([t.to_complex() for t in self.twists])


@dataclass(frozen=True)
class ModularityReport:
    is_modular: bool
    transparent_labels: tuple[str, ...]
    s_det_modulus: float


def quantum_integer(A: RationalPhase, n: int) -> float:
    """[n] at Kauffman variable e^{2*pi*i*A}, as an exact sine ratio."""
    t = A.as_fraction()
    return phase_sin(2 * n * t) / phase_sin(2 * t)


@lru_cache(maxsize=None)
def tlj_data(A_phase: RationalPhase) -> ModularData:
    """Kauffman-bracket premodular data at variable A = e^{2*pi*i*A_phase}.

    Defined whenever A^4 is a primitive root of unity of order r >= 2;
    labels 0..r-2, graded by parity.  Dimensions are signed: (-1)^j [j+1].
    Results are cached; treat them as read-only.
    """
    t = A_phase.as_fraction()
    four = RationalPhase.of(4 * t)
    r = four.order()
    if r < 2:
        raise ValueError("A^4 = 1: no associated category")
    labels = tuple(str(j) for j in range(r - 1))
    d = np.array([(-1) ** j * quantum_integer(A_phase, j + 1) for j in range(r - 1)])
    minus_A = (A_phase + Fraction(1, 2)).as_fraction()
    twists = tuple(RationalPhase.of(j * (j + 2) * minus_A) for j in range(r - 1))
    S = np.array(
        [[(-1) ** (i + j) * quantum_integer(A_phase, (i + 1) * (j + 1)) for j in range(r - 1)]
         for i in range(r - 1)],
        dtype=complex,
    )
    D2 = 2 * r / (2 * phase_sin(2 * t)) ** 2
    grading = tuple(j % 2 for j in range(r - 1))
    return ModularData(labels, d, twists, S, D2, grading).validate()


def total_dim(A_phase: RationalPhase) -> float:
    """sqrt(2r)/|A^2 - A^-2| for the Kauffman data at A."""
    t = A_phase.as_fraction()
    r = RationalPhase.of(4 * t).order()
    return math.sqrt(2 * r) / abs(2 * phase_sin(2 * t))


@lru_cache(maxsize=None)
def su2_level(k: int) -> ModularData:
    """The unitary rank-(k+1) quantum SU(2) data at level k, graded by parity."""
    if k < 0:
        raise ValueError("level must be >= 0")
    r = k + 2
    labels = tuple(str(j) for j in range(k + 1))
    s1 = math.sin(math.pi / r)
    S = np.array(
        [[math.sin((i + 1) * (j + 1) * math.pi / r) / s1 for j in range(k + 1)]
         for i in range(k + 1)],
        dtype=complex,
    )
    d = S[0, :].real.copy()
    twists = tuple(RationalPhase.of(Fraction(j * (j + 2), 4 * r)) for j in range(k + 1))
    D2 = (r / 2) / s1**2
    grading = tuple(j % 2 for j in range(k + 1))
    return ModularData(labels, d, twists, S, D2, grading).validate()


def soN2_adjoint(N: int, m: int) -> ModularData:
    """Integral subcategory data for odd orthogonal N at level two, rank
    (N-1)/2 + 2, at the root indexed by odd m coprime to 2N.  Properly
    premodular: the rows of the unit and of Z coincide."""
    if N < 5 or N % 2 == 0:
        raise ValueError("N must be odd and >= 5")
    if m % 2 == 0 or gcd(m, 2 * N) != 1:
        raise ValueError("m must be odd and coprime to 2N")
    r = (N - 1) // 2
    labels = ("1", "Z") + tuple(f"Y{k}" for k in range(1, r + 1))
    d = np.array([1.0, 1.0] + [2.0] * r)
    twists = [PHASE_ZERO, PHASE_ZERO]
    for k in range(1, r + 1):
        twists.append(RationalPhase.of(Fraction(m * (N * k - k * k), 2 * N)))
    S = np.empty((r + 2, r + 2), dtype=complex)
    S[:2, :2] = 1.0
    for k in range(1, r + 1):
        S[0, 1 + k] = S[1, 1 + k] = S[1 + k, 0] = S[1 + k, 1] = 2.0
        for j in range(k, r + 1):
            v = 4 * math.cos(2 * math.pi * ((m * k * j) % N) / N)
            S[1 + k, 1 + j] = S[1 + j, 1 + k] = v
    return ModularData(labels, d, tuple(twists), S, 2.0 * N).validate()


def graded_product(X: ModularData, Y: ModularData) -> ModularData:
    """Sector-wise product of two Z2-graded data sets.

    Labels are the matching-grade pairs, even block before odd block, each
    lexicographic; dims, twists and S entries multiply componentwise.
    """
    if X.grading is None or Y.grading is None:
        raise ValueError("both factors must carry a Z2 grading")
    pairs = [(i, j) for g in (0, 1)
             for i in range(X.rank) if X.grading[i] == g
             for j in range(Y.rank) if Y.grading[j] == g]
    ii = np.array([p[0] for p in pairs])
    jj = np.array([p[1] for p in pairs])
    labels = tuple(f"({X.labels[i]},{Y.labels[j]})" for i, j in pairs)
    dims = X.dims[ii] * Y.dims[jj]
    twists = tuple(X.twists[i] + Y.twists[j] for i, j in pairs)
    S = X.s_tilde[np.ix_(ii, ii)] * Y.s_tilde[np.ix_(jj, jj)]
    sector = lambda D, g: float(np.sum(D.dims[np.array(D.grading) == g] ** 2))
    D2 = sector(X, 0) * sector(Y, 0) + sector(X, 1) * sector(Y, 1)
    grading = tuple(X.grading[i] for i, _ in pairs)
    return ModularData(labels, dims, twists, S, D2, grading).validate()


def find_transparent(D: ModularData, tol: float | None = None) -> ModularityReport:
    """Labels whose S-row is proportional to the dimension row.

    The data are modular exactly when only the unit qualifies; the reported
    determinant modulus is |det(S/D_total)|, which is bounded away from zero
    for modular data and vanishes for degenerate data.
    """
    tol = comparison_tolerance() if tol is None else tol
    S = D.s_tilde
    scale = np.abs(S).max()
    transparent = []
    for i in range(D.rank):
        coeff = S[i, 0] / D.dims[0]
        if np.abs(S[i, :] - coeff * D.dims).max() <= tol * max(scale, 1.0):
            transparent.append(D.labels[i])
    sign, logabs = np.linalg.slogdet(S)
    if sign == 0:
        det_mod = 0.0
    else:
        det_mod = math.exp(logabs - D.rank * 0.5 * math.log(D.total_dim_sq))
    return ModularityReport(transparent == [D.labels[0]], tuple(transparent), det_mod)


def verlinde_fusion(D: ModularData, tol: float | None = None) -> np.ndarray:
    """Fusion multiplicities N_ij^k = sum_m S_im S_jm conj(S_km) / S_0m with
    S the normalized matrix; only defined for modular data."""
    tol = comparison_tolerance() if tol is None else tol
    if not find_transparent(D, tol).is_modular:
        raise ValueError("Verlinde fusion needs modular (non-degenerate) data")
    S = D.s_tilde / math.sqrt(D.total_dim_sq)
    N = np.einsum("im,jm,km->ijk", S, S, S.conj() / S[0, :])
    return N.real


def fusion_defects(N: np.ndarray) -> tuple[float, float]:
    """(max distance to nonnegative integers, max associativity defect)."""
    rounded = np.round(N)
    integrality = float(np.abs(N - rounded).max())
    if rounded.min() < 0:
        integrality = max(integrality, float(-rounded.min()))
    assoc = float(np.abs(np.einsum("ijm,mkl->ijkl", N, N)
                         - np.einsum("jkm,iml->ijkl", N, N)).max())
    return integrality, assoc


def reorder(D: ModularData, perm) -> ModularData:
    """Data with label order permuted: new index i holds old index perm[i]."""
    perm = list(perm)
    if sorted(perm) != list(range(D.rank)):
        raise ValueError("not a permutation")
    P = np.array(perm)
    return ModularData(
        tuple(D.labels[i] for i in perm),
        D.dims[P],
        tuple(D.twists[i] for i in perm),
        D.s_tilde[np.ix_(P, P)],
        D.total_dim_sq,
        None if D.grading is None else tuple(D.grading[i] for i in perm),
    )


def graded_order_permutation(D: ModularData) -> list[int]:
    """Permutation putting a graded label set into even-then-odd block order."""
    if D.grading is None:
        raise ValueError("data carries no grading")
    return [i for i in range(D.rank) if D.grading[i] == 0] + \
           [i for i in range(D.rank) if D.grading[i] == 1]
