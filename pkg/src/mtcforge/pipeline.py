"""Candidate modular data assembled from manifold invariants.

A candidate bundles an ordered character list, a unit choice, exact
Chern-Simons values, torsions, and one loop operator collection per label;
the S-matrix is built from trace weights of those operators and certified
against the independent catalog constructions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import seifert, torus_bundle
from .algebra import (
    PHASE_HALF,
    PHASE_ZERO,
    RationalPhase,
    chebyshev,
    chebyshev_table,
    comparison_tolerance,
    phase_cos,
)
from .catalog import ModularData
from .seifert import SeifertData, SfsCharacter
from .torus_bundle import TorusCharacter, TorusMonodromy


@dataclass(frozen=True)
class LoopOperator:
    """A conjugacy-class power with an irreducible representation label:
    the weight under a character is the degree-`sym_degree` trace of the
    holonomy of generator^exponent."""

    generator: str
    exponent: int
    sym_degree: int


@dataclass(frozen=True)
class CandidateData:
    manifold_tag: str
    manifold: object
    characters: tuple
    labels: tuple[str, ...]
    unit_index: int
    cs: tuple[RationalPhase, ...]
    torsions: np.ndarray
    loop_ops: tuple[tuple[LoopOperator, ...], ...]
    epsilon: int
    data: ModularData
    central_actions: tuple

    @property
    def rank(self) -> int:
        return len(self.labels)

    def twist(self, alpha: int) -> RationalPhase:
        return self.data.twists[alpha]


def character_trace(C: CandidateData, beta: int, op: LoopOperator) -> float:
    """Trace of the beta-th character on generator^exponent."""
    chi = C.characters[beta]
    if isinstance(chi, SfsCharacter):
        k = int(op.generator[1:]) - 1
        fiber = C.manifold.fibers[k]
        return phase_cos(Fraction(chi.n[k] * op.exponent, fiber.p))
    if isinstance(chi, TorusCharacter):
        if op.generator != "x":
            raise ValueError(f"unknown generator {op.generator}")
        if chi.kind == "irreducible":
            return phase_cos(Fraction(chi.k * op.exponent, C.manifold.N))
        return 2.0 * (-1) ** (chi.epsilon_x * op.exponent)
    raise TypeError(f"unknown character type {type(chi)}")


def w_symbol(C: CandidateData, beta: int, alpha: int) -> float:
    """Product over alpha's loop operators of the epsilon-twisted trace
    weight evaluated at the beta-th character."""
    out = 1.0
    for op in C.loop_ops[alpha]:
        out *= chebyshev(op.sym_degree, C.epsilon * character_trace(C, beta, op))
    return out


def _assemble(manifold_tag, manifold, chars, labels, unit_index, cs, torsions,
              loop_ops, epsilon, s_tilde, grading, central_actions) -> CandidateData:
    twists = tuple(-(c - cs[unit_index]) for c in cs)
    dims = s_tilde[0, :].real.copy()
    total_dim_sq = 2.0 * float(torsions[unit_index])
    data = ModularData(labels, dims, twists, s_tilde.astype(complex), total_dim_sq, grading)
    data.validate(require_dim_sum=False)
    C = CandidateData(manifold_tag, manifold, tuple(chars), labels, unit_index,
                      tuple(cs), np.asarray(torsions, dtype=float), loop_ops,
                      epsilon, data, central_actions)
    _check_candidate(C)
    return C


def _check_candidate(C: CandidateData, tol: float | None = None) -> None:
    tol = comparison_tolerance() if tol is None else tol
    S = C.data.s_tilde
    scale = max(1.0, float(np.abs(S).max()))
    if np.abs(S - S.T).max() > tol * scale:
        raise AssertionError("candidate S-matrix is not symmetric")
    D2 = C.data.total_dim_sq
    want = D2 / (2.0 * C.torsions)
    if np.abs(np.abs(S[0, :]) ** 2 - want).max() > tol * max(1.0, D2):
        raise AssertionError("|S[0,:]|^2 does not match D^2/(2 Tor)")
    if C.data.twists[C.unit_index] != PHASE_ZERO:
        raise AssertionError("unit twist must vanish")


def sfs_candidate(M: SeifertData, unit: str = "canonical") -> CandidateData:
    """Candidate data for a three-fiber space.

    canonical: the all-zero-degree character is the unit; label alpha carries
    the operators (x_k^{c_k}, degree j_k) and the sign epsilon = -1.

    reseated: only for the (3,1),(3,1),(r,1) family; labels are re-indexed
    from the top degree down, the unit is the old top character, and label j
    carries the single operator (x_3, degree j).
    """
    if unit == "canonical":
        return _sfs_canonical(M)
    if unit == "reseated":
        return _sfs_reseated(M)
    raise ValueError(f"unknown unit choice {unit!r}")


def _sfs_canonical(M: SeifertData) -> CandidateData:
    chars = seifert.enumerate_characters(M)
    labels = tuple(str(c.j).replace(" ", "") for c in chars)
    eps = -1
    J = np.array([c.j for c in chars])
    factors = []
    for f in M.fibers:
        traces = np.array([phase_cos(Fraction(f.n_of(i) * f.c, f.p)) for i in range(f.rank)])
        W = chebyshev_table(f.rank, eps * traces)  # W[i, deg]
        factors.append(W.T * W[0, :][None, :])     # Sk[a, b] = W[b, a] W[0, b]
    S = factors[0][np.ix_(J[:, 0], J[:, 0])] \
        * factors[1][np.ix_(J[:, 1], J[:, 1])] \
        * factors[2][np.ix_(J[:, 2], J[:, 2])]
    cs = [seifert._cs_value(M, c.j) for c in chars]
    tors = np.array([seifert._torsion_value(M, c.n) for c in chars])
    ops = tuple(
        tuple(LoopOperator(f"x{k + 1}", M.fibers[k].c, c.j[k]) for k in range(3))
        for c in chars
    )
    grading = tuple(c.j[0] % 2 for c in chars)
    actions = tuple(seifert.central_reps(M, chars, cs))
    return _assemble(M.tag(), M, chars, labels, 0, cs, tors, ops, eps, S, grading, actions)


def _sfs_reseated(M: SeifertData) -> CandidateData:
    if M.p[:2] != (3, 3) or M.q != (1, 1, 1):
        raise ValueError("reseated unit is defined only for the (3,1),(3,1),(r,1) family")
    r = M.p[2]
    by_j = {c.j[2]: c for c in seifert.enumerate_characters(M)}
    chars = [by_j[r - 2 - j] for j in range(r - 1)]
    labels = tuple(f"~{j}" for j in range(r - 1))
    eps = -1
    f3 = M.fibers[2]
    traces = np.array([phase_cos(Fraction(c.n[2], f3.p)) for c in chars])
    W = chebyshev_table(r - 1, eps * traces)
    S = W.T * W[0, :][None, :]
    cs = [seifert._cs_value(M, c.j) for c in chars]
    tors = np.array([seifert._torsion_value(M, c.n) for c in chars])
    ops = tuple((LoopOperator("x3", 1, j),) for j in range(r - 1))
    grading = tuple(j % 2 for j in range(r - 1))
    actions = tuple(seifert.central_reps(M, chars, cs))
    return _assemble(M.tag() + "~reseated", M, chars, labels, 0, cs, tors, ops, eps,
                     S, grading, actions)


def torus_candidate(T: TorusMonodromy) -> CandidateData:
    """Candidate data for a supported torus bundle: unit rho+, operators
    (x, degree 0) on the reducibles and (x^{mk}, degree 1) on rho_k,
    with epsilon = +1."""
    chars = torus_bundle.enumerate_torus_characters(T)
    labels = tuple(c.label() for c in chars)
    eps = +1
    L = len(chars)
    ops = []
    for c in chars:
        if c.kind == "irreducible":
            ops.append((LoopOperator("x", T.m * c.k, 1),))
        else:
            ops.append((LoopOperator("x", 1, 0),))
    ops = tuple(ops)
    cs = [torus_bundle.torus_cs(T, c) for c in chars]
    tors = np.array([torus_bundle.torus_torsion(T, c) for c in chars])
    S = np.empty((L, L))
    W0 = np.empty(L)

    def trace(beta, op):
        chi = chars[beta]
        if chi.kind == "irreducible":
            return phase_cos(Fraction(chi.k * op.exponent, T.N))
        return 2.0

    for b in range(L):
        W0[b] = math.prod(chebyshev(op.sym_degree, eps * trace(0, op)) for op in ops[b])
    for a in range(L):
        for b in range(L):
            w_b_a = math.prod(chebyshev(op.sym_degree, eps * trace(b, op)) for op in ops[a])
            S[a, b] = w_b_a * W0[b]
    actions = tuple(torus_bundle.central_reps(T))
    return _assemble(T.tag(), T, chars, labels, 0, cs, tors, ops, eps, S, None, actions)


@dataclass(frozen=True)
class AdmissibilityReport:
    sum_inverse_2tor: float
    gauss_sum_modulus: float
    target_modulus: float
    s_X: tuple[str, ...]
    s_L: float
    orbits: tuple[tuple[str, ...], ...]
    central_classification: tuple[str, ...]
    admissible: bool


def admissibility_report(C: CandidateData, tol: float | None = None) -> AdmissibilityReport:
    """Evaluate both admissibility sums and the central-representation data.

    The target modulus is sqrt(|s(X)|) / (s_L sqrt(2 Tor(unit))) where s(X)
    is the set of labels centrally related to the unit (same orbit, same
    exact Chern-Simons value, same torsion) and s_L is sqrt(2) when the
    relating subgroup contains a fermionic representation.
    """
    tol = comparison_tolerance() if tol is None else tol
    inv2tor = 1.0 / (2.0 * C.torsions)
    total = float(inv2tor.sum())
    gauss = abs(sum(cmath.exp(-2j * math.pi * float(c.as_fraction())) * w
                    for c, w in zip(C.cs, inv2tor)))
    unit = C.unit_index
    classification = []
    g0 = []
    for act in C.central_actions:
        if act.is_bosonic:
            classification.append("bosonic")
        elif all(d in (PHASE_ZERO, PHASE_HALF) for d in act.cs_diffs):
            classification.append("fermionic")
        else:
            classification.append("neither")
        img = act.permutation[unit]
        if C.cs[img] == C.cs[unit] and abs(C.torsions[img] - C.torsions[unit]) <= tol * C.torsions[unit]:
            g0.append(act)
    s_X = sorted({act.permutation[unit] for act in g0})
    s_L = math.sqrt(2) if any(
        cls == "fermionic"
        for act, cls in zip(C.central_actions, classification) if act in g0
    ) else 1.0
    # orbit partition of the label set under the relating subgroup
    seen = set()
    orbits = []
    for i in range(C.rank):
        if i in seen:
            continue
        orbit = sorted({act.permutation[i] for act in g0} | {i})
        seen.update(orbit)
        orbits.append(tuple(C.labels[j] for j in orbit))
    target = math.sqrt(len(s_X)) / (s_L * math.sqrt(2.0 * C.torsions[unit]))
    admissible = abs(total - 1.0) < tol and abs(gauss - target) < tol
    return AdmissibilityReport(
        total, gauss, target, tuple(C.labels[i] for i in s_X), s_L,
        tuple(orbits), tuple(classification), admissible,
    )


@dataclass(frozen=True)
class Certificate:
    passed: bool
    rank: int
    max_s_delta: float
    twists_equal: bool
    max_dim_delta: float
    total_dim_sq_delta: float


def certify(C: CandidateData, D: ModularData, tol: float | None = None) -> Certificate:
    """Entrywise equality certificate between candidate and catalog data:
    passes when the S-matrices and dimension rows agree within tol and the
    twists agree exactly.  The total-dimension discrepancy is reported but
    not gated (it can differ for inadmissible label sets)."""
    tol = comparison_tolerance() if tol is None else tol
    if C.rank != D.rank:
        raise ValueError(f"rank mismatch: candidate {C.rank}, reference {D.rank}")
    ds = float(np.abs(C.data.s_tilde - D.s_tilde).max())
    tw = bool(C.data.twists == D.twists)
    dd = float(np.abs(C.data.dims - D.dims).max())
    dD2 = float(abs(C.data.total_dim_sq - D.total_dim_sq))
    passed = bool(ds < tol * max(1.0, float(np.abs(D.s_tilde).max())) and tw
                  and dd < tol * max(1.0, float(np.abs(D.dims).max())))
    return Certificate(passed, C.rank, ds, tw, dd, dD2)


def sl2z_diagnostics(D: ModularData) -> dict[str, float]:
    """Residuals of the modular-group relations for S = s_tilde/D and the
    diagonal twist matrix: reports |(ST)^3 - lambda S^2| and |S^4 - 1| with
    lambda fitted from the (0,0) entry.  Diagnostic only."""
    S = D.s_tilde / math.sqrt(D.total_dim_sq)
    T = np.diag(D.theta())
    ST3 = np.linalg.matrix_power(S @ T, 3)
    S2 = S @ S
    lam = ST3[0, 0] / S2[0, 0] if abs(S2[0, 0]) > 1e-12 else 1.0
    return {
        "st_cubed_residual": float(np.abs(ST3 - lam * S2).max()),
        "s_fourth_residual": float(np.abs(np.linalg.matrix_power(S, 4) - np.eye(D.rank)).max()),
        "lambda_modulus": abs(lam),
    }
