"""Verification sweeps: each suite exercises one headline property across a
parameter range and reports a machine-readable result.  The acceptance tests
and the command-line `verify` command both run these.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, sqrt

import numpy as np

from . import torus_bundle
from .algebra import RationalPhase, parity_exp_sum, parity_exp_sum_table
from .catalog import (
    ModularData,
    find_transparent,
    fusion_defects,
    graded_order_permutation,
    graded_product,
    reorder,
    su2_level,
    soN2_adjoint,
    tlj_data,
    verlinde_fusion,
)
from .pipeline import admissibility_report, certify, sfs_candidate, torus_candidate
from .seifert import make_sfs, z2_homology_sphere
from .torsion_engine import chain_torsion
from .torus_bundle import build_adjoint_complex, enumerate_torus_characters, make_torus_bundle


@dataclass
class SuiteResult:
    name: str
    check: str
    passed: bool
    cases: int
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({len(self.failures)} failures)" if self.failures else ""
        return f"[{status}] {self.name}: {self.cases} cases{extra}"


def coprime_pairs(max_p: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(2, max_p + 1) for q in range(1, p) if gcd(p, q) == 1]


def sfs_sweep_instances(max_p: int) -> list[tuple[tuple[int, int], ...]]:
    """Unordered triples of coprime surgery pairs with 2 <= p <= max_p."""
    return list(itertools.combinations_with_replacement(coprime_pairs(max_p), 3))


@dataclass(frozen=True)
class SweepRecord:
    pairs: tuple[tuple[int, int], ...]
    rank: int
    certified: bool
    max_s_delta: float
    modular: bool
    z2_sphere: bool
    sum_inverse_2tor: float
    gauss_modulus: float
    target_modulus: float
    admissible: bool
    two_fiber_count: int


@lru_cache(maxsize=4)
def sfs_sweep_records(max_p: int = 9) -> tuple[SweepRecord, ...]:
    """One pass over the sweep computing certification, modularity, and
    admissibility data per manifold; consumed by several suites."""
    out = []
    for pairs in sfs_sweep_instances(max_p):
        M = make_sfs(pairs)
        C = sfs_candidate(M)
        ref = graded_product(graded_product(tlj_data(M.fibers[0].A), tlj_data(M.fibers[1].A)),
                             tlj_data(M.fibers[2].A))
        cert = certify(C, ref)
        rep = find_transparent(C.data)
        adm = admissibility_report(C)
        out.append(SweepRecord(
            pairs, C.rank, cert.passed, cert.max_s_delta, rep.is_modular,
            z2_homology_sphere(M), adm.sum_inverse_2tor, adm.gauss_sum_modulus,
            adm.target_modulus, adm.admissible, sum(1 for p, _ in pairs if p == 2),
        ))
    return tuple(out)


def supported_monodromies(max_N: int = 13, bound: int = 20) -> list[tuple[int, int, int, int]]:
    """All (a,b,c,d) with det 1, N = a+d+2 odd in (4, max_N], gcd(c,N) = 1,
    and |entries| <= bound, sorted."""
    out = []
    for N in range(5, max_N + 1, 2):
        for a in range(-bound, bound + 1):
            d = N - 2 - a
            if abs(d) > bound:
                continue
            bc = a * d - 1
            if bc == 0:
                continue
            for b in range(-bound, bound + 1):
                if b == 0 or bc % b:
                    continue
                c = bc // b
                if abs(c) <= bound and gcd(c, N) == 1:
                    out.append((a, b, c, d))
    return sorted(out)


# --- individual suites -----------------------------------------------------


def suite_rank6_table() -> SuiteResult:
    """Level-2 x level-3 graded product reproduces the rank-6 reference
    S and T matrices entrywise."""
    t0 = time.perf_counter()
    D = graded_product(su2_level(2), su2_level(3))
    g = (1 + sqrt(5)) / 2
    s2 = sqrt(2)
    S_ref = np.array([
        [1, g, 1, g, g * s2, s2],
        [g, -1, g, -1, -s2, g * s2],
        [1, g, 1, g, -g * s2, -s2],
        [g, -1, g, -1, s2, -g * s2],
        [g * s2, -s2, -g * s2, s2, 0, 0],
        [s2, g * s2, -s2, -g * s2, 0, 0],
    ])
    T_ref = np.exp(2j * np.pi * np.array([0, Fraction(2, 5), Fraction(1, 2),
                                          Fraction(9, 10), Fraction(27, 80),
                                          Fraction(15, 16)], dtype=float))
    errS = float(np.abs(D.s_tilde - S_ref).max())
    errT = float(np.abs(D.theta() - T_ref).max())
    elapsed = time.perf_counter() - t0
    failures = []
    if D.rank != 6:
        failures.append(f"rank {D.rank} != 6")
    if errS > 1e-9:
        failures.append(f"S error {errS:.2e}")
    if errT > 1e-9:
        failures.append(f"T error {errT:.2e}")
    if elapsed > 0.1:
        failures.append(f"runtime {elapsed:.3f}s > 0.1s")
    return SuiteResult("rank6-table", "rank-6 graded product vs reference matrices",
                       not failures, 1, failures,
                       {"s_error": errS, "t_error": errT, "seconds": elapsed})


def suite_sfs_tlj(max_p: int = 9) -> SuiteResult:
    """Every sweep candidate equals the graded product of its three Kauffman
    data sets entrywise, with exact twists."""
    records = sfs_sweep_records(max_p)
    failures = [f"{r.pairs}: max |dS| = {r.max_s_delta:.2e}"
                for r in records if not r.certified]
    return SuiteResult("sfs-tlj", "candidate S/T equals graded Kauffman product",
                       not failures, len(records), failures[:20],
                       {"max_s_delta": max(r.max_s_delta for r in records)})


def suite_modularity_dichotomy(max_p: int = 9) -> SuiteResult:
    """Candidate is modular exactly when the manifold is a Z2-homology
    sphere, for every manifold with at most one p = 2 fiber; includes the
    rank-8 (5,1),(3,2),(5,4) instance.

    With two or more p = 2 fibers the odd sector is empty and the candidate
    label set is inadmissible; the dichotomy can then fail (the nontrivial
    mod-2 cohomology acts trivially on every character), so those instances
    are instead required to be flagged inadmissible.
    """
    records = sfs_sweep_records(max_p)
    failures = []
    exceptional = 0
    for r in records:
        if r.two_fiber_count >= 2:
            exceptional += 1
            if r.modular != r.z2_sphere and r.admissible:
                failures.append(f"{r.pairs}: dichotomy violated on an admissible set")
            continue
        if r.modular != r.z2_sphere:
            failures.append(f"{r.pairs}: modular={r.modular} z2={r.z2_sphere}")
    m0 = next((r for r in records if r.pairs == ((3, 2), (5, 1), (5, 4))), None)
    details = {"empty_odd_sector_instances": exceptional}
    if m0 is not None:
        details["m0_rank"] = m0.rank
        details["m0_modular"] = m0.modular
        if not (m0.modular and m0.rank == 8):
            failures.append(f"(5,1),(3,2),(5,4): rank {m0.rank}, modular {m0.modular}")
    # the sweep must populate all five p/q parity classes of the dichotomy
    want_classes = {
        (("o", "o"), ("o", "o"), ("o", "o")),
        (("e", "o"), ("o", "o"), ("o", "o")),
        (("e", "o"), ("e", "o"), ("o", "o")),
        (("e", "o"), ("e", "o"), ("e", "o")),
        (("o", "e"), ("o", "o"), ("o", "o")),
    }
    seen = set()
    for r in records:
        cls = tuple(sorted(("e" if p % 2 == 0 else "o", "e" if q % 2 == 0 else "o")
                           for p, q in r.pairs))
        seen.add(cls)
    missing = want_classes - seen
    details["parity_classes"] = len(seen)
    if missing:
        failures.append(f"parity classes not covered by the sweep: {sorted(missing)}")
    return SuiteResult("sfs-modularity", "modular iff Z2-homology sphere (admissible scope)",
                       not failures, len(records), failures[:20], details)


def suite_su2_realizations(max_r: int = 12) -> SuiteResult:
    """(3,1),(3,1),(r,1): canonical unit matches the Kauffman data at
    e^{2 pi i/4r} (graded order), reseated unit matches level r-2, with the
    torsion-dimension identity per label."""
    failures = []
    cases = 0
    for r in range(2, max_r + 1):
        M = make_sfs([(3, 1), (3, 1), (r, 1)])
        cases += 1
        C = sfs_candidate(M, unit="canonical")
        ref = tlj_data(RationalPhase.of(Fraction(1, 4 * r)))
        cert = certify(C, reorder(ref, graded_order_permutation(ref)))
        if not cert.passed:
            failures.append(f"M({r}) canonical: dS={cert.max_s_delta:.2e} twists={cert.twists_equal}")
        Cr = sfs_candidate(M, unit="reseated")
        refr = su2_level(r - 2)
        certr = certify(Cr, refr)
        if not certr.passed:
            failures.append(f"M({r}) reseated: dS={certr.max_s_delta:.2e} twists={certr.twists_equal}")
        D = sqrt(Cr.data.total_dim_sq)
        tor_dim = np.abs(1.0 / np.sqrt(2.0 * Cr.torsions) - refr.dims / D).max()
        if tor_dim > 1e-9:
            failures.append(f"M({r}) torsion-dimension identity off by {tor_dim:.2e}")
    return SuiteResult("su2-realizations", "both unit choices certify per label",
                       not failures, cases, failures)


def suite_torus_son2(max_N: int = 13, bound: int = 20) -> SuiteResult:
    """Every supported monodromy certifies against the orthogonal level-two
    adjoint data at m = -2c~-N, with exactly one non-unit transparent label."""
    failures = []
    monos = supported_monodromies(max_N, bound)
    for (a, b, c, d) in monos:
        T = make_torus_bundle(a, b, c, d)
        C = torus_candidate(T)
        ref = soN2_adjoint(T.N, T.m)
        cert = certify(C, ref)
        if not cert.passed:
            failures.append(f"{(a, b, c, d)}: dS={cert.max_s_delta:.2e}")
            continue
        rep = find_transparent(C.data)
        if rep.is_modular or tuple(rep.transparent_labels) != ("rho+", "rho-"):
            failures.append(f"{(a, b, c, d)}: transparent={rep.transparent_labels}")
    return SuiteResult("torus-son2", "torus candidates match the level-two catalog",
                       not failures, len(monos), failures[:20])


def suite_torsion_oracle(max_N: int = 13, min_pairs: int = 20) -> SuiteResult:
    """Chain-complex torsion of the explicit cell structure equals the
    closed forms N/4 (irreducible) and N (reducible)."""
    failures = []
    times = []
    pairs = 0
    picked = []
    monos = supported_monodromies(max_N, 20)
    for N in range(5, max_N + 1, 2):
        for mono in [m for m in monos if m[0] + m[3] + 2 == N][:2]:
            picked.append(mono)
    # warm caches (lazy linear-algebra setup) so per-evaluation times are honest
    T0 = make_torus_bundle(*picked[0])
    chain_torsion(build_adjoint_complex(T0, enumerate_torus_characters(T0)[0]))
    for (a, b, c, d) in picked:
        T = make_torus_bundle(a, b, c, d)
        for chi in enumerate_torus_characters(T):
            expected = torus_bundle.torus_torsion(T, chi)
            t0 = time.perf_counter()
            complex_ = build_adjoint_complex(T, chi)
            res = chain_torsion(complex_)
            times.append(time.perf_counter() - t0)
            pairs += 1
            if not res.acyclic:
                failures.append(f"{(a, b, c, d)} {chi.label()}: not acyclic")
            elif abs(res.value - expected) > 1e-6 * expected:
                failures.append(f"{(a, b, c, d)} {chi.label()}: {res.value} != {expected}")
    if pairs < min_pairs:
        failures.append(f"only {pairs} oracle pairs, need {min_pairs}")
    slow = max(times) if times else 0.0
    if slow > 0.01:
        failures.append(f"slowest evaluation {slow * 1e3:.2f} ms > 10 ms")
    return SuiteResult("torsion-oracle", "cell-complex torsion equals closed forms",
                       not failures, pairs, failures[:20],
                       {"max_ms": slow * 1e3})


def suite_admissibility(max_p: int = 9, max_N: int = 13) -> SuiteResult:
    """Both admissibility sums, on the scope where they provably hold.

    Asserted: sum 1/(2Tor) = 1 for every Seifert candidate with at most one
    p = 2 fiber and for every torus candidate; the Gauss-sum target
    1/sqrt(2 Tor(unit)) for Z2-homology spheres and 1/sqrt(N) for torus
    bundles; and that candidates with >= 2 fibers of p = 2 (empty odd
    sector) are flagged inadmissible rather than passed.
    """
    failures = []
    records = sfs_sweep_records(max_p)
    for r in records:
        if r.two_fiber_count >= 2:
            if r.admissible:
                failures.append(f"{r.pairs}: empty-odd-sector candidate reported admissible")
            if abs(r.sum_inverse_2tor - 2.0 ** (r.two_fiber_count - 1)) > 1e-9:
                failures.append(f"{r.pairs}: sum 1/(2Tor) = {r.sum_inverse_2tor}")
            continue
        if abs(r.sum_inverse_2tor - 1.0) > 1e-9:
            failures.append(f"{r.pairs}: sum 1/(2Tor) = {r.sum_inverse_2tor}")
        if r.z2_sphere:
            if abs(r.gauss_modulus - r.target_modulus) > 1e-9 or not r.admissible:
                failures.append(f"{r.pairs}: gauss {r.gauss_modulus} target {r.target_modulus}")
    n_torus = 0
    for (a, b, c, d) in supported_monodromies(max_N, 20):
        T = make_torus_bundle(a, b, c, d)
        adm = admissibility_report(torus_candidate(T))
        n_torus += 1
        if abs(adm.sum_inverse_2tor - 1.0) > 1e-9:
            failures.append(f"{(a, b, c, d)}: sum {adm.sum_inverse_2tor}")
        if abs(adm.gauss_sum_modulus - 1.0 / sqrt(T.N)) > 1e-9 or not adm.admissible:
            failures.append(f"{(a, b, c, d)}: gauss {adm.gauss_sum_modulus} != 1/sqrt(N)")
        if adm.s_X != ("rho+", "rho-") or adm.s_L != 1.0:
            failures.append(f"{(a, b, c, d)}: s(X)={adm.s_X} s_L={adm.s_L}")
    return SuiteResult("admissibility", "sum and Gauss-sum targets on the provable scope",
                       not failures, len(records) + n_torus, failures[:20])


def suite_lemma_sums(max_p: int = 50, seed: int = 0) -> SuiteResult:
    """Closed-form parity-restricted exponential sums equal the literal
    summation for p <= max_p, all 0 <= j, l <= p, odd units r."""
    failures = []
    cases = 0
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for p in range(2, max_p + 1):
        units = [r for r in range(1, 2 * p, 2) if gcd(r, p) == 1]
        if len(units) > 8:
            units = sorted({units[0], units[-1], *rng.sample(units, 6)})
        for r in units:
            for parity in (0, 1):
                table = parity_exp_sum_table(p, r, parity)
                closed = np.array([[parity_exp_sum(p, j, l, r, parity)
                                    for l in range(p + 1)] for j in range(p + 1)])
                err = float(np.abs(table - closed).max())
                cases += (p + 1) ** 2
                if err > 1e-8:
                    failures.append(f"p={p} r={r} parity={parity}: err {err:.2e}")
    return SuiteResult("lemma-sums", "closed form equals literal summation",
                       not failures, cases, failures[:20],
                       {"seconds": time.perf_counter() - t0})


def suite_su2_parity(max_level: int = 6) -> SuiteResult:
    """Graded products of the unitary level data: modular exactly when the
    levels have different parity, except (0,0) = the trivial rank-1 product,
    which is vacuously modular."""
    failures = []
    cases = 0
    for m in range(max_level + 1):
        for n in range(max_level + 1):
            D = graded_product(su2_level(m), su2_level(n))
            is_mod = find_transparent(D).is_modular
            cases += 1
            if (m, n) == (0, 0):
                if not is_mod:
                    failures.append("(0,0): trivial product must be modular")
                continue
            if is_mod != ((m - n) % 2 == 1):
                failures.append(f"({m},{n}): modular={is_mod}")
    return SuiteResult("su2-parity", "product modular iff levels differ in parity",
                       not failures, cases, failures)


def _modular_outputs(max_p: int = 9, rank_cap: int = 24):
    """Modular data sets named by the realization and product criteria."""
    outs: list[tuple[str, ModularData]] = []
    for r in range(2, 13):
        M = make_sfs([(3, 1), (3, 1), (r, 1)])
        outs.append((f"M({r}) canonical", sfs_candidate(M).data))
        outs.append((f"M({r}) reseated", sfs_candidate(M, unit="reseated").data))
    outs.append(("M0", sfs_candidate(make_sfs([(5, 1), (3, 2), (5, 4)])).data))
    for m in range(7):
        for n in range(7):
            if (m - n) % 2 == 1:
                outs.append((f"su2 {m}x{n}", graded_product(su2_level(m), su2_level(n))))
    # modular sweep outputs = the Z2-homology spheres (the >= 2-twos family
    # can be trivially non-degenerate but its label set is inadmissible and
    # carries the wrong total dimension)
    for rec in sfs_sweep_records(max_p):
        if rec.modular and rec.z2_sphere and rec.rank <= rank_cap \
                and rec.pairs != ((3, 2), (5, 1), (5, 4)):
            outs.append((str(rec.pairs), sfs_candidate(make_sfs(rec.pairs)).data))
    return outs


def suite_verlinde(max_p: int = 9, rank_cap: int = 24) -> SuiteResult:
    """Verlinde fusion of every named modular output: coefficients are
    nonnegative integers and fusion is associative."""
    failures = []
    outs = _modular_outputs(max_p, rank_cap)
    for name, D in outs:
        try:
            N = verlinde_fusion(D)
        except ValueError as e:
            failures.append(f"{name}: {e}")
            continue
        integ, assoc = fusion_defects(N)
        if integ > 1e-6 or assoc > 1e-6:
            failures.append(f"{name}: integrality {integ:.2e} associativity {assoc:.2e}")
        unit_rows = N[0]
        if np.abs(unit_rows - np.eye(D.rank)).max() > 1e-6:
            failures.append(f"{name}: unit fusion is not the identity")
    return SuiteResult("verlinde", "integral, associative fusion on modular outputs",
                       not failures, len(outs), failures[:20])


ALL_SUITES = {
    "rank6-table": suite_rank6_table,
    "sfs-tlj": suite_sfs_tlj,
    "sfs-modularity": suite_modularity_dichotomy,
    "su2-realizations": suite_su2_realizations,
    "torus-son2": suite_torus_son2,
    "torsion-oracle": suite_torsion_oracle,
    "admissibility": suite_admissibility,
    "lemma-sums": suite_lemma_sums,
    "su2-parity": suite_su2_parity,
    "verlinde": suite_verlinde,
}


def run_suites(names=None, *, max_p: int = 9, max_N: int = 13, max_level: int = 6,
               lemma_max_p: int = 50, seed: int = 0) -> list[SuiteResult]:
    """Run the named suites (all by default) with shared bounds."""
    names = list(ALL_SUITES) if not names else list(names)
    kwargs = {
        "rank6-table": {},
        "sfs-tlj": {"max_p": max_p},
        "sfs-modularity": {"max_p": max_p},
        "su2-realizations": {},
        "torus-son2": {"max_N": max_N},
        "torsion-oracle": {"max_N": max_N},
        "admissibility": {"max_p": max_p, "max_N": max_N},
        "lemma-sums": {"max_p": lemma_max_p, "seed": seed},
        "su2-parity": {"max_level": max_level},
        "verlinde": {"max_p": max_p},
    }
    out = []
    for name in names:
        if name not in ALL_SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(ALL_SUITES)}")
        out.append(ALL_SUITES[name](**kwargs[name]))
    return out
