import numpy as np
import pytest

from mtcforge.torsion_engine import (
    BasedChainComplex,
    chain_torsion,
    direct_sum,
    multiplicativity_check,
)
from mtcforge.torus_bundle import build_adjoint_complex, enumerate_torus_characters, make_torus_bundle


def doubling_complex():
    """0 -> C -> C -> 0 with multiplication by 2, occupying degrees (2, 1)
    so the determinant lands in the numerator of the alternating product."""
    return BasedChainComplex((1, 1, 0), (np.array([[2.0]]), np.zeros((0, 1))))


class TestChainTorsion:
    def test_two_term_doubling(self):
        res = chain_torsion(doubling_complex())
        assert res.acyclic
        assert res.value == pytest.approx(2.0, abs=1e-12)

    def test_two_term_at_bottom_degrees_inverts(self):
        # same map in degrees (1, 0): the even-degree determinant divides
        C = BasedChainComplex((1, 1), (np.array([[2.0]]),))
        res = chain_torsion(C)
        assert res.acyclic
        assert res.value == pytest.approx(0.5, abs=1e-12)

    def test_torus_bundle_closed_forms(self):
        # irreducible character: N/4; reducible: N
        T = make_torus_bundle(2, 1, 1, 1)
        chars = enumerate_torus_characters(T)
        res = chain_torsion(build_adjoint_complex(T, chars[2]))
        assert res.acyclic and res.value == pytest.approx(1.25, rel=1e-9)
        res = chain_torsion(build_adjoint_complex(T, chars[0]))
        assert res.acyclic and res.value == pytest.approx(5.0, rel=1e-9)

    def test_not_acyclic_reported(self):
        C = BasedChainComplex((1, 1), (np.array([[0.0]]),))
        res = chain_torsion(C)
        assert not res.acyclic
        assert res.value is None

    def test_composability_enforced(self):
        d2 = np.array([[1.0], [0.0]])
        d1 = np.array([[1.0, 1.0]])  # d1 @ d2 = 1 != 0
        with pytest.raises(ValueError, match="d.d != 0"):
            BasedChainComplex((1, 2, 1), (d2, d1))

    def test_pivot_choice_independence(self):
        rng = np.random.default_rng(2)
        T = make_torus_bundle(4, 1, 3, 1)
        chi = enumerate_torus_characters(T)[3]
        C = build_adjoint_complex(T, chi)
        base = chain_torsion(C)
        # force a different greedy pivot order per degree
        for trial in range(5):
            forced = {}
            for deg in (1, 2, 3):
                got = chain_torsion(C).per_degree_ranks[deg - 1]
                M = C.boundary(deg)
                cols = list(range(M.shape[1]))
                rng.shuffle(cols)
                picked, rank = [], 0
                acc = np.zeros((M.shape[0], 0), dtype=complex)
                for c in cols:
                    trial_mat = np.hstack([acc, M[:, [c]]])
                    if np.linalg.matrix_rank(trial_mat, tol=1e-9) > rank:
                        acc = trial_mat
                        picked.append(c)
                        rank += 1
                    if rank == got:
                        break
                forced[deg] = picked
            res = chain_torsion(C, pivots=forced)
            assert res.acyclic
            assert res.value == pytest.approx(base.value, rel=1e-7)

    def test_basis_change_covariance(self):
        # coordinate transform Q in degree i multiplies tau by |det Q|^(-1)^(i+1)
        T = make_torus_bundle(2, 1, 1, 1)
        chi = enumerate_torus_characters(T)[2]
        C = build_adjoint_complex(T, chi)
        base = chain_torsion(C).value
        rng = np.random.default_rng(9)
        n = C.top_degree
        for deg in range(0, n + 1):
            dim = C.dim(deg)
            Q = np.eye(dim) + 0.2 * rng.standard_normal((dim, dim))
            det = abs(np.linalg.det(Q))
            bnds = [b.copy() for b in C.boundaries]
            # boundaries stored top-down: index of map out of degree deg
            if deg >= 1:
                bnds[n - deg] = bnds[n - deg] @ np.linalg.inv(Q)
            if deg + 1 <= n:
                bnds[n - deg - 1] = Q @ bnds[n - deg - 1]
            res = chain_torsion(BasedChainComplex(C.dims, tuple(bnds)))
            expected = base * det ** ((-1) ** (deg + 1))
            assert res.value == pytest.approx(expected, rel=1e-8), deg


def random_acyclic_three_term(rng, a, b):
    """0 -> C_2 -> C_1 -> C_0 -> 0 acyclic with dims (a, a+b, b)."""
    while True:
        P = rng.standard_normal((a, a))
        Q = rng.standard_normal((b, b))
        if abs(np.linalg.det(P)) > 0.1 and abs(np.linalg.det(Q)) > 0.1:
            break
    d2 = np.vstack([P, np.zeros((b, a))])
    d1 = np.hstack([np.zeros((b, a)), Q])
    return BasedChainComplex((a, a + b, b), (d2, d1))


def change_basis(C, mats):
    """Apply coordinate transforms (one per degree, top degree first)."""
    n = C.top_degree
    bnds = [b.copy() for b in C.boundaries]
    for deg in range(n + 1):
        Q = mats[n - deg]
        if deg >= 1:
            bnds[n - deg] = bnds[n - deg] @ np.linalg.inv(Q)
        if deg + 1 <= n:
            bnds[n - deg - 1] = Q @ bnds[n - deg - 1]
    return BasedChainComplex(C.dims, tuple(bnds))


class TestMultiplicativity:
    def test_direct_sum_of_doubling(self):
        sub = doubling_complex()
        total = direct_sum(sub, sub)
        assert chain_torsion(total).value == pytest.approx(4.0, abs=1e-12)
        assert multiplicativity_check(sub, total, sub)

    def test_random_upper_triangular_mixing(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            a, b = rng.integers(1, 4, size=2)
            sub = random_acyclic_three_term(rng, a, b)
            quot = random_acyclic_three_term(rng, a, b)
            total = direct_sum(sub, quot)
            # unit upper-triangular mixing of the quotient lift into the sub
            mats = []
            for dim_sub, dim_tot in zip(sub.dims, total.dims):
                B = np.eye(dim_tot)
                B[:dim_sub, dim_sub:] = rng.standard_normal((dim_sub, dim_tot - dim_sub))
                mats.append(B)
            mixed = change_basis(total, mats)
            assert multiplicativity_check(sub, mixed, quot)

    def test_scaled_basis_detected(self):
        sub = doubling_complex()
        total = direct_sum(sub, sub)
        mats = [np.eye(d) for d in total.dims]
        mats[0] = np.diag([1.0, 3.0])  # scale one top-degree basis vector
        scaled = change_basis(total, mats)
        assert not multiplicativity_check(sub, scaled, sub)

    def test_dimension_mismatch_rejected(self):
        sub = doubling_complex()
        with pytest.raises(ValueError):
            multiplicativity_check(sub, sub, sub)
