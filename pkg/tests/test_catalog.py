import math
from fractions import Fraction

import numpy as np
import pytest

from mtcforge.algebra import RationalPhase
from mtcforge.catalog import (
    ModularData,
    find_transparent,
    fusion_defects,
    graded_order_permutation,
    graded_product,
    quantum_integer,
    reorder,
    soN2_adjoint,
    su2_level,
    tlj_data,
    total_dim,
    verlinde_fusion,
)

GOLDEN = (1 + math.sqrt(5)) / 2
PHI = (1 - math.sqrt(5)) / 2  # the conjugate root


def phase(num, den):
    return RationalPhase.of(Fraction(num, den))


class TestKauffmanData:
    def test_rank_two_example(self):
        # A = -e^{i pi/6}: rank 2, twists (1, i), S = [[1,-1],[-1,-1]]
        D = tlj_data(phase(7, 12))
        assert D.rank == 2
        assert D.twists == (phase(0, 1), phase(1, 4))
        assert np.abs(D.s_tilde - np.array([[1, -1], [-1, -1]])).max() < 1e-12

    def test_rank_four_example(self):
        # A = -e^{-i pi/5}: rank 4, rows built from the conjugate golden ratio
        D = tlj_data(phase(2, 5))
        assert D.rank == 4
        ref = np.array([[1, PHI, PHI, 1],
                        [PHI, -1, -1, PHI],
                        [PHI, -1, -1, PHI],
                        [1, PHI, PHI, 1]])
        assert np.abs(D.s_tilde - ref).max() < 1e-12

    def test_unit_object(self):
        for t in [phase(7, 12), phase(2, 5), phase(1, 16), phase(3, 20)]:
            D = tlj_data(t)
            assert D.dims[0] == pytest.approx(1.0)
            assert D.twists[0] == phase(0, 1)

    def test_degenerate_variable_rejected(self):
        with pytest.raises(ValueError):
            tlj_data(phase(1, 4))  # A^4 = 1

    def test_total_dim_identity(self):
        for t in [phase(7, 12), phase(2, 5), phase(1, 16), phase(1, 24), phase(5, 28)]:
            D = tlj_data(t)
            assert float(np.sum(D.dims**2)) == pytest.approx(total_dim(t) ** 2, rel=1e-10)

    def test_sector_dimensions_equal(self):
        # both sectors have squared dimension D^2/2 (needs rank >= 2)
        for t in [phase(1, 16), phase(1, 24), phase(5, 28), phase(7, 12)]:
            D = tlj_data(t)
            g = np.array(D.grading)
            even = float(np.sum(D.dims[g == 0] ** 2))
            odd = float(np.sum(D.dims[g == 1] ** 2))
            assert even == pytest.approx(D.total_dim_sq / 2, rel=1e-10)
            assert odd == pytest.approx(D.total_dim_sq / 2, rel=1e-10)

    def test_variable_negation(self):
        # A -> -A keeps S and flips exactly the odd twists
        for t in [phase(1, 16), phase(2, 5), phase(1, 24)]:
            D1, D2 = tlj_data(t), tlj_data(t + Fraction(1, 2))
            assert np.abs(D1.s_tilde - D2.s_tilde).max() < 1e-12
            for j, (a, b) in enumerate(zip(D1.twists, D2.twists)):
                assert a - b == phase(j % 2, 2)

    def test_modularity_by_order(self):
        # primitive 4r-th root: modular; odd r at a primitive 2r-th root:
        # degenerate with a non-degenerate even sector
        assert find_transparent(tlj_data(phase(1, 16))).is_modular
        assert find_transparent(tlj_data(phase(1, 20))).is_modular
        D = tlj_data(phase(1, 10))  # order 10 = 2r, r = 5
        rep = find_transparent(D)
        assert not rep.is_modular
        even = [i for i in range(D.rank) if D.grading[i] == 0]
        sub = D.s_tilde[np.ix_(even, even)]
        assert abs(np.linalg.det(sub)) > 1e-6

    def test_quantum_integer_values(self):
        A = phase(1, 16)  # [n] = sin(n pi/4)/sin(pi/4)
        assert quantum_integer(A, 2) == pytest.approx(math.sqrt(2), rel=1e-12)
        assert quantum_integer(A, 4) == pytest.approx(0.0, abs=1e-12)


class TestSU2Level:
    def test_level_zero_trivial(self):
        D = su2_level(0)
        assert D.rank == 1 and D.dims[0] == 1.0

    def test_level_two(self):
        D = su2_level(2)
        assert np.allclose(D.dims, [1, math.sqrt(2), 1])
        assert D.twists == (phase(0, 1), phase(3, 16), phase(1, 2))

    def test_level_three_golden(self):
        D = su2_level(3)
        assert D.dims[1] == pytest.approx(GOLDEN, rel=1e-12)

    def test_all_modular(self):
        for k in range(7):
            assert find_transparent(su2_level(k)).is_modular


class TestSoN2Adjoint:
    def test_transparent_z(self):
        for N, m in [(5, -7), (7, -17), (9, 1), (13, 3)]:
            D = soN2_adjoint(N, m)
            rep = find_transparent(D)
            assert not rep.is_modular
            assert rep.transparent_labels == ("1", "Z")
            assert np.abs(D.s_tilde[0, :] - D.s_tilde[1, :]).max() < 1e-12

    def test_twist_values(self):
        # theta_{Y_k} reduces to c~ k^2/N when m = -2c~ - N
        for N, ctil in [(5, 1), (7, 5), (13, 4)]:
            m = -2 * ctil - N
            D = soN2_adjoint(N, m)
            for k in range(1, (N - 1) // 2 + 1):
                assert D.twists[1 + k] == phase(ctil * k * k, N)

    def test_cos_entry(self):
        D = soN2_adjoint(5, -7)
        assert D.s_tilde[2, 2].real == pytest.approx(4 * math.cos(4 * math.pi / 5), rel=1e-12)

    def test_shape_and_dims(self):
        D = soN2_adjoint(11, 3)
        assert D.rank == 7
        assert np.allclose(D.dims, [1, 1] + [2] * 5)
        assert D.total_dim_sq == pytest.approx(22.0)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            soN2_adjoint(6, 1)
        with pytest.raises(ValueError):
            soN2_adjoint(5, 2)
        with pytest.raises(ValueError):
            soN2_adjoint(5, 5)


class TestGradedProduct:
    def test_tlj_pair_reference_matrix(self):
        D = graded_product(tlj_data(phase(7, 12)), tlj_data(phase(2, 5)))
        assert D.labels == ("(0,0)", "(0,2)", "(1,1)", "(1,3)")
        ref = np.array([[1, PHI, -PHI, -1],
                        [PHI, -1, 1, -PHI],
                        [-PHI, 1, 1, -PHI],
                        [-1, -PHI, -PHI, -1]])
        assert np.abs(D.s_tilde - ref).max() < 1e-12
        assert find_transparent(D).is_modular

    def test_rank_six_reference(self):
        D = graded_product(su2_level(2), su2_level(3))
        s2 = math.sqrt(2)
        ref = np.array([
            [1, GOLDEN, 1, GOLDEN, GOLDEN * s2, s2],
            [GOLDEN, -1, GOLDEN, -1, -s2, GOLDEN * s2],
            [1, GOLDEN, 1, GOLDEN, -GOLDEN * s2, -s2],
            [GOLDEN, -1, GOLDEN, -1, s2, -GOLDEN * s2],
            [GOLDEN * s2, -s2, -GOLDEN * s2, s2, 0, 0],
            [s2, GOLDEN * s2, -s2, -GOLDEN * s2, 0, 0],
        ])
        assert D.rank == 6
        assert np.abs(D.s_tilde - ref).max() < 1e-9
        want = [phase(0, 1), phase(2, 5), phase(1, 2), phase(9, 10),
                phase(27, 80), phase(15, 16)]
        assert list(D.twists) == want

    def test_unit_of_operation(self):
        # product with a trivially graded rank-1 factor picks the even sector
        X = su2_level(4)
        triv = su2_level(0)
        D = graded_product(X, triv)
        even = [i for i in range(X.rank) if X.grading[i] == 0]
        assert np.abs(D.s_tilde - X.s_tilde[np.ix_(even, even)]).max() < 1e-12

    def test_same_parity_transparent_label(self):
        D = graded_product(su2_level(2), su2_level(4))
        rep = find_transparent(D)
        assert not rep.is_modular
        assert "(2,4)" in rep.transparent_labels

    def test_missing_grading_rejected(self):
        with pytest.raises(ValueError):
            graded_product(su2_level(2), soN2_adjoint(5, -7))


class TestVerlinde:
    def test_unit_fusion_identity(self):
        N = verlinde_fusion(su2_level(3))
        assert np.abs(N[0] - np.eye(4)).max() < 1e-9

    def test_su2_level2_fusion(self):
        N = verlinde_fusion(su2_level(2))
        assert round(N[1, 1, 0]) == 1 and round(N[1, 1, 2]) == 1
        assert abs(N[1, 1, 1]) < 1e-9

    def test_tlj_16th_root_associative(self):
        N = verlinde_fusion(tlj_data(phase(1, 16)))
        integ, assoc = fusion_defects(N)
        assert integ < 1e-9 and assoc < 1e-9

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            verlinde_fusion(soN2_adjoint(5, -7))


class TestHelpers:
    def test_reorder_roundtrip(self):
        D = su2_level(4)
        perm = graded_order_permutation(D)
        R = reorder(D, perm)
        assert R.labels == ("0", "2", "4", "1", "3")
        inv = [perm.index(i) for i in range(D.rank)]
        back = reorder(R, inv)
        assert back.labels == D.labels
        assert np.abs(back.s_tilde - D.s_tilde).max() == 0.0

    def test_validate_catches_bad_data(self):
        D = su2_level(2)
        bad = ModularData(D.labels, D.dims, D.twists, D.s_tilde, D.total_dim_sq + 1.0)
        with pytest.raises(ValueError, match="dims"):
            bad.validate()
