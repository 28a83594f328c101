import cmath
import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtcforge.algebra import (
    RationalPhase,
    chebyshev,
    chebyshev_table,
    mod2_kernel,
    mod2_rank,
    parity_exp_sum,
    parity_exp_sum_literal,
    parity_exp_sum_table,
    phase_normalize,
)


class TestChebyshev:
    def test_base_cases(self):
        for t in (0.0, 1.7, -2.0, 3 + 4j):
            assert chebyshev(0, t) == 1.0
            assert chebyshev(1, t) == t

    def test_sqrt2_value(self):
        # degree 1 at 2cos(pi/4)
        assert chebyshev(1, 2 * math.cos(math.pi / 4)) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_parity_negation(self):
        t = 1.23
        assert chebyshev(3, -t) == pytest.approx(-chebyshev(3, t), abs=1e-12)
        assert chebyshev(4, -t) == pytest.approx(chebyshev(4, t), abs=1e-12)

    def test_sine_ratio_closed_form(self):
        # recursion equals sin((j+1)a)/sin(a) at t = 2cos(a), j <= 64
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = rng.uniform(0.05, math.pi - 0.05)
            t = 2 * math.cos(a)
            for j in (0, 1, 2, 5, 17, 33, 64):
                want = math.sin((j + 1) * a) / math.sin(a)
                assert abs(chebyshev(j, t) - want) < 1e-8

    def test_complex_arguments_bounded(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            z = complex(rng.uniform(-4, 4), rng.uniform(-1, 1))
            # recursion matches the table evaluation
            table = chebyshev_table(20, np.array([z]))
            for j in range(20):
                val = chebyshev(j, z)
                assert abs(val - table[0, j]) < 1e-9 * max(1.0, abs(val))

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            chebyshev(-1, 1.0)


class TestRationalPhase:
    def test_normalize_examples(self):
        assert phase_normalize(-3, 16) == RationalPhase(13, 16)
        assert phase_normalize(8, 16) == RationalPhase(1, 2)
        assert phase_normalize(5, -10) == RationalPhase(1, 2)

    def test_zero_denominator(self):
        with pytest.raises(ValueError):
            phase_normalize(1, 0)

    def test_to_complex_unit_modulus(self):
        t = phase_normalize(5, 7)
        z = t.to_complex()
        assert abs(abs(z) - 1) < 1e-12
        assert abs(z - cmath.exp(2j * math.pi * 5 / 7)) < 1e-12

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**4),
           st.integers(-10**6, 10**6), st.integers(1, 10**4))
    @settings(max_examples=300)
    def test_addition_exact(self, an, ad, bn, bd):
        a = phase_normalize(an, ad)
        b = phase_normalize(bn, bd)
        assert (a + b) - b == a
        assert a + (-a) == RationalPhase(0, 1)

    def test_bulk_addition_exact(self):
        rng = np.random.default_rng(3)
        for _ in range(10_000):
            a = phase_normalize(int(rng.integers(-999, 999)), int(rng.integers(1, 99)))
            b = phase_normalize(int(rng.integers(-999, 999)), int(rng.integers(1, 99)))
            assert (a + b) - b == a

    def test_integer_scale(self):
        t = phase_normalize(3, 8)
        assert 4 * t == RationalPhase(1, 2)
        assert t * Fraction(2, 3) == RationalPhase(1, 4)

    def test_order(self):
        assert phase_normalize(2, 6).order() == 3
        assert phase_normalize(0, 5).order() == 1


class TestMod2:
    def test_identity_full_rank(self):
        assert mod2_kernel(np.eye(3, dtype=int)) == []

    def test_torus_bundle_relation_matrix(self):
        # rows (a+1, c, 0), (b, d+1, 0) mod 2 for (2,1,1,1)
        M = np.array([[3, 1, 0], [1, 2, 0]]) % 2
        basis = mod2_kernel(M)
        assert len(basis) == 1
        assert basis[0].tolist() == [0, 0, 1]

    def test_zero_matrix(self):
        assert len(mod2_kernel(np.zeros((2, 2), dtype=int))) == 2

    def test_rank_nullity_against_enumeration(self):
        # oracle: count solutions by brute force over F_2^n
        rng = np.random.default_rng(5)
        for _ in range(40):
            rows, cols = rng.integers(1, 6, size=2)
            M = rng.integers(0, 2, size=(rows, cols))
            basis = mod2_kernel(M)
            solutions = sum(
                1 for mask in range(2**cols)
                if not (M @ np.array([(mask >> i) & 1 for i in range(cols)]) % 2).any()
            )
            assert 2 ** len(basis) == solutions
            assert len(basis) == cols - mod2_rank(M)
            for v in basis:
                assert not ((M @ v) % 2).any()


class TestParityExpSum:
    def test_odd_p_diagonal(self):
        # p odd, j == l
        for p, j in [(9, 2), (7, 3), (15, 8)]:
            assert parity_exp_sum(p, j, j, 1, 0) == -p
            assert parity_exp_sum(p, j, j, 1, 1) == -p

    def test_odd_p_antidiagonal_sign(self):
        # j + l = p with j + l odd picks up (-1)^parity
        assert parity_exp_sum(9, 4, 5, 1, 1) == -9
        assert parity_exp_sum(9, 4, 5, 1, 0) == 9

    def test_derived_literal_case(self):
        # (9,2,3,1,0): independent literal evaluation over even m in 1..8
        lit = parity_exp_sum_literal(9, 2, 3, 1, 0)
        assert abs(lit) < 1e-12
        assert parity_exp_sum(9, 2, 3, 1, 0) == pytest.approx(0.0, abs=1e-12)

    def test_closed_equals_literal_small(self):
        for p in range(2, 26):
            units = [r for r in range(1, 2 * p, 2) if gcd(r, p) == 1]
            for r in (units[0], units[-1]):
                for parity in (0, 1):
                    table = parity_exp_sum_table(p, r, parity)
                    for j in range(p + 1):
                        for l in range(p + 1):
                            closed = parity_exp_sum(p, j, l, r, parity)
                            assert abs(closed - table[j, l]) < 1e-8, (p, j, l, r, parity)

    def test_even_r_requires_literal(self):
        with pytest.raises(ValueError):
            parity_exp_sum(9, 2, 3, 2, 0)
        # the literal mode still evaluates
        parity_exp_sum(9, 2, 3, 2, 0, literal=True)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            parity_exp_sum(9, 2, 3, 3, 0)
