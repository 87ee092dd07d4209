from fractions import Fraction as F
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from ebeta.core import make_beta
from ebeta.symbolic import (
    CubicPoly,
    Digit,
    Enclosure,
    NoRootInBracket,
    TransitionMatrix,
    admissible,
    admissible_words,
    char_poly,
    count_words,
    dimension,
    matrix_A,
    matrix_B,
    measure_upper_bound,
    real_roots,
    similarity_dimension_A,
    similarity_dimension_B,
    spectral_radius,
)
from oracles import high_precision_dimension, perron_root

ONES = TransitionMatrix(((1, 1, 1), (1, 1, 1), (1, 1, 1)))


def brute_count(m, n):
    return sum(admissible("".join(w), m) for w in itertools.product("01B", repeat=n))


class TestMatrices:
    def test_entries(self):
        a, b = matrix_A(), matrix_B()
        assert a.entry(Digit.D0, Digit.DB) == 0
        assert a.entry("1", "1") == 1
        assert a.row_sums() == (2, 3, 3)
        assert b.entry("1", "1") == 0
        assert b.entry("0", "B") == 0
        assert b.entry("B", "0") == 1

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            TransitionMatrix(((1, 1), (1, 1)))
        with pytest.raises(ValueError):
            TransitionMatrix(((1, 2, 0), (1, 1, 1), (1, 1, 1)))

    def test_admissible(self):
        assert admissible("11", matrix_A())
        assert not admissible("11", matrix_B())
        assert not admissible("B0B", matrix_B())
        assert admissible("", matrix_B())

    def test_digit_chars(self):
        assert [d.char for d in Digit] == ["0", "1", "B"]
        assert Digit.from_char("B") is Digit.DB


class TestWordCounts:
    def test_examples(self):
        assert count_words(matrix_A(), 2) == 8
        assert count_words(matrix_A(), 3) == 21
        assert count_words(matrix_B(), 3) == 16

    @pytest.mark.parametrize("n", range(1, 9))
    def test_brute_force(self, n):
        assert count_words(matrix_A(), n) == brute_count(matrix_A(), n)
        assert count_words(matrix_B(), n) == brute_count(matrix_B(), n)

    def test_fibonacci_like(self):
        assert [count_words(matrix_A(), n) for n in range(1, 9)] == [3, 8, 21, 55, 144, 377, 987, 2584]

    def test_admissible_words_listing(self):
        assert len(admissible_words(matrix_B(), 4)) == count_words(matrix_B(), 4)

    def test_n_zero_rejected(self):
        with pytest.raises(ValueError):
            count_words(matrix_A(), 0)


class TestCharPoly:
    def test_examples(self):
        assert char_poly(matrix_B()).coeffs == (1, -2, -1, 1)
        assert str(char_poly(matrix_B())) == "x^3 - 2x^2 - x + 1"
        assert str(char_poly(matrix_A())) == "x^3 - 3x^2 + x"
        assert str(char_poly(ONES)) == "x^3 - 3x^2"

    @given(st.lists(st.integers(0, 1), min_size=9, max_size=9))
    def test_cayley_hamilton_trace(self, bits):
        rows = tuple(tuple(bits[3 * i:3 * i + 3]) for i in range(3))
        p = char_poly(TransitionMatrix(rows))
        assert -p.coeffs[1] == sum(rows[i][i] for i in range(3))

    def test_monic_required(self):
        with pytest.raises(ValueError):
            CubicPoly((2, 0, 0, 1))


class TestRoots:
    def test_radius_A(self):
        r = spectral_radius(char_poly(matrix_A()))
        assert abs(r.value - (3 + math.sqrt(5)) / 2) < 1e-9
        assert r.err < 1e-11

    def test_radius_B(self):
        r = spectral_radius(char_poly(matrix_B()))
        assert 2.24697 <= r.value <= 2.24699

    def test_radius_ones_is_exact(self):
        r = spectral_radius(char_poly(ONES))
        assert r.lo == r.hi == 3 and r.err == 0

    @pytest.mark.parametrize("m", [matrix_A(), matrix_B(), ONES], ids=["A", "B", "ones"])
    def test_against_eigen_solver(self, m):
        r = spectral_radius(char_poly(m))
        assert r.contains(perron_root(m.rows))

    @pytest.mark.parametrize("m", [matrix_A(), matrix_B()], ids=["A", "B"])
    def test_sign_change_across_bracket(self, m):
        p = char_poly(m)
        r = spectral_radius(p)
        assert p(r.lo) <= 0 <= p(r.hi)
        assert r.hi - r.lo <= F(1, 10**12)

    @pytest.mark.parametrize("m", [matrix_A(), matrix_B()], ids=["A", "B"])
    def test_perron_dominance(self, m):
        p = char_poly(m)
        roots = real_roots(p)
        assert len(roots) == (3 if p.discriminant() > 0 else len(roots))
        top = roots[-1]
        assert all(abs(x.value) <= top.value for x in roots)

    def test_no_root_in_bracket(self):
        with pytest.raises(NoRootInBracket):
            spectral_radius(CubicPoly((1, 0, 0, -100)))
        with pytest.raises(ValueError):
            spectral_radius(char_poly(matrix_A()), tol=0)

    def test_tol_controls_width(self):
        r = spectral_radius(char_poly(matrix_B()), F(1, 1000))
        assert r.hi - r.lo <= F(1, 1000)


class TestDimensions:
    def test_examples_beta3(self):
        s = similarity_dimension_A(make_beta(3))
        t = similarity_dimension_B(make_beta(3))
        assert abs(s.value - 0.876036) <= 1e-5
        assert abs(t.value - 0.736926) <= 1e-4
        assert s.err < 1e-10 and t.err < 1e-10

    @pytest.mark.parametrize("b", [(3, 1), (7, 2), (4, 1), (5, 1), (10, 1)])
    def test_against_high_precision(self, b):
        beta = make_beta(*b)
        for m, fn in ((matrix_A(), similarity_dimension_A), (matrix_B(), similarity_dimension_B)):
            e = fn(beta)
            assert e.contains(high_precision_dimension(m.rows, beta.value))

    def test_beta5(self):
        assert abs(similarity_dimension_A(make_beta(5)).value - 0.597987) < 1e-5

    def test_log_ratio_one(self):
        d = dimension(Enclosure(5.0, 0.0), 5.0)
        assert abs(d.value - 1) < 1e-15

    def test_decreasing_in_beta(self):
        vals = [similarity_dimension_A(make_beta(n, 4)).value for n in range(12, 41)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_t_below_s(self, beta):
        assert similarity_dimension_B(beta).value < similarity_dimension_A(beta).value


class TestMeasureBound:
    def test_beta3_level1(self):
        m = measure_upper_bound(make_beta(3), 1)
        assert abs(m.value - 3 * (2 / 3) ** 0.876036) < 1e-4
        assert abs(m.value - 2.104) < 2e-3

    def test_bounded_and_settles(self):
        b = make_beta(3)
        vals = [measure_upper_bound(b, n).value for n in range(1, 16)]
        assert max(vals) < 2.2
        assert abs(vals[-1] - vals[-2]) < 1e-4

    def test_beta5_level1(self):
        s = similarity_dimension_A(make_beta(5)).value
        assert abs(measure_upper_bound(make_beta(5), 1).value - 3 * (1.5 / 5) ** s) < 1e-9
