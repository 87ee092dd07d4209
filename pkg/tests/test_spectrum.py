from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import betas
from ebeta.core import Beta, make_beta
from ebeta.spectrum import (
    TAGS,
    SpectrumDigitVector,
    eval_digit_vector,
    spectrum_brute_force,
    spectrum_search,
    verify_claim_induction,
)

SAMPLE = [(3, 1), (7, 2), (4, 1), (5, 1), (10, 1)]


def unchecked_beta(value):
    # bypasses the beta >= 3 guard to show the search can find values below 1
    b = object.__new__(Beta)
    object.__setattr__(b, "value", F(value))
    return b


class TestVector:
    def test_parse_round_trip(self):
        v = SpectrumDigitVector.parse("-(b+1) -1 +1")
        assert str(v) == "-(b+1) -1 +1"
        assert len(v) == 3

    def test_eval(self):
        b = make_beta(3)
        assert eval_digit_vector(b, SpectrumDigitVector.parse("+1")) == 1
        assert eval_digit_vector(b, SpectrumDigitVector.parse("0 +b")) == 9
        assert eval_digit_vector(b, SpectrumDigitVector.parse("-(b+1) +1")) == -1

    def test_rejects(self):
        with pytest.raises(ValueError):
            SpectrumDigitVector(())
        with pytest.raises(ValueError):
            SpectrumDigitVector.parse("+2")

    def test_tag_order(self):
        assert TAGS[0] == "0" and len(TAGS) == 7


class TestSearch:
    @pytest.mark.parametrize("b", SAMPLE)
    def test_minimum_is_one(self, b):
        r = spectrum_search(make_beta(*b), 10)
        assert r.min_value == 1
        assert str(r.witness) == "+1"
        assert r.per_length == (F(1),) * 10

    @pytest.mark.parametrize("b", SAMPLE)
    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_brute_force(self, b, n):
        beta = make_beta(*b)
        assert spectrum_search(beta, n).min_value == spectrum_brute_force(beta, n)

    @given(betas)
    @settings(max_examples=25, deadline=None)
    def test_random_betas(self, b):
        assert spectrum_search(b, 6).min_value == 1

    def test_witness_attains_minimum(self):
        b = unchecked_beta(F(5, 2))
        r = spectrum_search(b, 4)
        assert abs(eval_digit_vector(b, r.witness)) == r.min_value
        assert r.min_value < 1

    def test_bad_length(self):
        with pytest.raises(ValueError):
            spectrum_search(make_beta(3), 0)


class TestClaimInduction:
    @pytest.mark.parametrize("b", SAMPLE)
    def test_holds(self, b):
        assert verify_claim_induction(make_beta(*b), 10) is True

    def test_detects_counterexample_below_three(self):
        # at beta = 5/2: beta^2 - beta - (beta+1) = 1/4
        b = unchecked_beta(F(5, 2))
        bad = verify_claim_induction(b, 4)
        assert bad is not True
        assert 0 < abs(eval_digit_vector(b, bad)) < 1
