"""Sequences, theta, and the closed-form bounds with sound comparisons."""

import math
from fractions import Fraction

import mpmath
import pytest

from hatcheck.bounds import (
    BigBound,
    circ_bound,
    lll_degree_bound,
    n_h_t_closed,
    n_h_t_recursive,
    sylvester,
    theta_estimate,
    two_guess_seq,
)
from hatcheck.errors import IndeterminateComparisonError


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

def test_sylvester_values():
    assert [sylvester(n).exact for n in range(6)] == [1, 2, 3, 7, 43, 1807]


def test_two_guess_seq_values():
    assert [two_guess_seq(n).exact for n in range(5)] == [1, 3, 7, 43, 1807]


def test_sequence_recursion_identity():
    # a_{n+1} - 1 = 2 * prod(a_0..a_n), checked on exact values
    prod = 1
    for n in range(12):
        prod *= two_guess_seq(n).exact
        assert two_guess_seq(n + 1).exact - 1 == 2 * prod


def test_a_equals_shifted_sylvester():
    # a_n and s_{n+1} share the base a_1 = 3 = s_2 and the same
    # square recurrence x -> x^2 - x + 1, so they coincide for n >= 1
    # (in particular a_n < s_{n+1} never holds; it is equality)
    for n in range(1, 16):
        assert two_guess_seq(n).exact == sylvester(n + 1).exact
    s = sylvester(6).exact
    assert sylvester(7).exact == s * s - s + 1


def test_sequence_index_cap():
    assert two_guess_seq(64) is not None
    with pytest.raises(ValueError):
        two_guess_seq(65)
    with pytest.raises(ValueError):
        sylvester(-1)


def test_large_indices_leave_exact_range():
    small = two_guess_seq(20)
    assert small.is_exact  # ~2 * 10^5 digits, inside the digit guard
    big = two_guess_seq(40)
    assert not big.is_exact
    lo, hi = big.log2_interval()
    assert lo <= hi


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------

def test_theta_contains_paper_constant():
    lo, hi = theta_estimate(128)
    assert float(lo) <= 2.5533 + 5e-5
    assert float(hi) >= 2.5533 - 5e-5
    assert float(lo) >= 2.5
    assert float(hi) <= 2.56
    assert float(hi) - float(lo) <= 2.0 ** (-64)


def test_theta_upper_bounds_sequence():
    # a_n <= theta_hi^(2^(n-1)) + 1/2 for n <= 20, compared in log2.
    # The binding slack is at n = 6 where the estimate's upper pad
    # (2^-66) contributes about 2.6e-19; margin 1e-25 sits between that
    # and the 200-bit rounding error (~1e-54 at these magnitudes).
    _, hi = theta_estimate(128)
    with mpmath.workprec(200):
        log2_hi = mpmath.log(
            mpmath.mpf(hi.numerator) / mpmath.mpf(hi.denominator), 2
        )
        for n in range(1, 21):
            a_n = two_guess_seq(n).exact
            lhs = mpmath.log(mpmath.mpf(2 * a_n - 1), 2) - 1
            rhs = (2 ** (n - 1)) * log2_hi
            assert lhs <= rhs - mpmath.mpf(1e-25)


def test_theta_terms_strictly_increasing():
    # b_n = (a_n - 1/2)^(1/2^(n-1)) increases: raising both sides of
    # b_{n+1} > b_n to the 2^n gives x_{n+1} > x_n^2 for x_n = a_n - 1/2,
    # which the recursion x_{n+1} = x_n^2 + 1/4 settles exactly
    for n in range(1, 21):
        x_n = two_guess_seq(n).exact - Fraction(1, 2)
        x_next = two_guess_seq(n + 1).exact - Fraction(1, 2)
        assert x_next == x_n * x_n + Fraction(1, 4)
        assert x_next > x_n * x_n


# ---------------------------------------------------------------------------
# bounded-circumference bound
# ---------------------------------------------------------------------------

def test_circ_bound_c3_exact():
    value = circ_bound(3)
    assert value.is_exact
    assert value.exact == Fraction(64, 25) ** 8 + Fraction(1, 2)
    assert value >= two_guess_seq(4)


def test_circ_bound_c4_log_form():
    lo, hi = circ_bound(4).log2_interval()
    expected = 128 * math.log2(2.56)
    assert abs(float(lo) - expected) < 1e-6
    assert abs(float(hi) - expected) < 1e-6


def test_circ_bound_dominates_packaged_sequence():
    for c in (3, 4, 5):
        d = (c * c) // 2
        packaged = two_guess_seq(d).exact - Fraction(1, 2)
        assert circ_bound(c) > BigBound.from_exact(packaged)


def test_circ_bound_domain():
    with pytest.raises(ValueError):
        circ_bound(2)
    assert circ_bound(2 ** 16) is not None
    with pytest.raises(ValueError):
        circ_bound(2 ** 16 + 1)


# ---------------------------------------------------------------------------
# t-ary bounds
# ---------------------------------------------------------------------------

def test_n_1_t_base():
    assert n_h_t_recursive(1, 2).exact == 6  # ceil(2e) with 2e ~ 5.437
    assert n_h_t_recursive(1, 3).exact == 9
    assert n_h_t_recursive(1, 6).exact == 17


def test_n_2_2_unrolled():
    # N(2,2) = f^k(N(1,2)) with f(x) = x^8 and k = 8: log2 = 8^8 log2(6)
    lo, hi = n_h_t_recursive(2, 2).log2_interval()
    expected = 8 ** 8 * math.log2(6)
    assert abs(float(lo) - expected) < 1
    assert abs(float(hi) - expected) < 1


def test_closed_form_h2_t2():
    # log2 of (et)^(2^(4t^h) t^(4ht^h)) at h = t = 2: 2^16 * 2^32 * log2(2e)
    lo, hi = n_h_t_closed(2, 2).log2_interval()
    expected = (2 ** 16) * (2 ** 32) * math.log2(2 * math.e)
    assert abs(float(lo) / expected - 1) < 1e-9
    assert abs(float(hi) / expected - 1) < 1e-9


def test_recursive_below_closed():
    for h in (1, 2):
        for t in (2, 3):
            assert n_h_t_recursive(h, t) <= n_h_t_closed(h, t)


def test_n_h_t_domain():
    with pytest.raises(ValueError):
        n_h_t_recursive(0, 2)
    with pytest.raises(ValueError):
        n_h_t_recursive(1, 1)


# ---------------------------------------------------------------------------
# LLL numeric bound
# ---------------------------------------------------------------------------

def test_lll_values():
    assert lll_degree_bound(1) == pytest.approx(math.e)
    assert lll_degree_bound(2) == pytest.approx(5.4366, abs=1e-4)
    assert lll_degree_bound(6) == pytest.approx(16.3097, abs=1e-3)


# ---------------------------------------------------------------------------
# BigBound comparisons
# ---------------------------------------------------------------------------

def test_comparisons_mixed_forms():
    small = BigBound.from_exact(1807)
    huge = two_guess_seq(40)
    assert small < huge and small <= huge
    assert huge > small and huge >= small
    assert BigBound.from_exact(7) <= BigBound.from_exact(7)
    assert not BigBound.from_exact(8) <= BigBound.from_exact(7)


def test_comparisons_reject_overlap():
    a = BigBound.from_log2(mpmath.mpf(1.0), mpmath.mpf(2.0))
    b = BigBound.from_log2(mpmath.mpf(1.5), mpmath.mpf(2.5))
    with pytest.raises(IndeterminateComparisonError):
        a < b  # noqa: B015


def test_fraction_normalization():
    assert BigBound.from_exact(Fraction(14, 2)).exact == 7
    with pytest.raises(ValueError):
        BigBound.from_exact(-1)


def test_to_text_forms():
    assert BigBound.from_exact(1807).to_text() == "1807"
    assert BigBound.from_exact(Fraction(3, 2)).to_text() == "3/2"
    assert two_guess_seq(40).to_text().startswith("2^")
