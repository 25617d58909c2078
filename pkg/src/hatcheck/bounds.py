"""Growth sequences and closed-form bounds, exact or in log2 form.

Values carry one of two representations: exact (int or Fraction) while
the stored integers stay under a digit guard, and a directed-rounding
log2 interval beyond it.  All interval arithmetic pads endpoints
outward, so every interval is a true enclosure, and comparisons refuse
to order overlapping intervals instead of guessing.

The sequences here grow doubly exponentially (each term is one more
than a multiple of the product of all previous terms), the cycle-length
bound is (64/25) raised to a power of two, and the degenerate-tree
bounds iterate x -> x^k, so log2 forms are the common case beyond tiny
arguments.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

import mpmath

from .errors import IndeterminateComparisonError

ExactValue = Union[int, Fraction]

# exact integers are kept up to this many decimal digits (per stored
# integer: a fraction's numerator and denominator count separately)
DIGIT_GUARD = 10**6
_GUARD_BITS = int(DIGIT_GUARD * math.log2(10))

_SEQ_LIMIT = 64
_PREC = 120

# t**h in the degenerate-tree bounds must stay an ordinary machine-scale
# integer; beyond this the log2 exponents themselves stop being storable
_NESTED_LIMIT_BITS = 64


def _pad_down(x):
    return x - abs(x) * mpmath.mpf(2) ** -90 - mpmath.mpf(2) ** -120


def _pad_up(x):
    return x + abs(x) * mpmath.mpf(2) ** -90 + mpmath.mpf(2) ** -120


def _log2_interval_of_int(v: int):
    lo = _pad_down(mpmath.log(mpmath.mpf(v), 2))
    hi = _pad_up(mpmath.log(mpmath.mpf(v), 2))
    return lo, hi


def _log2_interval_of_exact(v: ExactValue):
    if v == 0:
        return mpmath.mpf("-inf"), mpmath.mpf("-inf")
    if isinstance(v, int):
        return _log2_interval_of_int(v)
    nlo, nhi = _log2_interval_of_int(v.numerator)
    dlo, dhi = _log2_interval_of_int(v.denominator)
    return _pad_down(nlo - dhi), _pad_up(nhi - dlo)


@dataclass(frozen=True)
class BigBound:
    """A non-negative value, exact or enclosed by a log2 interval."""

    exact: Optional[ExactValue] = None
    log2_lo: Optional[object] = None
    log2_hi: Optional[object] = None

    @classmethod
    def from_exact(cls, value: ExactValue) -> "BigBound":
        if value < 0:
            raise ValueError("bounds are non-negative")
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        return cls(exact=value)

    @classmethod
    def from_log2(cls, lo, hi) -> "BigBound":
        if lo > hi:
            raise ValueError("empty log2 interval")
        return cls(log2_lo=lo, log2_hi=hi)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def log2_interval(self):
        with mpmath.workprec(_PREC):
            if self.is_exact:
                return _log2_interval_of_exact(self.exact)
            return self.log2_lo, self.log2_hi

    def to_text(self) -> str:
        if self.is_exact:
            # exact values may be far beyond the default str-conversion cap
            if sys.get_int_max_str_digits() < DIGIT_GUARD + 10:
                sys.set_int_max_str_digits(DIGIT_GUARD + 10)
            if isinstance(self.exact, Fraction):
                return f"{self.exact.numerator}/{self.exact.denominator}"
            return str(self.exact)
        with mpmath.workprec(_PREC):
            mid = (self.log2_lo + self.log2_hi) / 2
            return f"2^{mpmath.nstr(mid, 17)}"

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return self.exact <= other.exact
        a_lo, a_hi = self.log2_interval()
        b_lo, b_hi = other.log2_interval()
        if a_hi <= b_lo:
            return True
        if a_lo > b_hi:
            return False
        raise IndeterminateComparisonError(
            f"cannot order log2 intervals [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}]"
        )

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return self.exact < other.exact
        a_lo, a_hi = self.log2_interval()
        b_lo, b_hi = other.log2_interval()
        if a_hi < b_lo:
            return True
        if a_lo >= b_hi:
            return False
        raise IndeterminateComparisonError(
            f"cannot order log2 intervals [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}]"
        )

    def __ge__(self, other) -> bool:
        return _coerce(other).__le__(self)

    def __gt__(self, other) -> bool:
        return _coerce(other).__lt__(self)


def _coerce(value) -> BigBound:
    if isinstance(value, BigBound):
        return value
    if isinstance(value, (int, Fraction)):
        return BigBound.from_exact(value)
    raise TypeError(f"cannot compare BigBound with {type(value).__name__}")


def _seq(n: int, multiplier: int) -> BigBound:
    """Shared recursion: x_{k+1} = 1 + multiplier * prod(x_0..x_k)."""
    if n < 0:
        raise ValueError("sequence index must be non-negative")
    if n > _SEQ_LIMIT:
        raise ValueError(f"sequence index capped at {_SEQ_LIMIT}")
    term = 1
    prod = 1
    k = 0
    while k < n:
        nxt = 1 + multiplier * prod
        if nxt.bit_length() > _GUARD_BITS:
            break
        term = nxt
        prod *= nxt
        k += 1
    if k == n:
        return BigBound.from_exact(term)
    # continue in log2; the +1 is swallowed by an upper pad that dwarfs
    # 1/prod at the switch-over size
    with mpmath.workprec(_PREC):
        log_m = mpmath.log(mpmath.mpf(multiplier), 2) if multiplier > 1 else 0
        p_lo, p_hi = _log2_interval_of_int(prod)
        t_lo = t_hi = None
        while k < n:
            t_lo = _pad_down(p_lo + log_m)
            t_hi = _pad_up(p_hi + log_m + mpmath.mpf(2) ** -60)
            p_lo = _pad_down(p_lo + t_lo)
            p_hi = _pad_up(p_hi + t_hi)
            k += 1
        return BigBound.from_log2(t_lo, t_hi)


def sylvester(n: int) -> BigBound:
    """n-th term of 1, 2, 3, 7, 43, 1807, ...: each term is one more
    than the product of all previous terms."""
    return _seq(n, 1)


def two_guess_seq(n: int) -> BigBound:
    """n-th term of 1, 3, 7, 43, 1807, ...: each term is one more than
    twice the product of all previous terms."""
    return _seq(n, 2)


def _sqrt_down(x: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2^-bits at most sqrt(x)."""
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def _sqrt_up(x: Fraction, bits: int) -> Fraction:
    """A multiple of 2^-bits at least sqrt(x)."""
    scaled = -((-x.numerator << (2 * bits)) // x.denominator)
    return Fraction(isqrt(scaled) + 1, 1 << bits)


def root_pow2_lower(x: Fraction, halvings: int, bits: int) -> Fraction:
    """Lower bound on x**(2**-halvings) by iterated directed sqrt."""
    y = Fraction(x)
    for _ in range(halvings):
        y = _sqrt_down(y, bits)
    return y


def root_pow2_upper(x: Fraction, halvings: int, bits: int) -> Fraction:
    """Upper bound on x**(2**-halvings) by iterated directed sqrt."""
    y = Fraction(x)
    for _ in range(halvings):
        y = _sqrt_up(y, bits)
    return y


# depth of the sequence recursion used for the growth-rate constant;
# the tail beyond it is below 2^-1000, far inside the final padding
_THETA_TERMS = 12


def theta_estimate(precision_bits: int):
    """Enclosure of the doubling constant of the two-guess sequence.

    The sequence satisfies a_{n+1} = a_n^2 - a_n + 1, so u_n = a_n - 1/2
    satisfies u_{n+1} = u_n^2 + 1/4 and b_n = u_n^(1/2^(n-1)) increases
    to a limit theta with a_n <= theta^(2^(n-1)) + 1/2.  The enclosure
    takes b_N for a deep fixed N by directed rational square roots and
    pads the upper end to absorb the (vastly smaller) remaining tail.

    Returns (lo, hi) as Fractions with hi - lo <= 2^-(precision_bits/2).
    """
    if not 1 <= precision_bits <= 256:
        raise ValueError("precision_bits must be in 1..256")
    a = two_guess_seq(_THETA_TERMS).exact
    u = Fraction(2 * a - 1, 2)
    bits = precision_bits + 32
    lo = root_pow2_lower(u, _THETA_TERMS - 1, bits)
    hi = root_pow2_upper(u, _THETA_TERMS - 1, bits)
    hi += Fraction(1, 2 ** (precision_bits // 2 + 2))
    return lo, hi


def circ_bound(c: int) -> BigBound:
    """Value of (64/25)^(2^(floor(c*c/2) - 1)) + 1/2 for cycle bound c."""
    if c < 3:
        raise ValueError("cycle-length bound needs c >= 3")
    if c > 2**16:
        raise ValueError("c capped at 2^16")
    d = (c * c) // 2
    exponent_log2 = d - 1
    # numerator digits are the binding size: 64^(2^(d-1)) has about
    # 1.8 * 2^(d-1) decimal digits
    if exponent_log2 <= 60 and (2**exponent_log2) * 6 <= _GUARD_BITS:
        value = Fraction(64, 25) ** (2**exponent_log2) + Fraction(1, 2)
        return BigBound.from_exact(value)
    with mpmath.workprec(_PREC):
        base_lo, base_hi = _log2_interval_of_exact(Fraction(64, 25))
        exp = mpmath.ldexp(1, exponent_log2)
        lo = _pad_down(exp * base_lo)
        # the +1/2 lifts log2 by less than 2^-60 at these magnitudes
        hi = _pad_up(exp * base_hi + mpmath.mpf(2) ** -60)
        return BigBound.from_log2(lo, hi)


def _e_enclosure(bits: int = 180):
    with mpmath.workprec(bits + 20):
        scaled = mpmath.floor(mpmath.ldexp(mpmath.e, bits))
        lo = Fraction(int(scaled), 1 << bits)
        return lo, lo + Fraction(1, 1 << bits)


def _ceil_e_times(t: int) -> int:
    e_lo, e_hi = _e_enclosure()
    lo = math.ceil(t * e_lo)
    hi = math.ceil(t * e_hi)
    if lo != hi:
        raise ArithmeticError(f"e*{t} too close to an integer to round")
    return hi


def _check_nested(h: int, t: int) -> None:
    if h * math.log2(t) > _NESTED_LIMIT_BITS:
        raise OverflowError(
            f"t**h for t={t}, h={h} exceeds the nested-log range"
        )


def n_h_t_recursive(h: int, t: int) -> BigBound:
    """Recursive tree-threshold: start at ceil(e*t), then at each level
    j = 2..h apply x -> x^k exactly k times with k = 2*t^j, which in log2
    form multiplies by k^k."""
    if h < 1:
        raise ValueError("height must be >= 1")
    if t < 2:
        raise ValueError("arity must be >= 2")
    base = _ceil_e_times(t)
    if h == 1:
        return BigBound.from_exact(base)
    _check_nested(h, t)
    with mpmath.workprec(_PREC):
        lo, hi = _log2_interval_of_int(base)
        for j in range(2, h + 1):
            k = 2 * t**j
            k_mpf = mpmath.mpf(k)
            mult_lo = _pad_down(k_mpf ** k)
            mult_hi = _pad_up(k_mpf ** k)
            lo = _pad_down(lo * mult_lo)
            hi = _pad_up(hi * mult_hi)
        return BigBound.from_log2(lo, hi)


def n_h_t_closed(h: int, t: int) -> BigBound:
    """Closed-form tree-threshold (et)^(2^(4t^h) * t^(4h*t^h)), log2 form."""
    if h < 1:
        raise ValueError("height must be >= 1")
    if t < 2:
        raise ValueError("arity must be >= 2")
    _check_nested(h, t)
    th = t**h
    with mpmath.workprec(_PREC):
        e_lo, e_hi = _e_enclosure()
        et_lo = _pad_down(
            mpmath.log(mpmath.mpf(e_lo.numerator), 2)
            - mpmath.log(mpmath.mpf(e_lo.denominator), 2)
            + mpmath.log(mpmath.mpf(t), 2)
        )
        et_hi = _pad_up(
            mpmath.log(mpmath.mpf(e_hi.numerator), 2)
            - mpmath.log(mpmath.mpf(e_hi.denominator), 2)
            + mpmath.log(mpmath.mpf(t), 2)
        )
        # E = 2^(4 t^h) * t^(4 h t^h); log2 E fits easily, E itself may not
        log2_e_exp = 4 * th + 4 * h * th * mpmath.log(mpmath.mpf(t), 2)
        exp_lo = _pad_down(mpmath.mpf(2) ** _pad_down(log2_e_exp))
        exp_hi = _pad_up(mpmath.mpf(2) ** _pad_up(log2_e_exp))
        return BigBound.from_log2(_pad_down(exp_lo * et_lo), _pad_up(exp_hi * et_hi))


def lll_degree_bound(t: int) -> float:
    """Color count e*t below which a local-lemma argument wins for
    graphs of maximum degree t-1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return math.e * t
