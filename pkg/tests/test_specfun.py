import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combid.errors import (
    DomainError,
    IndeterminateError,
    PoleError,
    SingularTermError,
    ZeroToNonpositivePowerError,
)
from combid.exact import binomial_exact, harmonic_exact
from combid.specfun import (
    GammaConfig,
    binomial,
    complex_pow,
    csum,
    falling_product,
    gamma,
    gen_harmonic,
    harmonic,
    is_pole,
    lattice_distance,
    log_gamma,
    neg_one_pow,
)
from reference_values import (
    BINOMIAL_HALF_QUARTER,
    EXP_I_PI_QUARTER_HALF_I,
    GAMMA_REFERENCE,
    LOG_GAMMA,
    SQRT_1_PLUS_I,
)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def off_lattice_points(rng, count, lo=-10.0, hi=10.0, guard=1e-3):
    out = []
    while len(out) < count:
        s = complex(rng.uniform(lo, hi), rng.uniform(lo, hi))
        if lattice_distance(s) > guard and lattice_distance(s + 1) > guard:
            out.append(s)
    return out


# -- gamma / log_gamma ---------------------------------------------------------

@pytest.mark.parametrize("s, expected", GAMMA_REFERENCE)
def test_gamma_reference_values(s, expected):
    assert rel(gamma(s), expected) <= 1e-12


@pytest.mark.parametrize("s, expected", LOG_GAMMA)
def test_log_gamma_matches_analytic_continuation(s, expected):
    assert abs(log_gamma(s) - expected) <= 1e-12 * max(1.0, abs(expected))


def test_log_gamma_small_values():
    assert abs(log_gamma(5) - math.log(24)) < 1e-14
    assert abs(log_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-14


def test_gamma_small_values():
    assert gamma(6) == 120
    assert gamma(1) == 1


@pytest.mark.parametrize("s", [0, -1, -7, complex(-3, 0)])
def test_gamma_poles(s):
    with pytest.raises(PoleError):
        gamma(s)
    with pytest.raises(PoleError):
        log_gamma(s)


def test_pole_tolerance_is_configurable():
    near = -2 + 1e-8
    assert not is_pole(near)
    assert is_pole(near, tol=1e-7)
    with pytest.raises(PoleError):
        gamma(near, GammaConfig(pole_tolerance=1e-7))


def test_gamma_recurrence():
    rng = random.Random(11)
    worst = 0.0
    for s in off_lattice_points(rng, 1000):
        g1 = gamma(s + 1)
        worst = max(worst, abs(g1 - s * gamma(s)) / abs(g1))
    assert worst <= 1e-11


def test_log_gamma_recurrence_keeps_branch():
    # lg(s+1) = lg(s) + Log(s) with no 2*pi*i jumps off the negative real axis
    rng = random.Random(12)
    for s in off_lattice_points(rng, 300):
        if s.imag == 0:
            continue
        assert abs(log_gamma(s + 1) - log_gamma(s) - cmath.log(s)) < 1e-11 * max(1, abs(log_gamma(s)))


def test_gamma_overflow_is_reported():
    with pytest.raises(OverflowError):
        gamma(200.5)


# -- binomial ------------------------------------------------------------------

def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(2.5, 0) == 1
    assert rel(binomial(0.5, 0.25), BINOMIAL_HALF_QUARTER) < 1e-13
    assert binomial(3, 5) == 0


def test_binomial_matches_exact_on_integer_grid():
    worst = 0.0
    for x in range(41):
        for y in range(x + 1):
            worst = max(worst, rel(binomial(x, y), float(binomial_exact(x, y))))
    assert worst <= 1e-12


def test_binomial_float_path_matches_exact():
    # force the gamma route with a tiny imaginary offset
    for x, y in [(10, 3), (25, 12), (40, 20)]:
        v = binomial(complex(x, 1e-14), y)
        assert rel(v, math.comb(x, y)) < 1e-11


def test_binomial_poles():
    assert binomial(2.5, -1) == 0  # 1/Gamma(0) in the denominator
    with pytest.raises(IndeterminateError):
        binomial(-3, 0.5)


# -- falling product -----------------------------------------------------------

def test_falling_product_examples():
    assert falling_product(5, 0, 3) == 60
    s = 2.7 - 1.3j
    assert falling_product(s, 4, 4) == 1
    # Gaussian-rational oracle: (re, im) pairs of Fractions
    re, im = Fraction(1), Fraction(0)
    for k in (-1, 0, 1):
        fr, fi = Fraction(1) - k, Fraction(1)
        re, im = re * fr - im * fi, re * fi + im * fr
    assert falling_product(1 + 1j, -1, 2) == complex(float(re), float(im)) == -3 + 1j


def test_falling_product_rejects_reversed_bounds():
    with pytest.raises(DomainError):
        falling_product(1.0, 3, 2)


def test_falling_product_matches_gamma_ratios():
    rng = random.Random(5)
    checked = 0
    while checked < 300:
        s = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        a = rng.randint(-10, 10)
        b = a + rng.randint(0, 20)
        args = (s - a + 1, s - b + 1, b - s, a - s)
        if min(lattice_distance(z) for z in args) < 1e-3:
            continue
        fp = falling_product(s, a, b)
        up = cmath.exp(log_gamma(s - a + 1) - log_gamma(s - b + 1))
        down = (-1) ** (b - a) * cmath.exp(log_gamma(b - s) - log_gamma(a - s))
        assert rel(fp, up) <= 1e-10
        assert rel(fp, down) <= 1e-10
        checked += 1


# -- harmonic numbers ----------------------------------------------------------

def test_harmonic_examples():
    assert harmonic(0) == 0
    assert rel(harmonic(4), 25 / 12) < 1e-15
    assert rel(harmonic(100), float(harmonic_exact(100))) < 1e-15


def test_harmonic_rejects_negative():
    with pytest.raises(DomainError):
        harmonic(-1)


def test_gen_harmonic_examples():
    assert rel(gen_harmonic(0, 3, 1), 11 / 6) < 1e-15
    assert gen_harmonic(2.5 + 1j, 0, 0.3) == 0
    assert rel(gen_harmonic(0.5, 2, 2), 1 / 1.5**2 + 1 / 2.5**2) < 1e-15
    assert abs(gen_harmonic(0.5, 2, 2) - 0.6044444444444444) < 1e-15


def test_gen_harmonic_singular_term():
    with pytest.raises(SingularTermError) as info:
        gen_harmonic(-3, 5, 1)
    assert info.value.k == 3


def test_gen_harmonic_offset_difference():
    worst = 0.0
    for c in range(21):
        for n in range(51):
            worst = max(worst, abs(gen_harmonic(c, n, 1) - (harmonic(c + n) - harmonic(c))))
    assert worst <= 1e-12


@pytest.mark.parametrize("m", range(-3, 6))
def test_gen_harmonic_reflection_symmetry(m):
    rng = random.Random(100 + m)
    for _ in range(50):
        c = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        n = rng.randint(0, 30)
        lhs = gen_harmonic(c, n, m)
        rhs = (-1) ** m * gen_harmonic(-(c + n + 1), n, m)
        assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), abs(rhs), 1e-300)


def test_harmonic_sum_is_compensated():
    # plain left-to-right summation drifts visibly here; fsum does not
    assert harmonic(10**5) == pytest.approx(float(harmonic_exact(10**5)), rel=1e-15)


# -- powers --------------------------------------------------------------------

def test_complex_pow_examples():
    assert complex_pow(2, 3) == 8
    assert rel(complex_pow(1 + 1j, 0.5), SQRT_1_PLUS_I) < 1e-14
    assert rel(complex_pow(-1, 0.25 + 0.5j), EXP_I_PI_QUARTER_HALF_I) < 1e-14
    for w in (0.5, 1 / 3, 0.25 + 0.5j, -1.7 + 0.2j):
        assert rel(complex_pow(-1, w), cmath.exp(1j * math.pi * w)) < 1e-14


def test_complex_pow_zero_base():
    assert complex_pow(0, 2.5) == 0
    with pytest.raises(ZeroToNonpositivePowerError):
        complex_pow(0, 0)
    with pytest.raises(ZeroToNonpositivePowerError):
        complex_pow(0, 1j)


def test_complex_pow_integer_exponents_match_repeated_multiplication():
    rng = random.Random(3)
    for _ in range(200):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        for e in range(-8, 9):
            ref = 1 + 0j
            for _ in range(abs(e)):
                ref = ref * z if e > 0 else ref / z
            assert rel(complex_pow(z, e), ref) <= 1e-13


def test_neg_one_pow():
    assert neg_one_pow(4) == 1
    assert neg_one_pow(-3) == -1
    assert rel(neg_one_pow(0.5), 1j) < 1e-15


# -- helpers ---------------------------------------------------------------------

def test_csum_cancellation():
    assert csum([1e16, 1.0, -1e16]) == 1.0
    assert csum([1e16j, 1j, -1e16j]) == 1j


def test_lattice_distance():
    assert lattice_distance(-3) == 0
    assert lattice_distance(2.5) == pytest.approx(0.5)
    assert lattice_distance(7.1) == pytest.approx(0.1)
    assert lattice_distance(-2.5 + 0.1j) == pytest.approx(abs(0.5 + 0.1j))


@settings(max_examples=200, deadline=None)
@given(
    st.complex_numbers(min_magnitude=0.1, max_magnitude=8, allow_nan=False, allow_infinity=False),
)
def test_gamma_reflection_property(s):
    if lattice_distance(s) < 1e-3 or lattice_distance(1 - s) < 1e-3:
        return
    lhs = gamma(s) * gamma(1 - s)
    rhs = math.pi / cmath.sin(math.pi * s)
    assert rel(lhs, rhs) < 1e-10


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-6, 6), st.floats(-6, 6), st.floats(-4, 4), st.floats(-4, 4),
)
def test_binomial_pascal_property(xr, xi, yr, yi):
    x, y = complex(xr, xi), complex(yr, yi)
    forms = (x + 1, y + 1, x - y + 1, y, x - y + 1 + 1, x, x - y)
    if min(lattice_distance(z) for z in forms) < 1e-3 or min(lattice_distance(z + 1) for z in forms) < 1e-3:
        return
    lhs = binomial(x + 1, y + 1)
    rhs = binomial(x, y) + binomial(x, y + 1)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(binomial(x, y)), abs(binomial(x, y + 1)))
