"""Complex gamma, binomial coefficients, falling products and harmonic numbers.

Everything here works on Python ``complex`` values.  Powers and logarithms use
the principal branch (argument in (-pi, pi]); the log-gamma is the principal
branch continued from the positive real axis, so it satisfies
``log_gamma(s + 1) == log_gamma(s) + log(s)`` exactly off the negative real axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DomainError,
    IndeterminateError,
    PoleError,
    SingularTermError,
    ZeroToNonpositivePowerError,
)

__all__ = [
    "GammaConfig",
    "DEFAULT_CONFIG",
    "log_gamma",
    "gamma",
    "binomial",
    "falling_product",
    "harmonic",
    "gen_harmonic",
    "complex_pow",
    "neg_one_pow",
    "csum",
    "is_pole",
    "lattice_distance",
]


@dataclass(frozen=True)
class GammaConfig:
    approximation: str = "lanczos-g671/128-n14"
    target_accuracy: float = 1e-12
    pole_tolerance: float = 1e-9


DEFAULT_CONFIG = GammaConfig()

# Lanczos coefficients for g = 671/128 (Numerical Recipes, 3rd ed., gammln).
_LANCZOS_G = 5.2421875
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _log(z: complex) -> complex:
    # Adding +0.0 maps a -0.0 imaginary part to +0.0, so the negative real
    # axis gets argument +pi instead of -pi.
    return cmath.log(complex(z.real, z.imag + 0.0))


def csum(values: Iterable[complex]) -> complex:
    """Correctly rounded sum, real and imaginary parts summed independently."""
    re = []
    im = []
    for v in values:
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


def lattice_distance(z: complex) -> float:
    """Distance from ``z`` to the nearest integer."""
    z = complex(z)
    return abs(z - round(z.real))


def is_pole(s: complex, tol: float = DEFAULT_CONFIG.pole_tolerance) -> bool:
    s = complex(s)
    n = round(s.real)
    return n <= 0 and abs(s - n) < tol


def _lanczos_log(z: complex) -> complex:
    t = z + _LANCZOS_G
    head = (z + 0.5) * cmath.log(t) - t
    ser = _LANCZOS_C0
    y = z
    for c in _LANCZOS_COEF:
        y += 1
        ser += c / y
    return head + cmath.log(_SQRT_2PI * ser / z)


def log_gamma(s: complex, config: GammaConfig = DEFAULT_CONFIG) -> complex:
    """Principal branch of log Gamma(s)."""
    s = complex(s)
    if is_pole(s, config.pole_tolerance):
        raise PoleError(s)
    if s.imag == 0.0 and s.real > 0.0:
        return complex(math.lgamma(s.real), 0.0)
    if s.real >= 0.5:
        return _lanczos_log(s)
    # Shift into the Lanczos half plane with the recurrence; summing principal
    # logs keeps the result on the principal branch.
    shift = math.ceil(0.5 - s.real)
    head = _lanczos_log(s + shift)
    return head - csum(_log(s + j) for j in range(shift))


def gamma(s: complex, config: GammaConfig = DEFAULT_CONFIG) -> complex:
    s = complex(s)
    if is_pole(s, config.pole_tolerance):
        raise PoleError(s)
    if s.imag == 0.0:
        try:
            return complex(math.gamma(s.real), 0.0)
        except OverflowError:
            raise OverflowError(f"|gamma({s!r})| exceeds the floating range") from None
    try:
        if s.real >= 0.5:
            return cmath.exp(_lanczos_log(s))
        # reflection: Gamma(s) Gamma(1 - s) = pi / sin(pi s)
        return math.pi / (cmath.sin(math.pi * s) * gamma(1.0 - s, config))
    except OverflowError:
        raise OverflowError(f"|gamma({s!r})| exceeds the floating range") from None


def _as_int(z: complex) -> int | None:
    if z.imag == 0.0 and z.real.is_integer():
        return int(z.real)
    return None


def binomial(x: complex, y: complex, config: GammaConfig = DEFAULT_CONFIG) -> complex:
    """Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)).

    A pole in exactly one denominator gamma gives 0; a pole in the numerator
    gamma raises :class:`IndeterminateError`.
    """
    x = complex(x)
    y = complex(y)
    n, k = _as_int(x), _as_int(y)
    if n is not None and k is not None and n >= 0:
        return complex(math.comb(n, k), 0.0) if 0 <= k <= n else 0j
    tol = config.pole_tolerance
    if is_pole(x + 1, tol):
        raise IndeterminateError(f"binomial({x!r}, {y!r}): numerator gamma at a pole")
    if is_pole(y + 1, tol) or is_pole(x - y + 1, tol):
        return 0j
    return cmath.exp(
        log_gamma(x + 1, config) - log_gamma(y + 1, config) - log_gamma(x - y + 1, config)
    )


def falling_product(s: complex, a: int, b: int) -> complex:
    """prod_{k=a}^{b-1} (s - k) by direct multiplication."""
    if a > b:
        raise DomainError(f"falling_product needs a <= b, got a={a}, b={b}")
    s = complex(s)
    out = 1 + 0j
    for k in range(a, b):
        out *= s - k
    return out


def harmonic(n: int) -> float:
    if n < 0:
        raise DomainError(f"harmonic number needs n >= 0, got {n}")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def gen_harmonic(c: complex, n: int, m: complex = 1, config: GammaConfig = DEFAULT_CONFIG) -> complex:
    """sum_{k=1}^{n} (c + k)^(-m), principal powers."""
    if n < 0:
        raise DomainError(f"gen_harmonic needs n >= 0, got {n}")
    c = complex(c)
    m = complex(m)
    tol = config.pole_tolerance
    terms = []
    for k in range(1, n + 1):
        base = c + k
        if abs(base) < tol:
            raise SingularTermError(k, c)
        terms.append(1.0 / base if m == 1 else complex_pow(base, -m))
    return csum(terms)


def complex_pow(base: complex, exponent: complex) -> complex:
    """Principal power exp(exponent * Log(base))."""
    base = complex(base)
    e = complex(exponent)
    if base == 0:
        if e.imag == 0.0 and e.real > 0.0:
            return 0j
        raise ZeroToNonpositivePowerError(f"0 ** {e!r}")
    if e.imag == 0.0 and e.real.is_integer() and abs(e.real) <= 64:
        return base ** int(e.real)
    return cmath.exp(e * _log(base))


def neg_one_pow(t: complex) -> complex:
    """(-1)^t read as exp(i*pi*t); exactly +-1 for integer t."""
    t = complex(t)
    if t.imag == 0.0 and t.real.is_integer():
        return -1 + 0j if int(t.real) % 2 else 1 + 0j
    return cmath.exp(1j * math.pi * t)
