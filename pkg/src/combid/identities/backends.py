"""Numeric evaluation backends for identity sides.

Identity evaluators are written once against a small backend interface
(``pow``, ``sign``, ``binom``, ``bpow``/``sbpow``/``sbipow``/``rpow``, ``H``,
``div``, ``total``) and run unchanged over complex floats or exact rationals
(:class:`combid.exact.ExactBackend`).

Binomial powers come in four shapes:

``bpow(X, L, w)``
    C(X, L)^w
``sbpow(X, L, s, w)``
    (-1)^{ws} C(X, L)^w
``sbipow(X, L, s, w)``
    (-1)^{ws} C(X, L)^{-w}
``rpow(X, Y, j, w)``
    C(X, j)^w C(Y, j)^{-w}

:class:`PrincipalBackend` computes them literally, as ``complex_pow`` of the
binomial value.  :class:`FactoredBackend` splits each binomial into gamma
factors and raises each factor to ``w`` through ``exp(w * log_gamma)``, which
is what keeps the telescoping identities exact for arbitrary complex ``w``.
For integer ``w`` both conventions give the same value and the factored
backend defers to the principal one (which also copes with integer poles).
"""

from __future__ import annotations

import cmath
import math

from ..errors import DivisionByZeroError
from ..specfun import (
    binomial,
    complex_pow,
    csum,
    gen_harmonic,
    log_gamma,
    neg_one_pow,
)

__all__ = ["PrincipalBackend", "FactoredBackend", "PRINCIPAL", "FACTORED"]


def _is_integer(w) -> bool:
    w = complex(w)
    return w.imag == 0.0 and w.real.is_integer()


class PrincipalBackend:
    name = "principal"

    def const(self, v) -> complex:
        return complex(v)

    def pow(self, base, w) -> complex:
        return complex_pow(base, w)

    def sign(self, t) -> complex:
        return neg_one_pow(t)

    def binom(self, x, y) -> complex:
        return binomial(x, y)

    def inv_binom(self, x, y) -> complex:
        v = binomial(x, y)
        if v == 0:
            raise DivisionByZeroError(f"1/binomial({x}, {y})")
        return 1.0 / v

    def bpow(self, x, y, w) -> complex:
        return complex_pow(binomial(x, y), w)

    def sbpow(self, x, y, s, w) -> complex:
        return neg_one_pow(w * s) * complex_pow(binomial(x, y), w)

    def sbipow(self, x, y, s, w) -> complex:
        return neg_one_pow(w * s) * complex_pow(binomial(x, y), -w)

    def rpow(self, x, y, j, w) -> complex:
        return complex_pow(binomial(x, j), w) * complex_pow(binomial(y, j), -w)

    def H(self, c, n, m=1) -> complex:
        return gen_harmonic(c, n, m)

    def div(self, num, den, name: str) -> complex:
        if den == 0:
            raise DivisionByZeroError(name)
        return num / den

    def total(self, terms) -> tuple[complex, float]:
        return csum(terms), math.fsum(abs(t) for t in terms)


class FactoredBackend(PrincipalBackend):
    name = "factored"

    def bpow(self, x, y, w):
        if _is_integer(w):
            return super().bpow(x, y, w)
        return cmath.exp(w * (log_gamma(x + 1) - log_gamma(y + 1) - log_gamma(x - y + 1)))

    def sbpow(self, x, y, s, w):
        # 1/Gamma(X-L+1) = Gamma(L-X) sin(pi (L-X)) / pi, and
        # sin(pi (L-X)) = (-1)^s sin(pi (L-X-s)) absorbs the sign factor.
        if _is_integer(w):
            return super().sbpow(x, y, s, w)
        t = y - x
        k = cmath.sin(math.pi * (t - s)) / math.pi
        g = cmath.exp(w * (log_gamma(x + 1) + log_gamma(t) - log_gamma(y + 1)))
        return g * complex_pow(k, w)

    def sbipow(self, x, y, s, w):
        # Gamma(L+1) = pi / (Gamma(-L) sin(pi (L+1))), sign absorbed likewise.
        if _is_integer(w):
            return super().sbipow(x, y, s, w)
        k = math.pi / cmath.sin(math.pi * (y + 1 - s))
        g = cmath.exp(w * (log_gamma(x - y + 1) - log_gamma(x + 1) - log_gamma(-y)))
        return g * complex_pow(k, w)

    def rpow(self, x, y, j, w):
        # Gamma(j+1) cancels between the two binomials.
        if _is_integer(w):
            return super().rpow(x, y, j, w)
        return cmath.exp(
            w * (log_gamma(x + 1) - log_gamma(x - j + 1) - log_gamma(y + 1) + log_gamma(y - j + 1))
        )


PRINCIPAL = PrincipalBackend()
FACTORED = FactoredBackend()
