"""Exact rational ground truth built on :class:`fractions.Fraction`.

Binomials are exact whenever the lower argument (or the difference of the
arguments) is an integer; the upper argument may be any rational, negative
integers included (evaluated as falling products, never via gamma).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence, Union

from .errors import (
    DivisionByZeroError,
    DomainError,
    NotExactlyEvaluableError,
    SingularTermError,
)

Rational = Union[int, Fraction]
BigRational = Fraction

__all__ = [
    "BigRational",
    "binomial_exact",
    "binomial_rational",
    "falling_product_exact",
    "harmonic_exact",
    "gen_harmonic_exact",
    "ExactBackend",
    "EXACT",
    "eval_exact",
]


def _to_fraction(v, label="value") -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, complex) and v.imag == 0:
        v = v.real
    if isinstance(v, float) and v.is_integer():
        return Fraction(int(v))
    raise NotExactlyEvaluableError(f"{label}={v!r} is not rational")


def _integer(v: Rational) -> int | None:
    if isinstance(v, int):
        return v
    if v.denominator == 1:
        return v.numerator
    return None


def binomial_exact(n: int, k: int) -> Fraction:
    """n! / (k! (n-k)!) for 0 <= k <= n, else 0."""
    if n < 0:
        raise DomainError(f"binomial_exact needs n >= 0, got {n}")
    if 0 <= k <= n:
        return Fraction(math.comb(n, k))
    return Fraction(0)


def _falling_ratio(x: Fraction, j: int) -> Fraction:
    # prod_{i<j} (x - i) / j!, done in integers
    p, q = x.numerator, x.denominator
    num = 1
    for i in range(j):
        num *= p - i * q
    return Fraction(num, q**j * math.factorial(j))


@lru_cache(maxsize=65536)
def binomial_rational(x: Rational, y: Rational) -> Fraction:
    """Exact C(x, y) for rational x, y with y or x - y an integer."""
    x = Fraction(x)
    y = Fraction(y)
    j = _integer(y)
    if j is not None:
        return Fraction(0) if j < 0 else _falling_ratio(x, j)
    i = _integer(x - y)
    if i is not None:
        # x is not an integer here, so C(x, y) = C(x, x - y)
        return Fraction(0) if i < 0 else _falling_ratio(x, i)
    raise NotExactlyEvaluableError(f"binomial({x}, {y})")


def falling_product_exact(s: Rational, a: int, b: int) -> Fraction:
    if a > b:
        raise DomainError(f"falling_product needs a <= b, got a={a}, b={b}")
    out = Fraction(1)
    s = Fraction(s)
    for k in range(a, b):
        out *= s - k
    return out


@lru_cache(maxsize=8192)
def _prefix(c: Fraction, m: int) -> list:
    # grown in place by gen_harmonic_exact; entry j is H^{(m)}_{c,j}
    return [Fraction(0)]


def gen_harmonic_exact(c: Rational, n: int, m: int = 1) -> Fraction:
    """sum_{k=1}^{n} (c + k)^(-m) for rational c and integer m."""
    if n < 0:
        raise DomainError(f"gen_harmonic_exact needs n >= 0, got {n}")
    c = Fraction(c)
    sums = _prefix(c, m)
    while len(sums) <= n:
        k = len(sums)
        base = c + k
        if base == 0:
            raise SingularTermError(k, c)
        sums.append(sums[-1] + base ** (-m))
    return sums[n]


def harmonic_exact(n: int) -> Fraction:
    if n < 0:
        raise DomainError(f"harmonic_exact needs n >= 0, got {n}")
    return gen_harmonic_exact(0, n, 1)


class ExactBackend:
    """Evaluation primitives over Fraction, shared with the numeric backends.

    Every binomial power takes an integer exponent; a vanishing binomial under
    a negative power makes the instance non-exact-capable.
    """

    name = "exact"

    def const(self, v) -> Fraction:
        return Fraction(v)

    def pow(self, base, w) -> Fraction:
        k = _integer(_to_fraction(w, "w"))
        if k is None:
            raise NotExactlyEvaluableError(f"power with exponent {w}")
        base = _to_fraction(base)
        if base == 0 and k <= 0:
            raise DivisionByZeroError(f"0 ** {k}")
        return base**k

    def sign(self, t) -> Fraction:
        k = _integer(_to_fraction(t, "sign exponent"))
        if k is None:
            raise NotExactlyEvaluableError(f"(-1)^{t}")
        return Fraction(-1 if k % 2 else 1)

    def binom(self, x, y) -> Fraction:
        return binomial_rational(_to_fraction(x), _to_fraction(y))

    def inv_binom(self, x, y) -> Fraction:
        v = self.binom(x, y)
        if v == 0:
            raise NotExactlyEvaluableError(f"reciprocal of vanishing binomial({x}, {y})")
        return 1 / v

    def _binom_power(self, x, y, w) -> Fraction:
        k = _integer(_to_fraction(w, "w"))
        if k is None:
            raise NotExactlyEvaluableError(f"binomial power with exponent {w}")
        if k < 0:
            return self.inv_binom(x, y) ** (-k)
        return self.binom(x, y) ** k

    def bpow(self, x, y, w):
        return self._binom_power(x, y, w)

    def sbpow(self, x, y, s, w):
        return self.sign(Fraction(w) * s) * self._binom_power(x, y, w)

    def sbipow(self, x, y, s, w):
        return self.sign(Fraction(w) * s) * self._binom_power(x, y, -Fraction(w))

    def rpow(self, x, y, j, w):
        return self._binom_power(x, j, w) * self._binom_power(y, j, -Fraction(w))

    def H(self, c, n, m=1) -> Fraction:
        k = _integer(_to_fraction(m, "order"))
        if k is None:
            raise NotExactlyEvaluableError(f"harmonic order {m}")
        return gen_harmonic_exact(_to_fraction(c, "offset"), n, k)

    def div(self, num, den, name: str) -> Fraction:
        den = _to_fraction(den)
        if den == 0:
            raise DivisionByZeroError(name)
        return _to_fraction(num) / den

    def total(self, terms: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        value = sum(terms, Fraction(0))
        return value, sum((abs(t) for t in terms), Fraction(0))


EXACT = ExactBackend()


def eval_exact(side: Callable, assignment: Mapping[str, object]) -> Fraction:
    """Exact value of one identity side (a callable ``side(backend, assignment)``
    returning its additive terms)."""
    values = {}
    for name, v in assignment.items():
        values[name] = v if isinstance(v, int) else _to_fraction(v, name)
    try:
        terms = side(EXACT, values)
    except (NotExactlyEvaluableError, DivisionByZeroError, SingularTermError):
        raise
    except ZeroDivisionError as exc:
        raise DivisionByZeroError(str(exc)) from exc
    return sum(terms, Fraction(0))
