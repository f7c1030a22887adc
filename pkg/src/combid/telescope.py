"""Product difference equation and its power-difference special case.

For factors alpha_k = (x - z_k)^{w_k} and beta_k = (y - z_k)^{w_k},

    prod(alpha) - prod(beta)
        = sum_k (alpha_k - beta_k) * prod_{l<k} alpha_l * prod_{l>k} beta_l.

Each alpha_k and beta_k is evaluated once and reused on both sides, so the
equality is independent of the power branch.  Rational ``x``, ``y``, ``z`` with
integer ``w`` are evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import ZeroToNonpositivePowerError
from .specfun import complex_pow, csum

__all__ = [
    "FactorSystem",
    "factor_values",
    "product_difference_lhs",
    "product_difference_rhs",
    "product_difference_terms",
    "power_difference",
    "TheoremCheck",
    "check_theorem",
]

CONDITION_CAP = 1e6


@dataclass(frozen=True)
class FactorSystem:
    x: complex
    y: complex
    z: Sequence = field(default_factory=tuple)
    w: Sequence = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(self.z))
        object.__setattr__(self, "w", tuple(self.w))
        if len(self.z) != len(self.w):
            raise ValueError(f"z and w differ in length: {len(self.z)} != {len(self.w)}")

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def is_exact(self) -> bool:
        rational = (self.x, self.y, *self.z)
        return all(isinstance(v, Rational) for v in rational) and all(
            isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1) for v in self.w
        )


def _power(base, w, exact: bool):
    if exact:
        base = Fraction(base)
        w = int(w)
        if base == 0 and w <= 0:
            raise ZeroToNonpositivePowerError(f"0 ** {w}")
        return base**w
    return complex_pow(base, w)


def factor_values(f: FactorSystem) -> tuple[list, list]:
    """The shared values (alpha_k, beta_k), each computed exactly once."""
    exact = f.is_exact
    alphas = [_power(f.x - z, w, exact) for z, w in zip(f.z, f.w)]
    betas = [_power(f.y - z, w, exact) for z, w in zip(f.z, f.w)]
    return alphas, betas


def _prod(values, one):
    out = one
    for v in values:
        out = out * v
    return out


def _lhs_from(alphas, betas, exact):
    one = Fraction(1) if exact else 1 + 0j
    return _prod(alphas, one) - _prod(betas, one)


def _terms_from(alphas, betas, exact):
    one = Fraction(1) if exact else 1 + 0j
    n = len(alphas)
    prefix = [one]
    for a in alphas:
        prefix.append(prefix[-1] * a)
    suffix = [one] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = betas[k] * suffix[k + 1]
    return [(alphas[k] - betas[k]) * prefix[k] * suffix[k + 1] for k in range(n)]


def _sum(terms, exact):
    return sum(terms, Fraction(0)) if exact else csum(terms)


def product_difference_lhs(f: FactorSystem):
    alphas, betas = factor_values(f)
    return _lhs_from(alphas, betas, f.is_exact)


def product_difference_terms(f: FactorSystem) -> list:
    alphas, betas = factor_values(f)
    return _terms_from(alphas, betas, f.is_exact)


def product_difference_rhs(f: FactorSystem):
    return _sum(product_difference_terms(f), f.is_exact)


def power_difference(x, y, n: int):
    """(x^n - y^n, (x - y) * sum_{k=1}^{n} x^{k-1} y^{n-k})."""
    if n < 0:
        raise ValueError(f"power_difference needs n >= 0, got {n}")
    exact = isinstance(x, Rational) and isinstance(y, Rational)
    if exact:
        x, y = Fraction(x), Fraction(y)
        lhs = x**n - y**n
        rhs = (x - y) * sum((x ** (k - 1) * y ** (n - k) for k in range(1, n + 1)), Fraction(0))
        return lhs, rhs
    x, y = complex(x), complex(y)
    lhs = x**n - y**n
    rhs = (x - y) * csum(x ** (k - 1) * y ** (n - k) for k in range(1, n + 1))
    return lhs, rhs


@dataclass(frozen=True)
class TheoremCheck:
    lhs: object
    rhs: object
    rel_err: float
    condition: float
    status: str  # "pass", "fail" or "skipped_ill_conditioned"


def check_theorem(f: FactorSystem, tolerance: float = 1e-10) -> TheoremCheck:
    """Compare both sides with alpha/beta shared between them.

    The error is measured against max(|lhs|, |rhs|, 1e-3 * sum|terms|); an
    instance whose cancellation ratio sum|terms| / max(|lhs|, |rhs|) exceeds
    1e6 is reported as ill-conditioned instead of judged.
    """
    exact = f.is_exact
    alphas, betas = factor_values(f)
    lhs = _lhs_from(alphas, betas, exact)
    terms = _terms_from(alphas, betas, exact)
    rhs = _sum(terms, exact)
    if exact:
        ok = lhs == rhs
        return TheoremCheck(lhs, rhs, 0.0 if ok else float("inf"), 1.0, "pass" if ok else "fail")
    size = max(abs(lhs), abs(rhs))
    mass = sum(abs(t) for t in terms)
    condition = mass / size if size > 0 else (1.0 if mass == 0 else float("inf"))
    if condition > CONDITION_CAP:
        return TheoremCheck(lhs, rhs, float("nan"), condition, "skipped_ill_conditioned")
    scale = max(size, 1e-3 * mass)
    err = abs(lhs - rhs)
    rel = 0.0 if err == 0 else err / scale
    return TheoremCheck(lhs, rhs, rel, condition, "pass" if rel <= tolerance else "fail")
