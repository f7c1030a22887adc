"""The identity registry.

Every summation identity is stored as a summand ``f(B, A, k)``, summation
bounds ``bounds(A) -> (lo, hi)`` (the sum runs over ``lo <= k < hi``) and a
right side ``rhs(B, A)`` returning a list of additive terms.  ``B`` is an
evaluation backend, ``A`` the symbol assignment.  Derivative relations are
stored as a function of ``x`` plus its analytic derivative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from ..specfun import complex_pow, gen_harmonic, lattice_distance, binomial

__all__ = ["Symbol", "IdentitySpec", "build_registry", "registry", "get_spec"]

SUMMATION = "summation"
DERIVATIVE = "derivative"


@dataclass(frozen=True)
class Symbol:
    """One identity parameter and the ranges it is drawn from.

    ``kind`` is one of integer, nonneg-integer, complex, real.  Integers use
    ``lo..hi`` inclusive (offset by the value of ``relative_to`` when set);
    complex values use the rectangle ``[lo, hi] x [im_lo, im_hi]``.  ``exact``
    says how the symbol is drawn for exact evaluation: ``int`` over
    ``exact_range``, ``rat`` (small-denominator rationals over ``exact_range``)
    or ``w`` (one of 1, 2, 3).
    """

    name: str
    kind: str
    lo: float = -5.0
    hi: float = 5.0
    im_lo: float = -5.0
    im_hi: float = 5.0
    relative_to: Optional[str] = None
    exact: str = "int"
    exact_range: Optional[tuple] = None

    @property
    def is_integer(self) -> bool:
        return self.kind in ("integer", "nonneg-integer")


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    label: str
    symbols: tuple
    guards: tuple = ()
    modes: frozenset = frozenset({"numeric", "exact"})
    validity_class: str = "proved-general"
    kind: str = SUMMATION
    summand: Optional[Callable] = None
    bounds: Optional[Callable] = None
    rhs: Optional[Callable] = None
    function: Optional[Callable] = None
    derivative: Optional[Callable] = None
    alt_derivative: Optional[Callable] = None
    description: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def symbol_names(self) -> tuple:
        return tuple(s.name for s in self.symbols)

    def symbol(self, name: str) -> Symbol:
        for s in self.symbols:
            if s.name == name:
                return s
        raise KeyError(name)

    def lhs(self, B, A) -> list:
        lo, hi = self.bounds(A)
        return [self.summand(B, A, k) for k in range(lo, hi)]

    def rhs_terms(self, B, A) -> list:
        return self.rhs(B, A)

    @property
    def reversible(self) -> bool:
        return self.kind == SUMMATION


# -- symbols -----------------------------------------------------------------

def _a(lo=-10, hi=10, exact=None):
    return Symbol("a", "integer", lo, hi, exact_range=exact or (lo, hi))


def _b(span=25, lo=0, exact_span=25):
    return Symbol("b", "integer", lo, span, relative_to="a", exact_range=(0, exact_span))


def _n(hi=30, exact_hi=None, lo=0):
    return Symbol("n", "nonneg-integer", lo, hi, exact_range=(0, exact_hi if exact_hi is not None else hi))


_W = Symbol("w", "complex", -2.0, 2.0, -2.0, 2.0, exact="w")
# Harmonic-weighted sums with complex w: |(-1)^{wk}| and |k^w| spread the terms
# over many orders of magnitude, so the numeric box is narrower and shorter.
_W_HARMONIC = Symbol("w", "complex", -1.5, 1.5, -0.25, 0.25, exact="w")
HARMONIC_SPAN = 12
_X = Symbol("x", "complex", exact="rat", exact_range=(-5, 5))
_Y_INT = Symbol("y", "complex", exact="int", exact_range=(-5, 5))
_Y_RAT = Symbol("y", "complex", exact="rat", exact_range=(-5, 5))
_M_INT = Symbol("m", "complex", exact="int", exact_range=(-5, 5))
_M_RAT = Symbol("m", "complex", exact="rat", exact_range=(-5, 5))


def _lattice(*exprs):
    # every gamma argument and harmonic offset in the identities is an integer
    # shift of one of these linear forms
    table = {
        "x": lambda A: A["x"],
        "y": lambda A: A["y"],
        "x-y": lambda A: A["x"] - A["y"],
        "m": lambda A: A["m"],
        "x+y": lambda A: A["x"] + A["y"],
    }
    return tuple((f"dist({e}, Z)", (lambda f: lambda A: lattice_distance(f(A)))(table[e])) for e in exprs)


def _absguard(label, fn):
    return (f"|{label}|", lambda A: abs(fn(A)))


def _ab(A):
    return A["a"], A["b"]


# -- binomial identities, general w ------------------------------------------
# family 1: C(x+k, y)^w;  family 2: (-1)^{wk} C(x, y+k)^w
# family 3: (-1)^{wk} C(x, y+k)^{-w};  family 4: C(x, k)^w C(y, k)^{-w}

def _eq08_summand(B, A, k):
    x, y, w = A["x"], A["y"], A["w"]
    return (B.pow(x + k + 1, w) - B.pow(x - y + k, w)) * B.bpow(x + k, y, w)


def _eq08_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    p = B.pow(y + 1, w)
    return [p * B.bpow(x + b, y + 1, w), -p * B.bpow(x + a, y + 1, w)]


def _eq09_summand(B, A, k):
    x, y, w = A["x"], A["y"], A["w"]
    return (B.pow(y - x + k, w) - B.pow(y + k, w)) * B.sbpow(x, y + k, k, w)


def _eq09_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    p = B.pow(x, w)
    return [p * B.sbpow(x - 1, y + b - 1, b, w), -p * B.sbpow(x - 1, y + a - 1, a, w)]


def _eq10_summand(B, A, k):
    x, y, w = A["x"], A["y"], A["w"]
    return (B.pow(-y - k - 1, w) - B.pow(x - y - k + 1, w)) * B.sbipow(x, y + k, k, w)


def _eq10_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    p = B.pow(x + 1, w)
    return [p * B.sbipow(x + 1, y + b, b, w), -p * B.sbipow(x + 1, y + a, a, w)]


def _eq11_summand(B, A, k):
    x, y, w = A["x"], A["y"], A["w"]
    return (B.pow(x - k, w) - B.pow(y - k + 1, w)) * B.rpow(x, y, k, w)


def _eq11_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    p = B.pow(y + 1, w)
    return [p * B.rpow(x, y + 1, b, w), -p * B.rpow(x, y + 1, a, w)]


# -- binomial identities, w = 1 ----------------------------------------------

def _bin1w1_summand(B, A, k):
    return B.binom(A["x"] + k, A["y"])


def _bin1w1_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    return [B.binom(x + b, y + 1), -B.binom(x + a, y + 1)]


def _bin2w1_summand(B, A, k):
    return B.sign(k) * B.binom(A["x"], A["y"] + k)


def _bin2w1_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    return [B.sign(a) * B.binom(x - 1, y + a - 1), -B.sign(b) * B.binom(x - 1, y + b - 1)]


def _bin3w1_summand(B, A, k):
    return B.sign(k) * B.inv_binom(A["x"], A["y"] + k)


def _bin3w1_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(x + 1, x + 2, "x+2")
    return [f * B.sign(a) * B.inv_binom(x + 1, y + a), -f * B.sign(b) * B.inv_binom(x + 1, y + b)]


def _bin4w1_summand(B, A, k):
    return B.binom(A["x"], k) * B.inv_binom(A["y"], k)


def _bin4w1_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(y + 1, x - y - 1, "x-y-1")
    return [
        f * B.binom(x, b) * B.inv_binom(y + 1, b),
        -f * B.binom(x, a) * B.inv_binom(y + 1, a),
    ]


# -- generalized harmonic identities, general w --------------------------------
# "a" variants carry H_{c,k-a} growing with k, "b" variants H_{c,b-k} shrinking.

def _h1_summand(c_of, up):
    def summand(B, A, k):
        x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
        c = c_of(A)
        j1, j0 = (k - a + 1, k - a) if up else (b - k - 1, b - k)
        return (B.pow(x + k + 1, w) * B.H(c, j1) - B.pow(x - y + k, w) * B.H(c, j0)) * B.bpow(x + k, y, w)

    return summand


def _eq22_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [B.pow(y + 1, w) * B.bpow(x + b, y + 1, w) * B.H(x + a, b - a)]


def _eq23_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [-B.pow(y + 1, w) * B.bpow(x + a, y + 1, w) * B.H(y - x - b, b - a)]


def _h2_summand(c_of, up):
    def summand(B, A, k):
        x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
        c = c_of(A)
        j1, j0 = (k - a + 1, k - a) if up else (b - k - 1, b - k)
        return (B.pow(y - x + k, w) * B.H(c, j1) - B.pow(y + k, w) * B.H(c, j0)) * B.sbpow(x, y + k, k, w)

    return summand


def _eq24_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [B.pow(x, w) * B.sbpow(x - 1, y + b - 1, b, w) * B.H(y - x + a - 1, b - a)]


def _eq25_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [-B.pow(x, w) * B.sbpow(x - 1, y + a - 1, a, w) * B.H(-y - b, b - a)]


def _h3_summand(c_of, up):
    def summand(B, A, k):
        x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
        c = c_of(A)
        j1, j0 = (k - a + 1, k - a) if up else (b - k - 1, b - k)
        return (B.pow(-y - k - 1, w) * B.H(c, j1) - B.pow(x - y - k + 1, w) * B.H(c, j0)) * B.sbipow(
            x, y + k, k, w
        )

    return summand


def _eq26_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [B.pow(x + 1, w) * B.sbipow(x + 1, y + b, b, w) * B.H(y + a, b - a)]


def _eq27_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [-B.pow(x + 1, w) * B.sbipow(x + 1, y + a, a, w) * B.H(x - y - b + 1, b - a)]


def _h4_summand(c_of, up):
    def summand(B, A, k):
        x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
        c = c_of(A)
        j1, j0 = (k - a + 1, k - a) if up else (b - k - 1, b - k)
        return (B.pow(x - k, w) * B.H(c, j1) - B.pow(y - k + 1, w) * B.H(c, j0)) * B.rpow(x, y, k, w)

    return summand


def _eq28_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [B.pow(y + 1, w) * B.rpow(x, y + 1, b, w) * B.H(a - x - 1, b - a)]


def _eq29_rhs(B, A):
    x, y, w, a, b = A["x"], A["y"], A["w"], A["a"], A["b"]
    return [-B.pow(y + 1, w) * B.rpow(x, y + 1, a, w) * B.H(y - b + 1, b - a)]


_C1A = lambda A: A["x"] + A["a"]
_C1B = lambda A: A["y"] - A["x"] - A["b"]
_C2A = lambda A: A["y"] - A["x"] + A["a"] - 1
_C2B = lambda A: -A["y"] - A["b"]
_C3A = lambda A: A["y"] + A["a"]
_C3B = lambda A: A["x"] - A["y"] - A["b"] + 1
_C4A = lambda A: A["a"] - A["x"] - 1
_C4B = lambda A: A["y"] - A["b"] + 1


# -- generalized harmonic identities, w = 1 ------------------------------------

def _hw1_summand(weight, c_of, up):
    def summand(B, A, k):
        a, b = A["a"], A["b"]
        j = k - a if up else b - k - 1
        return weight(B, A, k) * B.H(c_of(A), j)

    return summand


_W1 = lambda B, A, k: B.binom(A["x"] + k, A["y"])
_W2 = lambda B, A, k: B.sign(k) * B.binom(A["x"], A["y"] + k)
_W3 = lambda B, A, k: B.sign(k) * B.inv_binom(A["x"], A["y"] + k)
_W4 = lambda B, A, k: B.binom(A["x"], k) * B.inv_binom(A["y"], k)


def _eq30_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    r = B.div(1, y + 1, "y+1")
    return [B.binom(x + b, y + 1) * (B.H(x + a, b - a) - r), r * B.binom(x + a, y + 1)]


def _eq31_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    r = B.div(1, y + 1, "y+1")
    return [-B.binom(x + a, y + 1) * (B.H(y - x - b, b - a) - r), -r * B.binom(x + b, y + 1)]


def _eq32_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    r = B.div(1, x, "x")
    return [
        B.sign(b + 1) * B.binom(x - 1, y + b - 1) * (B.H(y - x + a - 1, b - a) + r),
        B.sign(a) * r * B.binom(x - 1, y + a - 1),
    ]


def _eq33_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    r = B.div(1, x, "x")
    return [
        B.sign(a) * B.binom(x - 1, y + a - 1) * (B.H(-y - b, b - a) + r),
        -B.sign(b) * r * B.binom(x - 1, y + b - 1),
    ]


def _eq34_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(x + 1, x + 2, "x+2")
    r = B.div(1, x + 2, "x+2")
    return [
        f * B.sign(b + 1) * B.inv_binom(x + 1, y + b) * (B.H(y + a, b - a) - r),
        -f * B.sign(a) * r * B.inv_binom(x + 1, y + a),
    ]


def _eq35_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(x + 1, x + 2, "x+2")
    r = B.div(1, x + 2, "x+2")
    return [
        f * B.sign(a) * B.inv_binom(x + 1, y + a) * (B.H(x - y - b + 1, b - a) - r),
        f * B.sign(b) * r * B.inv_binom(x + 1, y + b),
    ]


def _eq36_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(y + 1, x - y - 1, "x-y-1")
    r = B.div(1, x - y - 1, "x-y-1")
    return [
        f * B.binom(x, b) * B.inv_binom(y + 1, b) * (B.H(a - x - 1, b - a) + r),
        -f * r * B.binom(x, a) * B.inv_binom(y + 1, a),
    ]


def _eq37_rhs(B, A):
    x, y, a, b = A["x"], A["y"], A["a"], A["b"]
    f = B.div(y + 1, y - x + 1, "y-x+1")
    r = B.div(1, y - x + 1, "y-x+1")
    return [
        f * B.binom(x, a) * B.inv_binom(y + 1, a) * (B.H(y - b + 1, b - a) - r),
        f * r * B.binom(x, b) * B.inv_binom(y + 1, b),
    ]


# -- traditional harmonic numbers (sum over k = 0..n) ------------------------

def _zero_to_n(A):
    return 0, A["n"] + 1


def _eq38_summand(B, A, k):
    h = B.H(0, k)
    if h == 0:
        # k = 0: H_0 = 0 kills the term even where 0^w is undefined
        return h
    w = A["w"]
    return (B.pow(k + 1, w) - B.pow(k, w)) * h


def _eq38_rhs(B, A):
    n, w = A["n"], A["w"]
    return [B.pow(n + 1, w) * B.H(0, n + 1), -B.H(0, n + 1, 1 - w)]


def _eq39_summand(B, A, k):
    return B.binom(k, A["m"]) * B.H(0, k)


def _eq39_rhs(B, A):
    n, m = A["n"], A["m"]
    r = B.div(1, m + 1, "m+1")
    return [B.binom(n + 1, m + 1) * (B.H(0, n + 1) - r), r * B.binom(0, m + 1)]


def _eq40_summand(B, A, k):
    n, m = A["n"], A["m"]
    return B.binom(m, n - k) * B.inv_binom(n, k) * B.H(0, k)


def _eq40_rhs(B, A):
    n, m = A["n"], A["m"]
    f = B.div(n + 1, n - m + 1, "n-m+1")
    r = B.div(1, n - m + 1, "n-m+1")
    return [f * B.H(0, n + 1), f * r * (B.binom(m, n + 1) - 1)]


def _eq41_summand(B, A, k):
    return B.sign(k) * B.inv_binom(A["m"], k) * B.H(0, k)


def _eq41_rhs(B, A):
    n, m = A["n"], A["m"]
    f = B.div(m + 1, m + 2, "m+2")
    r = B.div(1, m + 2, "m+2")
    return [f * B.sign(n) * B.inv_binom(m + 1, n + 1) * (B.H(0, n + 1) - r), -f * r]


# -- fixed examples ------------------------------------------------------------

def _eq12_summand(B, A, k):
    return B.binom(A["n"], k) ** 2


def _eq12_rhs(B, A):
    n = A["n"]
    return [B.binom(2 * n, n)]


def _eq13_summand(B, A, k):
    return k * B.binom(A["n"], k) ** 2


def _eq13_rhs(B, A):
    n = A["n"]
    return [B.div(n, 2, "2") * B.binom(2 * n, n)]


def _zero_to_2n(A):
    return 0, 2 * A["n"] + 1


def _eq14_summand(B, A, k):
    return B.sign(k) * B.binom(2 * A["n"], k) ** 3


def _eq14_rhs(B, A):
    n = A["n"]
    return [B.sign(n) * B.binom(2 * n, n) * B.binom(3 * n, n)]


def _eq15_summand(B, A, k):
    n = A["n"]
    return B.sign(k) * k * (2 * n - k) * B.binom(2 * n, k) ** 3


def _eq15_rhs(B, A):
    n = A["n"]
    return [B.sign(n) * B.div(4 * n * n, 3, "3") * B.binom(2 * n, n) * B.binom(3 * n, n)]


# -- derivative relations --------------------------------------------------------

def _fd21_function(A, x):
    w = A["w"]
    out = 1 + 0j
    for k in range(A["a"], A["b"]):
        out *= complex_pow(x - k, w)
    return out


def _fd21_derivative(A):
    x, w, a, b = A["x"], A["w"], A["a"], A["b"]
    return w * gen_harmonic(x - b, b - a) * _fd21_function(A, x)


def _fd21_alt(A):
    x, w, a, b = A["x"], A["w"], A["a"], A["b"]
    return -w * gen_harmonic(a - x - 1, b - a) * _fd21_function(A, x)


def _fdh_function(A, x):
    return gen_harmonic(x + A["y"], A["n"], A["m"])


def _fdh_derivative(A):
    m = A["m"]
    return -m * gen_harmonic(A["x"] + A["y"], A["n"], m + 1)


def _fdb_function(A, x):
    return complex_pow(binomial(x + A["y"], A["n"]), A["w"])


def _fdb_derivative(A):
    s, n, w = A["x"] + A["y"], A["n"], A["w"]
    return w * gen_harmonic(s - n, n) * _fdb_function(A, A["x"])


# -- assembly --------------------------------------------------------------------

def _general(id_, label, summand, rhs, lattice, ratio_family=False, harmonic=False, description=""):
    # C(y, k)^{-w} vanishes for k < 0, so exact draws of that family keep a >= 0
    return IdentitySpec(
        id=id_,
        label=label,
        symbols=(
            _a(exact=(0, 10) if ratio_family else None),
            _b(HARMONIC_SPAN) if harmonic else _b(),
            _W_HARMONIC if harmonic else _W,
            _X,
            _Y_RAT if ratio_family else _Y_INT,
        ),
        guards=lattice,
        validity_class="integer-w-only",
        summand=summand,
        bounds=_ab,
        rhs=rhs,
        description=description,
    )


def _reduced(id_, label, summand, rhs, lattice, a_lo=-10, y_rat=False, b_lo=0, description=""):
    a_range = (a_lo, 10)
    return IdentitySpec(
        id=id_,
        label=label,
        symbols=(_a(a_lo, 10, exact=a_range), _b(lo=b_lo), _X, _Y_RAT if y_rat else _Y_INT),
        guards=lattice,
        summand=summand,
        bounds=_ab,
        rhs=rhs,
        description=description,
    )


_L1 = _lattice("x", "y", "x-y")


def _build() -> tuple:
    y1 = (_absguard("y+1", lambda A: A["y"] + 1),)
    gx = (_absguard("x", lambda A: A["x"]),)
    gx2 = (_absguard("x+2", lambda A: A["x"] + 2),)
    gxy = (_absguard("x-y-1", lambda A: A["x"] - A["y"] - 1),)
    gyx = (_absguard("y-x+1", lambda A: A["y"] - A["x"] + 1),)

    specs = [
        _general("eq08_binomial1", "binomial1", _eq08_summand, _eq08_rhs, y1 + _L1,
                 description="sum [(x+k+1)^w-(x-y+k)^w] C(x+k,y)^w"),
        _general("eq09_binomial2", "binomial2", _eq09_summand, _eq09_rhs, gx + _L1,
                 description="sum [(y-x+k)^w-(y+k)^w] (-1)^{wk} C(x,y+k)^w"),
        _general("eq10_binomial3", "binomial3", _eq10_summand, _eq10_rhs, _L1,
                 description="sum [(-y-k-1)^w-(x-y-k+1)^w] (-1)^{wk} C(x,y+k)^{-w}"),
        _general("eq11_binomial4", "binomial4", _eq11_summand, _eq11_rhs, y1 + _L1, ratio_family=True,
                 description="sum [(x-k)^w-(y-k+1)^w] C(x,k)^w C(y,k)^{-w}"),
        _reduced("eq08w1_binomial1w1", "binomial1w1", _bin1w1_summand, _bin1w1_rhs, _L1,
                 description="sum C(x+k,y)"),
        _reduced("eq09w1_binomial2w1", "binomial2w1", _bin2w1_summand, _bin2w1_rhs, _L1,
                 description="sum (-1)^k C(x,y+k)"),
        _reduced("eq10w1_binomial3w1", "binomial3w1", _bin3w1_summand, _bin3w1_rhs, gx2 + _L1,
                 description="sum (-1)^k / C(x,y+k)"),
        _reduced("eq11w1_binomial4w1", "binomial4w1", _bin4w1_summand, _bin4w1_rhs, gxy + _L1,
                 a_lo=0, y_rat=True, description="sum C(x,k) / C(y,k)"),
    ]

    fixed = [
        ("eq12", "example1", _eq12_summand, _eq12_rhs, _zero_to_n, 30, 60, "sum C(n,k)^2 = C(2n,n)"),
        ("eq13", "example1w2", _eq13_summand, _eq13_rhs, _zero_to_n, 30, 60, "sum k C(n,k)^2 = (n/2) C(2n,n)"),
        ("eq14", "example2", _eq14_summand, _eq14_rhs, _zero_to_2n, 12, 20,
         "sum (-1)^k C(2n,k)^3 = (-1)^n C(2n,n) C(3n,n)"),
        ("eq15", "example2w3", _eq15_summand, _eq15_rhs, _zero_to_2n, 12, 20,
         "sum (-1)^k k(2n-k) C(2n,k)^3 = (-1)^n (4/3) n^2 C(2n,n) C(3n,n)"),
    ]
    for id_, label, summand, rhs, bounds, n_hi, n_exact, desc in fixed:
        specs.append(
            IdentitySpec(
                id=id_,
                label=label,
                symbols=(_n(n_hi, n_exact),),
                summand=summand,
                bounds=bounds,
                rhs=rhs,
                description=desc,
                meta={"n_max": n_exact},
            )
        )

    harmonic = [
        ("eq22_harmonic1a", "harmonic1a", _h1_summand(_C1A, True), _eq22_rhs, y1 + _L1),
        ("eq23_harmonic1b", "harmonic1b", _h1_summand(_C1B, False), _eq23_rhs, y1 + _L1),
        ("eq24_harmonic2a", "harmonic2a", _h2_summand(_C2A, True), _eq24_rhs, gx + _L1),
        ("eq25_harmonic2b", "harmonic2b", _h2_summand(_C2B, False), _eq25_rhs, gx + _L1),
        ("eq26_harmonic3a", "harmonic3a", _h3_summand(_C3A, True), _eq26_rhs, _L1),
        ("eq27_harmonic3b", "harmonic3b", _h3_summand(_C3B, False), _eq27_rhs, _L1),
        ("eq28_harmonic4a", "harmonic4a", _h4_summand(_C4A, True), _eq28_rhs, y1 + _L1),
        ("eq29_harmonic4b", "harmonic4b", _h4_summand(_C4B, False), _eq29_rhs, y1 + _L1),
    ]
    for id_, label, summand, rhs, guards in harmonic:
        specs.append(
            _general(id_, label, summand, rhs, guards, ratio_family=label.startswith("harmonic4"), harmonic=True)
        )

    reduced = [
        ("eq30_harmonic1aw1", "harmonic1aw1", _W1, _C1A, True, _eq30_rhs, y1 + _L1),
        ("eq31_harmonic1bw1", "harmonic1bw1", _W1, _C1B, False, _eq31_rhs, y1 + _L1),
        ("eq32_harmonic2aw1", "harmonic2aw1", _W2, _C2A, True, _eq32_rhs, gx + _L1),
        ("eq33_harmonic2bw1", "harmonic2bw1", _W2, _C2B, False, _eq33_rhs, gx + _L1),
        ("eq34_harmonic3aw1", "harmonic3aw1", _W3, _C3A, True, _eq34_rhs, gx2 + _L1),
        ("eq35_harmonic3bw1", "harmonic3bw1", _W3, _C3B, False, _eq35_rhs, gx2 + _L1),
        ("eq36_harmonic4aw1", "harmonic4aw1", _W4, _C4A, True, _eq36_rhs, gxy + _L1),
        ("eq37_harmonic4bw1", "harmonic4bw1", _W4, _C4B, False, _eq37_rhs, gyx + _L1),
    ]
    for id_, label, weight, c_of, up, rhs, guards in reduced:
        fam4 = label.startswith("harmonic4")
        # with b - a <= 1 both sides vanish identically (only rounding residue
        # remains numerically); exact draws still cover those
        specs.append(
            _reduced(id_, label, _hw1_summand(weight, c_of, up), rhs, guards,
                     a_lo=0 if fam4 else -10, y_rat=fam4, b_lo=2)
        )

    lm = _lattice("m")
    specs += [
        IdentitySpec(
            id="eq38_harmonictrad1",
            label="harmonictrad1",
            symbols=(_n(), _W),
            summand=_eq38_summand,
            bounds=_zero_to_n,
            rhs=_eq38_rhs,
            description="sum [(k+1)^w-k^w] H_k = (n+1)^w H_{n+1} - H^{(1-w)}_{0,n+1}",
        ),
        # below, n = 0 makes both sides vanish identically, so numeric draws start at 1
        IdentitySpec(
            id="eq39_harmonictrad2",
            label="harmonictrad2",
            symbols=(_n(lo=1), _M_INT),
            guards=(_absguard("m+1", lambda A: A["m"] + 1),) + lm,
            summand=_eq39_summand,
            bounds=_zero_to_n,
            rhs=_eq39_rhs,
            description="sum C(k,m) H_k",
        ),
        IdentitySpec(
            id="eq40_harmonictrad3",
            label="harmonictrad3",
            symbols=(_n(lo=1), _M_RAT),
            guards=(_absguard("n-m+1", lambda A: A["n"] - A["m"] + 1),) + lm,
            summand=_eq40_summand,
            bounds=_zero_to_n,
            rhs=_eq40_rhs,
            description="sum C(m,n-k) C(n,k)^{-1} H_k",
        ),
        IdentitySpec(
            id="eq41_harmonictrad4",
            label="harmonictrad4",
            symbols=(_n(lo=1), _M_RAT),
            guards=(_absguard("m+2", lambda A: A["m"] + 2),) + lm,
            summand=_eq41_summand,
            bounds=_zero_to_n,
            rhs=_eq41_rhs,
            description="sum (-1)^k C(m,k)^{-1} H_k",
        ),
    ]

    fd = frozenset({"fd"})
    specs += [
        IdentitySpec(
            id="fd_eq21",
            label="difpow",
            symbols=(_a(), _b(12), _W, _X),
            guards=_lattice("x"),
            modes=fd,
            kind=DERIVATIVE,
            function=_fd21_function,
            derivative=_fd21_derivative,
            alt_derivative=_fd21_alt,
            description="d/dx prod_{k=a}^{b-1} (x-k)^w = w H_{x-b,b-a} prod",
        ),
        IdentitySpec(
            id="fd_dharm",
            label="dharm",
            symbols=(_n(), Symbol("m", "complex", -3.0, 3.0, -3.0, 3.0), _X, _Y_INT),
            guards=_lattice("x+y"),
            modes=fd,
            kind=DERIVATIVE,
            function=_fdh_function,
            derivative=_fdh_derivative,
            description="d/dx H^{(m)}_{x+y,n} = -m H^{(m+1)}_{x+y,n}",
        ),
        IdentitySpec(
            id="fd_dbinom",
            label="dbinom",
            symbols=(_n(20), _W, _X, _Y_INT),
            guards=_lattice("x+y"),
            modes=fd,
            kind=DERIVATIVE,
            function=_fdb_function,
            derivative=_fdb_derivative,
            description="d/dx C(x+y,n)^w = w H_{x+y-n,n} C(x+y,n)^w",
        ),
    ]
    return tuple(specs)


@lru_cache(maxsize=1)
def registry() -> tuple:
    return _build()


def build_registry() -> list:
    """All identity specs, in catalog order."""
    return list(registry())


def get_spec(identity_id: str) -> IdentitySpec:
    for spec in registry():
        if spec.id == identity_id:
            return spec
    raise KeyError(identity_id)
