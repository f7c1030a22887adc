"""Seeded sampling, per-instance verification and sweeps."""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from ..errors import (
    CombidError,
    DivisionByZeroError,
    NotExactlyEvaluableError,
    SingularTermError,
)
from ..exact import EXACT, eval_exact
from .backends import FACTORED, PRINCIPAL
from .catalog import DERIVATIVE, IdentitySpec

__all__ = [
    "EvalRecord",
    "SweepReport",
    "make_rng",
    "sample_assignment",
    "verify_instance",
    "sweep",
    "reversal_check",
    "cross_check",
    "eq21_forms",
    "GUARD_BAND",
    "CONDITION_CAP",
    "DEFAULT_TOLERANCE",
    "FD_TOLERANCE",
    "STATUSES",
]

GUARD_BAND = 1e-6
CONDITION_CAP = 1e6
DEFAULT_TOLERANCE = 1e-8
FD_TOLERANCE = 1e-5
FD_STEP = 1e-6
REVERSAL_TOLERANCE = 1e-12

PASS = "pass"
FAIL = "fail"
SKIP_SINGULAR = "skipped_singular"
SKIP_ILL = "skipped_ill_conditioned"
SKIP_NOT_EXACT = "skipped_not_exact_capable"
STATUSES = (PASS, FAIL, SKIP_SINGULAR, SKIP_ILL, SKIP_NOT_EXACT)

_BACKENDS = {"factored": FACTORED, "principal": PRINCIPAL}


@dataclass
class EvalRecord:
    identity: str
    mode: str
    assignment: dict
    status: str
    lhs: object = None
    rhs: object = None
    abs_err: Optional[float] = None
    rel_err: Optional[float] = None
    condition: Optional[float] = None
    sample: int = 0
    detail: str = ""

    @property
    def evaluated(self) -> bool:
        return self.status in (PASS, FAIL)


@dataclass
class SweepReport:
    identity: str
    mode: str
    seed: int
    tolerance: float
    requested: int = 0
    evaluated: int = 0
    passed: int = 0
    failed: int = 0
    skipped: dict = field(default_factory=dict)
    max_rel_err: float = 0.0
    worst_failure: Optional[EvalRecord] = None
    records: list = field(default_factory=list)
    convention: str = "factored"

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())

    def add(self, rec: EvalRecord) -> None:
        self.records.append(rec)
        self.requested += 1
        if rec.status == PASS:
            self.evaluated += 1
            self.passed += 1
            if rec.rel_err is not None:
                self.max_rel_err = max(self.max_rel_err, rec.rel_err)
        elif rec.status == FAIL:
            self.evaluated += 1
            self.failed += 1
            worst = self.worst_failure
            if worst is None or _rank(rec) > _rank(worst):
                self.worst_failure = rec
        else:
            self.skipped[rec.status] = self.skipped.get(rec.status, 0) + 1


def _rank(rec: EvalRecord) -> float:
    return float("inf") if rec.rel_err is None or math.isnan(rec.rel_err) else rec.rel_err


# -- sampling ------------------------------------------------------------------

def make_rng(seed: int, identity: str) -> np.random.Generator:
    """Philox (counter-based) stream keyed by the seed and the identity id."""
    key = np.random.SeedSequence([int(seed) & (2**64 - 1), zlib.crc32(identity.encode())])
    return np.random.Generator(np.random.Philox(key))


def _draw_exact(sym, rng, A):
    lo, hi = sym.exact_range if sym.exact_range is not None else (sym.lo, sym.hi)
    if sym.exact == "w":
        return int(rng.choice((1, 2, 3)))
    if sym.exact == "rat" and not sym.is_integer:
        q = int(rng.choice((1, 1, 2, 3)))
        return Fraction(int(rng.integers(int(lo) * q, int(hi) * q, endpoint=True)), q)
    v = int(rng.integers(int(lo), int(hi), endpoint=True))
    if sym.relative_to:
        v += A[sym.relative_to]
    return v if sym.is_integer else Fraction(v)


def _draw_numeric(sym, rng, A, domain):
    lo, hi, im_lo, im_hi = sym.lo, sym.hi, sym.im_lo, sym.im_hi
    if sym.name in domain:
        override = domain[sym.name]
        lo, hi = override[0], override[1]
        if len(override) == 4:
            im_lo, im_hi = override[2], override[3]
    if sym.is_integer:
        v = int(rng.integers(int(math.ceil(lo)), int(math.floor(hi)), endpoint=True))
        return v + A[sym.relative_to] if sym.relative_to else v
    re = float(rng.uniform(lo, hi))
    if sym.kind == "real":
        return complex(re, 0.0)
    return complex(re, float(rng.uniform(im_lo, im_hi)))


def singular_guard(spec: IdentitySpec, A: Mapping) -> Optional[str]:
    for label, fn in spec.guards:
        if fn(A) < GUARD_BAND:
            return f"singular: {label} < {GUARD_BAND:g}"
    return None


def sample_assignment(spec: IdentitySpec, rng, mode: str = "numeric", domain: Optional[Mapping] = None):
    """Draw one assignment; returns ``(assignment, skip_reason_or_None)``."""
    A: dict = {}
    for sym in spec.symbols:
        if mode == "exact":
            A[sym.name] = _draw_exact(sym, rng, A)
        else:
            A[sym.name] = _draw_numeric(sym, rng, A, domain or {})
    if mode == "exact":
        return A, None
    return A, singular_guard(spec, A)


# -- verification --------------------------------------------------------------

def _numeric_sides(spec, A, backend):
    lhs, lhs_mass = backend.total(spec.lhs(backend, A))
    rhs, rhs_mass = backend.total(spec.rhs_terms(backend, A))
    return lhs, rhs, max(lhs_mass, rhs_mass)


def _judge(identity, mode, A, lhs, rhs, mass, tolerance, index):
    if not all(math.isfinite(v) for v in (lhs.real, lhs.imag, rhs.real, rhs.imag, mass)):
        return EvalRecord(identity, mode, A, SKIP_SINGULAR, lhs, rhs, sample=index, detail="non-finite value")
    size = max(abs(lhs), abs(rhs))
    err = abs(lhs - rhs)
    if size == 0:
        condition = 1.0 if mass == 0 else math.inf
    else:
        condition = max(1.0, mass / size)
    if err == 0:
        # bit-identical sides, e.g. an empty sum against T(b) - T(a) with a == b
        return EvalRecord(identity, mode, A, PASS, lhs, rhs, 0.0, 0.0, condition, index)
    if condition > CONDITION_CAP:
        return EvalRecord(identity, mode, A, SKIP_ILL, lhs, rhs, err, None, condition, index)
    # error relative to max(|lhs|, |rhs|) inflated by the cancellation ratio
    rel = 0.0 if err == 0 else err / max(size, mass)
    status = PASS if rel <= tolerance else FAIL
    return EvalRecord(identity, mode, A, status, lhs, rhs, err, rel, condition, index)


def _skip(spec, mode, A, exc, index):
    if isinstance(exc, NotExactlyEvaluableError):
        status = SKIP_NOT_EXACT
    else:
        status = SKIP_SINGULAR
    return EvalRecord(spec.id, mode, A, status, sample=index, detail=f"{type(exc).__name__}: {exc}")


_EVAL_ERRORS = (CombidError, ZeroDivisionError, OverflowError, ValueError)


def verify_instance(
    spec: IdentitySpec,
    assignment: Mapping,
    mode: str = "numeric",
    tolerance: Optional[float] = None,
    convention: str = "factored",
    index: int = 0,
) -> EvalRecord:
    """Evaluate one instance; evaluator errors become skipped records."""
    if mode not in spec.modes:
        raise ValueError(f"{spec.id} does not support mode {mode!r}")
    A = dict(assignment)
    try:
        if mode == "exact":
            lhs = eval_exact(spec.lhs, A)
            rhs = eval_exact(spec.rhs_terms, A)
            ok = lhs == rhs
            err = abs(lhs - rhs)
            size = max(abs(lhs), abs(rhs))
            rel = 0.0 if ok else float(err / size)
            return EvalRecord(spec.id, mode, A, PASS if ok else FAIL, lhs, rhs, float(err), rel, 1.0, index)
        if mode == "fd":
            return _verify_fd(spec, A, FD_TOLERANCE if tolerance is None else tolerance, index)
        backend = _BACKENDS[convention]
        lhs, rhs, mass = _numeric_sides(spec, A, backend)
    except _EVAL_ERRORS as exc:
        return _skip(spec, mode, A, exc, index)
    tol = DEFAULT_TOLERANCE if tolerance is None else tolerance
    return _judge(spec.id, mode, A, lhs, rhs, mass, tol, index)


def _verify_fd(spec, A, tolerance, index):
    x = A["x"]
    h = FD_STEP * max(1.0, abs(x))
    fd = (spec.function(A, x + h) - spec.function(A, x - h)) / (2 * h)
    analytic = spec.derivative(A)
    err = abs(fd - analytic)
    size = max(abs(fd), abs(analytic))
    rel = 0.0 if err == 0 else err / size
    status = PASS if rel <= tolerance else FAIL
    return EvalRecord(spec.id, "fd", A, status, fd, analytic, err, rel, 1.0, index)


def eq21_forms(spec: IdentitySpec, assignment: Mapping) -> tuple[complex, complex]:
    """Both closed forms of the falling-power derivative at one assignment."""
    return spec.derivative(assignment), spec.alt_derivative(assignment)


def sweep(
    spec: IdentitySpec,
    samples: int = 1000,
    seed: int = 0,
    tolerance: Optional[float] = None,
    mode: str = "numeric",
    convention: str = "factored",
    domain: Optional[Mapping] = None,
    n_max: Optional[int] = None,
) -> SweepReport:
    """Run ``samples`` seeded instances (or every n in 0..n_max for the fixed
    examples when ``n_max`` is given)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if tolerance is None:
        tolerance = FD_TOLERANCE if mode == "fd" else DEFAULT_TOLERANCE
    report = SweepReport(spec.id, mode, seed, tolerance, convention=convention)
    if n_max is not None and spec.symbol_names == ("n",):
        for n in range(n_max + 1):
            report.add(verify_instance(spec, {"n": n}, mode, tolerance, convention, index=n))
        return report
    rng = make_rng(seed, spec.id)
    draw_mode = "exact" if mode == "exact" else "numeric"
    for i in range(samples):
        A, reason = sample_assignment(spec, rng, draw_mode, domain)
        if reason is not None:
            report.add(EvalRecord(spec.id, mode, A, SKIP_SINGULAR, sample=i, detail=reason))
            continue
        report.add(verify_instance(spec, A, mode, tolerance, convention, index=i))
    return report


def reversal_check(
    spec: IdentitySpec,
    assignment: Mapping,
    mode: str = "numeric",
    convention: str = "factored",
    tolerance: float = REVERSAL_TOLERANCE,
) -> EvalRecord:
    """Compare the left sum with its index reversed (k -> lo + hi - 1 - k)."""
    if not spec.reversible:
        raise ValueError(f"{spec.id} has no summation to reverse")
    A = dict(assignment)
    lo, hi = spec.bounds(A)
    backend = EXACT if mode == "exact" else _BACKENDS[convention]
    try:
        if mode == "exact":
            fwd = eval_exact(spec.lhs, A)
            rev = eval_exact(lambda B, V: [spec.summand(B, V, lo + hi - 1 - k) for k in range(lo, hi)], A)
            ok = fwd == rev
            return EvalRecord(spec.id, "reversal", A, PASS if ok else FAIL, fwd, rev, float(abs(fwd - rev)),
                              0.0 if ok else math.inf, 1.0)
        fwd_terms = [spec.summand(backend, A, k) for k in range(lo, hi)]
        rev_terms = [spec.summand(backend, A, lo + hi - 1 - k) for k in range(lo, hi)]
        fwd, m1 = backend.total(fwd_terms)
        rev, m2 = backend.total(rev_terms)
    except _EVAL_ERRORS as exc:
        return _skip(spec, "reversal", A, exc, 0)
    return _judge(spec.id, "reversal", A, fwd, rev, max(m1, m2), tolerance, 0)


def cross_check(spec: IdentitySpec, assignment: Mapping, tolerance: float = 1e-9,
                convention: str = "factored") -> Optional[EvalRecord]:
    """Numeric evaluation of an exact-capable instance against the exact value.

    Returns None when either side cannot be evaluated in one of the modes.
    The record's ``lhs``/``rhs`` hold the worse-matching side (numeric, exact).
    """
    A = dict(assignment)
    try:
        ex = (eval_exact(spec.lhs, A), eval_exact(spec.rhs_terms, A))
    except (CombidError, ZeroDivisionError):
        return None
    numeric_A = {k: (v if isinstance(v, int) else complex(v)) for k, v in A.items()}
    backend = _BACKENDS[convention]
    try:
        sides = (
            backend.total(spec.lhs(backend, numeric_A)),
            backend.total(spec.rhs_terms(backend, numeric_A)),
        )
    except _EVAL_ERRORS:
        return None
    # both sides equal one quantity, so the larger term mass is the scale of
    # the instance; a side whose own terms cancel internally is judged on it
    mass = max(m for _, m in sides)
    worst = None
    for (value, _), exact_value in zip(sides, ex):
        target = complex(exact_value)
        rec = _judge(spec.id, "cross", A, value, target, mass, tolerance, 0)
        rec.lhs, rec.rhs = value, exact_value
        if rec.status == SKIP_ILL:
            return None
        if worst is None or _rank(rec) > _rank(worst):
            worst = rec
    return worst
