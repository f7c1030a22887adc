"""Acceptance suite: one test, and one printed PASS/FAIL line, per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the "acceptance criteria" section of the terminal summary.
"""

import io
import json
import time
from fractions import Fraction
from math import comb

import numpy as np

from acceptance_log import record
from combid.cli import main
from combid.exact import eval_exact
from combid.identities import (
    cross_check,
    eq21_forms,
    get_spec,
    make_rng,
    registry,
    reversal_check,
    sample_assignment,
    sweep,
)
from combid.specfun import gamma, gen_harmonic, harmonic
from combid.telescope import FactorSystem, check_theorem
from reference_values import GAMMA_REFERENCE

SUMMATION = [s for s in registry() if s.kind == "summation"]
DERIVATIVE = [s for s in registry() if s.kind == "derivative"]


def test_criterion_1_product_difference():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    statuses = {"pass": 0, "fail": 0, "skipped_ill_conditioned": 0}
    for _ in range(10_000):
        n = int(rng.integers(0, 13))
        c = rng.uniform(-5, 5, size=(2 * n + 2, 2))
        vals = [complex(re, im) for re, im in c]
        f = FactorSystem(vals[0], vals[1], vals[2:2 + n], vals[2 + n:])
        statuses[check_theorem(f, 1e-10).status] += 1
    exact_ok = 0
    for _ in range(1000):
        n = int(rng.integers(0, 13))
        x, y = (Fraction(int(rng.integers(-25, 26)), int(rng.integers(1, 6))) for _ in range(2))
        z = [Fraction(2 * int(rng.integers(-10, 11)) + 1, 7) for _ in range(n)]  # never equal to x or y
        z = [zk for zk in z if zk != x and zk != y]
        w = [int(rng.integers(-4, 5)) for _ in z]
        exact_ok += check_theorem(FactorSystem(x, y, z, w)).status == "pass"
    elapsed = time.perf_counter() - start
    ok = statuses["fail"] == 0 and exact_ok == 1000 and elapsed < 5
    record(1, ok, f"product difference: {statuses}, exact {exact_ok}/1000, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_2_exact_suite():
    start = time.perf_counter()
    failures, passed = {}, 0
    for spec in SUMMATION:
        report = sweep(spec, 1000, seed=2, mode="exact")
        passed += report.passed
        if report.failed:
            failures[spec.id] = report.failed
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    record(2, ok, f"exact suite over {len(SUMMATION)} identities: {passed} exact passes, "
                  f"failures {failures or 'none'}, {elapsed:.2f}s (< 30s)")
    assert ok


def test_criterion_3_fixed_examples():
    results = []
    for spec_id, n_max in (("eq12", 60), ("eq13", 60), ("eq14", 20), ("eq15", 20)):
        report = sweep(get_spec(spec_id), 1, mode="exact", n_max=n_max)
        results.append(report.passed == n_max + 1 and report.failed == 0)
    spot = sum(k * comb(5, k) ** 2 for k in range(6)) == 630
    spec = get_spec("eq15")
    eq15 = eval_exact(spec.lhs, {"n": 1}) == eval_exact(spec.rhs_terms, {"n": 1}) == -8
    ok = all(results) and spot and eq15
    record(3, ok, f"fixed examples exact for n up to 60/60/20/20: {results}; spot 630: {spot}; n=1 gives -8: {eq15}")
    assert ok


def test_criterion_4_numeric_cli_run(tmp_path):
    report = tmp_path / "numeric.jsonl"
    start = time.perf_counter()
    code = main(["verify", "--all", "--mode", "numeric", "--samples", "1000", "--seed", "42",
                 "--tolerance", "1e-8", "--report", str(report)], out=io.StringIO())
    elapsed = time.perf_counter() - start
    counts: dict = {}
    for line in report.read_text().splitlines():
        rec = json.loads(line)
        c = counts.setdefault(rec["identity"], [0, 0])
        c[0] += 1
        c[1] += rec["status"] in ("skipped_singular", "skipped_ill_conditioned")
    worst = max(counts.items(), key=lambda kv: kv[1][1] / kv[1][0])
    worst_rate = worst[1][1] / worst[1][0]
    ok = code == 0 and worst_rate < 0.02 and len(counts) == len(SUMMATION) and elapsed < 60
    record(4, ok, f"numeric CLI run exit {code}, {len(counts)} identities, worst skip rate "
                  f"{worst_rate:.1%} ({worst[0]}), {elapsed:.2f}s (< 60s)")
    assert ok


def test_criterion_5_finite_differences():
    results = {}
    for spec in DERIVATIVE:
        report = sweep(spec, 100, seed=5, mode="fd", tolerance=1e-5)
        results[spec.id] = (report.passed, report.failed)
    spec = get_spec("fd_eq21")
    rng = make_rng(5, "forms")
    worst = 0.0
    for _ in range(100):
        A, reason = sample_assignment(spec, rng)
        if reason:
            continue
        d1, d2 = eq21_forms(spec, A)
        if d1 != d2:
            worst = max(worst, abs(d1 - d2) / max(abs(d1), abs(d2)))
    ok = all(f == 0 and p > 0 for p, f in results.values()) and worst <= 1e-11
    record(5, ok, f"finite differences (passed, failed): {results}; derivative forms agree to {worst:.1e}")
    assert ok


def test_criterion_6_special_functions():
    gamma_worst = max(abs(gamma(s) - v) / abs(v) for s, v in GAMMA_REFERENCE)
    offset_worst = max(
        abs(gen_harmonic(c, n, 1) - (harmonic(c + n) - harmonic(c))) for c in range(21) for n in range(51)
    )
    rng = np.random.default_rng(6)
    sym_worst = 0.0
    for m in range(-3, 6):
        for _ in range(100):
            c = complex(*rng.uniform(-5, 5, size=2))
            n = int(rng.integers(0, 31))
            lhs, rhs = gen_harmonic(c, n, m), (-1) ** m * gen_harmonic(-(c + n + 1), n, m)
            if lhs != rhs:
                sym_worst = max(sym_worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    ok = len(GAMMA_REFERENCE) == 20 and gamma_worst <= 1e-12 and offset_worst <= 1e-12 and sym_worst <= 1e-11
    record(6, ok, f"gamma on 20 references rel {gamma_worst:.1e}; offset harmonic abs {offset_worst:.1e}; "
                  f"reflection symmetry rel {sym_worst:.1e}")
    assert ok


def test_criterion_7_cross_mode():
    # draw until 500 instances per identity evaluate in both modes
    counts, failures = {}, {}
    for spec in SUMMATION:
        rng = make_rng(7, spec.id)
        compared = 0
        for _ in range(20_000):
            A, _ = sample_assignment(spec, rng, "exact")
            rec = cross_check(spec, A, tolerance=1e-9)
            if rec is None:
                continue
            compared += 1
            if rec.status != "pass":
                failures[spec.id] = failures.get(spec.id, 0) + 1
            if compared == 500:
                break
        counts[spec.id] = compared
    fewest = min(counts.items(), key=lambda kv: kv[1])
    ok = not failures and fewest[1] == 500
    record(7, ok, f"numeric vs exact, 500 comparable instances per identity (fewest {fewest[1]}, {fewest[0]}): "
                  f"failures {failures or 'none'}")
    assert ok


def test_criterion_8_reversal():
    checked, failures = 0, {}
    for spec in SUMMATION:
        rng = make_rng(8, spec.id)
        for _ in range(100):
            A, reason = sample_assignment(spec, rng)
            if reason:
                continue
            rec = reversal_check(spec, A, tolerance=1e-12)
            checked += rec.status == "pass"
            if rec.status == "fail":
                failures[spec.id] = failures.get(spec.id, 0) + 1
    ok = not failures
    record(8, ok, f"index reversal at 1e-12: {checked} passes, failures {failures or 'none'}")
    assert ok

