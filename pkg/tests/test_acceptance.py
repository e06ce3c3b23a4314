"""Acceptance criteria 1-7, each logging one PASS/FAIL line before asserting."""
import math
import time

import numpy as np

from qha.auslander import builtin, knit
from qha.exactlin import Field
from qha.homolog import ext, tau
from qha.repmod import hom_dim, is_isomorphic, random_module
from qha.replay import Report, case_aus_a3, classifier_suite, case_props, layered_module_checks, stt_counts, \
    tilting_counts

from oracles import brute_force_ext1, brute_force_hom_count, small_modules, tau_by_ar_formula

F = Field(101)
GF2 = Field(2)
REP_FINITE = ["gamma_1", "gamma_2", "gamma_3", "a2_path", "a3_path", "kx2", "kx3", "kx4", "aus_a2", "aus_a3"]


def record(log, number, ok, detail):
    log.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def test_criterion_1_support_tau_tilting_counts(acceptance_log):
    rows, ok, budget_ok = [], True, True
    for n in range(1, 5):
        t0 = time.perf_counter()
        s = stt_counts(builtin(f"gamma_{n}", F))
        dt = time.perf_counter() - t0
        want = math.factorial(n + 1)
        good = s["clique"] == s["mutation"] == want and s["complete"] and s["identical"]
        within = dt < (1.0 if n <= 3 else 120.0)
        ok &= good
        budget_ok &= within
        rows.append(f"n={n}: {s['clique']}/{s['mutation']} want {want} in {dt:.2f}s")
    assert record(acceptance_log, 1, ok and budget_ok, "; ".join(rows)), rows


def test_criterion_2_tilting_counts(acceptance_log):
    t0 = time.perf_counter()
    got = {n: tilting_counts(builtin(f"gamma_{n}", F)) for n in (2, 3, 4)}
    dt = time.perf_counter() - t0
    ok = all(got[n] == (math.factorial(n), math.factorial(n)) for n in got) and dt < 60
    detail = ", ".join(f"n={n}: {a}/{b}" for n, (a, b) in got.items()) + f" in {dt:.1f}s"
    assert record(acceptance_log, 2, ok, detail), detail


def test_criterion_3_layered_gamma4_module(acceptance_log):
    t0 = time.perf_counter()
    r = Report("gamma_4 module")
    layered_module_checks(r, F)
    dt = time.perf_counter() - t0
    failed = [c.name for c in r.checks if not c.ok]
    ok = r.ok and dt < 5
    assert record(acceptance_log, 3, ok, f"{len(r.checks)} checks, failed {failed or 'none'}, {dt:.1f}s"), failed


def test_criterion_4_grade_zero_witness(acceptance_log):
    t0 = time.perf_counter()
    r = case_aus_a3(F)
    dt = time.perf_counter() - t0
    failed = [c.name for c in r.checks if not c.ok]
    ok = r.ok and dt < 30
    assert record(acceptance_log, 4, ok, f"{len(r.checks)} checks, failed {failed or 'none'}, {dt:.1f}s"), failed


def test_criterion_5_property_suites(acceptance_log):
    t0 = time.perf_counter()
    r = case_props(seed=0, field_=F, random_modules=50)
    dt = time.perf_counter() - t0
    failed = [f"{c.name}: {c.detail}" for c in r.checks if not c.ok]
    assert record(acceptance_log, 5, r.ok, f"{len(r.checks)} checks, {len(failed)} violations, {dt:.1f}s"), failed


def test_criterion_6_classifier(acceptance_log):
    t0 = time.perf_counter()
    r = classifier_suite(F)
    dt = time.perf_counter() - t0
    failed = [c.name for c in r.checks if not c.ok]
    ok = r.ok and dt < 5 and sorted(r.results["classified"]) == ["aus_a2", "gamma_2"]
    detail = f"classified {sorted(r.results['classified'])}, {len(failed)} failures, {dt:.1f}s"
    assert record(acceptance_log, 6, ok, detail), failed


def _hom_oracle_mismatches():
    bad, n = [], 0
    for name in ["gamma_2", "a3_path", "aus_a2", "kx3", "gamma_3"]:
        a = builtin(name, GF2)
        for seed in range(12):
            m = small_modules(a, seed, 3)
            x = small_modules(a, seed + 100, 6 - m.dim)
            n += 1
            if 2 ** hom_dim(m, x) != brute_force_hom_count(m, x):
                bad.append((name, seed))
    return n, bad


def _ext_oracle_mismatches():
    a = builtin("gamma_2", GF2)
    rng = np.random.default_rng(7)
    bad, n = [], 0
    while n < 40:
        m, x = random_module(a, rng), random_module(a, rng)
        if m.dim + x.dim > 5:
            continue
        n += 1
        if ext(1, m, x) != brute_force_ext1(m, x):
            bad.append((m.dims, x.dims))
    return n, bad


def _tau_mismatches():
    bad, n = [], 0
    for name in REP_FINITE:
        ar = knit(builtin(name, F))
        for i, x in enumerate(ar.modules):
            if ar.projective[i]:
                continue
            n += 1
            z = ar.modules[ar.translation[i]]
            if not is_isomorphic(tau(x), z) or z not in tau_by_ar_formula(x, ar.modules):
                bad.append((name, i))
    return n, bad


def test_criterion_7_oracles(acceptance_log):
    parts = {"hom": _hom_oracle_mismatches(), "ext1": _ext_oracle_mismatches(), "tau": _tau_mismatches()}
    ok = all(not bad for _, bad in parts.values())
    detail = ", ".join(f"{k} {n - len(bad)}/{n}" for k, (n, bad) in parts.items())
    assert record(acceptance_log, 7, ok, detail), parts
