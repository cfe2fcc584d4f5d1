"""End-to-end acceptance criteria; each test prints one PASS/FAIL line."""

from __future__ import annotations

import hashlib
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
from corpus import approx_instances, planted, structural_violations, sweep_instances

from kecs.approx import approximate_kecs
from kecs.bounds import beyond_shannon_fraction, plan_guarantee, required_colored, rho, shannon_fraction
from kecs.collapse import collapse_all, lift_coloring
from kecs.coloring import format_coloring, validate
from kecs.engine import maximize_potential
from kecs.multigraph import generate, max_degree
from kecs.oracle import exact_max_kecs
from kecs.pipeline import color_graph

pytestmark = pytest.mark.acceptance

TESTS = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def sweep():
    """Pipeline runs over the 200 bound-sweep instances, with timing."""
    start = time.perf_counter()
    runs = [(g, color_graph(g)) for g in sweep_instances()]
    return runs, time.perf_counter() - start


@pytest.fixture(scope="module")
def raw_sweep():
    """Same instances colored without collapsing, to exercise the engine alone."""
    start = time.perf_counter()
    runs = [(g, color_graph(g, collapse=False)) for g in sweep_instances()]
    return runs, time.perf_counter() - start


@pytest.fixture(scope="module")
def approx_runs():
    start = time.perf_counter()
    runs = [(g, k, approximate_kecs(g, k)) for g in approx_instances() for k in (4, 5)]
    return runs, time.perf_counter() - start


def sweep_digest() -> str:
    h = hashlib.sha256()
    for g in sweep_instances():
        h.update(format_coloring(color_graph(g).coloring).encode())
    return h.hexdigest()


def approx_digest() -> str:
    h = hashlib.sha256()
    for g in approx_instances():
        for k in (4, 5):
            res = approximate_kecs(g, k)
            h.update(repr((res.matching, [c.classification for c in res.components])).encode())
            h.update(format_coloring(res.coloring).encode())
    return h.hexdigest()


def test_criterion_1_rho_exactness(report):
    start = time.perf_counter()
    values = [rho(6, 5, 8), rho(7, 5, 9), rho(9, 7, 12)]
    elapsed = time.perf_counter() - start
    ok = values == [Fraction(7, 2)] * 3 and elapsed < 1
    report(1, ok, f"rho values {[str(v) for v in values]} in {elapsed:.3f}s")


def test_criterion_2_tight_even_instances(report):
    details, ok = [], True
    for delta in (4, 6, 8):
        g = generate("cK3MinusE", delta // 2)
        start = time.perf_counter()
        col, _ = maximize_potential(g, delta)
        elapsed = time.perf_counter() - start
        bound = required_colored(g.m, beyond_shannon_fraction(delta))
        opt = exact_max_kecs(g, delta).opt
        good = col.colored_count == delta == bound == opt and g.m == 3 * delta // 2 - 1 and elapsed < 5
        ok &= good
        details.append(f"delta={delta}:{col.colored_count}/{g.m}")
    report(2, ok, " ".join(details))


def test_criterion_3_tight_odd_instances(report):
    details, ok = [], True
    for delta in (5, 7):
        g = generate("joinedTwins", (delta - 1) // 2)
        start = time.perf_counter()
        col, _ = maximize_potential(g, delta)
        opt = exact_max_kecs(g, delta).opt
        elapsed = time.perf_counter() - start
        good = g.m == 3 * delta and col.colored_count >= 2 * delta + 1 == opt and not validate(g, col) and elapsed < 30
        ok &= good
        details.append(f"delta={delta}:{col.colored_count}/{g.m} opt={opt}")
    report(3, ok, " ".join(details))


def test_criterion_4_forbidden_graph_values(report):
    start = time.perf_counter()
    cases = [("cK3", k // 2, k) for k in (4, 6)] + [("cK3PlusE", (k - 1) // 2, k) for k in (5, 7)]
    values = {k: exact_max_kecs(generate(fam, c), k).opt for fam, c, k in cases}
    elapsed = time.perf_counter() - start
    ok = all(values[k] == k for k in values) and elapsed < 5
    report(4, ok, f"c_k values {values} in {elapsed:.2f}s")


def test_criterion_5_bound_sweep(report, sweep, raw_sweep):
    runs, elapsed = sweep
    elapsed += raw_sweep[1]
    shannon_miss = beyond_miss = uncertified = checked_beyond = 0
    for g, res in runs + raw_sweep[0]:
        delta = max_degree(g)
        shannon_miss += res.colored < required_colored(g.m, shannon_fraction(delta))
        if delta >= 4 and not plan_guarantee(g).forbidden:
            checked_beyond += 1
            beyond_miss += res.colored < required_colored(g.m, beyond_shannon_fraction(delta))
        uncertified += res.uncertified
    ok = len(runs) == 200 and shannon_miss == beyond_miss == uncertified == 0 and elapsed < 120
    report(
        5,
        ok,
        f"{len(runs)} instances with and without collapsing, shannon misses {shannon_miss}, "
        f"beyond misses {beyond_miss}/{checked_beyond}, "
        f"uncertified {uncertified}, {elapsed:.1f}s",
    )


def test_criterion_6_oracle_dominance(report, sweep, raw_sweep):
    runs = sweep[0] + raw_sweep[0]
    above = invalid = 0
    for g, res in runs:
        above += res.colored > exact_max_kecs(g, max_degree(g)).opt
        invalid += bool(validate(g, res.coloring)) or bool(validate(res.collapsed, res.engine_coloring))
    report(6, above == invalid == 0, f"above oracle {above}, invalid colorings {invalid}")


def test_criterion_7_certification_invariants(report, sweep, raw_sweep):
    runs = sweep[0] + raw_sweep[0]
    violations = 0
    for _, res in runs:
        violations += len(structural_violations(res.collapsed, res.engine_coloring))
        violations += not res.certification.passed
    report(7, violations == 0, f"structural violations {violations} over {len(runs)} runs")


def test_criterion_8_collapse_round_trip(report):
    start = time.perf_counter()
    rng = random.Random(808)
    bad = records_seen = 0
    for i in range(50):
        g = planted(rng, 1 + i % 2)
        delta = max_degree(g)
        small, records = collapse_all(g, delta)
        records_seen += len(records)
        col, _ = maximize_potential(small, delta)
        lifted = lift_coloring(records, col)
        engine_frac = Fraction(col.colored_count, small.m) if small.m else Fraction(1)
        floor = min([engine_frac] + [min(Fraction(1), Fraction(delta, len(r.internal_edges))) for r in records])
        if validate(g, lifted) or Fraction(lifted.colored_count, g.m) < floor or not records:
            bad += 1
    elapsed = time.perf_counter() - start
    report(8, bad == 0 and elapsed < 60, f"50 instances, {records_seen} records, violations {bad}, {elapsed:.1f}s")


def test_criterion_9_approximation_ratios(report, approx_runs):
    runs, elapsed = approx_runs
    new_ratio = {4: Fraction(5, 7), 5: Fraction(11, 15)}
    worst: dict[tuple[int, bool], Fraction] = {}
    misses = 0
    for g, k, res in runs:
        opt = exact_max_kecs(g, k).opt
        ratio = Fraction(res.colored, opt) if opt else Fraction(1)
        key = (k, res.has_special)
        worst[key] = min(worst.get(key, Fraction(1)), ratio)
        misses += ratio < Fraction(k, 3 * k // 2)
        misses += not res.has_special and ratio < new_ratio[k]
        misses += bool(validate(g, res.coloring))
    ok = len(runs) == 200 and misses == 0 and elapsed < 300
    detail = " ".join(f"k={k}{'+special' if s else ''}:min {v}" for (k, s), v in sorted(worst.items()))
    report(9, ok, f"misses {misses}, {detail}, {elapsed:.1f}s")


def test_criterion_10_determinism(report, sweep, approx_runs):
    first = hashlib.sha256()
    for _, res in sweep[0]:
        first.update(format_coloring(res.coloring).encode())
    second = sweep_digest()
    a1 = hashlib.sha256()
    for _, _, res in approx_runs[0]:
        a1.update(repr((res.matching, [c.classification for c in res.components])).encode())
        a1.update(format_coloring(res.coloring).encode())
    a2 = approx_digest()
    # a fresh interpreter with a different hash seed must agree too
    code = "import test_acceptance as t; print(t.sweep_digest()); print(t.approx_digest())"
    env = {**os.environ, "PYTHONHASHSEED": "12345", "PYTHONPATH": str(TESTS)}
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    fresh = proc.stdout.split()
    ok = first.hexdigest() == second == fresh[0] and a1.hexdigest() == a2 == fresh[1]
    report(10, ok, f"sweep {second[:12]} approx {a2[:12]} (repeat and fresh process agree: {ok})")
