"""Exit criteria for the package, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""
import functools
import itertools
import math
import time

import pytest

from fecburst.combinatorics import binomial, enumerate_grouped_terms, multichoose
from fecburst.erasure_model import CodeParams, q_distribution, residual_loss_probability
from fecburst.multiblock import (
    baseline_expected_burst,
    expected_burst,
    expected_burst_dp,
    expected_burst_truncated_naive,
    required_terms,
    truncation_error_bound,
)
from fecburst.simulator import SimConfig, simulate
from fecburst.single_block import (
    LossVector,
    brute_force_expected_burst,
    expected_burst_single_block,
    index_size,
    loss_vector_probability,
)
from oracles import compositions

RESULTS = {}

GRID_2 = [(n, k, p) for n in range(1, 11) for k in range(0, 5) for p in (0.05, 0.2, 0.5)]


def criterion(number, title, max_seconds=None):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if max_seconds is not None:
                    assert elapsed < max_seconds, f"took {elapsed:.2f}s, limit {max_seconds}s"
            except BaseException:
                RESULTS[number] = ("FAIL", title, time.perf_counter() - start)
                raise
            RESULTS[number] = ("PASS", title, elapsed)

        return run

    return wrap


def dist(n, k, p):
    return q_distribution(CodeParams(n, k), p)


@criterion(1, "Q normalisation within 1e-12", max_seconds=1.0)
def test_c01_normalization():
    for n in range(1, 13):
        for k in range(0, 7):
            for p in (0.0, 0.01, 0.1, 0.3, 0.5, 0.9, 1.0):
                assert abs(sum(dist(n, k, p).q) - 1.0) <= 1e-12, (n, k, p)


@criterion(2, "loss-vector probabilities sum to 1 - Q(0) within 1e-12", max_seconds=10.0)
def test_c02_loss_vector_completeness():
    for n, k, p in GRID_2:
        d = dist(n, k, p)
        total = 0.0
        for t in enumerate_grouped_terms(n):
            for runs in compositions(t.m, t.j):
                total += loss_vector_probability(LossVector(t.s, runs, t.e), d)
        assert abs(total - (1.0 - d.q0)) <= 1e-12, (n, k, p)


@criterion(3, "grouped pattern counts reproduce C(N, m) exactly")
def test_c03_pattern_count_identity():
    for n in range(1, 17):
        for m in range(1, n + 1):
            count = sum(
                t.multiplicity * multichoose(t.j + 1 - (1 - t.s) - (1 - t.e), n - m - (t.j - 1) - t.s - t.e)
                for t in enumerate_grouped_terms(n)
                if t.m == m
            )
            assert count == binomial(n, m), (n, m)


@criterion(4, "single-block E[C1] equals 2^N brute force within 1e-10", max_seconds=60.0)
def test_c04_single_block_oracle():
    d = dist(2, 0, 0.5)
    assert abs(expected_burst_single_block(d) - 4 / 3) <= 1e-10
    for n, k, p in GRID_2:
        d = dist(n, k, p)
        assert abs(expected_burst_single_block(d) - brute_force_expected_burst(d)) <= 1e-10, (n, k, p)


@criterion(5, "index size 55 (N=10) and 2,012,557 (N=64)", max_seconds=1.0)
def test_c05_index_size():
    assert index_size(10) == 55
    assert index_size(64) == 2012557


@criterion(6, "Table 1 term counts for N=10, K=3, eps=0.005", max_seconds=1.0)
def test_c06_table_1():
    table = {
        0.01: 1, 0.05: 1, 0.10: 2, 0.15: 4, 0.25: 11, 0.40: 64, 0.50: 281,
        0.60: 1947, 0.70: 27406, 0.80: 1355202, 0.90: 1332794850,
    }
    got = {p: required_terms(10, dist(10, 3, p).q0, 0.005) for p in table}
    assert got == table


@criterion(7, "DP equals naive enumeration within 1e-12", max_seconds=60.0)
def test_c07_dp_matches_naive():
    for n, k, p in itertools.product(range(1, 5), range(0, 3), (0.2, 0.5)):
        d = dist(n, k, p)
        for terms in (1, 2, 3):
            naive = expected_burst_truncated_naive(d, terms)
            assert abs(expected_burst_dp(d, terms).series - naive) <= 1e-12, (n, k, p, terms)


@criterion(8, "Monte Carlo agrees with E[C] and Q at 10^6 blocks", max_seconds=60.0)
def test_c08_monte_carlo():
    for n, k, seed in ((5, 2, 101), (10, 3, 202)):
        d = dist(n, k, 0.1)
        report = simulate(SimConfig(CodeParams(n, k), 0.1, 10**6, seed))
        analytic = expected_burst(d, epsilon=0.005).value
        tolerance = max(0.01, 4 * report.standard_error_ratio)
        assert abs(report.pattern_ratio_mean - analytic) <= tolerance, (n, k)
        for i, count in enumerate(report.empirical_q):
            se = math.sqrt(d.q[i] * (1 - d.q[i]) / 10**6)
            assert abs(count / 10**6 - d.q[i]) <= 4 * se, (n, k, i)


@criterion(9, "coding raises E[C] above 1/(1-p), E[C] rises with p, p_L <= p")
def test_c09_figure_1_properties():
    grid = (0.05, 0.1, 0.15, 0.2, 0.3)
    values = []
    for p in grid:
        d = dist(5, 2, p)
        value = expected_burst(d, epsilon=0.005).value
        assert value >= baseline_expected_burst(p), p
        assert residual_loss_probability(d) <= p, p
        values.append(value)
    assert all(b >= a for a, b in zip(values, values[1:]))


@criterion(10, "truncation bound dominates |E[C](n) - E[C](n+10)|", max_seconds=60.0)
def test_c10_bound_dominance():
    d = dist(10, 3, 0.1)
    for n in (1, 2, 3):
        gap = abs(expected_burst_dp(d, n).series - expected_burst_dp(d, n + 10).series)
        assert gap <= truncation_error_bound(10, d.q0, n), n


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
