"""Mean loss-row length over an unbounded stream of erasure-coded blocks.

The stream decomposes into multiblock patterns: maximal runs of blocks that
each hold at least one unrecoverable loss, separated by all-receipt blocks.
A pattern of i blocks (A_1..A_i) closed by an all-receipt block has
probability P(A_1)...P(A_i) Q(0); its loss rows total
R = sum(j_k) - #{k : e_k = 0 and s_{k+1} = 0}, since a row running over a
block boundary is counted once.

``series`` below is the plain sum over patterns of (T / R) P(A_1)..P(A_i) Q(0).
Its weights add up to 1 - Q(0), the probability that a pattern starts at a
given block, so the mean over patterns is ``series / (1 - Q(0))``.
"""
from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass

import numpy as np

from .combinatorics import enumerate_grouped_terms
from .erasure_model import UnrecoverableDistribution
from .errors import DomainError, InfeasibleError, TermsCapExceeded, UndefinedQuantity
from .single_block import grouped_mass

DEFAULT_EPSILON = 0.005
MAX_TERMS = 100_000
NAIVE_MAX_N = 6
NAIVE_MAX_TERMS = 3


@dataclass(frozen=True)
class TruncatedResult:
    """A partial sum of the multiblock series and its truncation bounds.

    ``series`` is the raw partial sum and ``error_bound`` the closed-form
    bound on its discarded tail. ``value`` is the mean loss-row length per
    multiblock pattern, with tail bounded by ``value_error_bound``.
    """

    value: float
    terms_used: int
    error_bound: float
    series: float
    value_error_bound: float


@dataclass(frozen=True)
class DepthTerm:
    """Contribution of all patterns spanning exactly ``depth`` blocks."""

    depth: int
    mass: float
    contribution: float


def _block_terms(dist: UnrecoverableDistribution) -> list[tuple[int, int, int, int, float]]:
    out = []
    for t in enumerate_grouped_terms(dist.n):
        mass = t.multiplicity * grouped_mass(t.s, t.j, t.m, t.e, dist)
        out.append((t.s, t.j, t.m, t.e, mass))
    return out


def _check_lossy(dist: UnrecoverableDistribution) -> None:
    if dist.lossy <= 0.0:
        raise UndefinedQuantity("no losses possible: Q(0) = 1")


def expected_burst_truncated_naive(dist: UnrecoverableDistribution, n_terms: int) -> float:
    """First ``n_terms`` terms of the series, by listing every block sequence.

    Exponential in ``n_terms``; meant as a cross-check for small blocks.
    """
    _check_lossy(dist)
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    if dist.n > NAIVE_MAX_N or n_terms > NAIVE_MAX_TERMS:
        raise InfeasibleError(
            f"naive enumeration limited to n <= {NAIVE_MAX_N} and "
            f"n_terms <= {NAIVE_MAX_TERMS}, got n={dist.n}, n_terms={n_terms}"
        )
    terms = _block_terms(dist)
    total = 0.0
    for i in range(1, n_terms + 1):
        for seq in itertools.product(terms, repeat=i):
            mass = 1.0
            losses = rows = 0
            prev_e = 1
            for s, j, m, e, w in seq:
                mass *= w
                losses += m
                rows += j - (1 - prev_e) * (1 - s)
                prev_e = e
            total += losses / rows * mass * dist.q0
    return total


def depth_terms(dist: UnrecoverableDistribution, n_terms: int):
    """Yield a :class:`DepthTerm` for pattern lengths 1..n_terms.

    The exact state of a partial pattern is (losses T, rows R, last end flag).
    Only the mean of T / R is needed, and T enters linearly, so the state is
    reduced to (R, last end flag) carrying two arrays: the probability mass
    and the T-weighted mass. Adding a block (s, j, m, e) of mass w moves
    (r, e_prev) to (r + j - [e_prev = 0 and s = 0], e) and updates
    mass' += mass * w, tmass' += tmass * w + mass * m * w.
    """
    _check_lossy(dist)
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    max_rows = (dist.n + 1) // 2
    # weights summed over m: mass[s, e, j] and loss-weighted mass lmass[s, e, j]
    mass_w = np.zeros((2, 2, max_rows + 1))
    loss_w = np.zeros((2, 2, max_rows + 1))
    for s, j, m, e, w in _block_terms(dist):
        mass_w[s, e, j] += w
        loss_w[s, e, j] += m * w

    mass = mass_w.sum(axis=0)
    tmass = loss_w.sum(axis=0)
    for depth in range(1, n_terms + 1):
        if depth > 1:
            width = mass.shape[1] + max_rows
            new_mass = np.zeros((2, width))
            new_tmass = np.zeros((2, width))
            size = mass.shape[1]
            for e_prev in (0, 1):
                for s in (0, 1):
                    merge = (1 - e_prev) * (1 - s)
                    for e in (0, 1):
                        for j in range(1, max_rows + 1):
                            w = mass_w[s, e, j]
                            if w == 0.0:
                                continue
                            lo = j - merge
                            new_mass[e, lo : lo + size] += mass[e_prev] * w
                            new_tmass[e, lo : lo + size] += (
                                tmass[e_prev] * w + mass[e_prev] * loss_w[s, e, j]
                            )
            mass, tmass = new_mass, new_tmass
        rows = np.arange(mass.shape[1], dtype=float)
        rows[0] = 1.0  # r = 0 never carries mass
        yield DepthTerm(
            depth=depth,
            mass=float(mass.sum()),
            contribution=dist.q0 * float((tmass / rows).sum()),
        )


def truncation_error_bound(n: int, q0: float, terms: int) -> float:
    """Upper bound on the series tail beyond ``terms`` pattern lengths.

    Closed form N((n+1)x^(n+1) - n x^(n+2)) / Q(0) with x = 1 - Q(0), used
    here as N x^(n+1) (1 + n Q(0)) / Q(0) to avoid cancellation. Falls back
    to logarithms when x^(n+1) underflows.
    """
    if not 0.0 < q0 <= 1.0:
        raise DomainError(f"q0 must lie in (0, 1], got {q0}")
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    x = 1.0 - q0
    if x == 0.0:
        return 0.0
    power = x ** (terms + 1)
    if power >= sys.float_info.min:
        return n * power * (1.0 + terms * q0) / q0
    log_bound = (
        math.log(n) + (terms + 1) * math.log(x) + math.log1p(terms * q0) - math.log(q0)
    )
    return math.exp(log_bound)


def required_terms(n: int, q0: float, epsilon: float) -> int:
    """Smallest number of terms whose truncation bound drops below ``epsilon``."""
    if not 0.0 < q0 <= 1.0:
        raise DomainError(f"q0 must lie in (0, 1], got {q0}")
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")

    def below(k: int) -> bool:
        return truncation_error_bound(n, q0, k) < epsilon

    if below(1):
        return 1
    # the bound rises until about 1/-log(x) - 1/q0 terms and then decreases
    x = 1.0 - q0
    peak = max(1, math.ceil(-1.0 / math.log(x) - 1.0 / q0))
    lo = peak
    if below(lo):
        return lo
    step = 1
    while not below(lo + step):
        lo += step
        step *= 2
    hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            hi = mid
        else:
            lo = mid
    return hi


def expected_burst_dp(dist: UnrecoverableDistribution, n_terms: int) -> TruncatedResult:
    """Series truncated after ``n_terms`` pattern lengths, by dynamic programming."""
    _check_lossy(dist)
    if dist.q0 <= 0.0:
        raise UndefinedQuantity("Q(0) = 0: no all-receipt block ever closes a pattern")
    series = 0.0
    for term in depth_terms(dist, n_terms):
        series += term.contribution
    lossy = dist.lossy
    bound = truncation_error_bound(dist.n, dist.q0, n_terms)
    return TruncatedResult(
        value=series / lossy,
        terms_used=n_terms,
        error_bound=bound,
        series=series,
        value_error_bound=bound / lossy,
    )


def expected_burst(
    dist: UnrecoverableDistribution,
    epsilon: float = DEFAULT_EPSILON,
    max_terms: int = MAX_TERMS,
) -> TruncatedResult:
    """Converge the series until its tail bound is below ``epsilon``.

    Raises :class:`TermsCapExceeded` rather than run more than ``max_terms``
    terms; the exception carries the required count.
    """
    _check_lossy(dist)
    if dist.q0 <= 0.0:
        raise UndefinedQuantity("Q(0) = 0: no all-receipt block ever closes a pattern")
    needed = required_terms(dist.n, dist.q0, epsilon)
    if needed > max_terms:
        raise TermsCapExceeded(needed, max_terms, epsilon)
    return expected_burst_dp(dist, needed)


def baseline_expected_burst(p: float) -> float:
    """Mean loss-run length of an uncoded Bernoulli(p) stream."""
    if not 0.0 <= p < 1.0:
        raise DomainError(f"p must lie in [0, 1), got {p}")
    return 1.0 / (1.0 - p)
