import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fecburst.erasure_model import CodeParams, q_distribution, residual_loss_probability
from fecburst.errors import DomainError
from oracles import q_by_enumeration, q_exact

P_GRID = [0.0, 0.01, 0.1, 0.3, 0.5, 0.9, 1.0]


def test_no_loss_when_p_zero():
    dist = q_distribution(CodeParams(10, 3), 0.0)
    assert dist.q[0] == 1.0
    assert all(q == 0.0 for q in dist.q[1:])
    assert residual_loss_probability(dist) == 0.0


def test_single_packet_with_one_parity():
    dist = q_distribution(CodeParams(1, 1), 0.5)
    assert dist.q == pytest.approx((0.75, 0.25), abs=1e-15)
    assert residual_loss_probability(dist) == pytest.approx(0.25, abs=1e-15)


def test_q0_for_ten_plus_three():
    # four-term binomial tail, frozen from exact rational evaluation
    expected = float(q_exact(10, 3, Fraction(1, 10))[0])
    assert expected == pytest.approx(0.9658392791, abs=1e-10)
    assert q_distribution(CodeParams(10, 3), 0.1).q0 == pytest.approx(expected, rel=1e-14)


def test_no_coding_is_plain_binomial():
    dist = q_distribution(CodeParams(4, 0), 0.3)
    for i in range(5):
        assert dist.q[i] == pytest.approx(math.comb(4, i) * 0.3**i * 0.7 ** (4 - i), rel=1e-14)
    assert residual_loss_probability(dist) == pytest.approx(0.3, rel=1e-14)


def test_all_lost_when_p_one():
    dist = q_distribution(CodeParams(5, 2), 1.0)
    assert dist.q[-1] == 1.0
    assert sum(dist.q[:-1]) == 0.0


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("k", range(0, 7))
def test_normalization(n, k):
    for p in P_GRID:
        assert abs(sum(q_distribution(CodeParams(n, k), p).q) - 1.0) <= 1e-12


@pytest.mark.parametrize("n,k", [(1, 0), (1, 3), (3, 1), (4, 4), (5, 2), (6, 8), (8, 3)])
@pytest.mark.parametrize("p", [0.05, 0.3, 0.77])
def test_matches_outcome_enumeration(n, k, p):
    # k >= n exercises the branch where partial parity loss covers every i
    got = q_distribution(CodeParams(n, k), p).q
    exact = [float(q) for q in q_exact(n, k, Fraction(p))]
    assert got == pytest.approx(exact, abs=1e-14)
    # summing 2^(n+k) outcome probabilities accumulates rounding of its own
    assert got == pytest.approx(q_by_enumeration(n, k, p), abs=1e-12)


@given(st.integers(1, 12), st.integers(0, 6), st.floats(0.0, 1.0))
def test_coding_never_hurts(n, k, p):
    dist = q_distribution(CodeParams(n, k), p)
    assert residual_loss_probability(dist) <= p + 1e-15
    assert all(0.0 <= q <= 1.0 + 1e-15 for q in dist.q)


@pytest.mark.parametrize("n,k", [(10, 3), (5, 2), (3, 0), (4, 6)])
def test_q0_non_increasing_in_p(n, k):
    grid = [i / 50 for i in range(51)]
    q0 = [q_distribution(CodeParams(n, k), p).q0 for p in grid]
    assert all(a >= b - 1e-15 for a, b in zip(q0, q0[1:]))


@pytest.mark.parametrize(
    "n,k", [(0, 1), (-2, 0), (3, -1), (100, 29), (1.5, 0)]
)
def test_invalid_params(n, k):
    with pytest.raises(DomainError):
        CodeParams(n, k)


def test_largest_allowed_code():
    dist = q_distribution(CodeParams(100, 28), 0.2)
    assert abs(sum(dist.q) - 1.0) <= 1e-12


@pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
def test_invalid_probability(p):
    with pytest.raises(DomainError):
        q_distribution(CodeParams(4, 1), p)
