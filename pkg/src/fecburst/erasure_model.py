"""Residual loss after (N+K, K) erasure decoding under Bernoulli network loss."""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import binomial
from .errors import DomainError

MAX_PACKETS = 128


@dataclass(frozen=True)
class CodeParams:
    """Block size ``n`` (data packets) and redundancy ``k`` (parity packets)."""

    n: int
    k: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"block size n must be an integer >= 1, got {self.n!r}")
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 0:
            raise DomainError(f"redundancy k must be an integer >= 0, got {self.k!r}")
        if self.n + self.k > MAX_PACKETS:
            raise DomainError(f"n + k must be <= {MAX_PACKETS}, got {self.n + self.k}")


def check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p out of range [0, 1]: {p}")
    return p


@dataclass(frozen=True)
class UnrecoverableDistribution:
    """q[i] is the probability that a block ends up with i unrecoverable losses."""

    q: tuple[float, ...]
    params: CodeParams
    p: float

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def q0(self) -> float:
        return self.q[0]

    @property
    def lossy(self) -> float:
        """Probability of at least one unrecoverable loss.

        Equal to 1 - Q(0) but summed directly, which keeps full relative
        precision when losses are rare.
        """
        return sum(self.q[1:])

    def __getitem__(self, i: int) -> float:
        return self.q[i]


def _binomial_pmf(n: int, i: int, p: float) -> float:
    # Python defines 0.0 ** 0 == 1.0, which is the convention needed at p in {0, 1}.
    return binomial(n, i) * p**i * (1.0 - p) ** (n - i)


def q_distribution(params: CodeParams, p: float) -> UnrecoverableDistribution:
    """Distribution of the number of data packets a block cannot recover.

    A block is fully recovered when at most ``k`` of its ``n + k`` packets are
    lost. Otherwise every data packet lost in the network stays lost, so for
    i >= 1 we need i data losses and more than k - i parity losses.
    """
    p = check_probability(p)
    n, k = params.n, params.k
    # rounding can push the tail sum a hair above 1
    q = [min(1.0, sum(_binomial_pmf(n + k, i, p) for i in range(k + 1)))]
    for i in range(1, n + 1):
        data = _binomial_pmf(n, i, p)
        if i <= k:
            # parity losses k - j for j = 0..i-1, i.e. at least k - i + 1 of them
            parity = sum(
                binomial(k, k - j) * p ** (k - j) * (1.0 - p) ** j for j in range(i)
            )
            data *= parity
        q.append(data)
    return UnrecoverableDistribution(tuple(q), params, p)


def residual_loss_probability(dist: UnrecoverableDistribution) -> float:
    """Probability that a given data packet is lost and not recovered."""
    return sum(i * dist.q[i] for i in range(1, dist.n + 1)) / dist.n
