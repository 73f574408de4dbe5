"""Loss-vector probabilities and the mean loss-row length inside one block."""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    binomial,
    enumerate_grouped_terms,
    multichoose,
    partition_count,
)
from .erasure_model import UnrecoverableDistribution
from .errors import DomainError, InfeasibleError, UndefinedQuantity

BRUTE_FORCE_MAX_N = 16


@dataclass(frozen=True)
class LossVector:
    """Boundary flags plus the ordered loss-row lengths of one block.

    ``s`` (``e``) is 0 when the first (last) packet is lost and 1 otherwise.
    The all-receipts block is ``LossVector(1, (), 1)``.
    """

    s: int
    runs: tuple[int, ...]
    e: int

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple(self.runs))
        if self.s not in (0, 1) or self.e not in (0, 1):
            raise DomainError(f"boundary flags must be 0 or 1, got s={self.s}, e={self.e}")
        if any(a < 1 for a in self.runs):
            raise DomainError(f"loss rows must have positive length: {self.runs}")
        if not self.runs and (self.s, self.e) != (1, 1):
            raise DomainError("a block without losses must have s = e = 1")

    @property
    def j(self) -> int:
        return len(self.runs)

    @property
    def m(self) -> int:
        return sum(self.runs)

    def packets_needed(self) -> int:
        return self.s + self.m + self.e + max(self.j - 1, 0)

    def mirrored(self) -> LossVector:
        return LossVector(self.e, self.runs[::-1], self.s)


def grouped_mass(s: int, j: int, m: int, e: int, dist: UnrecoverableDistribution) -> float:
    """Probability of any single loss vector with the given (s, j, m, e)."""
    n = dist.n
    ways = multichoose(j + 1 - (1 - s) - (1 - e), n - m - (j - 1) - s - e)
    if ways == 0:
        return 0.0
    return ways * dist.q[m] / binomial(n, m)


def loss_vector_probability(lv: LossVector, dist: UnrecoverableDistribution) -> float:
    """Probability that a block shows exactly the loss vector ``lv``.

    Given m unrecoverable losses, every placement of them among the n
    packets is equally likely, so the answer is (patterns with this loss
    vector) / C(n, m) * Q(m). Vectors that fit the length budget but cannot
    occur, like (0, [1], 0) with n = 2, get probability 0.
    """
    if lv.j == 0:
        raise DomainError("loss vector has no losses")
    if lv.packets_needed() > dist.n:
        raise DomainError(
            f"loss vector needs {lv.packets_needed()} packets, block has {dist.n}"
        )
    return grouped_mass(lv.s, lv.j, lv.m, lv.e, dist)


def _require_losses(dist: UnrecoverableDistribution) -> None:
    if dist.lossy <= 0.0:
        raise UndefinedQuantity("no losses possible: Q(0) = 1")


def expected_burst_single_block(dist: UnrecoverableDistribution) -> float:
    """Mean loss-row length of a block, conditioned on the block having a loss.

    Sums (m / j) * P over all loss vectors, grouping vectors that share
    (s, j, m, e) since they contribute identically.
    """
    _require_losses(dist)
    total = 0.0
    for t in enumerate_grouped_terms(dist.n):
        mass = grouped_mass(t.s, t.j, t.m, t.e, dist)
        total += (t.m / t.j) * t.multiplicity * mass
    return total / dist.lossy


def brute_force_expected_burst(dist: UnrecoverableDistribution) -> float:
    """Same expectation as :func:`expected_burst_single_block`, by walking all 2^n bitmaps."""
    n = dist.n
    if n > BRUTE_FORCE_MAX_N:
        raise InfeasibleError(f"brute force needs n <= {BRUTE_FORCE_MAX_N}, got {n}")
    _require_losses(dist)
    weight = [dist.q[m] / binomial(n, m) for m in range(n + 1)]
    total = mass = 0.0
    for bits in range(1, 1 << n):
        losses = bits.bit_count()
        # a row starts wherever a loss is not preceded by another loss
        rows = (bits & ~(bits << 1)).bit_count()
        total += weight[losses] * losses / rows
        mass += weight[losses]
    return total / mass


def index_size(n: int) -> int:
    """Partition-based size estimate for the single-block summation index.

    This is a complexity figure, not the number of distinct loss vectors:
    it ignores row order and the boundary flags.
    """
    if n < 1:
        raise ValueError(f"block size must be >= 1, got {n}")
    return sum(
        partition_count(i, j)
        for j in range(1, (n + 1) // 2 + 1)
        for i in range(1, n - (j - 1) + 1)
    )
