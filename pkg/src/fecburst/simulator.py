"""Seeded Monte Carlo model of Bernoulli loss followed by erasure decoding.

Blocks are drawn in fixed-size chunks. Chunk c uses its own generator keyed
by (seed, c), so the stream does not depend on how chunks are scheduled.
Within a block the last k positions are the parity packets; only the count
of losses matters for decoding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .erasure_model import CodeParams, check_probability
from .errors import DomainError

CHUNK_BLOCKS = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    params: CodeParams
    p: float
    num_blocks: int
    seed: int = 0

    def __post_init__(self):
        check_probability(self.p)
        if self.num_blocks < 1:
            raise DomainError(f"num_blocks must be >= 1, got {self.num_blocks}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class BurstReport:
    """Empirical counterparts of the analytical quantities.

    ``pattern_ratio_mean`` averages T / R over completed multiblock patterns;
    ``burst_length_mean`` averages maximal loss runs of the concatenated
    stream. Items still open when the stream ends are dropped and counted in
    the ``discarded_*`` fields. Means with no samples are NaN.
    """

    num_blocks: int
    empirical_q: tuple[int, ...]
    pattern_ratio_mean: float
    pattern_count: int
    standard_error_ratio: float
    burst_length_mean: float
    burst_count: int
    standard_error_burst: float
    single_block_ratio_mean: float
    lossy_block_count: int
    standard_error_single: float
    discarded_patterns: int
    discarded_bursts: int
    diagnostics: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "num_blocks": self.num_blocks,
            "empirical_q": list(self.empirical_q),
            "pattern_ratio_mean": self.pattern_ratio_mean,
            "pattern_count": self.pattern_count,
            "standard_error_ratio": self.standard_error_ratio,
            "burst_length_mean": self.burst_length_mean,
            "burst_count": self.burst_count,
            "standard_error_burst": self.standard_error_burst,
            "single_block_ratio_mean": self.single_block_ratio_mean,
            "lossy_block_count": self.lossy_block_count,
            "standard_error_single": self.standard_error_single,
            "discarded_patterns": self.discarded_patterns,
            "discarded_bursts": self.discarded_bursts,
            "diagnostics": list(self.diagnostics),
        }


class _Moments:
    """Running count, sum and sum of squares."""

    def __init__(self):
        self.count = 0
        self.total = 0.0
        self.squares = 0.0

    def add(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        self.count += values.size
        self.total += float(values.sum())
        self.squares += float(np.square(values).sum())

    def mean(self) -> float:
        return self.total / self.count if self.count else math.nan

    def standard_error(self) -> float:
        if self.count < 2:
            return math.nan
        mean = self.total / self.count
        var = max(self.squares / self.count - mean * mean, 0.0) * self.count / (self.count - 1)
        return math.sqrt(var / self.count)


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def block_outcomes(config: SimConfig):
    """Yield boolean (blocks, n) arrays of unrecoverable losses, chunk by chunk."""
    n, k = config.params.n, config.params.k
    for chunk, start in enumerate(range(0, config.num_blocks, CHUNK_BLOCKS)):
        count = min(CHUNK_BLOCKS, config.num_blocks - start)
        rng = chunk_generator(config.seed, chunk)
        lost = rng.random((count, n + k)) < config.p
        decodable = lost.sum(axis=1) <= k
        data = lost[:, :n]
        data[decodable] = False
        yield data


def _run_lengths(flat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start indices and lengths of the True runs of a 1-D boolean array."""
    padded = np.concatenate(([False], flat, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return starts, ends - starts


class _StreamState:
    """Accumulates statistics over consecutive chunks of the block stream."""

    def __init__(self, n: int):
        self.n = n
        self.q_counts = np.zeros(n + 1, dtype=np.int64)
        self.patterns = _Moments()
        self.bursts = _Moments()
        self.single = _Moments()
        # open multiblock pattern carried across chunks
        self.open_losses = 0
        self.open_rows = 0
        self.prev_e = 1
        # open loss run carried across chunks
        self.open_burst = 0

    def update(self, data: np.ndarray) -> None:
        n = self.n
        losses = data.sum(axis=1)
        self.q_counts += np.bincount(losses, minlength=n + 1)

        previous = np.zeros_like(data)
        previous[:, 1:] = data[:, :-1]
        rows = (data & ~previous).sum(axis=1)
        lossy = losses > 0
        self.single.add(losses[lossy] / rows[lossy])

        self._update_patterns(data, losses, rows, lossy)
        self._update_bursts(data.ravel())

    def _update_patterns(self, data, losses, rows, lossy) -> None:
        s = (~data[:, 0]).astype(np.int64)
        e = (~data[:, -1]).astype(np.int64)
        prev_e = np.concatenate(([self.prev_e], e[:-1]))
        # a row crossing into this block was already counted in the previous one
        merged = rows - (1 - prev_e) * (1 - s)

        starts, lengths = _run_lengths(lossy)
        if starts.size:
            ends = starts + lengths
            loss_cum = np.concatenate(([0], np.cumsum(losses)))
            row_cum = np.concatenate(([0], np.cumsum(merged)))
            totals = loss_cum[ends] - loss_cum[starts]
            row_totals = row_cum[ends] - row_cum[starts]
            if self.open_rows and starts[0] == 0:
                totals[0] += self.open_losses
                row_totals[0] += self.open_rows
            elif self.open_rows:
                self.patterns.add([self.open_losses / self.open_rows])
            if ends[-1] == data.shape[0]:
                self.open_losses = int(totals[-1])
                self.open_rows = int(row_totals[-1])
                totals, row_totals = totals[:-1], row_totals[:-1]
            else:
                self.open_losses = self.open_rows = 0
            self.patterns.add(totals / row_totals)
        elif self.open_rows:
            self.patterns.add([self.open_losses / self.open_rows])
            self.open_losses = self.open_rows = 0
        self.prev_e = int(e[-1])

    def _update_bursts(self, flat: np.ndarray) -> None:
        starts, lengths = _run_lengths(flat)
        runs_to_end = starts.size and starts[-1] + lengths[-1] == flat.size
        if self.open_burst:
            if starts.size and starts[0] == 0:
                lengths[0] += self.open_burst
            else:
                self.bursts.add([self.open_burst])
            self.open_burst = 0
        if runs_to_end:
            self.open_burst = int(lengths[-1])
            lengths = lengths[:-1]
        self.bursts.add(lengths)


def simulate(config: SimConfig) -> BurstReport:
    """Run the stream described by ``config`` and measure every burst statistic."""
    state = _StreamState(config.params.n)
    for data in block_outcomes(config):
        state.update(data)

    diagnostics = []
    discarded_patterns = 1 if state.open_rows else 0
    discarded_bursts = 1 if state.open_burst else 0
    if state.patterns.count == 0 and discarded_patterns:
        diagnostics.append("only pattern was still open at stream end; no complete pattern")
    if state.bursts.count == 0 and discarded_bursts:
        diagnostics.append("only loss run was still open at stream end; no complete run")
    if state.single.count == 0:
        diagnostics.append("no lossy blocks")

    return BurstReport(
        num_blocks=config.num_blocks,
        empirical_q=tuple(int(c) for c in state.q_counts),
        pattern_ratio_mean=state.patterns.mean(),
        pattern_count=state.patterns.count,
        standard_error_ratio=state.patterns.standard_error(),
        burst_length_mean=state.bursts.mean(),
        burst_count=state.bursts.count,
        standard_error_burst=state.bursts.standard_error(),
        single_block_ratio_mean=state.single.mean(),
        lossy_block_count=state.single.count,
        standard_error_single=state.single.standard_error(),
        discarded_patterns=discarded_patterns,
        discarded_bursts=discarded_bursts,
        diagnostics=tuple(diagnostics),
    )


def empirical_single_block_burst(config: SimConfig) -> float:
    """Mean of losses / loss rows over lossy blocks, each block taken alone."""
    report = simulate(config)
    if report.lossy_block_count == 0:
        raise DomainError("no lossy blocks in the simulated stream")
    return report.single_block_ratio_mean
