import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from models import Cell, DiscreteDistribution, Partition, Tableau
from services import InvalidShapeError, SameCellError

logger = logging.getLogger(__name__)

DEFAULT_SHARD_SIZE = 5000


class HookWalkSampler:
    """Draws uniformly random standard Young tableaux with the Greene-Nijenhuis-Wilf hook walk.

    All randomness comes from the injected numpy Generator, consumed in fixed-size
    blocks of uniforms, so a seed fully determines the sample sequence.
    """

    def __init__(self, rng: np.random.Generator, block_size: int = 4096):
        self.rng = rng
        self.block_size = block_size
        self._block = np.empty(0)
        self._pos = 0

    def _index(self, m: int) -> int:
        """A uniform integer in [0, m)."""
        if self._pos >= len(self._block):
            self._block = self.rng.random(self.block_size)
            self._pos = 0
        u = self._block[self._pos]
        self._pos += 1
        return min(int(u * m), m - 1)

    def sample_rows(self, shape: Partition) -> list[list[int]]:
        """Returns one uniformly random tableau of shape as 0-based row lists."""
        rows = list(shape.parts)
        grid = [[0] * width for width in rows]
        for m in range(shape.size, 0, -1):
            # uniform starting cell among the m remaining cells
            idx = self._index(m)
            i = 0
            while idx >= rows[i]:
                idx -= rows[i]
                i += 1
            j = idx

            while True:
                arm = rows[i] - j - 1
                leg = 0
                while i + leg + 1 < len(rows) and rows[i + leg + 1] > j:
                    leg += 1
                if arm + leg == 0:
                    break
                step = self._index(arm + leg)
                if step < arm:
                    j += 1 + step
                else:
                    i += 1 + step - arm

            grid[i][j] = m
            rows[i] -= 1
            while rows and rows[-1] == 0:
                rows.pop()
        return grid

    def sample(self, shape: Partition) -> Tableau:
        return Tableau(shape, tuple(tuple(row) for row in self.sample_rows(shape)))


def gnw_sample(shape: Partition, rng: np.random.Generator) -> Tableau:
    """Draws one standard Young tableau of shape uniformly at random.

    Args:
        shape: A non-empty shape.
        rng: The only entropy source.

    Raises:
        InvalidShapeError: If shape is empty.
    """
    if shape.size < 1:
        raise InvalidShapeError('Sampling needs a shape with at least one cell')
    return HookWalkSampler(rng).sample(shape)


def sample_tableaux(shape: Partition, count: int, seed: int) -> list[Tableau]:
    """Draws count tableaux from a single generator seeded with seed."""
    if shape.size < 1:
        raise InvalidShapeError('Sampling needs a shape with at least one cell')
    sampler = HookWalkSampler(np.random.default_rng(seed))
    return [sampler.sample(shape) for _ in range(count)]


def _shard_sizes(samples: int, shard_size: int) -> list[int]:
    full, rest = divmod(samples, shard_size)
    return [shard_size] * full + ([rest] if rest else [])


def _run_shards(task, args: tuple, samples: int, seed: int, shard_size: int, workers: int) -> list:
    # Shards depend only on (seed, shard index), never on the worker count
    sizes = _shard_sizes(samples, shard_size)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(*args, size, child) for size, child in zip(sizes, seeds)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, *zip(*jobs)))
    return [task(*job) for job in jobs]


def _occupancy_shard(parts: tuple[int, ...], row: int, col: int, size: int,
                     seed: np.random.SeedSequence) -> Counter:
    sampler = HookWalkSampler(np.random.default_rng(seed))
    shape = Partition(parts)
    return Counter(sampler.sample_rows(shape)[row - 1][col - 1] for _ in range(size))


def _sortprob_shard(parts: tuple[int, ...], c1: tuple[int, int], c2: tuple[int, int], size: int,
                    seed: np.random.SeedSequence) -> int:
    sampler = HookWalkSampler(np.random.default_rng(seed))
    shape = Partition(parts)
    balance = 0
    for _ in range(size):
        grid = sampler.sample_rows(shape)
        balance += 1 if grid[c1[0] - 1][c1[1] - 1] > grid[c2[0] - 1][c2[1] - 1] else -1
    return balance


def _tableau_shard(parts: tuple[int, ...], size: int, seed: np.random.SeedSequence) -> Counter:
    sampler = HookWalkSampler(np.random.default_rng(seed))
    shape = Partition(parts)
    return Counter(tuple(tuple(row) for row in sampler.sample_rows(shape)) for _ in range(size))


def empirical_occupancy(shape: Partition, cell: Cell, samples: int, seed: int,
                        shard_size: int = DEFAULT_SHARD_SIZE, workers: int = 1) -> dict[int, Fraction]:
    """Estimates the law of the entry in cell by sampling.

    Args:
        shape: The shape to sample.
        cell: The observed cell.
        samples: Number of tableaux to draw (at least 1).
        seed: The root seed; shards use seeds derived from it.
        shard_size: Samples per shard.
        workers: Processes used to run shards; does not affect the result.

    Returns:
        Value -> frequency as exact count/samples fractions, sorted by value; sums to 1.

    Raises:
        CellOutsideShapeError: If cell is not in shape.
    """
    shape.require(cell)
    if samples < 1:
        raise ValueError('At least one sample is required')
    counts = Counter()
    for shard in _run_shards(_occupancy_shard, (shape.parts, cell.row, cell.col), samples, seed, shard_size, workers):
        counts.update(shard)
    logger.debug('Sampled %d tableaux of (%s) for cell [%s]', samples, shape, cell)
    return {value: Fraction(counts[value], samples) for value in sorted(counts)}


def empirical_sortprob(shape: Partition, c1: Cell, c2: Cell, samples: int, seed: int,
                       shard_size: int = DEFAULT_SHARD_SIZE, workers: int = 1) -> Fraction:
    """Estimates the sorting probability of c1 against c2 by sampling.

    Returns:
        (#{T_c1 > T_c2} - #{T_c2 > T_c1}) / samples as an exact fraction in [-1, 1].

    Raises:
        CellOutsideShapeError: If either cell is not in shape.
        SameCellError: If c1 == c2.
    """
    shape.require(c1)
    shape.require(c2)
    if c1 == c2:
        raise SameCellError(f'Cannot sort cell [{c1}] against itself')
    if samples < 1:
        raise ValueError('At least one sample is required')
    balance = sum(_run_shards(_sortprob_shard, (shape.parts, (c1.row, c1.col), (c2.row, c2.col)),
                              samples, seed, shard_size, workers))
    return Fraction(balance, samples)


def tableau_frequencies(shape: Partition, samples: int, seed: int,
                        shard_size: int = DEFAULT_SHARD_SIZE, workers: int = 1) -> Counter:
    """Counts how often each tableau (as a tuple of rows) is drawn."""
    if shape.size < 1:
        raise InvalidShapeError('Sampling needs a shape with at least one cell')
    counts = Counter()
    for shard in _run_shards(_tableau_shard, (shape.parts,), samples, seed, shard_size, workers):
        counts.update(shard)
    return counts


def compare_occupancy(shape: Partition, cell: Cell, samples: int, seed: int,
                      exact: DiscreteDistribution, shard_size: int = DEFAULT_SHARD_SIZE,
                      workers: int = 1) -> tuple[dict[int, Fraction], float]:
    """Samples the occupancy of cell and measures its total-variation distance to exact."""
    empirical = empirical_occupancy(shape, cell, samples, seed, shard_size=shard_size, workers=workers)
    return empirical, exact.total_variation(empirical)
