import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

import numpy as np

from models import Cell, DiscreteDistribution, Partition
from services import SameCellError
from services.counting_service import (DEFAULT_MAX_CELLS, count_skew, count_syt_yf, enumerate_fillings,
                                       _check_cap)
from services.shape_service import (occupant_range, remove_cell, subshapes_for_sorting, subshapes_with_corner,
                                    unrelated)

logger = logging.getLogger(__name__)

CellPair = tuple[Cell, Cell]


def _prefix_weight(shape: Partition, nu: Partition, corner: Cell) -> int:
    # tableaux where 1..|nu| fill nu and |nu| sits in corner
    return count_syt_yf(remove_cell(nu, corner)) * count_skew(shape, nu)


def occupancy_prob(shape: Partition, cell: Cell, r: int) -> Fraction:
    """Returns the exact probability that cell holds r in a uniformly random tableau of shape.

    Sums f^{nu'} f^{shape/nu} over the subshapes nu of size r having cell as a corner,
    where nu' is nu without that corner, and divides by f^shape.

    Raises:
        CellOutsideShapeError: If cell is not in shape.
    """
    lo, hi = occupant_range(shape, cell)
    if not lo <= r <= hi:
        return Fraction(0)
    total = sum(_prefix_weight(shape, nu, cell) for nu in subshapes_with_corner(shape, cell, r))
    return Fraction(total, count_syt_yf(shape))


def occupancy_pgf(shape: Partition, cell: Cell) -> DiscreteDistribution:
    """Returns the exact law of the entry in cell; only non-zero atoms are kept.

    Raises:
        CellOutsideShapeError: If cell is not in shape.
    """
    lo, hi = occupant_range(shape, cell)
    return DiscreteDistribution.from_mapping({r: occupancy_prob(shape, cell, r) for r in range(lo, hi + 1)})


def greater_prob(shape: Partition, c1: Cell, c2: Cell) -> Fraction:
    """Returns Pr(T_c1 > T_c2) by summing over the possible occupants r of c1."""
    lo, hi = occupant_range(shape, c1)
    total = 0
    for r in range(lo, hi + 1):
        total += sum(_prefix_weight(shape, nu, c1) for nu in subshapes_for_sorting(shape, c1, c2, r))
    return Fraction(total, count_syt_yf(shape))


def sort_prob(shape: Partition, c1: Cell, c2: Cell) -> Fraction:
    """Returns the sorting probability Pr(T_c1 > T_c2) - Pr(T_c2 > T_c1).

    Args:
        shape: The shape.
        c1: The first cell.
        c2: The second cell, distinct from c1.

    Returns:
        An exact value in [-1, 1]; -1 when c1 weakly precedes c2.

    Raises:
        CellOutsideShapeError: If either cell is not in shape.
        SameCellError: If c1 == c2.
    """
    shape.require(c1)
    shape.require(c2)
    if c1 == c2:
        raise SameCellError(f'Cannot sort cell [{c1}] against itself')
    return 2 * greater_prob(shape, c1, c2) - 1


def unrelated_pairs(shape: Partition) -> list[CellPair]:
    """Unordered pairs of incomparable cells, oriented with the upper-right cell first."""
    pairs = []
    for a, b in combinations(list(shape.cells()), 2):
        if unrelated(a, b):
            pairs.append((a, b) if a.row < b.row else (b, a))
    return pairs


def _pair_sort_prob(parts: tuple[int, ...], c1: Cell, c2: Cell) -> Fraction:
    return sort_prob(Partition(parts), c1, c2)


def _minimum(values: dict[CellPair, Fraction]) -> tuple[Fraction, frozenset[CellPair]]:
    if not values:
        return Fraction(1), frozenset()
    best = min(abs(v) for v in values.values())
    return best, frozenset(pair for pair, v in values.items() if abs(v) == best)


def min_sort_prob(shape: Partition, workers: int = 1) -> tuple[Fraction, frozenset[CellPair]]:
    """Finds the minimal absolute sorting probability over incomparable cell pairs.

    Comparable pairs always have |SP| = 1 and are excluded. When no incomparable pair exists
    (a single row or column) the minimum is 1 with no champions.

    Args:
        shape: A shape with at least two cells.
        workers: Processes used to evaluate pairs; does not affect the result.

    Returns:
        The minimum and the set of every pair attaining it.
    """
    pairs = unrelated_pairs(shape)
    if workers > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_pair_sort_prob, [shape.parts] * len(pairs),
                                   [a for a, _ in pairs], [b for _, b in pairs]))
    else:
        values = [sort_prob(shape, a, b) for a, b in pairs]
    logger.debug('Evaluated %d incomparable pairs of (%s)', len(pairs), shape)
    return _minimum(dict(zip(pairs, values)))


def _entry_matrix(shape: Partition, max_cells: int, allow_large: bool) -> tuple[list[Cell], np.ndarray]:
    _check_cap(shape.size, max_cells, allow_large)
    cells = list(shape.cells())
    rows = [[assignment[c] for c in cells] for assignment in enumerate_fillings(shape)]
    return cells, np.array(rows, dtype=np.int64).reshape(len(rows), len(cells))


def occupancy_pgf_by_enumeration(shape: Partition, cell: Cell, max_cells: int = DEFAULT_MAX_CELLS,
                                 allow_large: bool = False) -> DiscreteDistribution:
    """The law of the entry in cell, computed by listing every tableau."""
    shape.require(cell)
    cells, entries = _entry_matrix(shape, max_cells, allow_large)
    values, counts = np.unique(entries[:, cells.index(cell)], return_counts=True)
    total = entries.shape[0]
    return DiscreteDistribution.from_mapping({int(v): Fraction(int(c), total) for v, c in zip(values, counts)})


def sort_probs_by_enumeration(shape: Partition, pairs: list[CellPair], max_cells: int = DEFAULT_MAX_CELLS,
                              allow_large: bool = False) -> dict[CellPair, Fraction]:
    """Sorting probabilities of the given pairs, computed by listing every tableau."""
    cells, entries = _entry_matrix(shape, max_cells, allow_large)
    total = entries.shape[0]
    index = {c: t for t, c in enumerate(cells)}
    result = {}
    for c1, c2 in pairs:
        greater = int(np.count_nonzero(entries[:, index[c1]] > entries[:, index[c2]]))
        result[(c1, c2)] = Fraction(2 * greater - total, total)
    return result


def min_sort_prob_by_enumeration(shape: Partition, max_cells: int = DEFAULT_MAX_CELLS,
                                 allow_large: bool = False) -> tuple[Fraction, frozenset[CellPair]]:
    """min_sort_prob computed independently from the full list of tableaux."""
    return _minimum(sort_probs_by_enumeration(shape, unrelated_pairs(shape), max_cells, allow_large))
