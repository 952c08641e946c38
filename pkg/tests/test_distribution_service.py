import pytest
from fractions import Fraction

import numpy as np

from models import Cell, Partition
from services import CellOutsideShapeError, SameCellError
from services.distribution_service import (greater_prob, min_sort_prob, min_sort_prob_by_enumeration, occupancy_pgf,
                                           occupancy_pgf_by_enumeration, occupancy_prob, sort_prob,
                                           sort_probs_by_enumeration, unrelated_pairs)
from services.shape_service import conjugate, occupant_range
from testing_utils import all_partitions_up_to, fractions


def three_row_formula(n1: int, n2: int, n3: int) -> Fraction:
    # probability that [1,2] holds 3 on (n1, n2, n3)
    numerator = (n1 ** 2 * n2 + n1 ** 2 * n3 + n1 * n2 ** 2 + 2 * n1 * n2 * n3 + n1 * n3 ** 2 + n2 ** 2 * n3
                 + n2 * n3 ** 2 - n1 * n2 - n1 * n3 + n2 ** 2 - n3 * n2 + 2 * n3 ** 2 - 2 * n2 - 6 * n3)
    s = n1 + n2 + n3
    return Fraction(numerator, (s - 2) * (s - 1) * s)


def test_occupancy_pgf(preface_shape):
    """
    GIVEN the shape (2,2,1) and the cell [2,1]
    WHEN the occupancy law is computed
    THEN it should be 3/5 at 2 and 2/5 at 3
    """
    law = occupancy_pgf(preface_shape['shape'], preface_shape['cell'])

    assert law.as_dict() == fractions(preface_shape['pgf'])
    assert occupancy_prob(preface_shape['shape'], preface_shape['cell'], 4) == 0


def test_occupancy_of_fixed_cells():
    """
    GIVEN the cell [1,1] and the last cell of a single row
    WHEN their laws are computed
    THEN each is a point mass
    """
    assert occupancy_pgf(Partition((4, 3, 2)), Cell(1, 1)).as_dict() == {1: 1}
    assert occupancy_pgf(Partition((4,)), Cell(1, 4)).as_dict() == {4: 1}


def test_occupancy_of_rectangle_cell():
    """
    GIVEN the shape (4,4,4) and the cell [2,2]
    WHEN the probability that it holds 4 is computed
    THEN it should be 8/33
    """
    assert occupancy_prob(Partition((4, 4, 4)), Cell(2, 2), 4) == Fraction(8, 33)


def test_occupancy_cell_outside():
    """
    GIVEN a cell outside the shape
    WHEN the occupancy law is requested
    THEN it should raise CellOutsideShapeError
    """
    with pytest.raises(CellOutsideShapeError):
        occupancy_pgf(Partition((2, 2, 1)), Cell(3, 2))


def test_occupancy_support_lies_in_occupant_range():
    """
    GIVEN every shape of size at most 8 and every cell in it
    WHEN the exact occupancy law is computed
    THEN its support lies in occupant_range and both ends of the range are attained
    """
    for shape in all_partitions_up_to(8):
        for cell in shape.cells():
            lo, hi = occupant_range(shape, cell)
            support = set(occupancy_pgf(shape, cell).as_dict())
            assert support <= set(range(lo, hi + 1)), (shape, cell)
            assert {lo, hi} <= support, (shape, cell)


@pytest.mark.parametrize('parts', [(3, 3), (4, 4, 4), (5, 5, 5), (2, 2, 2, 2), (6, 6)])
def test_occupancy_support_fills_occupant_range_on_rectangles(parts):
    """
    GIVEN a rectangle and every cell in it
    WHEN the exact occupancy law is computed
    THEN every entry of occupant_range has positive probability
    """
    shape = Partition(parts)
    for cell in shape.cells():
        lo, hi = occupant_range(shape, cell)
        assert set(occupancy_pgf(shape, cell).as_dict()) == set(range(lo, hi + 1)), cell


def test_occupancy_is_covariant_under_conjugation():
    """
    GIVEN every shape of size at most 8 and every cell [i,j] in it
    WHEN the law of [j,i] in the conjugate shape is computed
    THEN it equals the law of [i,j] in the shape
    """
    for shape in all_partitions_up_to(8):
        transposed = conjugate(shape)
        for cell in shape.cells():
            assert (occupancy_pgf(transposed, Cell(cell.col, cell.row)).as_dict()
                    == occupancy_pgf(shape, cell).as_dict()), (shape, cell)


def test_sort_prob_is_antisymmetric():
    """
    GIVEN every shape of size at most 7 and every incomparable pair of cells
    WHEN the sorting probability is computed in both orders
    THEN the two values are negatives of each other and lie in [-1, 1]
    """
    for shape in all_partitions_up_to(7):
        for c1, c2 in unrelated_pairs(shape):
            value = sort_prob(shape, c1, c2)
            assert sort_prob(shape, c2, c1) == -value, (shape, c1, c2)
            assert -1 <= value <= 1


@pytest.mark.slow
def test_occupancy_laws_sum_to_one_up_to_size_ten():
    """
    GIVEN every shape of size at most 10 and every cell in it
    WHEN the exact occupancy law is computed
    THEN its probabilities sum to exactly 1
    """
    for shape in all_partitions_up_to(10):
        for cell in shape.cells():
            assert sum(occupancy_pgf(shape, cell).as_dict().values()) == 1, (shape, cell)


def test_sort_prob(preface_shape):
    """
    GIVEN the shape (2,2,1)
    WHEN the sorting probability of [1,2] against [2,1] is computed in both orders
    THEN it should be 1/5 one way and -1/5 the other
    """
    shape, c1, c2 = preface_shape['shape'], preface_shape['c1'], preface_shape['c2']

    assert sort_prob(shape, c1, c2) == Fraction(preface_shape['sort_prob'])
    assert sort_prob(shape, c2, c1) == -Fraction(preface_shape['sort_prob'])
    assert greater_prob(shape, c1, c2) == Fraction(3, 5)


def test_sort_prob_of_comparable_cells():
    """
    GIVEN cells where the first weakly precedes the second
    WHEN the sorting probability is computed
    THEN it should be -1, and 1 in the reverse order
    """
    shape = Partition((3, 2, 1))

    assert sort_prob(shape, Cell(1, 1), Cell(2, 2)) == -1
    assert sort_prob(shape, Cell(1, 2), Cell(2, 2)) == -1
    assert sort_prob(shape, Cell(2, 2), Cell(1, 1)) == 1


def test_sort_prob_errors():
    """
    GIVEN a repeated cell or a cell outside the shape
    WHEN the sorting probability is requested
    THEN it should raise SameCellError or CellOutsideShapeError
    """
    shape = Partition((2, 2, 1))

    with pytest.raises(SameCellError):
        sort_prob(shape, Cell(1, 2), Cell(1, 2))
    with pytest.raises(CellOutsideShapeError):
        sort_prob(shape, Cell(1, 2), Cell(3, 2))


def test_unrelated_pairs():
    """
    GIVEN the shape (2,2,1)
    WHEN its incomparable pairs are listed
    THEN every pair has the upper cell first
    """
    pairs = unrelated_pairs(Partition((2, 2, 1)))

    assert set(pairs) == {(Cell(1, 2), Cell(2, 1)), (Cell(1, 2), Cell(3, 1)), (Cell(2, 2), Cell(3, 1))}
    assert unrelated_pairs(Partition((4,))) == []


def test_min_sort_prob():
    """
    GIVEN the shape (2,2,1)
    WHEN the minimal absolute sorting probability is computed
    THEN it should be 1/5 attained by two pairs, the same with a worker pool
    """
    expected = (Fraction(1, 5), frozenset({(Cell(1, 2), Cell(2, 1)), (Cell(2, 2), Cell(3, 1))}))

    assert min_sort_prob(Partition((2, 2, 1))) == expected
    assert min_sort_prob(Partition((2, 2, 1)), workers=2) == expected
    assert min_sort_prob_by_enumeration(Partition((2, 2, 1))) == expected


def test_min_sort_prob_without_incomparable_pairs():
    """
    GIVEN a single row
    WHEN the minimal sorting probability is computed
    THEN it should be 1 with no champions
    """
    assert min_sort_prob(Partition((3,))) == (Fraction(1), frozenset())


def test_three_row_formula_at_random_triples():
    """
    GIVEN 20 random three-row shapes (n1, n2, n3) with n1 >= 2
    WHEN the probability that [1,2] holds 3 is computed
    THEN it should equal the closed rational formula in n1, n2, n3 exactly
    """
    rng = np.random.default_rng(2024)
    for _ in range(20):
        n1 = int(rng.integers(2, 9))
        n2 = int(rng.integers(1, n1 + 1))
        n3 = int(rng.integers(1, n2 + 1))
        assert occupancy_prob(Partition((n1, n2, n3)), Cell(1, 2), 3) == three_row_formula(n1, n2, n3)


@pytest.mark.slow
def test_subshape_sums_match_enumeration_up_to_size_eight():
    """
    GIVEN every shape with at most 8 cells
    WHEN occupancy laws and sorting probabilities are computed by subshape sums and by enumeration
    THEN both methods agree for every cell and every incomparable pair
    """
    for shape in all_partitions_up_to(8):
        for cell in shape.cells():
            assert occupancy_pgf(shape, cell) == occupancy_pgf_by_enumeration(shape, cell)
        pairs = unrelated_pairs(shape)
        listed = sort_probs_by_enumeration(shape, pairs)
        for c1, c2 in pairs:
            assert sort_prob(shape, c1, c2) == listed[(c1, c2)]


@pytest.mark.slow
def test_min_sort_prob_of_ten_four_three():
    """
    GIVEN the shape (10,4,3)
    WHEN the minimal sorting probability is computed by subshape sums and by enumeration
    THEN both give 1/273 attained only by [1,5] against [3,1]
    """
    shape = Partition((10, 4, 3))

    by_sums = min_sort_prob(shape, workers=2)
    by_listing = min_sort_prob_by_enumeration(shape)

    assert by_sums == by_listing
    assert by_sums == (Fraction(1, 273), frozenset({(Cell(1, 5), Cell(3, 1))}))
