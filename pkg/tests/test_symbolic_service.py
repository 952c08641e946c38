import pytest
from fractions import Fraction

import numpy as np

from models import Cell, DiscreteDistribution, Divergent, Partition, RationalFunction, RectFamily
from services import (CellOutsideShapeError, DegenerateDistributionError, DivergesAtInfinityError, FitFailedError,
                      SameCellError)
from services.distribution_service import occupancy_prob, sort_prob
from services.symbolic_service import (find_zero_pairs, fit_rational_function, limit_at_infinity, limiting_occupancy,
                                       moments, occupancy_pgf_symbolic, occupancy_prob_symbolic, scaled_moment,
                                       series_in_inverse_n, sort_prob_symbolic)
from testing_utils import rational_function

THREE_ROWS = RectFamily(3)
TWO_ROWS = RectFamily(2)


def test_fit_recovers_simple_functions():
    """
    GIVEN exact evaluators of a constant and of n/(n+1)
    WHEN fit_rational_function is called
    THEN the canonical functions come back
    """
    assert fit_rational_function(lambda n: Fraction(1, 3), 1) == RationalFunction.constant(Fraction(1, 3))
    assert fit_rational_function(lambda n: Fraction(0), 1) == RationalFunction.constant(0)
    assert fit_rational_function(lambda n: Fraction(n, n + 1), 2) == rational_function('n/(n + 1)')


def test_fit_fails_for_non_rational_evaluator():
    """
    GIVEN the evaluator 2^n, which no rational function matches
    WHEN it is fitted with a small degree cap
    THEN it should raise FitFailedError
    """
    with pytest.raises(FitFailedError):
        fit_rational_function(lambda n: Fraction(2 ** n), 1, max_deg=3)


def test_occupancy_of_one_three_holding_seven():
    """
    GIVEN the three-row rectangle, the cell [1,3] and the entry 7
    WHEN the occupancy probability is fitted
    THEN it should match 5n(n+1)^2(n+2) / (9(3n-1)(3n-2)(3n-4)(3n-5)) and give 5/143 at n = 5
    """
    f = occupancy_prob_symbolic(THREE_ROWS, Cell(1, 3), 7)

    assert f == rational_function('5*n*(n + 1)**2*(n + 2)/(9*(3*n - 1)*(3*n - 2)*(3*n - 4)*(3*n - 5))')
    assert f.evaluate(5) == Fraction(5, 143)
    assert f.evaluate(7) == occupancy_prob(Partition((7, 7, 7)), Cell(1, 3), 7)


@pytest.mark.slow
def test_occupancy_of_three_three_holding_thirteen():
    """
    GIVEN the three-row rectangle, the cell [3,3] and the entry 13
    WHEN the occupancy probability is fitted
    THEN it should match the degree eight formula with the quadratic factor 233n^2 - 1933n + 3984
    """
    f = occupancy_prob_symbolic(THREE_ROWS, Cell(3, 3), 13)

    assert f == rational_function(
        '110*n**2*(n - 1)*(n + 1)**2*(n + 2)*(233*n**2 - 1933*n + 3984)'
        '/(81*(3*n - 1)*(3*n - 2)*(3*n - 4)*(3*n - 5)*(3*n - 7)*(3*n - 8)*(3*n - 10)*(3*n - 11))')


def test_occupancy_pgf_of_one_two():
    """
    GIVEN the three-row rectangle and the cell [1,2]
    WHEN its occupancy law is fitted
    THEN entries 2, 3, 4 carry the three known rational functions summing to 1
    """
    terms = dict(occupancy_pgf_symbolic(THREE_ROWS, 2))

    assert terms == {
        2: rational_function('2*(n - 1)/(3*n - 1)'),
        3: rational_function('8*(n - 1)*(n + 1)/(3*(3*n - 1)*(3*n - 2))'),
        4: rational_function('(n + 1)*(n + 2)/(3*(3*n - 1)*(3*n - 2))'),
    }


def test_occupancy_symbolic_rejects_rows_below_rectangle():
    """
    GIVEN a cell in the fourth row of a three-row rectangle
    WHEN its occupancy is fitted
    THEN it should raise CellOutsideShapeError
    """
    with pytest.raises(CellOutsideShapeError):
        occupancy_prob_symbolic(THREE_ROWS, Cell(4, 1), 5)


def test_sort_prob_symbolic_known_functions():
    """
    GIVEN pairs on two- and three-row rectangles
    WHEN their sorting probabilities are fitted
    THEN they should match the known rational functions
    """
    assert sort_prob_symbolic(TWO_ROWS, 3, Cell(2, 1)) == rational_function('3/(2*n - 1)')
    assert sort_prob_symbolic(THREE_ROWS, 3, Cell(2, 2)) == rational_function(
        '-(17*n - 4)*(n - 3)/(3*(3*n - 1)*(3*n - 4))')


@pytest.mark.slow
def test_sort_prob_symbolic_of_one_five_against_two_two():
    """
    GIVEN the two-row rectangle with [1,5] against [2,2]
    WHEN the sorting probability is fitted and expanded in 1/n
    THEN it should match (45n^2 - 135n + 30) / (2(2n-5)(2n-1)(2n-3)) with series 45/16, 135/32, 75/16
    """
    f = sort_prob_symbolic(TWO_ROWS, 5, Cell(2, 2))

    assert f == rational_function('(45*n**2 - 135*n + 30)/(2*(2*n - 5)*(2*n - 1)*(2*n - 3))')
    assert series_in_inverse_n(f, 3) == (0, [Fraction(45, 16), Fraction(135, 32), Fraction(75, 16)])


def test_fitted_function_matches_exact_values_outside_the_window():
    """
    GIVEN a fitted sorting probability
    WHEN it is evaluated at 10 random n beyond the fitting window
    THEN every value equals the exact computation
    """
    f = sort_prob_symbolic(TWO_ROWS, 3, Cell(2, 1))
    rng = np.random.default_rng(17)

    for n in rng.integers(30, 80, size=10):
        n = int(n)
        assert f.evaluate(n) == sort_prob(Partition((n, n)), Cell(1, 3), Cell(2, 1))


def test_sort_prob_symbolic_comparable_and_invalid_pairs():
    """
    GIVEN comparable pairs, a repeated cell and a cell below the rectangle
    WHEN sort_prob_symbolic is called
    THEN comparable pairs return the constants -1 or 1 and the others raise
    """
    assert sort_prob_symbolic(THREE_ROWS, 1, Cell(2, 2)) == RationalFunction.constant(-1)
    assert sort_prob_symbolic(THREE_ROWS, 3, Cell(2, 3)) == RationalFunction.constant(-1)
    assert sort_prob_symbolic(THREE_ROWS, 3, Cell(1, 1)) == RationalFunction.constant(1)
    with pytest.raises(SameCellError):
        sort_prob_symbolic(THREE_ROWS, 2, Cell(1, 2))
    with pytest.raises(CellOutsideShapeError):
        sort_prob_symbolic(TWO_ROWS, 2, Cell(3, 1))


def test_limits_and_series():
    """
    GIVEN rational functions of every degree balance
    WHEN their limits and 1/n series are taken
    THEN the limit comes from leading coefficients and diverging functions are flagged
    """
    assert limit_at_infinity(rational_function('3/(2*n - 1)')) == 0
    assert limit_at_infinity(rational_function('-(17*n - 4)*(n - 3)/(3*(3*n - 1)*(3*n - 4))')) == Fraction(-17, 27)
    assert limit_at_infinity(rational_function('n**2/(n + 1)')) == Divergent(1)
    assert limit_at_infinity(rational_function('-n')) == Divergent(-1)
    assert series_in_inverse_n(rational_function('3/(2*n - 1)'), 3) == (
        0, [Fraction(3, 2), Fraction(3, 4), Fraction(3, 8)])
    assert series_in_inverse_n(rational_function('(n + 1)/n'), 2) == (1, [Fraction(1), Fraction(0)])
    assert series_in_inverse_n(RationalFunction.constant(0), 2) == (0, [0, 0])
    with pytest.raises(DivergesAtInfinityError):
        series_in_inverse_n(rational_function('n**2/(n + 1)'), 2)


@pytest.mark.parametrize('method', ['fit', 'direct'])
def test_limiting_occupancy(method):
    """
    GIVEN the three-row rectangle and the cell [1,2]
    WHEN the n -> oo law is computed by fitting and directly
    THEN it should be 2/3, 8/27, 1/27 with mean 64/27
    """
    law = limiting_occupancy(THREE_ROWS, 2, method=method)

    assert law.as_dict() == {2: Fraction(2, 3), 3: Fraction(8, 27), 4: Fraction(1, 27)}
    assert moments(law).mean == Fraction(64, 27)


def test_limiting_occupancy_methods_agree():
    """
    GIVEN small rectangles
    WHEN the limiting law of [1,j] is computed by both methods
    THEN the two laws are identical
    """
    for k, j in [(2, 2), (2, 3), (2, 4), (3, 3), (4, 2)]:
        fam = RectFamily(k)
        assert limiting_occupancy(fam, j, method='fit') == limiting_occupancy(fam, j, method='direct')


def test_limiting_occupancy_unknown_method():
    with pytest.raises(ValueError):
        limiting_occupancy(TWO_ROWS, 2, method='guess')


@pytest.mark.slow
def test_pgf_sums_to_one_on_small_rectangles():
    """
    GIVEN rectangles with up to four rows and first-row cells up to column 4
    WHEN the occupancy laws are fitted
    THEN every law adds up to the constant 1 (checked inside the fit)
    """
    for k in range(1, 5):
        for j in range(2, 5):
            terms = occupancy_pgf_symbolic(RectFamily(k), j)
            assert [r for r, _ in terms] == list(range(j, k * (j - 1) + 2))


def test_moments():
    """
    GIVEN the law 3/4 at 2 and 1/4 at 3
    WHEN its moments are computed
    THEN mean and variance are exact and skewness and kurtosis are the scaled floats
    """
    law = DiscreteDistribution.from_mapping({2: Fraction(3, 4), 3: Fraction(1, 4)})

    stats = moments(law, kmax=4)

    assert stats.mean == Fraction(9, 4)
    assert stats.variance == Fraction(3, 16)
    assert stats.scaled[3] == pytest.approx(1.1547005)
    assert stats.scaled[4] == pytest.approx(7 / 3)
    assert scaled_moment(law, 3) == pytest.approx(stats.scaled[3])


def test_moments_of_point_mass():
    """
    GIVEN a point mass
    WHEN moments are computed
    THEN scaled moments are absent, and asking for one raises DegenerateDistributionError
    """
    law = DiscreteDistribution.from_mapping({5: Fraction(1)})

    assert moments(law).scaled is None
    assert moments(law).variance == 0
    with pytest.raises(DegenerateDistributionError):
        scaled_moment(law, 3)


def test_find_zero_pairs_small_searches():
    """
    GIVEN the three-row rectangle up to column 3 and the two-row rectangle up to column 2
    WHEN zero-limit pairs are searched
    THEN [1,3] against [2,2] is absent and the two-row search finds nothing
    """
    pairs, skipped = find_zero_pairs(THREE_ROWS, 3)

    assert (Cell(1, 3), Cell(2, 2)) not in pairs
    assert skipped == []
    assert find_zero_pairs(TWO_ROWS, 2) == ([], [])


@pytest.mark.slow
def test_find_zero_pairs_two_rows():
    """
    GIVEN the two-row rectangle and columns up to 10
    WHEN zero-limit pairs are searched
    THEN exactly [1,3] against [2,1] and [1,5] against [2,2] tend to 0
    """
    pairs, skipped = find_zero_pairs(TWO_ROWS, 10, workers=2)

    assert pairs == [(Cell(1, 3), Cell(2, 1)), (Cell(1, 5), Cell(2, 2))]
    assert skipped == []
