import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import prod
from typing import Callable

import numpy as np
import sympy
from sympy import Poly, QQ

from models import Cell, DiscreteDistribution, Divergent, Moments, N, RationalFunction, RectFamily
from services import (CellOutsideShapeError, DegenerateDistributionError, DivergesAtInfinityError,
                      FitFailedError, InvariantBreachError, SameCellError)
from services.counting_service import count_ssyt, count_syt_yf
from services.distribution_service import occupancy_prob, sort_prob
from services.shape_service import is_corner, partitions, remove_cell

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 24
DEFAULT_HELD_OUT = 3

Evaluator = Callable[[int], Fraction]


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _coefficients(poly: Poly) -> list[Fraction]:
    """Ascending Fraction coefficients of a Poly over QQ."""
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


def _newton_interpolant(xs: list[int], ys: list[Fraction]) -> tuple[Poly, Poly]:
    """Returns the interpolating polynomial through (xs, ys) and prod (n - x) over xs."""
    interp = Poly(0, N, domain=QQ)
    basis = Poly(1, N, domain=QQ)
    for x, y in zip(xs, ys):
        gap = _rational(y) - interp.eval(x)
        interp = interp + basis * Poly(gap / basis.eval(x), N, domain=QQ)
        basis = basis * Poly(N - x, N, domain=QQ)
    return interp, basis


def _reconstruct(xs: list[int], ys: list[Fraction], d: int) -> RationalFunction | None:
    """Finds p/q with deg p, deg q <= d matching every (x, y), via the extended Euclidean algorithm.

    Returns None when no such function exists for this d.
    """
    interp, modulus = _newton_interpolant(xs, ys)
    if interp.is_zero:
        return RationalFunction.constant(0)
    r0, r1 = modulus, interp
    t0, t1 = Poly(0, N, domain=QQ), Poly(1, N, domain=QQ)
    while not r1.is_zero and r1.degree() > d:
        q, rem = r0.div(r1)
        r0, r1 = r1, rem
        t0, t1 = t1, t0 - q * t1
    if r1.is_zero or t1.degree() > d:
        return None
    return RationalFunction.from_coefficients(_coefficients(r1), _coefficients(t1))


def _agrees(candidate: RationalFunction, points: list[int], value: Evaluator) -> bool:
    try:
        return all(candidate.evaluate(x) == value(x) for x in points)
    except ZeroDivisionError:
        return False


def fit_rational_function(evaluator: Evaluator, n_min: int, max_deg: int = DEFAULT_MAX_DEGREE,
                          held_out: int = DEFAULT_HELD_OUT) -> RationalFunction:
    """Reconstructs the rational function of n behind an exact evaluator.

    Trial degrees d = 0, 1, 2, ... are swept in order. Trial d fits numerator and denominator
    of degree at most d through the 2d+1 points n_min..n_min+2d and is accepted once it also
    reproduces the evaluator at the next held_out integers. Any d at or above the true degrees
    yields the same reduced function.

    Args:
        evaluator: Exact values at every integer n >= n_min.
        n_min: The first integer of the fitting window.
        max_deg: The largest trial degree.
        held_out: Verification points beyond the window.

    Returns:
        The canonical reduced rational function.

    Raises:
        FitFailedError: If no trial degree up to max_deg verifies.
    """
    cache: dict[int, Fraction] = {}

    def value(x: int) -> Fraction:
        if x not in cache:
            cache[x] = Fraction(evaluator(x))
        return cache[x]

    for d in range(max_deg + 1):
        window = list(range(n_min, n_min + 2 * d + 1))
        candidate = _reconstruct(window, [value(x) for x in window], d)
        if candidate is None:
            continue
        checks = window + list(range(window[-1] + 1, window[-1] + 1 + held_out))
        if _agrees(candidate, checks, value):
            logger.debug('Fitted degree (%d, %d) at trial degree %d from n=%d',
                         candidate.num_degree, candidate.den_degree, d, n_min)
            return candidate
        logger.debug('Trial degree %d failed the held-out check', d)

    logger.warning('No rational function of degree <= %d fits from n=%d', max_deg, n_min)
    raise FitFailedError(f'No rational function of degree <= {max_deg} reproduces the evaluator')


def _require_row(fam: RectFamily, cell: Cell) -> None:
    if cell.row > fam.k:
        raise CellOutsideShapeError(f'Cell [{cell}] is below the last of {fam.k} rows')


def _den_divides_product(f: RationalFunction, k: int, j: int) -> bool:
    product = Poly(prod((k * N - s for s in range(1, k * (j - 1) + 1)), start=sympy.Integer(1)), N, domain=QQ)
    den = Poly(list(reversed(f.den)), N, domain=QQ)
    return product.rem(den).is_zero


def occupancy_prob_symbolic(fam: RectFamily, cell: Cell, r: int, max_deg: int = DEFAULT_MAX_DEGREE,
                            held_out: int = DEFAULT_HELD_OUT) -> RationalFunction:
    """Returns Pr(T_cell = r) on the rectangle (n, ..., n) as a rational function of n.

    The fit starts at n = r + max(cell column, k) + 2, where every subshape of size r fits in
    the rectangle. The degree cap is raised to r + 2 because the degree grows with r.

    Raises:
        CellOutsideShapeError: If the cell lies below the last row.
        FitFailedError: If the fit does not verify.
    """
    _require_row(fam, cell)
    n_min = r + max(cell.col, fam.k) + 2
    f = fit_rational_function(lambda n: occupancy_prob(fam.at(n), cell, r), n_min,
                              max_deg=max(max_deg, r + 2), held_out=held_out)
    if cell.row == 1 and not f.is_zero and not _den_divides_product(f, fam.k, cell.col):
        logger.warning('Denominator of Pr(T[%s]=%d) for k=%d does not divide prod(kn - s): %s',
                       cell, r, fam.k, f)
    return f


def occupancy_pgf_symbolic(fam: RectFamily, j: int, max_deg: int = DEFAULT_MAX_DEGREE,
                           held_out: int = DEFAULT_HELD_OUT) -> list[tuple[int, RationalFunction]]:
    """Returns the fitted law of the entry of [1, j] over r = j .. k(j-1)+1.

    Raises:
        InvariantBreachError: If the fitted probabilities do not add up to the constant 1.
    """
    cell = Cell(1, j)
    terms = [(r, occupancy_prob_symbolic(fam, cell, r, max_deg=max_deg, held_out=held_out))
             for r in range(j, fam.k * (j - 1) + 2)]
    total = RationalFunction.constant(0)
    for _, f in terms:
        total = total + f
    if total != RationalFunction.constant(1):
        raise InvariantBreachError(f'Occupancy of [{cell}] for k={fam.k} sums to {total}, not 1')
    return terms


def sort_prob_symbolic(fam: RectFamily, j: int, c2: Cell, max_deg: int = DEFAULT_MAX_DEGREE,
                       held_out: int = DEFAULT_HELD_OUT) -> RationalFunction:
    """Returns SP((n, ..., n), [1, j], c2) as a rational function of n.

    Comparable pairs return the constants -1 or 1 without fitting.

    Raises:
        CellOutsideShapeError: If c2 lies below the last row.
        SameCellError: If c2 is [1, j].
        FitFailedError: If the fit does not verify.
    """
    c1 = Cell(1, j)
    _require_row(fam, c2)
    if c1 == c2:
        raise SameCellError(f'Cannot sort cell [{c1}] against itself')
    if c1.precedes(c2):
        return RationalFunction.constant(-1)
    if c2.precedes(c1):
        return RationalFunction.constant(1)
    top = fam.k * (j - 1) + 1
    n_min = top + max(j, fam.k) + 2
    return fit_rational_function(lambda n: sort_prob(fam.at(n), c1, c2), n_min,
                                 max_deg=max(max_deg, top + 2), held_out=held_out)


def limit_at_infinity(f: RationalFunction) -> Fraction | Divergent:
    """The n -> oo limit from degrees and leading coefficients only."""
    if f.num_degree < f.den_degree:
        return Fraction(0)
    if f.num_degree == f.den_degree:
        return Fraction(f.num[-1], f.den[-1])
    return Divergent(1 if (f.num[-1] > 0) == (f.den[-1] > 0) else -1)


def series_in_inverse_n(f: RationalFunction, order: int) -> tuple[Fraction, list[Fraction]]:
    """Expands f at infinity as c0 + c1/n + ... + c_order/n^order.

    With t = 1/n, f = t^s A(t)/B(t) where A and B are num and den with reversed coefficients
    and s = deg den - deg num; A/B is expanded as a power series.

    Returns:
        The constant c0 and the list [c1, ..., c_order].

    Raises:
        DivergesAtInfinityError: If deg num > deg den.
    """
    if f.is_zero:
        return Fraction(0), [Fraction(0)] * order
    shift = f.den_degree - f.num_degree
    if shift < 0:
        raise DivergesAtInfinityError(f'{f} grows without bound as n -> oo')
    a = [Fraction(c) for c in reversed(f.num)]
    b = [Fraction(c) for c in reversed(f.den)]
    quotient: list[Fraction] = []
    for m in range(order + 1 - shift):
        acc = a[m] if m < len(a) else Fraction(0)
        acc -= sum((b[l] * quotient[m - l] for l in range(1, min(m, len(b) - 1) + 1)), Fraction(0))
        quotient.append(acc / b[0])
    coefficients = [Fraction(0)] * shift + quotient
    coefficients = coefficients[:order + 1]
    return coefficients[0], coefficients[1:]


def _direct_limit(k: int, j: int, r: int) -> Fraction:
    # n -> oo, the first r entries fill nu with probability f^nu * s_nu(1^k) / k^r
    corner = Cell(1, j)
    total = sum(count_syt_yf(remove_cell(nu, corner)) * count_ssyt(nu, k)
                for nu in partitions(r, max_length=k) if is_corner(nu, corner))
    return Fraction(total, k ** r)


def limiting_occupancy(fam: RectFamily, j: int, method: str = 'fit', max_deg: int = DEFAULT_MAX_DEGREE,
                       held_out: int = DEFAULT_HELD_OUT) -> DiscreteDistribution:
    """The n -> oo law of the entry of [1, j] on the k-row rectangle.

    Args:
        fam: The rectangle family.
        j: The column of the first-row cell.
        method: 'fit' takes limits of the fitted occupancy functions; 'direct' sums the
            hook-content weights f^{nu'} s_nu(1^k) / k^r of the subshapes with corner [1, j].

    Raises:
        InvariantBreachError: If a limit diverges or the law does not sum to 1.
    """
    if method == 'fit':
        limits = {r: limit_at_infinity(f) for r, f in occupancy_pgf_symbolic(fam, j, max_deg, held_out)}
    elif method == 'direct':
        limits = {r: _direct_limit(fam.k, j, r) for r in range(j, fam.k * (j - 1) + 2)}
    else:
        raise ValueError(f'Unknown limiting method {method!r}')
    if any(isinstance(v, Divergent) for v in limits.values()):
        raise InvariantBreachError(f'An occupancy probability of [1,{j}] diverges for k={fam.k}')
    if sum(limits.values(), Fraction(0)) != 1:
        raise InvariantBreachError(f'Limiting occupancy of [1,{j}] for k={fam.k} does not sum to 1')
    return DiscreteDistribution.from_mapping(limits)


def _central_moment(d: DiscreteDistribution, mean: Fraction, t: int) -> Fraction:
    return sum((p * (v - mean) ** t for v, p in zip(d.support, d.probs)), Fraction(0))


def _scaled(central: Fraction, variance: Fraction, t: int) -> float:
    # only an odd power of sigma leaves the rationals
    exact = central / variance ** (t // 2)
    return float(exact) / float(np.sqrt(float(variance))) if t % 2 else float(exact)


def scaled_moment(d: DiscreteDistribution, t: int) -> float:
    """E[(X - mu)^t] / sigma^t.

    Raises:
        DegenerateDistributionError: If the variance is zero.
    """
    mean = _central_moment(d, Fraction(0), 1)
    variance = _central_moment(d, mean, 2)
    if variance == 0:
        raise DegenerateDistributionError('Scaled moments are undefined for a point mass')
    return _scaled(_central_moment(d, mean, t), variance, t)


def moments(d: DiscreteDistribution, kmax: int = 6) -> Moments:
    """Exact mean and variance, and scaled central moments 3..kmax as floats.

    scaled is None for a point mass.
    """
    mean = _central_moment(d, Fraction(0), 1)
    variance = _central_moment(d, mean, 2)
    if variance == 0:
        return Moments(mean, variance, None)
    scaled = {t: _scaled(_central_moment(d, mean, t), variance, t) for t in range(3, kmax + 1)}
    return Moments(mean, variance, scaled)


def _zero_limit_task(k: int, j: int, c2: Cell, max_deg: int, held_out: int) -> tuple[bool, str | None]:
    try:
        f = sort_prob_symbolic(RectFamily(k), j, c2, max_deg=max_deg, held_out=held_out)
    except FitFailedError as exc:
        return False, f'Skipped [1,{j}] vs [{c2}]: {exc}'
    return limit_at_infinity(f) == 0, None


def find_zero_pairs(fam: RectFamily, K: int, max_deg: int = DEFAULT_MAX_DEGREE, held_out: int = DEFAULT_HELD_OUT,
                    workers: int = 1) -> tuple[list[tuple[Cell, Cell]], list[str]]:
    """Searches the pairs [1, j], [m1, m2] whose sorting probability tends to 0.

    Pairs range over j = 2..K, m1 = 2..k and m2 = 1..min(K, j-1); pairs with m2 >= j are
    comparable and never tend to 0. A pair whose fit fails is skipped with a warning.

    Returns:
        The zero-limit pairs in search order and the warnings of skipped pairs.
    """
    candidates = [(j, Cell(m1, m2)) for j in range(2, K + 1)
                  for m1 in range(2, fam.k + 1) for m2 in range(1, min(K, j - 1) + 1)]
    args = ([fam.k] * len(candidates), [j for j, _ in candidates], [c for _, c in candidates],
            [max_deg] * len(candidates), [held_out] * len(candidates))
    if workers > 1 and len(candidates) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_zero_limit_task, *args))
    else:
        outcomes = [_zero_limit_task(*job) for job in zip(*args)]

    pairs, warnings = [], []
    for (j, c2), (is_zero, warning) in zip(candidates, outcomes):
        if warning:
            logger.warning(warning)
            warnings.append(warning)
        elif is_zero:
            pairs.append((Cell(1, j), c2))
    return pairs, warnings
