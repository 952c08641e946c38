import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterator, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from models import Cell, Partition, SkewShape, Tableau
from services import InvariantBreachError, ShapeTooLargeError
from services.shape_service import conjugate

logger = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 18

# Above this many rows the skew count switches from the k! signed sum to the determinant
REFLECTION_MAX_ROWS = 4


def count_syt_yf(shape: Partition) -> int:
    """Counts standard Young tableaux with the Young-Frobenius product formula.

    f = n! / prod_t (shape_t + k - t)! * prod_{t<u} (shape_t - shape_u + u - t)

    Args:
        shape: The shape; the empty shape has exactly one (empty) tableau.

    Returns:
        The number of standard Young tableaux of the shape.
    """
    lam = shape.parts
    k = len(lam)
    numerator = factorial(shape.size) * prod(
        lam[t] - lam[u] + u - t for t in range(k) for u in range(t + 1, k))
    denominator = prod(factorial(lam[t] + k - 1 - t) for t in range(k))
    return numerator // denominator


def hook_length(shape: Partition, cell: Cell) -> int:
    """Arm plus leg plus one for a cell of shape."""
    return (shape.row_length(cell.row) - cell.col) + (shape.column_height(cell.col) - cell.row) + 1


def count_syt_hook(shape: Partition) -> int:
    """Counts standard Young tableaux with the hook length formula n! / prod hook(c)."""
    conj = conjugate(shape)
    hooks = prod((width - j) + (conj.row_length(j) - i) + 1
                 for i, width in enumerate(shape.parts, start=1)
                 for j in range(1, width + 1))
    return factorial(shape.size) // hooks


def count_ssyt(shape: Partition, k: int) -> int:
    """Counts semistandard tableaux of shape with entries 1..k by the hook-content formula.

    prod over cells [i,j] of (k + j - i) / hook(i,j); 0 when shape has more than k rows.
    """
    if len(shape) > k:
        return 0
    contents = prod(k + cell.col - cell.row for cell in shape.cells())
    hooks = prod(hook_length(shape, cell) for cell in shape.cells())
    return contents // hooks


def walk_count(mu: Sequence[int], target: Sequence[int]) -> int:
    """Counts lattice walks from mu to target with unit steps along the axes.

    Args:
        mu: The start point, one coordinate per row (coordinates may be negative).
        target: The end point, padded with zeros to the length of mu.

    Returns:
        The multinomial (sum d_t)! / prod d_t! with d = target - mu, or 0 when some d_t < 0.
    """
    target = tuple(target) + (0,) * (len(mu) - len(target))
    steps = [t - m for m, t in zip(mu, target)]
    if any(s < 0 for s in steps):
        return 0
    return factorial(sum(steps)) // prod(factorial(s) for s in steps)


def count_skew(shape: Partition, inner: Partition, method: str = 'auto') -> int:
    """Counts standard Young tableaux of the skew shape shape/inner.

    The reflection method sums sgn(sigma) * W(mu(sigma), shape) over all row permutations
    sigma, where mu(sigma)_t = inner_{sigma(t)} - sigma(t) + t are the mirror images of inner.
    The determinant method evaluates the same alternating sum as N! det[1/(shape_t - inner_s + s - t)!].

    Args:
        shape: The outer partition.
        inner: The removed partition; must be contained in shape.
        method: 'reflection', 'determinant' or 'auto' (reflection for few rows).

    Returns:
        The number of skew tableaux; 1 when inner == shape.

    Raises:
        InnerNotContainedError: If inner is not a subdiagram of shape.
    """
    SkewShape(shape, inner)
    if method == 'auto':
        method = 'reflection' if len(shape) <= REFLECTION_MAX_ROWS else 'determinant'
    if method not in ('reflection', 'determinant'):
        raise ValueError(f'Unknown skew counting method {method!r}')
    return _skew_count(shape.parts, inner.padded(len(shape)), method)


@lru_cache(maxsize=1 << 16)
def _skew_count(lam: tuple[int, ...], nu: tuple[int, ...], method: str) -> int:
    k = len(lam)
    if k == 0:
        return 1
    if method == 'reflection':
        total = 0
        for sigma in permutations(range(k)):
            mu = [nu[sigma[t]] - sigma[t] + t for t in range(k)]
            total += _sign(sigma) * walk_count(mu, lam)
        return total

    size = sum(lam) - sum(nu)
    rows = [[_inverse_factorial(lam[t] - nu[s] + s - t) for s in range(k)] for t in range(k)]
    det = DomainMatrix(rows, (k, k), QQ).det()
    value = Fraction(int(QQ.numer(det)), int(QQ.denom(det))) * factorial(size)
    return int(value)


def _inverse_factorial(m: int):
    return QQ(0) if m < 0 else QQ(1, factorial(m))


def _sign(sigma: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(sigma)) for b in range(a + 1, len(sigma)) if sigma[a] > sigma[b])
    return -1 if inversions % 2 else 1


def _check_cap(cells: int, max_cells: int, allow_large: bool) -> None:
    if cells > max_cells:
        if not allow_large:
            raise ShapeTooLargeError(f'Enumerating {cells} cells exceeds the cap of {max_cells}')
        logger.info('Enumerating %d cells above the cap of %d', cells, max_cells)


def enumerate_fillings(shape: Partition, inner: Partition = Partition(())) -> Iterator[dict[Cell, int]]:
    """Yields every standard filling of shape/inner as a cell -> entry mapping.

    Entries 1, 2, ... are placed in turn into an addable cell, trying rows from the top
    down, and the search backtracks; the order is deterministic.
    """
    SkewShape(shape, inner)
    lam = shape.parts
    filled = list(inner.padded(len(lam)))
    total = shape.size - inner.size
    assignment: dict[Cell, int] = {}

    def place(m: int) -> Iterator[dict[Cell, int]]:
        if m > total:
            yield dict(assignment)
            return
        for t in range(len(lam)):
            if filled[t] < lam[t] and (t == 0 or filled[t - 1] > filled[t]):
                filled[t] += 1
                cell = Cell(t + 1, filled[t])
                assignment[cell] = m
                yield from place(m + 1)
                del assignment[cell]
                filled[t] -= 1

    yield from place(1)


def enumerate_syt(shape: Partition, max_cells: int = DEFAULT_MAX_CELLS, allow_large: bool = False) -> Iterator[Tableau]:
    """Yields each standard Young tableau of shape exactly once, in a fixed order.

    Args:
        shape: The shape to enumerate.
        max_cells: The enumeration cap.
        allow_large: Permits shapes above the cap.

    Raises:
        ShapeTooLargeError: If shape has more than max_cells cells and allow_large is False.
    """
    _check_cap(shape.size, max_cells, allow_large)
    for assignment in enumerate_fillings(shape):
        yield Tableau.from_assignment(shape, assignment)


def enumerate_skew_syt(shape: Partition, inner: Partition, max_cells: int = DEFAULT_MAX_CELLS,
                       allow_large: bool = False) -> Iterator[Tableau]:
    """Yields each standard filling of the skew shape shape/inner.

    Raises:
        InnerNotContainedError: If inner is not a subdiagram of shape.
        ShapeTooLargeError: If the skew shape has more than max_cells cells.
    """
    SkewShape(shape, inner)
    _check_cap(shape.size - inner.size, max_cells, allow_large)
    for assignment in enumerate_fillings(shape, inner):
        yield Tableau.from_assignment(shape, assignment, inner)


def rect_count_prefactor_check(k: int, n: int) -> Fraction:
    """Returns f^{n^k} * n!^k / (nk)! for the k x n rectangle.

    The value is computed as prod_{m=1}^{k-1} m! / (n+1)_m, with (x)_m the rising factorial,
    and checked against the Young-Frobenius count of the rectangle.

    Raises:
        InvariantBreachError: If the product disagrees with the direct count.
    """
    prefactor = Fraction(1)
    for m in range(1, k):
        prefactor *= Fraction(factorial(m), prod(range(n + 1, n + 1 + m)))

    rectangle = Partition((n,) * k) if n > 0 else Partition(())
    direct = Fraction(count_syt_yf(rectangle) * factorial(n) ** k, factorial(n * k))
    if prefactor != direct:
        raise InvariantBreachError(f'Rectangle prefactor {prefactor} != {direct} for k={k}, n={n}')
    return prefactor


def rect_count(k: int, n: int) -> int:
    """Counts tableaux of the k x n rectangle as (nk)! prod_{m<k} m! / (n+m)!."""
    value = Fraction(factorial(n * k))
    for m in range(k):
        value *= Fraction(factorial(m), factorial(n + m))
    return int(value)


def count_prefactor(shape: Partition) -> Fraction:
    """Returns f^shape divided by the multinomial |shape|! / prod shape_t!."""
    return Fraction(count_syt_yf(shape) * prod(factorial(p) for p in shape.parts), factorial(shape.size))
