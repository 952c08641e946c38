from typing import Iterator

from models import Cell, Partition


def conjugate(shape: Partition) -> Partition:
    """Returns the conjugate partition, whose parts are the column heights of shape.

    Args:
        shape: Any partition, including the empty one.

    Returns:
        The transposed partition; conjugate(conjugate(shape)) == shape.
    """
    if not shape.parts:
        return Partition(())
    return Partition(tuple(shape.column_height(j) for j in range(1, shape.parts[0] + 1)))


def is_corner(shape: Partition, cell: Cell) -> bool:
    """True when cell is a removable cell [t, shape_t] of shape."""
    return shape.row_length(cell.row) == cell.col and shape.row_length(cell.row + 1) < cell.col


def corners(shape: Partition) -> list[Cell]:
    """Returns the removable cells of shape, top row first.

    Args:
        shape: The partition to inspect.

    Returns:
        Every cell [t, shape_t] with shape_{t+1} < shape_t; removing any of them leaves a partition.
    """
    return [Cell(t, width) for t, width in enumerate(shape.parts, start=1)
            if shape.row_length(t + 1) < width]


def remove_cell(shape: Partition, cell: Cell) -> Partition:
    """Removes a corner cell and returns the smaller partition."""
    if not is_corner(shape, cell):
        raise ValueError(f'Cell [{cell}] is not a corner of ({shape})')
    parts = list(shape.parts)
    parts[cell.row - 1] -= 1
    return Partition(tuple(p for p in parts if p > 0))


def occupant_range(shape: Partition, cell: Cell) -> tuple[int, int]:
    """Returns the interval of entries that can occupy cell in a tableau of shape.

    The lower bound is i*j. The upper bound counts the cells forced to hold smaller entries:
    all rows above i, all columns left of j, minus their (i-1)(j-1) overlap, plus one.
    Both bounds are attained for every straight shape.

    Raises:
        CellOutsideShapeError: If cell is not in shape.
    """
    shape.require(cell)
    i, j = cell.row, cell.col
    conj = conjugate(shape)
    hi = (sum(shape.parts[:i - 1]) + sum(conj.parts[:j - 1]) - (i - 1) * (j - 1) + 1)
    return i * j, hi


def partitions(n: int, max_part: int | None = None, max_length: int | None = None) -> Iterator[Partition]:
    """Yields the partitions of n in descending lexicographic order.

    Args:
        n: The size being partitioned.
        max_part: Optional bound on every part.
        max_length: Optional bound on the number of parts.
    """
    max_part = n if max_part is None else max_part
    max_length = n if max_length is None else max_length
    for parts in _bounded_parts(n, [max_part] * max_length):
        yield Partition(parts)


def partitions_inside(shape: Partition, r: int) -> Iterator[Partition]:
    """Yields every partition of r contained in shape, in descending lexicographic order."""
    for parts in _bounded_parts(r, list(shape.parts)):
        yield Partition(parts)


def _bounded_parts(n: int, bounds: list[int]) -> Iterator[tuple[int, ...]]:
    # bounds[t] caps part t; parts must also weakly decrease
    if n == 0:
        yield ()
        return
    if not bounds:
        return
    remaining_room = sum(bounds)
    if remaining_room < n:
        return
    for first in range(min(n, bounds[0]), 0, -1):
        rest_bounds = [min(b, first) for b in bounds[1:]]
        for rest in _bounded_parts(n - first, rest_bounds):
            yield (first,) + rest


def subshapes_with_corner(shape: Partition, cell: Cell, r: int) -> list[Partition]:
    """Returns every nu of size r inside shape that has cell as a corner.

    These are the possible shapes filled by 1..r when cell holds r.

    Args:
        shape: The ambient shape.
        cell: The cell [i,j]; nu must satisfy nu_i = j and nu_{i+1} < j.
        r: The size of nu.

    Returns:
        The matching partitions in descending lexicographic order; empty when none exist.

    Raises:
        CellOutsideShapeError: If cell is not in shape.
    """
    shape.require(cell)
    return [nu for nu in partitions_inside(shape, r) if is_corner(nu, cell)]


def subshapes_for_sorting(shape: Partition, c1: Cell, c2: Cell, r: int) -> list[Partition]:
    """Returns every nu of size r inside shape with c1 as a corner and c2 inside nu.

    When c1 holds r and nu is the shape filled by 1..r, c2 then holds a smaller entry.

    Raises:
        CellOutsideShapeError: If either cell is not in shape.
    """
    shape.require(c1)
    shape.require(c2)
    return [nu for nu in partitions_inside(shape, r)
            if is_corner(nu, c1) and nu.contains(c2) and c2 != c1]


def unrelated(c1: Cell, c2: Cell) -> bool:
    """True when neither cell weakly precedes the other in the diagram order."""
    return not c1.precedes(c2) and not c2.precedes(c1)
