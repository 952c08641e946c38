from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Mapping, Sequence

import sympy
from sympy import Poly, QQ

from services import CellOutsideShapeError, InnerNotContainedError, InvalidShapeError

# The symbol every rational function of the rectangle width is expressed in
N = sympy.Symbol('n')


@dataclass(frozen=True, slots=True)
class Cell:
    """A 1-based (row, column) coordinate in a Young diagram."""
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1 or self.col < 1:
            raise CellOutsideShapeError(f'Cell [{self.row},{self.col}] must have positive coordinates')

    def precedes(self, other: Cell) -> bool:
        """True when self is weakly above and weakly left of other, i.e. T_self <= T_other always."""
        return self.row <= other.row and self.col <= other.col

    def as_list(self) -> list[int]:
        return [self.row, self.col]

    def __str__(self):
        return f'{self.row},{self.col}'


@dataclass(frozen=True, slots=True)
class Partition:
    """Represents a shape: a weakly decreasing tuple of positive parts.

    The empty tuple is the partition of 0.
    """
    parts: tuple[int, ...] = ()
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise InvalidShapeError(f'Shape {parts} must contain positive parts only')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidShapeError(f'Shape {parts} must be weakly decreasing')
        object.__setattr__(self, 'parts', parts)
        object.__setattr__(self, 'size', sum(parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def row_length(self, row: int) -> int:
        """Length of a 1-based row, 0 below the last row."""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    def column_height(self, col: int) -> int:
        return sum(1 for p in self.parts if p >= col)

    def padded(self, k: int) -> tuple[int, ...]:
        return self.parts + (0,) * (k - len(self.parts))

    def contains(self, cell: Cell) -> bool:
        return cell.row <= len(self.parts) and cell.col <= self.parts[cell.row - 1]

    def require(self, cell: Cell) -> None:
        if not self.contains(cell):
            raise CellOutsideShapeError(f'Cell [{cell}] is not in shape ({self})')

    def includes(self, other: Partition) -> bool:
        """True when other is a subdiagram of self."""
        return len(other) <= len(self) and all(a <= b for a, b in zip(other.parts, self.parts))

    def cells(self) -> Iterator[Cell]:
        """Yields every cell, row by row."""
        for i, width in enumerate(self.parts, start=1):
            for j in range(1, width + 1):
                yield Cell(i, j)

    def __str__(self):
        return ','.join(str(p) for p in self.parts)


@dataclass(frozen=True, slots=True)
class SkewShape:
    """The diagram of outer with the cells of inner removed."""
    outer: Partition
    inner: Partition

    def __post_init__(self):
        if not self.outer.includes(self.inner):
            raise InnerNotContainedError(f'Shape ({self.inner}) is not contained in ({self.outer})')

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def cells(self) -> Iterator[Cell]:
        for cell in self.outer.cells():
            if not self.inner.contains(cell):
                yield cell


@dataclass(frozen=True, slots=True)
class Tableau:
    """A filling of a (possibly skew) shape, increasing along rows and down columns.

    Rows are stored left to right; for a skew shape the row tuple only holds the
    cells outside the inner shape. Entries of a straight tableau are 1..n.
    """
    shape: Partition
    rows: tuple[tuple[int, ...], ...]
    inner: Partition = Partition(())

    def __post_init__(self):
        expected = tuple(w - self.inner.row_length(i) for i, w in enumerate(self.shape.parts, start=1))
        actual = tuple(len(row) for row in self.rows)
        if expected != actual:
            raise InvalidShapeError(f'Row lengths {actual} do not match shape ({self.shape}) / ({self.inner})')
        values = sorted(v for row in self.rows for v in row)
        if values != list(range(1, len(values) + 1)):
            raise ValueError('Entries must be exactly 1..n')
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError('Rows must be strictly increasing')
        for cell in self.shape.cells():
            below = Cell(cell.row + 1, cell.col)
            if self.shape.contains(below) and not self.inner.contains(cell):
                if self.entry(cell) >= self.entry(below):
                    raise ValueError('Columns must be strictly increasing')

    @classmethod
    def from_assignment(cls, shape: Partition, assignment: Mapping[Cell, int],
                        inner: Partition = Partition(())) -> Tableau:
        """Builds a tableau from a cell -> entry mapping."""
        rows = []
        for i, width in enumerate(shape.parts, start=1):
            start = inner.row_length(i) + 1
            rows.append(tuple(assignment[Cell(i, j)] for j in range(start, width + 1)))
        return cls(shape, tuple(rows), inner)

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def entry(self, cell: Cell) -> int:
        return self.rows[cell.row - 1][cell.col - 1 - self.inner.row_length(cell.row)]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True, slots=True)
class DiscreteDistribution:
    """An exact finite distribution on integers. Only non-zero atoms are kept."""
    support: tuple[int, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.probs):
            raise ValueError('Support and probabilities must have the same length')
        if any(a >= b for a, b in zip(self.support, self.support[1:])):
            raise ValueError('Support must be strictly increasing')
        if any(p < 0 for p in self.probs):
            raise ValueError('Probabilities must be non-negative')
        if sum(self.probs, Fraction(0)) != 1:
            raise ValueError(f'Probabilities sum to {sum(self.probs, Fraction(0))}, not 1')

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Fraction]) -> DiscreteDistribution:
        atoms = sorted((value, Fraction(p)) for value, p in mapping.items() if p != 0)
        return cls(tuple(v for v, _ in atoms), tuple(p for _, p in atoms))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.support, self.probs))

    def prob(self, value: int) -> Fraction:
        return self.as_dict().get(value, Fraction(0))

    def total_variation(self, other: Mapping[int, Fraction | float]) -> float:
        """Total-variation distance to another (possibly empirical) distribution."""
        mine = self.as_dict()
        keys = set(mine) | set(other)
        return 0.5 * sum(abs(float(mine.get(k, 0)) - float(other.get(k, 0))) for k in keys)


@dataclass(frozen=True, slots=True)
class RectFamily:
    """The family of k-row rectangles (n, n, ..., n) with n symbolic."""
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidShapeError('A rectangle family needs at least one row')

    def at(self, n: int) -> Partition:
        return Partition((n,) * self.k) if n > 0 else Partition(())


@dataclass(frozen=True, slots=True)
class Moments:
    """Mean and variance are exact; scaled central moments are floats keyed by order.

    scaled is None when the variance is zero.
    """
    mean: Fraction
    variance: Fraction
    scaled: dict[int, float] | None


@dataclass(frozen=True, slots=True)
class Divergent:
    """The limit of a rational function whose numerator outgrows its denominator."""
    sign: int = 1

    def __str__(self):
        return 'oo' if self.sign > 0 else '-oo'


def _render_polynomial(coeffs: Sequence[int], var: str) -> tuple[str, int]:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        magnitude = abs(c)
        if power == 0:
            body = str(magnitude)
        else:
            monomial = var if power == 1 else f'{var}^{power}'
            body = monomial if magnitude == 1 else f'{magnitude}*{monomial}'
        terms.append((c < 0, body))
    if not terms:
        return '0', 1
    negative, first = terms[0]
    text = ('-' if negative else '') + first
    for negative, body in terms[1:]:
        text += (' - ' if negative else ' + ') + body
    return text, len(terms)


def _horner(coeffs: Sequence[int], x: Fraction | int):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True, slots=True)
class RationalFunction:
    """A reduced ratio of integer polynomials in n, coefficients in ascending degree.

    Canonical form: num and den coprime, the coefficients of num and den share no common
    integer factor, den has a positive leading coefficient. Two equal functions therefore
    compare equal field by field.
    """
    num: tuple[int, ...]
    den: tuple[int, ...]

    @classmethod
    def from_coefficients(cls, num: Sequence[Fraction | int], den: Sequence[Fraction | int]) -> RationalFunction:
        """Canonicalizes num/den given as ascending rational coefficient lists."""
        p = Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(num)] or [0],
                 N, domain=QQ)
        q = Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(den)] or [0],
                 N, domain=QQ)
        if q.is_zero:
            raise ZeroDivisionError('Denominator of a rational function cannot be zero')
        if p.is_zero:
            return cls((0,), (1,))
        g = p.gcd(q)
        p, q = p.exquo(g), q.exquo(g)

        num_q = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        den_q = [Fraction(int(c.p), int(c.q)) for c in reversed(q.all_coeffs())]
        scale = lcm(*(c.denominator for c in num_q + den_q))
        num_z = [int(c * scale) for c in num_q]
        den_z = [int(c * scale) for c in den_q]
        content = gcd(*num_z, *den_z)
        if den_z[-1] < 0:
            content = -content
        return cls(tuple(c // content for c in num_z), tuple(c // content for c in den_z))

    @classmethod
    def from_sympy(cls, expr) -> RationalFunction:
        numerator, denominator = sympy.fraction(sympy.cancel(sympy.together(sympy.sympify(expr))))
        num = [Fraction(int(c.p), int(c.q)) for c in reversed(Poly(numerator, N, domain=QQ).all_coeffs())]
        den = [Fraction(int(c.p), int(c.q)) for c in reversed(Poly(denominator, N, domain=QQ).all_coeffs())]
        return cls.from_coefficients(num, den)

    @classmethod
    def constant(cls, value: Fraction | int) -> RationalFunction:
        value = Fraction(value)
        return cls.from_coefficients([value], [1])

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1 if self.num != (0,) else -1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    @property
    def is_zero(self) -> bool:
        return self.num == (0,)

    def evaluate(self, n: int | Fraction) -> Fraction:
        return Fraction(_horner(self.num, Fraction(n))) / Fraction(_horner(self.den, Fraction(n)))

    def to_sympy(self):
        num = sum(c * N ** i for i, c in enumerate(self.num))
        den = sum(c * N ** i for i, c in enumerate(self.den))
        return num / den

    def render(self) -> str:
        """Expanded integer rendering, e.g. "(15*n^2 - 21*n + 6)/(27*n^2 - 27*n + 6)"."""
        num_text, num_terms = _render_polynomial(self.num, 'n')
        if self.den == (1,):
            return num_text
        den_text, den_terms = _render_polynomial(self.den, 'n')
        if num_terms > 1:
            num_text = f'({num_text})'
        if den_terms > 1:
            den_text = f'({den_text})'
        return f'{num_text}/{den_text}'

    def render_numerator(self) -> str:
        return _render_polynomial(self.num, 'n')[0]

    def render_denominator(self) -> str:
        return _render_polynomial(self.den, 'n')[0]

    def factored(self) -> str:
        return str(sympy.factor(self.to_sympy()))

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.from_sympy(self.to_sympy() + other.to_sympy())

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.from_sympy(self.to_sympy() - other.to_sympy())

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.from_sympy(self.to_sympy() * other.to_sympy())

    def __neg__(self) -> RationalFunction:
        return RationalFunction(tuple(-c for c in self.num), self.den)

    def __str__(self):
        return self.render()
