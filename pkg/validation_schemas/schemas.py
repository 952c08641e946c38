from fractions import Fraction
from typing import Annotated, Any, Literal, Optional

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator, PositiveInt, conint, field_validator, \
    model_validator

from models import Cell, Partition


def format_rational(value: Fraction) -> str:
    """Renders an exact rational as "p/q", or "p" when it is an integer."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, float):
        raise ValueError('Exact values cannot be given as floats')
    return Fraction(value)


ExactRational = Annotated[Fraction, PlainValidator(_to_fraction), PlainSerializer(format_rational, return_type=str)]

CellList = list[int]

# --- Input Schemas ---
# These schemas validate the text and options given on the command line.

class ShapeSchema(BaseModel):
    """Schema for a shape given as comma-separated parts, e.g. "10,4,3"."""
    parts: list[PositiveInt]

    @field_validator('parts')
    @classmethod
    def weakly_decreasing(cls, parts: list[int]) -> list[int]:
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError('parts must be weakly decreasing')
        return parts

    @classmethod
    def from_text(cls, text: str) -> 'ShapeSchema':
        chunks = [chunk.strip() for chunk in text.split(',')] if text.strip() else []
        return cls.model_validate({'parts': chunks})

    def to_partition(self) -> Partition:
        return Partition(tuple(self.parts))


class CellSchema(BaseModel):
    """Schema for a 1-based cell given as "row,col"."""
    row: PositiveInt
    col: PositiveInt

    @classmethod
    def from_text(cls, text: str) -> 'CellSchema':
        chunks = [chunk.strip() for chunk in text.split(',')]
        if len(chunks) != 2:
            raise ValueError(f'{text!r} must be of the form row,col')
        return cls.model_validate({'row': chunks[0], 'col': chunks[1]})

    def to_cell(self) -> Cell:
        return Cell(self.row, self.col)


class FitRequestSchema(BaseModel):
    """Schema for a symbolic fit on the k-row rectangle family.

    The occ target needs cell and r; the sortprob target needs j and c2.
    """
    rows: conint(ge=1)
    target: Literal['occ', 'sortprob']
    cell: Optional[CellSchema] = None
    r: Optional[PositiveInt] = None
    j: Optional[PositiveInt] = None
    c2: Optional[CellSchema] = None
    series_order: conint(ge=0) = 3

    @model_validator(mode='after')
    def target_arguments(self) -> 'FitRequestSchema':
        if self.target == 'occ' and (self.cell is None or self.r is None):
            raise ValueError('--target occ needs --cell and --r')
        if self.target == 'sortprob' and (self.j is None or self.c2 is None):
            raise ValueError('--target sortprob needs --j and --c2')
        return self


# --- Result Schemas ---
# These schemas shape the result payload of each command.

class CountResultSchema(BaseModel):
    yf: int
    hook: int
    agree: bool


class EnumerateResultSchema(BaseModel):
    total: int
    returned: int
    tableaux: list[list[list[int]]]


class SampleResultSchema(BaseModel):
    seed: int
    tableaux: list[list[list[int]]]


class OccupancyResultSchema(BaseModel):
    """Either a single probability (with r) or the full law of the cell (pgf)."""
    probability: Optional[ExactRational] = None
    pgf: Optional[dict[int, ExactRational]] = None
    occupant_range: tuple[int, int]


class SortProbResultSchema(BaseModel):
    sort_prob: ExactRational
    greater: ExactRational


class MinSortProbResultSchema(BaseModel):
    min: ExactRational
    champions: list[tuple[CellList, CellList]]
    pairs_examined: int


class FitResultSchema(BaseModel):
    """A fitted rational function with its behaviour at infinity."""
    rational_function: str
    numerator: str
    denominator: str
    factored: str
    limit: Optional[ExactRational] = None
    divergent: bool = False
    series_constant: Optional[ExactRational] = None
    series: Optional[list[ExactRational]] = None


class FindZeroResultSchema(BaseModel):
    pairs: list[tuple[CellList, CellList]]
    skipped: int


class MomentsSchema(BaseModel):
    mean: ExactRational
    variance: ExactRational
    scaled_float: Optional[dict[int, float]] = None


class LimitDistResultSchema(BaseModel):
    distribution: dict[int, ExactRational]
    moments: MomentsSchema


class CompareResultSchema(BaseModel):
    exact: dict[int, ExactRational]
    empirical: dict[int, ExactRational]
    tv_distance_float: float


class MetaLimitEntrySchema(BaseModel):
    name: str
    computed: Optional[ExactRational] = None
    computed_float: Optional[float] = None
    target_float: float
    deviation_float: Optional[float] = None
    tolerance_float: float
    within: bool
    applicable: bool
    monotone_approach: Optional[bool] = None


class CatalanResultSchema(BaseModel):
    expectation: ExactRational
    variance: ExactRational
    distribution: dict[int, ExactRational]
    asymptotic_expectation_float: float
    meta_limits: list[MetaLimitEntrySchema]


class OutputDocument(BaseModel):
    """The single JSON document every command writes to standard output."""
    schema_version: str
    command: str
    inputs: dict[str, Any]
    result: Any
    warnings: list[str] = Field(default_factory=list)
