import click
from flask import Blueprint, current_app

from services.distribution_service import greater_prob, min_sort_prob, occupancy_pgf, occupancy_prob, \
    sort_prob, unrelated_pairs
from services.shape_service import occupant_range
from utils.command_utils import CELL, SHAPE, document_command, echo_inputs, emit_csv, emit_document
from validation_schemas.schemas import MinSortProbResultSchema, OccupancyResultSchema, SortProbResultSchema

distributions_bp = Blueprint('distributions', __name__, cli_group=None)

@distributions_bp.cli.command('occ')
@click.argument('shape', type=SHAPE)
@click.option('--cell', type=CELL, required=True, help='The cell as row,col.')
@click.option('--r', 'r', type=int, default=None, help='Report only Pr(T_cell = r).')
@click.option('--pgf', is_flag=True, help='Report the full law of the entry (default without --r).')
@click.option('--csv', 'as_csv', is_flag=True, help='Write the law as value,probability CSV instead of JSON.')
@document_command('occ')
def occ(shape, cell, r, pgf, as_csv):
    """Exact law of the entry in CELL of a uniformly random tableau of SHAPE."""
    if r is not None and pgf:
        raise click.UsageError('--r and --pgf are mutually exclusive')
    if r is not None and as_csv:
        raise click.UsageError('--csv writes the full law and cannot be combined with --r')
    lo_hi = occupant_range(shape, cell)
    inputs = echo_inputs(shape=shape, cell=cell, r=r, pgf=r is None)
    if r is not None:
        emit_document('occ', inputs, OccupancyResultSchema(probability=occupancy_prob(shape, cell, r),
                                                           occupant_range=lo_hi))
        return
    law = occupancy_pgf(shape, cell).as_dict()
    if as_csv:
        emit_csv(law)
        return
    emit_document('occ', inputs, OccupancyResultSchema(pgf=law, occupant_range=lo_hi))

@distributions_bp.cli.command('sortprob')
@click.argument('shape', type=SHAPE)
@click.option('--c1', type=CELL, required=True, help='The first cell as row,col.')
@click.option('--c2', type=CELL, required=True, help='The second cell as row,col.')
@document_command('sortprob')
def sortprob(shape, c1, c2):
    """Sorting probability Pr(T_c1 > T_c2) - Pr(T_c2 > T_c1) on SHAPE."""
    value = sort_prob(shape, c1, c2)
    result = SortProbResultSchema(sort_prob=value, greater=greater_prob(shape, c1, c2))
    emit_document('sortprob', echo_inputs(shape=shape, c1=c1, c2=c2), result)

@distributions_bp.cli.command('minsp')
@click.argument('shape', type=SHAPE)
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker processes for the pair sweep.')
@document_command('minsp')
def minsp(shape, workers):
    """Smallest |sorting probability| over incomparable pairs of SHAPE, with every champion pair."""
    workers = workers or current_app.config['SAMPLE_WORKERS']
    best, champions = min_sort_prob(shape, workers=workers)
    ordered = sorted((c1.as_list(), c2.as_list()) for c1, c2 in champions)
    result = MinSortProbResultSchema(min=best, champions=ordered, pairs_examined=len(unrelated_pairs(shape)))
    warnings = [] if champions else ['Shape has no incomparable pair of cells']
    emit_document('minsp', echo_inputs(shape=shape), result, warnings)
