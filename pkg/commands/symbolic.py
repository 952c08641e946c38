import click
from flask import Blueprint, current_app

from models import Divergent, RectFamily
from services.catalan_service import catalan_expectation, catalan_expectation_asymptotic, \
    catalan_limiting_occupancy, catalan_meta_limits_check, catalan_variance
from services.symbolic_service import find_zero_pairs, limit_at_infinity, limiting_occupancy, moments, \
    occupancy_prob_symbolic, series_in_inverse_n, sort_prob_symbolic
from utils.command_utils import CELL, document_command, echo_inputs, emit_csv, emit_document
from validation_schemas.schemas import CatalanResultSchema, FindZeroResultSchema, FitRequestSchema, \
    FitResultSchema, LimitDistResultSchema, MetaLimitEntrySchema, MomentsSchema

symbolic_bp = Blueprint('symbolic', __name__, cli_group=None)


def _cell_field(cell):
    return None if cell is None else {'row': cell.row, 'col': cell.col}


@symbolic_bp.cli.command('fit')
@click.option('--rows', type=int, required=True, help='Number of rows k of the rectangle (n, ..., n).')
@click.option('--target', type=click.Choice(['occ', 'sortprob']), required=True)
@click.option('--cell', type=CELL, default=None, help='occ: the cell as row,col.')
@click.option('--r', 'r', type=int, default=None, help='occ: the entry.')
@click.option('--j', 'j', type=int, default=None, help='sortprob: the column of the first-row cell [1,j].')
@click.option('--c2', type=CELL, default=None, help='sortprob: the second cell as row,col.')
@click.option('--order', type=int, default=3, help='Number of 1/n series coefficients.')
@click.option('--max-degree', type=click.IntRange(min=0), default=None, help='Largest trial degree of the fit.')
@document_command('fit')
def fit(rows, target, cell, r, j, c2, order, max_degree):
    """Fits a probability on the k-row rectangle as a rational function of n."""
    request = FitRequestSchema.model_validate({'rows': rows, 'target': target, 'cell': _cell_field(cell), 'r': r,
                                               'j': j, 'c2': _cell_field(c2), 'series_order': order})
    fam = RectFamily(request.rows)
    options = dict(max_deg=max_degree if max_degree is not None else current_app.config['FIT_MAX_DEGREE'],
                   held_out=current_app.config['FIT_HELD_OUT_POINTS'])
    if request.target == 'occ':
        f = occupancy_prob_symbolic(fam, request.cell.to_cell(), request.r, **options)
        inputs = echo_inputs(rows=rows, target=target, cell=cell, r=r)
    else:
        f = sort_prob_symbolic(fam, request.j, request.c2.to_cell(), **options)
        inputs = echo_inputs(rows=rows, target=target, j=j, c2=c2)

    limit = limit_at_infinity(f)
    result = FitResultSchema(rational_function=f.render(), numerator=f.render_numerator(),
                             denominator=f.render_denominator(), factored=f.factored())
    if isinstance(limit, Divergent):
        result.divergent = True
    else:
        constant, series = series_in_inverse_n(f, request.series_order)
        result.limit, result.series_constant, result.series = limit, constant, series
    emit_document('fit', inputs, result)


@symbolic_bp.cli.command('findzero')
@click.option('--rows', type=click.IntRange(min=1), required=True, help='Number of rows k.')
@click.option('--max', 'max_', type=click.IntRange(min=2), required=True, help='Largest column K searched.')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker processes for the pair sweep.')
@document_command('findzero')
def findzero(rows, max_, workers):
    """Finds the pairs [1,j], [m1,m2] whose sorting probability tends to 0 as n grows."""
    pairs, skipped = find_zero_pairs(RectFamily(rows), max_, max_deg=current_app.config['FIT_MAX_DEGREE'],
                                     held_out=current_app.config['FIT_HELD_OUT_POINTS'],
                                     workers=workers or current_app.config['SAMPLE_WORKERS'])
    result = FindZeroResultSchema(pairs=[(c1.as_list(), c2.as_list()) for c1, c2 in pairs], skipped=len(skipped))
    emit_document('findzero', echo_inputs(rows=rows, max=max_), result, skipped)


@symbolic_bp.cli.command('limitdist')
@click.option('--rows', type=click.IntRange(min=1), required=True, help='Number of rows k.')
@click.option('--j', 'j', type=click.IntRange(min=1), required=True, help='Column of the first-row cell [1,j].')
@click.option('--method', type=click.Choice(['fit', 'direct']), default='fit')
@click.option('--csv', 'as_csv', is_flag=True, help='Write the law as value,probability CSV instead of JSON.')
@document_command('limitdist')
def limitdist(rows, j, method, as_csv):
    """The n -> oo law of the entry of [1,j] on the k-row rectangle, with its moments."""
    law = limiting_occupancy(RectFamily(rows), j, method=method, max_deg=current_app.config['FIT_MAX_DEGREE'],
                             held_out=current_app.config['FIT_HELD_OUT_POINTS'])
    if as_csv:
        emit_csv(law.as_dict())
        return
    stats = moments(law, kmax=6)
    result = LimitDistResultSchema(distribution=law.as_dict(),
                                   moments=MomentsSchema(mean=stats.mean, variance=stats.variance,
                                                         scaled_float=stats.scaled))
    emit_document('limitdist', echo_inputs(rows=rows, j=j, method=method), result)


@symbolic_bp.cli.command('catalan')
@click.option('--i', 'i', type=click.IntRange(min=1), required=True, help='Column of the cell [1,i] on (n, n).')
@click.option('--meta-limits/--no-meta-limits', default=True, help='Compare the statistics with their i -> oo limits.')
@document_command('catalan')
def catalan(i, meta_limits):
    """Closed-form limiting law, mean and variance of the entry of [1,i] on two-row rectangles."""
    report = catalan_meta_limits_check(i) if meta_limits else []
    result = CatalanResultSchema(expectation=catalan_expectation(i), variance=catalan_variance(i),
                                 distribution=catalan_limiting_occupancy(i).as_dict(),
                                 asymptotic_expectation_float=catalan_expectation_asymptotic(i),
                                 meta_limits=[MetaLimitEntrySchema(**entry) for entry in report])
    emit_document('catalan', echo_inputs(i=i, meta_limits=meta_limits), result)
