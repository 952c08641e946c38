from itertools import islice

import click
from flask import Blueprint, current_app

from services import InvariantBreachError
from services.counting_service import count_syt_hook, count_syt_yf, enumerate_syt
from utils.command_utils import SHAPE, document_command, echo_inputs, emit_document
from validation_schemas.schemas import CountResultSchema, EnumerateResultSchema

counting_bp = Blueprint('counting', __name__, cli_group=None)

@counting_bp.cli.command('count')
@click.argument('shape', type=SHAPE)
@document_command('count')
def count(shape):
    """Counts the standard Young tableaux of SHAPE with two independent formulas."""
    yf = count_syt_yf(shape)
    hook = count_syt_hook(shape)
    if yf != hook:
        raise InvariantBreachError(f'Young-Frobenius gives {yf} but the hook formula gives {hook} for ({shape})')
    emit_document('count', echo_inputs(shape=shape), CountResultSchema(yf=yf, hook=hook, agree=True))

@counting_bp.cli.command('enumerate')
@click.argument('shape', type=SHAPE)
@click.option('--limit', type=click.IntRange(min=0), default=None, help='Return only the first N tableaux.')
@click.option('--allow-large', is_flag=True, help='Enumerate above the SYT_MAX_CELLS cap.')
@document_command('enumerate')
def enumerate_tableaux(shape, limit, allow_large):
    """Lists every standard Young tableau of SHAPE in a fixed order.

    The order places 1, 2, ... into the topmost available row first and backtracks.
    """
    tableaux = enumerate_syt(shape, max_cells=current_app.config['SYT_MAX_CELLS'], allow_large=allow_large)
    if limit is not None:
        tableaux = islice(tableaux, limit)
    rows = [t.as_lists() for t in tableaux]
    result = EnumerateResultSchema(total=count_syt_yf(shape), returned=len(rows), tableaux=rows)
    emit_document('enumerate', echo_inputs(shape=shape, limit=limit), result)
