import click
from flask import Blueprint, current_app

from services.distribution_service import occupancy_pgf
from services.sampling_service import compare_occupancy, sample_tableaux
from utils.command_utils import CELL, SHAPE, document_command, echo_inputs, emit_document
from validation_schemas.schemas import CompareResultSchema, SampleResultSchema

sampling_bp = Blueprint('sampling', __name__, cli_group=None)

@sampling_bp.cli.command('sample')
@click.argument('shape', type=SHAPE)
@click.option('--count', 'count_', type=click.IntRange(min=1), default=1, help='Number of tableaux to draw.')
@click.option('--seed', type=click.IntRange(min=0), default=0, help='Seed of the random generator.')
@document_command('sample')
def sample(shape, count_, seed):
    """Draws uniformly random standard Young tableaux of SHAPE with the hook walk."""
    tableaux = sample_tableaux(shape, count_, seed)
    result = SampleResultSchema(seed=seed, tableaux=[t.as_lists() for t in tableaux])
    emit_document('sample', echo_inputs(shape=shape, count=count_, seed=seed), result)

@sampling_bp.cli.command('compare')
@click.argument('shape', type=SHAPE)
@click.option('--cell', type=CELL, required=True, help='The observed cell as row,col.')
@click.option('--samples', type=click.IntRange(min=1), default=10000, help='Number of tableaux to draw.')
@click.option('--seed', type=click.IntRange(min=0), default=0, help='Root seed; shards derive their own.')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker processes for the shards.')
@document_command('compare')
def compare(shape, cell, samples, seed, workers):
    """Compares the sampled law of the entry in CELL with the exact one."""
    workers = workers or current_app.config['SAMPLE_WORKERS']
    exact = occupancy_pgf(shape, cell)
    empirical, tv = compare_occupancy(shape, cell, samples, seed, exact,
                                      shard_size=current_app.config['SAMPLE_SHARD_SIZE'], workers=workers)
    result = CompareResultSchema(exact=exact.as_dict(), empirical=empirical, tv_distance_float=tv)
    emit_document('compare', echo_inputs(shape=shape, cell=cell, samples=samples, seed=seed), result)
