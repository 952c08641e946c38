import csv
import functools
import io
from fractions import Fraction
from typing import Any, Iterable, Mapping

import click
from flask import current_app
from pydantic import ValidationError

from models import Cell, Partition
from services import SYTError
from validation_schemas.schemas import CellSchema, OutputDocument, ShapeSchema, format_rational


class ShapeParamType(click.ParamType):
    """A click parameter parsed into a Partition through ShapeSchema."""
    name = 'shape'

    def convert(self, value, param, ctx):
        if isinstance(value, Partition):
            return value
        try:
            return ShapeSchema.from_text(value).to_partition()
        except (ValidationError, ValueError, SYTError) as exc:
            self.fail(f'{value!r} is not a valid shape ({_reason(exc)})', param, ctx)


class CellParamType(click.ParamType):
    """A click parameter parsed into a Cell through CellSchema."""
    name = 'cell'

    def convert(self, value, param, ctx):
        if isinstance(value, Cell):
            return value
        try:
            return CellSchema.from_text(value).to_cell()
        except (ValidationError, ValueError, SYTError) as exc:
            self.fail(f'{value!r} is not a valid cell ({_reason(exc)})', param, ctx)


SHAPE = ShapeParamType()
CELL = CellParamType()


def _reason(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return '; '.join(error['msg'] for error in exc.errors())
    return str(exc)


def echo_inputs(**inputs) -> dict[str, Any]:
    """Converts parsed arguments into plain JSON values for the inputs echo."""
    def plain(value):
        if isinstance(value, Partition):
            return list(value.parts)
        if isinstance(value, Cell):
            return value.as_list()
        if isinstance(value, Fraction):
            return format_rational(value)
        return value

    return {key: plain(value) for key, value in inputs.items()}


def emit_document(command: str, inputs: dict[str, Any], result, warnings: Iterable[str] = ()) -> None:
    """Writes the output document of a command to standard output."""
    document = OutputDocument(schema_version=current_app.config['SCHEMA_VERSION'], command=command,
                              inputs=inputs, result=result, warnings=list(warnings))
    click.echo(current_app.json.dumps(document))


def emit_csv(distribution: Mapping[int, Fraction]) -> None:
    """Writes a distribution as two CSV columns: value and probability as "p/q"."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['value', 'probability'])
    for value, probability in distribution.items():
        writer.writerow([value, format_rational(probability)])
    click.echo(buffer.getvalue(), nl=False)


def exit_code_for(error: Exception) -> int | None:
    """Looks an exception up in the exit-code table registered on the app, most specific class first."""
    table = current_app.extensions.get('exit_codes', {})
    for cls in type(error).__mro__:
        if cls in table:
            return table[cls]
    return None


def document_command(name: str):
    """Wraps a command so that mapped exceptions end the process with their exit code.

    The error goes to standard error as {"error": ..., "type": ...}; unmapped exceptions propagate.
    """
    def decorator(f):
        @functools.wraps(f)
        def wrapper(*args, **kwargs):
            current_app.logger.info('Running %s', name)
            try:
                return f(*args, **kwargs)
            except Exception as error:
                code = exit_code_for(error)
                if code is None:
                    raise
                current_app.logger.debug('%s failed with %s', name, type(error).__name__)
                message = _reason(error) if isinstance(error, ValidationError) else str(error)
                click.echo(current_app.json.dumps({'error': message, 'type': type(error).__name__}), err=True)
                click.get_current_context().exit(code)
        return wrapper
    return decorator
