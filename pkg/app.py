import logging

from flask import Flask
from flask.logging import default_handler
from pydantic import ValidationError

from config import Config
from commands import counting_bp, distributions_bp, sampling_bp, symbolic_bp
from services import CellOutsideShapeError, DegenerateDistributionError, DivergesAtInfinityError, \
    FitFailedError, InnerNotContainedError, InvalidShapeError, InvariantBreachError, SameCellError, \
    ShapeTooLargeError
from utils.json_provider import ExactJSONProvider

def create_app(config_class = Config):
    """
    Creates and configures a new Flask application instance hosting the command line.
    This function follows the Application Factory pattern.

    Args:
        config_class: The configuration class to use for the app.
                      Defaults to the production Config.

    Returns:
        The configured Flask application instance.
    """
    app = Flask(__name__)
    app.config.from_object(config_class)

    app.json = ExactJSONProvider(app)

    app.logger.setLevel(app.config['LOG_LEVEL'])
    services_logger = logging.getLogger('services')
    services_logger.setLevel(app.config['LOG_LEVEL'])
    if default_handler not in services_logger.handlers:
        services_logger.addHandler(default_handler)

    app.register_blueprint(counting_bp)
    app.register_blueprint(sampling_bp)
    app.register_blueprint(distributions_bp)
    app.register_blueprint(symbolic_bp)

    # exit status per exception, looked up by class hierarchy
    app.extensions['exit_codes'] = {
        InvalidShapeError: 2,
        CellOutsideShapeError: 2,
        SameCellError: 2,
        InnerNotContainedError: 2,
        DivergesAtInfinityError: 2,
        DegenerateDistributionError: 2,
        ValidationError: 2,
        ShapeTooLargeError: 3,
        FitFailedError: 4,
        InvariantBreachError: 1,
    }

    return app
