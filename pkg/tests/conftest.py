import pytest

from app import create_app
from config import TestConfig
from models import Cell, Partition


@pytest.fixture(scope='function')
def test_app():
    """
    Pytest fixture to create and configure a new app instance for testing.
    this fixture will be set up once per test function.
    """
    app = create_app(TestConfig)
    with app.app_context():
        yield app


@pytest.fixture(scope='function')
def cli_runner(test_app):
    """
    Pytest fixture to provide a Flask CLI runner for invoking commands.
    Standard output and standard error are captured separately.
    """
    return test_app.test_cli_runner()


@pytest.fixture(scope='function')
def preface_shape():
    """
    The shape (2,2,1) with its five tableaux in enumeration order, the known
    occupancy law of [2,1] and the known sorting probability of [1,2] against [2,1].
    """
    return {
        'shape': Partition((2, 2, 1)),
        'tableaux': [
            [[1, 2], [3, 4], [5]],
            [[1, 2], [3, 5], [4]],
            [[1, 3], [2, 4], [5]],
            [[1, 3], [2, 5], [4]],
            [[1, 4], [2, 5], [3]],
        ],
        'cell': Cell(2, 1),
        'pgf': {2: '3/5', 3: '2/5'},
        'c1': Cell(1, 2),
        'c2': Cell(2, 1),
        'sort_prob': '1/5',
    }
