import json

from testing_utils import invoke_json


def test_occ_pgf(cli_runner, preface_shape):
    """
    GIVEN the shape (2,2,1) and the cell [2,1]
    WHEN occ is run without --r
    THEN it should print the full law with exact "p/q" probabilities
    """
    # WHEN
    result, document = invoke_json(cli_runner, ['occ', '2,2,1', '--cell', '2,1'])

    # THEN
    assert result.exit_code == 0
    assert document['inputs'] == {'shape': [2, 2, 1], 'cell': [2, 1], 'r': None, 'pgf': True}
    assert document['result']['pgf'] == {str(k): v for k, v in preface_shape['pgf'].items()}
    assert document['result']['occupant_range'] == [2, 3]


def test_occ_single_probability(cli_runner):
    """
    GIVEN the shape (5,5,5), the cell [1,3] and the entry 7
    WHEN occ is run with --r
    THEN it should print the single probability 5/143
    """
    result, document = invoke_json(cli_runner, ['occ', '5,5,5', '--cell', '1,3', '--r', '7'])

    assert result.exit_code == 0
    assert document['result']['probability'] == '5/143'
    assert document['result']['pgf'] is None


def test_occ_csv(cli_runner):
    """
    GIVEN the shape (2,2,1) and the cell [2,1]
    WHEN occ is run with --csv
    THEN the law is written as value,probability rows
    """
    result = cli_runner.invoke(args=['occ', '2,2,1', '--cell', '2,1', '--csv'])

    assert result.exit_code == 0
    assert result.stdout == 'value,probability\n2,3/5\n3,2/5\n'


def test_occ_errors(cli_runner):
    """
    GIVEN a cell outside the shape, and both --r and --pgf
    WHEN occ is run
    THEN it should exit with status 2
    """
    result = cli_runner.invoke(args=['occ', '2,2,1', '--cell', '3,2'])

    assert result.exit_code == 2
    assert json.loads(result.stderr)['type'] == 'CellOutsideShapeError'

    result = cli_runner.invoke(args=['occ', '2,2,1', '--cell', '2,1', '--r', '2', '--pgf'])

    assert result.exit_code == 2


def test_occ_rejects_single_probability_as_csv(cli_runner):
    """
    GIVEN both --r and --csv
    WHEN occ is run
    THEN it should exit with status 2 and write no CSV
    """
    result = cli_runner.invoke(args=['occ', '2,2,1', '--cell', '2,1', '--r', '2', '--csv'])

    assert result.exit_code == 2
    assert 'value,probability' not in result.stdout


def test_sortprob(cli_runner):
    """
    GIVEN the shape (2,2,1)
    WHEN sortprob is run for an incomparable and a comparable pair
    THEN it should print 1/5 and -1
    """
    result, document = invoke_json(cli_runner, ['sortprob', '2,2,1', '--c1', '1,2', '--c2', '2,1'])

    assert result.exit_code == 0
    assert document['result'] == {'sort_prob': '1/5', 'greater': '3/5'}

    result, document = invoke_json(cli_runner, ['sortprob', '2,2,1', '--c1', '1,1', '--c2', '2,2'])

    assert document['result']['sort_prob'] == '-1'


def test_sortprob_same_cell(cli_runner):
    """
    GIVEN the same cell twice
    WHEN sortprob is run
    THEN it should exit with status 2 and report SameCellError
    """
    result = cli_runner.invoke(args=['sortprob', '2,2,1', '--c1', '1,2', '--c2', '1,2'])

    assert result.exit_code == 2
    assert json.loads(result.stderr)['type'] == 'SameCellError'


def test_minsp(cli_runner):
    """
    GIVEN the shape (2,2,1)
    WHEN minsp is run
    THEN it should print 1/5 and both champion pairs in sorted order
    """
    result, document = invoke_json(cli_runner, ['minsp', '2,2,1'])

    assert result.exit_code == 0
    assert document['result'] == {
        'min': '1/5',
        'champions': [[[1, 2], [2, 1]], [[2, 2], [3, 1]]],
        'pairs_examined': 3,
    }


def test_minsp_single_row(cli_runner):
    """
    GIVEN a single row
    WHEN minsp is run
    THEN it should print 1 with no champions and a warning
    """
    result, document = invoke_json(cli_runner, ['minsp', '3'])

    assert result.exit_code == 0
    assert document['result']['min'] == '1'
    assert document['result']['champions'] == []
    assert document['warnings'] == ['Shape has no incomparable pair of cells']
