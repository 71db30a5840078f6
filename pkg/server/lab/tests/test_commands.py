import json
from io import StringIO
from pathlib import Path

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from lab.cli import dispatch
from lab.emit import RunManifest

CONFIGS = Path(__file__).resolve().parent / 'configs'


def config_path(name):
    return str(CONFIGS / f'{name}.toml')


def run_lab(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = dispatch(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class ValidateCommandTest(SimpleTestCase):

    def test_valid_game(self):
        out = StringIO()
        call_command('validate', config=config_path('free_riding'), stdout=out)
        report = json.loads(out.getvalue())

        self.assertTrue(report['passed'])
        self.assertEqual(report['game'], 'free_riding')
        self.assertEqual(report['flags'], {'iv': True})

    def test_violation_exits_with_one(self):
        with self.assertRaises(CommandError) as context:
            call_command('validate', config=config_path('broken_dominance'), stdout=StringIO())

        self.assertEqual(context.exception.returncode, 1)
        self.assertIn('conditions violated: i', str(context.exception))

    def test_disconnected_graph(self):
        code, out, _ = run_lab('validate', '--config', config_path('disconnected'))

        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['violations'][0]['condition'], 'irreducible')

    def test_validate_needs_no_seed(self):
        code, _, _ = run_lab('validate', '--config', config_path('network_path'))

        self.assertEqual(code, 0)


class DispatchTest(SimpleTestCase):

    def test_unknown_subcommand(self):
        code, _, err = run_lab('optimize', '--config', config_path('free_riding'))

        self.assertEqual(code, 2)
        self.assertIn('unknown subcommand', err)

    def test_empty_arguments(self):
        self.assertEqual(run_lab()[0], 2)

    def test_missing_config_flag(self):
        self.assertEqual(run_lab('simulate', '--seed', '1')[0], 2)

    def test_randomized_commands_need_a_seed(self):
        for name in ('simulate', 'replicate', 'bounds', 'certify', 'dynamics', 'nash-gap'):
            with self.subTest(command=name):
                code, _, err = run_lab(name, '--config', config_path('free_riding'))
                self.assertEqual(code, 2)
                self.assertIn('--seed is required', err)

    def test_negative_seed(self):
        self.assertEqual(run_lab('simulate', '--config', config_path('free_riding'), '--seed', '-3')[0], 2)

    def test_configuration_errors(self):
        for name in ('malformed', 'missing'):
            with self.subTest(config=name):
                code, out, _ = run_lab('simulate', '--config', config_path(name), '--seed', '1')
                self.assertEqual(code, 2)
                self.assertEqual(out, '')

    def test_zero_eta(self):
        code, out, err = run_lab('bounds', '--config', config_path('free_riding'), '--seed', '3', '--eta', '0')

        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('eta must be positive', err)

    def test_flow_shorter_than_one_step(self):
        code, _, err = run_lab('dynamics', '--config', config_path('short_flow'), '--seed', '1')

        self.assertEqual(code, 2)
        self.assertIn('T is shorter than one step', err)

    def test_exhausted_replay_script(self):
        code, _, err = run_lab('simulate', '--config', config_path('network_path'), '--seed', '1')

        self.assertEqual(code, 2)
        self.assertIn('player 2', err)


class TestSimulate:

    def test_summary_and_outputs(self, tmp_path):
        code, out, _ = run_lab('simulate', '--config', config_path('free_riding'), '--seed', '7',
                               '--horizon', '400', '--out', str(tmp_path))
        summary = json.loads(out)

        assert code == 0
        assert summary['rows'] == 5
        assert summary['config']['horizon'] == 400
        # every player is good, so no group gap is tracked
        assert set(summary['extremes']) == {'payoff_1', 'payoff_2', 'payoff_3'}
        assert sorted(path.name for path in tmp_path.iterdir()) == ['manifest.json', 'summary.json', 'trace.csv']

    def test_trace_columns(self, tmp_path):
        run_lab('simulate', '--config', config_path('free_riding'), '--seed', '7', '--horizon', '50',
                '--out', str(tmp_path))
        lines = (tmp_path / 'trace.csv').read_text().splitlines()

        assert lines[0].split(',') == [
            'n', 'u_1', 'u_2', 'u_3', 'mu_1', 'mu_2', 'mu_3',
            'dist_lambda_1', 'dist_lambda_2', 'dist_lambda_3', 'dist_diag', 'dist_vstar', 'profile',
        ]
        assert [line.split(',')[0] for line in lines[1:]] == ['1', '50']

    def test_network_trace_has_mean_payoffs(self, tmp_path):
        code, _, _ = run_lab('simulate', '--config', config_path('network_path'), '--seed', '2',
                             '--horizon', '8', '--out', str(tmp_path))
        header = (tmp_path / 'trace.csv').read_text().splitlines()[0].split(',')

        assert code == 0
        assert header[-4:] == ['mean_1', 'mean_2', 'mean_3', 'profile']
        # player 2 replays a script, so only players 1 and 3 are tracked
        assert [name for name in header if name.startswith('dist_lambda')] == ['dist_lambda_1', 'dist_lambda_3']

    def test_same_seed_same_bytes(self, tmp_path):
        for name in ('first', 'second'):
            run_lab('simulate', '--config', config_path('free_riding'), '--seed', '11', '--horizon', '300',
                    '--out', str(tmp_path / name))

        assert (tmp_path / 'first' / 'trace.csv').read_bytes() == (tmp_path / 'second' / 'trace.csv').read_bytes()
        assert RunManifest.read(tmp_path / 'first').outputs == RunManifest.read(tmp_path / 'second').outputs

    def test_manifest_echoes_the_run(self, tmp_path):
        run_lab('simulate', '--config', config_path('free_riding'), '--seed', '11', '--horizon', '300',
                '--delta', '0.1', '--out', str(tmp_path))
        manifest = RunManifest.read(tmp_path / 'manifest.json')

        assert manifest.command == 'simulate'
        assert manifest.master_seed == 11
        assert manifest.overrides == {'delta': 0.1}
        assert manifest.config['simulation']['horizon'] == 300
        assert manifest.config['game']['c'] == 1.5


class TestExperiments:

    def test_replicate_writes_one_trace_per_seed(self, tmp_path):
        code, out, _ = run_lab('replicate', '--config', config_path('free_riding'), '--seed', '100',
                               '--horizon', '500', '--tail-n', '400', '--out', str(tmp_path))
        summary = json.loads(out)

        assert code == 0
        assert summary['seeds'] == [101, 102, 103]
        assert len(summary['finalStates']) == 3
        for seed in (101, 102, 103):
            assert (tmp_path / f'trace_{seed}.csv').exists()

    def test_tail_start_past_the_horizon_is_clamped(self):
        code, out, _ = run_lab('bounds', '--config', config_path('free_riding'), '--seed', '3',
                               '--horizon', '500', '--replications', '2')

        assert code == 0
        assert json.loads(out)['n'] == 500

    def test_bounds_report(self):
        code, out, _ = run_lab('bounds', '--config', config_path('free_riding'), '--seed', '3')
        report = json.loads(out)

        assert code == 0
        assert report['n'] == 2000
        assert report['seeds'] == [4, 5, 6]
        assert [row['player'] for row in report['players']] == [1, 2, 3]
        for row in report['players']:
            assert 0.0 <= row['boundI'] <= 1.0
            assert 0.0 <= row['boundII'] <= 1.0
            assert row['withinI'] and row['withinII']

    def test_certify_free_riding(self):
        code, out, _ = run_lab('certify', '--config', config_path('free_riding'), '--seed', '5')
        report = json.loads(out)

        assert code == 0
        assert [r['certificate']['certified'] for r in report['players']] == [True, True, True]
        assert all(r['separation']['checked'] == 40 for r in report['players'])

    def test_certify_names_the_witness(self):
        code, _, err = run_lab('certify', '--config', config_path('broken_dominance'), '--seed', '5')

        assert code == 1
        assert 'player 1 not certified: opponents' in err

    def test_dynamics_from_mutual_defection(self, tmp_path):
        code, out, _ = run_lab('dynamics', '--config', config_path('free_riding'), '--seed', '1',
                               '--out', str(tmp_path))
        report = json.loads(out)

        assert code == 0
        assert report['u0'] == [0.0, 0.0, 0.0]
        assert all(check['unique'] for check in report['diagonal'])
        rows = (tmp_path / 'path.csv').read_text().splitlines()
        assert rows[0] == 't,u_1,u_2,u_3'
        assert len(rows) == 102

    def test_dynamics_refuses_a_policy_player(self):
        code, _, err = run_lab('dynamics', '--config', config_path('defector'), '--seed', '1')

        assert code == 2
        assert 'player 2 does not play a good strategy' in err

    @pytest.mark.slow
    def test_nash_gap(self):
        code, out, _ = run_lab('nash-gap', '--config', config_path('free_riding'), '--seed', '9')
        report = json.loads(out)

        assert code == 0
        assert [outcome['policy']['kind'] for outcome in report['outcomes']] == ['always_defect', 'exploiter']
        assert report['threshold'] == pytest.approx(0.1)
