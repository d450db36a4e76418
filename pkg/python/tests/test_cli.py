"""
Tests for the command-line front end: exit statuses, JSON output and report files
"""
import io
import json
import shutil
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from borel_cli import EXIT_CLAIM, EXIT_GUARD, EXIT_OK, EXIT_USAGE, main, render_text, run
from utils.run_config import GuardLimits, RunConfig


def example_config(**overrides):
    values = {'n': 9, 't': 2, 'u': [2, 4, 9]}
    values.update(overrides)
    return RunConfig(**values)


class TestRun(unittest.TestCase):
    """Dispatch and exit statuses"""

    def test_dual(self):
        status, report = run('dual', example_config())
        self.assertEqual(status, EXIT_OK)
        self.assertEqual([g['monomial'] for g in report['dual'][:3]], ["x1*x2", "x1*x4", "x3*x4"])
        self.assertEqual([g['form'] for g in report['dual']], ["F2", "F3", "F3", "F1", "F1", "F1"])
        self.assertEqual(report['command'], 'dual')

    def test_gens_with_verification(self):
        status, report = run('gens', example_config(verify=True))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(report['count'], 13)
        self.assertTrue(report['closure_matches'])

    def test_invalid_instance_is_usage_error(self):
        status, report = run('gens', example_config(u=[2, 3, 9]))
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(report['error_type'], 'InstanceError')

    def test_unmet_hypothesis_is_usage_error(self):
        status, report = run('limdepth-witness', RunConfig(n=4, t=2, u=[2, 4], k=2))
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(report['error_type'], 'HypothesisError')

    def test_guard_refusal(self):
        config = example_config(k=3, guards=GuardLimits(max_power_generators=10))
        status, report = run('power-depth', config)
        self.assertEqual(status, EXIT_GUARD)
        self.assertEqual(report['error_type'], 'GuardExceededError')

    def test_injected_fault_is_claim_failure(self):
        status, report = run('scm-check', example_config(inject_fault=True))
        self.assertEqual(status, EXIT_CLAIM)
        self.assertEqual(report['error_type'], 'ClaimFailure')

    def test_scm_check(self):
        status, report = run('scm-check', example_config())
        self.assertEqual(status, EXIT_OK)
        self.assertEqual([step['form'] for step in report['order']], ['F2', 'F3', 'F3', 'F1', 'F1', 'F1'])

    def test_unknown_command(self):
        status, _ = run('nonsense', example_config())
        self.assertEqual(status, EXIT_USAGE)

    def test_sort(self):
        status, report = run('sort', RunConfig(monomials="x2*x4*x6,x1*x3*x9"))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(report['sorted'], ["x1*x3*x6", "x2*x4*x9"])

    def test_power_depth_reports_veronese_obstruction(self):
        status, report = run('power-depth', RunConfig(n=4, t=2, u=[2, 4], k=2))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(report['depth'], 1)
        self.assertTrue(report['veronese_obstruction'])

    def test_ass_of_explicit_generators(self):
        status, report = run('ass', RunConfig(generators="x1^2,x1*x2", verify=True))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(report['associated_primes'], [[1], [1, 2]])
        self.assertTrue(report['oracles_agree'])

    def test_malformed_exponent_matrix_is_usage_error(self):
        for gens in ('[["a",1],[1,0]]', "[[1.9,0],[0,1]]"):
            status, report = run('ass', RunConfig(generators=gens))
            self.assertEqual(status, EXIT_USAGE, msg=gens)
            self.assertEqual(report['error_type'], 'InstanceError')

    def test_lex_witness_default(self):
        status, report = run('lex-witness', RunConfig())
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(report['not_quadratic'])

    def test_lex_witness_for_explicit_instance(self):
        """u = x6 x8 x10 picks up its own cubic without --monomials"""
        status, report = run('lex-witness', RunConfig(n=10, t=2, u=[6, 8, 10]))
        self.assertEqual(status, EXIT_OK, msg=report)
        self.assertTrue(report['not_quadratic'])
        self.assertEqual(report['quadratic_divisors'], [])

    def test_lex_witness_without_cubic(self):
        status, report = run('lex-witness', RunConfig(n=5, t=2, u=[5]))
        self.assertEqual(status, EXIT_OK, msg=report)
        self.assertEqual(report['quadratic_initials'], [])
        self.assertNotIn('binomial', report)

    def test_lex_witness_needs_both_sides(self):
        status, report = run('lex-witness', RunConfig(n=10, t=2, u=[6, 8, 10], monomials="x1*x3*x8"))
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("--gens", report['error'])

    def test_text_rendering(self):
        _, report = run('facets', RunConfig(n=4, t=2, u=[2, 4]))
        text = render_text(report)
        self.assertIn("facets:", text)
        self.assertIn("dimension: 2", text)


class TestMain(unittest.TestCase):
    """argv handling"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.temp_path = Path(self.temp_dir)

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def _main(self, argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            status = main(argv)
        return status, out.getvalue()

    def test_json_output_is_deterministic(self):
        argv = ['dual', '--n', '9', '--t', '2', '--u', '2,4,9', '--json']
        status, first = self._main(argv)
        _, second = self._main(argv)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)['dual'][-1], {'monomial': "x5*x6*x7*x8*x9", 'form': 'F1'})

    def test_missing_command_is_usage_error(self):
        status, _ = self._main([])
        self.assertEqual(status, EXIT_USAGE)

    def test_malformed_index_list(self):
        status, _ = self._main(['gens', '--n', '9', '--t', '2', '--u', '2,x'])
        self.assertEqual(status, EXIT_USAGE)

    def test_oracle_decompose(self):
        status, out = self._main(['oracle', 'decompose', '--gens', 'x1^2,x1*x2', '--json'])
        self.assertEqual(status, EXIT_OK)
        report = json.loads(out)
        self.assertEqual([c['generators'] for c in report['components']], [["x1"], ["x1^2", "x2"]])
        self.assertTrue(report['intersection_matches'])

    def test_report_written_to_directory(self):
        status, _ = self._main(['dual', '--n', '9', '--t', '2', '--u', '2,4,9', '--output', str(self.temp_path)])
        self.assertEqual(status, EXIT_OK)
        written = self.temp_path / "dual_n9_t2_u2-4-9.json"
        self.assertTrue(written.exists())
        self.assertEqual(json.loads(written.read_text())['command'], 'dual')

    def test_report_written_to_file(self):
        target = self.temp_path / "gens.json"
        status, _ = self._main(['gens', '--n', '4', '--t', '2', '--u', '2,4', '--json', '--output', str(target)])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(target.read_text())['generators'], ["x1*x3", "x1*x4", "x2*x4"])


if __name__ == '__main__':
    unittest.main()
