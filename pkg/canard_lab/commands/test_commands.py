# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from click.testing import CliRunner

import canard_lab
from canard_lab import hooks
from canard_lab.commands import cli
from canard_lab.commands.figures import RECIPES
from canard_lab.commands.simulate import invariant_report
from canard_lab.melnikov import MelnikovResult, continuous_targets


def data_lines(output: str) -> list[str]:
	return [line for line in output.splitlines() if line and not line.startswith("#")]


def with_err_r(err_r: float):
	"""A melnikov_sweep stand-in whose d_lambda is exact and whose d_r is off by err_r."""

	def sweep(cells, boundary_corrected=False):
		results = []
		for h, N, a in cells:
			d_lambda, d_r = continuous_targets(a)
			results.append(MelnikovResult(h, N, d_lambda, d_r + err_r, a=tuple(a)))
		return results

	return sweep


class BaseTestCommands(unittest.TestCase):
	def setUp(self):
		self.runner = CliRunner()

	def execute(self, *args):
		return self.runner.invoke(cli, list(args), catch_exceptions=False)


class TestSimulate(BaseTestCommands):
	def test_csv_layout(self):
		result = self.execute("simulate", "--map", "k2-kahan", "--h", "0.01", "--x0", "0", "--y0", "-0.4", "--steps", "10")
		self.assertEqual(result.exit_code, 0)

		lines = result.output.splitlines()
		self.assertTrue(lines[0].startswith(hooks.csv_config_prefix))
		self.assertIn("map_id='k2-kahan'", lines[0])
		self.assertEqual(lines[1], "n,x,y")
		self.assertEqual(len(lines), 2 + 11)
		self.assertEqual(lines[2], "0,0,-0.40000000000000002")

	def test_repeatable(self):
		args = ("simulate", "--h", "0.01", "--steps", "50")
		self.assertEqual(self.execute(*args).output, self.execute(*args).output)

	def test_singular_event_exit_status(self):
		result = self.execute("simulate", "--map", "k2-kahan", "--h", "0.01", "--x0", "0", "--y0", "-1", "--steps", "100000")
		self.assertEqual(result.exit_code, 3)
		self.assertIn(hooks.csv_singular_prefix, result.output)

	def test_invalid_config_exit_status(self):
		result = self.execute("simulate", "--h", "-1")
		self.assertEqual(result.exit_code, 2)
		self.assertIn("h must be positive", result.output)

	def test_backward_euler_refused(self):
		result = self.execute("simulate", "--map", "k2-euler", "--backward-steps", "3")
		self.assertEqual(result.exit_code, 2)

	def test_json_format(self):
		result = self.execute("simulate", "--steps", "2", "--format", "json")
		self.assertEqual(result.exit_code, 0)

		document = json.loads(result.output)
		self.assertEqual(document["config"]["map_id"], "k2-kahan")
		self.assertEqual([row["n"] for row in document["rows"]], [0, 1, 2])
		self.assertEqual(document["singular_at"], [])

	def test_symplectic_euler(self):
		result = self.execute("simulate", "--map", "symplectic-euler", "--x0", "0.1", "--y0", "0", "--steps", "3")
		self.assertEqual(result.exit_code, 0)
		self.assertEqual(result.output.splitlines()[1], "n,v,w,Hhat")
		self.assertEqual(len(data_lines(result.output)), 1 + 4)

	def test_output_file(self):
		with tempfile.TemporaryDirectory() as tmp:
			path = Path(tmp) / "runs" / "orbit.csv"
			result = self.execute("simulate", "--steps", "5", "--output", str(path))
			self.assertEqual(result.exit_code, 0)
			self.assertEqual(result.output, "")
			self.assertEqual(len(data_lines(path.read_text())), 1 + 6)


class TestConfigFile(BaseTestCommands):
	def test_flags_override_file(self):
		with tempfile.TemporaryDirectory() as tmp:
			path = Path(tmp) / "run.cfg"
			path.write_text("# chart K2\nh = 0.05\nsteps = 3\nlambda = 0.001\n")
			result = self.execute("--config", str(path), "simulate", "--steps", "2")

		self.assertEqual(result.exit_code, 0)
		header = result.output.splitlines()[0]
		self.assertIn("h=0.05", header)
		self.assertIn("lam=0.001", header)
		self.assertIn("steps=2", header)
		self.assertEqual(len(data_lines(result.output)), 1 + 3)

	def test_unknown_key(self):
		with tempfile.TemporaryDirectory() as tmp:
			path = Path(tmp) / "run.cfg"
			path.write_text("stepsize = 0.1\n")
			result = self.execute("--config", str(path), "simulate")

		self.assertEqual(result.exit_code, 2)
		self.assertIn("stepsize", result.output)


class TestInvariantCheck(BaseTestCommands):
	def test_report(self):
		rows = invariant_report(0.1, 200)
		self.assertEqual([row[1] for row in rows], ["forward", "backward"])
		for row in rows:
			self.assertLess(row[4], 1e-12)
			self.assertLess(row[5], 1e-12)

	def test_command(self):
		result = self.execute("invariant-check", "--h", "0.5", "--h", "0.1", "--steps", "50")
		self.assertEqual(result.exit_code, 0)
		self.assertEqual(len(data_lines(result.output)), 1 + 4)


class TestAnalysis(BaseTestCommands):
	def test_melnikov_columns(self):
		result = self.execute("melnikov", "--h", "0.05", "--N", "100", "--a1", "1")
		self.assertEqual(result.exit_code, 0)

		header, row = data_lines(result.output)
		self.assertEqual(header, "h,N,d_lambda,d_r,err_lambda,err_r,d_lambda_over_h,d_r_over_h")
		self.assertEqual(row.split(",")[:2], ["0.050000000000000003", "100"])

	def test_melnikov_window_guard(self):
		result = self.execute("melnikov", "--h", "0.01", "--N", "3000")
		self.assertEqual(result.exit_code, 2)

	def test_critical_curve(self):
		result = self.execute("critical-curve", "--epsilon", "0.01", "--h", "0.1", "--a1", "1")
		self.assertEqual(result.exit_code, 0)

		header, row = data_lines(result.output)
		self.assertEqual(header, "epsilon,h,lambda_c,minus_C_epsilon")
		lambda_c, minus_c_epsilon = map(float, row.split(",")[2:])
		self.assertEqual(minus_c_epsilon, -0.005)
		self.assertAlmostEqual(lambda_c, -0.005, delta=0.001)

	def test_blowup(self):
		result = self.execute("blowup", "--h1", "0.1", "--h", "0.1")
		self.assertEqual(result.exit_code, 0)

		rows = [line.split(",") for line in data_lines(result.output)[1:]]
		multipliers = [r for r in rows if r[0] == "multiplier"]
		self.assertAlmostEqual(float(multipliers[0][3]), 9 / 11, places=10)
		self.assertEqual(len([r for r in rows if r[0] == "distance"]), 8)


class TestConserved(BaseTestCommands):
	def test_derive(self):
		result = self.execute("conserved", "derive", "--order", "2")
		self.assertEqual(result.exit_code, 0)

		lines = data_lines(result.output)
		self.assertEqual(lines[0], "order,term,polynomial")
		self.assertTrue(lines[2].startswith("2,Hbar_2,e^(-2y) * (1/12 + 1/6 * y^1 + 1/6 * y^2"))

	def test_derive_odd_order(self):
		result = self.execute("conserved", "derive", "--order", "3")
		self.assertEqual(result.exit_code, 2)

	def test_monitor(self):
		result = self.execute("conserved", "monitor", "--steps", "100", "--format", "json")
		self.assertEqual(result.exit_code, 0)

		rows = json.loads(result.output)["rows"]
		self.assertEqual(len(rows), 101)
		hbar = [row["Hbar"] for row in rows]
		self.assertLess(max(hbar) - min(hbar), 1e-7)


class TestHamiltonian(BaseTestCommands):
	def test_check(self):
		result = self.execute("hamiltonian", "check", "--steps", "500", "--format", "json")
		self.assertEqual(result.exit_code, 0)

		report = {row["quantity"]: row["value"] for row in json.loads(result.output)["rows"]}
		self.assertLess(report["identity_error"], 1e-12)
		self.assertLess(report["det_step_error"], 1e-7)

	def test_simulate_from_xy(self):
		result = self.execute("hamiltonian", "simulate", "--from-xy", "0", "-0.4", "--steps", "4")
		self.assertEqual(result.exit_code, 0)
		self.assertEqual(len(data_lines(result.output)), 1 + 5)


class TestReproduce(BaseTestCommands):
	def test_requires_a_figure(self):
		result = self.execute("reproduce")
		self.assertEqual(result.exit_code, 2)

	def test_writes_data_and_verdict(self):
		with tempfile.TemporaryDirectory() as tmp:
			result = self.execute("reproduce", "--figure", "fig1-euler-on-curve", "--figure", "fig8-unbounded", "--output-dir", tmp)
			self.assertEqual(result.exit_code, 0)
			self.assertIn("fig1-euler-on-curve: reproduced", result.output)

			csv_text = (Path(tmp) / "fig8-unbounded.csv").read_text()
			self.assertIn(hooks.csv_singular_prefix, csv_text)
			sidecar = (Path(tmp) / "fig1-euler-on-curve.txt").read_text()
			self.assertIn("claim: ", sidecar)
			self.assertIn("verdict: reproduced", sidecar)

	def test_recipes(self):
		self.assertEqual(len(RECIPES), 7)
		for recipe in RECIPES.values():
			self.assertEqual(recipe.config.command, "reproduce")

	def test_euler_spiral_runs_until_escape(self):
		recipe = RECIPES["fig2-euler-spiral"]
		self.assertEqual(recipe.config.steps, 100_000)

		result = recipe.run(recipe.config)
		self.assertTrue(result.passed)
		self.assertGreater(result.measured["H_drop"], 1e-2)
		self.assertLess(result.measured["max_H_increment"], 0)
		self.assertIsInstance(result.measured["nonfinite_from"], int)
		self.assertLess(result.measured["separatrix_crossed_at"], result.measured["nonfinite_from"])

	def test_melnikov_convergence_checks_both_sums(self):
		recipe = RECIPES["fig12-melnikov-convergence"]
		result = recipe.run(recipe.config)
		self.assertTrue(result.passed)
		self.assertLess(abs(result.measured["err_lambda"]), 0.05)
		self.assertLess(abs(result.measured["err_r"]), 0.1)

		with mock.patch("canard_lab.commands.figures.melnikov_sweep", side_effect=with_err_r(0.5)):
			self.assertFalse(recipe.run(recipe.config).passed)


class TestVersion(BaseTestCommands):
	def test_version(self):
		result = self.execute("--version")
		self.assertEqual(result.exit_code, 0)
		self.assertIn(canard_lab.__version__, result.output)

	def test_help_names_the_app(self):
		result = self.execute("--help")
		self.assertEqual(result.exit_code, 0)
		text = " ".join(result.output.split())
		self.assertIn(hooks.app_title, text)
		self.assertIn(hooks.app_description, text)
