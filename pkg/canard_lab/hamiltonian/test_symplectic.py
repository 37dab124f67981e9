# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import unittest

import numpy as np

from canard_lab.exceptions import SingularStepError
from canard_lab.hamiltonian import (
	H_hat,
	hamiltonian_check,
	hamiltonian_flow_drift,
	simulate_symplectic,
	symplectic_euler_step,
)
from canard_lab.utils import central_difference_jacobian


class TestSymplecticEuler(unittest.TestCase):
	def test_equilibrium(self):
		for h in (0.01, 0.1, 0.3):
			s = symplectic_euler_step(0.0, 0.0, h)
			self.assertEqual((s.v, s.w), (0.0, 0.0))

	def test_implicit_definition(self):
		v, w, h = 0.1, -0.2, 0.05
		s = symplectic_euler_step(v, w, h)
		ew = np.exp(w)
		dH_dw = ew * ew - 0.25 - ew / 4 * (8 * s.v + 3)
		dH_dv = 2 + 4 * s.v - 2 * ew
		self.assertAlmostEqual(s.v, v - h * dH_dw, delta=1e-15)
		self.assertAlmostEqual(s.w, w + h * dH_dv, delta=1e-15)

	def test_unit_determinant(self):
		rng = np.random.default_rng(61)
		for _ in range(20):
			point = rng.uniform(-0.5, 0.5, size=2)
			jacobian = central_difference_jacobian(lambda z: symplectic_euler_step(*z, 0.01).as_array(), point)
			self.assertAlmostEqual(np.linalg.det(jacobian), 1, delta=1e-7)

	def test_singular(self):
		with self.assertRaises(SingularStepError):
			symplectic_euler_step(0.0, 0.0, 0.5)

	def test_bounded_drift(self):
		rows = simulate_symplectic(0.1, 0.0, 0.01, 10_000)
		self.assertEqual(len(rows), 10_001)
		values = np.array([row[3] for row in rows])
		self.assertLess(np.ptp(values), 0.05)
		self.assertLess(abs(values[-1000:].mean() - values[:1000].mean()), 0.01)
		self.assertEqual(rows[0][3], H_hat(0.1, 0.0))


class TestChecks(unittest.TestCase):
	def test_reference_flow_conserves(self):
		self.assertLess(hamiltonian_flow_drift(0.1, 0.0), 1e-8)

	def test_report(self):
		report = hamiltonian_check(steps=2000)
		self.assertLess(report.identity_error, 1e-12)
		self.assertLess(report.inverse_error, 1e-12)
		self.assertLess(report.det_rho_error, 1e-8)
		self.assertLess(report.det_step_error, 1e-7)
		self.assertLess(report.pushforward_error, 1e-8)
		self.assertLess(report.drift, 0.05)
