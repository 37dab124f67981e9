# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from canard_lab.conserved import gamma_h
from canard_lab.exceptions import PreconditionError
from canard_lab.integrators.maps import p0_jacobian
from canard_lab.melnikov import adjoint_orbit, check_window


class TestJacobianAtCentre(unittest.TestCase):
	def test_printed_entries(self):
		h = 0.1
		c = 1 + h * h / 4
		expected = [
			[(1 - h**4 / 16) / c**2, -h / c],
			[(h + h**3 / 4) / c**2, (1 - h * h / 4) / c],
		]
		assert_allclose(p0_jacobian(0.0, 0.0, h), expected, rtol=1e-14)

	def test_small_step(self):
		assert_allclose(p0_jacobian(0.3, -0.2, 1e-9), np.eye(2), atol=1e-8)


class TestAdjointOrbit(unittest.TestCase):
	def test_normalization(self):
		orbit = adjoint_orbit(0.01, 10)
		self.assertEqual([s.n for s in orbit], list(range(-10, 11)))
		self.assertEqual(orbit[10].psi.tolist(), [0.0, 1.0])
		# γ_h′(0) is horizontal
		self.assertEqual(float(orbit[10].psi @ np.array([1.0, 0.0])), 0.0)

	def test_matches_continuous_solution(self):
		h = 0.01
		orbit = {s.n: s.psi for s in adjoint_orbit(h, 300)}
		for n in (-200, -100, 100, 200):
			t = n * h
			decay = math.exp(-t * t / 2)
			assert_allclose(orbit[n], (-t * decay, decay), atol=0.02)

	def test_adjoint_relation(self):
		h = 0.05
		orbit = {s.n: s.psi for s in adjoint_orbit(h, 40)}
		for n in range(-40, 40):
			s = gamma_h(n, h)
			assert_allclose(p0_jacobian(s.x, s.y, h).T @ orbit[n + 1], orbit[n], atol=1e-14)

	def test_decays_both_ways(self):
		orbit = adjoint_orbit(0.01, 800)
		self.assertLess(orbit[0].norm, 1e-10)
		self.assertLess(orbit[-1].norm, 1e-10)
		self.assertEqual(orbit[800].norm, 1.0)


class TestWindowGuard(unittest.TestCase):
	def test_guards(self):
		check_window(0.01, 2000)
		with self.assertRaises(PreconditionError):
			check_window(0.01, 0)
		with self.assertRaises(PreconditionError):
			check_window(0.01, 3000)
		# pole of P⁰ at x ≈ 2.06 for h = 0.5
		with self.assertRaises(PreconditionError):
			check_window(0.5, 9)
		with self.assertRaises(PreconditionError):
			adjoint_orbit(0.01, 3000)
