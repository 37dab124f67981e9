# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from canard_lab.conserved import (
	H,
	derivative_classification,
	gamma_h,
	grad_H,
	invariant_density,
	on_curve,
	on_curve_eps,
	p0_det_ratio_check,
	phi_h,
)
from canard_lab.exceptions import SingularDensityError
from canard_lab.integrators.maps import PlanarState, p0_jacobian, p0_map
from canard_lab.utils import central_difference_jacobian


class TestFirstIntegral(unittest.TestCase):
	def test_values(self):
		self.assertEqual(H(0, -0.5), 0)
		self.assertEqual(H(0, 0), 0.25)
		for t in (-2, 0, 3):
			self.assertAlmostEqual(H(t / 2, t * t / 4 - 0.5), 0, delta=1e-15)

	def test_gradient(self):
		numeric = central_difference_jacobian(lambda z: [H(z[0], z[1])], (0.3, -0.2))
		assert_allclose(grad_H(0.3, -0.2), numeric[0], atol=1e-9)


class TestInvariantCurve(unittest.TestCase):
	def test_gamma_h(self):
		zero = gamma_h(0, 0.1)
		self.assertEqual(zero.x, 0.0)
		self.assertAlmostEqual(zero.y, -0.5 - 0.01 / 8, delta=1e-16)
		s = gamma_h(1, 0.1)
		assert_allclose((s.x, s.y), (0.05, -0.49875), atol=1e-15)
		shifted = gamma_h(4, 0.1, x0=0.3)
		self.assertAlmostEqual(shifted.x, 0.5, delta=1e-15)
		self.assertTrue(on_curve(shifted.x, shifted.y, 0.1))

	def test_gamma_h_is_an_orbit(self):
		h = 0.01
		for n in range(-1000, 1001):
			s, t = gamma_h(n, h), gamma_h(n + 1, h)
			x, y = p0_map(s.x, s.y, h)
			self.assertLess(max(abs(x - t.x), abs(y - t.y)) / max(1.0, abs(t.y)), 1e-13)

	def test_phi_h(self):
		h = 0.1
		self.assertLess(abs(phi_h(*gamma_h(7, h).as_array(), h)), 1e-14)
		self.assertEqual(phi_h(0, 0, 0), -0.5)
		self.assertAlmostEqual(phi_h(0, -1, h), 0.5 - h * h / 8, delta=1e-15)

	def test_invariance_under_iteration(self):
		# forward along the attracting half, backward along the repelling half
		for h in (0.5, 0.1, 0.01):
			for start, step in ((-1000, h), (1000, -h)):
				s = gamma_h(start, h)
				x, y = s.x, s.y
				worst_phi = worst_step = 0.0
				for _ in range(1000):
					x_next, y_next = p0_map(x, y, step)
					worst_step = max(worst_step, abs(x_next - x - step / 2) / max(1.0, abs(x)))
					worst_phi = max(worst_phi, abs(phi_h(x_next, y_next, h)) / max(1.0, abs(y_next)))
					x, y = x_next, y_next
				self.assertLess(worst_phi, 1e-12)
				self.assertLess(worst_step, 1e-13)
				self.assertLess(abs(phi_h(x, y, h)), 1e-12)

	def test_curve_in_original_coordinates(self):
		epsilon, h = 0.04, 0.2
		x = 0.3
		y = x * x - epsilon / 2 - epsilon**2 * h * h / 8
		self.assertTrue(on_curve_eps(x, y, h, epsilon))
		self.assertFalse(on_curve_eps(x, y + 1e-6, h, epsilon))


class TestInvariantDensity(unittest.TestCase):
	def test_fixed_point(self):
		for h in (0.01, 0.1, 0.5):
			det, ratio = p0_det_ratio_check(0, 0, h)
			self.assertAlmostEqual(det, 1, delta=1e-14)
			self.assertAlmostEqual(ratio, 1, delta=1e-14)

	def test_reference_point(self):
		det, ratio = p0_det_ratio_check(0.3, 0.1, 0.1)
		self.assertLess(abs(det - ratio), 1e-10 * max(1.0, abs(ratio)))

	def test_random_points(self):
		rng = np.random.default_rng(31)
		for _ in range(100):
			x, y = rng.uniform(-1, 1, size=2)
			h = rng.uniform(0.01, 0.5)
			if abs(phi_h(x, y, h)) < 1e-3:
				continue
			det, ratio = p0_det_ratio_check(x, y, h)
			self.assertLess(abs(det - ratio), 1e-10 * max(1.0, abs(ratio)))

	def test_jacobian_against_finite_differences(self):
		numeric = central_difference_jacobian(lambda z: p0_map(z[0], z[1], 0.1), (0.3, 0.1))
		assert_allclose(p0_jacobian(0.3, 0.1, 0.1), numeric, atol=1e-6)

	def test_on_curve_is_singular(self):
		s = gamma_h(0, 0.5)
		with self.assertRaises(SingularDensityError):
			p0_det_ratio_check(s.x, s.y, 0.5)
		with self.assertRaises(SingularDensityError):
			invariant_density(s.x, s.y, 0.5)
		self.assertEqual(invariant_density(0, 0, 0), 2.0)


class TestDerivativeClassification(unittest.TestCase):
	def test_trichotomy(self):
		h = 0.1
		expected = {-1.0: "contracting", 0.0: "neutral", 1.0: "expanding"}
		for x, classification in expected.items():
			report = derivative_classification(x, h)
			self.assertEqual(report.classification, classification)
			c = 1 + h * h / 4
			self.assertAlmostEqual(report.value, (c * c - h * h * x * x) / (c - h * x) ** 2, delta=1e-15)

		self.assertLess(derivative_classification(-1.0, h).value, 1)
		self.assertEqual(derivative_classification(0.0, h).value, 1)
		self.assertGreater(derivative_classification(1.0, h).value, 1)

	def test_matches_jacobian_on_curve(self):
		h = 0.1
		for x in (-0.7, 0.4):
			y = x * x - 0.5 - h * h / 8
			self.assertAlmostEqual(
				derivative_classification(x, h).value, p0_jacobian(x, y, h)[0, 0], delta=1e-12
			)

	def test_pole(self):
		h = 0.1
		report = derivative_classification((1 + h * h / 4) / h, h)
		self.assertEqual(report.classification, "pole")
		self.assertLess(abs(report.f), 1e-12)
		self.assertTrue(math.isnan(report.value))
