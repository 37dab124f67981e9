# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import unittest

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_series_inversion

from canard_lab.algebra import BivariatePolynomial as P
from canard_lab.algebra import HSeries, series_compose, series_exp, series_inverse, series_mul
from canard_lab.algebra.series import H3, XYH_RING
from canard_lab.exceptions import NotInvertibleError, OrderMismatchError, PreconditionError

X = P.x()
Y = P.y()


def series(terms, order):
	return HSeries.from_terms(terms, order)


class TestHSeries(unittest.TestCase):
	def test_mul_examples(self):
		self.assertEqual(series_mul(HSeries.one(3), HSeries.one(3)), HSeries.one(3))
		self.assertEqual(series_mul(series({1: X}, 3), series({1: Y}, 3)), series({2: X * Y}, 3))
		self.assertEqual(
			series_mul(series({0: 1, 1: X}, 2), series({0: 1, 1: -X}, 2)),
			series({0: 1, 2: -X * X}, 2),
		)

	def test_mul_truncates(self):
		product = series_mul(series({2: X}, 3), series({2: Y}, 3))
		self.assertIsNone(product.lowest_nonzero())

	def test_mismatched_orders(self):
		with self.assertRaises(OrderMismatchError):
			series_mul(HSeries.one(2), HSeries.one(3))

	def test_inverse_examples(self):
		self.assertEqual(series_inverse(HSeries.one(4)), HSeries.one(4))
		self.assertEqual(
			series_inverse(series({0: 1, 1: -X}, 3)),
			series({0: 1, 1: X, 2: X * X, 3: X**3}, 3),
		)
		self.assertEqual(
			series_inverse(series({0: 1, 1: -X, 2: QQ(1, 4)}, 2)),
			series({0: 1, 1: X, 2: X * X - QQ(1, 4)}, 2),
		)

	def test_inverse_normalizes_constant(self):
		inverse = series_inverse(series({0: 2, 1: X}, 2))
		self.assertEqual(inverse.coefficient(0), QQ(1, 2))
		self.assertTrue(series_mul(series({0: 2, 1: X}, 2), inverse).is_unit())

	def test_inverse_not_invertible(self):
		with self.assertRaises(NotInvertibleError):
			series_inverse(series({1: X}, 2))
		with self.assertRaises(NotInvertibleError):
			series_inverse(series({0: 1 + X}, 2))

	def test_inverse_property(self):
		a = series({0: 1, 1: X - Y, 2: X * Y + QQ(1, 3), 4: Y**2}, 5)
		self.assertTrue(series_mul(a, series_inverse(a)).is_unit())

	def test_exp_examples(self):
		self.assertEqual(series_exp(HSeries.zero(3)), HSeries.one(3))
		a = X - 2 * Y
		self.assertEqual(
			series_exp(series({1: a}, 2)), series({0: 1, 1: a, 2: a * a * QQ(1, 2)}, 2)
		)
		self.assertEqual(series_exp(series({2: Y}, 3)), series({0: 1, 2: Y}, 3))

	def test_exp_of_negative_is_inverse(self):
		a = series({1: X * Y, 2: Y - X, 3: QQ(2, 3) * X}, 5)
		self.assertTrue(series_mul(series_exp(a), series_exp(-a)).is_unit())

	def test_exp_needs_vanishing_constant(self):
		with self.assertRaises(PreconditionError):
			series_exp(HSeries.one(2))

	def test_shift_and_evaluate(self):
		s = series({0: X, 1: Y}, 3).shift(2)
		self.assertEqual(s, series({2: X, 3: Y}, 3))
		self.assertAlmostEqual(s.evaluate(1.0, 2.0, 0.5), 0.25 + 2 * 0.125)

	def test_compose(self):
		composed = series_compose(X * Y, series({0: X, 1: 1}, 2), series({0: Y}, 2))
		self.assertEqual(composed, series({0: X * Y, 1: Y}, 2))

	def test_backed_by_ring_series(self):
		a = series({0: 1, 1: -X, 2: QQ(1, 4)}, 4)
		self.assertEqual(a.element.ring, XYH_RING)
		self.assertEqual(series_inverse(a).element, rs_series_inversion(a.element, H3, 5))
		self.assertEqual(a.coefficients, [P.constant(1), -X, P.constant(QQ(1, 4)), P(), P()])
