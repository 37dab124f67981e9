# Copyright (c) 2026, Canard Lab Contributors
# See license.txt

import random
import unittest

from sympy.polys.domains import QQ

from canard_lab.algebra import BivariatePolynomial as P
from canard_lab.algebra import poly_arith, poly_partial
from canard_lab.algebra.polynomial import X_GEN, XY_RING, Y_GEN
from canard_lab.exceptions import DegreeOverflowError

X = P.x()
Y = P.y()


def random_poly(rng: random.Random, degree: int = 3) -> P:
	return P(
		{
			(i, j): QQ(rng.randint(-5, 5), rng.randint(1, 4))
			for i in range(degree + 1)
			for j in range(degree + 1 - i)
			if rng.random() < 0.6
		}
	)


class TestBivariatePolynomial(unittest.TestCase):
	def test_arith_examples(self):
		self.assertEqual(poly_arith(X, Y, "mul"), P({(1, 1): 1}))
		self.assertEqual(poly_arith(X * X - Y, Y, "add"), P({(2, 0): 1}))
		self.assertEqual(poly_arith(1 + X, 1 + X, "mul"), P({(0, 0): 1, (1, 0): 2, (2, 0): 1}))

	def test_zero_terms_are_pruned(self):
		p = (X - X) + 0 * Y
		self.assertTrue(p.is_zero())
		self.assertEqual(p.terms, {})
		self.assertEqual(p.degree, -1)

	def test_rationals_in_lowest_terms(self):
		p = P({(0, 0): QQ(2, 4), (1, 0): QQ(-3, 6)})
		self.assertEqual(p.coefficient(0, 0), QQ(1, 2))
		self.assertEqual(p.coefficient(1, 0).denominator, 2)
		self.assertEqual(p.coefficient(1, 0).numerator, -1)

	def test_partial_examples(self):
		self.assertEqual(poly_partial(X * X * Y, "x"), 2 * X * Y)
		self.assertTrue(poly_partial(X * X, "y").is_zero())
		self.assertEqual(poly_partial(Y**3 - X * X * Y, "y"), 3 * Y * Y - X * X)

	def test_distributive_and_mixed_partials(self):
		rng = random.Random(7)
		for _ in range(25):
			p, q, r = (random_poly(rng) for _ in range(3))
			self.assertEqual((p + q) * r, p * r + q * r)
			self.assertEqual(p.partial("x").partial("y"), p.partial("y").partial("x"))

	def test_text_form_is_canonical(self):
		p = P({(2, 0): QQ(-1, 2), (0, 1): 1, (0, 0): QQ(1, 4)})
		self.assertEqual(p.to_text(), "1/4 + 1 * y^1 + -1/2 * x^2")
		self.assertEqual(P.from_text(p.to_text()), p)
		self.assertEqual(P().to_text(), "0")

	def test_degree_overflow(self):
		with self.assertRaises(DegreeOverflowError):
			P({(7, 7): 1}, max_degree=12)
		with self.assertRaises(DegreeOverflowError):
			P.x(max_degree=3) ** 4

	def test_float_coefficients_are_rejected(self):
		with self.assertRaises(TypeError):
			P({(0, 0): 0.5})

	def test_evaluate(self):
		p = 1 + 2 * X * Y - Y * Y
		self.assertAlmostEqual(p.evaluate(0.5, 2.0), 1 + 2.0 - 4.0)

	def test_backed_by_the_sympy_ring(self):
		p = X * X - Y * QQ(1, 2)
		self.assertEqual(p.element.ring, XY_RING)
		self.assertEqual(p.element, X_GEN**2 - Y_GEN * QQ(1, 2))
		self.assertEqual(P.from_element(p.element), p)
		self.assertEqual(p.coefficient(0, 1), QQ(-1, 2))
