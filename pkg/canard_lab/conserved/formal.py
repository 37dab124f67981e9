# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

"""Formal conserved quantity of P⁰ by coefficient matching.

Every quantity here carries the common weight e^{−2y}, so only its polynomial
part is stored:

	H̄(x, y, h) = e^{−2y} (½(y − x² + ½) + h²p₁ + h⁴p₂ + …)

Along one step e^{−2ỹ} = e^{−2y}e^{−2(ỹ − y)}, and ỹ − y = O(h), so the
transported quantity is again a series in h with polynomial coefficients.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
import sympy
from sympy.polys.domains import QQ

from canard_lab.algebra.polynomial import BivariatePolynomial, rational_float
from canard_lab.algebra.series import (
	HSeries,
	default_order,
	series_compose,
	series_exp,
	series_inverse,
	series_mul,
)
from canard_lab.config import conf
from canard_lab.exceptions import DerivationFailure, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpWeightedPoly:
	"""poly(x, y)·e^{−2y}"""

	poly: BivariatePolynomial

	@cached_property
	def _float_terms(self) -> list[tuple[int, int, float]]:
		return [(i, j, rational_float(c)) for (i, j), c in self.poly]

	def polynomial_part(self, x, y):
		return sum(c * x**i * y**j for i, j, c in self._float_terms)

	def evaluate(self, x, y):
		"""Works elementwise on numpy arrays."""
		return np.exp(-2 * y) * self.polynomial_part(x, y)

	def to_text(self) -> str:
		return self.poly.to_text()


def ansatz_degree(i: int) -> int:
	return 2 * (i + 1)


@dataclass(frozen=True)
class FormalConservedQuantity:
	"""H plus the corrections for h², h⁴, … up to `order`."""

	order: int = 0
	corrections: tuple[ExpWeightedPoly, ...] = field(default_factory=tuple)

	def __post_init__(self):
		if self.order < 0 or self.order % 2:
			raise PreconditionError(f"order must be an even integer >= 0, got {self.order}")
		if len(self.corrections) != self.order // 2:
			raise PreconditionError(
				f"order {self.order} needs {self.order // 2} corrections, got {len(self.corrections)}"
			)
		for i, correction in enumerate(self.corrections, start=1):
			# one retry of the ansatz may add two degrees
			if correction.poly.degree > ansatz_degree(i) + 2:
				raise PreconditionError(f"correction {2 * i} has degree {correction.poly.degree}")

	def terms(self) -> list[BivariatePolynomial]:
		"""Polynomial parts for h⁰, h², h⁴, …"""
		return [bracket(self.max_degree)] + [c.poly for c in self.corrections]

	@property
	def max_degree(self) -> int:
		return max([conf.max_degree or 12] + [c.poly.max_degree for c in self.corrections])

	def extend(self, correction: ExpWeightedPoly) -> "FormalConservedQuantity":
		return FormalConservedQuantity(self.order + 2, self.corrections + (correction,))


def bracket(max_degree: int | None = None) -> BivariatePolynomial:
	"""½(y − x² + ½), the polynomial part of H."""
	x = BivariatePolynomial.x(max_degree)
	y = BivariatePolynomial.y(max_degree)
	return (y - x * x + QQ(1, 2)) * QQ(1, 2)


def transport_operator(p: BivariatePolynomial) -> BivariatePolynomial:
	"""(x² − y)∂ₓp + x(∂ᵧp − 2p), the leading h-coefficient of p transported by P⁰."""
	x = BivariatePolynomial.x(p.max_degree + 1)
	y = BivariatePolynomial.y(p.max_degree + 1)
	return (x * x - y) * p.partial("x") + x * (p.partial("y") - p * 2)


@lru_cache(maxsize=16)
def p0_series(order: int, max_degree: int) -> tuple[HSeries, HSeries, HSeries]:
	"""(x̃, ỹ, e^{−2(ỹ − y)}) of P⁰ as series in h.

	x̃ − x = h(x² − y − hx/2)/D and ỹ − y = h(x − hx²/2 − hy/2)/D with
	D = 1 − hx + h²/4 expanded as a formal geometric series.
	"""
	x = BivariatePolynomial.x(max_degree)
	y = BivariatePolynomial.y(max_degree)
	half = QQ(1, 2)

	inverse = series_inverse(HSeries.from_terms({0: 1, 1: -x, 2: QQ(1, 4)}, order, max_degree))
	dx = series_mul(HSeries.from_terms({1: x * x - y, 2: -x * half}, order, max_degree), inverse)
	dy = series_mul(HSeries.from_terms({1: x, 2: -(x * x + y) * half}, order, max_degree), inverse)

	x_series = dx + HSeries.from_terms({0: x}, order, max_degree)
	y_series = dy + HSeries.from_terms({0: y}, order, max_degree)
	return x_series, y_series, series_exp(dy * -2)


def transported_series(p: BivariatePolynomial, order: int, max_degree: int) -> HSeries:
	"""Polynomial part of e^{−2ỹ}p(x̃, ỹ) after factoring out e^{−2y}."""
	x_series, y_series, weight = p0_series(order, max_degree)
	return series_mul(weight, series_compose(p, x_series, y_series))


def expand_H_of_step(order: int | None = None) -> HSeries:
	"""H(P⁰(x, y, h)) up to h^order, weight factored out.

	The h³ coefficient is the polynomial part of G₃.
	"""
	order = default_order() if order is None else order
	if order < 3:
		raise PreconditionError(f"expansion order must be >= 3, got {order}")

	max_degree = max(conf.max_degree or 12, order + 4)
	return transported_series(bracket(max_degree), order, max_degree)


def defect_series(fcq: FormalConservedQuantity, order: int) -> HSeries:
	"""H̄(P⁰(z)) − H̄(z) up to h^order, weight factored out."""
	max_degree = max(fcq.max_degree, ansatz_degree(fcq.order // 2) + order + 4)
	total = HSeries.zero(order, max_degree)
	for j, p in enumerate(fcq.terms()):
		if 2 * j > order:
			break
		moved = transported_series(p, order, max_degree) - HSeries.from_terms({0: p}, order, max_degree)
		total = total + moved.shift(2 * j)
	return total


def _solve_transport(rhs: BivariatePolynomial, degree: int) -> BivariatePolynomial:
	"""Exact solution p of degree <= `degree` with transport_operator(p) = rhs.

	Free coefficients of the row-reduced system are set to zero; with the
	unknowns ordered by exponent this fixes the x² coefficient, the kernel
	being spanned by y − x² + ½.
	"""
	unknowns = [(a, b) for a in range(degree + 1) for b in range(degree + 1 - a)]
	images = [
		transport_operator(BivariatePolynomial.monomial(a, b, max_degree=rhs.max_degree))
		for a, b in unknowns
	]
	rows = sorted({m for image in images for m, _ in image} | {m for m, _ in rhs})
	index = {m: k for k, m in enumerate(rows)}

	matrix = sympy.zeros(len(rows), len(unknowns))
	for column, image in enumerate(images):
		for monomial, c in image:
			matrix[index[monomial], column] = QQ.to_sympy(c)
	target = sympy.Matrix([QQ.to_sympy(rhs.coefficient(*m)) for m in rows])

	solution, params = matrix.gauss_jordan_solve(target)
	solution = solution.subs({t: 0 for t in params})
	return BivariatePolynomial(
		{m: QQ.from_sympy(v) for m, v in zip(unknowns, solution) if v != 0},
		rhs.max_degree,
	)


def solve_correction(i: int, previous: FormalConservedQuantity) -> ExpWeightedPoly:
	"""Polynomial part of H̄_{2i}, cancelling the h^{2i+1} defect of `previous`.

	:param i: correction index, H̄_{2i} multiplies h^{2i}
	:param previous: the quantity corrected through order 2(i − 1)
	"""
	if i < 1:
		raise PreconditionError(f"correction index must be >= 1, got {i}")
	if previous.order != 2 * (i - 1):
		raise PreconditionError(
			f"correction {2 * i} needs a quantity of order {2 * (i - 1)}, got {previous.order}"
		)

	order = 2 * i + 1
	degree = ansatz_degree(i)
	defect = defect_series(previous, order)
	rhs = -defect.coefficient(order)
	rhs = BivariatePolynomial.from_element(rhs.element, max(rhs.max_degree, degree + order + 4))

	for attempt in (degree, degree + 2):
		try:
			p = _solve_transport(rhs, attempt)
		except ValueError:
			logger.info("no solution for H̄_%d at ansatz degree %d, retrying", 2 * i, attempt)
			continue
		logger.debug("H̄_%d = %s", 2 * i, p.to_text())
		return ExpWeightedPoly(p)

	raise DerivationFailure(f"transport equation for H̄_{2 * i} is inconsistent up to degree {degree + 2}")


@lru_cache(maxsize=8)
def derive_conserved_quantity(order: int = 2) -> FormalConservedQuantity:
	if order < 0 or order % 2:
		raise PreconditionError(f"order must be an even integer >= 0, got {order}")

	fcq = FormalConservedQuantity()
	for i in range(1, order // 2 + 1):
		fcq = fcq.extend(solve_correction(i, fcq))
	return fcq


def hbar_eval(x, y, h: float, fcq: FormalConservedQuantity):
	"""H + Σ h^{2i}e^{−2y}H̄_{2i}; accepts scalars or numpy arrays."""
	value = 0.5 * np.exp(-2 * y) * (y - x * x + 0.5)
	for i, correction in enumerate(fcq.corrections, start=1):
		value = value + h ** (2 * i) * correction.evaluate(x, y)
	return value
