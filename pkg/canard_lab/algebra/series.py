# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

from collections.abc import Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring
from sympy.polys.ring_series import rs_exp, rs_mul, rs_series_inversion, rs_subs

from canard_lab.algebra.polynomial import BivariatePolynomial, as_rational
from canard_lab.config import conf
from canard_lab.exceptions import (
	DegreeOverflowError,
	NotInvertibleError,
	OrderMismatchError,
	PreconditionError,
)

XYH_RING, X3, Y3, H3 = ring("x,y,h", QQ)


def _lift_poly(p: BivariatePolynomial, power: int = 0) -> PolyElement:
	if not p:
		return XYH_RING.zero
	return XYH_RING.from_dict({(i, j, power): c for (i, j), c in p})


class HSeries:
	"""Power series in the step size h, truncated at `truncation_order`.

	Stored as one element of QQ[x, y, h] with no power of h beyond the
	truncation; the arithmetic is sympy's truncated ring series.
	"""

	__slots__ = ("element", "truncation_order", "_max_degree")

	def __init__(
		self,
		coefficients: Sequence[BivariatePolynomial],
		truncation_order: int,
		max_degree: int | None = None,
	):
		if truncation_order < 0:
			raise ValueError("truncation order must be >= 0")

		element = XYH_RING.zero
		for k, p in enumerate(coefficients[: truncation_order + 1]):
			element += _lift_poly(p, k)
		degrees = [p.max_degree for p in coefficients] + [max_degree or conf.max_degree]
		self._set(element, truncation_order, max(degrees))

	def _set(self, element: PolyElement, truncation_order: int, max_degree: int):
		for i, j, k in element.keys():
			if k > truncation_order:
				raise ValueError(f"h^{k} past the truncation order {truncation_order}")
			if i + j > max_degree:
				raise DegreeOverflowError(
					f"monomial x^{i}*y^{j} in h^{k} exceeds the maximum degree {max_degree}"
				)
		self.element = element
		self.truncation_order = truncation_order
		self._max_degree = max_degree

	@classmethod
	def from_element(cls, element: PolyElement, truncation_order: int, max_degree: int) -> "HSeries":
		series = cls.__new__(cls)
		series._set(element, truncation_order, max_degree)
		return series

	@classmethod
	def from_terms(
		cls, terms: Mapping[int, object], truncation_order: int, max_degree: int | None = None,
	) -> "HSeries":
		"""Build from {power of h: coefficient}; powers beyond the truncation are dropped."""
		max_degree = max_degree or conf.max_degree
		element = XYH_RING.zero
		for power, value in terms.items():
			if power > truncation_order:
				continue
			if isinstance(value, BivariatePolynomial):
				max_degree = max(max_degree, value.max_degree)
				element += _lift_poly(value, power)
			else:
				element += XYH_RING.from_dict({(0, 0, power): as_rational(value)})
		return cls.from_element(element, truncation_order, max_degree)

	@classmethod
	def one(cls, truncation_order: int, max_degree: int | None = None) -> "HSeries":
		return cls.from_terms({0: 1}, truncation_order, max_degree)

	@classmethod
	def zero(cls, truncation_order: int, max_degree: int | None = None) -> "HSeries":
		return cls([], truncation_order, max_degree)

	@property
	def max_degree(self) -> int:
		return self._max_degree

	@property
	def prec(self) -> int:
		"""Precision in the ring series sense, exclusive of the truncation order."""
		return self.truncation_order + 1

	@property
	def coefficients(self) -> list[BivariatePolynomial]:
		return [self.coefficient(k) for k in range(self.truncation_order + 1)]

	def coefficient(self, k: int) -> BivariatePolynomial:
		return BivariatePolynomial(
			{(i, j): c for (i, j, power), c in self.element.items() if power == k}, self.max_degree
		)

	def _check(self, other: "HSeries"):
		if self.truncation_order != other.truncation_order:
			raise OrderMismatchError(
				f"truncation orders differ: {self.truncation_order} != {other.truncation_order}"
			)

	def _lift(self, other) -> "HSeries":
		if isinstance(other, HSeries):
			self._check(other)
			return other
		return HSeries.from_terms({0: other}, self.truncation_order, self.max_degree)

	def _new(self, element: PolyElement, other: "HSeries | None" = None) -> "HSeries":
		max_degree = self.max_degree if other is None else max(self.max_degree, other.max_degree)
		return HSeries.from_element(element, self.truncation_order, max_degree)

	def __add__(self, other):
		other = self._lift(other)
		return self._new(self.element + other.element, other)

	__radd__ = __add__

	def __neg__(self):
		return self._new(-self.element)

	def __sub__(self, other):
		other = self._lift(other)
		return self._new(self.element - other.element, other)

	def __rsub__(self, other):
		return self._lift(other) - self

	def __mul__(self, other):
		if isinstance(other, (HSeries, BivariatePolynomial)):
			return series_mul(self, self._lift(other))
		return self._new(self.element * as_rational(other))

	__rmul__ = __mul__

	def __eq__(self, other):
		if not isinstance(other, HSeries):
			return NotImplemented
		return self.truncation_order == other.truncation_order and self.element == other.element

	def __repr__(self):
		terms = [f"h^{k}: {c.to_text()}" for k, c in enumerate(self.coefficients) if c]
		return f"HSeries(order={self.truncation_order}, {{{', '.join(terms)}}})"

	def shift(self, power: int) -> "HSeries":
		"""Multiply by h^power, discarding what falls past the truncation."""
		kept = {
			(i, j, k + power): c
			for (i, j, k), c in self.element.items()
			if k + power <= self.truncation_order
		}
		return self._new(XYH_RING.from_dict(kept) if kept else XYH_RING.zero)

	def truncate(self, truncation_order: int) -> "HSeries":
		kept = {m: c for m, c in self.element.items() if m[2] <= truncation_order}
		element = XYH_RING.from_dict(kept) if kept else XYH_RING.zero
		return HSeries.from_element(element, truncation_order, self.max_degree)

	def is_unit(self) -> bool:
		return self.element == XYH_RING.one

	def lowest_nonzero(self) -> int | None:
		"""Smallest power of h with a nonzero coefficient."""
		return min((k for _, _, k in self.element.keys()), default=None)

	def evaluate(self, x: float, y: float, h: float) -> float:
		return sum(c.evaluate(x, y) * h**k for k, c in enumerate(self.coefficients))


def series_mul(a: HSeries, b: HSeries) -> HSeries:
	"""Cauchy product truncated at the common order."""
	a._check(b)
	return a._new(rs_mul(a.element, b.element, H3, a.prec), b)


def series_inverse(a: HSeries) -> HSeries:
	"""Multiplicative inverse; the h⁰ coefficient must be a nonzero constant."""
	leading = a.coefficient(0)
	if leading.is_zero() or not leading.is_constant():
		raise NotInvertibleError(
			f"h^0 coefficient must be a nonzero constant, got {leading.to_text()}"
		)

	try:
		inverse = rs_series_inversion(a.element, H3, a.prec)
	except (NotImplementedError, ValueError, ZeroDivisionError) as e:
		raise NotInvertibleError(str(e)) from e
	return a._new(inverse)


def series_exp(a: HSeries) -> HSeries:
	"""exp(a) for a series without constant term."""
	if not a.coefficient(0).is_zero():
		raise PreconditionError("series_exp needs a vanishing h^0 coefficient")
	if not a.element:
		return HSeries.one(a.truncation_order, a.max_degree)
	return a._new(rs_exp(a.element, H3, a.prec))


def series_compose(
	p: BivariatePolynomial, x_series: HSeries, y_series: HSeries
) -> HSeries:
	"""p(x̃, ỹ) for series x̃, ỹ."""
	x_series._check(y_series)
	max_degree = max(p.max_degree, x_series.max_degree, y_series.max_degree)
	element = rs_subs(_lift_poly(p), {X3: x_series.element, Y3: y_series.element}, H3, x_series.prec)
	return HSeries.from_element(element, x_series.truncation_order, max_degree)


def default_order() -> int:
	return conf.series_order or 6
