# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

from collections.abc import Iterator, Mapping
from numbers import Rational as _RationalNumber

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from canard_lab.config import conf
from canard_lab.exceptions import DegreeOverflowError

XY_RING, X_GEN, Y_GEN = ring("x,y", QQ)

# exact coefficients live in the QQ domain, always in lowest terms
Rational = QQ.dtype
Monomial = tuple[int, int]

VARIABLES = ("x", "y")


def as_rational(value) -> Rational:
	if isinstance(value, QQ.dtype):
		return value
	if isinstance(value, bool):
		return QQ(int(value))
	if isinstance(value, int):
		return QQ(value)
	if isinstance(value, sympy.Rational):
		return QQ.from_sympy(value)
	if isinstance(value, _RationalNumber):
		return QQ(int(value.numerator), int(value.denominator))
	if isinstance(value, str):
		return QQ.from_sympy(sympy.Rational(value))
	raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


def rational_text(value: Rational) -> str:
	if value.denominator == 1:
		return str(value.numerator)
	return f"{value.numerator}/{value.denominator}"


def rational_float(value: Rational) -> float:
	return int(value.numerator) / int(value.denominator)


class BivariatePolynomial:
	"""Polynomial in x, y with exact rational coefficients.

	A thin wrapper over an element of the sympy ring QQ[x, y] that enforces the
	degree bound and gives the canonical text form.
	"""

	__slots__ = ("element", "max_degree")

	def __init__(self, terms: Mapping[Monomial, object] | None = None, max_degree: int | None = None):
		clean = {}
		for (i, j), coefficient in (terms or {}).items():
			if i < 0 or j < 0:
				raise ValueError(f"negative exponent in monomial {(i, j)}")
			coefficient = as_rational(coefficient)
			if coefficient:
				clean[(i, j)] = clean.get((i, j), QQ.zero) + coefficient
		self._set(XY_RING.from_dict(clean) if clean else XY_RING.zero, max_degree)

	def _set(self, element: PolyElement, max_degree: int | None):
		self.max_degree = max_degree or conf.max_degree
		for i, j in element.keys():
			if i + j > self.max_degree:
				raise DegreeOverflowError(
					f"monomial x^{i}*y^{j} exceeds the maximum degree {self.max_degree}"
				)
		self.element = element

	@classmethod
	def from_element(cls, element: PolyElement, max_degree: int | None = None) -> "BivariatePolynomial":
		poly = cls.__new__(cls)
		poly._set(element, max_degree)
		return poly

	@classmethod
	def constant(cls, value, max_degree: int | None = None) -> "BivariatePolynomial":
		return cls({(0, 0): value}, max_degree)

	@classmethod
	def monomial(cls, i: int, j: int, coefficient=1, max_degree: int | None = None):
		return cls({(i, j): coefficient}, max_degree)

	@classmethod
	def x(cls, max_degree: int | None = None) -> "BivariatePolynomial":
		return cls.from_element(X_GEN, max_degree)

	@classmethod
	def y(cls, max_degree: int | None = None) -> "BivariatePolynomial":
		return cls.from_element(Y_GEN, max_degree)

	@property
	def terms(self) -> dict[Monomial, Rational]:
		return dict(self.element.items())

	def _coerce(self, other) -> "BivariatePolynomial":
		if isinstance(other, BivariatePolynomial):
			return other
		return BivariatePolynomial.constant(other, self.max_degree)

	def _combine(self, other: "BivariatePolynomial", element: PolyElement) -> "BivariatePolynomial":
		return BivariatePolynomial.from_element(element, max(self.max_degree, other.max_degree))

	def __add__(self, other):
		other = self._coerce(other)
		return self._combine(other, self.element + other.element)

	__radd__ = __add__

	def __neg__(self):
		return BivariatePolynomial.from_element(-self.element, self.max_degree)

	def __sub__(self, other):
		other = self._coerce(other)
		return self._combine(other, self.element - other.element)

	def __rsub__(self, other):
		return self._coerce(other) - self

	def __mul__(self, other):
		if not isinstance(other, BivariatePolynomial):
			return BivariatePolynomial.from_element(self.element * as_rational(other), self.max_degree)
		return self._combine(other, self.element * other.element)

	__rmul__ = __mul__

	def __pow__(self, exponent: int):
		if exponent < 0:
			raise ValueError("negative powers are not polynomials")
		return BivariatePolynomial.from_element(self.element**exponent, self.max_degree)

	def __eq__(self, other):
		if isinstance(other, BivariatePolynomial):
			return self.element == other.element
		try:
			return self.element == self._coerce(other).element
		except TypeError:
			return NotImplemented

	def __hash__(self):
		return hash(frozenset(self.element.items()))

	def __bool__(self):
		return bool(self.element)

	def __iter__(self) -> Iterator[tuple[Monomial, Rational]]:
		return iter(sorted(self.element.items()))

	def __repr__(self):
		return f"BivariatePolynomial({self.to_text()!r})"

	def __str__(self):
		return self.to_text()

	def is_zero(self) -> bool:
		return not self.element

	def is_constant(self) -> bool:
		return all(monomial == (0, 0) for monomial in self.element.keys())

	@property
	def degree(self) -> int:
		"""Total degree; -1 for the zero polynomial."""
		return max((i + j for i, j in self.element.keys()), default=-1)

	def coefficient(self, i: int, j: int) -> Rational:
		return self.element.get((i, j), QQ.zero)

	def partial(self, var: str) -> "BivariatePolynomial":
		if var not in VARIABLES:
			raise ValueError(f"unknown variable {var!r}")
		return BivariatePolynomial.from_element(
			self.element.diff(X_GEN if var == "x" else Y_GEN), self.max_degree
		)

	def evaluate(self, x: float, y: float) -> float:
		return sum(rational_float(c) * x**i * y**j for (i, j), c in self.element.items())

	def to_text(self) -> str:
		"""Canonical text form: `c * x^i * y^j` terms sorted by (i, j), rationals as num/den."""
		if not self.element:
			return "0"

		parts = []
		for (i, j), c in self:
			factors = [rational_text(c)]
			if i:
				factors.append(f"x^{i}")
			if j:
				factors.append(f"y^{j}")
			parts.append(" * ".join(factors))
		return " + ".join(parts)

	@classmethod
	def from_text(cls, text: str, max_degree: int | None = None) -> "BivariatePolynomial":
		"""Inverse of `to_text`."""
		text = text.strip()
		if text == "0":
			return cls({}, max_degree)

		terms = {}
		for part in text.split(" + "):
			factors = [factor.strip() for factor in part.split("*")]
			coefficient, i, j = as_rational(factors[0]), 0, 0
			for factor in factors[1:]:
				var, _, power = factor.partition("^")
				if var == "x":
					i = int(power)
				elif var == "y":
					j = int(power)
				else:
					raise ValueError(f"cannot parse term {part!r}")
			terms[(i, j)] = terms.get((i, j), QQ.zero) + coefficient
		return cls(terms, max_degree)


def poly_arith(p: BivariatePolynomial, q: BivariatePolynomial, op: str) -> BivariatePolynomial:
	if op == "add":
		return p + q
	if op == "sub":
		return p - q
	if op == "mul":
		return p * q
	raise ValueError(f"unknown operation {op!r}, expected add, sub or mul")


def poly_partial(p: BivariatePolynomial, var: str) -> BivariatePolynomial:
	return p.partial(var)
