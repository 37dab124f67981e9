from canard_lab.algebra.polynomial import (
	BivariatePolynomial,
	Rational,
	poly_arith,
	poly_partial,
)
from canard_lab.algebra.series import (
	HSeries,
	series_compose,
	series_exp,
	series_inverse,
	series_mul,
)
