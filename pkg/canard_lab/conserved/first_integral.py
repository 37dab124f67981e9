# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import math

import numpy as np

from canard_lab.exceptions import SingularDensityError
from canard_lab.integrators.maps import PlanarState, p0_jacobian, p0_map
from canard_lab.utils import _dict


def H(x: float, y: float) -> float:
	"""First integral ½e^{−2y}(y − x² + ½) of the rescaled chart-K2 flow."""
	return 0.5 * math.exp(-2 * y) * (y - x * x + 0.5)


def grad_H(x: float, y: float) -> np.ndarray:
	weight = math.exp(-2 * y)
	return np.array([-x * weight, weight * (0.5 - (y - x * x + 0.5))])


def gamma_h(n: int, h: float, x0: float = 0.0) -> PlanarState:
	"""Point n of the orbit on S_h through (x0, x0² − ½ − h²/8).

	x0 = 0 gives the separatrix γ_h(n) = (hn/2, h²n²/4 − ½ − h²/8).
	"""
	x = x0 + h * n / 2
	return PlanarState(x, x * x - 0.5 - h * h / 8)


def phi_h(x: float, y: float, h: float) -> float:
	return x * x - y - 0.5 - h * h / 8


def on_curve(x: float, y: float, h: float, tol: float = 1e-12) -> bool:
	return abs(phi_h(x, y, h)) <= tol


def phi_h_eps(x: float, y: float, h: float, epsilon: float) -> float:
	"""Defining function of the invariant parabola of P_K⁰ in original coordinates (λ = 0)."""
	return x * x - y - epsilon / 2 - epsilon * epsilon * h * h / 8


def on_curve_eps(x: float, y: float, h: float, epsilon: float, tol: float = 1e-12) -> bool:
	return abs(phi_h_eps(x, y, h, epsilon)) <= tol


def invariant_density(x: float, y: float, h: float) -> float:
	"""Density 1/|φ_h| of the invariant measures above and below S_h."""
	value = phi_h(x, y, h)
	if value == 0:
		raise SingularDensityError(f"({x}, {y}) lies on S_h for h={h}")
	return 1 / abs(value)


def p0_det_ratio_check(x: float, y: float, h: float) -> tuple[float, float]:
	"""(det DP⁰(z), φ_h(P⁰(z))/φ_h(z)); the two agree off S_h."""
	value = phi_h(x, y, h)
	if value == 0:
		raise SingularDensityError(f"({x}, {y}) lies on S_h for h={h}")

	x_next, y_next = p0_map(x, y, h)
	return float(np.linalg.det(p0_jacobian(x, y, h))), phi_h(x_next, y_next, h) / value


def derivative_classification(x: float, h: float) -> _dict:
	"""Classify ∂x̃/∂x = f_h(x)/g_h(x) of P⁰ along S_h.

	f_h = (1 + h²/4)² − h²x² and g_h = (1 − hx + h²/4)²; both vanish at
	x* = (1 + h²/4)/h, the pole on the right branch.
	"""
	c = 1 + h * h / 4
	f = c * c - h * h * x * x
	g = (c - h * x) ** 2
	pole = c / h if h else math.inf

	if abs(c - h * x) <= 1e-12 * c:
		value, classification = math.nan, "pole"
	else:
		value = f / g
		if x < 0:
			classification = "contracting"
		elif x == 0:
			classification = "neutral"
		else:
			classification = "expanding"

	return _dict(x=x, h=h, f=f, g=g, value=value, pole=pole, classification=classification)
