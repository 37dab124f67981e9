# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

"""First-order parameter derivatives of the rescaled Kahan map at r = λ = 0.

	F(z, r, λ) = P⁰(z) + λĴ(x, h) + rĜ(z, h) + O(2)
"""

import numpy as np

from canard_lab.config import conf
from canard_lab.exceptions import SingularStepError
from canard_lab.integrators.field import ZERO_COEFFICIENTS, Coefficients
from canard_lab.integrators.maps import k2_kahan_step


def _denominator(x: float, y: float, h: float) -> float:
	d = 1 - h * x + h * h / 4
	if d == 0:
		raise SingularStepError((x, y), h)
	return d


def hatJ(x: float, h: float) -> np.ndarray:
	"""(h²/2, h²x − h) / (1 − hx + h²/4)"""
	d = _denominator(x, 0.0, h)
	return np.array([h * h / 2, h * h * x - h]) / d


def hatG_a1(x: float, y: float, h: float) -> np.ndarray:
	"""Closed form of Ĝ for a₁ = 1, a₂ = a₄ = a₅ = 0."""
	d = _denominator(x, y, h)
	return np.array(
		[
			h * x - h * h * y / 2 - h * h * x * x / 2,
			h * h * x / 2 - h**3 * y / 4 - h**3 * x * x / 4,
		]
	) / (d * d)


def _hatG_numeric(x: float, y: float, h: float, a: Coefficients) -> np.ndarray:
	step = conf.fd_step or 1e-6
	forward = np.array(k2_kahan_step(h, 0.0, step, a, x, y))
	backward = np.array(k2_kahan_step(h, 0.0, -step, a, x, y))
	return (forward - backward) / (2 * step)


def hatG(x: float, y: float, h: float, a: Coefficients = ZERO_COEFFICIENTS) -> np.ndarray:
	"""∂F/∂r at r = λ = 0.

	Ĝ is linear in a: the a₁ part uses the closed form, the rest a central
	difference in r.
	"""
	a1, a2, a4, a5 = a
	_denominator(x, y, h)

	value = np.zeros(2)
	if a1:
		value = value + a1 * hatG_a1(x, y, h)
	if a2 or a4 or a5:
		value = value + _hatG_numeric(x, y, h, (0.0, a2, a4, a5))
	return value
