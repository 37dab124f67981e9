# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import math
from dataclasses import dataclass

import numpy as np

from canard_lab.exceptions import DomainError, SingularStepError
from canard_lab.integrators.field import ZERO_COEFFICIENTS, Coefficients, canard_field, k2_field
from canard_lab.integrators.steppers import kahan_denominator, kahan_step


@dataclass(frozen=True, slots=True)
class PlanarState:
	x: float
	y: float

	def __post_init__(self):
		if not (math.isfinite(self.x) and math.isfinite(self.y)):
			raise DomainError(f"state must be finite, got ({self.x}, {self.y})")

	def as_array(self) -> np.ndarray:
		return np.array([self.x, self.y])

	@classmethod
	def from_array(cls, z) -> "PlanarState":
		return cls(float(z[0]), float(z[1]))


@dataclass(frozen=True)
class CanardParams:
	"""Frozen parameters of one map.

	In original coordinates (epsilon, lam, h) are ε, λ, h. The chart-K2 maps read
	lam as λ₂, r as r₂ and h as h₂, and ignore epsilon.
	"""

	epsilon: float = 0.0
	lam: float = 0.0
	h: float = 0.01
	a1: float = 0.0
	a2: float = 0.0
	a4: float = 0.0
	a5: float = 0.0
	r: float = 0.0

	def __post_init__(self):
		if self.epsilon < 0:
			raise DomainError(f"epsilon must be >= 0, got {self.epsilon}")
		if not self.h > 0:
			raise DomainError(f"h must be > 0, got {self.h}")

	@property
	def a(self) -> Coefficients:
		return (self.a1, self.a2, self.a4, self.a5)

	@property
	def unperturbed(self) -> bool:
		return not any(self.a)


def _is_zero(a: Coefficients) -> bool:
	return not any(a)


def _checked(denominator: float, x: float, y: float, h: float) -> float:
	if denominator == 0 or not math.isfinite(denominator):
		raise SingularStepError((x, y), h)
	return denominator


# original coordinates


def canard_kahan_step(epsilon: float, lam: float, h: float, a: Coefficients, x: float, y: float):
	"""Kahan map P_K in original coordinates for a signed step h (h < 0 inverts)."""
	if not _is_zero(a):
		z = kahan_step(canard_field(epsilon, lam, a), (x, y), h)
		return float(z[0]), float(z[1])

	d = _checked(1 - h * x + h * h * epsilon / 4, x, y, h)
	x_next = (x - h * y - h * h * epsilon * x / 4 + h * h * lam * epsilon / 2) / d
	y_next = (
		y
		- h * y * x
		- h * h * epsilon * x * x / 2
		- h * lam * epsilon
		+ h * h * x * lam * epsilon
		+ h * epsilon * x
		- h * h * epsilon * y / 4
	) / d
	return x_next, y_next


def canard_kahan_map(params: CanardParams, s: PlanarState) -> PlanarState:
	return PlanarState(*canard_kahan_step(params.epsilon, params.lam, params.h, params.a, s.x, s.y))


def canard_euler_map(params: CanardParams, s: PlanarState) -> PlanarState:
	a1, a2, a4, a5 = params.a
	h, epsilon, x, y = params.h, params.epsilon, s.x, s.y
	return PlanarState(
		x + h * (x * x - y + epsilon * a1 * x - a2 * x * y),
		y + h * epsilon * (x - params.lam + a4 * x * x + a5 * y),
	)


# chart K2


def k2_kahan_step(h: float, lambda2: float, r2: float, a: Coefficients, x: float, y: float):
	"""Rescaled Kahan map for a signed step h; at r₂ = λ₂ = 0, a = 0 this is P⁰."""
	if r2 and not _is_zero(a):
		z = kahan_step(k2_field(lambda2, r2, a), (x, y), h)
		return float(z[0]), float(z[1])

	d = _checked(1 - h * x + h * h / 4, x, y, h)
	x_next = (x - h * y - h * h * x / 4 + h * h * lambda2 / 2) / d
	y_next = (
		y - h * y * x - h * h * x * x / 2 - h * lambda2 + h * h * x * lambda2 + h * x - h * h * y / 4
	) / d
	return x_next, y_next


def k2_kahan_map(
	h: float, lambda2: float, r2: float, a: Coefficients, s: PlanarState
) -> PlanarState:
	return PlanarState(*k2_kahan_step(h, lambda2, r2, a, s.x, s.y))


def k2_kahan_map_a1(h: float, lambda2: float, r2: float, s: PlanarState) -> PlanarState:
	"""Printed closed form for a₁ = 1, a₂ = a₄ = a₅ = 0."""
	x, y, r = s.x, s.y, r2
	d = _checked(1 - h * x - h * r / 2 + h * h / 4, x, y, h)
	x_next = (x - h * y + h * x * r / 2 - h * h * x / 4 + h * h * lambda2 / 2) / d
	y_next = (
		y
		- h * y * x
		- h * y * r / 2
		- h * h * x * x / 2
		- h * lambda2
		+ h * h * x * lambda2
		+ h * x
		+ h * h * lambda2 * r / 2
		- h * h * y / 4
	) / d
	return PlanarState(x_next, y_next)


def k2_euler_map(
	h: float, lambda2: float, r2: float, s: PlanarState, a: Coefficients = ZERO_COEFFICIENTS
) -> PlanarState:
	a1, a2, a4, a5 = a
	x, y = s.x, s.y
	return PlanarState(
		x + h * (x * x - y + r2 * (a1 * x - a2 * x * y)),
		y + h * (x - lambda2 + r2 * (a4 * x * x + a5 * y)),
	)


def p0_map(x: float, y: float, h: float) -> tuple[float, float]:
	return k2_kahan_step(h, 0.0, 0.0, ZERO_COEFFICIENTS, x, y)


def p0_jacobian(x: float, y: float, h: float) -> np.ndarray:
	"""Closed-form Jacobian of P⁰."""
	d = 1 - h * x + h * h / 4
	if d == 0:
		raise SingularStepError((x, y), h)

	return np.array(
		[
			[(1 - h * h * y - h**4 / 16) / d**2, -h / d],
			[
				(h - h * h * x + h**3 * (2 * x * x - 2 * y + 1) / 4 - h**4 * x / 4) / d**2,
				(1 - h * x - h * h / 4) / d,
			],
		]
	)


# pole detection, see `iterate`


def canard_denominator(params: CanardParams, s: PlanarState, h: float) -> float:
	if params.unperturbed:
		return 1 - h * s.x + h * h * params.epsilon / 4
	return kahan_denominator(canard_field(params.epsilon, params.lam, params.a), (s.x, s.y), h)


def k2_denominator(params: CanardParams, s: PlanarState, h: float) -> float:
	if params.unperturbed or not params.r:
		return 1 - h * s.x + h * h / 4
	return kahan_denominator(k2_field(params.lam, params.r, params.a), (s.x, s.y), h)


# slow subsystems


def slow_subsystem_roots(x: float, h: float, scheme: str = "kahan") -> tuple[float, ...]:
	"""Images of x under the slow subsystem (ε = 0, λ = 0) of the given scheme.

	Kahan: x̃² − (h/2)x̃ = x² + (h/2)x, roots x + h/2 and −x; only the first carries dynamics.
	Euler: x̃² = x² + hx, roots ±√(x² + hx), empty on (−h, 0).
	"""
	if scheme == "kahan":
		return (x + h / 2, -x)
	if scheme == "euler":
		radicand = x * x + h * x
		if radicand < 0:
			return ()
		root = math.sqrt(radicand)
		return (root, -root)
	raise ValueError(f"unknown scheme {scheme!r}")


def slow_subsystem_residual(x: float, x_next: float, h: float, scheme: str = "kahan") -> float:
	if scheme == "kahan":
		return x_next * x_next - h * x_next / 2 - x * x - h * x / 2
	if scheme == "euler":
		return x_next * x_next - x * x - h * x
	raise ValueError(f"unknown scheme {scheme!r}")
