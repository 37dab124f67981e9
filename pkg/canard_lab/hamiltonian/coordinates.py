# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

"""Canonical coordinates for the rescaled chart-K2 flow.

On U = {φ = 2y − 2x² + 1 > 0} the map ρ(x, y) = (x/2 − x² + y, ln φ) turns
x' = x² − y, y' = x into a Hamiltonian system with Ĥ∘ρ = −¼ ln H.
"""

import math
from dataclasses import dataclass

import numpy as np

from canard_lab.conserved.first_integral import phi_h
from canard_lab.exceptions import DomainError
from canard_lab.integrators.maps import PlanarState, p0_map

LN4 = math.log(4)


@dataclass(frozen=True, slots=True)
class HamiltonianState:
	v: float
	w: float

	def __post_init__(self):
		if not (math.isfinite(self.v) and math.isfinite(self.w)):
			raise DomainError(f"state must be finite, got ({self.v}, {self.w})")

	def as_array(self) -> np.ndarray:
		return np.array([self.v, self.w])


def phi(x: float, y: float) -> float:
	return 2 * y - 2 * x * x + 1


def rho(x: float, y: float) -> HamiltonianState:
	value = phi(x, y)
	if value <= 0:
		raise DomainError(f"({x}, {y}) lies outside U: 2y − 2x² + 1 = {value}")
	return HamiltonianState(x / 2 - x * x + y, math.log(value))


def rho_inv(v: float, w: float) -> PlanarState:
	ew = math.exp(w)
	return PlanarState(2 * v - ew + 1, -1.5 * ew + 0.5 + 4 * v * (1 + v - ew) + ew * ew)


def rho_jacobian_det(x: float, y: float) -> float:
	"""det Dρ = 1/φ, so φ·det Dρ ≡ 1."""
	value = phi(x, y)
	if value <= 0:
		raise DomainError(f"({x}, {y}) lies outside U")
	return 1 / value


def H_hat(v, w):
	"""Hamiltonian in (v, w); accepts scalars or numpy arrays."""
	ew = np.exp(w)
	return (1 + LN4) / 4 + ew * ew / 2 + 2 * v - w / 4 + 2 * v * v - ew / 4 * (8 * v + 3)


def hamiltonian_vf(v: float, w: float) -> np.ndarray:
	"""(−∂Ĥ/∂w, ∂Ĥ/∂v)"""
	ew = math.exp(w)
	return np.array([(-4 * ew * ew + 1 + ew * (8 * v + 3)) / 4, 4 * v - 2 * ew + 2])


def kahan_area_factor(x: float, y: float, h: float) -> float:
	"""Jacobian determinant of ρ∘P⁰∘ρ⁻¹ at ρ(x, y).

	Equals φ_h(z̃)φ(z) / (φ_h(z)φ(z̃)) with z̃ = P⁰(z); it is not identically 1.
	φ_h = −φ/2 − h²/8 never vanishes on U.
	"""
	value = phi(x, y)
	if value <= 0:
		raise DomainError(f"({x}, {y}) lies outside U")
	x_next, y_next = p0_map(x, y, h)
	value_next = phi(x_next, y_next)
	if value_next <= 0:
		raise DomainError(f"P⁰({x}, {y}) leaves U")
	return phi_h(x_next, y_next, h) * value / (phi_h(x, y, h) * value_next)
