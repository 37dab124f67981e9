# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

Coefficients = tuple[float, float, float, float]
ZERO_COEFFICIENTS: Coefficients = (0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class QuadraticVectorField:
	"""f(z) = Q(z) + Bz + c with Q_k(z) = Σ T[k][i][j] z_i z_j.

	T must be symmetric in its last two indices.
	"""

	quadratic: np.ndarray
	linear: np.ndarray
	constant: np.ndarray

	def __post_init__(self):
		quadratic = np.asarray(self.quadratic, dtype=float)
		linear = np.asarray(self.linear, dtype=float)
		constant = np.asarray(self.constant, dtype=float)
		n = constant.shape[0]
		if quadratic.shape != (n, n, n) or linear.shape != (n, n) or constant.shape != (n,):
			raise ValueError(
				f"inconsistent shapes: T{quadratic.shape}, B{linear.shape}, c{constant.shape}"
			)
		if not np.array_equal(quadratic, quadratic.transpose(0, 2, 1)):
			raise ValueError("quadratic tensor must be symmetric in its last two indices")

		object.__setattr__(self, "quadratic", quadratic)
		object.__setattr__(self, "linear", linear)
		object.__setattr__(self, "constant", constant)

	@property
	def dim(self) -> int:
		return self.constant.shape[0]

	@classmethod
	def zero(cls, dim: int = 2) -> "QuadraticVectorField":
		return cls(np.zeros((dim, dim, dim)), np.zeros((dim, dim)), np.zeros(dim))

	@classmethod
	def linear_field(cls, matrix: Sequence[Sequence[float]], constant=None) -> "QuadraticVectorField":
		matrix = np.asarray(matrix, dtype=float)
		dim = matrix.shape[0]
		return cls(
			np.zeros((dim, dim, dim)),
			matrix,
			np.zeros(dim) if constant is None else np.asarray(constant, dtype=float),
		)

	def __call__(self, z) -> np.ndarray:
		z = np.asarray(z, dtype=float)
		return np.einsum("kij,i,j->k", self.quadratic, z, z) + self.linear @ z + self.constant

	def bilinear(self, z, w) -> np.ndarray:
		"""Symmetric bilinear form Q̄ with Q̄(z, z) = Q(z)."""
		return np.einsum("kij,i,j->k", self.quadratic, np.asarray(z, float), np.asarray(w, float))

	def jacobian(self, z) -> np.ndarray:
		z = np.asarray(z, dtype=float)
		return 2 * np.einsum("kij,j->ki", self.quadratic, z) + self.linear


def canard_field(epsilon: float, lam: float, a: Coefficients = ZERO_COEFFICIENTS) -> QuadraticVectorField:
	"""x' = −y + x² + εa₁x − a₂xy, y' = ε(x − λ) + εa₅y + εa₄x²"""
	a1, a2, a4, a5 = a
	quadratic = np.zeros((2, 2, 2))
	quadratic[0, 0, 0] = 1.0
	quadratic[0, 0, 1] = quadratic[0, 1, 0] = -a2 / 2
	quadratic[1, 0, 0] = epsilon * a4
	linear = np.array([[epsilon * a1, -1.0], [epsilon, epsilon * a5]])
	return QuadraticVectorField(quadratic, linear, np.array([0.0, -epsilon * lam]))


def k2_field(lambda2: float, r2: float, a: Coefficients = ZERO_COEFFICIENTS) -> QuadraticVectorField:
	"""Rescaled field in chart K2:

	x' = −y + x² + r(a₁x − a₂xy), y' = x − λ + r(a₄x² + a₅y)
	"""
	a1, a2, a4, a5 = a
	quadratic = np.zeros((2, 2, 2))
	quadratic[0, 0, 0] = 1.0
	quadratic[0, 0, 1] = quadratic[0, 1, 0] = -r2 * a2 / 2
	quadratic[1, 0, 0] = r2 * a4
	linear = np.array([[r2 * a1, -1.0], [1.0, r2 * a5]])
	return QuadraticVectorField(quadratic, linear, np.array([0.0, -lambda2]))


def rotation_field() -> QuadraticVectorField:
	return QuadraticVectorField.linear_field([[0.0, -1.0], [1.0, 0.0]])
