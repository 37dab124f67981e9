# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from canard_lab.config import conf
from canard_lab.exceptions import SingularStepError
from canard_lab.integrators.field import QuadraticVectorField


def kahan_matrix(vf: QuadraticVectorField, z, h: float) -> np.ndarray:
	return np.eye(vf.dim) - (h / 2) * vf.jacobian(z)


def kahan_denominator(vf: QuadraticVectorField, z, h: float) -> float:
	"""det(Id − (h/2)Df(z)); a sign change along an orbit means a pole was crossed."""
	return float(np.linalg.det(kahan_matrix(vf, z, h)))


def kahan_step(vf: QuadraticVectorField, z, h: float) -> np.ndarray:
	"""z + h(Id − (h/2)Df(z))⁻¹f(z)

	Raises SingularStepError when a pivot of the LU factorization falls below
	pivot_tolerance times the max-norm of the matrix.
	"""
	z = np.asarray(z, dtype=float)
	matrix = kahan_matrix(vf, z, h)
	tolerance = (conf.pivot_tolerance or 1e-13) * np.abs(matrix).max()

	with warnings.catch_warnings():
		warnings.simplefilter("ignore", LinAlgWarning)
		lu, piv = lu_factor(matrix, check_finite=False)

	if np.abs(np.diag(lu)).min() < tolerance:
		raise SingularStepError(z, h)

	return z + h * lu_solve((lu, piv), vf(z), check_finite=False)


def kahan_inverse_step(vf: QuadraticVectorField, z, h: float) -> np.ndarray:
	# the Kahan map is birational with inverse Λ(z, −h)
	return kahan_step(vf, z, -h)


def euler_step(vf: QuadraticVectorField, z, h: float) -> np.ndarray:
	z = np.asarray(z, dtype=float)
	return z + h * vf(z)


def kahan_bilinear_residual(vf: QuadraticVectorField, z, z_next, h: float) -> float:
	"""Max-norm of (z̃ − z)/h − Q̄(z, z̃) − ½B(z + z̃) − c"""
	if not h:
		raise ZeroDivisionError("step size h must be nonzero")

	z = np.asarray(z, dtype=float)
	z_next = np.asarray(z_next, dtype=float)
	residual = (
		(z_next - z) / h
		- vf.bilinear(z, z_next)
		- 0.5 * vf.linear @ (z + z_next)
		- vf.constant
	)
	return float(np.abs(residual).max())


def rk_form_residual(vf: QuadraticVectorField, z, z_next, h: float) -> float:
	"""Max-norm of (z̃ − z)/h + ½f(z) − 2f((z + z̃)/2) + ½f(z̃)"""
	if not h:
		raise ZeroDivisionError("step size h must be nonzero")

	z = np.asarray(z, dtype=float)
	z_next = np.asarray(z_next, dtype=float)
	residual = (z_next - z) / h + 0.5 * vf(z) - 2 * vf((z + z_next) / 2) + 0.5 * vf(z_next)
	return float(np.abs(residual).max())


def reference_flow(vf, z0, t: float, steps: int) -> np.ndarray:
	"""Time-t flow by classical fixed-step RK4; `vf` is any callable field."""
	if steps < 1:
		raise ValueError("steps must be >= 1")

	z = np.asarray(z0, dtype=float).copy()
	dt = t / steps
	for _ in range(steps):
		k1 = np.asarray(vf(z))
		k2 = np.asarray(vf(z + 0.5 * dt * k1))
		k3 = np.asarray(vf(z + 0.5 * dt * k2))
		k4 = np.asarray(vf(z + dt * k3))
		z = z + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
	return z
