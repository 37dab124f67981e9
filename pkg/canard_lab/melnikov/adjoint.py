# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from canard_lab.config import conf
from canard_lab.conserved.first_integral import gamma_h
from canard_lab.exceptions import PreconditionError, SingularStepError
from canard_lab.integrators.maps import p0_jacobian

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AdjointState:
	n: int
	psi: np.ndarray

	@property
	def norm(self) -> float:
		return float(np.linalg.norm(self.psi))


def check_window(h: float, N: int, span: int = 1):
	"""Guards for sums over n ∈ [−span·N, span·N] along γ_h.

	The window N·h is capped by `melnikov_max_window` and the segment must stay
	left of the pole of P⁰ at x = (1 + h²/4)/h.
	"""
	if N < 1:
		raise PreconditionError(f"N must be at least 1, got {N}")
	if not h > 0:
		raise PreconditionError(f"h must be positive, got {h}")

	max_window = conf.melnikov_max_window or 25.0
	if N * h > max_window:
		raise PreconditionError(f"window N·h = {N * h:g} exceeds {max_window:g}")
	if h * span * N / 2 >= (1 + h * h / 4) / h:
		raise PreconditionError(f"γ_h({span * N}) lies past the pole of P⁰ for h = {h:g}")


def jacobian_along(n: int, h: float) -> np.ndarray:
	s = gamma_h(n, h)
	return p0_jacobian(s.x, s.y, h)


def adjoint_orbit(h: float, N: int) -> list[AdjointState]:
	"""ψ_h(n) for n = −N, …, N with ψ_h(0) = (0, 1).

	Forward: ψ(n+1) = (DP⁰(γ_h(n))ᵀ)⁻¹ψ(n). Backward: ψ(n) = DP⁰(γ_h(n))ᵀψ(n+1).
	"""
	check_window(h, N)

	psi = {0: np.array([0.0, 1.0])}
	for n in range(N):
		jacobian = jacobian_along(n, h)
		try:
			psi[n + 1] = scipy.linalg.solve(jacobian.T, psi[n])
		except (scipy.linalg.LinAlgError, ValueError):
			s = gamma_h(n, h)
			raise SingularStepError((s.x, s.y), h, f"singular Jacobian of P⁰ at γ_h({n})") from None
	for n in range(0, -N, -1):
		psi[n - 1] = jacobian_along(n - 1, h).T @ psi[n]

	logger.debug("adjoint orbit h=%g N=%d: |ψ(±N)| = %.3e, %.3e", h, N,
		np.linalg.norm(psi[-N]), np.linalg.norm(psi[N]))
	return [AdjointState(n, psi[n]) for n in range(-N, N + 1)]
