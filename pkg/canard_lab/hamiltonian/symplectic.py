# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
import math

import numpy as np

from canard_lab.conserved.first_integral import H
from canard_lab.exceptions import SingularStepError
from canard_lab.hamiltonian.coordinates import (
	H_hat,
	HamiltonianState,
	hamiltonian_vf,
	phi,
	rho,
	rho_inv,
)
from canard_lab.integrators.steppers import reference_flow
from canard_lab.utils import _dict, central_difference_jacobian, peak_to_peak

logger = logging.getLogger(__name__)


def symplectic_euler_step(v: float, w: float, h: float) -> HamiltonianState:
	"""v⁺ = v − h∂Ĥ/∂w(v⁺, w), then w⁺ = w + h∂Ĥ/∂v(v⁺, w).

	Ĥ is linear in v inside ∂Ĥ/∂w, so the implicit stage is solved in closed form.
	"""
	ew = math.exp(w)
	d = 1 - 2 * h * ew
	if d == 0:
		raise SingularStepError((v, w), h)

	v_next = (v - h * ew * ew + h / 4 + 0.75 * h * ew) / d
	return HamiltonianState(v_next, w + h * (2 + 4 * v_next - 2 * ew))


def simulate_symplectic(v0: float, w0: float, h: float, steps: int) -> list[tuple[int, float, float, float]]:
	"""Rows (n, v, w, Ĥ) for n = 0, …, steps."""
	rows = [(0, v0, w0, float(H_hat(v0, w0)))]
	v, w = v0, w0
	for n in range(1, steps + 1):
		s = symplectic_euler_step(v, w, h)
		v, w = s.v, s.w
		rows.append((n, v, w, float(H_hat(v, w))))
	return rows


def _grid_points(size: int = 20):
	# y measured from the parabola keeps every point inside U
	for x in np.linspace(-1, 1, size):
		for s in np.linspace(0.01, 1, size):
			yield float(x), float(x * x - 0.5 + s)


def hamiltonian_check(h: float = 0.01, steps: int = 10_000, start: tuple[float, float] = (0.1, 0.0)) -> _dict:
	"""Identity, area and drift figures for the canonical coordinates."""
	identity = max(abs(H_hat(*rho(x, y).as_array()) + math.log(H(x, y)) / 4) for x, y in _grid_points())
	inverse = max(
		float(np.abs(rho_inv(*rho(x, y).as_array()).as_array() - (x, y)).max()) for x, y in _grid_points()
	)
	det_rho = max(
		abs(np.linalg.det(central_difference_jacobian(lambda z: rho(*z).as_array(), (x, y))) * phi(x, y) - 1)
		for x, y in _grid_points(5)
	)
	det_step = max(
		abs(np.linalg.det(central_difference_jacobian(lambda z: symplectic_euler_step(*z, h).as_array(), p)) - 1)
		for p in ((0.1, 0.0), (-0.2, 0.3), (0.05, -0.4))
	)

	hamiltonian = np.array([row[3] for row in simulate_symplectic(*start, h, steps)])
	tenth = max(1, len(hamiltonian) // 10)
	trend = abs(hamiltonian[-tenth:].mean() - hamiltonian[:tenth].mean())

	# pushforward of x' = x² − y, y' = x against the Hamiltonian field
	x, y = rho_inv(*start).as_array()
	pushed = central_difference_jacobian(lambda z: rho(*z).as_array(), (x, y)) @ (x * x - y, x)
	flow = float(np.abs(pushed - hamiltonian_vf(*start)).max())

	report = _dict(
		h=h,
		steps=steps,
		identity_error=float(identity),
		inverse_error=inverse,
		det_rho_error=float(det_rho),
		det_step_error=float(det_step),
		pushforward_error=flow,
		drift=peak_to_peak(hamiltonian),
		trend=float(trend),
	)
	logger.debug("hamiltonian check: %s", dict(report))
	return report


def hamiltonian_flow_drift(v0: float, w0: float, t: float = 1.0, substeps: int = 10_000) -> float:
	"""|Ĥ(end) − Ĥ(start)| of an RK4 reference integration of the Hamiltonian field."""
	end = reference_flow(lambda z: hamiltonian_vf(z[0], z[1]), (v0, w0), t, substeps)
	return abs(float(H_hat(*end)) - float(H_hat(v0, w0)))

