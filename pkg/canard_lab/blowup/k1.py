# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
import math
from dataclasses import dataclass

import numpy as np

from canard_lab.blowup.charts import ChartPointK1, ChartPointK2, blowdown_k1, kappa21
from canard_lab.config import conf
from canard_lab.conserved.first_integral import gamma_h
from canard_lab.exceptions import DomainError, LeftChartDomainError, SingularStepError
from canard_lab.integrators.field import ZERO_COEFFICIENTS, Coefficients
from canard_lab.integrators.maps import canard_kahan_step
from canard_lab.utils import _dict, central_difference_jacobian

logger = logging.getLogger(__name__)

# eigenvectors of the linearization at p_a,1 and p_r,1 in (x₁, ε₁, h₁)
V_A = np.array([-1.0, 4.0, 1.0])
V_R = np.array([-1.0, -4.0, -1.0])


def _closed_form(x1: float, r1: float, eps1: float, lambda1: float, h1: float):
	e = 1 - h1 * x1 + h1 * h1 * eps1 / 4
	if e == 0:
		raise SingularStepError((x1, eps1), h1)

	f = (
		1
		- h1 * x1
		+ h1 * eps1 * x1
		- h1 * h1 * eps1 * x1 * x1 / 2
		- h1 * h1 * eps1 / 4
		- h1 * lambda1 * eps1
		+ h1 * h1 * x1 * lambda1 * eps1
	)
	g = f / e
	if not g > 0:
		raise LeftChartDomainError(f"image leaves K1: G = {g} at x1={x1}, eps1={eps1}, h1={h1}")

	root = math.sqrt(g)
	return (
		(x1 - h1 - h1 * h1 * eps1 * x1 / 4 + h1 * h1 * lambda1 * eps1 / 2) / (e * root),
		r1 * root,
		eps1 / g,
		lambda1 / root,
		h1 * root,
	)


def k1_closed_form(p: ChartPointK1) -> ChartPointK1:
	"""K1 map written with E, F and G = F/E.

	Exact for the unperturbed model at every r₁, and on {r₁ = 0} for any
	perturbation coefficients since those only enter at O(r₁).
	"""
	return ChartPointK1(*_closed_form(*p.as_tuple()))


def k1_kahan_map(p: ChartPointK1, a: Coefficients = ZERO_COEFFICIENTS) -> ChartPointK1:
	"""One iterate of the desingularized Kahan map in chart K1.

	For r₁ > 0 the original map is applied to the blown-down point and the
	image is lifted back; on {r₁ = 0} the closed form is used.
	"""
	if p.r1 == 0:
		return k1_closed_form(p)
	if p.h1 == 0:
		return p

	q = blowdown_k1(p)
	x, y = canard_kahan_step(q.epsilon, q.lam, q.h, a, q.x, q.y)
	if not y > 0:
		raise LeftChartDomainError(f"image y = {y} <= 0, r1 = sqrt(y) undefined")

	r1 = math.sqrt(y)
	return ChartPointK1(x1=x / r1, r1=r1, eps1=q.epsilon / y, lambda1=q.lam / r1, h1=q.h * r1)


@dataclass(frozen=True)
class FixedPointK1:
	point: ChartPointK1
	# ∂x̃₁/∂x₁ at the fixed point
	derivative: float


def k1_fixed_points(h1: float) -> tuple[FixedPointK1, FixedPointK1]:
	"""p_a,1 = (−1, 0, 0, 0, h₁) and p_r,1 = (1, 0, 0, 0, h₁) with multipliers α, 1/α."""
	if not 0 <= h1 < 1:
		raise DomainError(f"h1 must lie in [0, 1), got {h1}")

	alpha = (1 - h1) / (1 + h1)
	return (
		FixedPointK1(ChartPointK1(-1.0, 0.0, 0.0, 0.0, h1), alpha),
		FixedPointK1(ChartPointK1(1.0, 0.0, 0.0, 0.0, h1), 1 / alpha),
	)


def _slice_map(z) -> tuple[float, float, float]:
	# the K1 map on {r₁ = λ₁ = 0} in (x₁, ε₁, h₁)
	x1, _, eps1, _, h1 = _closed_form(z[0], 0.0, z[1], 0.0, z[2])
	return x1, eps1, h1


def k1_slice_jacobian(x1: float, h1: float, eps1: float = 0.0) -> np.ndarray:
	return central_difference_jacobian(_slice_map, (x1, eps1, h1), conf.fd_step or 1e-6)


def k1_jacobian_eigen_check(h1: float) -> _dict:
	"""Action of the slice Jacobian at p_a,1 and p_r,1 on v_a and v_r.

	At both points the image is v + (0, 0, −2h₁²); dev_a and dev_r are the
	max-norm deviations from that.
	"""
	if not 0 < h1 < 1:
		raise DomainError(f"h1 must lie in (0, 1), got {h1}")

	shift = np.array([0.0, 0.0, -2 * h1 * h1])
	jacobian_a = k1_slice_jacobian(-1.0, h1)
	jacobian_r = k1_slice_jacobian(1.0, h1)
	report = _dict(
		h1=h1,
		alpha=(1 - h1) / (1 + h1),
		jacobian_a=jacobian_a,
		jacobian_r=jacobian_r,
		dev_a=float(np.abs(jacobian_a @ V_A - (V_A + shift)).max()),
		dev_r=float(np.abs(jacobian_r @ V_R - (V_R + shift)).max()),
	)
	logger.debug("eigen-action check at h1=%s: dev_a=%.3e dev_r=%.3e", h1, report.dev_a, report.dev_r)
	return report


def special_solution_distance(n: int, h: float) -> float:
	"""Distance of γ_h(n), seen in K1, from the fixed-point line {x₁ = ∓1, ε₁ = 0}.

	Needs y₂ > 0 on γ_h(n), i.e. |n| large enough for κ₂₁ to apply.
	"""
	s = gamma_h(n, h)
	p = kappa21(ChartPointK2(x2=s.x, y2=s.y, r2=0.0, lambda2=0.0, h2=h))
	target = 1.0 if n > 0 else -1.0
	return math.hypot(p.x1 - target, p.eps1)
