# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

"""Discrete Melnikov sums along γ_h and the critical parameter λ_c.

Ĵ and Ĝ already carry one factor h, so the raw sums approximate the
continuous integrals −√(2π) and −C√(2π) directly; `*_per_step` divides by h.
"""

import logging
import math
import multiprocessing
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from canard_lab.config import conf, get_thread_cap
from canard_lab.conserved.first_integral import gamma_h, grad_H
from canard_lab.exceptions import ContaminationError, DegenerateError, PreconditionError
from canard_lab.integrators.field import ZERO_COEFFICIENTS, Coefficients
from canard_lab.integrators.maps import PlanarState, k2_kahan_step
from canard_lab.melnikov.adjoint import AdjointState, adjoint_orbit, check_window, jacobian_along
from canard_lab.melnikov.perturbation import hatG, hatJ
from canard_lab.utils import _dict

logger = logging.getLogger(__name__)

SQRT_2PI = math.sqrt(2 * math.pi)

Source = Callable[[PlanarState], np.ndarray]


def constant_C(a: Coefficients) -> float:
	"""(4a₁ − a₂ + 3a₃ − 2a₄ + 2a₅)/8 with a₃ = 0."""
	a1, a2, a4, a5 = a
	return (4 * a1 - a2 - 2 * a4 + 2 * a5) / 8


def continuous_targets(a: Coefficients) -> tuple[float, float]:
	return -SQRT_2PI, -constant_C(a) * SQRT_2PI


@dataclass(frozen=True)
class MelnikovResult:
	h: float
	N: int
	d_lambda: float
	d_r: float
	boundary_corrected: bool = False
	a: Coefficients = ZERO_COEFFICIENTS
	max_residual: float = field(default=0.0, compare=False)

	@property
	def d_lambda_per_step(self) -> float:
		return self.d_lambda / self.h

	@property
	def d_r_per_step(self) -> float:
		return self.d_r / self.h

	@property
	def err_lambda(self) -> float:
		return self.d_lambda - continuous_targets(self.a)[0]

	@property
	def err_r(self) -> float:
		return self.d_r - continuous_targets(self.a)[1]

	def as_row(self) -> tuple:
		return (
			self.h,
			self.N,
			self.d_lambda,
			self.d_r,
			self.err_lambda,
			self.err_r,
			self.d_lambda_per_step,
			self.d_r_per_step,
		)


def _sources(h: float, a: Coefficients) -> dict[str, Source]:
	return {
		"lambda": lambda s: hatJ(s.x, h),
		"r": lambda s: hatG(s.x, s.y, h, a),
	}


def _pairing_sum(psi: dict[int, np.ndarray], source: Source, h: float, N: int) -> float:
	return math.fsum(float(psi[n + 1] @ source(gamma_h(n, h))) for n in range(-N, N))


def _carry_forward(source: Source, h: float, start: int, stop: int) -> np.ndarray:
	"""w(stop) of w(n+1) = DP⁰(γ_h(n))w(n) + source(γ_h(n)) with w(start) = 0."""
	w = np.zeros(2)
	for n in range(start, stop):
		w = jacobian_along(n, h) @ w + source(gamma_h(n, h))
	return w


def _carry_backward(source: Source, h: float, start: int, stop: int) -> np.ndarray:
	"""Same recursion run from w(start) = 0 down to index stop < start."""
	w = np.zeros(2)
	for n in range(start - 1, stop - 1, -1):
		w = np.linalg.solve(jacobian_along(n, h), w - source(gamma_h(n, h)))
	return w


def telescope_residuals(
	h: float,
	N: int,
	a: Coefficients = ZERO_COEFFICIENTS,
	source: str = "lambda",
	adjoint: Sequence[AdjointState] | None = None,
) -> np.ndarray:
	"""Residuals of ⟨ψ(n+1), w(n+1)⟩ − ⟨ψ(n), w(n)⟩ = ⟨ψ(n+1), G(γ_h(n))⟩.

	w is the variational recursion seeded with w(−N) = 0. Entry k belongs to
	n = −N + k and is scaled by 1 + |ψ(n+1)||w(n+1)|.
	"""
	if source not in ("lambda", "r"):
		raise PreconditionError(f"unknown perturbation source {source!r}")

	psi = {state.n: state.psi for state in (adjoint or adjoint_orbit(h, N))}
	perturbation = _sources(h, a)[source]
	w = np.zeros(2)
	residuals = np.empty(2 * N)
	for k, n in enumerate(range(-N, N)):
		g = perturbation(gamma_h(n, h))
		w_next = jacobian_along(n, h) @ w + g
		residual = psi[n + 1] @ w_next - psi[n] @ w - psi[n + 1] @ g
		residuals[k] = abs(residual) / (1 + np.linalg.norm(psi[n + 1]) * np.linalg.norm(w_next))
		w = w_next
	return residuals


def melnikov_sums(
	h: float, N: int, a: Coefficients = ZERO_COEFFICIENTS, boundary_corrected: bool = False
) -> MelnikovResult:
	"""d_λ = Σ_{n=−N}^{N−1} ⟨ψ_h(n+1), Ĵ(γ_h(n))⟩ and d_r likewise with Ĝ.

	With `boundary_corrected` the tails are replaced by ⟨ψ(−N), w₋(−N)⟩ −
	⟨ψ(N), w₊(N)⟩, w± being the variational recursion seeded with zero at ∓2N.
	"""
	check_window(h, N, span=2 if boundary_corrected else 1)
	a = tuple(float(c) for c in a)

	adjoint = adjoint_orbit(h, N)
	psi = {state.n: state.psi for state in adjoint}

	tolerance = conf.contamination_tolerance or 1e-8
	residuals = telescope_residuals(h, N, a, "lambda", adjoint)
	worst = int(np.argmax(residuals))
	logger.debug("melnikov h=%g N=%d: max telescope residual %.3e at n=%d", h, N, residuals[worst], worst - N)
	if residuals[worst] > tolerance:
		raise ContaminationError(worst - N, float(residuals[worst]), tolerance)

	sums = {}
	for name, source in _sources(h, a).items():
		if name == "r" and not any(a):
			sums[name] = 0.0
			continue
		total = _pairing_sum(psi, source, h, N)
		if boundary_corrected:
			w_minus = _carry_forward(source, h, -2 * N, -N)
			w_plus = _carry_backward(source, h, 2 * N, N)
			total += float(psi[-N] @ w_minus) - float(psi[N] @ w_plus)
		sums[name] = total

	if sums["lambda"] == 0:
		logger.warning("d_lambda vanished for h=%g N=%d", h, N)

	return MelnikovResult(
		h=h,
		N=N,
		d_lambda=sums["lambda"],
		d_r=sums["r"],
		boundary_corrected=boundary_corrected,
		a=a,
		max_residual=float(residuals[worst]),
	)


def _sweep_cell(cell: tuple) -> MelnikovResult:
	h, N, a, boundary_corrected = cell
	return melnikov_sums(h, N, a, boundary_corrected)


def melnikov_sweep(
	cells: Iterable[tuple[float, int, Coefficients]], boundary_corrected: bool = False
) -> list[MelnikovResult]:
	"""melnikov_sums over independent (h, N, a) cells, in input order."""
	cells = [(h, N, tuple(a), boundary_corrected) for h, N, a in cells]
	processes = min(get_thread_cap(), len(cells))
	logger.info("melnikov sweep: %d cells on %d workers", len(cells), max(processes, 1))

	if processes <= 1:
		return [_sweep_cell(cell) for cell in cells]
	with multiprocessing.Pool(processes) as pool:
		return pool.map(_sweep_cell, cells)


def window_steps(h: float, window: float | None = None) -> int:
	return math.ceil((window or conf.melnikov_window or 8.0) / h)


def lambda_c_estimate(
	epsilon: float, h: float, a: Coefficients, window: float | None = None
) -> float:
	"""λ_c ≈ −(d_r/d_λ)·ε from the sums in chart K2.

	:param h: step size in original coordinates; the chart step is h₂ = h√ε
	"""
	if not epsilon > 0:
		raise PreconditionError(f"epsilon must be positive, got {epsilon}")

	h2 = h * math.sqrt(epsilon)
	result = melnikov_sums(h2, window_steps(h2, window), a)
	if result.d_lambda == 0:
		raise DegenerateError(f"d_lambda vanished for h2={h2:g}; λ_c is undefined")
	return -(result.d_r / result.d_lambda) * epsilon


def first_integral_melnikov_sums(
	h: float, M: int, a: Coefficients = ZERO_COEFFICIENTS
) -> _dict:
	"""Sums of ∇H(γ_h(n))·Ĝ(γ_h(n−1)) over n = 1−M, …, M, and likewise with Ĵ.

	Since ∇H ≈ (e/2)ψ along γ_h these approach (e/2) times the adjoint sums;
	their ratio estimates C.
	"""
	check_window(h, M)
	sources = _sources(h, tuple(a))

	def total(source: Source) -> float:
		return math.fsum(
			float(grad_H(*gamma_h(n, h).as_array()) @ source(gamma_h(n - 1, h)))
			for n in range(1 - M, M + 1)
		)

	d_lambda = total(sources["lambda"])
	d_r = total(sources["r"]) if any(a) else 0.0
	return _dict(
		h=h,
		M=M,
		d_lambda=d_lambda,
		d_r=d_r,
		C_estimate=d_r / d_lambda if d_lambda else None,
	)


def manifold_gap(
	h: float, a: Coefficients, r: float, lam: float, window: float | None = None
) -> float:
	"""y-gap at x = 0 between the perturbed attracting and repelling manifolds.

	The attracting one is shot forward from γ_h(−M), the repelling one backward
	from γ_h(M); each crossing of x = 0 is read off the parabola through the
	three orbit points closest to it. Positive when the attracting manifold
	lies above.
	"""
	M = window_steps(h, window)
	check_window(h, M)

	def crossing(start: int, step: float) -> float:
		s = gamma_h(start, h)
		x, y = s.x, s.y
		points = [(x, y)]
		for _ in range(M + 3):
			x, y = k2_kahan_step(step, lam, r, a, x, y)
			points.append((x, y))
		points.sort(key=lambda p: abs(p[0]))
		xs, ys = zip(*points[:3])
		return float(np.polyval(np.polyfit(xs, ys, 2), 0.0))

	return crossing(-M, h) - crossing(M, -h)


DEFAULT_GRID = ((0.0, 0.01), (0.0, -0.01), (0.01, 0.0), (-0.01, 0.0))


def distance_expansion_check(
	h: float,
	a: Coefficients,
	grid: Sequence[tuple[float, float]] = DEFAULT_GRID,
	window: float | None = None,
) -> _dict:
	"""Least-squares fit gap ≈ d_λλ + d_r r over a grid of (r, λ), against the sums.

	Agreement means |fit − sums| ≤ fit_tolerance·|sums| for the coefficient vector.
	"""
	if any(abs(r) > 0.05 or abs(lam) > 0.05 for r, lam in grid):
		raise PreconditionError("distance expansion needs |r|, |λ| <= 0.05")

	rows = [(r, lam, manifold_gap(h, a, r, lam, window)) for r, lam in grid]
	design = np.array([[lam, r] for r, lam, _ in rows])
	gaps = np.array([gap for _, _, gap in rows])
	(fit_lambda, fit_r), *_ = np.linalg.lstsq(design, gaps, rcond=None)

	sums = melnikov_sums(h, window_steps(h, window), a)
	expected = np.array([sums.d_lambda, sums.d_r])
	rel_error = float(np.linalg.norm([fit_lambda, fit_r] - expected) / np.linalg.norm(expected))
	tolerance = conf.fit_tolerance or 0.15

	return _dict(
		rows=rows,
		fit_d_lambda=float(fit_lambda),
		fit_d_r=float(fit_r),
		d_lambda=sums.d_lambda,
		d_r=sums.d_r,
		rel_error=rel_error,
		agree=rel_error <= tolerance,
	)
