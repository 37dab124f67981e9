# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

"""Recipes that regenerate the data behind each published figure.

Every recipe binds the parameters of one caption, produces a table and
checks the qualitative claim the figure illustrates. Singular events are
part of the data here, never an error.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from canard_lab.commands.analysis import MELNIKOV_COLUMNS
from canard_lab.commands.output import column
from canard_lab.commands.simulate import run_simulation
from canard_lab.config import RunConfig
from canard_lab.conserved import H, conservation_monitor, derive_conserved_quantity, gamma_h, hbar_eval, phi_h
from canard_lab.exceptions import ConfigError
from canard_lab.melnikov import melnikov_sweep
from canard_lab.utils import _dict

logger = logging.getLogger(__name__)

ORBIT_COLUMNS = [column("n", fieldtype="Int"), column("x"), column("y"), column("H"), column("Hbar")]


@dataclass(frozen=True)
class FigureRecipe:
	figure_id: str
	config: RunConfig
	claim: str
	run: Callable[[RunConfig], _dict]


def _orbit_table(config: RunConfig) -> _dict:
	"""Simulated orbit with H and the order-2 H̄ next to each state."""
	traj = run_simulation(config)
	report = conservation_monitor(traj, derive_conserved_quantity(2))
	z = traj.as_array()
	data = [(n, float(x), float(y), h_value, hbar) for (n, h_value, hbar), (x, y) in zip(report.rows, z)]
	return _dict(traj=traj, report=report, z=z, data=data)


def euler_on_curve(config: RunConfig) -> _dict:
	orbit = _orbit_table(config)
	x1, y1 = orbit.z[1]
	offset = float(y1 - (x1 * x1 - 0.5))
	expected = -config.h**2 / 4
	return _dict(
		columns=ORBIT_COLUMNS,
		data=orbit.data,
		singular_at=orbit.traj.singular_at,
		measured={"first_step_offset": offset, "expected_offset": expected},
		passed=abs(offset - expected) <= 1e-14,
	)


def euler_spiral(config: RunConfig) -> _dict:
	"""H falls strictly while the orbit is inside the separatrix, then the orbit escapes."""
	orbit = _orbit_table(config)
	values = np.array([row[1] for row in orbit.report.rows])
	with np.errstate(invalid="ignore"):
		inside = values > 0
	crossing = len(values) if inside.all() else int(np.argmin(inside))
	spiral = values[:crossing]
	steps = np.diff(spiral)
	drop = float(spiral[0] - spiral[-1]) if len(spiral) else 0.0
	crossed_at = orbit.traj.indices[crossing] if crossing < len(values) else None
	return _dict(
		columns=ORBIT_COLUMNS,
		data=orbit.data,
		singular_at=orbit.traj.singular_at,
		measured={
			"H_drop": drop,
			"max_H_increment": float(steps.max()) if len(steps) else 0.0,
			"separatrix_crossed_at": "none" if crossed_at is None else crossed_at,
			"nonfinite_from": orbit.report.nonfinite_from or "none",
		},
		passed=len(steps) > 0 and bool((steps < 0).all()) and drop > 1e-2 and crossed_at is not None,
	)


def kahan_periodic(config: RunConfig) -> _dict:
	orbit = _orbit_table(config)
	max_abs_x = float(np.abs(orbit.z[:, 0]).max())
	return _dict(
		columns=ORBIT_COLUMNS,
		data=orbit.data,
		singular_at=orbit.traj.singular_at,
		measured={"max_abs_x": max_abs_x, "ptp_H": orbit.report.ptp_H, "ptp_Hbar": orbit.report.ptp_Hbar},
		passed=not orbit.traj.singular_at and max_abs_x < 3 and orbit.report.ptp_Hbar < 1e-6,
	)


def kahan_near_separatrix(config: RunConfig) -> _dict:
	orbit = _orbit_table(config)
	offset = phi_h(config.x0, config.y0, config.h)
	same_side = all(phi_h(x, y, config.h) > 0 for x, y in orbit.z)
	return _dict(
		columns=ORBIT_COLUMNS,
		data=orbit.data,
		singular_at=orbit.traj.singular_at,
		measured={
			"offset_above_S_h": offset,
			"expected_offset": config.h**2 / 8,
			"ptp_H": orbit.report.ptp_H,
			"ptp_Hbar": orbit.report.ptp_Hbar,
		},
		passed=abs(offset - config.h**2 / 8) <= 1e-12
		and same_side
		and orbit.report.ptp_Hbar < orbit.report.ptp_H,
	)


def gamma_h_conservation(config: RunConfig) -> _dict:
	fcq = derive_conserved_quantity(2)
	data = []
	for n in range(-config.steps, config.steps + 1):
		s = gamma_h(n, config.h)
		data.append((n, s.x, s.y, H(s.x, s.y), float(hbar_eval(s.x, s.y, config.h, fcq))))
	worst = max(abs(row[4]) for row in data)
	return _dict(
		columns=ORBIT_COLUMNS,
		data=data,
		singular_at=(),
		measured={"max_abs_Hbar": worst},
		passed=worst <= 1e-9,
	)


def kahan_unbounded(config: RunConfig) -> _dict:
	orbit = _orbit_table(config)
	return _dict(
		columns=ORBIT_COLUMNS,
		data=orbit.data,
		singular_at=orbit.traj.singular_at,
		measured={"singular_at": ",".join(map(str, orbit.traj.singular_at)) or "none"},
		passed=bool(orbit.traj.singular_at),
	)


def melnikov_convergence(config: RunConfig) -> _dict:
	cells = [(h, round(window / h), config.a) for h in (0.1, 0.05, 0.01) for window in range(1, 7)]
	results = melnikov_sweep(cells)
	final = next(r for r in results if r.h == 0.01 and r.N == 600)
	return _dict(
		columns=MELNIKOV_COLUMNS,
		data=[r.as_row() for r in results],
		singular_at=(),
		measured={"err_lambda": final.err_lambda, "err_r": final.err_r},
		passed=abs(final.err_lambda) < 0.05 and abs(final.err_r) < 0.1,
	)


def _config(**values) -> RunConfig:
	return RunConfig(command="reproduce", **values)


RECIPES: dict[str, FigureRecipe] = {
	recipe.figure_id: recipe
	for recipe in (
		FigureRecipe(
			"fig1-euler-on-curve",
			_config(map_id="k2-euler", h=0.1, x0=-1.0, y0=0.5, steps=40),
			"Euler leaves the parabola y = x^2 - 1/2: the first step lands h^2/4 below it",
			euler_on_curve,
		),
		FigureRecipe(
			"fig2-euler-spiral",
			_config(map_id="k2-euler", h=0.01, x0=0.0, y0=-0.2, steps=100000),
			"Euler orbits spiral away from the centre: H decreases strictly until the orbit crosses the separatrix and escapes",
			euler_spiral,
		),
		FigureRecipe(
			"fig5-kahan-periodic",
			_config(map_id="k2-kahan", h=0.01, x0=0.0, y0=-0.4, steps=10000),
			"Kahan orbits inside the separatrix are periodic: bounded, with H-bar constant to 1e-6",
			kahan_periodic,
		),
		FigureRecipe(
			"fig6-kahan-near-separatrix",
			_config(map_id="k2-kahan", h=0.1, x0=-2.0, y0=3.5, steps=2000),
			"A start on S_0 lies h^2/8 above S_h; the orbit stays on that side and H-bar varies less than H",
			kahan_near_separatrix,
		),
		FigureRecipe(
			"fig7-gamma-h",
			_config(map_id="k2-kahan", h=0.01, steps=300),
			"Along gamma_h the order-2 H-bar vanishes to order 1e-10",
			gamma_h_conservation,
		),
		FigureRecipe(
			"fig8-unbounded",
			_config(map_id="k2-kahan", h=0.01, x0=0.0, y0=-1.0, steps=100000),
			"Orbits outside the separatrix are unbounded: the denominator changes sign in finite time",
			kahan_unbounded,
		),
		FigureRecipe(
			"fig12-melnikov-convergence",
			_config(h=0.01, a1=1.0),
			"The sums approach -sqrt(2 pi) and -C sqrt(2 pi) as N h grows and h shrinks",
			melnikov_convergence,
		),
	)
}


def get_recipe(figure_id: str) -> FigureRecipe:
	try:
		return RECIPES[figure_id]
	except KeyError:
		raise ConfigError(f"unknown figure {figure_id!r}, expected one of {', '.join(RECIPES)}") from None


def reproduce_figure(recipe: FigureRecipe) -> _dict:
	logger.info("reproducing %s", recipe.figure_id)
	result = recipe.run(recipe.config)
	if not result.passed:
		logger.warning("%s: claim not reproduced, measured %s", recipe.figure_id, result.measured)
	return result
