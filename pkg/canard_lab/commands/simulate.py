# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import click

from canard_lab.commands import emit, get_config, pass_context
from canard_lab.commands.output import column
from canard_lab.config import MAP_IDS, RunConfig
from canard_lab.conserved.first_integral import gamma_h, phi_h
from canard_lab.integrators.maps import CanardParams, PlanarState, p0_map
from canard_lab.integrators.trajectory import Trajectory, iterate


def coefficient_options(f):
	for name in ("--a5", "--a4", "--a2", "--a1"):
		f = click.option(name, type=float)(f)
	return f


def parameter_options(f):
	for option in reversed(
		[
			click.option("--h", type=float, help="Step size (h₂ in chart K2)"),
			click.option("--epsilon", type=float),
			click.option("--lambda", "lam", type=float, help="λ, or λ₂ in chart K2"),
			click.option("--r", type=float, help="r₂ in chart K2"),
		]
	):
		f = option(f)
	return coefficient_options(f)


def output_options(f):
	f = click.option("--format", type=click.Choice(["csv", "json"]))(f)
	return click.option("--output", "output_path", help="File to write, `-` for stdout")(f)


def params_from(config: RunConfig) -> CanardParams:
	return CanardParams(
		epsilon=config.epsilon,
		lam=config.lam,
		h=config.h,
		a1=config.a1,
		a2=config.a2,
		a4=config.a4,
		a5=config.a5,
		r=config.r,
	)


def run_simulation(config: RunConfig) -> Trajectory:
	return iterate(
		config.map_id,
		params_from(config),
		PlanarState(config.x0, config.y0),
		-config.backward_steps,
		config.steps,
	)


def execute(config: RunConfig):
	if config.map_id == "symplectic-euler":
		from canard_lab.commands.hamiltonian import execute_simulate

		columns, data = execute_simulate(config)
		return columns, data, ()

	traj = run_simulation(config)
	columns = [column("n", fieldtype="Int"), column("x"), column("y")]
	return columns, list(traj.rows()), traj.singular_at


@click.command("simulate", help="Iterate one map; columns n,x,y (n,v,w,Hhat for symplectic-euler)")
@click.option("--map", "map_id", type=click.Choice(MAP_IDS))
@parameter_options
@click.option("--x0", type=float)
@click.option("--y0", type=float)
@click.option("--steps", type=int)
@click.option("--backward-steps", type=int, help="Also iterate the inverse map (Kahan only)")
@output_options
@pass_context
def simulate(context, **flags):
	config = get_config(context, "simulate", flags)
	columns, data, singular_at = execute(config)
	emit(columns, data, config, singular_at)


def invariant_report(h: float, steps: int) -> list[tuple]:
	"""Invariance of S_h under P⁰.

	Forward from γ_h(−steps) along the attracting half and backward from
	γ_h(steps) along the repelling half; forward iteration on the repelling
	half amplifies round-off transverse to S_h.
	"""
	rows = []
	for direction, start, step in (("forward", -steps, h), ("backward", steps, -h)):
		s = gamma_h(start, h)
		x, y = s.x, s.y
		worst_phi = worst_step = 0.0
		for _ in range(steps):
			x_next, y_next = p0_map(x, y, step)
			worst_step = max(worst_step, abs(x_next - x - step / 2) / max(1.0, abs(x)))
			worst_phi = max(worst_phi, abs(phi_h(x_next, y_next, h)) / max(1.0, abs(y_next)))
			x, y = x_next, y_next
		rows.append((h, direction, start, steps, worst_phi, worst_step))
	return rows


INVARIANT_COLUMNS = [
	column("h"),
	column("direction", fieldtype="Data"),
	column("start_n", fieldtype="Int"),
	column("steps", fieldtype="Int"),
	column("max_rel_phi_h"),
	column("max_rel_step_error"),
]


@click.command("invariant-check", help="Invariance of S_h: max |φ_h| and |x̃ − x − h/2| along γ_h")
@click.option("--h", "hs", type=float, multiple=True, help="Repeatable; default 0.5, 0.1, 0.01")
@click.option("--steps", type=int)
@output_options
@pass_context
def invariant_check(context, hs, **flags):
	config = get_config(context, "invariant-check", flags)
	data = []
	for h in hs or (0.5, 0.1, 0.01):
		data.extend(invariant_report(h, config.steps))
	emit(INVARIANT_COLUMNS, data, config)


commands = [simulate, invariant_check]
