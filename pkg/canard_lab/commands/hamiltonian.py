# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import click

from canard_lab.commands import emit, get_config, pass_context
from canard_lab.commands.output import column
from canard_lab.commands.simulate import output_options
from canard_lab.config import RunConfig
from canard_lab.hamiltonian import hamiltonian_check, rho, simulate_symplectic

SIMULATE_COLUMNS = [column("n", fieldtype="Int"), column("v"), column("w"), column("Hhat")]


def execute_simulate(config: RunConfig):
	"""Symplectic Euler from (x0, y0) read as (v0, w0)."""
	return SIMULATE_COLUMNS, simulate_symplectic(config.x0, config.y0, config.h, config.steps)


@click.group("hamiltonian", help="Canonical coordinates (v, w) and symplectic Euler")
def hamiltonian():
	pass


@hamiltonian.command("check", help="Identity, area and drift report; columns quantity,value")
@click.option("--h", type=float)
@click.option("--steps", type=int)
@output_options
@pass_context
def check(context, **flags):
	config = get_config(context, "hamiltonian", flags)
	report = hamiltonian_check(config.h, config.steps)
	emit([column("quantity", fieldtype="Data"), column("value")], list(report.items()), config)


@hamiltonian.command("simulate", help="Symplectic Euler orbit; columns n,v,w,Hhat")
@click.option("--h", type=float)
@click.option("--v0", "x0", type=float)
@click.option("--w0", "y0", type=float)
@click.option("--from-xy", nargs=2, type=float, help="Start at ρ(x, y) instead")
@click.option("--steps", type=int)
@output_options
@pass_context
def simulate(context, from_xy, **flags):
	if from_xy:
		start = rho(*from_xy)
		flags.update(x0=start.v, y0=start.w)
	config = get_config(context, "hamiltonian", flags)
	columns, data = execute_simulate(config)
	emit(columns, data, config)


commands = [hamiltonian]
