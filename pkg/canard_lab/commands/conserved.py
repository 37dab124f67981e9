# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import click

from canard_lab.commands import emit, get_config, pass_context
from canard_lab.commands.output import column
from canard_lab.commands.simulate import output_options, run_simulation
from canard_lab.conserved import conservation_monitor, derive_conserved_quantity, expand_H_of_step


@click.group("conserved", help="Formal conserved quantity of the rescaled Kahan map")
def conserved():
	pass


@conserved.command("derive", help="Exact corrections H̄₂, H̄₄, …; columns order,term,polynomial")
@click.option("--order", type=int, help="Even truncation order, default 2")
@click.option("--expansion", is_flag=True, help="Also list the h-series of H(P⁰(z)) to order 3")
@output_options
@pass_context
def derive(context, expansion, **flags):
	config = get_config(context, "conserved", flags)
	fcq = derive_conserved_quantity(config.order)
	data = [(0, "H", "e^(-2y) * (" + fcq.terms()[0].to_text() + ")")]
	for i, correction in enumerate(fcq.corrections, start=1):
		data.append((2 * i, f"Hbar_{2 * i}", "e^(-2y) * (" + correction.to_text() + ")"))
	if expansion:
		series = expand_H_of_step(3)
		for k in range(4):
			data.append((k, f"H(P0)_h^{k}", "e^(-2y) * (" + series.coefficient(k).to_text() + ")"))

	columns = [column("order", fieldtype="Int"), column("term", fieldtype="Data"), column("polynomial", fieldtype="Data")]
	emit(columns, data, config)


@conserved.command("monitor", help="H and H̄ along a chart-K2 orbit; columns n,H,Hbar")
@click.option("--map", "map_id", type=click.Choice(["k2-kahan", "k2-euler"]))
@click.option("--h", type=float)
@click.option("--x0", type=float)
@click.option("--y0", type=float)
@click.option("--steps", type=int)
@click.option("--order", type=int)
@output_options
@pass_context
def monitor(context, **flags):
	config = get_config(context, "conserved", flags)
	traj = run_simulation(config)
	report = conservation_monitor(traj, derive_conserved_quantity(config.order))
	columns = [column("n", fieldtype="Int"), column("H"), column("Hbar")]
	emit(columns, report.rows, config, traj.singular_at)


commands = [conserved]
