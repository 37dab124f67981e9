# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import click

from canard_lab.blowup import k1_fixed_points, k1_jacobian_eigen_check, special_solution_distance
from canard_lab.commands import emit, get_config, pass_context
from canard_lab.commands.output import column
from canard_lab.commands.simulate import coefficient_options, output_options, parameter_options
from canard_lab.config import RunConfig
from canard_lab.melnikov import constant_C, lambda_c_estimate, melnikov_sums, melnikov_sweep

MELNIKOV_COLUMNS = [
	column("h"),
	column("N", fieldtype="Int"),
	column("d_lambda", "d_λ (raw sum)"),
	column("d_r", "d_r (raw sum)"),
	column("err_lambda", "d_λ + √(2π)"),
	column("err_r", "d_r + C√(2π)"),
	column("d_lambda_over_h", "d_λ/h"),
	column("d_r_over_h", "d_r/h"),
]


def sweep_cells(config: RunConfig, levels: int = 4) -> list[tuple]:
	"""h, h/2, h/4, … at a fixed window N·h."""
	return [(config.h / 2**k, config.N * 2**k, config.a) for k in range(levels)]


@click.command(
	"melnikov",
	help="Discrete Melnikov sums along γ_h; columns " + ",".join(c["fieldname"] for c in MELNIKOV_COLUMNS),
)
@parameter_options
@click.option("--N", "N", type=int, help="Sum over n = −N, …, N − 1")
@click.option("--boundary-corrected", is_flag=True)
@click.option("--sweep", is_flag=True, help="Halve h three times at fixed N·h, in parallel")
@output_options
@pass_context
def melnikov(context, sweep, **flags):
	flags["boundary_corrected"] = flags["boundary_corrected"] or None
	config = get_config(context, "melnikov", flags)
	if sweep:
		results = melnikov_sweep(sweep_cells(config), config.boundary_corrected)
	else:
		results = [melnikov_sums(config.h, config.N, config.a, config.boundary_corrected)]
	emit(MELNIKOV_COLUMNS, [r.as_row() for r in results], config)


@click.command("critical-curve", help="λ_c ≈ −(d_r/d_λ)ε; columns epsilon,h,lambda_c,minus_C_epsilon")
@click.option("--epsilon", "epsilons", type=float, multiple=True, help="Repeatable; default 0.01")
@click.option("--h", type=float, help="Step size in original coordinates")
@coefficient_options
@output_options
@pass_context
def critical_curve(context, epsilons, **flags):
	config = get_config(context, "critical-curve", flags)
	columns = [column("epsilon"), column("h"), column("lambda_c"), column("minus_C_epsilon")]
	data = [
		(epsilon, config.h, lambda_c_estimate(epsilon, config.h, config.a), -constant_C(config.a) * epsilon)
		for epsilon in epsilons or (0.01,)
	]
	emit(columns, data, config)


@click.command("blowup", help="Chart K1 fixed points, eigen-action and decay of γ_h towards them")
@click.option("--h1", type=float, default=0.1, show_default=True)
@click.option("--h", type=float, help="Step of γ_h for the distance rows")
@output_options
@pass_context
def blowup(context, h1, **flags):
	config = get_config(context, "blowup", flags)
	check = k1_jacobian_eigen_check(h1)
	columns = [
		column("quantity", fieldtype="Data"),
		column("n", fieldtype="Int"),
		column("x1"),
		column("value"),
		column("expected"),
	]
	p_a, p_r = k1_fixed_points(h1)
	data = [
		("multiplier", None, p_a.point.x1, p_a.derivative, (1 - h1) / (1 + h1)),
		("multiplier", None, p_r.point.x1, p_r.derivative, (1 + h1) / (1 - h1)),
		("eigen_deviation", None, -1.0, check.dev_a, 0.0),
		("eigen_deviation", None, 1.0, check.dev_r, 0.0),
	]
	# γ_h(n) enters chart K1 once its y is positive, for |n| > √2/h
	for scale in (2, 4, 8, 16):
		n = round(scale / config.h)
		for sign in (-1, 1):
			data.append(("distance", sign * n, float(sign), special_solution_distance(sign * n, config.h), 0.0))
	emit(columns, data, config)


commands = [melnikov, critical_curve, blowup]
