# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

from pathlib import Path

import click

from canard_lab.commands import pass_context
from canard_lab.commands.figures import RECIPES, FigureRecipe, get_recipe, reproduce_figure
from canard_lab.commands.output import format_value, to_csv
from canard_lab.exceptions import ConfigError
from canard_lab.utils import _dict


def sidecar_text(recipe: FigureRecipe, result: _dict) -> str:
	lines = [f"figure: {recipe.figure_id}", f"claim: {recipe.claim}"]
	lines += [f"{key}: {format_value(value)}" for key, value in result.measured.items()]
	if result.singular_at:
		lines.append(f"singular at n={', '.join(map(str, result.singular_at))}")
	lines.append(f"verdict: {'reproduced' if result.passed else 'NOT reproduced'}")
	return "\n".join(lines) + "\n"


def write_figure(recipe: FigureRecipe, output_dir: Path) -> _dict:
	"""<figure>.csv with the data, <figure>.txt with the claim and its verdict."""
	result = reproduce_figure(recipe)
	output_dir.mkdir(parents=True, exist_ok=True)
	(output_dir / f"{recipe.figure_id}.csv").write_text(
		to_csv(result.columns, result.data, recipe.config, result.singular_at)
	)
	(output_dir / f"{recipe.figure_id}.txt").write_text(sidecar_text(recipe, result))
	return result


@click.command("reproduce", help="Regenerate figure data; one CSV and one .txt verdict per figure")
@click.option("--figure", "figures", multiple=True, type=click.Choice(list(RECIPES)))
@click.option("--all", "all_figures", is_flag=True)
@click.option("--output-dir", type=click.Path(file_okay=False), default="figures", show_default=True)
@pass_context
def reproduce(context, figures, all_figures, output_dir):
	if not figures and not all_figures:
		raise ConfigError("pass --figure ID or --all")

	failed = []
	for figure_id in RECIPES if all_figures else figures:
		result = write_figure(get_recipe(figure_id), Path(output_dir))
		click.echo(f"{figure_id}: {'reproduced' if result.passed else 'NOT reproduced'}")
		if not result.passed:
			failed.append(figure_id)

	if failed:
		click.get_current_context().exit(1)


commands = [reproduce]
