# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
import sys
from functools import wraps

import click

import canard_lab
from canard_lab import hooks
from canard_lab.config import RunConfig, load_config_file
from canard_lab.exceptions import CanardLabError
from canard_lab.utils import _dict

logger = logging.getLogger(__name__)


def pass_context(f):
	@wraps(f)
	def _func(ctx, *args, **kwargs):
		return f(_dict(ctx.obj or {}), *args, **kwargs)

	return click.pass_context(_func)


def get_config(context, command: str, flags: dict) -> RunConfig:
	"""Flags override the `--config` file, which overrides the defaults."""
	file_values = load_config_file(context.config_file) if context.config_file else {}
	return RunConfig.from_sources(command, file_values, flags)


def emit(columns, data, config: RunConfig, singular_at=()):
	from canard_lab.commands.output import render, write

	data = list(data)
	write(render(columns, data, config, singular_at), config.output_path)
	if singular_at:
		click.echo(
			f"singular step: iteration stopped at n={', '.join(map(str, singular_at))}", err=True
		)
		sys.exit(3)


def setup_logging(verbose: bool = False, debug: bool = False):
	root = logging.getLogger("canard_lab")
	# rebind to the current stderr on every invocation
	for handler in [h for h in root.handlers if getattr(h, "_canard_lab", False)]:
		root.removeHandler(handler)

	handler = logging.StreamHandler(sys.stderr)
	handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
	handler._canard_lab = True
	root.addHandler(handler)
	root.setLevel(logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING)


class CanardLabGroup(click.Group):
	"""Maps library errors onto their exit codes."""

	def invoke(self, ctx):
		try:
			return super().invoke(ctx)
		except CanardLabError as e:
			click.echo(f"Error: {e}", err=True)
			ctx.exit(e.exit_code)


def get_commands():
	# prevent circular imports
	from .analysis import commands as analysis_commands
	from .conserved import commands as conserved_commands
	from .hamiltonian import commands as hamiltonian_commands
	from .reproduce import commands as reproduce_commands
	from .simulate import commands as simulate_commands

	return (
		simulate_commands
		+ analysis_commands
		+ conserved_commands
		+ hamiltonian_commands
		+ reproduce_commands
	)


commands = get_commands()


@click.group(
	cls=CanardLabGroup,
	commands={c.name: c for c in commands},
	help=f"{hooks.app_title}: {hooks.app_description}",
)
@click.version_option(canard_lab.__version__, prog_name=hooks.app_name)
@click.option("--verbose", is_flag=True, help="Log progress at INFO")
@click.option("--debug", is_flag=True, help="Log everything at DEBUG")
@click.option(
	"--config", "config_file", type=click.Path(exists=True, dir_okay=False), help="`key = value` file"
)
@click.pass_context
def cli(ctx, verbose, debug, config_file):
	setup_logging(verbose, debug)
	ctx.obj = {"config_file": config_file}


def main():
	cli(prog_name="canard-lab")
