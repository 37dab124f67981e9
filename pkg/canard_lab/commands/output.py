# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import csv
import io
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import click

from canard_lab import hooks
from canard_lab.config import RunConfig

logger = logging.getLogger(__name__)


def column(fieldname: str, label: str | None = None, fieldtype: str = "Float") -> dict:
	return {"fieldname": fieldname, "label": label or fieldname, "fieldtype": fieldtype}


def format_value(value) -> str:
	if isinstance(value, bool):
		return "1" if value else "0"
	if isinstance(value, int):
		return str(value)
	if isinstance(value, float):
		if math.isnan(value):
			return "nan"
		return format(value, hooks.csv_float_format)
	if value is None:
		return ""
	return str(value)


def to_csv(
	columns: Sequence[dict],
	data: Iterable[Sequence],
	config: RunConfig | None = None,
	singular_at: Sequence[int] = (),
) -> str:
	"""Header row after one `# config:` provenance line; `# singular at n=` trailers last."""
	buffer = io.StringIO()
	if config is not None:
		buffer.write(f"{hooks.csv_config_prefix}{config.canonical()}\n")

	writer = csv.writer(buffer, lineterminator="\n")
	writer.writerow([c["fieldname"] for c in columns])
	for row in data:
		writer.writerow([format_value(v) for v in row])

	for n in singular_at:
		buffer.write(f"{hooks.csv_singular_prefix}{n}\n")
	return buffer.getvalue()


def _json_value(value):
	if isinstance(value, float) and not math.isfinite(value):
		return str(value)
	return value


def to_json(
	columns: Sequence[dict],
	data: Iterable[Sequence],
	config: RunConfig | None = None,
	singular_at: Sequence[int] = (),
) -> str:
	fieldnames = [c["fieldname"] for c in columns]
	document = {
		"config": config.as_dict() if config is not None else None,
		"columns": list(columns),
		"rows": [dict(zip(fieldnames, map(_json_value, row))) for row in data],
		"singular_at": list(singular_at),
	}
	return json.dumps(document, indent=1, sort_keys=False) + "\n"


def render(columns, data, config: RunConfig, singular_at: Sequence[int] = ()) -> str:
	if config.format == "json":
		return to_json(columns, data, config, singular_at)
	return to_csv(columns, data, config, singular_at)


def write(text: str, path: str | Path = "-"):
	if str(path) == "-":
		click.echo(text, nl=False)
		return

	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	path.write_text(text)
	logger.info("wrote %s", path)
