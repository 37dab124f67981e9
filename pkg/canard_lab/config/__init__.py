# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from canard_lab.exceptions import ConfigError
from canard_lab.utils import _dict

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "CANARD_LAB_THREADS"

COMMANDS = (
	"simulate",
	"invariant-check",
	"melnikov",
	"critical-curve",
	"conserved",
	"blowup",
	"hamiltonian",
	"reproduce",
)
MAP_IDS = ("kahan", "euler", "k2-kahan", "k2-euler", "symplectic-euler")
FORMATS = ("csv", "json")

# config files spell the bifurcation parameter out
KEY_ALIASES = {"lambda": "lam", "n": "N", "output": "output_path"}

# library tunables, read as `conf.get(key) or default` at the call site
conf = _dict(
	max_degree=12,
	series_order=6,
	fd_step=1e-6,
	pivot_tolerance=1e-13,
	melnikov_window=8.0,
	melnikov_max_window=25.0,
	contamination_tolerance=1e-8,
	fit_tolerance=0.15,
)


@dataclass(frozen=True)
class RunConfig:
	command: str = "simulate"
	map_id: str = "k2-kahan"
	h: float = 0.01
	epsilon: float = 0.0
	lam: float = 0.0
	r: float = 0.0
	a1: float = 0.0
	a2: float = 0.0
	a4: float = 0.0
	a5: float = 0.0
	N: int = 800
	steps: int = 1000
	backward_steps: int = 0
	x0: float = 0.0
	y0: float = -0.4
	order: int = 2
	boundary_corrected: bool = False
	output_path: str = "-"
	format: str = "csv"

	def __post_init__(self):
		if self.command not in COMMANDS:
			raise ConfigError(f"unknown command {self.command!r}")
		if self.map_id not in MAP_IDS:
			raise ConfigError(f"unknown map {self.map_id!r}, expected one of {', '.join(MAP_IDS)}")
		if self.format not in FORMATS:
			raise ConfigError(f"unknown format {self.format!r}")
		if not self.h > 0:
			raise ConfigError(f"h must be positive, got {self.h}")
		if self.epsilon < 0:
			raise ConfigError(f"epsilon must be non-negative, got {self.epsilon}")
		if self.steps < 0 or self.backward_steps < 0:
			raise ConfigError("steps must be non-negative")
		if self.N < 1:
			raise ConfigError(f"N must be at least 1, got {self.N}")
		if self.order < 0 or self.order % 2:
			raise ConfigError(f"order must be an even integer >= 0, got {self.order}")

	@property
	def a(self) -> tuple[float, float, float, float]:
		return (self.a1, self.a2, self.a4, self.a5)

	def canonical(self) -> str:
		"""Stable one-line serialization used for CSV provenance."""
		return "; ".join(f"{key}={value!r}" for key, value in sorted(asdict(self).items()))

	def as_dict(self) -> dict:
		return asdict(self)

	def update(self, **values) -> "RunConfig":
		return replace(self, **values)

	@classmethod
	def from_sources(
		cls, command: str, file_values: dict | None = None, flag_values: dict | None = None
	) -> "RunConfig":
		"""Flags override config-file entries override defaults."""
		values = {}
		for source in (file_values or {}, flag_values or {}):
			for key, value in source.items():
				if value is None:
					continue
				values[normalize_key(key)] = value
		values["command"] = command

		known = {f.name: f for f in fields(cls)}
		unknown = sorted(set(values) - set(known))
		if unknown:
			raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

		return cls(**{key: coerce(known[key].type, key, value) for key, value in values.items()})


def normalize_key(key: str) -> str:
	key = key.strip().replace("-", "_")
	return KEY_ALIASES.get(key, key)


def coerce(kind, key: str, value):
	if not isinstance(value, str):
		return value

	kind = kind if isinstance(kind, str) else kind.__name__
	try:
		if kind == "bool":
			if value.lower() in ("1", "true", "yes", "on"):
				return True
			if value.lower() in ("0", "false", "no", "off"):
				return False
			raise ValueError(value)
		if kind == "int":
			return int(value)
		if kind == "float":
			return float(value)
	except ValueError:
		raise ConfigError(f"invalid value {value!r} for {key}") from None

	return value


def load_config_file(path: str | Path) -> dict[str, str]:
	"""Read plain-text `key = value` lines; `#` starts a comment."""
	values = {}
	for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
		line = line.split("#", 1)[0].strip()
		if not line:
			continue
		if "=" not in line:
			raise ConfigError(f"{path}:{lineno}: expected `key = value`")
		key, value = (part.strip() for part in line.split("=", 1))
		values[key] = value

	logger.debug("loaded %d config entries from %s", len(values), path)
	return values


def get_thread_cap() -> int:
	value = os.environ.get(THREADS_ENV_VAR)
	if not value:
		return os.cpu_count() or 1
	try:
		return max(1, int(value))
	except ValueError:
		raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {value!r}") from None
