# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from canard_lab.exceptions import (
	CanardLabError,
	DomainError,
	PreconditionError,
	UnsupportedOperationError,
)
from canard_lab.integrators.maps import (
	CanardParams,
	PlanarState,
	canard_denominator,
	canard_euler_map,
	canard_kahan_step,
	k2_denominator,
	k2_euler_map,
	k2_kahan_step,
)

logger = logging.getLogger(__name__)

# step(params, state, signed h) -> state
Step = Callable[[CanardParams, PlanarState, float], PlanarState]
Denominator = Callable[[CanardParams, PlanarState, float], float]


@dataclass(frozen=True)
class PlanarMap:
	name: str
	step: Step
	invertible: bool
	denominator: Denominator | None = None


def _kahan(params: CanardParams, s: PlanarState, h: float) -> PlanarState:
	return PlanarState(*canard_kahan_step(params.epsilon, params.lam, h, params.a, s.x, s.y))


def _euler(params: CanardParams, s: PlanarState, h: float) -> PlanarState:
	return canard_euler_map(params, s)


def _k2_kahan(params: CanardParams, s: PlanarState, h: float) -> PlanarState:
	return PlanarState(*k2_kahan_step(h, params.lam, params.r, params.a, s.x, s.y))


def _k2_euler(params: CanardParams, s: PlanarState, h: float) -> PlanarState:
	return k2_euler_map(h, params.lam, params.r, s, params.a)


MAPS: dict[str, PlanarMap] = {
	"kahan": PlanarMap("kahan", _kahan, True, canard_denominator),
	"euler": PlanarMap("euler", _euler, False),
	"k2-kahan": PlanarMap("k2-kahan", _k2_kahan, True, k2_denominator),
	"k2-euler": PlanarMap("k2-euler", _k2_euler, False),
}
K2_MAPS = ("k2-kahan", "k2-euler")


def get_map(map_id: str) -> PlanarMap:
	try:
		return MAPS[map_id]
	except KeyError:
		raise UnsupportedOperationError(
			f"unknown planar map {map_id!r}, expected one of {', '.join(MAPS)}"
		) from None


@dataclass(frozen=True)
class Trajectory:
	"""States n = start_index, start_index + 1, ... of a single named map."""

	map_id: str
	params: CanardParams
	states: tuple[PlanarState, ...]
	start_index: int = 0
	# indices at which iteration stopped on a pole or an escape
	singular_at: tuple[int, ...] = field(default_factory=tuple)

	def __len__(self):
		return len(self.states)

	@property
	def indices(self) -> range:
		return range(self.start_index, self.start_index + len(self.states))

	@property
	def end_index(self) -> int:
		return self.start_index + len(self.states) - 1

	def state(self, n: int) -> PlanarState:
		return self.states[n - self.start_index]

	def as_array(self) -> np.ndarray:
		return np.array([(s.x, s.y) for s in self.states]).reshape(-1, 2)

	def rows(self):
		for n, s in zip(self.indices, self.states):
			yield n, s.x, s.y


def _run(planar_map: PlanarMap, params: CanardParams, s0: PlanarState, steps: int, h: float):
	"""Iterate `steps` times with signed step h; stops at a pole or an escape."""
	states = [s0]
	reference = planar_map.denominator(params, s0, h) if planar_map.denominator else None
	for n in range(1, steps + 1):
		try:
			s = planar_map.step(params, states[-1], h)
		except (CanardLabError, DomainError, OverflowError) as e:
			logger.info("%s stopped before step %d: %s", planar_map.name, n, e)
			return states, n - 1

		states.append(s)
		if reference is not None:
			denominator = planar_map.denominator(params, s, h)
			if denominator * reference <= 0:
				logger.info(
					"%s denominator changed sign at step %d, state (%r, %r)",
					planar_map.name, n, s.x, s.y,
				)
				return states, n
	return states, None


def iterate(
	map_id: str, params: CanardParams, s0: PlanarState, n_from: int, n_to: int
) -> Trajectory:
	"""Orbit of s0 (placed at index 0) over the index range [n_from, n_to].

	Iteration in either direction stops at the first state where the map's
	denominator det(Id − (h/2)Df) has changed sign; that index is recorded in
	`singular_at` and the state itself is kept.
	"""
	if not n_from <= 0 <= n_to:
		raise PreconditionError(f"index range [{n_from}, {n_to}] must contain 0")

	planar_map = get_map(map_id)
	if n_from < 0 and not planar_map.invertible:
		raise UnsupportedOperationError(f"{map_id} is not invertible; backward iteration refused")

	singular_at = []
	forward, stop = _run(planar_map, params, s0, n_to, params.h)
	if stop is not None:
		singular_at.append(stop)

	backward = [s0]
	if n_from < 0:
		backward, stop = _run(planar_map, params, s0, -n_from, -params.h)
		if stop is not None:
			singular_at.append(-stop)

	states = tuple(reversed(backward[1:])) + tuple(forward)
	return Trajectory(
		map_id=map_id,
		params=params,
		states=states,
		start_index=-(len(backward) - 1),
		singular_at=tuple(sorted(singular_at)),
	)
