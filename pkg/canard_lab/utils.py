# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

from collections.abc import Callable, Sequence

import numpy as np


class _dict(dict):
	"""dict like object that exposes keys as attributes"""

	__slots__ = ()
	__getattr__ = dict.get
	__setattr__ = dict.__setitem__
	__delattr__ = dict.__delitem__


def fd_step(value: float, rel_step: float) -> float:
	return rel_step * max(1.0, abs(value))


def central_difference_jacobian(
	func: Callable[[np.ndarray], Sequence[float]],
	point: Sequence[float],
	rel_step: float = 1e-6,
) -> np.ndarray:
	"""Jacobian of `func` at `point` by central differences.

	:param func: maps an n-vector to an m-vector
	:param point: where to differentiate
	:param rel_step: step is rel_step * max(1, |coordinate|)
	"""
	point = np.asarray(point, dtype=float)
	columns = []
	for i, value in enumerate(point):
		step = fd_step(value, rel_step)
		forward, backward = point.copy(), point.copy()
		forward[i] += step
		backward[i] -= step
		columns.append(
			(np.asarray(func(forward), dtype=float) - np.asarray(func(backward), dtype=float))
			/ (2 * step)
		)
	return np.column_stack(columns)


def peak_to_peak(values: Sequence[float]) -> float:
	if not len(values):
		return 0.0
	return float(np.ptp(np.asarray(values, dtype=float)))
