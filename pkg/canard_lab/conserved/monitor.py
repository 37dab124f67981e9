# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import logging

import numpy as np

from canard_lab.conserved.formal import FormalConservedQuantity, hbar_eval
from canard_lab.exceptions import PreconditionError
from canard_lab.integrators.trajectory import K2_MAPS, Trajectory
from canard_lab.utils import _dict, peak_to_peak

logger = logging.getLogger(__name__)


def conservation_monitor(traj: Trajectory, fcq: FormalConservedQuantity) -> _dict:
	"""H and H̄ at every index of a chart-K2 trajectory.

	Returns rows of (n, H, Hbar) together with the peak-to-peak variation of
	each column. An orbit that escapes to infinity leaves non-finite values
	behind; `nonfinite_from` is the first such index and the peak-to-peak
	figures only cover the states before it.
	"""
	if traj.map_id not in K2_MAPS:
		raise PreconditionError(f"conservation monitor needs a chart-K2 trajectory, got {traj.map_id}")

	z = traj.as_array()
	xs, ys = z[:, 0], z[:, 1]
	with np.errstate(over="ignore", invalid="ignore"):
		h_values = 0.5 * np.exp(-2 * ys) * (ys - xs * xs + 0.5)
		hbar_values = hbar_eval(xs, ys, traj.params.h, fcq)

	finite = np.isfinite(h_values) & np.isfinite(hbar_values)
	cut = len(finite) if finite.all() else int(np.argmin(finite))
	nonfinite_from = None if cut == len(finite) else traj.indices[cut]
	if nonfinite_from is not None:
		logger.warning(
			"%s escaped: H or Hbar is not finite from n=%d on, %d of %d states kept for the variation",
			traj.map_id, nonfinite_from, cut, len(finite),
		)

	report = _dict(
		rows=[(n, float(a), float(b)) for n, a, b in zip(traj.indices, h_values, hbar_values)],
		ptp_H=peak_to_peak(h_values[:cut]),
		ptp_Hbar=peak_to_peak(hbar_values[:cut]),
		order=fcq.order,
		nonfinite_from=nonfinite_from,
	)
	logger.debug(
		"%s over %d states: ptp H = %.3e, ptp Hbar = %.3e",
		traj.map_id, len(traj), report.ptp_H, report.ptp_Hbar,
	)
	return report
