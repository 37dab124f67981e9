from canard_lab.melnikov.adjoint import AdjointState, adjoint_orbit, check_window
from canard_lab.melnikov.perturbation import hatG, hatG_a1, hatJ
from canard_lab.melnikov.sums import (
	SQRT_2PI,
	MelnikovResult,
	constant_C,
	continuous_targets,
	distance_expansion_check,
	first_integral_melnikov_sums,
	lambda_c_estimate,
	manifold_gap,
	melnikov_sums,
	melnikov_sweep,
	telescope_residuals,
	window_steps,
)
