from canard_lab.conserved.first_integral import (
	H,
	derivative_classification,
	gamma_h,
	grad_H,
	invariant_density,
	on_curve,
	on_curve_eps,
	p0_det_ratio_check,
	phi_h,
	phi_h_eps,
)
from canard_lab.conserved.formal import (
	ExpWeightedPoly,
	FormalConservedQuantity,
	defect_series,
	derive_conserved_quantity,
	expand_H_of_step,
	hbar_eval,
	solve_correction,
	transport_operator,
)
from canard_lab.conserved.monitor import conservation_monitor
