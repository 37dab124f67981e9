from canard_lab.integrators.field import (
	ZERO_COEFFICIENTS,
	Coefficients,
	QuadraticVectorField,
	canard_field,
	k2_field,
	rotation_field,
)
from canard_lab.integrators.maps import (
	CanardParams,
	PlanarState,
	canard_euler_map,
	canard_kahan_map,
	canard_kahan_step,
	k2_euler_map,
	k2_kahan_map,
	k2_kahan_map_a1,
	k2_kahan_step,
	p0_jacobian,
	p0_map,
	slow_subsystem_residual,
	slow_subsystem_roots,
)
from canard_lab.integrators.steppers import (
	euler_step,
	kahan_bilinear_residual,
	kahan_denominator,
	kahan_inverse_step,
	kahan_step,
	reference_flow,
	rk_form_residual,
)
from canard_lab.integrators.trajectory import MAPS, Trajectory, get_map, iterate
