from canard_lab.blowup.charts import (
	ChartPointK1,
	ChartPointK2,
	DomainD1,
	OriginalPoint,
	blowdown_k1,
	blowdown_k2,
	kappa12,
	kappa21,
)
from canard_lab.blowup.k1 import (
	FixedPointK1,
	k1_closed_form,
	k1_fixed_points,
	k1_jacobian_eigen_check,
	k1_kahan_map,
	k1_slice_jacobian,
	special_solution_distance,
)
