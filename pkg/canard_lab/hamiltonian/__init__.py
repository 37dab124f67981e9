from canard_lab.hamiltonian.coordinates import (
	H_hat,
	HamiltonianState,
	hamiltonian_vf,
	kahan_area_factor,
	phi,
	rho,
	rho_inv,
	rho_jacobian_det,
)
from canard_lab.hamiltonian.symplectic import (
	hamiltonian_check,
	hamiltonian_flow_drift,
	simulate_symplectic,
	symplectic_euler_step,
)
