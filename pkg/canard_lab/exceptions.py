# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

# BEWARE don't put anything in this file except exceptions


class CanardLabError(Exception):
	exit_code = 1


class ValidationError(CanardLabError):
	exit_code = 2


class DomainError(ValidationError):
	pass


class LeftChartDomainError(DomainError):
	"""The image left the chart: r̃₁ = √ỹ is undefined for ỹ ≤ 0."""


class ConfigError(ValidationError):
	pass


class PreconditionError(ValidationError):
	pass


class OrderMismatchError(ValidationError):
	pass


class NotInvertibleError(ValidationError):
	pass


class DegreeOverflowError(ValidationError):
	pass


class UnsupportedOperationError(ValidationError):
	pass


class SingularStepError(CanardLabError):
	exit_code = 3

	def __init__(self, z, h, message=None):
		self.z = tuple(float(c) for c in z)
		self.h = h
		super().__init__(message or f"singular step at z={self.z}, h={h}")


class SingularDensityError(CanardLabError):
	pass


class DerivationFailure(CanardLabError):
	pass


class DegenerateError(CanardLabError):
	pass


class ContaminationError(CanardLabError):
	def __init__(self, n, residual, tolerance):
		self.n = n
		self.residual = residual
		super().__init__(
			f"adjoint pairing residual {residual:.3e} at n={n} exceeds {tolerance:.1e}"
		)
