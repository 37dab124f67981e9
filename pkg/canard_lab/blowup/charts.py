# Copyright (c) 2026, Canard Lab Contributors
# License: MIT. See license.txt

import math
from dataclasses import astuple, dataclass

from canard_lab.exceptions import DomainError


def _require_finite(name, values):
	if not all(math.isfinite(v) for v in values):
		raise DomainError(f"{name} coordinates must be finite, got {values}")


@dataclass(frozen=True)
class ChartPointK1:
	"""Entry/exit chart: x = r₁x₁, y = r₁², ε = r₁²ε₁, λ = r₁λ₁, h = h₁/r₁"""

	x1: float
	r1: float
	eps1: float
	lambda1: float
	h1: float

	def __post_init__(self):
		_require_finite("K1", astuple(self))
		if self.r1 < 0 or self.eps1 < 0 or self.h1 < 0:
			raise DomainError(f"r1, eps1 and h1 must be >= 0, got {self}")

	def as_tuple(self) -> tuple[float, ...]:
		return astuple(self)


@dataclass(frozen=True)
class ChartPointK2:
	"""Rescaling chart: x = r₂x₂, y = r₂²y₂, ε = r₂², λ = r₂λ₂, h = h₂/r₂"""

	x2: float
	y2: float
	r2: float
	lambda2: float
	h2: float

	def __post_init__(self):
		_require_finite("K2", astuple(self))
		if self.r2 < 0 or self.h2 < 0:
			raise DomainError(f"r2 and h2 must be >= 0, got {self}")

	def as_tuple(self) -> tuple[float, ...]:
		return astuple(self)


@dataclass(frozen=True)
class OriginalPoint:
	x: float
	y: float
	epsilon: float
	lam: float
	# None when the radial coordinate is zero and h cannot be recovered
	h: float | None = None

	def __post_init__(self):
		if self.epsilon < 0 or (self.h is not None and self.h < 0):
			raise DomainError(f"epsilon and h must be >= 0, got {self}")


@dataclass(frozen=True)
class DomainD1:
	"""Bounds 0 ≤ r₁ ≤ ρ, 0 ≤ ε₁ ≤ δ, 0 ≤ h₁ ≤ ν of the K1 analysis.

	The estimates behind the center manifolds also ask ν < 2K/(1 + K²) for the
	contraction bound K of the slow flow; that bound is not checked here.
	"""

	rho: float = 1.0
	delta: float = 1.0
	nu: float = 0.9

	def __post_init__(self):
		if not (self.rho > 0 and self.delta > 0):
			raise DomainError(f"rho and delta must be > 0, got {self}")
		if not 0 < self.nu < 1:
			raise DomainError(f"nu must lie in (0, 1), got {self.nu}")

	def contains(self, p: ChartPointK1) -> bool:
		return 0 <= p.r1 <= self.rho and 0 <= p.eps1 <= self.delta and 0 <= p.h1 <= self.nu

	def point(self, x1: float, r1: float, eps1: float, lambda1: float, h1: float) -> ChartPointK1:
		p = ChartPointK1(x1, r1, eps1, lambda1, h1)
		if not self.contains(p):
			raise DomainError(f"{p} lies outside {self}")
		return p


def kappa12(p: ChartPointK1) -> ChartPointK2:
	if not p.eps1 > 0:
		raise DomainError(f"kappa12 needs eps1 > 0, got {p.eps1}")

	root = math.sqrt(p.eps1)
	return ChartPointK2(
		x2=p.x1 / root,
		y2=1 / p.eps1,
		r2=p.r1 * root,
		lambda2=p.lambda1 / root,
		h2=p.h1 * root,
	)


def kappa21(p: ChartPointK2) -> ChartPointK1:
	if not p.y2 > 0:
		raise DomainError(f"kappa21 needs y2 > 0, got {p.y2}")

	root = math.sqrt(p.y2)
	return ChartPointK1(
		x1=p.x2 / root,
		r1=p.r2 * root,
		eps1=1 / p.y2,
		lambda1=p.lambda2 / root,
		h1=p.h2 * root,
	)


def blowdown_k1(p: ChartPointK1, with_h: bool = True) -> OriginalPoint:
	if with_h and not p.r1 > 0:
		raise DomainError("h = h1/r1 is undefined at r1 = 0")

	r = p.r1
	return OriginalPoint(
		x=r * p.x1,
		y=r * r,
		epsilon=r * r * p.eps1,
		lam=r * p.lambda1,
		h=p.h1 / r if with_h else None,
	)


def blowdown_k2(p: ChartPointK2, with_h: bool = True) -> OriginalPoint:
	if with_h and not p.r2 > 0:
		raise DomainError("h = h2/r2 is undefined at r2 = 0")

	r = p.r2
	return OriginalPoint(
		x=r * p.x2,
		y=r * r * p.y2,
		epsilon=r * r,
		lam=r * p.lambda2,
		h=p.h2 / r if with_h else None,
	)
