"""Elastic mismatch constants for a crack on a bimaterial interface.

Two isotropic half-spaces joined along the plane x2 = 0 are described by
their shear moduli mu+/mu- and Poisson ratios nu+/nu-.  Every coefficient
appearing in the antiplane and plane-strain integral identities, and in
the 3D symbol matrices, is built from the eight scalars

    b     = (1 - nu+)/mu+ + (1 - nu-)/mu-
    e     = nu+/mu+ + nu-/mu-
    d     = (1 - 2 nu+)/(2 mu+) - (1 - 2 nu-)/(2 mu-)
    f     = nu+/mu+ - nu-/mu-
    eta   = (mu- - mu+)/(mu- + mu+)
    alpha = [mu-(1 - nu+) - mu+(1 - nu-)] / [mu-(1 - nu+) + mu+(1 - nu-)]
    gamma = [mu-(1 - 2 nu+) + mu+(1 - 2 nu-)] / (2[mu-(1 - nu+) + mu+(1 - nu-)])
    p     = b^2 / (b^2 - d^2)

b, e, d, f carry compliance units (1/stress); the rest are dimensionless.
d/b and alpha are the Dundurs mismatch parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

__all__ = ["ElasticHalfSpace", "BimaterialConstants", "compute_constants"]


@dataclass(frozen=True)
class ElasticHalfSpace:
    """Isotropic elastic half-space (shear modulus > 0, -1 < nu < 0.5)."""

    shear_modulus: float
    poisson_ratio: float

    def __post_init__(self):
        if not self.shear_modulus > 0.0:
            raise ValidationError(
                f"shear_modulus must be positive, got {self.shear_modulus}"
            )
        # nu = 0.5 is rejected: the incompressible limit degenerates the
        # b - e type combinations used by the plane-strain operators.
        if not -1.0 < self.poisson_ratio < 0.5:
            raise ValidationError(
                f"poisson_ratio must lie in (-1, 0.5), got {self.poisson_ratio}"
            )


@dataclass(frozen=True)
class BimaterialConstants:
    """Scalar mismatch constants of an upper/lower half-space pair."""

    b: float
    e: float
    d: float
    f: float
    alpha: float
    gamma: float
    eta: float
    p: float

    def __post_init__(self):
        if not self.b > 0.0:
            raise ValidationError(f"b must be positive, got {self.b}")
        if not self.b + self.e > 0.0:
            raise ValidationError(f"b + e must be positive, got {self.b + self.e}")
        if not self.b**2 - self.d**2 > 0.0:
            raise ValidationError("b^2 - d^2 must be positive")
        # p = b^2/(b^2 - d^2) >= 1 whenever d != 0.  The Fredholm scaling
        # downstream relies on p >= 1; see the project notes for the
        # provenance of this bound.
        if self.p < 1.0 - 1e-12:
            raise ValidationError(f"p must satisfy p >= 1, got {self.p}")
        if abs(self.eta) >= 1.0:
            raise ValidationError(f"|eta| must be < 1, got {self.eta}")
        if abs(self.alpha) >= 1.0:
            raise ValidationError(f"|alpha| must be < 1, got {self.alpha}")

    @property
    def is_decoupled(self) -> bool:
        """True when d = 0 and the plane-strain system splits componentwise."""
        return self.d == 0.0


def compute_constants(
    upper: ElasticHalfSpace, lower: ElasticHalfSpace
) -> BimaterialConstants:
    """Evaluate all eight mismatch constants for a material pair.

    ``upper`` occupies x2 > 0 (the ``+`` side), ``lower`` x2 < 0.
    Pure function of the inputs; double precision throughout.
    """
    mu_p, nu_p = upper.shear_modulus, upper.poisson_ratio
    mu_m, nu_m = lower.shear_modulus, lower.poisson_ratio

    b = (1.0 - nu_p) / mu_p + (1.0 - nu_m) / mu_m
    e = nu_p / mu_p + nu_m / mu_m
    d = (1.0 - 2.0 * nu_p) / (2.0 * mu_p) - (1.0 - 2.0 * nu_m) / (2.0 * mu_m)
    f = nu_p / mu_p - nu_m / mu_m
    eta = (mu_m - mu_p) / (mu_m + mu_p)
    denom = mu_m * (1.0 - nu_p) + mu_p * (1.0 - nu_m)
    alpha = (mu_m * (1.0 - nu_p) - mu_p * (1.0 - nu_m)) / denom
    gamma = (mu_m * (1.0 - 2.0 * nu_p) + mu_p * (1.0 - 2.0 * nu_m)) / (2.0 * denom)
    p = b**2 / (b**2 - d**2)

    return BimaterialConstants(b=b, e=e, d=d, f=f, alpha=alpha, gamma=gamma, eta=eta, p=p)


def homogeneous_constants(mu: float, nu: float) -> BimaterialConstants:
    """Constants for identical half-spaces: d = f = eta = alpha = 0, p = 1."""
    half = ElasticHalfSpace(shear_modulus=mu, poisson_ratio=nu)
    return compute_constants(half, half)
