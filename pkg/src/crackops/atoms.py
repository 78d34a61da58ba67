"""Closed-form calculus for point-force solution components.

Concentrated crack-face loads generate a small family of singular
"atoms" on x1 < 0, centred on the load point -a (a > 0):

    delta_a            unit point mass at -a
    P_a  = 1/(pi (x+a))                     Cauchy image of delta_a
    W_a  = sqrt(a/(-x)) / (pi (x+a))        inverse image of delta_a
    G_a  = log(a/|x|) / (pi^2 (x+a))        K image of delta_a
    H_a  = log^2(|x|/a) / (2 pi^3 (x+a))    K image of P_a
    V_a  = W_a - P_a                        K image of W_a

The singular/compact operators map the family into itself:

    S^s delta = P           S^s P = G - delta      S^s W = -delta
    S^s G     = H           K delta = G            K P = H
    K W       = V

so point loads propagate through the solvers without ever being smeared
onto a mesh.  Pointwise values below are the classical (off-load-point)
parts; the distributional delta content is tracked by the solvers as
explicit coefficients.  Each atom also has a closed-form primitive used
to accumulate crack openings with a zero value at the tip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import spence

from .errors import ValidationError

__all__ = [
    "PointMass",
    "pole",
    "inv_sqrt_pole",
    "log_pole",
    "log2_pole",
    "s_of_log_pole_ahead",
    "k_of_w",
    "opening_of_delta",
    "opening_of_pole",
    "opening_of_w",
    "opening_of_log_pole",
]

_PI2_6 = np.pi**2 / 6.0


@dataclass(frozen=True)
class PointMass:
    """coeff * delta(x1 + a)."""

    a: float
    coeff: float

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValidationError(f"point mass must sit on x1 < 0, got a={self.a}")


def _guard_pole(a: float, x: np.ndarray, allow_pole: bool) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    at_pole = x == -a
    if np.any(at_pole) and not allow_pole:
        raise ValidationError(f"evaluation at the load point x1 = {-a} hits a pole")
    return at_pole


def pole(a: float, x: np.ndarray, allow_pole: bool = False) -> np.ndarray:
    """P_a(x) = 1/(pi (x + a)).

    With ``allow_pole`` the value at x = -a is set to 0, the odd-limit
    convention used when sampling onto meshes that contain the load point
    (the principal value of the straddling cells then comes out right).
    """
    x = np.asarray(x, dtype=float)
    at_pole = _guard_pole(a, x, allow_pole)
    with np.errstate(divide="ignore"):
        v = 1.0 / (np.pi * (x + a))
    return np.where(at_pole, 0.0, v)


def inv_sqrt_pole(a: float, x: np.ndarray, allow_pole: bool = False) -> np.ndarray:
    """W_a(x) = sqrt(a/(-x)) / (pi (x + a)) on x1 < 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x >= 0.0):
        raise ValidationError("W_a lives on x1 < 0")
    at_pole = _guard_pole(a, x, allow_pole)
    with np.errstate(divide="ignore"):
        v = np.sqrt(a / (-x)) / (np.pi * (x + a))
    return np.where(at_pole, 0.0, v)


def log_pole(a: float, x: np.ndarray) -> np.ndarray:
    """G_a(x) = log(a/|x|) / (pi^2 (x + a)); removable at x = -a (value 1/(pi^2 a))."""
    x = np.asarray(x, dtype=float)
    num = np.log(a / np.abs(x))
    den = x + a
    with np.errstate(divide="ignore", invalid="ignore"):
        v = num / (np.pi**2 * den)
    near = np.abs(den) <= 1e-9 * a
    if np.any(near):
        # log(a/|x|) = -log1p((x+a)/(-x)) ~ (x+a)/a near the load point
        v = np.where(near, 1.0 / (np.pi**2 * a) * (1.0 - den / (2.0 * a)), v)
    return v


def log2_pole(a: float, x: np.ndarray) -> np.ndarray:
    """H_a(x) = log^2(|x|/a) / (2 pi^3 (x + a)); vanishes smoothly at x = -a."""
    x = np.asarray(x, dtype=float)
    den = x + a
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.log(np.abs(x) / a) ** 2 / (2.0 * np.pi**3 * den)
    near = np.abs(den) <= 1e-9 * a
    if np.any(near):
        v = np.where(near, den / (2.0 * np.pi**3 * a**2), v)
    return v


def s_of_log_pole_ahead(a: float, x: np.ndarray) -> np.ndarray:
    """S^c G_a(x) for x > 0: [log^2(x/a) + pi^2] / (2 pi^3 (x + a))."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValidationError("compact-side image needs x1 > 0")
    return (np.log(x / a) ** 2 + np.pi**2) / (2.0 * np.pi**3 * (x + a))


def k_of_w(a: float, x: np.ndarray) -> np.ndarray:
    """V_a(x) = W_a - P_a = (sqrt(a/(-x)) - 1)/(pi (x + a)); removable at -a."""
    x = np.asarray(x, dtype=float)
    den = x + a
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (np.sqrt(a / (-x)) - 1.0) / (np.pi * den)
    near = np.abs(den) <= 1e-9 * a
    if np.any(near):
        v = np.where(near, 1.0 / (2.0 * np.pi * a), v)
    return v


# ---------------------------------------------------------------------------
# primitives: opening contribution u(x) = -int_x^0 (.) ds, so u(0) = 0
# ---------------------------------------------------------------------------


def opening_of_delta(a: float, coeff: float, x: np.ndarray) -> np.ndarray:
    """Step of size -coeff carried on x1 < -a."""
    x = np.asarray(x, dtype=float)
    return np.where(x < -a, -coeff, 0.0)


def opening_of_pole(a: float, coeff: float, x: np.ndarray) -> np.ndarray:
    """-coeff int_x^0 P_a = (coeff/pi) log(|x + a|/a)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return coeff / np.pi * np.log(np.abs(x + a) / a)


def opening_of_w(a: float, coeff: float, x: np.ndarray) -> np.ndarray:
    """-coeff int_x^0 W_a = -(2 coeff/pi) artanh(sqrt(min(-x/a, a/(-x)))).

    The argument is clamped away from 1 so the logarithmic divergence at
    the load point evaluates to a large finite value.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x > 0.0):
        raise ValidationError("opening is defined on x1 <= 0")
    ratio = np.where(x == 0.0, 0.0, np.minimum(-x / a, a / np.maximum(-x, 1e-300)))
    arg = np.sqrt(np.minimum(ratio, 1.0 - 1e-14))
    return -coeff * (2.0 / np.pi) * np.arctanh(arg)


def opening_of_log_pole(a: float, coeff: float, x: np.ndarray) -> np.ndarray:
    """-coeff int_x^0 G_a = (coeff/pi^2) (Li2-type primitive).

    Uses int G_a ds = spence(-s/a)/pi^2 with spence(0) = pi^2/6.
    """
    x = np.asarray(x, dtype=float)
    return coeff / np.pi**2 * (spence(-x / a) - _PI2_6)
