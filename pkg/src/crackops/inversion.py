"""Closed-form inversion of the singular Cauchy operator on x1 < 0.

For data psi with compact support (or decaying faster than (-x)^(-1/2))
the inverse of S^s is

    phi(x) = -(1/pi) PV int sqrt(xi/x) psi(xi) / (x - xi) dxi,  x < 0,

with tip and far-field constants

    K0   = -(1/pi) int psi(xi)/sqrt(-xi) dxi     (phi ~ K0/sqrt(-x) at 0)
    Kinf = +(1/pi) int psi(xi) sqrt(-xi) dxi     (phi ~ Kinf*(-x)^(-3/2) far)

K0 is the opening-derivative amplitude that carries the stress intensity
factor.  Among all preimages (the operator annihilates (-x)^(-1/2)) this
one is selected by the physical requirement that the crack opening
vanish at infinity, i.e. the far decay is faster than (-x)^(-1).

When psi itself decays slower than (-x)^(-1/2) the formula above
diverges and the far power content psi_inf = sum_j c_j (-x)^(-a_j),
0 < a_j < 1/2, must be inverted term by term:

    phi = sum_j tan(pi a_j) c_j (-x)^(-a_j)  +  classic inverse of (psi - psi_inf).

The equivalent one-integral form uses the swapped square root and the
constant C0 = (1/pi) int (psi - psi_inf)(xi) / sqrt(-xi) dxi.

Point masses are inverted by exact sifting: a unit mass at -a maps to
-W_a (see the atoms module), with K0 = -1/(pi sqrt(a)), Kinf = sqrt(a)/pi.

Note on the far field of the classic inverse: for psi ~ c (-x)^(-q) with
1/2 < q < 3/2 the output behaves like tan(pi q) c (-x)^(-q); this
coefficient is fixed by the operator's action on pure powers
(S (-x)^(-q) = cot(pi q) (-x)^(-q)) and is verified by quadrature in the
test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import atoms
from .errors import ValidationError
from .mesh import GridFunction, SemiAxisMesh, integrate
from .singular_ops import cauchy_weight_matrix

__all__ = [
    "AsymptoticSpec",
    "InversionResult",
    "invert_classic",
    "invert_slow_decay",
    "asymptotic_constants",
]


@dataclass(frozen=True)
class AsymptoticSpec:
    """Slow-decay structure of data on x1 < 0.

    ``far_terms`` are (coefficient, exponent) pairs with exponents in
    (0, 1/2); ``beta`` > 1/2 bounds the decay of the remainder;
    ``alpha0`` < 1/2 is the tip exponent of the data.
    """

    alpha0: float = 0.0
    far_terms: tuple[tuple[float, float], ...] = ()
    beta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha0 < 0.5:
            raise ValidationError(f"tip exponent must lie in [0, 1/2), got {self.alpha0}")
        for coef, expo in self.far_terms:
            if not 0.0 < expo < 0.5:
                raise ValidationError(
                    f"far-field exponents must lie in (0, 1/2), got {expo}"
                )
        if not self.beta > 0.5:
            raise ValidationError(f"remainder decay must exceed 1/2, got {self.beta}")

    def far_values(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(np.asarray(x, dtype=float))
        for coef, expo in self.far_terms:
            out += coef * (-x) ** (-expo)
        return out


@dataclass(frozen=True)
class InversionResult:
    """Inverse phi together with its asymptotic constants."""

    phi: GridFunction
    K0: float
    K_infinity: float
    C0: float | None = None
    #: exact point-force content of phi: list of (kind, a, coeff) with kind
    #: "delta" or "w" (the inverse-square-root pole atom)
    singular_parts: tuple = field(default=())


def _classic_weights(mesh: SemiAxisMesh, psi: GridFunction) -> np.ndarray:
    """Matrix mapping psi node values to phi node values (classic formula)."""
    x = mesh.nodes
    # phi(x) = -(-x)^(-1/2) * (1/pi) PV int sqrt(-xi) psi /(x - xi)
    tip_r = psi.tip_exponent - 0.5
    decay_q = psi.decay_exponent - 0.5
    if decay_q <= 0.0:
        raise ValidationError(
            "data decays too slowly for the classic inversion; use invert_slow_decay"
        )
    W = cauchy_weight_matrix(mesh, tip_r, decay_q, x)
    scale = -((-x) ** (-0.5)) / np.pi
    return scale[:, None] * (W * np.sqrt(-x)[None, :])


def invert_classic(
    psi: GridFunction | list[atoms.PointMass],
    mesh: SemiAxisMesh | None = None,
) -> InversionResult:
    """Invert S^s phi = psi for compactly supported / fast-decaying psi.

    ``psi`` may be a grid function or a list of point masses; point
    masses take the exact sifting path and require ``mesh`` to sample
    the result.
    """
    if isinstance(psi, GridFunction):
        mesh = mesh or psi.mesh
        if mesh is not psi.mesh and not np.array_equal(mesh.nodes, psi.mesh.nodes):
            raise ValidationError("classic inversion samples phi on the data mesh")
        M = _classic_weights(mesh, psi)
        values = M @ psi.values
        K0, K_inf = asymptotic_constants(psi)
        phi = GridFunction(
            mesh=mesh, values=values, tip_exponent=0.5,
            decay_exponent=min(1.5, psi.decay_exponent),
        )
        return InversionResult(phi=phi, K0=K0, K_infinity=K_inf)

    masses = list(psi)
    if mesh is None:
        raise ValidationError("point-mass inversion needs a mesh to sample on")
    values = np.zeros(mesh.n)
    parts = []
    for pm in masses:
        values += -pm.coeff * atoms.inv_sqrt_pole(pm.a, mesh.nodes, allow_pole=True)
        parts.append(("w", pm.a, -pm.coeff))
    K0 = sum(-pm.coeff / (np.pi * np.sqrt(pm.a)) for pm in masses)
    K_inf = sum(pm.coeff * np.sqrt(pm.a) / np.pi for pm in masses)
    phi = GridFunction(mesh=mesh, values=values, tip_exponent=0.5, decay_exponent=1.5)
    return InversionResult(phi=phi, K0=K0, K_infinity=K_inf, singular_parts=tuple(parts))


def invert_slow_decay(psi: GridFunction, spec: AsymptoticSpec) -> InversionResult:
    """Invert S^s phi = psi for psi with far power content in (0, 1/2).

    The far terms are inverted analytically with coefficients
    tan(pi a_j); the remainder goes through the classic formula.  Also
    reports C0, the constant of the equivalent swapped-root form.
    """
    if not spec.far_terms:
        raise ValidationError("slow-decay inversion requires at least one far term")
    mesh = psi.mesh
    x = mesh.nodes
    remainder_vals = psi.values - spec.far_values(x)
    # the subtracted far terms are singular at the tip, so the remainder
    # inherits the worst of the data and far exponents there
    rem_tip = max(spec.alpha0, max(expo for _, expo in spec.far_terms))
    remainder = GridFunction(
        mesh=mesh,
        values=remainder_vals,
        tip_exponent=rem_tip,
        decay_exponent=spec.beta,
    )
    base = invert_classic(remainder)
    values = base.phi.values.copy()
    slowest = min(expo for _, expo in spec.far_terms)
    for coef, expo in spec.far_terms:
        values += np.tan(np.pi * expo) * coef * (-x) ** (-expo)
    # C0 of the swapped-root form: (1/pi) int (psi - psi_inf)/sqrt(-xi)
    weighted = GridFunction(
        mesh=mesh,
        values=remainder_vals / np.sqrt(-x),
        tip_exponent=min(rem_tip + 0.5, 1.0 - 1e-12),
        decay_exponent=spec.beta + 0.5,
    )
    C0 = integrate(weighted) / np.pi
    # tip model: leading square-root content plus the slowest far power,
    # which extends all the way to the tip for this solution family
    phi = GridFunction(
        mesh=mesh, values=values, tip_exponent=0.5,
        decay_exponent=slowest, tip_second_exponent=slowest,
    )
    return InversionResult(phi=phi, K0=base.K0, K_infinity=np.nan, C0=C0)


def asymptotic_constants(psi: GridFunction | list[atoms.PointMass]) -> tuple[float, float]:
    """(K0, Kinf) of the classic inverse; Kinf is NaN when divergent."""
    if not isinstance(psi, GridFunction):
        masses = list(psi)
        K0 = sum(-pm.coeff / (np.pi * np.sqrt(pm.a)) for pm in masses)
        K_inf = sum(pm.coeff * np.sqrt(pm.a) / np.pi for pm in masses)
        return K0, K_inf
    x = psi.mesh.nodes
    down = GridFunction(
        mesh=psi.mesh,
        values=psi.values / np.sqrt(-x),
        tip_exponent=min(psi.tip_exponent + 0.5, 1.0 - 1e-12),
        decay_exponent=psi.decay_exponent + 0.5,
    )
    K0 = -integrate(down) / np.pi
    up_decay = psi.decay_exponent - 0.5
    if up_decay <= 1.0 and psi.values[0] != 0.0:
        K_inf = np.nan  # first moment diverges for this decay class
    else:
        up = GridFunction(
            mesh=psi.mesh,
            values=psi.values * np.sqrt(-x),
            tip_exponent=max(psi.tip_exponent - 0.5, 0.0),
            decay_exponent=max(up_decay, 1e-6),
        )
        K_inf = integrate(up) / np.pi
    return K0, K_inf
