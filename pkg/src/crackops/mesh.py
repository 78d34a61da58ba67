"""Discretization of the crack line and sampled fields on it.

The crack occupies the negative semi-axis x1 < 0; the bonded interface
ahead of the tip is x1 > 0.  Both rays are discretized by graded meshes
that cluster geometrically toward the tip (and optionally toward interior
points such as load application points).  A sampled field carries two
asymptotic exponents so that quadrature and singular operators can
account analytically for the un-meshed segments:

* ``tip_exponent`` s in [0, 1): the field behaves like C (-x1)^(-s) on the
  segment between the node nearest the tip and the tip itself;
* ``decay_exponent`` q > 0: the field behaves like C (-x1)^(-q) beyond the
  truncation radius.

Both power laws are anchored at the corresponding boundary node value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import MeshError, ValidationError

__all__ = [
    "SemiAxisMesh",
    "GridFunction",
    "PointForce",
    "LoadSpec",
    "build_graded_mesh",
    "integrate",
]

#: relative size of the innermost cell produced by the default grading
DEFAULT_TIP_CELL_FRACTION = 1e-6


@dataclass(frozen=True)
class SemiAxisMesh:
    """Strictly increasing nodes, all negative (crack) or all positive (ahead)."""

    nodes: np.ndarray
    truncation_radius: float
    grading_ratio: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise MeshError("mesh needs at least two nodes")
        d = np.diff(nodes)
        if not np.all(d > 0.0):
            raise MeshError("mesh nodes must be strictly increasing")
        if not (np.all(nodes < 0.0) or np.all(nodes > 0.0)):
            raise MeshError("mesh nodes must all be negative or all positive")
        if not self.truncation_radius > 0.0:
            raise MeshError("truncation radius must be positive")

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def side(self) -> str:
        return "negative" if self.nodes[0] < 0.0 else "positive"

    @property
    def tip_node(self) -> float:
        """Node closest to the crack tip x1 = 0."""
        return self.nodes[-1] if self.side == "negative" else self.nodes[0]

    def contains(self, x: float, rtol: float = 1e-12) -> bool:
        i = np.searchsorted(self.nodes, x)
        for j in (i - 1, i):
            if 0 <= j < self.n and abs(self.nodes[j] - x) <= rtol * max(abs(x), 1.0):
                return True
        return False


@dataclass(frozen=True)
class GridFunction:
    """Field sampled at mesh nodes with power-law tip / far-field models.

    The tip-segment model is a two-power fit c1 (-x1)^(-s1) + c2 (-x1)^(-s2)
    through the last two nodes, with s1 = ``tip_exponent`` and
    s2 = ``tip_second_exponent`` (defaults to s1 - 1, i.e. leading power
    plus a smoother correction).  ``tip_log_coefficient`` B adds
    B log(T/(-x1)) to that model (T is the magnitude of the node nearest
    the tip): the Cauchy operator maps data with a nonzero tip value to
    such log-growing output.
    """

    mesh: SemiAxisMesh
    values: np.ndarray
    tip_exponent: float = 0.0
    decay_exponent: float = 1.0
    tip_log_coefficient: float = 0.0
    tip_second_exponent: float | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.mesh.n,):
            raise ValidationError(
                f"values length {values.shape} does not match node count {self.mesh.n}"
            )
        if not 0.0 <= self.tip_exponent < 1.0:
            raise ValidationError(
                f"tip_exponent must lie in [0, 1), got {self.tip_exponent}"
            )
        if not self.decay_exponent > 0.0:
            raise ValidationError(
                f"decay_exponent must be positive, got {self.decay_exponent}"
            )
        if self.tip_second_exponent is not None and not (
            self.tip_second_exponent < 1.0
            and self.tip_second_exponent != self.tip_exponent
        ):
            raise ValidationError(
                "tip_second_exponent must be < 1 and differ from tip_exponent"
            )

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return replace(self, values=np.asarray(values, dtype=float))

    def __mul__(self, c: float) -> "GridFunction":
        return self.with_values(self.values * c)

    __rmul__ = __mul__

    def __add__(self, other: "GridFunction") -> "GridFunction":
        if other.mesh is not self.mesh and not np.array_equal(
            other.mesh.nodes, self.mesh.nodes
        ):
            raise ValidationError("grid functions live on different meshes")
        return GridFunction(
            mesh=self.mesh,
            values=self.values + other.values,
            tip_exponent=max(self.tip_exponent, other.tip_exponent),
            decay_exponent=min(self.decay_exponent, other.decay_exponent),
        )


@dataclass(frozen=True)
class PointForce:
    """Concentrated load pair applied at x1 = -a on the crack faces.

    ``symmetry='symmetric'`` with amplitude F_j means an average face load
    <p_j> = -F_j delta(x1 + a); ``symmetry='skew'`` means a face-load jump
    [p_j] = -2 F_j delta(x1 + a).  Positive F_2 opens the crack.
    """

    position: float
    amplitude: tuple[float, float, float]
    symmetry: str = "symmetric"

    def __post_init__(self):
        if not self.position > 0.0:
            raise ValidationError(
                f"point force must sit strictly inside the crack, got a={self.position}"
            )
        if self.symmetry not in ("symmetric", "skew"):
            raise ValidationError(f"unknown symmetry {self.symmetry!r}")
        object.__setattr__(self, "amplitude", tuple(float(c) for c in self.amplitude))
        if len(self.amplitude) != 3:
            raise ValidationError("amplitude must have three components")


@dataclass(frozen=True)
class LoadSpec:
    """Crack-face loading: point forces plus optional tabulated densities.

    Densities are the actual face data <p_j> and [p_j] sampled on a negative
    mesh (dict keyed by component 1, 2, 3).
    """

    point_forces: tuple[PointForce, ...] = ()
    density_sym: dict[int, GridFunction] = field(default_factory=dict)
    density_skew: dict[int, GridFunction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "point_forces", tuple(self.point_forces))
        for dens in (self.density_sym, self.density_skew):
            for comp, gf in dens.items():
                if comp not in (1, 2, 3):
                    raise ValidationError(f"unknown load component {comp}")
                if gf.mesh.side != "negative":
                    raise ValidationError("load densities must live on x1 < 0")

    def components(self) -> set[int]:
        """Components with any nonzero loading."""
        comps: set[int] = set()
        for pf in self.point_forces:
            comps |= {j + 1 for j, c in enumerate(pf.amplitude) if c != 0.0}
        comps |= {c for c, g in self.density_sym.items() if np.any(g.values)}
        comps |= {c for c, g in self.density_skew.items() if np.any(g.values)}
        return comps

    def farthest_position(self) -> float:
        return max((pf.position for pf in self.point_forces), default=1.0)


def default_grading_ratio(n: int, tip_fraction: float = DEFAULT_TIP_CELL_FRACTION) -> float:
    """Ratio r with L * r^(1-n) = tip_fraction * L."""
    return float(tip_fraction ** (-1.0 / (n - 1)))


def build_graded_mesh(
    L: float,
    n: int,
    grading_ratio: float | None = None,
    cluster_points: tuple[float, ...] = (),
    side: str = "negative",
) -> SemiAxisMesh:
    """Geometrically graded mesh on (-L, 0) or (0, L) with node count exactly n.

    The base nodes are -L r^(-k), k = 0..n-1 (mirrored for the positive
    side), so the node nearest the tip has magnitude L r^(1-n).  Each
    cluster point c is inserted as a node together with a symmetric
    geometric fan c +- |c| 10^(-6..) r_c^j; the fan replaces the base nodes
    nearest to c so the total count stays n.
    """
    if not L > 0.0:
        raise MeshError(f"truncation radius must be positive, got {L}")
    if n < 16:
        raise MeshError(f"need at least 16 nodes, got {n}")
    if grading_ratio is None:
        grading_ratio = default_grading_ratio(n)
    if not grading_ratio > 1.0:
        raise MeshError(f"grading ratio must exceed 1, got {grading_ratio}")
    if side not in ("negative", "positive"):
        raise MeshError(f"unknown side {side!r}")

    base = -L * grading_ratio ** (-np.arange(n, dtype=float))
    base.sort()

    clusters = sorted(abs(float(c)) for c in cluster_points)
    if clusters:
        for c in clusters:
            if not 0.0 < c < L:
                raise MeshError(f"cluster point {-c} outside (-L, 0)")
        nodes = _insert_clusters(base, clusters, L)
    else:
        nodes = base

    if side == "positive":
        nodes = np.sort(-nodes)
    return SemiAxisMesh(nodes=nodes, truncation_radius=L, grading_ratio=grading_ratio)


def _insert_clusters(base: np.ndarray, clusters: list[float], L: float) -> np.ndarray:
    """Replace base nodes near each cluster point by a symmetric geometric fan."""
    n = base.size
    protected = 4  # keep the outermost and tip-most nodes untouched
    nodes = list(base)
    for c in clusters:
        pos = -c
        # fan offsets: geometric, from 1e-6|c| up to ~half the local spacing
        i = int(np.searchsorted(base, pos))
        i = min(max(i, 1), n - 1)
        local_h = base[i] - base[i - 1]
        top = max(min(local_h, 0.45 * c), 2e-6 * c)
        n_off = max(int(np.ceil(np.log2(top / (1e-6 * c)))), 2)
        offsets = top * 2.0 ** (-np.arange(n_off, dtype=float))
        fan = np.concatenate(([pos], pos - offsets, pos + offsets))
        fan = fan[(fan > base[protected - 1]) & (fan < base[-protected])]
        need = fan.size
        # drop the interior base nodes closest to the cluster point
        order = sorted(
            range(protected, len(nodes) - protected),
            key=lambda k: abs(nodes[k] - pos),
        )
        drop = set(order[:need])
        if len(drop) < need:
            raise MeshError(
                f"n={n} too small to honor clustering at {pos} "
                f"(needs {need} replaceable nodes)"
            )
        nodes = [x for k, x in enumerate(nodes) if k not in drop]
        nodes.extend(fan.tolist())
        nodes.sort()
    out = np.array(nodes, dtype=float)
    # coincidences between fan and base nodes can shrink the count; refill
    # by splitting the largest interior cells
    while out.size < n:
        gaps = np.diff(out)
        k = int(np.argmax(gaps))
        out = np.insert(out, k + 1, 0.5 * (out[k] + out[k + 1]))
    if out.size != n or np.any(np.diff(out) <= 0.0):
        raise MeshError("cluster insertion failed to produce a strict mesh")
    return out


def integrate(f: GridFunction) -> float:
    """Integral of f over the full negative semi-axis.

    Composite trapezoid between nodes (exact for piecewise-linear data),
    plus analytic corrections: the tip segment uses the declared
    (-x)^(-tip_exponent) behavior, the far field the declared decay power.
    The far correction requires decay_exponent > 1 unless the boundary
    value vanishes.
    """
    mesh = f.mesh
    if mesh.side != "negative":
        raise ValidationError("integrate is defined for fields on x1 < 0")
    x, v = mesh.nodes, f.values
    total = float(np.trapezoid(v, x))

    # tip segment (x_n, 0): f ~ v[-1] (x / x_n)^(-s) -> integral v[-1]*T/(1-s)
    T = -x[-1]
    total += v[-1] * T / (1.0 - f.tip_exponent)
    total += f.tip_log_coefficient * T  # int_0^T log(T/t) dt = T

    # tail (-inf, -L): f ~ v[0] (x/x_0)^(-q) -> integral v[0]*Lq/(q-1)
    if v[0] != 0.0:
        q = f.decay_exponent
        if q <= 1.0:
            raise ValidationError(
                f"far-field decay exponent {q} <= 1: integral over the tail diverges"
            )
        total += v[0] * (-x[0]) / (q - 1.0)
    return total
