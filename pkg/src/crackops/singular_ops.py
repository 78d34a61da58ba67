"""Discretized singular and compact integral operators on the crack line.

Central objects (phi lives on x1 < 0):

    (S phi)(x)   = (1/pi)  PV int_{-inf}^0 phi(xi) / (x - xi) dxi
    (K phi)(x)   = (1/pi^2) int_{-inf}^0 log|xi/x| / (x - xi) phi(xi) dxi

Restriction of the Cauchy convolution to negative evaluation points gives
the singular part S^s (moving singularity, principal value); evaluation on
x1 > 0 gives the compact part S^c (fixed-point singularity at the tip).
The operators satisfy (S^s)^2 = -I + K, which the test-suite checks.

Quadrature design: product integration against the piecewise-linear
interpolant of the node values.  On each cell the integral of
(A + B xi)/(x - xi) has a closed form whose log terms cancel in the
principal-value sense across adjacent cells; the log-kernel cell
integrals reduce to dilogarithms.  The un-meshed tip segment and the far
tail are modeled by two-term power expansions fitted through the two
boundary nodes (exponents s, s-1 at the tip and q, q+1 in the tail) and
integrated in closed form, so slowly decaying data does not suffer
truncation bias.  A logarithmic tip term, produced when S acts on data
with a nonzero tip value, is carried explicitly by the grid function and
integrated via dilogarithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import digamma, hyp2f1, polygamma, spence

from .errors import ValidationError
from .mesh import GridFunction, SemiAxisMesh

__all__ = [
    "OperatorMatrix",
    "apply_S_s",
    "apply_S_c",
    "apply_K",
    "apply_S_s_to_point_force",
    "s_matrix",
    "k_matrix",
]

_EULER_GAMMA = float(np.euler_gamma)
_PI2_6 = np.pi**2 / 6.0
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense collocation matrix mapping node values to operator values."""

    entries: np.ndarray
    row_mesh: SemiAxisMesh
    col_mesh: SemiAxisMesh

    def __post_init__(self):
        if not np.all(np.isfinite(self.entries)):
            raise ValidationError("operator matrix has non-finite entries")
        if self.entries.shape != (self.row_mesh.n, self.col_mesh.n):
            raise ValidationError("operator matrix shape does not match meshes")

    def __matmul__(self, values: np.ndarray) -> np.ndarray:
        return self.entries @ values


def _gl_integral(f, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """64-point Gauss-Legendre on [a, b] elementwise (a, b same shape)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    u = mid[..., None] + half[..., None] * _GL_NODES
    return half * (f(u) @ _GL_WEIGHTS)


# ---------------------------------------------------------------------------
# scalar kernels of the tip / tail closed forms
# ---------------------------------------------------------------------------


def _pv_power_frac(w: np.ndarray, r: float) -> np.ndarray:
    """PV int_0^w u^(-r)/(1 - u) du for w >= 0, r < 1 (principal value at 1)."""
    w = np.asarray(w, dtype=float)
    out = np.full(w.shape, np.nan)
    if r == 0.0:
        np.copyto(out, -np.log(np.abs(1.0 - w)), where=w != 1.0)
        return out
    lo = w < 1.0
    if np.any(lo):
        wl = np.where(lo, w, 0.0)
        val = wl ** (1.0 - r) / (1.0 - r) * hyp2f1(1.0, 1.0 - r, 2.0 - r, wl)
        np.copyto(out, val, where=lo)
    hi = w > 1.0
    if np.any(hi):
        if 0.0 < r < 1.0:
            wh = np.where(hi, w, 2.0)
            val = -np.pi / np.tan(np.pi * r) + (1.0 / wh) ** r / r * hyp2f1(
                1.0, r, 1.0 + r, 1.0 / wh
            )
            np.copyto(out, val, where=hi)
        else:
            # rare path (evaluation inside the tip gap with r <= 0)
            for idx in np.argwhere(hi):
                out[tuple(idx)] = quad(
                    lambda u: -(u ** (-r)), 0.0, w[tuple(idx)], weight="cauchy", wvar=1.0
                )[0]
    return out


def _pos_power_frac(w: np.ndarray, r: float) -> np.ndarray:
    """int_0^w u^(-r)/(1 + u) du for w >= 0, r < 1."""
    w = np.asarray(w, dtype=float)
    out = np.full(w.shape, np.nan)
    if r == 0.0:
        return np.log1p(w)
    lo = w <= 1.0
    if np.any(lo):
        wl = np.where(lo, w, 1.0)
        val = wl ** (1.0 - r) / (1.0 - r) * hyp2f1(1.0, 1.0 - r, 2.0 - r, -wl)
        np.copyto(out, val, where=lo)
    hi = ~lo
    if np.any(hi):
        wh = np.where(hi, w, 2.0)
        if 0.0 < r < 1.0:
            val = np.pi / np.sin(np.pi * r) - wh ** (-r) / r * hyp2f1(
                1.0, r, 1.0 + r, -1.0 / wh
            )
        else:
            # int_1^w = int_0^{ln w} e^((1-r)t)/(1 + e^t) dt, smooth in t
            unit = 1.0 / (1.0 - r) * hyp2f1(1.0, 1.0 - r, 2.0 - r, -1.0)
            tail = _gl_integral(
                lambda t: np.exp((1.0 - r) * t) / (1.0 + np.exp(t)),
                np.zeros_like(wh),
                np.log(wh),
            )
            val = unit + tail
        np.copyto(out, val, where=hi)
    return out


def _log_power_frac(w: np.ndarray, r: float) -> np.ndarray:
    """int_0^w u^(-r) ln u /(1 - u) du for 0 <= w <= 1, r < 1."""
    w = np.asarray(w, dtype=float)
    out = np.zeros(w.shape)
    small = (w > 0.0) & (w <= 0.6)
    if np.any(small):
        ws = np.where(small, w, 0.5)
        j = np.arange(90, dtype=float)
        expo = j + 1.0 - r
        powers = ws[..., None] ** expo
        series = powers * (np.log(ws)[..., None] / expo - 1.0 / expo**2)
        np.copyto(out, series.sum(axis=-1), where=small)
    big = w > 0.6
    if np.any(big):
        full = -polygamma(1, 1.0 - r)

        def integrand(u):
            with np.errstate(divide="ignore", invalid="ignore"):
                g = np.where(u == 1.0, -1.0, np.log(np.maximum(u, 1e-300)) / (1.0 - u))
            return u ** (-r) * g

        wb = np.where(big, w, 0.8)
        rest = _gl_integral(integrand, wb, np.ones_like(wb))
        np.copyto(out, full - rest, where=big)
    return out


# ---------------------------------------------------------------------------
# boundary-segment corrections
# ---------------------------------------------------------------------------


def _fit2(XA: float, XB: float, r1: float, r2: float) -> np.ndarray:
    """Inverse of the 2x2 Vandermonde for c1 X^(-r1) + c2 X^(-r2) through XA, XB."""
    a11, a12 = XA ** (-r1), XA ** (-r2)
    a21, a22 = XB ** (-r1), XB ** (-r2)
    det = a11 * a22 - a12 * a21
    return np.array([[a22, -a12], [-a21, a11]]) / det


def _cauchy_tip_fit_weights(
    source: SemiAxisMesh, tip_r: float, xs: np.ndarray, tip_r2: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Weights on the last two node values for the tip-segment Cauchy integral."""
    nodes = source.nodes
    T, T2 = -nodes[-1], -nodes[-2]
    r2 = tip_r - 1.0 if tip_r2 is None else tip_r2
    inv = _fit2(T, T2, tip_r, r2)
    U1 = _cauchy_tip_term(xs, T, tip_r)
    U2 = _cauchy_tip_term(xs, T, r2)
    wA = inv[0, 0] * U1 + inv[1, 0] * U2
    wB = inv[0, 1] * U1 + inv[1, 1] * U2
    return wA, wB


def _cauchy_tip_term(xs: np.ndarray, T: float, r: float) -> np.ndarray:
    """Raw integral over (-T, 0) of (-xi)^(-r)/(x - xi) per unit coefficient."""
    out = np.empty(xs.size)
    neg = xs < 0.0
    if np.any(neg):
        X = np.where(neg, -xs, 1.0)
        w = T / X
        hit = neg & (w == 1.0)
        gen = neg & ~hit
        if np.any(gen):
            wg = np.where(gen, w, 0.5)
            Xg = np.where(gen, X, 1.0)
            np.copyto(out, -(Xg ** (-r)) * _pv_power_frac(wg, r), where=gen)
        if np.any(hit):
            out[hit] = T ** (-r) * (digamma(1.0 - r) + _EULER_GAMMA - np.log(T))
    pos = ~neg
    if np.any(pos):
        x = np.where(pos, xs, 1.0)
        np.copyto(out, x ** (-r) * _pos_power_frac(T / x, r), where=pos)
    return out


def _cauchy_tail_term(xs: np.ndarray, L: float, rho: float) -> np.ndarray:
    """Raw integral over (-inf, -L) of (-xi)^(-rho)/(x - xi) per unit coefficient."""
    z = -xs / L
    out = np.empty(xs.size)
    hit = z == 1.0
    gen = ~hit
    if np.any(gen):
        zg = np.where(gen, z, 0.0)
        np.copyto(out, L ** (-rho) / rho * hyp2f1(1.0, rho, rho + 1.0, zg), where=gen)
    if np.any(hit):
        out[hit] = L ** (-rho) * (np.log(L) - digamma(rho) - _EULER_GAMMA)
    return out


def _log_tip_term(xs: np.ndarray, T: float, r: float) -> np.ndarray:
    """Raw integral over (-T, 0) of (-xi)^(-r) log|xi/x|/(x - xi), x < 0."""
    X = -xs
    w = T / X
    if np.any(w > 1.0):
        raise ValidationError("log-kernel evaluation inside the tip gap")
    return -(X ** (-r)) * _log_power_frac(w, r)


def _log_tail_term(xs: np.ndarray, L: float, rho: float) -> np.ndarray:
    """Raw integral over (-inf, -L) of (-xi)^(-rho) log|xi/x|/(x - xi), x < 0."""
    X = -xs
    return -(X ** (-rho)) * _log_power_frac(X / L, 1.0 - rho)


def _cauchy_logtip_extra(xs: np.ndarray, T: float, B: float) -> np.ndarray:
    """Raw integral over (-T, 0) of B log(T/(-xi))/(x - xi)."""
    out = np.empty(xs.size)
    neg = xs < 0.0
    if np.any(neg):
        X = np.where(neg, -xs, 1.0)
        w = T / X
        hit = neg & (w == 1.0)
        gen = neg & ~hit
        if np.any(gen):
            wg = np.where(gen, w, 0.5)
            with np.errstate(divide="ignore", invalid="ignore"):
                lw = np.where(wg == 1.0, 0.0, np.log(wg) * np.log1p(-wg))
            np.copyto(out, B * (spence(wg) - _PI2_6 + lw), where=gen)
        if np.any(hit):
            out[hit] = -B * _PI2_6
    pos = ~neg
    if np.any(pos):
        x = np.where(pos, xs, 1.0)
        np.copyto(out, -B * spence(1.0 + T / x), where=pos)
    return out


# ---------------------------------------------------------------------------
# weight matrices
# ---------------------------------------------------------------------------


def cauchy_weight_matrix(
    source: SemiAxisMesh,
    tip_r: float,
    decay_q: float,
    xs: np.ndarray,
    tip_r2: float | None = None,
) -> np.ndarray:
    """Raw weights for int_{-inf}^0 phi(xi)/(x - xi) dxi (PV sense).

    ``tip_r`` < 1 is the leading power of the tip model
    phi ~ c1 (-xi)^(-tip_r) + c2 (-xi)^(1-tip_r); it may be negative
    (fields vanishing at the tip).  ``decay_q`` > 0 is the leading
    far-field power, paired with decay_q + 1.  Evaluation points may be
    negative (principal value) or positive (compact side); x = 0 and
    x < -L are rejected.
    """
    nodes = source.nodes
    if source.side != "negative":
        raise ValidationError("source mesh must live on x1 < 0")
    if not tip_r < 1.0:
        raise ValidationError(f"tip exponent must be < 1, got {tip_r}")
    if not decay_q > 0.0:
        raise ValidationError(f"decay exponent must be positive, got {decay_q}")
    xs = np.asarray(xs, dtype=float)
    if np.any(xs == 0.0):
        raise ValidationError("operators are not evaluated at the tip x1 = 0")
    L = -nodes[0]
    if np.any(xs < nodes[0]):
        raise ValidationError("evaluation points beyond the truncation radius")

    n = nodes.size
    W = np.zeros((xs.size, n))
    h = np.diff(nodes)

    D = xs[:, None] - nodes[None, :]
    hit = D == 0.0
    with np.errstate(divide="ignore"):
        Lg = np.where(hit, 0.0, np.log(np.abs(D)))
    # cell closed form: phi_lin(x)(ln|x-a| - ln|x-b|) - (phi_b - phi_a);
    # the ln|0| := 0 convention makes node hits come out exactly as the
    # principal-value pairing of the two adjacent cells.
    Lk = Lg[:, :-1] - Lg[:, 1:]
    W[:, :-1] += (nodes[None, 1:] - xs[:, None]) / h[None, :] * Lk + 1.0
    W[:, 1:] += (xs[:, None] - nodes[None, :-1]) / h[None, :] * Lk - 1.0

    # tip segment (nodes[-1], 0): two-term power model through last two nodes
    wA, wB = _cauchy_tip_fit_weights(source, tip_r, xs, tip_r2)
    W[:, -1] += wA
    W[:, -2] += wB

    # tail (-inf, -L): two-term power model through first two nodes
    L2 = -nodes[1]
    inv = _fit2(L, L2, decay_q, decay_q + 1.0)
    V1 = _cauchy_tail_term(xs, L, decay_q)
    V2 = _cauchy_tail_term(xs, L, decay_q + 1.0)
    W[:, 0] += inv[0, 0] * V1 + inv[1, 0] * V2
    W[:, 1] += inv[0, 1] * V1 + inv[1, 1] * V2

    return W


def log_kernel_weight_matrix(
    source: SemiAxisMesh,
    tip_r: float,
    decay_q: float,
    xs: np.ndarray,
    tip_r2: float | None = None,
) -> np.ndarray:
    """Raw weights for int_{-inf}^0 phi(xi) log|xi/x|/(x - xi) dxi, x < 0.

    The integrand has a removable singularity at xi = x; in the scaled
    variable u = xi/x each cell integral is a dilogarithm difference, so
    no principal value is needed anywhere.
    """
    nodes = source.nodes
    if source.side != "negative":
        raise ValidationError("source mesh must live on x1 < 0")
    xs = np.asarray(xs, dtype=float)
    if np.any(xs >= 0.0):
        raise ValidationError("log-kernel operator is evaluated on x1 < 0 only")
    L = -nodes[0]
    if np.any(xs < nodes[0]):
        raise ValidationError("evaluation points beyond the truncation radius")

    n = nodes.size
    h = np.diff(nodes)
    W = np.zeros((xs.size, n))

    U = nodes[None, :] / xs[:, None]  # positive, decreasing along a row
    S = spence(U)
    P1 = S - U * np.log(U) + U
    I0 = S[:, 1:] - S[:, :-1]
    I1 = P1[:, 1:] - P1[:, :-1]
    G = (xs[:, None] * I1 - nodes[None, :-1] * I0) / h[None, :]
    W[:, :-1] += I0 - G
    W[:, 1:] += G

    T, T2 = -nodes[-1], -nodes[-2]
    r2 = tip_r - 1.0 if tip_r2 is None else tip_r2
    inv = _fit2(T, T2, tip_r, r2)
    U1 = _log_tip_term(xs, T, tip_r)
    U2 = _log_tip_term(xs, T, r2)
    W[:, -1] += inv[0, 0] * U1 + inv[1, 0] * U2
    W[:, -2] += inv[0, 1] * U1 + inv[1, 1] * U2

    L2 = -nodes[1]
    inv = _fit2(L, L2, decay_q, decay_q + 1.0)
    V1 = _log_tail_term(xs, L, decay_q)
    V2 = _log_tail_term(xs, L, decay_q + 1.0)
    W[:, 0] += inv[0, 0] * V1 + inv[1, 0] * V2
    W[:, 1] += inv[0, 1] * V1 + inv[1, 1] * V2
    return W


# ---------------------------------------------------------------------------
# public operator applications
# ---------------------------------------------------------------------------


def s_matrix(
    source: SemiAxisMesh,
    tip_exponent: float,
    decay_exponent: float,
    eval_mesh: SemiAxisMesh | None = None,
) -> OperatorMatrix:
    """Dense matrix of S (Cauchy convolution scaled by 1/pi)."""
    eval_mesh = eval_mesh or source
    W = cauchy_weight_matrix(source, tip_exponent, decay_exponent, eval_mesh.nodes)
    return OperatorMatrix(entries=W / np.pi, row_mesh=eval_mesh, col_mesh=source)


def k_matrix(
    source: SemiAxisMesh,
    tip_exponent: float,
    decay_exponent: float,
    eval_mesh: SemiAxisMesh | None = None,
) -> OperatorMatrix:
    """Dense matrix of the compact log-kernel operator K."""
    eval_mesh = eval_mesh or source
    W = log_kernel_weight_matrix(source, tip_exponent, decay_exponent, eval_mesh.nodes)
    return OperatorMatrix(entries=W / np.pi**2, row_mesh=eval_mesh, col_mesh=source)


def _apply_cauchy(phi: GridFunction, eval_mesh: SemiAxisMesh) -> GridFunction:
    W = cauchy_weight_matrix(
        phi.mesh, phi.tip_exponent, phi.decay_exponent, eval_mesh.nodes,
        tip_r2=phi.tip_second_exponent,
    )
    raw = W @ phi.values
    if phi.tip_log_coefficient != 0.0:
        B = phi.tip_log_coefficient
        T, T2 = -phi.mesh.nodes[-1], -phi.mesh.nodes[-2]
        raw = raw + _cauchy_logtip_extra(eval_mesh.nodes, T, B)
        # the power fit must see the node values with the log model removed:
        # at the second-to-last node that shifts the value by -B log(T/T2)
        _, wB = _cauchy_tip_fit_weights(
            phi.mesh, phi.tip_exponent, eval_mesh.nodes, phi.tip_second_exponent
        )
        raw = raw + wB * B * np.log(T2 / T)
    # data with a nonzero tip value acquires a log-growing tip under S
    out_tlc = 0.0
    if phi.tip_exponent == 0.0 and phi.tip_log_coefficient == 0.0:
        out_tlc = phi.values[-1] / np.pi
    return GridFunction(
        mesh=eval_mesh,
        values=raw / np.pi,
        tip_exponent=phi.tip_exponent,
        decay_exponent=min(phi.decay_exponent, 1.0),
        tip_log_coefficient=out_tlc,
    )


def apply_S_s(phi: GridFunction, eval_mesh: SemiAxisMesh | None = None) -> GridFunction:
    """Singular part: S restricted to negative evaluation points."""
    eval_mesh = eval_mesh or phi.mesh
    if eval_mesh.side != "negative":
        raise ValidationError("apply_S_s evaluates on x1 < 0; use apply_S_c ahead of the tip")
    return _apply_cauchy(phi, eval_mesh)


def apply_S_c(phi: GridFunction, eval_mesh: SemiAxisMesh) -> GridFunction:
    """Compact part: S evaluated strictly ahead of the tip (x1 > 0)."""
    if eval_mesh.side != "positive":
        raise ValidationError("apply_S_c evaluates on x1 > 0")
    return _apply_cauchy(phi, eval_mesh)


def apply_K(phi: GridFunction, eval_mesh: SemiAxisMesh | None = None) -> GridFunction:
    """Compact log-kernel operator K on x1 < 0."""
    if phi.tip_log_coefficient != 0.0:
        raise ValidationError("log-tip data is not supported by the K quadrature")
    eval_mesh = eval_mesh or phi.mesh
    W = log_kernel_weight_matrix(
        phi.mesh, phi.tip_exponent, phi.decay_exponent, eval_mesh.nodes,
        tip_r2=phi.tip_second_exponent,
    )
    return GridFunction(
        mesh=eval_mesh,
        values=(W @ phi.values) / np.pi**2,
        tip_exponent=phi.tip_exponent,
        decay_exponent=min(phi.decay_exponent, 1.0),
    )


def apply_S_s_to_point_force(a: float, xs: np.ndarray) -> np.ndarray:
    """Exact sifting image of a unit point mass at xi = -a: 1/(pi (x + a))."""
    xs = np.asarray(xs, dtype=float)
    if not a > 0.0:
        raise ValidationError(f"point force position must be positive, got {a}")
    if np.any(xs == -a):
        raise ValidationError(
            f"evaluation at the load point x1 = {-a} hits a pole; exclude or refine"
        )
    return 1.0 / (np.pi * (xs + a))
