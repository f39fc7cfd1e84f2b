"""Classical analogue: Hamiltonians that depend only on action variables.

The spectrum table E at multi-index I becomes a smooth-enough function of
the actions J_i = (x_i^2 + p_i^2 - 1)/2 via tensor cubic-spline
interpolation on the integer nodes.  Every such Hamiltonian conserves each
action exactly along the continuous flow; the integrator report bounds the
numerical drift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline, RectBivariateSpline

from . import pairing
from .errors import InputError
from .spectra import as_spectrum

NODE_MATCH_TOL = 1e-12
FLOW_DOMAIN_TOL = 1e-6


@dataclass(frozen=True)
class ActionTable:
    """Energy values on the integer action grid {0..K-1}^n with a spline extension.

    The spline is one member of the uncountable family of valid smooth
    extensions; it is C^2, which is enough for the C^1 gradients the flow
    needs.
    """

    n: int
    K: int
    values: np.ndarray  # shape (K,) * n
    _spline: object

    @classmethod
    def build(cls, seq, n: int, K: int) -> "ActionTable":
        n = int(n)
        K = int(K)
        if n not in (1, 2):
            raise InputError("action tables support 1 or 2 modes")
        if K < 4:
            raise InputError("need at least 4 nodes per mode for a cubic spline")
        arr = as_spectrum(seq)
        corner = pairing.encode((K - 1,) * n)
        if arr.size <= corner:
            raise InputError(
                f"need at least {corner + 1} energies to fill the {K}^{n} node grid"
            )
        nodes = np.arange(K, dtype=float)
        if n == 1:
            values = arr[:K].copy()
            spline = CubicSpline(nodes, values)
        else:
            ranks = pairing.encode_many(
                np.stack(np.meshgrid(nodes, nodes, indexing="ij"), axis=-1)
                .reshape(-1, 2)
                .astype(np.int64)
            )
            values = arr[ranks].reshape(K, K)
            spline = RectBivariateSpline(nodes, nodes, values, kx=3, ky=3, s=0)
        values.setflags(write=False)
        return cls(n=n, K=K, values=values, _spline=spline)

    def value_at_actions(self, J) -> float:
        J = np.atleast_1d(np.asarray(J, dtype=float))
        if J.size != self.n:
            raise InputError(f"expected {self.n} actions")
        if (J < -NODE_MATCH_TOL).any() or (J > self.K - 1 + NODE_MATCH_TOL).any():
            raise InputError(
                f"actions {J.tolist()} outside the table domain [0, {self.K - 1}]"
            )
        if self.n == 1:
            return float(self._spline(J[0]))
        return float(self._spline(J[0], J[1])[0, 0])

    def gradient_at_actions(self, J) -> np.ndarray:
        J = np.atleast_1d(np.asarray(J, dtype=float))
        if self.n == 1:
            return np.array([float(self._spline(J[0], 1))])
        return np.array(
            [
                float(self._spline(J[0], J[1], dx=1, dy=0)[0, 0]),
                float(self._spline(J[0], J[1], dx=0, dy=1)[0, 0]),
            ]
        )

    def characteristic_frequency(self) -> float:
        nodes = np.arange(self.K, dtype=float)
        if self.n == 1:
            slopes = np.abs(self._spline(nodes, 1))
        else:
            gx = self._spline(nodes, nodes, dx=1, dy=0)
            gy = self._spline(nodes, nodes, dx=0, dy=1)
            slopes = np.abs(np.concatenate([gx.ravel(), gy.ravel()]))
        return max(float(slopes.max()), 1e-12)


def actions_of(z_x, z_p) -> np.ndarray:
    x = np.atleast_1d(np.asarray(z_x, dtype=float))
    p = np.atleast_1d(np.asarray(z_p, dtype=float))
    return 0.5 * (x**2 + p**2 - 1.0)


def classical_value(table: ActionTable, x, p) -> float:
    """Hamiltonian value at a phase point, through the action variables."""
    return table.value_at_actions(actions_of(x, p))


@dataclass(frozen=True)
class FlowReport:
    times: np.ndarray
    xs: np.ndarray  # (steps+1, n)
    ps: np.ndarray
    actions: np.ndarray  # (steps+1, n)
    energies: np.ndarray
    max_action_drift: float
    max_energy_drift: float
    truncated: bool

    def trajectory_csv(self) -> str:
        n = self.xs.shape[1]
        header = (
            ["t"]
            + [f"x{i+1}" for i in range(n)]
            + [f"p{i+1}" for i in range(n)]
            + [f"J{i+1}" for i in range(n)]
            + ["energy"]
        )
        lines = [",".join(header)]
        for k in range(self.times.size):
            row = (
                [self.times[k]]
                + list(self.xs[k])
                + list(self.ps[k])
                + list(self.actions[k])
                + [self.energies[k]]
            )
            lines.append(",".join(f"{v:.17g}" for v in row))
        return "\n".join(lines) + "\n"


def integrate_flow(
    table: ActionTable, x0, p0, T: float, dt: float | None = None
) -> FlowReport:
    """Classic 4th-order one-step integration of the action-only flow.

    Hamilton's equations reduce to xdot_i = w_i(J) p_i, pdot_i = -w_i(J) x_i
    with w_i the partial derivative of the table interpolant.  Reports the
    worst action and energy drift along the trajectory; leaving the
    interpolant domain truncates the trajectory and sets a flag.
    """
    if dt is None:
        dt = 1e-2 / table.characteristic_frequency()
    dt = float(dt)
    T = float(T)
    if dt <= 0 or T < dt:
        raise InputError("require dt > 0 and T >= dt")

    n = table.n
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    p = np.atleast_1d(np.asarray(p0, dtype=float)).copy()
    if x.size != n or p.size != n:
        raise InputError(f"phase point must have {n} positions and momenta")

    lo, hi = 0.0, float(table.K - 1)

    def in_domain(xx, pp):
        # integrator roundoff may push actions a hair past the nodes; evaluation
        # clips, so only genuine excursions should truncate the trajectory
        J = actions_of(xx, pp)
        return (J >= lo - FLOW_DOMAIN_TOL).all() and (J <= hi + FLOW_DOMAIN_TOL).all()

    if not in_domain(x, p):
        raise InputError("initial actions outside the interpolant domain")

    def rhs(xx, pp):
        w = table.gradient_at_actions(np.clip(actions_of(xx, pp), lo, hi))
        return w * pp, -w * xx

    steps = int(round(T / dt))
    times = [0.0]
    xs = [x.copy()]
    ps = [p.copy()]
    truncated = False
    for k in range(steps):
        k1x, k1p = rhs(x, p)
        k2x, k2p = rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
        k3x, k3p = rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
        k4x, k4p = rhs(x + dt * k3x, p + dt * k3p)
        x_new = x + dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        p_new = p + dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        if not in_domain(x_new, p_new):
            truncated = True
            break
        x, p = x_new, p_new
        times.append((k + 1) * dt)
        xs.append(x.copy())
        ps.append(p.copy())

    xs = np.array(xs)
    ps = np.array(ps)
    times = np.array(times)
    actions = 0.5 * (xs**2 + ps**2 - 1.0)
    energies = np.array(
        [table.value_at_actions(np.clip(a, lo, hi)) for a in actions]
    )
    drift = np.abs(actions - actions[0]).max()
    e_drift = np.abs(energies - energies[0]).max()
    return FlowReport(
        times=times,
        xs=xs,
        ps=ps,
        actions=actions,
        energies=energies,
        max_action_drift=float(drift),
        max_energy_drift=float(e_drift),
        truncated=truncated,
    )
