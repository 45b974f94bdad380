"""Trajectory integration, separatrices, and phase portraits.

The field is a smooth cubic at O(|mu|) scale, so a standard adaptive 5(4)
embedded pair (rtol 1e-10, atol 1e-12) is used throughout.  Linearization
rates are O(|mu|), hence the default time horizon scales as 50/|mu|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .equilibria import SADDLE, TOL, Equilibrium, EquilibriumList, Tolerances, find_equilibria
from .errors import StepFailure
from .model import ParamPoint, ReducedSystem, field_at, jacobian_at

RTOL = 1e-10
ATOL = 1e-12

CONVERGED = "ConvergedToEquilibrium"
LEFT_WINDOW = "LeftWindow"
MAX_TIME = "MaxTime"


@dataclass
class Trajectory:
    initial: tuple[float, float]
    direction: str                    # "forward" | "backward"
    times: np.ndarray
    states: np.ndarray                # shape (n, 2)
    terminal: str
    terminal_label: str | None = None

    @property
    def final(self) -> tuple[float, float]:
        return (float(self.states[-1, 0]), float(self.states[-1, 1]))


@dataclass
class Portrait:
    mu: ParamPoint
    window: float                     # box [0, window]^2
    equilibria: EquilibriumList
    trajectories: list[Trajectory] = field(default_factory=list)
    separatrices: list[Trajectory] = field(default_factory=list)


def integrate(sys: ReducedSystem, mu, x0, direction: str = "forward",
              t_max: float | None = None, window: float | None = None,
              equilibria: EquilibriumList | None = None,
              tol: Tolerances = TOL) -> Trajectory:
    """Integrate one trajectory until convergence, window exit, or t_max.

    Convergence requires both closeness to a known equilibrium and a small
    field magnitude, so slow drift along a center manifold is not mistaken
    for arrival.  Tiny negative coordinates (axis invariance is exact in the
    model) are clamped to zero in the output.
    """
    mu = ParamPoint.coerce(mu)
    c = sys.at(mu)
    sign = 1.0 if direction == "forward" else -1.0
    if t_max is None:
        t_max = 50.0 / max(mu.norm, 1e-12)
    if equilibria is None:
        equilibria = find_equilibria(sys, mu, tol)
    if window is None:
        window = _default_window(mu, equilibria)
    conv_radius = 1e-8 * window
    field_tol = 1e-12

    def rhs(_t, y):
        fx, fy = field_at(c, (y[0], y[1]))
        return (sign * fx, sign * fy)

    targets = [e for e in equilibria if e.proper]

    def make_conv_event(eq: Equilibrium):
        ex, ey = eq.xi

        def ev(_t, y):
            return math.hypot(y[0] - ex, y[1] - ey) - conv_radius
        ev.terminal = True
        ev.direction = -1.0
        return ev

    def exit_event(_t, y):
        m = 1e-6 * window
        return min(2.0 * window - y[0], 2.0 * window - y[1],
                   y[0] + m, y[1] + m)
    exit_event.terminal = True

    events = [make_conv_event(e) for e in targets] + [exit_event]
    x0 = (float(x0[0]), float(x0[1]))
    try:
        sol = solve_ivp(rhs, (0.0, t_max), x0, method="RK45",
                        rtol=RTOL, atol=ATOL, events=events, dense_output=False)
    except Exception as exc:  # scipy signals step failures via exceptions
        raise StepFailure(f"integration failed from {x0}: {exc}") from exc
    if not sol.success and sol.status == -1:
        raise StepFailure(f"integration failed from {x0}: {sol.message}")

    times = sol.t
    states = sol.y.T.copy()
    clamp = 10.0 * ATOL * (1.0 + window)
    states[(states < 0.0) & (states > -clamp)] = 0.0

    terminal = MAX_TIME
    label = None
    if sol.status == 1:
        hit = [k for k, te in enumerate(sol.t_events) if len(te)]
        if hit and hit[0] < len(targets):
            eq = targets[hit[0]]
            fmag = math.hypot(*field_at(c, tuple(states[-1])))
            if fmag < field_tol:
                terminal = CONVERGED
                label = eq.label
        else:
            terminal = LEFT_WINDOW
    return Trajectory(initial=x0, direction=direction, times=times,
                      states=states, terminal=terminal, terminal_label=label)


def _default_window(mu: ParamPoint, equilibria: EquilibriumList) -> float:
    coords = [max(e.xi) for e in equilibria if e.proper and max(e.xi) > 0.0]
    if coords:
        return 3.0 * max(coords)
    return 3.0 * max(mu.norm, 1e-12)


def separatrices(sys: ReducedSystem, mu, saddle: Equilibrium,
                 window: float | None = None,
                 equilibria: EquilibriumList | None = None,
                 tol: Tolerances = TOL) -> list[Trajectory]:
    """Invariant-manifold branches of a saddle, seeded along its eigenvectors.

    Stable directions are integrated backward, unstable forward.  Seeds that
    fall outside the closed first quadrant are skipped, so boundary saddles
    emit fewer branches.
    """
    if saddle.kind != SADDLE:
        raise ValueError(f"separatrices need a saddle, got {saddle.kind}")
    mu = ParamPoint.coerce(mu)
    if equilibria is None:
        equilibria = find_equilibria(sys, mu, tol)
    if window is None:
        window = _default_window(mu, equilibria)
    J = np.asarray(jacobian_at(sys.at(mu), saddle.xi))
    lams, vecs = np.linalg.eig(J)
    h = 1e-6 * window
    out: list[Trajectory] = []
    for k in range(2):
        lam = lams[k].real
        v = vecs[:, k].real
        v = v / np.linalg.norm(v)
        direction = "forward" if lam > 0.0 else "backward"
        for s in (+1.0, -1.0):
            seed = (saddle.xi[0] + s * h * v[0], saddle.xi[1] + s * h * v[1])
            if seed[0] < -1e-12 * window or seed[1] < -1e-12 * window:
                continue
            seed = (max(seed[0], 0.0), max(seed[1], 0.0))
            out.append(integrate(sys, mu, seed, direction=direction,
                                 window=window, equilibria=equilibria,
                                 tol=tol))
    return out


def portrait(sys: ReducedSystem, mu, grid_density: int = 10,
             tol: Tolerances = TOL) -> Portrait:
    """Phase portrait: a lattice of forward trajectories plus separatrices."""
    mu = ParamPoint.coerce(mu)
    equilibria = find_equilibria(sys, mu, tol)
    window = _default_window(mu, equilibria)
    port = Portrait(mu=mu, window=window, equilibria=equilibria)
    for i in range(grid_density):
        for j in range(grid_density):
            x0 = ((i + 0.5) * window / grid_density,
                  (j + 0.5) * window / grid_density)
            port.trajectories.append(
                integrate(sys, mu, x0, window=window,
                          equilibria=equilibria, tol=tol))
    for eq in equilibria:
        if eq.kind == SADDLE and eq.proper and not eq.trivial:
            port.separatrices.extend(
                separatrices(sys, mu, eq, window=window,
                             equilibria=equilibria, tol=tol))
    return port


__all__ = ["RTOL", "ATOL", "CONVERGED", "LEFT_WINDOW", "MAX_TIME",
           "Trajectory", "Portrait", "integrate", "separatrices", "portrait"]
