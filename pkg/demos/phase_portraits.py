#!/usr/bin/env python3
"""Render phase portraits for a few qualitatively different regions.

One portrait per region type: the coexistence attractor, a saddle-dominated
sector, and the fold curve itself (where the paired axis equilibria merge
into a single semi-stable point).
"""

import math
import pathlib

from lvbif import bifurcation as bif
from lvbif.cases import deltazero_case, nondegenerate_case
from lvbif.dynamics import portrait
from lvbif.emit import portrait_svg, trajectories_csv
from lvbif.equilibria import Tolerances
from lvbif.model import ParamPoint
from lvbif.regions import signature_at

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def render(name, sys_, mu, grid=8, tol=Tolerances()):
    port = portrait(sys_, mu, grid_density=grid, tol=tol)
    svg = OUT / f"{name}.svg"
    svg.write_text(portrait_svg(port))
    (OUT / f"{name}.csv").write_text(
        trajectories_csv(port.trajectories + port.separatrices))
    counts = {}
    for tr in port.trajectories:
        key = tr.terminal_label or tr.terminal
        counts[key] = counts.get(key, 0) + 1
    print(f"{name}: window {port.window:.2e}, "
          f"{len(port.separatrices)} separatrix branches, terminals {counts}")
    print(f"  -> {svg}")


attractor = nondegenerate_case(-2.0, -1.0)
mu = ParamPoint.from_polar(1e-3, math.radians(45))
print("coexistence attractor region", "".join(signature_at(attractor, mu)))
render("portrait_coexistence", attractor, mu)

saddle = nondegenerate_case(0.5, 0.5)
mu = ParamPoint.from_polar(1e-3, math.radians(216))
print("interior saddle region", "".join(signature_at(saddle, mu)))
render("portrait_saddle", saddle, mu)

fold_sys = deltazero_case(1.0, 1.5)
mu0 = bif.parabola_point(fold_sys, bif.D_NEG, -2e-3)
print(f"fold curve point mu = ({mu0.mu1:.3e}, {mu0.mu2:.3e})")
render("portrait_on_fold", fold_sys, mu0, tol=Tolerances(epsilon_disk=2e-2))
