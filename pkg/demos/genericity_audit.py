#!/usr/bin/env python3
"""Audit the fold and crossing genericity quantities along their curves.

Walks the fold parabola and the interior-collision parabola of a degenerate
system, printing C1 = w.f_mu, C2 = w.[Df_mu v], C3 = w.[D^2f(v,v)] next to
their predicted leading values, then shows which equilibrium pair collides
and which eigenvalue dies.
"""

import numpy as np

from lvbif import bifurcation as bif
from lvbif.model import DELTA_ZERO, THETA_ZERO
from lvbif.verification import sotomayor_fixture

for family, fold_branch, crossing in ((DELTA_ZERO, bif.D_NEG, bif.T3),
                                      (THETA_ZERO, bif.D_POS, bif.T4)):
    sys_ = sotomayor_fixture(family, "a")
    coord_sign = -1.0 if family == DELTA_ZERO else 1.0
    print(f"\n== {family}: fold branch {fold_branch} ==")
    print(f"{'coord':>9s} {'C1':>12s} {'C1 pred':>12s} "
          f"{'C3':>12s} {'C3 pred':>12s} verdict")
    for c in coord_sign * np.geomspace(3e-4, 3e-3, 5):
        mu0 = bif.parabola_point(sys_, fold_branch, c)
        rep = bif.sotomayor_saddle_node(sys_, mu0)
        print(f"{c:9.1e} {rep.C1:12.4e} {rep.predicted['C1']:12.4e} "
              f"{rep.C3:12.4e} {rep.predicted['C3']:12.4e} {rep.verdict}")

    print(f"\n== {family}: crossing curve {crossing} ==")
    print(f"{'coord':>9s} {'C2':>12s} {'C2 pred':>12s} "
          f"{'C3':>12s} {'C3 pred':>12s} verdict")
    for c in -np.geomspace(3e-4, 3e-3, 5):
        mu0 = bif.parabola_point(sys_, crossing, c)
        rep = bif.sotomayor_transcritical(sys_, mu0)
        print(f"{c:9.1e} {rep.C2:12.4e} {rep.predicted['C2']:12.4e} "
              f"{rep.C3:12.4e} {rep.predicted['C3']:12.4e} {rep.verdict}")

    curve = bif.trace_curve(sys_, crossing, [1e-3])
    rec = bif.collision_check(sys_, curve)[0]
    print(f"collision on {crossing}: pair {rec.pair}, "
          f"vanishing eigenvalue of {rec.vanishing} = {rec.vanishing_eig:.2e}, "
          f"companion {rec.companion} is {rec.companion_kind}")
