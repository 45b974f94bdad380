"""Bifurcation curves in the parameter disk and genericity verification.

Curves are traced by radius sweep: on each circle |mu| = r the defining
scalar residual (a collision coordinate of the interior equilibrium, an axis
discriminant, or the interior half-trace) is root-solved in the angle.  The
saddle-node and transcritical quantities C1 = w.f_b, C2 = w.[Df_b v],
C3 = w.[D^2 f (v,v)] are evaluated at collision points with analytic state
derivatives and central finite differences in the bifurcation parameter.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .equilibria import TOL, Tolerances, char_poly_identities, refine_e3
from .errors import (DegenerateJacobian, HypothesisViolation, NotApplicable,
                     UnsupportedCase)
from .model import (DELTA_ZERO, NONDEGENERATE, THETA_ZERO, ParamPoint,
                    ReducedSystem, field_at, hessian_form_at, jacobian_at)

# curve kinds
T1 = "T1"
T2 = "T2"
T3 = "T3"
T3_PLUS = "T3plus"
T4 = "T4"
T4_PLUS = "T4plus"
D_NEG = "D_branch_neg"
D_POS = "D_branch_pos"
H = "H"
X_PLUS = "Xplus"
X_MINUS = "Xminus"
Y_PLUS = "Yplus"
Y_MINUS = "Yminus"

AXES = (X_PLUS, Y_PLUS, X_MINUS, Y_MINUS)

# default per-class curve sets (H is traceable but never a sector boundary)
ADMISSIBLE = {
    NONDEGENERATE: AXES + (T1, T2, H),
    DELTA_ZERO: AXES + (T1, T3, T3_PLUS, D_NEG, D_POS),
    THETA_ZERO: AXES + (T2, T4, T4_PLUS, D_NEG, D_POS),
}

CURVE_TOL = 1e-12  # times (1 + |mu|), on the defining residual


def admissible_kinds(sys: ReducedSystem) -> tuple[str, ...]:
    try:
        return ADMISSIBLE[sys.degeneracy]
    except KeyError:
        raise UnsupportedCase(
            f"no curve set for degeneracy class {sys.degeneracy!r}")


@dataclass
class BifurcationCurve:
    kind: str
    halfline: str
    samples: list[ParamPoint] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    leading: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.samples


@dataclass
class SotomayorReport:
    curve_kind: str
    mu0: ParamPoint
    xi0: tuple[float, float]
    v: tuple[float, float]
    w: tuple[float, float]
    C1: float
    C2: float
    C3: float
    predicted: dict[str, float]
    verdict: str
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def _e3_xi(sys: ReducedSystem, mu: ParamPoint, tol: Tolerances) -> tuple[float, float]:
    return refine_e3(sys, mu, tol=tol)


def curve_residual(sys: ReducedSystem, kind: str, tol: Tolerances = TOL):
    """The defining scalar residual of a curve kind, as a function of mu."""
    fam = sys.degeneracy

    if kind in (X_PLUS, X_MINUS):
        return lambda mu: mu.mu2
    if kind in (Y_PLUS, Y_MINUS):
        return lambda mu: mu.mu1

    if kind == T1:
        if fam not in (NONDEGENERATE, DELTA_ZERO):
            raise NotApplicable(f"{kind} is not defined for class {fam}")
        return lambda mu: _e3_xi(sys, mu, tol)[1]
    if kind == T2:
        if fam not in (NONDEGENERATE, THETA_ZERO):
            raise NotApplicable(f"{kind} is not defined for class {fam}")
        return lambda mu: _e3_xi(sys, mu, tol)[0]
    if kind in (T3, T3_PLUS):
        if fam != DELTA_ZERO:
            raise NotApplicable(f"{kind} is not defined for class {fam}")
        return lambda mu: _e3_xi(sys, mu, tol)[0]
    if kind in (T4, T4_PLUS):
        if fam != THETA_ZERO:
            raise NotApplicable(f"{kind} is not defined for class {fam}")
        return lambda mu: _e3_xi(sys, mu, tol)[1]

    if kind in (D_NEG, D_POS):
        if fam == DELTA_ZERO:
            return lambda mu: discriminant_axis2(sys, mu)
        if fam == THETA_ZERO:
            return lambda mu: discriminant_axis1(sys, mu)
        raise NotApplicable(f"{kind} is not defined for class {fam}")

    if kind == H:
        if fam != NONDEGENERATE:
            raise NotApplicable(f"{kind} is not defined for class {fam}")
        g = sys.gamma0
        if abs(sys.theta0 * g - 1.0) < 1e-12 or abs(g - sys.delta0) < 1e-12:
            raise NotApplicable(
                "the half-trace zero set is not a unique curve here "
                "(theta*gamma = 1 or gamma = delta)")

        def h_res(mu: ParamPoint) -> float:
            xi = _e3_xi(sys, mu, tol)
            chk = char_poly_identities(sys, mu, xi)
            return chk.p_direct
        return h_res

    raise NotApplicable(f"unknown curve kind {kind!r}")


def discriminant_axis2(sys: ReducedSystem, mu) -> float:
    """delta(mu)^2 - 4 mu2 P(mu): axis-pair discriminant on the xi2-axis."""
    mu = ParamPoint.coerce(mu)
    c = sys.at(mu)
    return c.delta * c.delta - 4.0 * mu.mu2 * c.P


def discriminant_axis1(sys: ReducedSystem, mu) -> float:
    """theta(mu)^2 - 4 mu1 N(mu): axis-pair discriminant on the xi1-axis."""
    mu = ParamPoint.coerce(mu)
    c = sys.at(mu)
    return c.theta * c.theta - 4.0 * mu.mu1 * c.N


# ---------------------------------------------------------------------------
# half-line constraints and leading coefficients
# ---------------------------------------------------------------------------

def halfline_constraint(sys: ReducedSystem, kind: str) -> tuple[str, "callable"]:
    """(description, predicate) for the sign condition attached to a kind."""
    th, de, g = sys.theta0, sys.delta0, sys.gamma0
    fam = sys.degeneracy
    table = {
        X_PLUS: ("mu1>0", lambda mu: mu.mu1 > 0.0),
        X_MINUS: ("mu1<0", lambda mu: mu.mu1 < 0.0),
        Y_PLUS: ("mu2>0", lambda mu: mu.mu2 > 0.0),
        Y_MINUS: ("mu2<0", lambda mu: mu.mu2 < 0.0),
        T1: ("theta*mu1<0", lambda mu: th * mu.mu1 < 0.0),
        T2: ("delta*mu2<0", lambda mu: de * mu.mu2 < 0.0),
        T3: ("mu1<0", lambda mu: mu.mu1 < 0.0),
        T3_PLUS: ("mu1>0", lambda mu: mu.mu1 > 0.0),
        T4: ("mu2<0", lambda mu: mu.mu2 < 0.0),
        T4_PLUS: ("mu2>0", lambda mu: mu.mu2 > 0.0),
        H: ("", lambda mu: True),
    }
    if kind == D_NEG:
        if fam == DELTA_ZERO:
            return ("mu1<0", lambda mu: mu.mu1 < 0.0)
        return ("mu2<0", lambda mu: mu.mu2 < 0.0)
    if kind == D_POS:
        if fam == DELTA_ZERO:
            return ("mu1>0", lambda mu: mu.mu1 > 0.0)
        return ("mu2>0", lambda mu: mu.mu2 > 0.0)
    return table[kind]


def predicted_leading(sys: ReducedSystem, kind: str) -> float | None:
    """Leading coefficient of the curve's leading-order expansion, when one exists.

    Line-like kinds report the slope mu2/mu1; parabola kinds report the
    quadratic coefficient of the transverse coordinate.
    """
    th, de, g = sys.theta0, sys.delta0, sys.gamma0
    if kind == T1:
        return 1.0 / (th * g) if th != 0.0 else None
    if kind == T2:
        return de / g
    if kind == H:
        den = th * g * (g - de)
        return (th * g - 1.0) * de / den if den != 0.0 else None
    if sys.degeneracy == DELTA_ZERO:
        d1, P0 = sys.delta1, sys.P0
        if kind in (D_NEG, D_POS):
            return d1 * d1 / (4.0 * P0) if P0 != 0.0 else None
        if kind in (T3, T3_PLUS):
            return (d1 * g - P0) / (g * g)
    if sys.degeneracy == THETA_ZERO:
        t2, N0 = sys.theta2, sys.N0
        if kind in (D_NEG, D_POS):
            return t2 * t2 / (4.0 * N0) if N0 != 0.0 else None
        if kind in (T4, T4_PLUS):
            return g * (t2 - N0 * g)
    return None


def fitted_leading(sys: ReducedSystem, kind: str, mu: ParamPoint) -> float | None:
    """Leading coefficient read off one sample."""
    if kind in AXES:
        return 0.0
    line_like = kind in (T1, T2, H)
    if line_like:
        return mu.mu2 / mu.mu1 if mu.mu1 != 0.0 else None
    if sys.degeneracy == DELTA_ZERO or kind in (T3, T3_PLUS):
        return mu.mu2 / (mu.mu1 * mu.mu1) if mu.mu1 != 0.0 else None
    return mu.mu1 / (mu.mu2 * mu.mu2) if mu.mu2 != 0.0 else None


# ---------------------------------------------------------------------------
# circle intersections and tracing
# ---------------------------------------------------------------------------

def _circle_roots(residual, r: float, n_scan: int = 256) -> list[float]:
    """All angles phi in [0, 2pi) with residual(mu(r, phi)) = 0."""
    phis = np.linspace(0.0, 2.0 * math.pi, n_scan + 1)
    vals = [residual(ParamPoint.from_polar(r, p)) for p in phis]
    roots = []
    for k in range(n_scan):
        a, b = vals[k], vals[k + 1]
        if a == 0.0:
            roots.append(phis[k])
            continue
        if a * b < 0.0:
            f = lambda p: residual(ParamPoint.from_polar(r, p))
            roots.append(brentq(f, phis[k], phis[k + 1],
                                xtol=1e-15, rtol=4.0 * np.finfo(float).eps))
    return sorted(p % (2.0 * math.pi) for p in roots)


def circle_intersections(sys: ReducedSystem, kind: str, r: float,
                         tol: Tolerances = TOL) -> list[ParamPoint]:
    """Points of the curve on the circle |mu| = r, halfline filtered."""
    if kind in AXES:
        phi = {X_PLUS: 0.0, Y_PLUS: 0.5 * math.pi,
               X_MINUS: math.pi, Y_MINUS: 1.5 * math.pi}[kind]
        return [ParamPoint.from_polar(r, phi)]
    residual = curve_residual(sys, kind, tol)
    _, pred = halfline_constraint(sys, kind)
    pts = [ParamPoint.from_polar(r, phi) for phi in _circle_roots(residual, r)]
    return [p for p in pts if pred(p)]


def parse_halfline(text: str):
    """Predicate for a simple sign condition like 'mu1>0' or 'mu2<0'."""
    m = re.fullmatch(r"\s*(mu1|mu2)\s*([<>])\s*0\s*", text)
    if not m:
        raise ValueError(f"bad half-line constraint {text!r}")
    coord, op = m.group(1), m.group(2)
    pick = (lambda mu: mu.mu1) if coord == "mu1" else (lambda mu: mu.mu2)
    if op == ">":
        return lambda mu: pick(mu) > 0.0
    return lambda mu: pick(mu) < 0.0


def trace_curve(sys: ReducedSystem, kind: str, radii,
                tol: Tolerances = TOL,
                halfline: str | None = None) -> BifurcationCurve:
    """Sample a curve at the given radii and fit its leading coefficient.

    halfline adds a further sign condition on top of the kind's own one
    (the curve refuses samples violating its constraint either way).
    Returns an empty curve with a note when no sample satisfies the
    constraints (the curve is absent for this sign pattern).  Raises
    NotApplicable when the kind does not exist for the class.
    """
    if kind not in admissible_kinds(sys):
        raise NotApplicable(
            f"curve {kind} is not admissible for class {sys.degeneracy}")
    desc, _ = halfline_constraint(sys, kind)
    extra = parse_halfline(halfline) if halfline is not None else None
    curve = BifurcationCurve(kind=kind, halfline=desc if halfline is None
                             else f"{desc} & {halfline}")
    residual = curve_residual(sys, kind, tol)
    for r in sorted(radii, reverse=True):
        pts = circle_intersections(sys, kind, r, tol)
        if extra is not None:
            pts = [p for p in pts if extra(p)]
        if not pts:
            curve.notes.append(f"NoRoot: no {kind} point on |mu| = {r:.3e}")
            continue
        for p in pts:
            curve.samples.append(p)
            curve.residuals.append(residual(p))
    if curve.samples:
        curve.leading = fitted_leading(sys, kind, curve.samples[-1])
    else:
        curve.notes.append("curve absent for this sign pattern")
    return curve


def parabola_point(sys: ReducedSystem, kind: str, coord: float,
                   tol: Tolerances = TOL) -> ParamPoint:
    """Point of a parabola-like curve at a pinned dominant coordinate.

    For the DeltaZero class the dominant coordinate is mu1 and the solve is
    in mu2; the ThetaZero class mirrors the roles.
    """
    residual = curve_residual(sys, kind, tol)
    desc, pred = halfline_constraint(sys, kind)
    lead = predicted_leading(sys, kind)
    if lead is None:
        raise HypothesisViolation(f"no leading expansion for {kind}")
    seed = lead * coord * coord
    span = max(abs(seed), 1e-3 * coord * coord, 1e-18)
    if sys.degeneracy == DELTA_ZERO:
        f = lambda m2: residual(ParamPoint(coord, m2))
        lo, hi = seed - 60.0 * span, seed + 60.0 * span
        m2 = brentq(f, lo, hi, xtol=1e-18, rtol=4.0 * np.finfo(float).eps)
        mu = ParamPoint(coord, m2)
    else:
        f = lambda m1: residual(ParamPoint(m1, coord))
        lo, hi = seed - 60.0 * span, seed + 60.0 * span
        m1 = brentq(f, lo, hi, xtol=1e-18, rtol=4.0 * np.finfo(float).eps)
        mu = ParamPoint(m1, coord)
    if not pred(mu):
        raise HypothesisViolation(
            f"{kind} point at coordinate {coord!r} violates {desc}")
    return mu


# ---------------------------------------------------------------------------
# Sotomayor quantities
# ---------------------------------------------------------------------------

def axis_kernel_vectors(A, xi0: tuple[float, float]
                        ) -> tuple[np.ndarray, np.ndarray]:
    """Exact kernel vectors of the Jacobian at an on-axis collision point.

    On an axis the Jacobian is triangular, so the zero eigenvalue sits in a
    diagonal slot and the kernel vectors of A and A^T are closed rational
    expressions of its entries.  The scaling follows the component
    convention of the predicted genericity quantities (a designated
    component equals 1), not unit norm.
    """
    (a11, a12), (a21, a22) = A
    on_xi2_axis = xi0[0] == 0.0
    on_xi1_axis = xi0[1] == 0.0
    if not (on_xi1_axis or on_xi2_axis):
        raise DegenerateJacobian(
            f"collision point {xi0!r} is not on a coordinate axis")
    zero_is_first = abs(a11) <= abs(a22)
    zero, other = (a11, a22) if zero_is_first else (a22, a11)
    if abs(other) <= 1e3 * abs(zero):
        raise DegenerateJacobian(
            f"zero eigenvalue is not simple (diagonal {a11:.3e}, {a22:.3e})")
    if on_xi2_axis:
        # lower triangular (a12 = 0)
        if zero_is_first:   # transverse eigenvalue dies: interior crossing
            v = np.array([-a22 / a21, 1.0])
            w = np.array([1.0, 0.0])
        else:               # tangent eigenvalue dies: fold of the axis pair
            v = np.array([0.0, 1.0])
            w = np.array([-a21 / a11, 1.0])
    else:
        # upper triangular (a21 = 0)
        if zero_is_first:   # tangent eigenvalue dies
            v = np.array([1.0, 0.0])
            w = np.array([-a22 / a12, 1.0])
        else:               # transverse eigenvalue dies
            v = np.array([-a12 / a11, 1.0])
            w = np.array([0.0, 1.0])
    return v, w


def _fd_parameter_field(sys: ReducedSystem, mu: ParamPoint, xi, param: int,
                        h: float) -> np.ndarray:
    def shift(s):
        m = [mu.mu1, mu.mu2]
        m[param] += s
        return ParamPoint(m[0], m[1])
    fp = field_at(sys.at(shift(+h)), xi)
    fm = field_at(sys.at(shift(-h)), xi)
    return (np.asarray(fp) - np.asarray(fm)) / (2.0 * h)


def _fd_parameter_jacobian(sys: ReducedSystem, mu: ParamPoint, xi, param: int,
                           h: float) -> np.ndarray:
    def shift(s):
        m = [mu.mu1, mu.mu2]
        m[param] += s
        return ParamPoint(m[0], m[1])
    jp = np.asarray(jacobian_at(sys.at(shift(+h)), xi))
    jm = np.asarray(jacobian_at(sys.at(shift(-h)), xi))
    return (jp - jm) / (2.0 * h)


def sotomayor_quantities(sys: ReducedSystem, mu0: ParamPoint,
                         xi0: tuple[float, float], param: int
                         ) -> tuple[np.ndarray, np.ndarray, float, float, float]:
    """Kernel vectors and C1, C2, C3 at an on-axis collision equilibrium
    with a simple zero eigenvalue; param selects the bifurcation parameter
    (0 or 1)."""
    A = jacobian_at(sys.at(mu0), xi0)
    v, w = axis_kernel_vectors(A, xi0)
    h = 1e-7 * (1.0 + mu0.norm)
    c1 = float(w @ _fd_parameter_field(sys, mu0, xi0, param, h))
    c2 = float(w @ (_fd_parameter_jacobian(sys, mu0, xi0, param, h) @ v))
    c3 = float(w @ np.asarray(
        hessian_form_at(sys.at(mu0), xi0, (float(v[0]), float(v[1])))))
    return v, w, c1, c2, c3


def _nonzero_tol(scale: float) -> float:
    eps = np.finfo(float).eps
    return 1e3 * eps * max(abs(scale), eps)


def sotomayor_saddle_node(sys: ReducedSystem, mu0,
                          tol: Tolerances = TOL) -> SotomayorReport:
    """Genericity quantities at the axis-pair collision on the discriminant
    curve, with the predicted leading values attached for comparison."""
    mu0 = ParamPoint.coerce(mu0)
    g = sys.gamma0
    notes: list[str] = []
    if sys.degeneracy == DELTA_ZERO:
        d1, d2, P0 = sys.delta1, sys.delta2, sys.P0
        hyp = sys.theta0 * d1 * d2 * P0 * (2.0 * P0 - d1 * g)
        c = sys.at(mu0)
        xi0 = (0.0, -c.delta / (2.0 * c.P))
        param = 1  # mu2 varies along the branch at fixed mu1
        predicted = {"C1": -d1 * mu0.mu1 / (2.0 * P0),
                     "C3": -d1 * mu0.mu1}
        kind = D_NEG if mu0.mu1 < 0.0 else D_POS
    elif sys.degeneracy == THETA_ZERO:
        t1, t2, N0 = sys.theta1, sys.theta2, sys.N0
        hyp = t1 * t2 * sys.delta0 * N0 * (2.0 * N0 * g - t2)
        c = sys.at(mu0)
        xi0 = (-c.theta / (2.0 * c.N), 0.0)
        param = 0  # mu1 varies at fixed mu2
        predicted = {"C1": -mu0.mu2 * (2.0 * N0 * g - t2) / (2.0 * N0 * g * g),
                     "C3": -mu0.mu2 * (2.0 * N0 * g - t2) / (g * g)}
        kind = D_POS if mu0.mu2 > 0.0 else D_NEG
    else:
        raise NotApplicable(
            "saddle-node curves exist only in the degenerate classes")

    residual = curve_residual(sys, kind, tol)
    res = residual(mu0)
    if abs(res) > CURVE_TOL * (1.0 + mu0.norm) * 1e3:
        notes.append(f"mu0 off the discriminant curve (residual {res:.3e})")

    v, w, c1, c2, c3 = sotomayor_quantities(sys, mu0, xi0, param)
    if abs(hyp) < 1e-12:
        verdict = "Inconclusive"
        notes.append("genericity hypothesis product vanishes")
    else:
        scale1 = predicted.get("C1", c1)
        scale3 = predicted.get("C3", c3)
        ok = abs(c1) > _nonzero_tol(scale1) and abs(c3) > _nonzero_tol(scale3)
        verdict = "SaddleNode" if ok else "Inconclusive"
    return SotomayorReport(kind, mu0, xi0, (float(v[0]), float(v[1])),
                           (float(w[0]), float(w[1])), c1, c2, c3,
                           predicted, verdict, notes)


def transcritical_branch(sys: ReducedSystem) -> str:
    """Label of the axis point that meets the interior equilibrium."""
    g = sys.gamma0
    if sys.degeneracy == DELTA_ZERO:
        return "E21" if g * sys.delta1 - 2.0 * sys.P0 < 0.0 else "E22"
    if sys.degeneracy == THETA_ZERO:
        return "E11" if sys.theta2 - 2.0 * sys.N0 * g < 0.0 else "E12"
    raise NotApplicable("no collision branch rule for this class")


def sotomayor_transcritical(sys: ReducedSystem, mu0,
                            tol: Tolerances = TOL) -> SotomayorReport:
    """Genericity quantities at the interior/axis collision on the
    transcritical parabola of the active degenerate class."""
    mu0 = ParamPoint.coerce(mu0)
    g = sys.gamma0
    notes: list[str] = []
    c = sys.at(mu0)
    if sys.degeneracy == DELTA_ZERO:
        d1, P0, g2 = sys.delta1, sys.P0, sys.gamma2
        if d1 * g2 * (d1 * g - 2.0 * P0) == 0.0:
            raise HypothesisViolation(
                "transcritical hypothesis delta1*gamma2*(delta1*gamma-2P) = 0")
        kind = T3
        param = 1
        branch = transcritical_branch(sys)
        rp, rm = _axis_roots_at(c.P, c.delta, mu0.mu2, tol)
        xi2 = rp if branch == "E21" else rm
        if xi2 is None:
            raise DegenerateJacobian("axis pair absent at mu0")
        xi0 = (0.0, xi2)
        predicted = {
            "C2": mu0.mu1 * mu0.mu1 * (g * d1 - 2.0 * P0) * g2 / g,
            "C3": 2.0 * g * mu0.mu1 * (2.0 * P0 - g * d1),
        }
    elif sys.degeneracy == THETA_ZERO:
        t2, N0, g1 = sys.theta2, sys.N0, sys.gamma1
        if g1 * t2 * sys.delta0 * (t2 - N0 * g) == 0.0 \
                or t2 - 2.0 * N0 * g == 0.0:
            raise HypothesisViolation(
                "transcritical hypothesis gamma1*theta2*delta*(theta2-N*gamma) = 0 "
                "or theta2 - 2N*gamma = 0")
        kind = T4
        param = 0
        branch = transcritical_branch(sys)
        rp, rm = _axis_roots_at(c.N, c.theta, mu0.mu1, tol)
        xi1 = rp if branch == "E11" else rm
        if xi1 is None:
            raise DegenerateJacobian("axis pair absent at mu0")
        xi0 = (xi1, 0.0)
        predicted = {
            "C2": g1 * mu0.mu2 / g,
            "C3": 2.0 / ((2.0 * N0 * g - t2) * mu0.mu2),
        }
    else:
        raise NotApplicable(
            "transcritical parabolas exist only in the degenerate classes")

    residual = curve_residual(sys, kind, tol)
    res = residual(mu0)
    if abs(res) > CURVE_TOL * (1.0 + mu0.norm) * 1e3:
        notes.append(f"mu0 off the curve (residual {res:.3e})")

    v, w, c1, c2, c3 = sotomayor_quantities(sys, mu0, xi0, param)
    tol_c1 = 1e-9 * max(abs(c2), _nonzero_tol(predicted["C2"]))
    ok = (abs(c1) < max(tol_c1, 1e-300)
          and abs(c2) > _nonzero_tol(predicted["C2"])
          and abs(c3) > _nonzero_tol(predicted["C3"]))
    verdict = "Transcritical" if ok else "Inconclusive"
    return SotomayorReport(kind, mu0, xi0, (float(v[0]), float(v[1])),
                           (float(w[0]), float(w[1])), c1, c2, c3,
                           predicted, verdict, notes)


def _axis_roots_at(a: float, b: float, cc: float, tol: Tolerances):
    from .equilibria import stable_quadratic_roots
    return stable_quadratic_roots(a, b, cc, tol.quad_floor)


# ---------------------------------------------------------------------------
# collision bookkeeping
# ---------------------------------------------------------------------------

@dataclass
class CollisionRecord:
    mu: ParamPoint
    pair: tuple[str, str]
    distance: float
    vanishing: str          # label whose transverse eigenvalue vanishes
    vanishing_eig: float
    companion: str | None
    companion_kind: str | None


def expected_collision_pair(sys: ReducedSystem, kind: str) -> tuple[str, str]:
    if kind == T1:
        return ("E1", "E3")
    if kind == T2:
        return ("E2", "E3")
    if kind == T3:
        return (transcritical_branch(sys), "E3")
    if kind == T4:
        return (transcritical_branch(sys), "E3")
    raise NotApplicable(f"no collision assignment for curve {kind}")


def collision_check(sys: ReducedSystem, curve: BifurcationCurve,
                    tol: Tolerances = TOL) -> list[CollisionRecord]:
    """Verify which pair collides on each sample and which eigenvalue dies.

    Raises CollisionMismatch when the closest pair is not the expected one.
    """
    from .errors import CollisionMismatch
    from .equilibria import find_equilibria

    expected = expected_collision_pair(sys, curve.kind)
    records = []
    for mu in curve.samples:
        eqs = find_equilibria(sys, mu, tol)
        named = [e for e in eqs if e.label != "E0"]
        best = None
        for i in range(len(named)):
            for j in range(i + 1, len(named)):
                d = named[i].distance(named[j])
                if best is None or d < best[0]:
                    best = (d, named[i], named[j])
        if best is None:
            raise CollisionMismatch(f"fewer than two equilibria at {mu}")
        d, ea, eb = best
        pair = tuple(sorted((ea.label, eb.label)))
        if pair != tuple(sorted(expected)):
            raise CollisionMismatch(
                f"expected {expected} to collide on {curve.kind}, found {pair} "
                f"at mu = ({mu.mu1:.6e}, {mu.mu2:.6e})")
        if d > tol.tol_collide * mu.norm:
            raise CollisionMismatch(
                f"pair {pair} distance {d:.3e} above the collision tolerance")
        axis_eq = ea if ea.label != "E3" else eb
        lam = min(axis_eq.eigenvalues, key=lambda z: abs(z.real))
        companion = _companion_label(sys, curve.kind)
        companion_kind = None
        if companion is not None:
            comp = eqs.get(companion)
            if comp is not None and comp.proper and not comp.trivial:
                companion_kind = comp.kind
        records.append(CollisionRecord(
            mu=mu, pair=pair, distance=d, vanishing=axis_eq.label,
            vanishing_eig=float(lam.real), companion=companion,
            companion_kind=companion_kind))
    return records


def _companion_label(sys: ReducedSystem, kind: str) -> str | None:
    if kind == T3:
        return "E22" if transcritical_branch(sys) == "E21" else "E21"
    if kind == T4:
        return "E12" if transcritical_branch(sys) == "E11" else "E11"
    return None


__all__ = [
    "T1", "T2", "T3", "T3_PLUS", "T4", "T4_PLUS", "D_NEG", "D_POS", "H",
    "X_PLUS", "X_MINUS", "Y_PLUS", "Y_MINUS", "AXES", "ADMISSIBLE",
    "CURVE_TOL", "admissible_kinds", "BifurcationCurve", "SotomayorReport",
    "curve_residual", "discriminant_axis1", "discriminant_axis2",
    "halfline_constraint", "predicted_leading", "fitted_leading",
    "circle_intersections", "trace_curve", "parabola_point",
    "sotomayor_quantities", "sotomayor_saddle_node", "sotomayor_transcritical",
    "transcritical_branch", "expected_collision_pair", "collision_check",
    "CollisionRecord",
]
