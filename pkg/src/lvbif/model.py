"""Model types: the raw planar cubic system, its normal-form reduction, and
evaluation of the reduced vector field and its derivatives.

The raw system is

    dx/dtau = 2x (mu1 + p11 x + p12 y + p13 xy + p14 x^2 + p15 y^2)
    dy/dtau = 2y (mu2 + p21 x + p22 y + p23 xy + p24 x^2 + p25 y^2)

with all p_ij smooth functions of mu = (mu1, mu2).  Under the state/time
change xi1 = x*p12(mu), xi2 = y*p21(mu), t = 2*tau (valid for p12(0) > 0,
p21(0) > 0) it becomes the reduced form

    xi1' = xi1 (mu1 + theta xi1 + gamma xi2 + M xi1 xi2 + N xi1^2 + L xi2^2)
    xi2' = xi2 (mu2 + xi1/gamma + delta xi2 + S xi1 xi2 + P xi2^2 + R xi1^2)

whose nine coefficient functions are ratios of the raw ones.  For the
negative sign pair p12(0) < 0, p21(0) < 0 a mirrored change (with reversed
time and relabeled parameter nu = -mu) produces the same form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .errors import DiskError, DivisionError, SignError
from .poly import DEFAULT_DEGREE, DIV_FLOOR, CoefficientPoly, as_poly

# degeneracy classes, decided by theta(0) and delta(0)
NONDEGENERATE = "NonDegenerate"
DELTA_ZERO = "DeltaZero"
THETA_ZERO = "ThetaZero"
DOUBLY_DEGENERATE = "DoublyDegenerate"

# |theta(0)| (or |delta(0)|) below this counts as an exact zero; it only has
# to absorb float noise from the truncated division in `reduce`.
CLASS_TOL = 1e-12

# default smallness radius of the parameter disk
EPSILON_DISK = 1e-2


@dataclass(frozen=True)
class ParamPoint:
    """A point of the small-parameter plane."""

    mu1: float
    mu2: float

    @property
    def norm(self) -> float:
        return math.hypot(self.mu1, self.mu2)

    @property
    def angle(self) -> float:
        return math.atan2(self.mu2, self.mu1) % (2.0 * math.pi)

    def as_tuple(self) -> tuple[float, float]:
        return (self.mu1, self.mu2)

    @classmethod
    def coerce(cls, mu) -> "ParamPoint":
        if isinstance(mu, ParamPoint):
            return mu
        m1, m2 = mu
        return cls(float(m1), float(m2))

    @classmethod
    def from_polar(cls, r: float, phi: float) -> "ParamPoint":
        return cls(r * math.cos(phi), r * math.sin(phi))


def check_disk(mu: ParamPoint, epsilon_disk: float = EPSILON_DISK) -> ParamPoint:
    if mu.norm >= epsilon_disk:
        raise DiskError(
            f"|mu| = {mu.norm:.3e} is not inside the disk of radius {epsilon_disk:.3e}")
    return mu


class Coeffs(NamedTuple):
    """All reduced coefficients evaluated at a fixed mu (the fast path)."""

    mu1: float
    mu2: float
    theta: float
    gamma: float
    delta: float
    M: float
    N: float
    L: float
    S: float
    P: float
    R: float


@dataclass(frozen=True)
class RawSystem:
    """The ten coefficient functions of the raw system."""

    p11: CoefficientPoly
    p12: CoefficientPoly
    p13: CoefficientPoly
    p14: CoefficientPoly
    p15: CoefficientPoly
    p21: CoefficientPoly
    p22: CoefficientPoly
    p23: CoefficientPoly
    p24: CoefficientPoly
    p25: CoefficientPoly
    degree: int = DEFAULT_DEGREE

    @classmethod
    def from_coeffs(cls, degree: int = DEFAULT_DEGREE, **kw) -> "RawSystem":
        names = ("p11", "p12", "p13", "p14", "p15",
                 "p21", "p22", "p23", "p24", "p25")
        polys = {n: as_poly(kw.pop(n, 0.0), degree) for n in names}
        if kw:
            raise TypeError(f"unknown raw coefficients: {sorted(kw)}")
        return cls(degree=degree, **polys)

    def __post_init__(self):
        for name in ("p12", "p21"):
            v = getattr(self, name).at_zero
            if abs(v) < DIV_FLOOR:
                raise DivisionError(f"{name}(0) must be nonzero (got {v!r})")

    def eval_field(self, mu, xy: tuple[float, float]) -> tuple[float, float]:
        """Right-hand side of the raw system at state (x, y)."""
        mu = ParamPoint.coerce(mu)
        x, y = xy
        m1, m2 = mu.mu1, mu.mu2
        e = lambda p: p(m1, m2)
        fx = 2.0 * x * (m1 + e(self.p11) * x + e(self.p12) * y
                        + e(self.p13) * x * y + e(self.p14) * x * x
                        + e(self.p15) * y * y)
        fy = 2.0 * y * (m2 + e(self.p21) * x + e(self.p22) * y
                        + e(self.p23) * x * y + e(self.p24) * x * x
                        + e(self.p25) * y * y)
        return fx, fy


def classify_degeneracy(theta0: float, delta0: float,
                        tol: float = CLASS_TOL) -> str:
    tz = abs(theta0) < tol
    dz = abs(delta0) < tol
    if tz and dz:
        return DOUBLY_DEGENERATE
    if dz:
        return DELTA_ZERO
    if tz:
        return THETA_ZERO
    return NONDEGENERATE


@dataclass(frozen=True)
class ReducedSystem:
    """The nine coefficient functions of the reduced system."""

    theta: CoefficientPoly
    gamma: CoefficientPoly
    delta: CoefficientPoly
    M: CoefficientPoly
    N: CoefficientPoly
    L: CoefficientPoly
    S: CoefficientPoly
    P: CoefficientPoly
    R: CoefficientPoly
    degree: int = DEFAULT_DEGREE
    degeneracy: str = field(default="")
    mu_negated: bool = False

    def __post_init__(self):
        if self.gamma.at_zero <= 0.0:
            raise SignError(
                f"gamma(0) must be positive (got {self.gamma.at_zero!r})")
        if not self.degeneracy:
            object.__setattr__(
                self, "degeneracy",
                classify_degeneracy(self.theta.at_zero, self.delta.at_zero))

    @classmethod
    def from_coeffs(cls, degree: int = DEFAULT_DEGREE,
                    mu_negated: bool = False, **kw) -> "ReducedSystem":
        names = ("theta", "gamma", "delta", "M", "N", "L", "S", "P", "R")
        polys = {n: as_poly(kw.pop(n, 0.0), degree) for n in names}
        if kw:
            raise TypeError(f"unknown reduced coefficients: {sorted(kw)}")
        return cls(degree=degree, mu_negated=mu_negated, **polys)

    # convenient scalar views used throughout the analysis
    @property
    def theta0(self) -> float:
        return self.theta.at_zero

    @property
    def delta0(self) -> float:
        return self.delta.at_zero

    @property
    def gamma0(self) -> float:
        return self.gamma.at_zero

    @property
    def theta1(self) -> float:
        return self.theta.d_mu1

    @property
    def theta2(self) -> float:
        return self.theta.d_mu2

    @property
    def delta1(self) -> float:
        return self.delta.d_mu1

    @property
    def delta2(self) -> float:
        return self.delta.d_mu2

    @property
    def gamma1(self) -> float:
        return self.gamma.d_mu1

    @property
    def gamma2(self) -> float:
        return self.gamma.d_mu2

    @property
    def N0(self) -> float:
        return self.N.at_zero

    @property
    def P0(self) -> float:
        return self.P.at_zero

    def at(self, mu) -> Coeffs:
        """Evaluate every coefficient function at mu."""
        mu = ParamPoint.coerce(mu)
        m1, m2 = mu.mu1, mu.mu2
        return Coeffs(
            m1, m2,
            self.theta(m1, m2), self.gamma(m1, m2), self.delta(m1, m2),
            self.M(m1, m2), self.N(m1, m2), self.L(m1, m2),
            self.S(m1, m2), self.P(m1, m2), self.R(m1, m2))

    def truncated(self) -> "ReducedSystem":
        """Copy with the quadratic/cubic bracket coefficients forced to zero."""
        zero = CoefficientPoly({}, self.degree)
        return replace(self, M=zero, N=zero, L=zero, S=zero, P=zero, R=zero,
                       degeneracy=self.degeneracy)

    def to_json_dict(self) -> dict:
        d = {"form": "reduced", "degree": self.degree}
        for n in ("theta", "gamma", "delta", "M", "N", "L", "S", "P", "R"):
            p: CoefficientPoly = getattr(self, n)
            if not p.is_zero():
                d[n] = p.to_json_dict()
        return d


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def reduce(raw: RawSystem) -> ReducedSystem:
    """Reduce the raw system to normal form (positive sign pair).

    Coefficient formulas: delta = p22/p21, theta = p11/p12, gamma = p12/p21,
    L = p15/p21^2, M = p13/(p12 p21), N = p14/p12^2, P = p25/p21^2,
    R = p24/p12^2, S = p23/(p12 p21); all as truncated series.
    """
    if raw.p12.at_zero <= 0.0 or raw.p21.at_zero <= 0.0:
        raise SignError(
            "reduce requires p12(0) > 0 and p21(0) > 0; "
            "use reduce_negative for the (negative, negative) pair")
    return _reduce_ratios(raw)


def _reduce_ratios(raw: RawSystem) -> ReducedSystem:
    p12, p21 = raw.p12, raw.p21
    p12sq = p12 * p12
    p21sq = p21 * p21
    p12p21 = p12 * p21
    return ReducedSystem(
        theta=raw.p11.truncated_div(p12),
        gamma=p12.truncated_div(p21),
        delta=raw.p22.truncated_div(p21),
        M=raw.p13.truncated_div(p12p21),
        N=raw.p14.truncated_div(p12sq),
        L=raw.p15.truncated_div(p21sq),
        S=raw.p23.truncated_div(p12p21),
        P=raw.p25.truncated_div(p21sq),
        R=raw.p24.truncated_div(p12sq),
        degree=raw.degree)


def reduce_negative(raw: RawSystem) -> ReducedSystem:
    """Reduce a raw system with p12(0) < 0 and p21(0) < 0.

    Uses xi1 = -x*p12, xi2 = -y*p21, t = -2*tau; the result is expressed in
    the relabeled parameter nu = (-mu1, -mu2), with the quadratic and cubic
    bracket coefficients negated.  The returned system has mu_negated=True so
    downstream reports can speak in nu.
    """
    if not (raw.p12.at_zero < 0.0 and raw.p21.at_zero < 0.0):
        raise SignError(
            "reduce_negative requires p12(0) < 0 and p21(0) < 0")
    base = _reduce_ratios(raw)
    flip = lambda p: p.negate_arguments()
    return ReducedSystem(
        theta=flip(base.theta),
        gamma=flip(base.gamma),
        delta=flip(base.delta),
        M=-flip(base.M),
        N=-flip(base.N),
        L=-flip(base.L),
        S=-flip(base.S),
        P=-flip(base.P),
        R=-flip(base.R),
        degree=raw.degree,
        mu_negated=True)


# ---------------------------------------------------------------------------
# field evaluation (scalar fast paths on Coeffs, public wrappers on systems)
# ---------------------------------------------------------------------------

def bracket1(c: Coeffs, x1: float, x2: float) -> float:
    """First bracket g1; xi1' = xi1 * g1."""
    return (c.mu1 + c.theta * x1 + c.gamma * x2
            + c.M * x1 * x2 + c.N * x1 * x1 + c.L * x2 * x2)


def bracket2(c: Coeffs, x1: float, x2: float) -> float:
    """Second bracket g2; xi2' = xi2 * g2."""
    return (c.mu2 + x1 / c.gamma + c.delta * x2
            + c.S * x1 * x2 + c.P * x2 * x2 + c.R * x1 * x1)


def field_at(c: Coeffs, xi: tuple[float, float]) -> tuple[float, float]:
    x1, x2 = xi
    return (x1 * bracket1(c, x1, x2), x2 * bracket2(c, x1, x2))


def jacobian_at(c: Coeffs, xi: tuple[float, float]) -> tuple[tuple[float, float],
                                                             tuple[float, float]]:
    x1, x2 = xi
    g1 = bracket1(c, x1, x2)
    g2 = bracket2(c, x1, x2)
    j11 = g1 + x1 * (c.theta + c.M * x2 + 2.0 * c.N * x1)
    j12 = x1 * (c.gamma + c.M * x1 + 2.0 * c.L * x2)
    j21 = x2 * (1.0 / c.gamma + c.S * x2 + 2.0 * c.R * x1)
    j22 = g2 + x2 * (c.delta + c.S * x1 + 2.0 * c.P * x2)
    return ((j11, j12), (j21, j22))


def bracket_jacobian_at(c: Coeffs, xi: tuple[float, float]
                        ) -> tuple[tuple[float, float], tuple[float, float]]:
    """Jacobian of (g1, g2); nonsingular even where equilibria collide."""
    x1, x2 = xi
    return ((c.theta + c.M * x2 + 2.0 * c.N * x1,
             c.gamma + c.M * x1 + 2.0 * c.L * x2),
            (1.0 / c.gamma + c.S * x2 + 2.0 * c.R * x1,
             c.delta + c.S * x1 + 2.0 * c.P * x2))


def hessian_form_at(c: Coeffs, xi: tuple[float, float],
                    v: tuple[float, float]) -> tuple[float, float]:
    """Second differential D^2 f(xi)(v, v), exact for the cubic field."""
    x1, x2 = xi
    v1, v2 = v
    f1_11 = 2.0 * c.theta + 2.0 * c.M * x2 + 6.0 * c.N * x1
    f1_12 = c.gamma + 2.0 * c.M * x1 + 2.0 * c.L * x2
    f1_22 = 2.0 * c.L * x1
    f2_11 = 2.0 * c.R * x2
    f2_12 = 1.0 / c.gamma + 2.0 * c.S * x2 + 2.0 * c.R * x1
    f2_22 = 2.0 * c.delta + 2.0 * c.S * x1 + 6.0 * c.P * x2
    return (f1_11 * v1 * v1 + 2.0 * f1_12 * v1 * v2 + f1_22 * v2 * v2,
            f2_11 * v1 * v1 + 2.0 * f2_12 * v1 * v2 + f2_22 * v2 * v2)


def eval_field(sys: ReducedSystem, mu, xi) -> tuple[float, float]:
    """Right-hand side of the reduced system at state xi."""
    return field_at(sys.at(mu), tuple(xi))


def eval_jacobian(sys: ReducedSystem, mu, xi):
    """Analytic Jacobian of eval_field as a 2x2 nested tuple."""
    return jacobian_at(sys.at(mu), tuple(xi))


# ---------------------------------------------------------------------------
# system configuration files (JSON)
# ---------------------------------------------------------------------------

RAW_NAMES = ("p11", "p12", "p13", "p14", "p15",
             "p21", "p22", "p23", "p24", "p25")
REDUCED_NAMES = ("theta", "gamma", "delta", "M", "N", "L", "S", "P", "R")


@dataclass(frozen=True)
class LoadedSystem:
    system: ReducedSystem
    form: str
    raw: RawSystem | None = None


def system_from_dict(cfg: dict) -> LoadedSystem:
    """Build a reduced system from a configuration mapping.

    Two forms are accepted: {"form": "raw", "p11": {...}, ...} or
    {"form": "reduced", "theta": {...}, ...}.  Exponent keys are "(i,j)"
    strings; missing coefficients are zero.  A raw system with the negative
    sign pair is reduced through the mirrored change automatically.
    """
    form = cfg.get("form", "reduced")
    degree = int(cfg.get("degree", DEFAULT_DEGREE))
    if form == "raw":
        raw = RawSystem.from_coeffs(
            degree=degree,
            **{n: as_poly(cfg.get(n, 0.0), degree) for n in RAW_NAMES})
        if raw.p12.at_zero > 0.0 and raw.p21.at_zero > 0.0:
            sys_ = reduce(raw)
        elif raw.p12.at_zero < 0.0 and raw.p21.at_zero < 0.0:
            sys_ = reduce_negative(raw)
        else:
            raise SignError(
                "p12(0) and p21(0) must have the same sign "
                f"(got {raw.p12.at_zero!r}, {raw.p21.at_zero!r})")
        return LoadedSystem(system=sys_, form="raw", raw=raw)
    if form == "reduced":
        sys_ = ReducedSystem.from_coeffs(
            degree=degree,
            **{n: as_poly(cfg.get(n, 0.0), degree) for n in REDUCED_NAMES})
        return LoadedSystem(system=sys_, form="reduced")
    raise ValueError(f"unknown system form {form!r}")


def load_system(path) -> LoadedSystem:
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    return system_from_dict(cfg)


__all__ = [
    "NONDEGENERATE", "DELTA_ZERO", "THETA_ZERO", "DOUBLY_DEGENERATE",
    "CLASS_TOL", "EPSILON_DISK",
    "ParamPoint", "check_disk", "Coeffs", "RawSystem", "ReducedSystem",
    "classify_degeneracy", "reduce", "reduce_negative",
    "bracket1", "bracket2", "field_at", "jacobian_at", "bracket_jacobian_at",
    "hessian_form_at", "eval_field", "eval_jacobian",
    "LoadedSystem", "system_from_dict", "load_system",
]
