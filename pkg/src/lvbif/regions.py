"""Parameter-plane region decomposition and type-table verification.

A small circle |mu| = r is cut into open angular sectors by the intersection
angles of the admissible bifurcation curves (the four semi-axes always
contribute; the half-trace curve never does, since equilibrium types do not
change across it).  Each sector receives a representative point and a
type-signature; neighbouring sectors with identical signatures are merged,
so curves that only move virtual equilibria never show up as boundaries.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import bifurcation as bif
from .cases import CANONICAL_BY_FAMILY
from .equilibria import (LABELS_BY_FAMILY, TOL, EquilibriumList, Tolerances,
                         find_equilibria, sar_letter)
from .errors import OnCurve, SectorTooThin, UnsupportedCase
from .model import (DELTA_ZERO, DOUBLY_DEGENERATE, NONDEGENERATE,
                    ParamPoint, ReducedSystem)
from .reference import (EXPECTED_REGION_COUNT, EXPECTED_SIGNATURES,
                        ROW_DISPLAY, ROW_LABELS, expected_column)

TWO_PI = 2.0 * math.pi

# angular separation required between a representative and its boundaries,
# per unit radius
SEP_TOL = 1e-3

# brentq resolution on boundary angles
ANGLE_TOL = 1e-13

THREADS_ENV = "LVBIF_THREADS"


@dataclass(frozen=True)
class CaseDescriptor:
    family: str
    signs: tuple[tuple[str, int], ...]
    table_supported: bool = True
    notes: tuple[str, ...] = ()

    def sign(self, name: str) -> int:
        for k, v in self.signs:
            if k == name:
                return v
        raise KeyError(name)


@dataclass
class RegionReport:
    sector_id: int
    angles: tuple[float, float]            # open interval on the circle
    representative: ParamPoint
    signature: tuple[str, ...]
    bounding: tuple[str, str]              # curve kinds left/right
    equilibria: EquilibriumList | None = None

    @property
    def width(self) -> float:
        lo, hi = self.angles
        return (hi - lo) % TWO_PI


def _sign_of(value: float, tol: float = 1e-12) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def select_case(sys: ReducedSystem) -> CaseDescriptor:
    """Sign tuple of the case cell the system falls into.

    Raises UnsupportedCase for the doubly degenerate class, for a vanishing
    case-splitting quantity, and for degenerate-class systems whose axis
    quadratic has the sign the tables do not cover (noted, not fatal).
    """
    fam = sys.degeneracy
    g = sys.gamma0
    if fam == DOUBLY_DEGENERATE:
        raise UnsupportedCase(
            "theta(0) = delta(0) = 0 is outside the analyzed cases")
    if fam == NONDEGENERATE:
        th, de = sys.theta0, sys.delta0
        hyp = th * de - 1.0
        if _sign_of(hyp, 1e-9) == 0:
            raise UnsupportedCase("theta*delta - 1 vanishes")
        signs = (("theta", _sign_of(th)), ("delta", _sign_of(de)),
                 ("theta*delta-1", _sign_of(hyp)))
        # consistency: theta*delta > 1 forces equal signs
        if signs[2][1] > 0 and signs[0][1] * signs[1][1] <= 0:
            raise UnsupportedCase("inconsistent sign tuple")
        return CaseDescriptor(fam, signs)
    if fam == DELTA_ZERO:
        th, d1, d2, P0 = sys.theta0, sys.delta1, sys.delta2, sys.P0
        if d1 == 0.0 or d2 == 0.0 or P0 == 0.0 or th == 0.0:
            raise UnsupportedCase(
                "DeltaZero analysis requires theta, delta1, delta2, P nonzero")
        q1, q2 = g * d1 - P0, g * d1 - 2.0 * P0
        signs = (("theta", _sign_of(th)), ("delta1", _sign_of(d1)),
                 ("gamma*delta1-P", _sign_of(q1)),
                 ("gamma*delta1-2P", _sign_of(q2)))
        notes: tuple[str, ...] = ()
        supported = P0 > 0.0
        if not supported:
            notes = ("table verification limited to P>0",)
        if P0 > 0.0 and q1 < 0.0 <= q2:
            raise UnsupportedCase("inconsistent sign tuple (P>0 forces "
                                  "gamma*delta1-2P<0 when gamma*delta1-P<0)")
        return CaseDescriptor(fam, signs, supported, notes)
    # ThetaZero
    de, t1, t2, N0 = sys.delta0, sys.theta1, sys.theta2, sys.N0
    if de == 0.0 or t1 == 0.0 or t2 == 0.0 or N0 == 0.0:
        raise UnsupportedCase(
            "ThetaZero analysis requires delta, theta1, theta2, N nonzero")
    q1, q2 = t2 - N0 * g, t2 - 2.0 * N0 * g
    signs = (("delta", _sign_of(de)), ("theta2", _sign_of(t2)),
             ("theta2-N*gamma", _sign_of(q1)),
             ("theta2-2N*gamma", _sign_of(q2)))
    notes = ()
    supported = N0 > 0.0
    if not supported:
        notes = ("table verification limited to N>0",)
    return CaseDescriptor(fam, signs, supported, notes)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def signature_at(sys: ReducedSystem, mu, tol: Tolerances = TOL,
                 eqs: EquilibriumList | None = None) -> tuple[str, ...]:
    """Type-signature over the family's labels at a parameter point."""
    if eqs is None:
        eqs = find_equilibria(sys, mu, tol)
    out = []
    for label in LABELS_BY_FAMILY[sys.degeneracy]:
        eq = eqs.get(label)
        if eq is None or not eq.proper or eq.trivial:
            out.append("-")
        else:
            out.append(sar_letter(eq.kind))
    return tuple(out)


def boundary_candidates(sys: ReducedSystem, r: float,
                        tol: Tolerances = TOL) -> list[tuple[float, str]]:
    """Sorted (angle, kind) pairs of all admissible curves on |mu| = r."""
    out: list[tuple[float, str]] = []
    for kind in bif.admissible_kinds(sys):
        if kind == bif.H:
            continue
        for p in bif.circle_intersections(sys, kind, r, tol):
            out.append((p.angle, kind))
    out.sort()
    dedup: list[tuple[float, str]] = []
    for ang, kind in out:
        if dedup and abs(ang - dedup[-1][0]) < 1e-9:
            continue
        dedup.append((ang, kind))
    # wrap-around duplicate
    if len(dedup) > 1 and abs(dedup[0][0] + TWO_PI - dedup[-1][0]) < 1e-9:
        dedup.pop()
    return dedup


def _run_map(fn, items):
    n = int(os.environ.get(THREADS_ENV, "1") or "1")
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def decompose(sys: ReducedSystem, case: CaseDescriptor | None, r: float,
              tol: Tolerances = TOL, retries: int = 3) -> list[RegionReport]:
    """Cut the circle |mu| = r into sectors of constant type-signature.

    When two boundary angles nearly coincide at this radius the
    decomposition is retried at r/4 (parabola/axis angular separation grows
    relative to the resolution as r shrinks); the sector structure itself is
    radius-stable.
    """
    if case is None:
        case = select_case(sys)
    if not (1e-4 <= r < tol.epsilon_disk):
        raise ValueError(
            f"radius {r!r} outside [1e-4, epsilon_disk={tol.epsilon_disk!r})")
    try:
        return _decompose_at(sys, r, tol)
    except SectorTooThin:
        if retries <= 0 or r / 4.0 < 1e-4:
            raise
        return decompose(sys, case, r / 4.0, tol, retries - 1)


def _decompose_at(sys: ReducedSystem, r: float,
                  tol: Tolerances) -> list[RegionReport]:
    bounds = boundary_candidates(sys, r, tol)
    if len(bounds) < 2:
        raise SectorTooThin("fewer than two boundary angles on the circle")
    sep = SEP_TOL * r
    m = len(bounds)
    sectors: list[RegionReport] = []

    def probe(k: int) -> RegionReport:
        lo_ang, lo_kind = bounds[k]
        hi_ang, hi_kind = bounds[(k + 1) % m]
        width = (hi_ang - lo_ang) % TWO_PI
        if width == 0.0:
            width = TWO_PI
        if width < 10.0 * ANGLE_TOL:
            raise SectorTooThin(
                f"boundary angles {lo_ang!r} and {hi_ang!r} nearly coincide")
        mid = (lo_ang + 0.5 * width) % TWO_PI
        if 0.5 * width <= sep:
            raise SectorTooThin(
                f"sector ({lo_ang!r}, {hi_ang!r}) thinner than 2*sep_tol")
        rep = ParamPoint.from_polar(r, mid)
        eqs = find_equilibria(sys, rep, tol)
        return RegionReport(sector_id=k, angles=(lo_ang, hi_ang),
                            representative=rep,
                            signature=signature_at(sys, rep, tol, eqs),
                            bounding=(lo_kind, hi_kind), equilibria=eqs)

    sectors = _run_map(probe, range(m))

    # merge neighbouring sectors with identical signatures: the separating
    # curve moves only virtual equilibria at this radius
    changed = True
    while changed and len(sectors) > 1:
        changed = False
        for k in range(len(sectors)):
            nxt = (k + 1) % len(sectors)
            if nxt == k:
                break
            a, b = sectors[k], sectors[nxt]
            if a.signature == b.signature:
                merged = RegionReport(
                    sector_id=a.sector_id,
                    angles=(a.angles[0], b.angles[1]),
                    representative=a.representative,
                    signature=a.signature,
                    bounding=(a.bounding[0], b.bounding[1]),
                    equilibria=a.equilibria)
                sectors = [s for i, s in enumerate(sectors)
                           if i not in (k, nxt)]
                sectors.insert(min(k, nxt), merged)
                changed = True
                break
    sectors.sort(key=lambda s: s.angles[0])
    for i, s in enumerate(sectors):
        s.sector_id = i
    return sectors


def region_membership(sys: ReducedSystem, mu,
                      tol: Tolerances = TOL) -> RegionReport:
    """The sector of the decomposition at radius |mu| containing mu.

    Raises OnCurve when mu is within the angular separation tolerance of a
    sector boundary (including the origin, where every curve meets).
    """
    mu = ParamPoint.coerce(mu)
    if mu.norm == 0.0:
        raise OnCurve("all bifurcation curves pass through mu = 0")
    sectors = decompose(sys, None, mu.norm, tol)
    ang = mu.angle
    sep = SEP_TOL * mu.norm
    for s in sectors:
        lo, hi = s.angles
        width = (hi - lo) % TWO_PI or TWO_PI
        off = (ang - lo) % TWO_PI
        if off >= width:
            continue  # not in this sector's angular span
        if off <= sep or width - off <= sep:
            raise OnCurve(
                f"mu lies within sep_tol of the {s.bounding} boundary")
        here = signature_at(sys, mu, tol)
        return RegionReport(sector_id=s.sector_id, angles=s.angles,
                            representative=mu, signature=here,
                            bounding=s.bounding)
    raise OnCurve("mu does not fall strictly inside any sector")


# ---------------------------------------------------------------------------
# table verification
# ---------------------------------------------------------------------------

@dataclass
class DiagramReport:
    case_id: str
    descriptor: CaseDescriptor
    sectors: list[RegionReport]

    @property
    def signatures(self) -> list[tuple[str, ...]]:
        return [s.signature for s in self.sectors]


@dataclass
class FamilyVerification:
    family: str
    radius: float
    diagrams: list[DiagramReport]
    distinct: list[tuple[str, ...]] = field(default_factory=list)
    matched: list[tuple[str, ...]] = field(default_factory=list)
    unmatched_computed: list[tuple[str, ...]] = field(default_factory=list)
    unmatched_expected: list[tuple[str, ...]] = field(default_factory=list)
    duplicates: dict = field(default_factory=dict)

    @property
    def total_regions(self) -> int:
        return len(self.distinct)

    @property
    def success(self) -> bool:
        return (not self.unmatched_computed and not self.unmatched_expected
                and self.total_regions == EXPECTED_REGION_COUNT[self.family])

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "radius": self.radius,
            "total_regions": self.total_regions,
            "expected_regions": EXPECTED_REGION_COUNT[self.family],
            "success": self.success,
            "matched_columns": sorted(
                expected_column(self.family, s) for s in self.matched),
            "unmatched_computed": ["".join(s) for s in self.unmatched_computed],
            "unmatched_expected": ["".join(s) for s in self.unmatched_expected],
            "diagrams": [
                {
                    "case": d.case_id,
                    "signs": dict(d.descriptor.signs),
                    "sectors": [
                        {
                            "angles": list(s.angles),
                            "representative": [s.representative.mu1,
                                               s.representative.mu2],
                            "signature": "".join(s.signature),
                            "column": expected_column(self.family, s.signature),
                            "bounding": list(s.bounding),
                        }
                        for s in d.sectors
                    ],
                }
                for d in self.diagrams
            ],
            "shared_signatures": {
                "".join(k): v for k, v in sorted(self.duplicates.items())
            },
        }

    def render_text(self) -> str:
        """Human-readable table mirroring the reference layout."""
        labels = ROW_DISPLAY[self.family]
        cols = []
        for sig in EXPECTED_SIGNATURES[self.family]:
            mark = "ok" if sig in self.matched else "MISSING"
            cols.append((expected_column(self.family, sig), sig, mark))
        lines = [f"family {self.family}  r={self.radius:g}  "
                 f"regions={self.total_regions} "
                 f"(expected {EXPECTED_REGION_COUNT[self.family]})"]
        head = "      " + " ".join(f"{c[0]:>3d}" for c in cols)
        lines.append(head)
        for i, lab in enumerate(labels):
            row = " ".join(f"{c[1][i]:>3s}" for c in cols)
            lines.append(f"{lab:<5s} " + row)
        lines.append("      " + " ".join(
            f"{'ok' if c[2] == 'ok' else 'NO':>3s}" for c in cols))
        if self.unmatched_computed:
            lines.append("unexpected signatures: "
                         + ", ".join("".join(s) for s in self.unmatched_computed))
        return "\n".join(lines)


def verify_tables(family: str, r: float = 1e-3,
                  cases=None, tol: Tolerances = TOL) -> FamilyVerification:
    """Enumerate every canonical diagram of a family and compare the set of
    distinct sector signatures against the family's reference table."""
    if family not in CANONICAL_BY_FAMILY:
        raise UnsupportedCase(f"unknown family {family!r}")
    if cases is None:
        cases = CANONICAL_BY_FAMILY[family]
    diagrams: list[DiagramReport] = []
    seen: dict[tuple[str, ...], list[str]] = {}
    for case_id, sys_ in cases:
        desc = select_case(sys_)
        if not desc.table_supported:
            raise UnsupportedCase(
                f"case {case_id}: {'; '.join(desc.notes)}")
        sectors = decompose(sys_, desc, r, tol)
        diagrams.append(DiagramReport(case_id, desc, sectors))
        for s in sectors:
            seen.setdefault(s.signature, []).append(case_id)
    distinct = sorted(seen)
    expected = set(EXPECTED_SIGNATURES[family])
    matched = [s for s in distinct if s in expected]
    report = FamilyVerification(
        family=family, radius=r, diagrams=diagrams, distinct=distinct,
        matched=matched,
        unmatched_computed=[s for s in distinct if s not in expected],
        unmatched_expected=sorted(expected.difference(distinct)),
        duplicates={s: ids for s, ids in seen.items() if len(ids) > 1})
    return report


__all__ = [
    "SEP_TOL", "ANGLE_TOL", "THREADS_ENV", "CaseDescriptor", "RegionReport",
    "select_case", "signature_at", "boundary_candidates", "decompose",
    "region_membership", "DiagramReport", "FamilyVerification",
    "verify_tables",
]
