"""Brute-force verification tools, independent of the primary solvers.

These deliberately avoid the closed-form seeds and quadratic formulas of the
primary path: equilibria come from sign-change scans (1-D bisection on the
axes, cell flags plus finite-difference Newton in the interior), Jacobians
from central differences, and sector structure from direct angular sampling
with recursive boundary refinement.  They may be orders of magnitude slower
than the primary paths; that is fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibria import TOL, Tolerances
from .model import Coeffs, ParamPoint, ReducedSystem, field_at


def fd_jacobian(sys: ReducedSystem, mu, xi, step: float | None = None):
    """Central-difference Jacobian of the reduced field."""
    mu = ParamPoint.coerce(mu)
    x1, x2 = float(xi[0]), float(xi[1])
    h = step if step is not None else 1e-6 * (1.0 + math.hypot(x1, x2))
    c = sys.at(mu)
    f = lambda a, b: field_at(c, (a, b))
    fxp = f(x1 + h, x2)
    fxm = f(x1 - h, x2)
    fyp = f(x1, x2 + h)
    fym = f(x1, x2 - h)
    return (((fxp[0] - fxm[0]) / (2 * h), (fyp[0] - fym[0]) / (2 * h)),
            ((fxp[1] - fxm[1]) / (2 * h), (fyp[1] - fym[1]) / (2 * h)))


# ---------------------------------------------------------------------------
# grid equilibrium scan
# ---------------------------------------------------------------------------

def _bracket_vals(c: Coeffs, X, Y):
    g1 = (c.mu1 + c.theta * X + c.gamma * Y + c.M * X * Y
          + c.N * X * X + c.L * Y * Y)
    g2 = (c.mu2 + X / c.gamma + c.delta * Y + c.S * X * Y
          + c.P * Y * Y + c.R * X * X)
    return g1, g2


def _bisect_1d(fn, a: float, b: float, tol: float = 1e-12) -> float:
    fa, fb = fn(a), fn(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = fn(m)
        if fm == 0.0 or (b - a) < tol:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _axis_roots_scan(fn, lo: float, hi: float, n: int) -> list[float]:
    xs = np.linspace(lo, hi, n + 1)
    vals = [fn(x) for x in xs]
    roots = []
    for k in range(n):
        va, vb = vals[k], vals[k + 1]
        if va == 0.0:
            roots.append(xs[k])
        elif va * vb < 0.0:
            roots.append(_bisect_1d(fn, xs[k], xs[k + 1]))
    if vals[-1] == 0.0:
        roots.append(xs[-1])
    return roots


def _fd_newton(c: Coeffs, x1: float, x2: float, tol: float = 1e-12,
               max_iter: int = 40) -> tuple[float, float] | None:
    scale = 1.0 + math.hypot(x1, x2)
    for _ in range(max_iter):
        g1, g2 = _bracket_vals(c, x1, x2)
        if math.hypot(g1, g2) <= tol * scale:
            return (x1, x2)
        h = 1e-7 * (1.0 + math.hypot(x1, x2))
        a = (_bracket_vals(c, x1 + h, x2)[0] - _bracket_vals(c, x1 - h, x2)[0]) / (2 * h)
        b = (_bracket_vals(c, x1, x2 + h)[0] - _bracket_vals(c, x1, x2 - h)[0]) / (2 * h)
        d = (_bracket_vals(c, x1 + h, x2)[1] - _bracket_vals(c, x1 - h, x2)[1]) / (2 * h)
        e = (_bracket_vals(c, x1, x2 + h)[1] - _bracket_vals(c, x1, x2 - h)[1]) / (2 * h)
        det = a * e - b * d
        if det == 0.0:
            return None
        x1 -= (e * g1 - b * g2) / det
        x2 -= (-d * g1 + a * g2) / det
    g1, g2 = _bracket_vals(c, x1, x2)
    if math.hypot(g1, g2) <= 1e-9 * scale:
        return (x1, x2)
    return None


def grid_equilibria(sys: ReducedSystem, mu, window, n: int = 400,
                    jitter_seed: int | None = None) -> list[tuple[float, float]]:
    """Equilibria of the reduced field inside a rectangular window.

    window is ((x_lo, x_hi), (y_lo, y_hi)); n is the lattice resolution per
    axis (n <= 2000).  The origin and the axis roots are found by 1-D
    bisection scans, interior roots by flagging lattice cells where both
    bracket functions change sign and refining with finite-difference
    Newton.  A second, half-cell-shifted pass catches roots that straddle
    cell boundaries; passing jitter_seed adds a small random shift as well.
    """
    if n > 2000:
        raise ValueError("n must be at most 2000 per axis")
    mu = ParamPoint.coerce(mu)
    c = sys.at(mu)
    (x_lo, x_hi), (y_lo, y_hi) = window
    roots: list[tuple[float, float]] = []
    # the origin is an equilibrium by the factored structure of the field
    if x_lo <= 0.0 <= x_hi and y_lo <= 0.0 <= y_hi:
        roots.append((0.0, 0.0))

    # axis roots: zeros of the restricted bracket functions
    for r in _axis_roots_scan(lambda x: _bracket_vals(c, x, 0.0)[0],
                              x_lo, x_hi, n):
        roots.append((r, 0.0))
    for r in _axis_roots_scan(lambda y: _bracket_vals(c, 0.0, y)[1],
                              y_lo, y_hi, n):
        roots.append((0.0, r))

    # interior roots of the bracket system
    shifts = [(0.0, 0.0), (0.5, 0.5)]
    if jitter_seed is not None:
        rng = np.random.default_rng(jitter_seed)
        shifts.append(tuple(rng.uniform(0.05, 0.45, size=2)))
    dx = (x_hi - x_lo) / n
    dy = (y_hi - y_lo) / n
    for sx, sy in shifts:
        xs = np.linspace(x_lo + sx * dx, x_hi + sx * dx, n + 1)
        ys = np.linspace(y_lo + sy * dy, y_hi + sy * dy, n + 1)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        G1, G2 = _bracket_vals(c, X, Y)
        s1 = np.sign(G1)
        s2 = np.sign(G2)
        flag1 = ((s1[:-1, :-1] * s1[1:, :-1] <= 0)
                 | (s1[:-1, :-1] * s1[:-1, 1:] <= 0)
                 | (s1[:-1, :-1] * s1[1:, 1:] <= 0))
        flag2 = ((s2[:-1, :-1] * s2[1:, :-1] <= 0)
                 | (s2[:-1, :-1] * s2[:-1, 1:] <= 0)
                 | (s2[:-1, :-1] * s2[1:, 1:] <= 0))
        ii, jj = np.nonzero(flag1 & flag2)
        for i, j in zip(ii.tolist(), jj.tolist()):
            got = _fd_newton(c, 0.5 * (xs[i] + xs[i + 1]),
                             0.5 * (ys[j] + ys[j + 1]))
            if got is None:
                continue
            gx, gy = got
            if not (x_lo - dx <= gx <= x_hi + dx and y_lo - dy <= gy <= y_hi + dy):
                continue
            roots.append(got)

    # dedupe
    scale = max(x_hi - x_lo, y_hi - y_lo, 1e-30)
    out: list[tuple[float, float]] = []
    for r in roots:
        if all(math.hypot(r[0] - q[0], r[1] - q[1]) > 1e-9 * scale + 1e-15
               for q in out):
            out.append(r)
    return sorted(out)


# ---------------------------------------------------------------------------
# angular signature scan
# ---------------------------------------------------------------------------

@dataclass
class SignScanBlock:
    start: float
    end: float
    signature: tuple[str, ...]


@dataclass
class SignScan:
    radius: float
    blocks: list[SignScanBlock]

    @property
    def signatures(self) -> list[tuple[str, ...]]:
        return [b.signature for b in self.blocks]


def sign_scan(sys: ReducedSystem, r: float, n_angles: int = 1440,
              tol: Tolerances = TOL, refine_res: float = 1e-10,
              narrow_floor: float = 2e-6) -> SignScan:
    """Run-length-encoded signature structure of the circle |mu| = r.

    Samples n_angles directions (offset by half a step so the axes are never
    hit exactly) and recursively bisects every pair of neighbouring samples
    with different signatures, so blocks far narrower than the base step are
    still resolved.  Blocks narrower than narrow_floor (radians) are the
    classification tolerance bands hugging each boundary (collision and
    properness flags have radius-independent angular width well below 1e-6)
    and are dropped; genuine sectors are never that thin for admissible
    radii.  Wrap-around blocks are merged.
    """
    from .regions import signature_at
    if n_angles < 720:
        raise ValueError("n_angles must be at least 720")
    if r <= 0.0:
        raise ValueError("sign_scan requires r > 0")
    step = 2.0 * math.pi / n_angles
    angles = [(k + 0.5) * step for k in range(n_angles)]
    sig = lambda phi: signature_at(sys, ParamPoint.from_polar(r, phi), tol)
    sigs = [sig(phi) for phi in angles]

    events: list[tuple[float, tuple[str, ...]]] = []

    def refine(a: float, sa, b: float, sb):
        # invariant: sa != sb; record every signature block inside (a, b)
        if b - a < refine_res:
            events.append((b, sb))
            return
        m = 0.5 * (a + b)
        sm = sig(m)
        if sm != sa:
            refine(a, sa, m, sm)
        if sm != sb:
            refine(m, sm, b, sb)

    for k in range(n_angles):
        a, sa = angles[k], sigs[k]
        b = angles[(k + 1) % n_angles] + (0.0 if k + 1 < n_angles else 2.0 * math.pi)
        sb = sigs[(k + 1) % n_angles]
        if sa != sb:
            refine(a, sa, b, sb)

    if not events:
        return SignScan(r, [SignScanBlock(0.0, 2.0 * math.pi, sigs[0])])

    events.sort()
    two_pi = 2.0 * math.pi
    blocks: list[SignScanBlock] = []
    for i, (ang, s) in enumerate(events):
        start = ang % two_pi
        end = events[(i + 1) % len(events)][0] % two_pi
        blocks.append(SignScanBlock(start, end, s))

    def cyclic_merge(items: list[SignScanBlock]) -> list[SignScanBlock]:
        out: list[SignScanBlock] = []
        for b in items:
            if out and out[-1].signature == b.signature:
                out[-1] = SignScanBlock(out[-1].start, b.end, b.signature)
            else:
                out.append(b)
        if len(out) > 1 and out[0].signature == out[-1].signature:
            first = out.pop(0)
            out[-1] = SignScanBlock(out[-1].start, first.end, first.signature)
        return out

    def width(b: SignScanBlock) -> float:
        return (b.end - b.start) % two_pi or two_pi

    merged = cyclic_merge(blocks)
    wide = [b for b in merged if width(b) >= narrow_floor]
    if wide:
        merged = cyclic_merge(wide)
    merged.sort(key=lambda b: b.start)
    return SignScan(r, merged)


def blocks_from(scan: SignScan, phi: float) -> list[SignScanBlock]:
    """Blocks in cyclic order starting from the one containing angle phi."""
    two_pi = 2.0 * math.pi
    phi %= two_pi
    n = len(scan.blocks)
    for i, b in enumerate(scan.blocks):
        width = (b.end - b.start) % two_pi or two_pi
        if (phi - b.start) % two_pi < width:
            return [scan.blocks[(i + k) % n] for k in range(n)]
    return list(scan.blocks)


__all__ = ["fd_jacobian", "grid_equilibria", "SignScan", "SignScanBlock",
           "sign_scan", "blocks_from"]
