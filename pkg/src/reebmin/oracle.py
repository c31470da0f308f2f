"""Brute-force Hilbert-function counting for volume validation.

These counters enumerate lattice points of truncated weight cones (and, for
complexity-one divisors, weight them by section counts over the base curve)
to produce independent volume estimates n! * count / m^n.  They validate the
closed-form volumes computed elsewhere and share no code path with them.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import _exact as ex
from .errors import NotInReebCone, TooLarge

DEFAULT_BUDGET = 10**8
_REL_MARGIN = 1e-7


def _xi_enclosure(xi):
    """Per-coordinate rational (lo, hi) enclosure plus a float midpoint."""
    from .toricvol import ReebVector  # local import to avoid a cycle

    if isinstance(xi, ReebVector):
        xi = xi.xi
    lo, hi, mid = [], [], []
    for v in xi:
        if hasattr(v, "lo") and hasattr(v, "hi"):
            a, b = ex.frac(v.lo), ex.frac(v.hi)
        elif isinstance(v, float):
            a = b = Fraction(v)
        else:
            a = b = ex.frac(v)
        lo.append(a)
        hi.append(b)
        mid.append(float((a + b) / 2))
    return lo, hi, mid


def _pair_bounds(u, lo, hi):
    """Exact interval of <u, xi> given the coordinate enclosure."""
    low = sum(c * (lo[i] if c > 0 else hi[i]) for i, c in enumerate(u))
    high = sum(c * (hi[i] if c > 0 else lo[i]) for i, c in enumerate(u))
    return low, high


def _box_from_cone(dual_rays, lo, hi, mid, m):
    """Integer bounding box of {u in cone : <u, xi> <= m} from its vertices."""
    d = len(mid)
    los = [0.0] * d
    his = [0.0] * d
    for u in dual_rays:
        plo, _ = _pair_bounds(u, lo, hi)
        if plo <= 0:
            raise NotInReebCone(f"<{u}, xi> <= 0: truncated cone is unbounded")
        scale = float(m) / float(plo)
        for i in range(d):
            c = u[i] * scale
            los[i] = min(los[i], c)
            his[i] = max(his[i], c)
    pad = 1e-9 * (1.0 + abs(float(m)))
    return (
        [int(np.floor(x - pad)) for x in los],
        [int(np.ceil(x + pad)) for x in his],
    )


def _slab_points(x, sigma_rays, xf, mf, delta, box_lo, box_hi):
    """Integer points of one x-slab of {sigma pairings >= 0, <u, xi> < m + delta}.

    The integer cone constraints are applied exactly through ceil/floor
    divisions, so only the float truncation constraint needs the later
    border recheck.  Returns an (N, 3) int64 array (possibly empty).
    """
    ylo, yhi = box_lo[1], box_hi[1]
    for r0, r1, r2 in sigma_rays:
        if r2 == 0:  # r0 x + r1 y >= 0 bounds y directly
            if r1 > 0:
                ylo = max(ylo, -((r0 * x) // r1))
            elif r1 < 0:
                yhi = min(yhi, (r0 * x) // (-r1))
            elif r0 * x < 0:
                return np.empty((0, 3), dtype=np.int64)
    if ylo > yhi:
        return np.empty((0, 3), dtype=np.int64)
    y = np.arange(ylo, yhi + 1, dtype=np.int64)
    zlo = np.full(y.shape, box_lo[2], dtype=np.int64)
    zhi = np.full(y.shape, box_hi[2], dtype=np.int64)
    for r0, r1, r2 in sigma_rays:
        if r2 == 0:
            continue
        num = -(r0 * x) - r1 * y  # r2 * z >= num
        if r2 > 0:
            np.maximum(zlo, -((-num) // r2), out=zlo)
        else:
            np.minimum(zhi, num // r2, out=zhi)
    rest = mf + delta - xf[0] * x - xf[1] * y
    if abs(xf[2]) > 1e-300:
        bound = rest / xf[2]
        if xf[2] > 0:
            np.minimum(zhi, np.floor(bound).astype(np.int64), out=zhi)
        else:
            np.maximum(zlo, np.ceil(bound).astype(np.int64), out=zlo)
    else:
        keep = rest > 0
        y, zlo, zhi = y[keep], zlo[keep], zhi[keep]
    lens = np.maximum(zhi - zlo + 1, 0)
    total = int(lens.sum())
    if total == 0:
        return np.empty((0, 3), dtype=np.int64)
    idx = np.repeat(np.arange(len(y)), lens)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(
        np.concatenate(([0], np.cumsum(lens)[:-1])), lens
    )
    pts = np.empty((total, 3), dtype=np.int64)
    pts[:, 0] = x
    pts[:, 1] = y[idx]
    pts[:, 2] = zlo[idx] + offsets
    return pts


def _enumerate(sigma_rays, dual_rays, xi, m, weight_fn, budget):
    """Sum weight_fn over {u in Z^d : sigma pairings >= 0, <u, xi> < m}."""
    lo, hi, mid = _xi_enclosure(xi)
    d = len(mid)
    box_lo, box_hi = _box_from_cone(dual_rays, lo, hi, mid, m)
    sig = np.asarray(sigma_rays, dtype=np.int64)
    xf = np.asarray(mid, dtype=float)
    mf = float(m)
    delta = _REL_MARGIN * (1.0 + abs(mf))

    total = 0
    cells = 0

    def handle(points, cone_checked=False):
        nonlocal total, cells
        cells += len(points)
        if cells > budget:
            raise TooLarge(f"enumeration exceeded the {budget} cell budget")
        if len(points) == 0:
            return
        if not cone_checked:
            mask = np.all(points @ sig.T >= 0, axis=1)
            points = points[mask]
            if len(points) == 0:
                return
        tf = points @ xf
        keep = tf < mf - delta
        for p in points[np.abs(tf - mf) <= delta]:
            up = sum(int(c) * (hi[i] if c > 0 else lo[i]) for i, c in enumerate(p))
            if up < m:
                total += int(weight_fn(p.reshape(1, -1))[0])
        pts = points[keep]
        if len(pts):
            total += int(weight_fn(pts).sum())

    if d == 1:
        xs = np.arange(box_lo[0], box_hi[0] + 1, dtype=np.int64)
        handle(xs.reshape(-1, 1))
    elif d == 2:
        ys, zs = np.meshgrid(
            np.arange(box_lo[0], box_hi[0] + 1, dtype=np.int64),
            np.arange(box_lo[1], box_hi[1] + 1, dtype=np.int64),
            indexing="ij",
        )
        handle(np.column_stack([ys.ravel(), zs.ravel()]))
    elif d == 3:
        rays3 = [tuple(int(c) for c in r) for r in sigma_rays]
        for x in range(box_lo[0], box_hi[0] + 1):
            pts = _slab_points(x, rays3, xf, mf, delta, box_lo, box_hi)
            handle(pts, cone_checked=True)
    else:
        import itertools

        outer_ranges = [range(box_lo[i], box_hi[i] + 1) for i in range(d - 2)]
        for outer in itertools.product(*outer_ranges):
            ys, zs = np.meshgrid(
                np.arange(box_lo[d - 2], box_hi[d - 2] + 1, dtype=np.int64),
                np.arange(box_lo[d - 1], box_hi[d - 1] + 1, dtype=np.int64),
                indexing="ij",
            )
            head = np.tile(np.asarray(outer, dtype=np.int64), (ys.size, 1))
            handle(np.column_stack([head, ys.ravel(), zs.ravel()]))
    return total


def count_toric(t, xi, m, budget=DEFAULT_BUDGET):
    """#{u in weight cone lattice : <u, xi> < m} by bounded enumeration."""

    def ones(pts):
        return np.ones(len(pts), dtype=np.int64)

    return _enumerate(t.sigma.rays, t.sigma_dual.rays, xi, m, ones, budget)


def count_cxone(d, xi, m, budget=DEFAULT_BUDGET):
    """Sum of section counts h0(u) over weights with <u, xi> < m.

    h0(u) = max(deg floor(D(u)) + 1, 0) over a rational base curve, where the
    divisor is rounded down pointwise before taking degrees.
    """
    coeffs = []
    for _label, poly in d.points:
        den = 1
        for v in poly.compact_vertices:
            for c in v:
                den = den * c.denominator // np.gcd(den, c.denominator)
        nums = np.asarray(
            [[int(c * den) for c in v] for v in poly.compact_vertices], dtype=np.int64
        )
        coeffs.append((nums, int(den)))

    def weights(pts):
        deg = np.zeros(len(pts), dtype=np.int64)
        for nums, den in coeffs:
            pairings = pts @ nums.T
            deg += np.min(pairings // den, axis=1)
        return np.maximum(deg + 1, 0)

    return _enumerate(d.sigma.rays, d.sigma_dual.rays, xi, m, weights, budget)


@dataclass(frozen=True)
class CountSeries:
    """Truncation counts at increasing m with the derived volume estimates."""

    truncations: tuple
    n: int
    estimates: tuple

    @classmethod
    def from_counts(cls, n, pairs):
        pairs = tuple((float(m), int(c)) for m, c in pairs)
        est = tuple(factorial(n) * c / m**n for m, c in pairs)
        return cls(truncations=pairs, n=n, estimates=est)


def count_series_toric(t, xi, ms, budget=DEFAULT_BUDGET):
    return CountSeries.from_counts(
        t.n, [(m, count_toric(t, xi, m, budget)) for m in ms]
    )


def count_series_cxone(d, xi, ms, budget=DEFAULT_BUDGET):
    return CountSeries.from_counts(
        d.n, [(m, count_cxone(d, xi, m, budget)) for m in ms]
    )


def vol_estimate(series: CountSeries):
    """Extrapolated limit of n! count / m^n with a convergence diagnostic.

    Fits estimate(m) = c0 + c1/m + c2/m^2 through the largest truncations and
    reports c0.  Needs at least three truncations.
    """
    if len(series.truncations) < 3:
        raise ValueError("need at least three truncations to extrapolate")
    ms = [m for m, _ in series.truncations]
    order = sorted(range(len(ms)), key=lambda i: ms[i])
    ms = [ms[i] for i in order]
    es = [series.estimates[i] for i in order]
    x = np.asarray([1.0 / m for m in ms[-3:]])
    y = np.asarray(es[-3:])
    v = np.vander(x, 3, increasing=True)  # columns 1, 1/m, 1/m^2
    coeff = np.linalg.solve(v, y)
    counts = [c for _, c in series.truncations]
    diagnostic = {
        "raw_estimates": list(series.estimates),
        "monotone_counts": all(a <= b for a, b in zip(counts, counts[1:])),
        "correction": float(abs(coeff[0] - es[-1])),
    }
    return float(coeff[0]), diagnostic
