"""Futaki invariants as directional derivatives of the normalized volume.

For toric data the derivative is assembled from the analytic volume gradient,

    Fut(xi0; eta) = n A(xi0)^(n-1) A(-eta) vol(xi0) + A(xi0)^n <grad vol(xi0), -eta>,

exact when xi0 and eta are rational.  For complexity-one divisors it is a
Richardson-extrapolated central difference of s -> nvol(xi0 - s eta).  A scan
over supplied directions reports per-direction signs only: it certifies
nothing beyond the tested degenerations.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import _exact as ex
from .cxonevol import PolyhedralDivisor, nvol_c1
from .toricvol import ToricData, _values, grad_vol, log_discrepancy, vol_xi

SCAN_DISCLAIMER = (
    "nonnegative along all tested directions; no statement about untested degenerations"
)


@dataclass(frozen=True)
class FutakiReport:
    entries: tuple  # (eta, fut, normalized_eta)
    min_fut: float
    all_nonnegative: bool
    tolerance: float
    note: str = SCAN_DISCLAIMER


def futaki_invariant(data, xi0, eta, u0=None):
    """Derivative of the normalized volume at xi0 in direction -eta."""
    if isinstance(data, ToricData):
        xi = _values(xi0)
        eta = tuple(eta)
        a = log_discrepancy(data, xi)
        a_eta = sum(x * y for x, y in zip(data.u0, eta))
        vol = vol_xi(data, xi)
        g = grad_vol(data, xi)
        n = data.n
        d_vol = sum(gk * (-ek) for gk, ek in zip(g, eta))
        return n * a ** (n - 1) * (-a_eta) * vol + a**n * d_vol
    if isinstance(data, PolyhedralDivisor):
        if u0 is None:
            raise ValueError("u0 is required for complexity-one data")
        xi = tuple(float(x) for x in _values(xi0))
        eta = tuple(float(x) for x in eta)

        def f(s):
            point = tuple(x - s * e for x, e in zip(xi, eta))
            return float(nvol_c1(data, u0, point))

        h = 1e-4 * (1.0 + max(abs(x) for x in xi)) / (1.0 + max(abs(e) for e in eta))
        d1 = (f(h) - f(-h)) / (2 * h)
        d2 = (f(h / 2) - f(-h / 2)) / h
        return (4 * d2 - d1) / 3
    raise TypeError(f"unsupported data object {type(data).__name__}")


def normalized_direction(u0, xi0, eta):
    """Projection (A(xi0) eta - A(eta) xi0) / A(xi0)^2 onto the slice {A = 0}."""
    u0 = ex.fracvec(u0)
    xi = _values(xi0)
    eta = tuple(eta)
    a0 = sum(x * y for x, y in zip(u0, xi))
    ae = sum(x * y for x, y in zip(u0, eta))
    if not a0 > 0:
        raise ValueError("A(xi0) must be positive")
    return tuple((a0 * e - ae * x) * (1 / (a0 * a0)) for e, x in zip(eta, xi))


def semistable_scan(data, xi0, etas, tolerance=None, u0=None) -> FutakiReport:
    """Evaluate the Futaki invariant along each direction and report signs.

    The verdict covers only the supplied directions.  Default sign tolerance
    is 1e-9 for toric data (analytic derivative) and 1e-6 for
    finite-difference complexity-one data.
    """
    if tolerance is None:
        tolerance = 1e-9 if isinstance(data, ToricData) else 1e-6
    weight = data.u0 if isinstance(data, ToricData) else ex.fracvec(u0)
    entries = []
    for eta in etas:
        fut = futaki_invariant(data, xi0, eta, u0=u0)
        entries.append((tuple(eta), fut, normalized_direction(weight, xi0, eta)))
    min_fut = min((float(f) for _, f, _ in entries), default=float("inf"))
    return FutakiReport(
        entries=tuple(entries),
        min_fut=min_fut,
        all_nonnegative=bool(min_fut >= -tolerance),
        tolerance=float(tolerance),
    )
