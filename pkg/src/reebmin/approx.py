"""Signed simultaneous rational approximation and cone approximation.

Irrational targets enter as rational interval enclosures; every certificate
is checked with outward rounding against the enclosure, never against a
float.  Searches scan denominators in increasing order and fail explicitly
when the configured bound is exhausted.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import _exact as ex
from .errors import SearchExhausted

DEFAULT_QMAX = 10**6


@dataclass(frozen=True)
class Enclosure:
    """A rational interval [lo, hi] certified to contain the target number."""

    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        lo = ex.frac(lo)
        hi = ex.frac(hi)
        if lo > hi:
            raise ValueError("empty enclosure")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_decimal(cls, text, radius=None):
        """Decimal string with a radius defaulting to half an ulp of the last digit."""
        center = Fraction(text)
        if radius is None:
            digits = len(text.split(".")[1]) if "." in text else 0
            radius = Fraction(1, 2 * 10**digits)
        else:
            radius = ex.frac(radius)
        return cls(center - radius, center + radius)

    @classmethod
    def exact(cls, value):
        value = ex.frac(value)
        return cls(value, value)

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo

    def is_exact(self):
        return self.lo == self.hi


def _coerce(value):
    if isinstance(value, Enclosure):
        return value
    if isinstance(value, float):
        return Enclosure.exact(Fraction(value))
    if isinstance(value, str):
        if "/" in value:
            return Enclosure.exact(Fraction(value))
        return Enclosure.from_decimal(value)
    return Enclosure.exact(value)


@dataclass(frozen=True)
class SignedApprox:
    """p/q approximating target with prescribed sign pattern and gap <= eps/q."""

    p: tuple
    q: int
    target: tuple  # of Enclosure
    signs: tuple
    epsilon: Fraction


def verify_signed(sa: SignedApprox) -> bool:
    """Outward-rounded re-check of 0 < sign * (p/q - alpha) <= eps/q."""
    for p, enc, sign in zip(sa.p, sa.target, sa.signs):
        if sign == 1:
            if not (Fraction(p, sa.q) > enc.hi and Fraction(p, sa.q) <= enc.lo + sa.epsilon / sa.q):
                return False
        else:
            if not (Fraction(p, sa.q) < enc.lo and Fraction(p, sa.q) >= enc.hi - sa.epsilon / sa.q):
                return False
    return True


def _dependence_hint(enclosures, height=8):
    """Small integer-relation scan; a hit explains a hopeless search."""
    r = len(enclosures)
    if r > 4:  # the scan is exponential in r; skip the diagnostic
        return None
    mids = [e.mid for e in enclosures]
    for ks in itertools.product(range(-height, height + 1), repeat=r):
        if all(k == 0 for k in ks):
            continue
        total = sum(k * m for k, m in zip(ks, mids))
        k0 = -round(total)
        slack = sum(abs(k) * e.width for k, e in zip(ks, enclosures)) + Fraction(1, 10**6)
        if abs(total + k0) <= slack:
            return tuple([k0] + list(ks))
    return None


def dirichlet_signed(alpha, signs, epsilon, q_max=DEFAULT_QMAX) -> SignedApprox:
    """Smallest q <= q_max whose multiples land in the per-sign target boxes.

    For sign +1 the numerator is forced to ceil just above q*alpha, for -1
    just below; acceptance uses the enclosure endpoints so the returned
    certificate is valid for every number inside the enclosure.
    """
    encls = tuple(_coerce(a) for a in alpha)
    signs = tuple(int(s) for s in signs)
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    if len(signs) != len(encls):
        raise ValueError("signs and targets differ in length")
    epsilon = ex.frac(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    for q in range(1, q_max + 1):
        ps = []
        for enc, sign in zip(encls, signs):
            if sign == 1:
                p = math.floor(q * enc.hi) + 1
                if not p < q * enc.lo + epsilon:
                    break
            else:
                p = math.ceil(q * enc.lo) - 1
                if not p > q * enc.hi - epsilon:
                    break
            ps.append(p)
        else:
            return SignedApprox(
                p=tuple(ps), q=q, target=encls, signs=signs, epsilon=epsilon
            )
    hint = _dependence_hint(encls)
    extra = f"; possible rational dependence {hint}" if hint else ""
    raise SearchExhausted(f"no denominator q <= {q_max} works for epsilon={epsilon}{extra}")


@dataclass(frozen=True)
class ConeApprox:
    """Rational vectors whose positive hull provably contains the target."""

    vectors: tuple  # of (RatVec, q)
    target: tuple  # of Enclosure
    epsilon: Fraction
    hull_coefficients: tuple


def verify_cone(ca: ConeApprox) -> bool:
    """Re-check integrality, per-vector distance, and hull containment."""
    r = len(ca.target)
    for vec, q in ca.vectors:
        if any((x * q).denominator != 1 for x in vec):
            return False
        for x, enc in zip(vec, ca.target):
            if not max(abs(x - enc.lo), abs(x - enc.hi)) < ca.epsilon / q:
                return False
    if len(ca.hull_coefficients) != len(ca.vectors):
        return False
    if any(a <= 0 for a in ca.hull_coefficients):
        return False
    for j in range(r):
        combo = sum(a * vec[j] for a, (vec, _) in zip(ca.hull_coefficients, ca.vectors))
        if not ca.target[j].lo <= combo <= ca.target[j].hi:
            return False
    return True


def _affine_relations(encls, height=12):
    """Split coordinates into a Q-independent block and affine relations.

    Returns (block_indices, relations) where relations[i] = (c0, {j: c_j})
    expresses coordinate i as c0 + sum_j c_j * alpha_j over block indices.
    Detection is a bounded-height integer-relation scan against the
    enclosures; any hit is only a hypothesis, made sound by the final
    certificate verification.
    """
    block = []
    relations = {}
    for i, enc in enumerate(encls):
        if enc.is_exact():
            relations[i] = (enc.lo, {})
            continue
        found = None
        if len(block) >= 4:  # relation scan too large; treat as independent
            block.append(i)
            continue
        mids = [encls[j].mid for j in block]
        for ks in itertools.product(range(-height, height + 1), repeat=len(block) + 1):
            kn = ks[-1]
            if kn == 0:
                continue
            total = sum(k * m for k, m in zip(ks[:-1], mids)) + kn * enc.mid
            k0 = -round(total)
            slack = sum(
                abs(k) * encls[j].width for k, j in zip(ks[:-1], block)
            ) + abs(kn) * enc.width + Fraction(1, 10**9)
            if abs(total + k0) <= slack:
                c0 = Fraction(-k0, kn)
                cs = {j: Fraction(-k, kn) for k, j in zip(ks[:-1], block) if k != 0}
                found = (c0, cs)
                break
        if found is not None:
            relations[i] = found
        else:
            block.append(i)
    return block, relations


def cone_rational_approx(v, epsilon, q_max=DEFAULT_QMAX) -> ConeApprox:
    """Rational vectors near v that positively span v, built per sign pattern.

    A maximal Q-independent coordinate block is approximated by the signed
    search over all its sign patterns; rationally dependent coordinates are
    reconstructed through their affine relations, which shrinks the working
    epsilon and scales the denominators accordingly.  A subset with exact
    positive hull coefficients for the enclosure midpoint is then selected.
    Exactly-known rational targets short-circuit to {v} itself.
    """
    encls = tuple(_coerce(x) for x in v)
    epsilon = ex.frac(epsilon)
    r = len(encls)
    if all(e.is_exact() for e in encls):
        vec = tuple(e.lo for e in encls)
        q = 1
        for x in vec:
            q = q * x.denominator // math.gcd(q, x.denominator)
        return ConeApprox(
            vectors=((vec, q),),
            target=encls,
            epsilon=epsilon,
            hull_coefficients=(Fraction(1),),
        )
    block, relations = _affine_relations(encls)
    if not block:
        raise SearchExhausted("every coordinate looks rational but enclosures are inexact")
    denom = 1
    stretch = Fraction(1)
    for c0, cs in relations.values():
        d = c0.denominator
        for c in cs.values():
            d = d * c.denominator // math.gcd(d, c.denominator)
        denom = denom * d // math.gcd(denom, d)
        stretch = max(stretch, sum(abs(c) for c in cs.values()) + 0)
    eps_block = epsilon / (denom * (stretch + 1))

    sub_target = [encls[j] for j in block]
    candidates = []
    for pattern in itertools.product((1, -1), repeat=len(block)):
        sa = dirichlet_signed(sub_target, pattern, eps_block, q_max)
        blockvals = {j: Fraction(p, sa.q) for j, p in zip(block, sa.p)}
        full = []
        for i in range(r):
            if i in blockvals:
                full.append(blockvals[i])
            else:
                c0, cs = relations[i]
                full.append(c0 + sum(c * blockvals[j] for j, c in cs.items()))
        candidates.append((tuple(full), sa.q * denom))

    mid = [e.mid for e in encls]
    full_rank = len(block) == r
    size = r if full_rank else len(block) + 1
    for subset in itertools.combinations(range(len(candidates)), size):
        cols = [candidates[i][0] for i in subset]
        if full_rank:
            matrix = [[cols[j][i] for j in range(size)] for i in range(r)]
            rhs = mid
        else:  # affine combination pins the dependent coordinates too
            matrix = [[cols[j][i] for j in range(size)] for i in block]
            matrix.append([Fraction(1)] * size)
            rhs = [mid[i] for i in block] + [Fraction(1)]
        if ex.rank(matrix) < size:
            continue
        coeffs = ex.solve(matrix, rhs)
        if coeffs is None or any(a <= 0 for a in coeffs):
            continue
        out = ConeApprox(
            vectors=tuple(candidates[i] for i in subset),
            target=encls,
            epsilon=epsilon,
            hull_coefficients=tuple(coeffs),
        )
        if verify_cone(out):
            return out
    raise SearchExhausted(
        "signed approximations found, but no subset positively spans the target"
    )
