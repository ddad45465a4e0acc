"""Exact piecewise integer-translation system on C^k and its range oracles.

Everything geometric here runs on rational real parts (fractions.Fraction):
region membership, the level-n translations P^n, their stabilized
composition S, the inverse T on Omega = S(Delta~), the distance-certified
range oracle, the ceil-root witness oracle for the punctured-polydisc range,
the tube translation classifier, and the adversarial error-budget
certificate that models the approximating automorphisms as P^n plus a
perturbation bounded by eps/2^{n+1}.

Imaginary parts are carried as inert payload: no membership test reads
them, but oracles can still emit full complex witnesses.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np


class BoundaryError(ValueError):
    """Point sits on a region wall where membership is undefined."""


class NotInDeltaError(ValueError):
    """Point is outside the open box family where S is defined."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12) if not x.is_integer() else Fraction(int(x))
    raise TypeError(f"cannot coerce {type(x)} to an exact rational")


@dataclass(frozen=True)
class RegionPoint:
    re: tuple
    im: tuple

    def __post_init__(self):
        re = tuple(_frac(x) for x in self.re)
        im = tuple(_frac(x) for x in self.im)
        if len(re) != len(im) or len(re) < 2:
            raise ValueError("need matching re/im tuples with k >= 2")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def k(self) -> int:
        return len(self.re)

    def translate_re(self, v) -> "RegionPoint":
        return RegionPoint(tuple(x - d for x, d in zip(self.re, v)), self.im)

    def as_complex(self) -> np.ndarray:
        return np.array([complex(float(x), float(y)) for x, y in zip(self.re, self.im)])


def region_point(re, im=None) -> RegionPoint:
    re = tuple(re)
    if im is None:
        im = (0,) * len(re)
    return RegionPoint(re, tuple(im))


# ---------------------------------------------------------------------------
# level-n index regions and the translations P^n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class YIndex:
    n: int
    bits: tuple          # None when the point is on a wall

    @property
    def boundary(self) -> bool:
        return self.bits is None


def y_index(z: RegionPoint, n: int) -> YIndex:
    """The unique level-n bit vector whose region contains z.

    Coordinates 1..k-1 compare against n; the last coordinate compares
    against n-1 when bit k-1 is 0 and against n otherwise.  All inequalities
    are strict: wall points get the boundary marker.
    """
    if n < 1:
        raise ValueError("level n must be >= 1")
    k = z.k
    bits = []
    for j in range(k - 1):
        c = z.re[j]
        if c == n:
            return YIndex(n, None)
        bits.append(1 if c > n else 0)
    thr = n if bits[k - 2] == 1 else n - 1
    c = z.re[k - 1]
    if c == thr:
        return YIndex(n, None)
    bits.append(1 if c > thr else 0)
    return YIndex(n, tuple(bits))


def _rotated(bits) -> tuple:
    return (bits[-1],) + tuple(bits[:-1])


def apply_Pn(z: RegionPoint, n: int) -> RegionPoint:
    """Translate by the rotated bit vector: z - (i_k, i_1, ..., i_{k-1})."""
    yi = y_index(z, n)
    if yi.boundary:
        raise BoundaryError(f"point on a level-{n} wall")
    return z.translate_re(_rotated(yi.bits))


def pn_inverse(z: RegionPoint, n: int):
    """The unique preimage of z under P^n, or None when z is not in its image."""
    k = z.k
    hits = []
    for v in product((0, 1), repeat=k):
        w = z.translate_re(tuple(-d for d in _rotated(v)))
        yi = y_index(w, n)
        if not yi.boundary and yi.bits == v:
            hits.append(w)
    if not hits:
        return None
    if len(hits) > 1:
        raise RuntimeError("level translation lost injectivity (bug)")
    return hits[0]


@dataclass(frozen=True)
class DeltaIndex:
    l: tuple
    l_z: int


def delta_index(z: RegionPoint):
    """Index (l_1, ..., l_k) of the open unit box containing z.

    Coordinates 1..k-1: l >= 2 means l-1 < Re < l, l = 1 is the tail Re < 1.
    Coordinate k: l >= 1 means l-1 < Re < l, l = 0 is the tail Re < 0.
    Returns None when any relevant wall is hit exactly.
    """
    k = z.k
    ls = []
    for j in range(k):
        c = z.re[j]
        low_wall = 1 if j < k - 1 else 0
        if c < low_wall:
            ls.append(low_wall)
            continue
        if c.denominator == 1:
            return None
        ls.append(math.floor(c) + 1)
    return DeltaIndex(l=tuple(ls), l_z=max(ls))


def apply_S(z: RegionPoint) -> RegionPoint:
    """S = P^1 o P^2 o ... o P^{l_z}, exact on the open box family."""
    di = delta_index(z)
    if di is None:
        raise NotInDeltaError("point not in the open box family")
    w = z
    for n in range(di.l_z, 0, -1):
        w = apply_Pn(w, n)
    return w


def apply_T(z: RegionPoint, cap: int = 4096):
    """Inverse of S on Omega = S(Delta~), by unwinding level inverses until
    all shifted real parts drop below the level.  Returns None (a not-in-Omega
    verdict) when the unwind has no preimage, never stabilizes below the cap,
    or the replay S(w) fails to reproduce z."""
    w = z
    for n in range(1, cap + 1):
        w = pn_inverse(w, n)
        if w is None:
            return None
        if max(w.re[: w.k - 1]) < n + 1 and w.re[w.k - 1] < n:
            break
    else:
        return None
    if delta_index(w) is None:
        return None
    if apply_S(w) != z:
        return None
    return w


# ---------------------------------------------------------------------------
# range oracle against the excluded set A
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RangeVerdict:
    kind: str                 # 'not_in_range' | 'in_range' | 'unknown'
    witness: RegionPoint = None
    margin: Fraction = None


def _box_walls(di: DeltaIndex):
    """(lo, hi) walls of the open box with the given index; lo None = -inf."""
    walls = []
    for j, l in enumerate(di.l):
        low_wall = 1 if j < len(di.l) - 1 else 0
        if l == low_wall:
            walls.append((None, Fraction(low_wall)))
        else:
            walls.append((Fraction(l - 1), Fraction(l)))
    return walls


def translation_range_oracle(z: RegionPoint, eps) -> RangeVerdict:
    """Range certificate for the limit of the translation approximants.

    * all real parts > eps: certified not in the range;
    * z in Omega with the eps-ball (max-norm, real parts) certified away
      from the excluded set A: in the range, with witness T(z);
    * anything else: unknown.

    The away-from-A certificate is exact: the closed eps-ball must sit inside
    the single image box containing z, except for protrusions whose every
    point keeps all real parts positive (such points cannot belong to A).
    """
    eps = _frac(eps)
    if not Fraction(0) < eps < Fraction(1, 2):
        raise ValueError("eps must lie in (0, 1/2)")
    k = z.k
    if all(x > eps for x in z.re):
        return RangeVerdict("not_in_range")
    w = apply_T(z)
    if w is None:
        return RangeVerdict("unknown")
    di = delta_index(w)
    walls = _box_walls(di)
    # the image box is the w-box rigidly translated; margins agree with w's
    margins = []
    for j in range(k):
        lo, hi = walls[j]
        lo_m = None if lo is None else w.re[j] - lo
        hi_m = hi - w.re[j]
        margins.append((lo_m, hi_m))
    min_margin = min(m for pair in margins for m in pair if m is not None)
    if min_margin > eps:
        return RangeVerdict("in_range", witness=w, margin=min_margin)
    # protrusions allowed only inside the open positive orthant
    ball_min = [z.re[j] - eps for j in range(k)]
    for j in range(k):
        lo_m, hi_m = margins[j]
        for side, m in (("lo", lo_m), ("hi", hi_m)):
            if m is None or m > eps:
                continue
            others = min(ball_min[l] for l in range(k) if l != j) if k > 1 else Fraction(1)
            if side == "hi":
                hi_img = z.re[j] + m          # image-box wall in z coordinates
                slab_min = min(others, hi_img)
            else:
                slab_min = min(others, ball_min[j])
            if slab_min <= 0:
                return RangeVerdict("unknown")
    return RangeVerdict("in_range", witness=w, margin=min_margin)


# ---------------------------------------------------------------------------
# punctured-polydisc range oracle (n-th power witnesses)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolydiscVerdict:
    kind: str                  # 'excluded' | 'witness' | 'unknown'
    witness: np.ndarray = None
    case: int = 0
    multiplicity: int = 0
    alpha: float = 0.0
    m: int = 0


def _root_near(rho: float, theta: float, n: int, target: float) -> complex:
    """n-th root of rho*e^{i theta} whose argument is nearest `target`."""
    best, best_d = None, math.inf
    for s in range(-n, n + 1):
        phi = (theta + 2.0 * math.pi * s) / n
        dist = abs((phi - target + math.pi) % (2.0 * math.pi) - math.pi)
        if dist < best_d:
            best_d, best = dist, phi
    return rho ** (1.0 / n) * cmath.exp(1j * best)


def polydisc_range_oracle(u, eps: float, n: int) -> PolydiscVerdict:
    """Three-way range verdict for the n-th-power image construction.

    Points of the closed unit polydisc are excluded from the range; points
    with some |u_j| >= 1+eps get an explicit preimage witness built from
    n-th roots with prescribed half-plane choices, verified against the
    witness inequalities before returning; the open annulus in between is
    unknown territory.
    """
    u = np.asarray(u, dtype=complex)
    k = u.size
    if k < 3:
        raise ValueError("k >= 3 required")
    alpha = (1.0 + eps) ** (1.0 / n) * math.cos(math.pi / n) - 1.0
    if alpha <= 0:
        raise ValueError("n too small for this eps: shrink factor nonpositive")
    m = math.ceil(alpha + eps + 2.0)
    mags = np.abs(u)
    mult = int(n ** int(np.count_nonzero(mags)))
    if mags.max() <= 1.0:
        return PolydiscVerdict("excluded", alpha=alpha, m=m)
    if mags.max() < 1.0 + eps:
        return PolydiscVerdict("unknown", alpha=alpha, m=m)
    theta = np.angle(u)       # in (-pi, pi]
    lo = -m + 1.0 + alpha
    hi = 1.0 + alpha
    slack = 1e-12
    v = np.empty(k, dtype=complex)
    if mags[k - 1] >= 1.0 + eps:
        case = 1
        v[k - 1] = _root_near(mags[k - 1], theta[k - 1], n, 0.0)
        for j in range(k - 1):
            v[j] = _root_near(mags[j], theta[j], n, 0.0)
        ok = (v[k - 1].real >= hi - slack
              and all(v[j].real >= lo - slack for j in range(k - 1)))
    elif mags[0] >= 1.0 + eps:
        case = 2
        v[0] = _root_near(mags[0], theta[0], n, 0.0)
        for j in range(1, k - 1):
            v[j] = _root_near(mags[j], theta[j], n, 0.0)
        v[k - 1] = _root_near(mags[k - 1], theta[k - 1], n, math.pi)
        ok = (v[0].real >= hi - slack
              and all(v[j].real >= lo - slack for j in range(1, k - 1))
              and lo - slack <= v[k - 1].real <= hi + slack)
    else:
        big = [j for j in range(1, k - 1) if mags[j] >= 1.0 + eps]
        if not big:
            return PolydiscVerdict("unknown", alpha=alpha, m=m)
        lidx = big[0]          # 0-based index of the expanding coordinate l+1
        case = 3
        v[lidx] = _root_near(mags[lidx], theta[lidx], n, 0.0)
        for p in range(lidx):
            v[p] = _root_near(mags[p], theta[p], n, math.pi)
        for j in range(lidx + 1, k - 1):
            v[j] = _root_near(mags[j], theta[j], n, 0.0)
        v[k - 1] = _root_near(mags[k - 1], theta[k - 1], n, math.pi)
        ok = (v[lidx].real >= hi - slack
              and all(lo - slack <= v[p].real <= hi + slack for p in range(lidx))
              and all(v[j].real >= lo - slack for j in range(lidx + 1, k - 1))
              and lo - slack <= v[k - 1].real <= hi + slack)
    psi = v ** n
    rel = np.max(np.abs(psi - u)) / max(1.0, float(mags.max()))
    if not ok or rel > 1e-9:
        raise RuntimeError(f"witness verification failed (case {case}, rel err {rel:.2e})")
    return PolydiscVerdict("witness", witness=v, case=case, multiplicity=mult,
                           alpha=alpha, m=m)


# ---------------------------------------------------------------------------
# tube translation classifier (general k >= 3)
# ---------------------------------------------------------------------------

def tube_translation_vector(z: RegionPoint, a, delta, lam):
    """Translation vector the idealized tube automorphism applies near z.

    Each component j picks lam_j or 0 according to whether the real part of
    coordinate j-1 (cyclically: component 1 reads coordinate k) clears its
    wall a_{j-1} by delta from above or below; the coordinate-k wall shifts
    by lam_k when component k picked 0.  Points within delta of any relevant
    wall return None (boundary marker).
    """
    a = [_frac(x) for x in a]
    lam = [_frac(x) for x in lam]
    delta = _frac(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    k = z.k
    if not (len(a) == len(lam) == k):
        raise ValueError("a and lam must have length k")
    bits = [None] * k
    for j in range(2, k + 1):          # component j reads coordinate j-1
        val = z.re[j - 2]
        thr = a[j - 2]
        if val >= thr + delta:
            bits[j - 1] = 1
        elif val <= thr - delta:
            bits[j - 1] = 0
        else:
            return None
    thr = a[k - 1] if bits[k - 1] == 1 else a[k - 1] - lam[k - 1]
    val = z.re[k - 1]
    if val >= thr + delta:
        bits[0] = 1
    elif val <= thr - delta:
        bits[0] = 0
    else:
        return None
    return tuple(lam[j] if bits[j] else Fraction(0) for j in range(k))


# ---------------------------------------------------------------------------
# adversarial error-budget certificate
# ---------------------------------------------------------------------------

@dataclass
class BudgetCertificate:
    """Interval propagation of the level-wise approximation model: every
    level-m factor is its exact translation plus an adversarial real-part
    perturbation bounded by eps/2^{m+1}.  rows hold (level, radius after the
    level, worst wall clearance before it)."""
    n: int
    eps: Fraction
    rows: list
    final_radius: Fraction
    bound: Fraction
    certified: bool
    failure: str = ""

    def csv_rows(self):
        yield ("level", "radius", "clearance", "bound")
        for level, radius, clearance in self.rows:
            yield (level, str(radius), str(clearance), str(self.bound))


def budget_certificate(z: RegionPoint, eps, n: int) -> BudgetCertificate:
    """Certify |F_n(z) - S_n(z)| <= eps/2 - eps/2^{n+1} for the adversarial
    model, by propagating an exact real-part interval box through the level
    translations from level n down to 1.  Fails closed when a box straddles
    a level wall."""
    eps = _frac(eps)
    if not Fraction(0) < eps < Fraction(1, 2):
        raise ValueError("eps must lie in (0, 1/2)")
    bound = eps / 2 - eps / Fraction(2 ** (n + 1))
    center = z
    radius = Fraction(0)
    rows = []
    k = z.k
    for level in range(n, 0, -1):
        yi = y_index(center, level)
        if yi.boundary:
            return BudgetCertificate(n, eps, rows, radius, bound, False,
                                     f"center on a level-{level} wall")
        clearance = None
        for j in range(k):
            if j < k - 1:
                wall = Fraction(level)
            else:
                wall = Fraction(level if yi.bits[k - 2] == 1 else level - 1)
            c = abs(center.re[j] - wall)
            clearance = c if clearance is None else min(clearance, c)
        if clearance <= radius:
            return BudgetCertificate(n, eps, rows, radius, bound, False,
                                     f"box straddles a level-{level} wall")
        center = apply_Pn(center, level)
        radius += eps / Fraction(2 ** (level + 1))
        rows.append((level, radius, clearance))
    ok = radius <= bound
    return BudgetCertificate(n, eps, rows, radius, bound, ok,
                             "" if ok else "radius exceeded the budget")


# ---------------------------------------------------------------------------
# exact samplers for the property suites
# ---------------------------------------------------------------------------

def sample_delta_tilde(k: int, count: int, seed: int = 0, margin=Fraction(1, 16),
                       max_index: int = 4, denom: int = 1 << 10) -> list:
    """Random rational points strictly inside the open box family, each at
    least `margin` from every wall of its own box."""
    margin = _frac(margin)
    if not Fraction(0) < margin < Fraction(1, 2):
        raise ValueError("margin must lie in (0, 1/2)")
    rng = np.random.default_rng(seed)
    pts = []
    span = Fraction(1) - 2 * margin
    for _ in range(count):
        re = []
        for j in range(k):
            low_wall = 1 if j < k - 1 else 0
            l = int(rng.integers(low_wall, max_index + 1))
            frac = Fraction(int(rng.integers(0, denom + 1)), denom)
            if l == low_wall:
                depth = int(rng.integers(0, 4))
                x = Fraction(low_wall) - margin - frac * span - depth
            else:
                x = Fraction(l - 1) + margin + frac * span
            re.append(x)
        im = [Fraction(int(rng.integers(-8, 9)), 16) for _ in range(k)]
        pts.append(RegionPoint(tuple(re), tuple(im)))
    return pts


def sample_y_all_ones(k: int, n: int, count: int, seed: int = 0,
                      margin=Fraction(1, 16), denom: int = 1 << 10) -> list:
    """Random rational points with every real part strictly above n."""
    margin = _frac(margin)
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        re = []
        for _j in range(k):
            frac = Fraction(int(rng.integers(0, denom + 1)), denom)
            depth = int(rng.integers(0, 4))
            x = Fraction(n) + margin + frac + depth
            if x.denominator == 1:
                x += margin / 2
            re.append(x)
        im = [Fraction(int(rng.integers(-8, 9)), 16) for _ in range(k)]
        pts.append(RegionPoint(tuple(re), tuple(im)))
    return pts
