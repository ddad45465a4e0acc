"""Planar charts of the bounded-orbit parameter set and their topology.

A chart is a boolean pixel grid over a centered square window: a pixel
belongs to the set when the pulled-back escape rate u+ falls below a
threshold.  On top of the chart: 4-connected component labeling of the
complement (hand-rolled union-find, deterministic), component counts on the
half-radius circle, the circular ordering and the index shift induced by
multiplication by lambda, a bridgedness heuristic for the component of the
origin, polyline accesses to the origin, and the Yoccoz-type inequality
check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .green import GreenParams, u_plus_batch
from .maps import ShiftComposition
from .unstable import UnstableSeries


@dataclass
class KtildeChart:
    radius: float
    resolution: int
    threshold: float
    lam: complex
    d: int
    membership: np.ndarray            # True = inside the set
    labels: np.ndarray = None         # complement components, 0 on set pixels
    n_components: int = 0
    boundary_labels: frozenset = frozenset()   # "unbounded in window" flags
    qprime: int = 0                   # components meeting the |t| = R/2 circle

    @property
    def pixel_size(self) -> float:
        return 2.0 * self.radius / self.resolution

    def centers(self) -> np.ndarray:
        """Complex pixel centers, index [iy, ix]; y runs top-down like PGM rows."""
        n, R = self.resolution, self.radius
        h = self.pixel_size
        xs = -R + (np.arange(n) + 0.5) * h
        ys = R - (np.arange(n) + 0.5) * h
        return xs[None, :] + 1j * ys[:, None]

    def pixel_of(self, t: complex):
        """(iy, ix) of the pixel containing t, or None outside the window."""
        n, R = self.resolution, self.radius
        h = self.pixel_size
        ix = int(math.floor((t.real + R) / h))
        iy = int(math.floor((R - t.imag) / h))
        if 0 <= ix < n and 0 <= iy < n:
            return iy, ix
        return None


def ktilde_grid(F: ShiftComposition, H: UnstableSeries, R_chart: float,
                resolution: int, threshold: float = 1e-6,
                gp: GreenParams = GreenParams()) -> KtildeChart:
    """Chart the sub-threshold set of u+ on a centered square window."""
    chart = KtildeChart(radius=float(R_chart), resolution=int(resolution),
                        threshold=float(threshold), lam=complex(H.lam),
                        d=F.degree, membership=None)
    ts = chart.centers().ravel()
    vals = u_plus_batch(F, H, ts, gp)
    chart.membership = (vals < threshold).reshape(resolution, resolution)
    return chart


def synthetic_chart(mask: np.ndarray, radius: float, lam: complex, d: int = 2,
                    threshold: float = 1e-6) -> KtildeChart:
    """Chart built from an explicit boolean mask (True = in the set)."""
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim != 2 or mask.shape[0] != mask.shape[1]:
        raise ValueError("mask must be square")
    return KtildeChart(radius=float(radius), resolution=mask.shape[0],
                       threshold=threshold, lam=complex(lam), d=d,
                       membership=mask.copy())


# ---------------------------------------------------------------------------
# union-find component labeling (4-connectivity)
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = [0]

    def make(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def label_grid(mask: np.ndarray) -> tuple:
    """Two-pass 4-connected labeling of True pixels; labels 1..n_components,
    renumbered in first-appearance (row-major) order so the result is
    independent of union tie-breaking."""
    n_rows, n_cols = mask.shape
    labels = np.zeros(mask.shape, dtype=np.int32)
    uf = _UnionFind()
    for iy in range(n_rows):
        for ix in range(n_cols):
            if not mask[iy, ix]:
                continue
            up = labels[iy - 1, ix] if iy > 0 and mask[iy - 1, ix] else 0
            left = labels[iy, ix - 1] if ix > 0 and mask[iy, ix - 1] else 0
            if up and left:
                labels[iy, ix] = min(up, left)
                uf.union(up, left)
            elif up or left:
                labels[iy, ix] = up or left
            else:
                labels[iy, ix] = uf.make()
    remap = {}
    for iy in range(n_rows):
        for ix in range(n_cols):
            if labels[iy, ix]:
                root = uf.find(labels[iy, ix])
                if root not in remap:
                    remap[root] = len(remap) + 1
                labels[iy, ix] = remap[root]
    return labels, len(remap)


def complement_components(chart: KtildeChart) -> KtildeChart:
    """Label the complement pixels, flag window-boundary components, and
    count the components meeting the |t| = R/2 circle (window-edge fragments
    away from that circle are artifacts and do not count)."""
    labels, n = label_grid(~chart.membership)
    chart.labels = labels
    chart.n_components = n
    edge = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    chart.boundary_labels = frozenset(int(v) for v in np.unique(edge) if v > 0)
    chart.qprime = len(_ring_labels(chart))
    return chart


def _ring_mask(chart: KtildeChart) -> np.ndarray:
    """Pixels whose square meets the circle |t| = R/2."""
    c = chart.radius / 2.0
    h = chart.pixel_size
    t = chart.centers()
    ax, ay = np.abs(t.real), np.abs(t.imag)
    nearest = np.hypot(np.maximum(ax - h / 2, 0.0), np.maximum(ay - h / 2, 0.0))
    farthest = np.hypot(ax + h / 2, ay + h / 2)
    return (nearest <= c) & (c <= farthest)


def _ring_labels(chart: KtildeChart) -> list:
    ring = _ring_mask(chart)
    vals = chart.labels[ring]
    return sorted(int(v) for v in np.unique(vals) if v > 0)


# ---------------------------------------------------------------------------
# rotation data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationData:
    qprime: int
    pprime: int
    N: int
    p: int
    q: int
    tau: complex
    ordering: tuple            # labels in circular order on the witness circle
    shift_constant: bool
    shifts: tuple = ()

    def csv_rows(self):
        yield ("qprime", "pprime", "N", "p", "q", "tau_re", "tau_im",
               "shift_constant", "ordering")
        yield (self.qprime, self.pprime, self.N, self.p, self.q,
               f"{self.tau.real:.17g}", f"{self.tau.imag:.17g}",
               str(self.shift_constant).lower(),
               " ".join(str(l) for l in self.ordering))


class RotationError(RuntimeError):
    """Rotation bookkeeping failed (usually: resolution too coarse)."""


def _witness_angles(chart: KtildeChart, radius: float):
    """For each component with pixels on the given circle: (first-hit angle,
    witness point at the angular midpoint of its largest arc)."""
    h = chart.pixel_size
    t = chart.centers()
    dist = np.abs(t)
    on_circle = (dist >= radius - h) & (dist <= radius + h)
    out = {}
    angs = np.angle(t) % (2.0 * np.pi)
    for lab in np.unique(chart.labels[on_circle]):
        if lab <= 0:
            continue
        sel = on_circle & (chart.labels == lab)
        a = np.sort(angs[sel])
        first = float(a[0])
        # midpoint of the largest angular gap's complement arc
        gaps = np.diff(np.concatenate([a, a[:1] + 2 * np.pi]))
        cut = int(np.argmax(gaps))
        arc = np.concatenate([a[cut + 1:], a[: cut + 1] + 2 * np.pi])
        mid = float(np.median(arc)) % (2 * np.pi)
        sel_angs = angs[sel]
        best = int(np.argmin(np.abs((sel_angs - mid + np.pi) % (2 * np.pi) - np.pi)))
        witness = t[sel][best]
        out[int(lab)] = (first, complex(witness))
    return out


def rotation_data(chart: KtildeChart, lam: complex = None) -> RotationData:
    """Order the circle components by first-hit angle and measure the index
    shift induced by multiplication by lambda.

    Witnesses live on radius min(R/2, 0.9 R/|lambda|) so their lambda-images
    stay inside the window; a non-constant shift raises RotationError (the
    claimed invariance fails only when the resolution is too coarse)."""
    if chart.labels is None:
        complement_components(chart)
    lam = chart.lam if lam is None else lam
    ring = _ring_labels(chart)
    qprime = len(ring)
    tau = cmath.log(lam)
    if qprime == 0:
        raise RotationError("no complement components meet the half-radius circle")
    if qprime == 1:
        return RotationData(1, 0, 1, 0, 1, tau, tuple(ring), True, (0,))
    r_wit = min(chart.radius / 2.0, 0.9 * chart.radius / abs(lam))
    wit = _witness_angles(chart, r_wit)
    missing = [lab for lab in ring if lab not in wit]
    if missing:
        raise RotationError(f"components {missing} missing on the witness circle")
    order = sorted(ring, key=lambda lab: wit[lab][0])
    pos = {lab: i for i, lab in enumerate(order)}
    shifts = []
    for lab in order:
        img = lam * wit[lab][1]
        px = chart.pixel_of(img)
        if px is None:
            raise RotationError(f"lambda-image of witness for {lab} leaves the window")
        target = int(chart.labels[px])
        if target <= 0 or target not in pos:
            raise RotationError(
                f"lambda-image of witness for {lab} lands off the counted components")
        shifts.append((pos[target] - pos[lab]) % qprime)
    constant = len(set(shifts)) == 1
    if not constant:
        raise RotationError(f"index shift not constant across components: {shifts} "
                            "(resolution too coarse?)")
    pprime = shifts[0]
    N = math.gcd(pprime, qprime)
    return RotationData(qprime=qprime, pprime=pprime, N=N,
                        p=pprime // N, q=qprime // N, tau=tau,
                        ordering=tuple(order), shift_constant=True,
                        shifts=tuple(shifts))


# ---------------------------------------------------------------------------
# bridgedness evidence and origin accesses
# ---------------------------------------------------------------------------

def bridged_test(chart: KtildeChart, chart_double: KtildeChart = None) -> str:
    """Evidence verdict for the component of the set containing the origin:
    'bridged-evidence' when it reaches the window boundary,
    'isolated-origin-evidence' when it is the single origin pixel at two
    successive resolutions, else 'inconclusive'."""
    def origin_component(ch):
        labels, _ = label_grid(ch.membership)
        px = ch.pixel_of(0.0)
        if px is None or not ch.membership[px]:
            return None, labels
        return labels[px], labels

    lab, labels = origin_component(chart)
    if lab is None:
        return "inconclusive"
    comp = labels == lab
    touches = comp[0, :].any() or comp[-1, :].any() or comp[:, 0].any() or comp[:, -1].any()
    if touches:
        return "bridged-evidence"
    if comp.sum() == 1 and chart_double is not None:
        lab2, labels2 = origin_component(chart_double)
        if lab2 is not None and (labels2 == lab2).sum() == 1:
            return "isolated-origin-evidence"
    return "inconclusive"


class AccessPathError(RuntimeError):
    """A path segment left its component's pixels (resolution too coarse)."""


def access_path(chart: KtildeChart, component: int, lam: complex, q: int,
                t0: complex = None) -> list:
    """Polyline t0, t0/lam^q, t0/lam^{2q}, ... toward the origin, each segment
    verified inside the component's pixels (down to one pixel from 0).
    Consecutive vertices are exact lam^q rescales by construction."""
    if chart.labels is None:
        complement_components(chart)
    if component <= 0 or component > chart.n_components:
        raise ValueError("no such component")
    if t0 is None:
        r_wit = min(chart.radius / 2.0, 0.9 * chart.radius / abs(lam))
        wit = _witness_angles(chart, r_wit)
        if component not in wit:
            raise AccessPathError("component has no witness on the witness circle")
        t0 = wit[component][1]
    h = chart.pixel_size
    scale = lam ** q
    if abs(scale) <= 1:
        raise ValueError("need |lam^q| > 1 to walk toward the origin")
    pts = [complex(t0)]
    while abs(pts[-1]) > h:
        pts.append(pts[-1] / scale)
    for a, b in zip(pts, pts[1:]):
        steps = max(2, int(abs(a - b) / (0.4 * h)) + 1)
        for s in range(steps + 1):
            z = a + (b - a) * s / steps
            if abs(z) <= h:
                continue
            px = chart.pixel_of(z)
            if px is None or chart.labels[px] != component:
                raise AccessPathError(f"segment point {z:.4g} leaves component {component}")
    return pts


# ---------------------------------------------------------------------------
# Yoccoz-type inequality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class YoccozResult:
    lhs: float
    rhs: float
    holds: bool
    tau: complex

    def csv_rows(self):
        yield ("lhs", "rhs", "holds", "tau_re", "tau_im")
        yield (f"{self.lhs:.17g}", f"{self.rhs:.17g}", str(self.holds).lower(),
               f"{self.tau.real:.17g}", f"{self.tau.imag:.17g}")


def yoccoz_check(tau: complex, p: int, q: int, N: int, d: int) -> YoccozResult:
    """Re tau / |tau - 2 pi i p/q|^2 >= N q / (2 log d), to 1e-12 slack."""
    if q <= 0:
        raise ValueError("q must be a positive integer")
    if d < 2:
        raise ValueError("d must be >= 2")
    tau = complex(tau)
    if tau.real <= 0:
        raise ValueError("Re tau must be positive (|lambda| > 1)")
    denom = abs(tau - 2j * math.pi * p / q) ** 2
    lhs = tau.real / denom if denom > 0 else math.inf
    rhs = N * q / (2.0 * math.log(d))
    return YoccozResult(lhs=lhs, rhs=rhs, holds=bool(lhs >= rhs - 1e-12), tau=tau)


def yoccoz_branches(lam: complex, p: int, q: int, N: int, d: int) -> list:
    """Try every log branch tau0 + 2 pi i k, |k| <= q; the principal branch
    is k = 0.  Returns (k, YoccozResult) pairs; callers report the branch
    that satisfies the inequality, if any."""
    tau0 = cmath.log(lam)
    out = []
    for k in range(-q, q + 1):
        out.append((k, yoccoz_check(tau0 + 2j * math.pi * k, p, q, N, d)))
    return out
