"""Interval-certified strip/disc region dynamics.

The plane is carved into vertical strips V_l (parameter b: V_0 = {|Re| <= b},
V_l = {b+2l-1 <= Re <= b+2l}, V_{K+1} the right tail, mirrored on the left)
with two lattices of small discs in the corridors between them: D-discs at
even heights and E-discs at odd heights (radius 1/8; their fattened versions
D-bar/E-bar have radius 1/4).  The idealized triangular automorphism adds a
function value that is pinned near +M on positive strips and D-bar discs,
near -M on negative strips, and near 0 (within 2^-(4+i)) on V_0 and E-bar.

Certificates propagate exact rational interval boxes through the inverse
orbit: escape certificates show the minimum |Re| lower bound diverging
(product excluded from the limit range); boundedness certificates pin the
orbit inside the disc ladder and the center band (product inside the range).
Boxes that straddle regions fail closed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .translation import _frac

EIGHTH = Fraction(1, 8)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class StripConfig:
    a: Fraction
    K: int
    M: Fraction
    k: int = 3

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "M", _frac(self.M))
        if self.a <= 0:
            raise ValueError("a must be positive")
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.M <= 2 * self.a + 4 * self.K + 5:
            raise ValueError("M must exceed 2a + 4K + 5")
        if self.k < 2:
            raise ValueError("k >= 2 required")


def disc_center(cfg: StripConfig, l: int, n: int, odd: bool, param_offset=Fraction(0)):
    """Center of the (n, l) disc of the even (D) or odd (E) lattice at
    parameter a + param_offset; negative l mirrors across the imaginary axis."""
    if l == 0 or abs(l) > cfg.K + 1:
        raise ValueError("disc index l must satisfy 1 <= |l| <= K+1")
    b = cfg.a + param_offset
    cx = b + Fraction(4 * abs(l) - 3, 2)
    if l < 0:
        cx = -cx
    cy = Fraction(2 * n + 1) if odd else Fraction(2 * n)
    return cx, cy


@dataclass(frozen=True)
class StripRegion:
    kind: str            # 'V' | 'D' | 'E' | 'none'
    l: int = None
    n: int = None
    in_bar_D: bool = False
    in_bar_E: bool = False

    def __str__(self):
        if self.kind == "V":
            return f"V[{self.l}]"
        if self.kind in ("D", "E"):
            return f"{self.kind}[{self.n},{self.l}]"
        return "none"


def _strip_index(x: Fraction, b: Fraction, K: int):
    """V-strip index containing the real value x, or None."""
    if -b <= x <= b:
        return 0
    for l in range(1, K + 1):
        if b + 2 * l - 1 <= x <= b + 2 * l:
            return l
        if -(b + 2 * l) <= x <= -(b + 2 * l - 1):
            return -l
    if x >= b + 2 * K + 1:
        return K + 1
    if x <= -(b + 2 * K + 1):
        return -(K + 1)
    return None


def _disc_candidates(cfg, x: Fraction, y: Fraction, odd: bool):
    if odd:
        n = (y - 1) / 2
    else:
        n = y / 2
    n_lo = int(n) - 1
    out = []
    for nn in range(n_lo, n_lo + 3):
        for l in range(1, cfg.K + 2):
            out.append((l, nn))
            out.append((-l, nn))
    return out


def strip_classify(w, cfg: StripConfig, i: int = 0) -> StripRegion:
    """Classify a point against the parameter a+i region families.

    Exact: the float (or rational pair) is converted to exact rationals.
    Disc membership at radius 1/8 names the region; membership in the
    fattened radius-1/4 discs is reported alongside.
    """
    if isinstance(w, complex):
        x, y = Fraction(w.real), Fraction(w.imag)
    else:
        x, y = _frac(w[0]), _frac(w[1])
    b = cfg.a + i
    off = Fraction(i)
    bar_D = bar_E = False
    hit = None
    for odd in (False, True):
        for l, n in _disc_candidates(cfg, x, y, odd):
            cx, cy = disc_center(cfg, l, n, odd, off)
            d2 = (x - cx) ** 2 + (y - cy) ** 2
            if d2 <= QUARTER ** 2:
                if odd:
                    bar_E = True
                else:
                    bar_D = True
                if d2 <= EIGHTH ** 2 and hit is None:
                    hit = StripRegion("E" if odd else "D", l=l, n=n,
                                      in_bar_D=not odd, in_bar_E=odd)
    if hit is not None:
        return StripRegion(hit.kind, l=hit.l, n=hit.n, in_bar_D=bar_D, in_bar_E=bar_E)
    sl = _strip_index(x, b, cfg.K)
    if sl is not None:
        return StripRegion("V", l=sl, in_bar_D=bar_D, in_bar_E=bar_E)
    return StripRegion("none", in_bar_D=bar_D, in_bar_E=bar_E)


# ---------------------------------------------------------------------------
# interval boxes
# ---------------------------------------------------------------------------

def _iv_add(iv, delta):
    lo, hi = iv
    dlo, dhi = delta
    return (None if lo is None or dlo is None else lo + dlo,
            None if hi is None or dhi is None else hi + dhi)


def _iv_max_sq_dist(iv, c):
    lo, hi = iv
    if lo is None or hi is None:
        return None
    return max((lo - c) ** 2, (hi - c) ** 2)


@dataclass(frozen=True)
class CoordBox:
    re: tuple        # (lo, hi); None = unbounded on that side
    im: tuple

    def half_width(self):
        spans = []
        for lo, hi in (self.re, self.im):
            if lo is None or hi is None:
                return None
            spans.append((hi - lo) / 2)
        return max(spans)


@dataclass(frozen=True)
class IntervalBox:
    coords: tuple    # k CoordBox entries
    step: int = 0

    @property
    def k(self):
        return len(self.coords)


def box_from_product(product, cfg: StripConfig) -> IntervalBox:
    """Initial box for a product of region specs: ('V', l) takes the whole
    strip, ('D'|'E', n, l) the bounding square of the radius-1/8 disc."""
    coords = []
    for spec in product:
        kind = spec[0]
        if kind == "V":
            l = spec[1]
            b = cfg.a
            if l == 0:
                re = (-b, b)
            elif l == cfg.K + 1:
                re = (b + 2 * cfg.K + 1, None)
            elif l == -(cfg.K + 1):
                re = (None, -(b + 2 * cfg.K + 1))
            elif 1 <= l <= cfg.K:
                re = (b + 2 * l - 1, b + 2 * l)
            elif -cfg.K <= l <= -1:
                re = (-(b + 2 * abs(l)), -(b + 2 * abs(l) - 1))
            else:
                raise ValueError(f"bad strip index {l}")
            coords.append(CoordBox(re=re, im=(None, None)))
        elif kind in ("D", "E"):
            _, n, l = spec
            cx, cy = disc_center(cfg, l, n, odd=(kind == "E"))
            coords.append(CoordBox(re=(cx - EIGHTH, cx + EIGHTH),
                                   im=(cy - EIGHTH, cy + EIGHTH)))
        else:
            raise ValueError(f"unknown region spec {spec!r}")
    return IntervalBox(coords=tuple(coords), step=0)


class CertificationError(RuntimeError):
    """A coordinate interval straddles regions; the certificate fails closed."""


def classify_box(cb: CoordBox, cfg: StripConfig, i: int) -> str:
    """Region containing the whole coordinate box at parameter a+i:
    one of 'V0', 'V+', 'V-', 'Dbar', 'Ebar'."""
    b = cfg.a + i
    lo, hi = cb.re
    if lo is not None and hi is not None and -b <= lo and hi <= b:
        return "V0"
    for l in range(1, cfg.K + 1):
        if lo is not None and hi is not None and b + 2 * l - 1 <= lo and hi <= b + 2 * l:
            return "V+"
        if lo is not None and hi is not None and -(b + 2 * l) <= lo and hi <= -(b + 2 * l - 1):
            return "V-"
    if lo is not None and lo >= b + 2 * cfg.K + 1:
        return "V+"
    if hi is not None and hi <= -(b + 2 * cfg.K + 1):
        return "V-"
    if lo is not None and hi is not None and cb.im[0] is not None:
        mx = (lo + hi) / 2
        my = (cb.im[0] + cb.im[1]) / 2
        for odd, tag in ((True, "Ebar"), (False, "Dbar")):
            for l, n in _disc_candidates(cfg, mx, my, odd):
                cx, cy = disc_center(cfg, l, n, odd, Fraction(i))
                dre = _iv_max_sq_dist(cb.re, cx)
                dim = _iv_max_sq_dist(cb.im, cy)
                if dre is not None and dim is not None and dre + dim <= QUARTER ** 2:
                    return tag
    raise CertificationError(f"coordinate box {cb} straddles regions at parameter a+{i}")


def _f_range(region: str, cfg: StripConfig, i: int):
    """Certified (re, im) interval of the pinned function on the region at
    parameter a+i."""
    if region in ("V0", "Ebar"):
        w = Fraction(1, 2 ** (4 + i))
        return ((-w, w), (-w, w))
    if region in ("V+", "Dbar"):
        return ((cfg.M - 1, cfg.M + 1), (Fraction(-1), Fraction(1)))
    if region == "V-":
        return ((-cfg.M - 1, -cfg.M + 1), (Fraction(-1), Fraction(1)))
    raise ValueError(region)


def propagate_inverse_step(box: IntervalBox, cfg: StripConfig) -> IntervalBox:
    """One inverse-orbit step through the parameter a+2i triangular factor:
    u_j = z_j + f(z_{j+1}) for j < k, then u_k = z_k + f(u_1).

    Every argument box must classify inside a single region; the u_1 box is
    classified after its own update (triangular dependency order)."""
    i2 = 2 * box.step
    k = box.k
    new = []
    for j in range(k - 1):
        region = classify_box(box.coords[j + 1], cfg, i2)
        fre, fim = _f_range(region, cfg, i2)
        new.append(CoordBox(re=_iv_add(box.coords[j].re, fre),
                            im=_iv_add(box.coords[j].im, fim)))
    region = classify_box(new[0], cfg, i2)
    fre, fim = _f_range(region, cfg, i2)
    new.append(CoordBox(re=_iv_add(box.coords[k - 1].re, fre),
                        im=_iv_add(box.coords[k - 1].im, fim)))
    return IntervalBox(coords=tuple(new), step=box.step + 1)


def _abs_re_lower_bound(cb: CoordBox):
    lo, hi = cb.re
    if lo is not None and lo > 0:
        return lo
    if hi is not None and hi < 0:
        return -hi
    return Fraction(0)


@dataclass
class Certificate:
    product: tuple
    kind: str                # 'escape' | 'bounded'
    steps: int
    rows: list               # (step, coord, re_lo, re_hi, region)
    certified: bool
    conclusion: str
    min_abs_re: list = None  # escape: per-step lower bound of min_j |Re|
    case: int = None         # bounded: 1 or 2
    uniform_bound: Fraction = None
    failure: str = ""

    def csv_rows(self):
        yield ("step", "coordinate", "lo", "hi", "region")
        for step, coord, lo, hi, region in self.rows:
            yield (step, coord,
                   "" if lo is None else str(lo),
                   "" if hi is None else str(hi),
                   region)


def _record_rows(rows, box: IntervalBox, cfg: StripConfig):
    for j, cb in enumerate(box.coords):
        try:
            region = classify_box(cb, cfg, 2 * box.step)
        except CertificationError:
            region = "?"
        rows.append((box.step, j + 1, cb.re[0], cb.re[1], region))


def verify_escape(product, cfg: StripConfig, steps: int = 50) -> Certificate:
    """Escape certificate for a product of V-strips or D-discs: the inverse
    orbit's min |Re| lower bound must grow monotonically every step, which
    excludes the product from the limit range."""
    box = box_from_product(product, cfg)
    rows = []
    _record_rows(rows, box, cfg)
    bounds = [min(_abs_re_lower_bound(cb) for cb in box.coords)]
    try:
        for _ in range(steps):
            box = propagate_inverse_step(box, cfg)
            _record_rows(rows, box, cfg)
            bounds.append(min(_abs_re_lower_bound(cb) for cb in box.coords))
    except CertificationError as err:
        return Certificate(product=tuple(product), kind="escape", steps=box.step,
                           rows=rows, certified=False, conclusion="",
                           min_abs_re=bounds, failure=str(err))
    growing = all(b2 > b1 for b1, b2 in zip(bounds[1:], bounds[2:]))
    ok = growing and bounds[-1] > bounds[1] > 0
    return Certificate(product=tuple(product), kind="escape", steps=steps, rows=rows,
                       certified=ok, min_abs_re=bounds,
                       conclusion="inverse orbit diverges: product excluded from the range"
                       if ok else "",
                       failure="" if ok else "lower bounds failed to grow monotonically")


@dataclass(frozen=True)
class DiscState:
    """Exact disc enclosure |u - (cx + i cy)| <= r; the boundedness induction
    keeps centers fixed while the radius grows additively."""
    cx: Fraction
    cy: Fraction
    r: Fraction


def _disc_region(ds: DiscState, cfg: StripConfig, i: int) -> str:
    """'V0' or 'Ebar' containment of the disc at parameter a+i; the square
    geometry of interval boxes would inflate the radius by sqrt(2), so the
    ladder is certified directly on discs."""
    b = cfg.a + i
    if abs(ds.cx) + ds.r <= b:
        return "V0"
    if ds.r <= QUARTER:
        slack = QUARTER - ds.r
        for l, n in _disc_candidates(cfg, ds.cx, ds.cy, odd=True):
            cx, cy = disc_center(cfg, l, n, odd=True, param_offset=Fraction(i))
            if (ds.cx - cx) ** 2 + (ds.cy - cy) ** 2 <= slack ** 2:
                return "Ebar"
    raise CertificationError(f"disc ({ds.cx}, {ds.cy}; r={ds.r}) straddles regions "
                             f"at parameter a+{i}")


def verify_bounded(product, cfg: StripConfig, steps: int = 50) -> Certificate:
    """Boundedness certificate for a product of E-discs.

    The inverse orbit is enclosed in exact discs with fixed centers and
    radius growing by the pinned-function width 2^-(4+2i) per step.

    Case 1 (all |l_j| = 1): every real part stays within [-(a+2), a+2].
    Case 2 (some |l_j| > 1): discs ride the relabeling ladder (the fixed
    centers belong to lower and lower disc indices as the parameter grows)
    with radius at most 1/8 + sum 2^-(4+2m) < 1/4, then sit inside the
    widening center strip.  Either way the inverse orbit is uniformly
    bounded, so the product lies inside the limit range."""
    if any(spec[0] != "E" for spec in product):
        raise ValueError("boundedness certificates take E-disc products")
    case = 1 if max(abs(spec[2]) for spec in product) == 1 else 2
    discs = []
    for spec in product:
        _, n, l = spec
        cx, cy = disc_center(cfg, l, n, odd=True)
        discs.append(DiscState(cx=cx, cy=cy, r=EIGHTH))
    a2 = cfg.a + 2
    radius_budget = EIGHTH + sum(Fraction(1, 2 ** (4 + 2 * m)) for m in range(steps))
    rows = []
    uniform = Fraction(0)
    case1_ok = True
    ladder_ok = True
    k = cfg.k

    def record(step, states, regions):
        for j, (ds, reg) in enumerate(zip(states, regions)):
            rows.append((step, j + 1, ds.cx - ds.r, ds.cx + ds.r, reg))

    try:
        regions = [_disc_region(ds, cfg, 0) for ds in discs]
        record(0, discs, regions)
        for step in range(steps):
            i2 = 2 * step
            w = Fraction(1, 2 ** (4 + i2))
            new = []
            for j in range(k - 1):
                _disc_region(discs[j + 1], cfg, i2)   # argument must classify
                new.append(DiscState(discs[j].cx, discs[j].cy, discs[j].r + w))
            _disc_region(new[0], cfg, i2)
            new.append(DiscState(discs[k - 1].cx, discs[k - 1].cy, discs[k - 1].r + w))
            discs = new
            regions = [_disc_region(ds, cfg, i2 + 2) for ds in discs]
            record(step + 1, discs, regions)
            for ds in discs:
                uniform = max(uniform, abs(ds.cx) + ds.r, abs(ds.cy) + ds.r)
                if not (abs(ds.cx) + ds.r <= a2):
                    case1_ok = False
                if ds.r > radius_budget:
                    ladder_ok = False
    except CertificationError as err:
        return Certificate(product=tuple(product), kind="bounded", steps=len(rows) // k,
                           rows=rows, certified=False, conclusion="", case=case,
                           failure=str(err))
    ok = case1_ok if case == 1 else (ladder_ok and radius_budget < QUARTER)
    return Certificate(product=tuple(product), kind="bounded", steps=steps, rows=rows,
                       certified=ok, case=case, uniform_bound=uniform,
                       conclusion="inverse orbit uniformly bounded: product inside the range"
                       if ok else "",
                       failure="" if ok else "bound violated during propagation")
