"""Escape-time filtration of C^k and quantitative orbit-growth bounds.

Beyond radius R the space splits into cells V_i by which coordinate realizes
the max-norm; V (the ball), V+ = V_k and V- = V_2 u ... u V_{k-1} drive the
escape classification that stands in for the bounded-orbit sets K+/K-.
The growth machinery certifies double-sided bounds |z_j^n| vs |z_j^0|^{d^n}
with per-degree constants, all evaluated in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import max_norm
from .maps import ShiftComposition

_OVERFLOW_BAIL = 1e100
_CONFIRM_STEPS = 3


@dataclass(frozen=True)
class FiltrationParams:
    R: float
    R_escape: float = None
    N_max: int = 200

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("R must be positive")
        if self.R_escape is None:
            object.__setattr__(self, "R_escape", 10.0 * self.R)
        if self.R_escape < self.R:
            raise ValueError("R_escape must be >= R")


def classify_point(z, params: FiltrationParams) -> int:
    """Region tag: 0 for the ball V, i in 1..k for V_i.

    Ties |z_i| = ||z|| are broken by the largest index, so V+ absorbs ties.
    """
    z = np.asarray(z, dtype=complex)
    mags = np.abs(z)
    nrm = mags.max()
    if nrm <= params.R:
        return 0
    return int(np.flatnonzero(mags == nrm)[-1]) + 1


def is_v_plus(tag: int, k: int) -> bool:
    return tag == k


def is_v_minus(tag: int, k: int) -> bool:
    return 2 <= tag <= k - 1


@dataclass(frozen=True)
class EscapeResult:
    escaped: bool
    n: int = None          # first step past R_escape when escaped
    max_seen: float = 0.0

    def __bool__(self):  # truthy = escaped
        return self.escaped


def escape_test(F: ShiftComposition, z, params: FiltrationParams,
                direction: str = "forward") -> EscapeResult:
    """Escaped(n) once the orbit passes R_escape and keeps growing for 3 more
    steps; Bounded when N_max is reached with the orbit inside the R_escape
    ball.  Overflow is guarded by an early exit."""
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    step = F.eval if direction == "forward" else F.eval_inverse
    w = np.asarray(z, dtype=complex)
    prev_norm = max_norm(w)
    max_seen = prev_norm
    first_exceed = None
    growth_run = 0
    for n in range(1, params.N_max + 1):
        w = step(w)
        nrm = max_norm(w)
        max_seen = max(max_seen, nrm)
        if nrm > _OVERFLOW_BAIL:
            return EscapeResult(True, first_exceed if first_exceed is not None else n, max_seen)
        if nrm > params.R_escape:
            if first_exceed is None:
                first_exceed = n
                growth_run = 0
            elif nrm > prev_norm:
                growth_run += 1
                if growth_run >= _CONFIRM_STEPS:
                    return EscapeResult(True, first_exceed, max_seen)
            else:
                first_exceed = None
        else:
            first_exceed = None
        prev_norm = nrm
    if max_norm(w) <= params.R_escape and first_exceed is None:
        return EscapeResult(False, None, max_seen)
    # orbit sits past the threshold at the cap without a confirmed growth run
    return EscapeResult(True, first_exceed if first_exceed is not None else params.N_max, max_seen)


# ---------------------------------------------------------------------------
# growth constants and bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthConstants:
    """The 2(k-1) per-coordinate growth constants and their integer exponents.

    log C_j(+-eps) = (1 + D^1_j + ... + D^{m-1}_j) * log(1 +- eps) with
    D^l_j an exact product of factor degrees selected by the cyclic index
    [n] = n mod m in {1..m}.
    """
    eps: float
    M: float
    D: dict = field(repr=False)          # (l, j) -> int
    log_C_plus: dict = field(repr=False)   # j -> float
    log_C_minus: dict = field(repr=False)  # j -> float

    def C_plus(self, j: int) -> float:
        return math.exp(self.log_C_plus[j])

    def C_minus(self, j: int) -> float:
        return math.exp(self.log_C_minus[j])


def growth_exponent_products(F: ShiftComposition) -> dict:
    """D^l_i = d_[m-k+i] * d_[m-k+i-1] * ... * d_[m-k+i-(l-1)] as exact ints."""
    k, m = F.k, F.m
    out = {}
    for i in range(1, k + 1):
        for l in range(1, m):
            prod = 1
            for step in range(l):
                prod *= F.factor_degree(m - k + i - step)
            out[(l, i)] = prod
    return out


def growth_constants(F: ShiftComposition, eps: float, M: float) -> GrowthConstants:
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    D = growth_exponent_products(F)
    log_plus, log_minus = {}, {}
    for j in range(2, F.k + 1):
        expo = 1 + sum(D[(l, j)] for l in range(1, F.m))
        log_plus[j] = expo * math.log1p(eps)
        log_minus[j] = expo * math.log1p(-eps)
    return GrowthConstants(eps=eps, M=M, D=D, log_C_plus=log_plus, log_C_minus=log_minus)


def _log_abs(x: complex) -> float:
    a = abs(x)
    return math.log(a) if a > 0 else -math.inf


@dataclass
class BoundsReport:
    """Rows (j, n, side, lhs, rhs, margin, ok) in log space; margin = lhs-rhs
    for lower bounds and rhs-lhs for upper bounds, so ok <=> margin >= 0."""
    rows: list
    precondition_ok: bool
    violations: list

    def csv_rows(self):
        yield ("j", "n", "lhs", "rhs", "margin", "pass")
        for j, n, side, lhs, rhs, margin, ok in self.rows:
            yield (j, n, f"{lhs:.17g}", f"{rhs:.17g}", f"{margin:.17g}", str(ok).lower())


def verify_growth_bounds(F: ShiftComposition, z, constants: GrowthConstants,
                         n_max: int, params: FiltrationParams = None) -> BoundsReport:
    """Check the double-sided orbit bounds for 2 <= j <= k, 0 <= n <= n_max.

    Upper: |z_j^n| <= C_j(eps)^{d^n} max{|z_j^0|^{d^n}, M^{d^n}}
    Lower: max{|z_j^n|, C_j(-eps)^{d^n} M^{d^n}} >= C_j(-eps)^{d^n} |z_j^0|^{d^n}
    Both sides are evaluated in log space so d^n exponents never overflow.
    A failed backward-boundedness precondition is flagged on the report
    rather than counted as a bound violation.
    """
    z = np.asarray(z, dtype=complex)
    pre_ok = True
    if params is not None:
        pre_ok = not escape_test(F, z, params, "backward").escaped
    d = float(F.degree)
    logM = math.log(constants.M) if constants.M > 0 else -math.inf
    rows, violations = [], []
    orbit = [z]
    for _ in range(n_max):
        orbit.append(F.eval(orbit[-1]))
    def _margin(a, b):
        # a - b with the -inf/-inf case read as zero slack
        if a == b:
            return 0.0
        return a - b

    for j in range(2, F.k + 1):
        log_z0 = _log_abs(z[j - 1])
        for n in range(n_max + 1):
            dn = d ** n
            log_zn = _log_abs(orbit[n][j - 1])
            rhs_up = dn * (constants.log_C_plus[j] + max(log_z0, logM))
            ok_up = log_zn <= rhs_up
            rows.append((j, n, "upper", log_zn, rhs_up, _margin(rhs_up, log_zn), ok_up))
            lhs_low = max(log_zn, dn * (constants.log_C_minus[j] + logM))
            rhs_low = dn * (constants.log_C_minus[j] + log_z0)
            ok_low = lhs_low >= rhs_low
            rows.append((j, n, "lower", lhs_low, rhs_low, _margin(lhs_low, rhs_low), ok_low))
            for side, ok in (("upper", ok_up), ("lower", ok_low)):
                if not ok:
                    violations.append((j, n, side))
    return BoundsReport(rows=rows, precondition_ok=pre_ok, violations=violations)


@dataclass
class GrowthOffsetResult:
    M: float
    eps: float
    R: float
    margins: dict              # (j, side) -> worst slack at the returned M
    samples_used: int
    certified: bool
    note: str = ""


def _default_backward_bounded_sampler(F, params, count, seed, box=2.0):
    """Rejection sampler: random points whose backward orbit stays bounded."""
    rng = np.random.default_rng(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        z = rng.uniform(-box, box, F.k) + 1j * rng.uniform(-box, box, F.k)
        if not escape_test(F, z, params, "backward").escaped:
            out.append(z)
    return out


def calibrate_growth_offset(F: ShiftComposition, params: FiltrationParams,
                            eps: float, samples: int = 200, seed: int = 0,
                            points=None, M_cap: float = 1e12) -> GrowthOffsetResult:
    """Smallest additive offset M making the per-step growth inequalities

        (1-eps)|z_{i-1}|^{d_[j-k+i]} - M <= |z_i| <= (1+eps)|z_{i-1}|^{d_[j-k+i]} + M

    hold for 2 <= i <= k on `samples` backward-bounded points pushed through
    every partial composition G_j.  On a finite sample set the minimal M is
    the largest inequality deficit, returned exactly; per-(j, side) worst
    margins at that M are reported.  Sides with a vanishing (1-eps) factor
    can never bind and report +inf margin.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if points is None:
        points = _default_backward_bounded_sampler(F, params, samples, seed)
    if not points:
        return GrowthOffsetResult(math.nan, eps, params.R, {}, 0, False,
                                  "no backward-bounded sample points found")
    k, m = F.k, F.m
    needed = 0.0
    deficits = {}   # (j, side) -> max deficit observed
    for j in range(1, m + 1):
        G = F.partial(j)
        for w in points:
            zpt = G.eval(w)
            for i in range(2, k + 1):
                e = F.factor_degree(j - k + i)
                base = abs(zpt[i - 2]) ** e
                cur = abs(zpt[i - 1])
                up = cur - (1 + eps) * base
                low = (1 - eps) * base - cur
                deficits[(j, "upper")] = max(deficits.get((j, "upper"), 0.0), up)
                if 1 - eps > 0:
                    deficits[(j, "lower")] = max(deficits.get((j, "lower"), 0.0), low)
                else:
                    deficits.setdefault((j, "lower"), -math.inf)
                needed = max(needed, up, low if 1 - eps > 0 else 0.0)
    if needed > M_cap:
        return GrowthOffsetResult(needed, eps, params.R, {}, len(points), False,
                                  f"required offset {needed:.3e} exceeds cap {M_cap:.3e}")
    M = needed
    margins = {}
    for key, deficit in deficits.items():
        margins[key] = math.inf if deficit == -math.inf else M - deficit
    return GrowthOffsetResult(M=M, eps=eps, R=params.R, margins=margins,
                              samples_used=len(points), certified=True)
