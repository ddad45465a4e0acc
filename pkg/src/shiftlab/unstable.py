"""Fixed points, saddle classification, and the constructive series
parametrization of one-dimensional unstable manifolds.

The parametrization H solves F(H(t)) = H(lambda*t) with H(0) = a.  It is
built in an affine frame (translate the saddle to 0, triangularize the
derivative with the expanding eigenvalue last, then shear so the expanding
eigendirection is exactly e_k) by iterating the functional-equation
recurrence on truncated series until the coefficients stabilize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import VecSeries, eigenvalues, max_norm
from .maps import ShiftComposition, map_on_series


class SternbergError(RuntimeError):
    """Series recurrence failed to stabilize within the iteration cap."""


@dataclass(frozen=True)
class SaddlePoint:
    a: np.ndarray
    eigenvalues: np.ndarray       # descending modulus
    lam: complex                  # expanding eigenvalue, None unless type_ok
    type_ok: bool
    margin: float                 # min distance of |lambda_i| to 1
    fix_residual: float

    @property
    def k(self) -> int:
        return self.a.size


def find_fixed_points(F: ShiftComposition, search_box: float = 5.0,
                      newton_tol: float = 1e-10, n_starts: int = 200,
                      seed: int = 0) -> list:
    """Newton iterations from a coarse set of starts in the box, deduplicated
    at 1e-6 spacing; every returned point satisfies ||F(a) - a|| < newton_tol."""
    k = F.k
    rng = np.random.default_rng(seed)
    starts = []
    if F.m == 1:
        # single-factor fixed points are diagonal: alpha*c + p(c) = c
        f = F.factors[0]
        coeffs = f.p.coeffs.astype(complex).copy()
        if len(coeffs) < 2:
            coeffs = np.append(coeffs, 0.0)
        coeffs[1] += f.alpha - 1.0
        if np.any(coeffs[1:] != 0):
            for c in np.roots(coeffs[::-1]):
                starts.append(np.full(k, c, dtype=complex))
    for _ in range(n_starts):
        z = rng.uniform(-search_box, search_box, k) + 1j * rng.uniform(-search_box, search_box, k)
        starts.append(z)
    found = []
    eye = np.eye(k, dtype=complex)
    for z in starts:
        z = z.astype(complex)
        ok = False
        for _ in range(60):
            r = F.eval(z) - z
            if max_norm(r) < newton_tol:
                ok = True
                break
            J = F.jacobian(z) - eye
            try:
                step = np.linalg.solve(J, r)
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(step)):
                break
            z = z - step
        if ok and np.all(np.isfinite(z)):
            if all(max_norm(z - w) >= 1e-6 for w in found):
                found.append(z)
    found.sort(key=lambda w: (round(w[0].real, 9), round(w[0].imag, 9)))
    return found


def classify_saddle(F: ShiftComposition, a) -> SaddlePoint:
    """Eigenvalue data at an (approximately) fixed point, with the
    one-expanding / rest-contracting pattern flagged."""
    a = np.asarray(a, dtype=complex)
    resid = max_norm(F.eval(a) - a)
    if resid > 1e-6:
        raise ValueError(f"point is not fixed: residual {resid:.3e}")
    eigs = eigenvalues(F.jacobian(a))
    mods = np.abs(eigs)
    type_ok = bool(mods[0] > 1 and np.all(mods[1:] < 1))
    lam = complex(eigs[0]) if type_ok else None
    margin = float(np.min(np.abs(mods - 1.0)))
    return SaddlePoint(a=a, eigenvalues=eigs, lam=lam, type_ok=type_ok,
                       margin=margin, fix_residual=float(resid))


def _triangular_frame(F: ShiftComposition, S: SaddlePoint):
    """Affine frame B with B^-1 DF(a) B upper triangular, expanding
    eigenvalue last, and e_k an exact eigendirection."""
    M = F.jacobian(S.a)
    T, Q, sdim = scipy.linalg.schur(M, output="complex", sort=lambda x: abs(x) < 1)
    k = F.k
    if sdim != k - 1:
        raise ValueError("Schur sort did not isolate a single expanding eigenvalue")
    lam = T[k - 1, k - 1]
    # shear that zeroes the strictly-upper part of the last column
    u = np.linalg.solve(T[: k - 1, : k - 1] - lam * np.eye(k - 1), -T[: k - 1, k - 1])
    E = np.eye(k, dtype=complex)
    E[: k - 1, k - 1] = u
    B = Q @ E
    Einv = np.eye(k, dtype=complex)
    Einv[: k - 1, k - 1] = -u
    DG0 = Einv @ T @ E
    return B, DG0, complex(lam)


@dataclass(frozen=True)
class UnstableSeries:
    base: SaddlePoint
    frame: np.ndarray            # affine frame B (k x k); z = a + B w
    series: VecSeries            # frame coordinates, H(0) = 0, H'(0) = e_k
    rho0: float                  # validity radius of the direct series

    @property
    def lam(self) -> complex:
        return self.base.lam

    @property
    def k(self) -> int:
        return self.base.k

    def eval_direct(self, t):
        """Direct truncated-series evaluation; trustworthy for |t| <= rho0."""
        w = self.series.eval(t)
        return w @ self.frame.T + self.base.a


def _conjugated_on_series(F: ShiftComposition, a, B, Binv, s: VecSeries) -> VecSeries:
    inp = s.linear_map(B) + a
    out = map_on_series(F, inp) - a
    return out.linear_map(Binv)


def _direct_residual(F, a, B, series: VecSeries, lam, radius, samples=64) -> float:
    th = 2.0 * np.pi * np.arange(samples) / samples
    ts = radius * np.exp(1j * th)
    h_t = series.eval(ts) @ B.T + a
    h_lt = series.eval(lam * ts) @ B.T + a
    lhs = F.eval(h_t)
    num = np.max(np.abs(lhs - h_lt), axis=1)
    den = 1.0 + np.max(np.abs(h_lt), axis=1)
    return float(np.max(num / den))


def sternberg_series(F: ShiftComposition, S: SaddlePoint, N: int = 40,
                     iters: int = 200, stab_tol: float = 1e-12,
                     residual_target: float = 1e-8) -> UnstableSeries:
    """Truncated-series solution of F(H(t)) = H(lambda t).

    Starting from H_0(t) = (0,...,0,t) in the triangular frame, iterate
    H_n = G(H_{n-1}(t/lambda)) until the coefficient table stabilizes below
    stab_tol.  The validity radius rho0 is the largest dyadic radius where
    the direct-series conjugacy residual stays under residual_target.
    """
    if not S.type_ok:
        raise ValueError("saddle must have exactly one expanding eigenvalue")
    B, _, lam = _triangular_frame(F, S)
    Binv = np.linalg.inv(B)
    a = S.a
    k = F.k
    H = VecSeries.monomial(N, k, coord=k - 1, degree=1)
    deltas = []
    converged = False
    for _ in range(iters):
        Hn = _conjugated_on_series(F, a, B, Binv, H.scale_arg(1.0 / lam))
        # pin H(0) = 0 (the saddle): the constant row is a fixed point of the
        # recurrence but numerically unstable (rounding there is amplified by
        # |lambda| per iteration)
        c = Hn.coeffs.copy()
        c[0] = 0.0
        Hn = VecSeries(c)
        delta = Hn.max_coeff_diff(H)
        H = Hn
        deltas.append(delta)
        if delta < stab_tol:
            converged = True
            break
    if not converged:
        ratio = deltas[-1] / deltas[-2] if len(deltas) > 1 and deltas[-2] > 0 else math.nan
        raise SternbergError(
            f"coefficients not stable after {iters} iterations "
            f"(last delta {deltas[-1]:.3e}, contraction ratio ~{ratio:.3f})")
    # dyadic validity-radius search
    r = 1.0
    if _direct_residual(F, a, B, H, lam, r) < residual_target:
        while r < 2.0 ** 8 and _direct_residual(F, a, B, H, lam, 2 * r) < residual_target:
            r *= 2.0
    else:
        while r > 2.0 ** -40 and _direct_residual(F, a, B, H, lam, r) >= residual_target:
            r /= 2.0
        if _direct_residual(F, a, B, H, lam, r) >= residual_target:
            raise SternbergError("no dyadic radius meets the residual target")
    return UnstableSeries(base=S, frame=B, series=H, rho0=r)


def _push_count(H: UnstableSeries, t_abs: float) -> int:
    if t_abs <= H.rho0:
        return 0
    la = abs(H.lam)
    n = int(math.ceil(math.log(t_abs / H.rho0) / math.log(la)))
    while t_abs / la ** n > H.rho0:
        n += 1
    while n > 0 and t_abs / la ** (n - 1) <= H.rho0:
        n -= 1
    return n


def eval_unstable(H: UnstableSeries, F: ShiftComposition, t: complex,
                  force_n: int = None) -> np.ndarray:
    """H(t) anywhere in C: pull t into the validity disc along 1/lambda^n,
    evaluate the series, and push forward n times through the map."""
    n = _push_count(H, abs(t)) if force_n is None else force_n
    w = H.eval_direct(t / H.lam ** n)
    for _ in range(n):
        w = F.eval(w)
    return w


def eval_unstable_batch(H: UnstableSeries, F: ShiftComposition, ts) -> np.ndarray:
    ts = np.asarray(ts, dtype=complex)
    ns = np.array([_push_count(H, float(abs(t))) for t in ts])
    pulled = ts / H.lam ** ns
    pts = H.series.eval(pulled) @ H.frame.T + H.base.a
    for step in range(ns.max() if ns.size else 0):
        mask = ns > step
        if not mask.any():
            break
        pts[mask] = F.eval(pts[mask])
    return pts


def conjugacy_residual(H: UnstableSeries, F: ShiftComposition, radius: float,
                       samples: int = 256) -> float:
    """max over sample points of the closed disc |t| <= radius of
    ||F(H(t)) - H(lambda t)|| / (1 + ||H(lambda t)||).

    Points are spread over concentric circles (boundary included) so the
    estimate covers the whole disc deterministically."""
    n_rings = max(4, int(math.isqrt(samples)))
    per_ring = max(8, samples // n_rings)
    ts = []
    for i in range(1, n_rings + 1):
        r = radius * i / n_rings
        th = 2.0 * np.pi * (np.arange(per_ring) + 0.5 * (i % 2)) / per_ring
        ts.append(r * np.exp(1j * th))
    ts = np.concatenate(ts)
    lhs = F.eval(eval_unstable_batch(H, F, ts))
    rhs = eval_unstable_batch(H, F, H.lam * ts)
    num = np.max(np.abs(lhs - rhs), axis=1)
    den = 1.0 + np.max(np.abs(rhs), axis=1)
    return float(np.max(num / den))


# ---------------------------------------------------------------------------
# serialization (bit-identical round trip via hex floats)
# ---------------------------------------------------------------------------

def _hex_c(z: complex) -> str:
    return f"{float(z.real).hex()},{float(z.imag).hex()}"


def _unhex_c(s: str) -> complex:
    re, im = s.split(",")
    return complex(float.fromhex(re), float.fromhex(im))


def serialize_unstable(H: UnstableSeries) -> str:
    k, N = H.k, H.series.order
    lines = ["unstable-series v1", f"k = {k}", f"N = {N}"]
    lines.append(f"rho0 = {float(H.rho0).hex()}")
    lines.append(f"lam = {_hex_c(H.base.lam)}")
    lines.append(f"type_ok = {int(H.base.type_ok)}")
    lines.append(f"margin = {float(H.base.margin).hex()}")
    lines.append(f"fix_residual = {float(H.base.fix_residual).hex()}")
    lines.append("a = " + " ".join(_hex_c(z) for z in H.base.a))
    lines.append("eigs = " + " ".join(_hex_c(z) for z in H.base.eigenvalues))
    for i in range(k):
        lines.append(f"frame{i} = " + " ".join(_hex_c(z) for z in H.frame[i]))
    for j in range(N + 1):
        lines.append(f"c{j} = " + " ".join(_hex_c(z) for z in H.series.coeffs[j]))
    return "\n".join(lines) + "\n"


def parse_unstable(text: str) -> UnstableSeries:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("unstable-series"):
        raise ValueError("not an unstable-series block")
    kv = {}
    for ln in lines[1:]:
        key, val = (s.strip() for s in ln.split("=", 1))
        kv[key] = val
    k, N = int(kv["k"]), int(kv["N"])
    a = np.array([_unhex_c(s) for s in kv["a"].split()])
    eigs = np.array([_unhex_c(s) for s in kv["eigs"].split()])
    saddle = SaddlePoint(
        a=a, eigenvalues=eigs, lam=_unhex_c(kv["lam"]),
        type_ok=bool(int(kv["type_ok"])), margin=float.fromhex(kv["margin"]),
        fix_residual=float.fromhex(kv["fix_residual"]))
    frame = np.array([[_unhex_c(s) for s in kv[f"frame{i}"].split()] for i in range(k)])
    coeffs = np.array([[_unhex_c(s) for s in kv[f"c{j}"].split()] for j in range(N + 1)])
    return UnstableSeries(base=saddle, frame=frame, series=VecSeries(coeffs),
                          rho0=float.fromhex(kv["rho0"]))
