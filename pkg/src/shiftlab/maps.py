"""Shift-like factors and their compositions: evaluation, inversion,
Jacobians, partial compositions, the automorphism metric, and the map
description file format.

A factor of type nu sends (z_1, ..., z_k) to
(z_2, ..., z_k, alpha*z_1 + p(z_{k-nu+1})).  All dynamics downstream use
nu = 1 with deg p >= 2; general nu and low degrees are accepted for plain
evaluation only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Poly, VecSeries, max_norm, series_mul


@dataclass(frozen=True)
class ShiftFactor:
    alpha: complex
    p: Poly
    k: int
    nu: int = 1

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")
        if self.k < 2:
            raise ValueError("k >= 2 required")
        if not 1 <= self.nu <= self.k - 1:
            raise ValueError("shift type nu must lie in [1, k-1]")

    @property
    def degree(self) -> int:
        return self.p.degree

    def eval(self, z):
        """Apply the factor; z may be a (k,) vector or an (m, k) batch."""
        z = np.asarray(z, dtype=complex)
        out = np.empty_like(z)
        out[..., :-1] = z[..., 1:]
        out[..., -1] = self.alpha * z[..., 0] + self.p(z[..., self.k - self.nu])
        return out

    def eval_inverse(self, w):
        """Inverse of a type-1 factor: z_1 = (w_k - p(w_{k-1}))/alpha, z_j = w_{j-1}."""
        if self.nu != 1:
            raise ValueError("inversion implemented for type-1 factors only")
        w = np.asarray(w, dtype=complex)
        out = np.empty_like(w)
        out[..., 1:] = w[..., :-1]
        out[..., 0] = (w[..., -1] - self.p(w[..., -2])) / self.alpha
        return out

    def jacobian(self, z) -> np.ndarray:
        J = np.zeros((self.k, self.k), dtype=complex)
        for i in range(self.k - 1):
            J[i, i + 1] = 1.0
        J[self.k - 1, 0] = self.alpha
        J[self.k - 1, self.k - self.nu] += self.p.deriv()(z[self.k - self.nu])
        return J

    def on_series(self, s: VecSeries) -> VecSeries:
        comps = [s.component(i) for i in range(1, self.k)]
        tail = self.alpha * s.component(0) + self.p.eval_series(s.component(self.k - self.nu))
        comps.append(tail)
        return s.with_components(comps)


@dataclass(frozen=True)
class ShiftComposition:
    """Ordered factors F_1, ..., F_m, applied first-to-last.

    The composition map is F = F_m o ... o F_1 and its degree is the product
    of the factor degrees.  factor_degree/bracket use 1-based indices with
    [n] = n mod m represented in {1, ..., m}, so [m] = m.
    """

    factors: tuple = field()

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        k = factors[0].k
        if any(f.k != k for f in factors):
            raise ValueError("all factors must share the same dimension k")
        object.__setattr__(self, "factors", factors)

    @property
    def k(self) -> int:
        return self.factors[0].k

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> int:
        d = 1
        for f in self.factors:
            d *= f.degree
        return d

    def bracket(self, n: int) -> int:
        """[n] = n mod m with representatives in {1, ..., m}."""
        return (n - 1) % self.m + 1

    def factor_degree(self, n: int) -> int:
        """d_{[n]} for any integer n."""
        return self.factors[self.bracket(n) - 1].degree

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        for f in self.factors:
            z = f.eval(z)
        return z

    def eval_inverse(self, w):
        w = np.asarray(w, dtype=complex)
        for f in reversed(self.factors):
            w = f.eval_inverse(w)
        return w

    def iterate(self, z, n: int):
        z = np.asarray(z, dtype=complex)
        step = self.eval if n >= 0 else self.eval_inverse
        for _ in range(abs(n)):
            z = step(z)
        return z

    def jacobian(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        J = np.eye(self.k, dtype=complex)
        for f in self.factors:
            J = f.jacobian(z) @ J
            z = f.eval(z)
        return J

    def partial(self, j: int) -> "ShiftComposition":
        """G_j: the composition of the first j factors."""
        if not 1 <= j <= self.m:
            raise ValueError(f"j must lie in [1, {self.m}]")
        return ShiftComposition(self.factors[:j])

    def on_series(self, s: VecSeries) -> VecSeries:
        for f in self.factors:
            s = f.on_series(s)
        return s


def map_on_series(F: ShiftComposition, s: VecSeries) -> VecSeries:
    """Truncated Taylor expansion of F composed with a vector series."""
    if s.dim != F.k:
        raise ValueError("series coefficient dimension must match the map")
    return F.on_series(s)


def partial_composition(F: ShiftComposition, j: int) -> ShiftComposition:
    return F.partial(j)


def _sphere_points(k: int, radius: float, samples: int, rng) -> np.ndarray:
    """Deterministic sample of the max-norm sphere of the given radius."""
    pts = rng.uniform(-1.0, 1.0, size=(samples, 2 * k))
    z = pts[:, :k] + 1j * pts[:, k:]
    norms = np.max(np.abs(z), axis=1)
    norms[norms == 0] = 1.0
    return z * (radius / norms)[:, None]


def auto_metric(f: ShiftComposition, g: ShiftComposition, terms: int = 8,
                samples: int = 128, seed: int = 0) -> float:
    """Estimate of d(f, g) = sum_n 2^-n d_n/(1+d_n), truncated at `terms`.

    d_n is the sup of |f-g| and |f^-1-g^-1| over the closed max-norm ball of
    radius n; the sup is estimated by sampling the boundary sphere (maximum
    principle), so this is a deterministic lower bound for a fixed seed.
    """
    if f.k != g.k:
        raise ValueError("maps must share the dimension k")
    rng = np.random.default_rng(seed)
    total = 0.0
    for n in range(1, terms + 1):
        pts = _sphere_points(f.k, float(n), samples, rng)
        fwd = np.max(np.abs(f.eval(pts) - g.eval(pts)), axis=1)
        bwd = np.max(np.abs(f.eval_inverse(pts) - g.eval_inverse(pts)), axis=1)
        dn = float(max(fwd.max(), bwd.max()))
        total += 2.0 ** -n * dn / (1.0 + dn)
    return total


# ---------------------------------------------------------------------------
# map description files
#
# Structured text, comments start with '#'.  A 'factor' line opens a new
# factor block with per-factor entries:
#     alpha = re,im
#     p = [c0, c1, ...]          real coefficients
#     p = [(re,im), c1, ...]     complex coefficients in parentheses
# Header keys before the first factor: k = <int>, nu = <int> (optional).
# ---------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    parts = text.strip().lstrip("(").rstrip(")").split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"bad complex literal: {text!r}")


def _parse_coeff_list(text: str):
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad coefficient list: {text!r}")
    body = body[1:-1].strip()
    if not body:
        return [0.0]
    coeffs, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            coeffs.append(parse_complex(cur))
            cur = ""
        else:
            cur += ch
    coeffs.append(parse_complex(cur))
    return coeffs


def parse_map_text(text: str) -> ShiftComposition:
    k = None
    nu = 1
    blocks = []
    cur = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.rstrip(":") == "factor":
            cur = {}
            blocks.append(cur)
            continue
        if "=" not in line:
            raise ValueError(f"unparseable line in map file: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if cur is None:
            if key == "k":
                k = int(val)
            elif key == "nu":
                nu = int(val)
            else:
                raise ValueError(f"unknown header key: {key!r}")
        else:
            if key == "alpha":
                cur["alpha"] = parse_complex(val)
            elif key == "p":
                cur["p"] = _parse_coeff_list(val)
            else:
                raise ValueError(f"unknown factor key: {key!r}")
    if k is None:
        raise ValueError("map file must set k")
    if not blocks:
        raise ValueError("map file has no factor blocks")
    factors = []
    for b in blocks:
        if "alpha" not in b or "p" not in b:
            raise ValueError("each factor needs alpha and p entries")
        factors.append(ShiftFactor(alpha=b["alpha"], p=Poly(b["p"]), k=k, nu=nu))
    return ShiftComposition(factors)


def load_map(path) -> ShiftComposition:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_map_text(fh.read())


def format_map(F: ShiftComposition) -> str:
    lines = [f"k = {F.k}"]
    if F.factors[0].nu != 1:
        lines.append(f"nu = {F.factors[0].nu}")
    for f in F.factors:
        lines.append("factor")
        lines.append(f"alpha = {f.alpha.real!r},{f.alpha.imag!r}")
        cs = ", ".join(
            f"({c.real!r},{c.imag!r})" if c.imag != 0 else repr(c.real)
            for c in f.p.coeffs
        )
        lines.append(f"p = [{cs}]")
    return "\n".join(lines) + "\n"


def flagship_map(alpha: complex = 1.0, c: complex = -6.0, k: int = 3) -> ShiftComposition:
    """Single-factor k=3 workhorse used throughout the tests: p(z) = z^2 + c."""
    return ShiftComposition([ShiftFactor(alpha=alpha, p=Poly([c, 0, 1]), k=k)])
