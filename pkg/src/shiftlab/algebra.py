"""Shared numeric kernels: complex vectors, dense polynomials, small complex
matrices with eigenvalue extraction, and truncated power series with vector
coefficients.

Everything here is immutable after construction and safe to share across
threads; all operations are pure functions.
"""

from __future__ import annotations

import numpy as np

MAX_EIG_DIM = 8
_EIG_RESIDUAL_TOL = 1e-9


class EigenvalueError(RuntimeError):
    """Raised when polished characteristic roots fail the residual check."""


def cvec(entries) -> np.ndarray:
    """Coerce to a fixed-length complex vector (k >= 2)."""
    z = np.asarray(entries, dtype=complex)
    if z.ndim != 1 or z.size < 2:
        raise ValueError("need a 1-d complex vector with k >= 2 entries")
    return z


def max_norm(z) -> float:
    """Canonical norm: max_i |z_i| (works on batches along the last axis)."""
    return float(np.max(np.abs(z))) if np.ndim(z) == 1 else np.max(np.abs(z), axis=-1)


class Poly:
    """Dense polynomial over C, coefficients in ascending degree.

    Trailing zero coefficients are trimmed, so the leading coefficient is
    nonzero unless this is the zero polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        nz = np.flatnonzero(c != 0)
        self.coeffs = c[: nz[-1] + 1].copy() if nz.size else np.zeros(1, dtype=complex)
        self.coeffs.setflags(write=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, z):
        """Horner evaluation; broadcasts over arrays."""
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc

    def deriv(self) -> "Poly":
        if self.degree == 0:
            return Poly([0])
        return Poly(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def eval_series(self, s: np.ndarray) -> np.ndarray:
        """Horner evaluation on a truncated scalar series (1-d coeff array)."""
        order = len(s) - 1
        acc = np.zeros(order + 1, dtype=complex)
        for c in self.coeffs[::-1]:
            acc = series_mul(acc, s, order)
            acc[0] += c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __eq__(self, other):
        return isinstance(other, Poly) and np.array_equal(self.coeffs, other.coeffs)


def series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """Product of two scalar series truncated at the given order."""
    full = np.convolve(a, b)
    out = np.zeros(order + 1, dtype=complex)
    n = min(len(full), order + 1)
    out[:n] = full[:n]
    return out


def poly_eval(p: Poly, z: complex) -> complex:
    return complex(p(z))


def _char_poly(M: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients, descending degree, monic.

    Faddeev-LeVerrier recurrence; exact up to rounding for the tiny k used
    here.
    """
    k = M.shape[0]
    coeffs = np.zeros(k + 1, dtype=complex)
    coeffs[0] = 1.0
    B = np.eye(k, dtype=complex)
    for i in range(1, k + 1):
        if i > 1:
            B = M @ B + coeffs[i - 1] * np.eye(k)
        coeffs[i] = -np.trace(M @ B) / i
    return coeffs


def eigenvalues(M) -> np.ndarray:
    """Eigenvalues of a k x k complex matrix (k <= 8), descending modulus.

    Roots of the characteristic polynomial (companion form) polished by a few
    Newton steps.  The polished roots must leave a relative characteristic
    residual below 1e-9, otherwise EigenvalueError is raised.
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    k = A.shape[0]
    if k > MAX_EIG_DIM:
        raise ValueError(f"eigen-extraction supports k <= {MAX_EIG_DIM}")
    cp = _char_poly(A)
    roots = np.roots(cp)
    dp = cp[:-1] * np.arange(k, 0, -1)
    for _ in range(4):
        pv = np.polyval(cp, roots)
        dv = np.polyval(dp, roots)
        step = np.where(np.abs(dv) > 1e-300, pv / np.where(dv == 0, 1, dv), 0)
        roots = roots - step
    # relative backward error of each root against the characteristic polynomial
    scale = np.zeros(k, dtype=float)
    for j, c in enumerate(cp):
        scale += np.abs(c) * np.abs(roots) ** (k - j)
    resid = np.abs(np.polyval(cp, roots)) / np.maximum(scale, 1e-300)
    if np.any(resid > _EIG_RESIDUAL_TOL):
        raise EigenvalueError(f"characteristic residual {resid.max():.3e} above tolerance")
    order = np.argsort(-np.abs(roots), kind="stable")
    return roots[order]


class VecSeries:
    """Truncated one-variable power series with C^k coefficients.

    coeffs[j] is the coefficient of t^j; arithmetic truncates at the fixed
    order N.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 2:
            raise ValueError("coeffs must have shape (N+1, k)")
        self.coeffs = c.copy()
        self.coeffs.setflags(write=False)

    @classmethod
    def zero(cls, order: int, k: int) -> "VecSeries":
        return cls(np.zeros((order + 1, k), dtype=complex))

    @classmethod
    def monomial(cls, order: int, k: int, coord: int, degree: int = 1) -> "VecSeries":
        c = np.zeros((order + 1, k), dtype=complex)
        c[degree, coord] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    def component(self, i: int) -> np.ndarray:
        return self.coeffs[:, i].copy()

    def with_components(self, comps) -> "VecSeries":
        return VecSeries(np.stack(comps, axis=1))

    def __add__(self, other):
        if isinstance(other, VecSeries):
            return VecSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += np.asarray(other, dtype=complex)
        return VecSeries(c)

    def __sub__(self, other):
        if isinstance(other, VecSeries):
            return VecSeries(self.coeffs - other.coeffs)
        c = self.coeffs.copy()
        c[0] -= np.asarray(other, dtype=complex)
        return VecSeries(c)

    def __mul__(self, scalar):
        return VecSeries(self.coeffs * scalar)

    __rmul__ = __mul__

    def linear_map(self, B) -> "VecSeries":
        """Apply a k x k matrix to every coefficient."""
        return VecSeries(self.coeffs @ np.asarray(B, dtype=complex).T)

    def scale_arg(self, mu: complex) -> "VecSeries":
        """Substitute t -> mu*t: coefficient j picks up mu**j.  mu = 0 rejected."""
        if mu == 0:
            raise ValueError("argument scale mu must be nonzero")
        powers = np.power(complex(mu), np.arange(self.order + 1))
        return VecSeries(self.coeffs * powers[:, None])

    def eval(self, t):
        """Horner evaluation; t may be a scalar or a 1-d array of points."""
        ts = np.asarray(t, dtype=complex)
        if ts.ndim == 0:
            acc = np.zeros(self.dim, dtype=complex)
            for row in self.coeffs[::-1]:
                acc = acc * ts + row
            return acc
        acc = np.zeros(ts.shape + (self.dim,), dtype=complex)
        for row in self.coeffs[::-1]:
            acc = acc * ts[..., None] + row
        return acc

    def max_coeff_diff(self, other: "VecSeries") -> float:
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def __repr__(self):
        return f"VecSeries(order={self.order}, k={self.dim})"


def series_scale_arg(s: VecSeries, mu: complex) -> VecSeries:
    return s.scale_arg(mu)
