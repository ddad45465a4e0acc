import math

import numpy as np
import pytest

import shiftlab as sl
from shiftlab.algebra import Poly, VecSeries, series_mul


def test_poly_eval_quadratic():
    p = Poly([-6, 0, 1])            # z^2 - 6
    assert sl.poly_eval(p, 3.0) == pytest.approx(3.0)


def test_poly_eval_zero_poly():
    p = Poly([0])
    assert sl.poly_eval(p, 17 + 1j) == 0


def test_poly_eval_at_root():
    # root of z^2 - 6 computed by an independent solver
    root = np.roots([1, 0, -6])[0]
    p = Poly([-6, 0, 1])
    assert abs(sl.poly_eval(p, root)) < 1e-12


def test_poly_trims_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1
    assert Poly([0, 0]).degree == 0


def test_eigenvalues_identity():
    eigs = sl.eigenvalues(np.eye(3))
    assert np.allclose(eigs, [1, 1, 1])


def test_eigenvalues_companion_cubic():
    # companion matrix of x^3 - 2*sqrt(6)*x^2 - 1
    s = 2 * math.sqrt(6.0)
    C = np.array([[0, 0, 1.0], [1, 0, 0], [0, 1, s]])
    eigs = sl.eigenvalues(C)
    oracle = np.roots([1, -s, 0, -1])
    oracle = oracle[np.argsort(-np.abs(oracle))]
    assert abs(eigs[0] - 4.9399577) < 1e-5
    assert np.allclose(np.abs(eigs[1:]), 0.44992, atol=1e-4)
    # product of roots equals the constant term sign: here +1
    assert abs(np.prod(eigs) - 1.0) < 1e-9
    assert np.allclose(np.sort_complex(eigs), np.sort_complex(oracle), atol=1e-8)


def test_eigenvalues_diagonal_sorted_by_modulus():
    eigs = sl.eigenvalues(np.diag([2.0, 0.5, -3.0]))
    assert np.allclose(eigs, [-3.0, 2.0, 0.5])


def test_eigenvalues_trace_det_identities():
    rng = np.random.default_rng(7)
    for k in (2, 3, 4, 6, 8):
        M = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        eigs = sl.eigenvalues(M)
        assert abs(np.prod(eigs) - np.linalg.det(M)) <= 1e-8 * max(1.0, abs(np.linalg.det(M)))
        assert abs(np.sum(eigs) - np.trace(M)) <= 1e-8 * max(1.0, abs(np.trace(M)))


def test_eigenvalues_rejects_large_k():
    with pytest.raises(ValueError):
        sl.eigenvalues(np.eye(9))


def test_series_scale_arg_basic():
    s = VecSeries.monomial(4, 3, coord=2, degree=1)
    lam = 4.94
    out = sl.series_scale_arg(s, 1.0 / lam)
    assert out.coeffs[1, 2] == pytest.approx(1.0 / lam)
    assert np.allclose(sl.series_scale_arg(s, 1.0).coeffs, s.coeffs)


def test_series_scale_arg_powers():
    # t + t^2 per coordinate, mu = 2 -> 2t + 4t^2
    c = np.zeros((3, 2), dtype=complex)
    c[1] = 1.0
    c[2] = 1.0
    out = VecSeries(c).scale_arg(2.0)
    assert np.allclose(out.coeffs[1], 2.0)
    assert np.allclose(out.coeffs[2], 4.0)


def test_series_scale_arg_rejects_zero():
    s = VecSeries.zero(3, 2)
    with pytest.raises(ValueError):
        s.scale_arg(0.0)


def test_series_mul_truncates():
    a = np.array([1.0, 1.0, 0.0], dtype=complex)   # 1 + t
    out = series_mul(a, a, 2)
    assert np.allclose(out, [1.0, 2.0, 1.0])
    out1 = series_mul(a, a, 1)
    assert out1.shape == (2,)


def test_series_ring_properties_random():
    # associativity and distributivity up to truncation order
    rng = np.random.default_rng(3)
    order = 6
    for _ in range(25):
        a, b, c = (rng.normal(size=order + 1) + 1j * rng.normal(size=order + 1)
                   for _ in range(3))
        ab_c = series_mul(series_mul(a, b, order), c, order)
        a_bc = series_mul(a, series_mul(b, c, order), order)
        assert np.allclose(ab_c, a_bc, atol=1e-12)
        dist = series_mul(a, b + c, order)
        assert np.allclose(dist, series_mul(a, b, order) + series_mul(a, c, order), atol=1e-12)


def test_vecseries_add_sub_linear_map():
    s = VecSeries.monomial(3, 2, coord=0)
    t = VecSeries.monomial(3, 2, coord=1)
    u = s + t - s
    assert np.allclose(u.coeffs, t.coeffs)
    B = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(s.linear_map(B).coeffs, t.coeffs)


def test_map_on_series_linear_case():
    # single linear factor behaves like its matrix on the series
    F = sl.ShiftComposition([sl.ShiftFactor(alpha=0.5, p=Poly([0, 2.0]), k=3)])
    s = VecSeries.monomial(4, 3, coord=2)
    out = sl.map_on_series(F, s)
    # (0,0,t) -> (0, t, 0.5*0 + 2t) = (0, t, 2t)
    assert np.allclose(out.coeffs[1], [0, 1.0, 2.0])


def test_map_on_series_square_factor():
    F = sl.flagship_map(c=0.0)      # p = z^2
    s = VecSeries.monomial(4, 3, coord=2)
    out = sl.map_on_series(F, s)    # (0,0,t) -> (0, t, t^2)
    expect = np.zeros((5, 3), dtype=complex)
    expect[1, 1] = 1.0
    expect[2, 2] = 1.0
    assert np.allclose(out.coeffs, expect)


def test_map_on_series_constant_fixed_point(flagship):
    root = np.roots([1, 0, -6])[0]          # alpha = 1: z^2 - 6 = 0
    a = np.full(3, root, dtype=complex)
    c = np.zeros((5, 3), dtype=complex)
    c[0] = a
    out = sl.map_on_series(flagship, VecSeries(c))
    assert np.allclose(out.coeffs[0], a)
    assert np.max(np.abs(out.coeffs[1:])) < 1e-14


def test_map_on_series_degree_zero_matches_eval(flagship):
    rng = np.random.default_rng(5)
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    c = np.zeros((3, 3), dtype=complex)
    c[0] = z
    out = sl.map_on_series(flagship, VecSeries(c))
    assert np.allclose(out.coeffs[0], flagship.eval(z))


def test_series_eval_commutes_with_composition(flagship):
    # evaluating map_on_series(scale_arg(S, 1/lam)) at t agrees with F(S(t/lam))
    rng = np.random.default_rng(11)
    c = rng.normal(size=(41, 3)) * 0.3 + 1j * rng.normal(size=(41, 3)) * 0.3
    c[0] = 0
    s = VecSeries(c)
    lam = 4.94
    composed = sl.map_on_series(flagship, s.scale_arg(1.0 / lam))
    ts = 0.1 * np.exp(2j * np.pi * np.arange(100) / 100)
    lhs = composed.eval(ts)
    rhs = flagship.eval(s.eval(ts / lam))
    # truncation error at |t| <= 0.1 with order-40 series is negligible
    assert np.max(np.abs(lhs - rhs)) < 1e-9
