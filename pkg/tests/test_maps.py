import math

import numpy as np
import pytest

import shiftlab as sl
from shiftlab.algebra import Poly, VecSeries
from shiftlab.maps import ShiftFactor, ShiftComposition, parse_map_text, format_map


def _poly_compose_oracle(F, n_iter, order):
    """Independent expansion of F^n(0,...,0,t) via numpy polynomial ops."""
    from numpy.polynomial import polynomial as P
    k = F.k
    comps = [np.zeros(2) for _ in range(k - 1)] + [np.array([0.0, 1.0])]
    for _ in range(n_iter):
        for f in F.factors:
            tail = np.zeros(1)
            acc = np.array([1.0])
            src = comps[k - f.nu]
            for c in f.p.coeffs:
                tail = P.polyadd(tail, c.real * acc)
                acc = P.polymul(acc, src)[: order + 1]
                acc = acc[: order + 1]
            tail = P.polyadd(tail, f.alpha.real * comps[0])
            comps = comps[1:] + [tail[: order + 1]]
    return comps


def test_eval_basic_example():
    F = sl.flagship_map(c=0.0)
    assert np.allclose(F.eval([1, 2, 3]), [2, 3, 10])


def test_eval_fixed_point(flagship):
    root = np.roots([1, 0, -6])[0]          # quadratic oracle: z^2 + (a-1)z - 6
    a = np.full(3, root)
    assert sl.max_norm(flagship.eval(a) - a) < 1e-12


def test_degree_law_single_eval():
    # two factors: degree of the last coordinate of F(0,...,0,t) equals d1*d2
    F = ShiftComposition([
        ShiftFactor(alpha=1.0, p=Poly([0, 0, 1.0]), k=3),
        ShiftFactor(alpha=2.0, p=Poly([1.0, 0, 0, 1.0]), k=3),
    ])
    assert F.degree == 6
    comps = _poly_compose_oracle(F, 1, 50)
    deg = max(i for i, c in enumerate(comps[-1]) if abs(c) > 1e-9)
    assert deg == 6
    s = sl.map_on_series(F, VecSeries.monomial(50, 3, coord=2))
    deg_series = max(i for i in range(51) if np.max(np.abs(s.coeffs[i])) > 1e-9)
    assert deg_series == 6


def test_degree_law_iterates():
    # top coordinate of F^n(0,...,0,t) has degree d^n for n <= 3
    F = sl.flagship_map(c=0.0)
    order = 9
    s = VecSeries.monomial(order, 3, coord=2)
    for n in (1, 2, 3):
        s = sl.map_on_series(F, s)
        deg = max(i for i in range(order + 1) if np.max(np.abs(s.coeffs[i, 2])) > 1e-9)
        assert deg == 2 ** n


def test_eval_inverse_example():
    F = sl.flagship_map(c=0.0)
    assert np.allclose(F.eval_inverse([2, 3, 10]), [1, 2, 3])


def test_eval_inverse_fixed_point(flagship):
    root = np.roots([1, 0, -6])[0]
    a = np.full(3, root)
    assert sl.max_norm(flagship.eval_inverse(a) - a) < 1e-12


def test_inverse_roundtrip_property(flagship):
    rng = np.random.default_rng(0)
    Z = rng.uniform(-10, 10, (1000, 3)) + 1j * rng.uniform(-10, 10, (1000, 3))
    back = flagship.eval_inverse(flagship.eval(Z))
    err = np.max(np.abs(back - Z) / (1.0 + np.abs(Z)))
    assert err < 1e-10


def test_inverse_rejects_general_nu():
    f = ShiftFactor(alpha=1.0, p=Poly([0, 1.0]), k=3, nu=2)
    with pytest.raises(ValueError):
        f.eval_inverse(np.zeros(3))


def test_jacobian_det_constant(flagship):
    # k=3 single factor: det = alpha at any point (oracle: np.linalg.det)
    rng = np.random.default_rng(2)
    dets = []
    for _ in range(50):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        dets.append(np.linalg.det(flagship.jacobian(z)))
    dets = np.array(dets)
    assert np.max(np.abs(dets - dets[0])) < 1e-9 * max(1.0, abs(dets[0]))
    assert abs(dets[0] - 1.0) < 1e-12   # alpha = 1, k = 3


def test_jacobian_vs_finite_differences(flagship):
    rng = np.random.default_rng(3)
    h = 1e-7
    for _ in range(20):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        J = flagship.jacobian(z)
        fd = np.zeros((3, 3), dtype=complex)
        for j in range(3):
            dz = np.zeros(3, dtype=complex)
            dz[j] = h
            fd[:, j] = (flagship.eval(z + dz) - flagship.eval(z - dz)) / (2 * h)
        assert np.max(np.abs(J - fd)) < 1e-6


def test_jacobian_char_poly_at_saddle(flagship):
    root = math.sqrt(6.0)
    J = flagship.jacobian(np.full(3, root))
    # symbolic determinant oracle: char poly is x^3 - 2*sqrt(6) x^2 - 1
    eigs = sl.eigenvalues(J)
    coeffs = np.poly(eigs)          # monic, descending
    assert np.allclose(coeffs, [1.0, -2 * root, 0.0, -1.0], atol=1e-8)


def test_partial_composition(flagship):
    F2 = ShiftComposition([flagship.factors[0],
                           ShiftFactor(alpha=2.0, p=Poly([0, 0, 0, 1.0]), k=3)])
    assert sl.partial_composition(F2, F2.m) is not F2
    assert sl.partial_composition(F2, F2.m).factors == F2.factors
    G1 = sl.partial_composition(F2, 1)
    assert G1.m == 1
    rng = np.random.default_rng(4)
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    G2 = sl.partial_composition(F2, 2)
    assert np.allclose(G2.eval(z), F2.factors[1].eval(F2.factors[0].eval(z)))
    with pytest.raises(ValueError):
        sl.partial_composition(F2, 3)


def test_bracket_indexing():
    F = ShiftComposition([
        ShiftFactor(alpha=1.0, p=Poly([0, 0, 1.0]), k=3),
        ShiftFactor(alpha=1.0, p=Poly([0, 0, 0, 1.0]), k=3),
    ])
    # [n] = n mod m with representatives {1..m}: [m] = m, not 0
    assert F.bracket(2) == 2
    assert F.bracket(1) == 1
    assert F.bracket(3) == 1
    assert F.bracket(0) == 2
    assert F.bracket(-1) == 1
    assert F.factor_degree(2) == 3


def test_auto_metric_identical_maps(flagship):
    assert sl.auto_metric(flagship, flagship, terms=4, samples=32) == 0.0


def test_auto_metric_bounded_and_symmetric(flagship):
    G = sl.flagship_map(alpha=0.5, c=-6.0)
    d1 = sl.auto_metric(flagship, G, terms=6, samples=32, seed=9)
    d2 = sl.auto_metric(G, flagship, terms=6, samples=32, seed=9)
    assert 0 < d1 < 1.0
    assert d1 == pytest.approx(d2, abs=0)


def test_map_file_roundtrip(flagship, tmp_path):
    text = format_map(flagship)
    F2 = parse_map_text(text)
    assert F2.k == 3 and F2.m == 1
    assert np.allclose(F2.factors[0].p.coeffs, flagship.factors[0].p.coeffs)
    path = tmp_path / "m.map"
    path.write_text(text)
    F3 = sl.load_map(path)
    rng = np.random.default_rng(8)
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert np.allclose(F3.eval(z), flagship.eval(z))


def test_map_file_complex_coeffs():
    text = "k = 3\nfactor\nalpha = 0.5,-1\np = [(0,1), 2, 1]\n"
    F = parse_map_text(text)
    assert F.factors[0].alpha == 0.5 - 1j
    assert F.factors[0].p.coeffs[0] == 1j


def test_map_file_rejects_garbage():
    with pytest.raises(ValueError):
        parse_map_text("k = 3\nfactor\nalpha = 1,0\nq = [1]\n")
    with pytest.raises(ValueError):
        parse_map_text("factor\nalpha = 1,0\np = [1]\n")
