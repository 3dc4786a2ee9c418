import numpy as np
import pytest

from gpw.errors import OrderMismatchError
from gpw.filtering import (
    binomial_weights,
    difference,
    difference_binomial,
    direct_approx_report,
    filter_P,
    filter_Q,
    modulus,
    p_multiplier,
    schrodinger,
    sparse_approx,
    time_domain_filter,
)
from gpw.graph import cycle_graph, path_graph, subset_geometry
from gpw.kernel import default_order, kernel
from gpw.sampling import certify, dual_frame
from gpw.spectral import apply_power, eigendecompose, out_of_band_energy, random_pw_signal


def rsig(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@pytest.fixture(scope="module")
def c32():
    return eigendecompose(cycle_graph(32))


def test_schrodinger_unitary_and_group(rng, c32):
    f = rsig(rng, 32)
    assert np.allclose(schrodinger(f, 0.0, c32), f)
    for t in (0.1, 1.0, 10.0):
        assert abs(np.linalg.norm(schrodinger(f, t, c32)) - np.linalg.norm(f)) < 1e-12 * np.linalg.norm(f)
    lhs = schrodinger(schrodinger(f, 0.7, c32), 1.9, c32)
    assert np.linalg.norm(lhs - schrodinger(f, 2.6, c32)) < 1e-12 * np.linalg.norm(f)
    j = 5
    phi = c32.eigenvectors[:, j]
    assert np.allclose(schrodinger(phi, 0.3, c32), np.exp(0.3j * c32.eigenvalues[j]) * phi)


def test_difference_routes_agree(rng, c32):
    f = rsig(rng, 32)
    for m in range(1, 5):
        for s in (0.2, 1.3):
            a = difference(f, s, m, c32)
            assert np.linalg.norm(a - difference_binomial(f, s, m, c32)) < 1e-11 * (1 + np.linalg.norm(f)) * 2**m
    assert np.allclose(difference(np.ones(32), 0.9, 3, c32), 0)


def test_modulus_basics(rng, c32):
    f = rsig(rng, 32)
    assert modulus(f, 0.0, 2, c32) == 0.0
    assert modulus(f, 1.0, 0, c32) == pytest.approx(np.linalg.norm(f))
    vals = [modulus(f, s, 2, c32) for s in np.linspace(0, 2, 15)]
    assert all(x <= y * (1 + 1e-12) for x, y in zip(vals, vals[1:]))
    brute = max(np.linalg.norm(difference(f, t, 2, c32)) for t in np.linspace(0, 0.5, 4001))
    assert modulus(f, 0.5, 2, c32) >= brute * (1 - 1e-12)


def test_modulus_lemma(rng):
    b = eigendecompose(path_graph(20))
    for _ in range(30):
        f = rsig(rng, 20)
        s = rng.uniform(0.01, 1.0)
        for m in range(1, 5):
            om = modulus(f, s, m, b)
            for n in (2, 3):
                assert modulus(f, n * s, m, b) <= n**m * om * (1 + 1e-8)
            for k in range(m + 1):
                assert om <= s**k * modulus(apply_power(f, k, b), s, m - k, b) * (1 + 1e-8) + 1e-12


def test_binomial_weights():
    assert list(binomial_weights(3)) == [3, -3, 1]
    assert binomial_weights(4).sum() == 1


def test_multiplier_at_zero():
    for m in (1, 2, 3):
        assert p_multiplier(0.0, 1.0, m, kernel(default_order(m))) == pytest.approx(1.0, abs=1e-9)


def test_filters_fix_constants(c32):
    k_ = kernel(4)
    assert np.allclose(filter_Q(np.ones(32), 1.0, k_, c32), 1, atol=1e-9)
    assert np.allclose(filter_P(np.ones(32), 1.0, 2, k_, c32), 1, atol=1e-9)


@pytest.mark.parametrize("m", [1, 2])
def test_filter_support(rng, m):
    b = eigendecompose(path_graph(32))
    k_ = kernel(default_order(m))
    f = rsig(rng, 32)
    for out in (filter_Q(f, 1.0, k_, b), filter_P(f, 1.0, m, k_, b)):
        assert out_of_band_energy(out, 1.0, b) < 1e-16 * np.vdot(f, f).real


def test_q_contraction(rng, c32):
    k_ = kernel(4)
    for _ in range(10):
        f = rsig(rng, 32)
        assert np.linalg.norm(filter_Q(f, 0.7, k_, c32)) <= np.linalg.norm(f) * (1 + 1e-9)


def test_order_mismatch(c32):
    with pytest.raises(OrderMismatchError):
        filter_P(np.ones(32), 1.0, 3, kernel(4), c32)


def test_q_against_time_domain_on_eigenvector():
    g = cycle_graph(6)
    b = eigendecompose(g)
    k_ = kernel(4)
    phi = b.eigenvectors[:, 1]  # lambda = 1, omega = 2
    spectral = filter_Q(phi, 2.0, k_, b)
    assert np.allclose(spectral, float(k_.multiplier(0.5)) * phi)
    oracle = time_domain_filter(g, phi, 2.0, 0, k_)
    assert np.max(np.abs(oracle - spectral)) < 1e-7


def test_direct_approx_examples(rng, c32):
    k_ = kernel(4)
    rep = direct_approx_report(np.ones(32), 1.0, 1, 0, k_, c32)
    assert rep.E == pytest.approx(0, abs=1e-12) and rep.filter_error < 1e-8 and rep.holds
    j = 25
    assert c32.eigenvalues[j] > 1
    rep = direct_approx_report(c32.eigenvectors[:, j], 1.0, 2, 1, k_, c32)
    assert rep.E == pytest.approx(1.0) and rep.holds


def test_sparse_approx(rng):
    g = path_graph(61)
    b = eigendecompose(g)
    omega = 0.49
    cert = certify(subset_geometry(g, range(0, 61, 2), 1), omega, b)
    frame = dual_frame(cert, b)
    k_ = kernel(4)
    approx, rep = sparse_approx(np.ones(61), cert, frame, omega, 2, k_, b)
    assert np.allclose(approx, 1, atol=1e-8) and rep.holds
    for _ in range(5):
        _, rep = sparse_approx(rsig(rng, 61), cert, frame, omega, 2, k_, b, k=1)
        assert rep.holds
    f = random_pw_signal(b, omega, rng)
    _, rep = sparse_approx(f, cert, frame, omega, 1, k_, b)
    assert rep.projection_error < 1e-8 * np.linalg.norm(f) and rep.holds
