import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gpw.errors import BasisMismatchError, NotBandlimitedError, TooLargeError
from gpw.graph import cycle_graph, laplacian_apply, path_graph, random_connected_graph, star_graph
from gpw.spectral import (
    apply_power,
    bernstein_check,
    best_approx_error,
    eigendecompose,
    forward,
    inverse,
    is_pw,
    laplacian_residuals,
    pw_project,
    random_pw_signal,
)


def rsig(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@pytest.mark.parametrize("n", [3, 5, 8, 13])
def test_cycle_spectrum_formula(n):
    expected = np.sort(2 - 2 * np.cos(2 * np.pi * np.arange(n) / n))
    assert np.allclose(eigendecompose(cycle_graph(n)).eigenvalues, expected, atol=1e-12)


def test_c3_spectrum():
    assert np.allclose(eigendecompose(cycle_graph(3)).eigenvalues, [0, 3, 3], atol=1e-12)


def test_path_against_independent_solver():
    g = path_graph(40)
    ref = np.sort(np.linalg.eigvalsh(g.laplacian_matrix()))
    assert np.allclose(eigendecompose(g).eigenvalues, ref, atol=1e-9)
    # standard path spectrum uses denominator N
    closed = np.sort(2 - 2 * np.cos(np.pi * np.arange(40) / 40))
    assert np.allclose(ref, closed, atol=1e-9)


def test_basis_invariants(rng):
    g = random_connected_graph(40, 0.15, rng)
    b = eigendecompose(g)
    assert abs(b.eigenvalues[0]) < 1e-10
    assert b.lambda_max <= 2 * g.max_degree + 1e-8
    assert np.allclose(b.eigenvectors.T @ b.eigenvectors, np.eye(40), atol=1e-10)
    assert np.all(laplacian_residuals(b) <= 1e-10 * (1 + b.eigenvalues))


def test_degenerate_eigenspaces_are_reproducible():
    b1 = eigendecompose(cycle_graph(12))
    b2 = eigendecompose(cycle_graph(12))
    assert np.array_equal(b1.eigenvectors, b2.eigenvectors)
    assert np.all(laplacian_residuals(b1) < 1e-12)
    assert np.allclose(b1.eigenvectors.T @ b1.eigenvectors, np.eye(12), atol=1e-12)


def test_too_large():
    with pytest.raises(TooLargeError, match="lattice"):
        eigendecompose(path_graph(30), max_dense=20)


def test_forward_examples(rng):
    b = eigendecompose(cycle_graph(8))
    a = forward(b.eigenvectors[:, 5], b).coefficients
    assert np.allclose(a, np.eye(8)[5], atol=1e-12)
    assert np.allclose(forward(np.zeros(8), b).coefficients, 0)
    f = rsig(rng, 8)
    assert np.abs(inverse(forward(f, b)) - f).max() < 1e-12
    assert np.sum(np.abs(forward(f, b).coefficients) ** 2) == pytest.approx(np.vdot(f, f).real, rel=1e-10)


def test_basis_mismatch():
    b = eigendecompose(cycle_graph(8))
    with pytest.raises(BasisMismatchError):
        forward(np.ones(7), b)


def test_projection_examples(rng):
    b = eigendecompose(cycle_graph(6))
    f = rsig(rng, 6)
    assert np.allclose(pw_project(f, b.lambda_max, b), f)
    assert np.allclose(pw_project(f, 0.0, b), f.mean() * np.ones(6))
    # C_6 eigenvalues {0, 1, 1, 3, 3, 4}
    assert np.allclose(b.eigenvalues, [0, 1, 1, 3, 3, 4], atol=1e-12)
    phi0, phi5 = b.eigenvectors[:, 0], b.eigenvectors[:, 5]
    assert np.allclose(pw_project(phi0 + phi5, 1.0, b), phi0, atol=1e-12)


def test_cutoff_is_inclusive():
    b = eigendecompose(cycle_graph(6))
    phi1 = b.eigenvectors[:, 1]
    assert np.allclose(pw_project(phi1, 1.0, b), phi1)
    assert b.pw_dimension(1.0) == 3


def test_is_pw_examples(rng):
    b = eigendecompose(path_graph(10))
    assert all(is_pw(np.ones(10), w, b) for w in (0.0, 0.5, 4.0))
    assert not is_pw(b.eigenvectors[:, 6], b.eigenvalues[6] - 1e-3, b)
    assert is_pw(pw_project(rsig(rng, 10), 0.7, b), 0.7, b)


@st.composite
def projector_case(draw):
    n = draw(st.integers(3, 20))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    g = random_connected_graph(n, draw(st.floats(0.0, 0.4)), rng)
    omega = draw(st.floats(0.0, 2.0 * g.max_degree))
    return g, rsig(rng, n), rsig(rng, n), omega


@settings(max_examples=100, deadline=None)
@given(projector_case())
def test_projector_properties(case):
    g, f, h, omega = case
    b = eigendecompose(g)
    P = lambda x: pw_project(x, omega, b)
    tol = 1e-10 * (1 + np.linalg.norm(f)) * (1 + np.linalg.norm(h))
    assert np.linalg.norm(P(P(f)) - P(f)) <= tol
    assert abs(np.vdot(h, P(f)) - np.vdot(P(h), f)) <= tol
    assert np.linalg.norm(P(f)) <= np.linalg.norm(f) + tol


def test_apply_power(rng):
    b = eigendecompose(cycle_graph(12))
    f = rsig(rng, 12)
    assert np.allclose(apply_power(f, 0, b), f)
    Lf = laplacian_apply(b.graph, f)
    assert np.linalg.norm(apply_power(f, 1, b) - Lf) / np.linalg.norm(Lf) < 1e-10
    half = apply_power(apply_power(f, 0.5, b), 0.5, b)
    assert np.linalg.norm(half - Lf) < 1e-10 * np.linalg.norm(Lf)


def test_bernstein_examples(rng):
    b = eigendecompose(path_graph(32))
    rep = bernstein_check(np.ones(32), 0.3, 4, b)
    assert rep["holds"] and all(r["norm_Lk_f"] < 1e-10 for r in rep["checks"])
    j = 9
    rep = bernstein_check(b.eigenvectors[:, j], b.eigenvalues[j], 5, b)
    for r in rep["checks"]:
        assert r["norm_Lk_f"] == pytest.approx(b.eigenvalues[j] ** r["k"], rel=1e-10)
    for _ in range(10):
        assert bernstein_check(random_pw_signal(b, 1.0, rng), 1.0, 4, b)["holds"]
    with pytest.raises(NotBandlimitedError):
        bernstein_check(rsig(rng, 32), 1.0, 3, b)


def test_projection_outputs_satisfy_bernstein(rng):
    for n in (10, 25):
        b = eigendecompose(random_connected_graph(n, 0.2, rng))
        for omega in (0.2, 1.0, 3.0):
            assert bernstein_check(pw_project(rsig(rng, n), omega, b), omega, 6, b)["holds"]


def test_best_approx_examples(rng):
    b = eigendecompose(cycle_graph(16))
    assert best_approx_error(random_pw_signal(b, 1.0, rng), 1.0, b)["E"] < 1e-12
    j = 10
    rep = best_approx_error(b.eigenvectors[:, j], 1.0, b, s=(1, 2))
    assert rep["E"] == pytest.approx(1.0)
    assert rep["bounds"][2.0] == pytest.approx(b.eigenvalues[j] ** 2)
    for _ in range(20):
        rep = best_approx_error(rsig(rng, 16), 1.0, b, s=(1, 2))
        assert rep["holds"]


def test_best_approx_monotone(rng):
    b = eigendecompose(star_graph(6))
    f = rsig(rng, 7)
    errs = [best_approx_error(f, w, b)["E"] for w in np.linspace(0, b.lambda_max, 30)]
    assert all(x >= y - 1e-14 for x, y in zip(errs, errs[1:]))
    assert errs[-1] < 1e-12
