import numpy as np
import pytest

from gpw.errors import DimensionTooSmallError, PatternMismatchError
from gpw.filtering import filter_P, filter_Q, schrodinger
from gpw.graph import cycle_graph, subset_geometry
from gpw.kernel import kernel
from gpw.lattice import (
    Torus,
    downsample_set,
    fft_filter,
    fft_out_of_band_energy,
    fft_pw_project,
    fft_schrodinger,
    parse_dims,
    torus_graph,
)
from gpw.sampling import certify, dual_frame, max_certified_bandwidth, reconstruct
from gpw.spectral import eigendecompose, out_of_band_energy, pw_project, random_pw_signal


def rsig(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@pytest.fixture(scope="module")
def t16():
    t = Torus((16, 16))
    return t, eigendecompose(t.graph)


def test_one_dimensional_is_cycle():
    assert torus_graph((4,)).edges == cycle_graph(4).edges


def test_small_torus_degree():
    g = torus_graph((3, 3))
    assert g.vertex_count == 9 and set(g.degree) == {4}


def test_dimension_too_small():
    with pytest.raises(DimensionTooSmallError):
        Torus((2, 5))


def test_parse_dims():
    assert parse_dims("16x16") == (16, 16)
    assert parse_dims("5") == (5,)


def test_index_roundtrip():
    t = Torus((4, 5, 6))
    assert all(t.index(t.coords(v)) == v for v in range(t.size))


@pytest.mark.parametrize("dims", [(5,), (6, 4), (16, 16), (32, 32), (3, 4, 5)])
def test_symbol_matches_dense(dims):
    t = Torus(dims)
    ev = np.sort(t.eigenvalues())
    assert ev.min() >= -1e-12 and ev.max() <= 4 * len(dims) + 1e-12
    if t.size <= 1024:
        assert np.allclose(ev, eigendecompose(t.graph).eigenvalues, atol=1e-9)


def test_fft_projection_matches_dense(rng, t16):
    t, b = t16
    f = rsig(rng, t.size)
    assert np.max(np.abs(fft_pw_project(f, 1.0, t) - pw_project(f, 1.0, b))) < 1e-9
    assert np.allclose(fft_pw_project(np.ones(t.size), 0.3, t), 1)
    assert fft_out_of_band_energy(f, 1.0, t) == pytest.approx(out_of_band_energy(f, 1.0, b), rel=1e-9)


def test_fft_filters_match_dense(rng, t16):
    t, b = t16
    f = rsig(rng, t.size)
    k_ = kernel(4)
    assert np.max(np.abs(fft_filter(f, 1.0, 0, k_, t) - filter_Q(f, 1.0, k_, b))) < 1e-9
    assert np.max(np.abs(fft_filter(f, 1.0, 2, k_, t) - filter_P(f, 1.0, 2, k_, b))) < 1e-9
    assert np.max(np.abs(fft_schrodinger(f, 0.8, t) - schrodinger(f, 0.8, b))) < 1e-9


def test_plane_wave_annihilated():
    t = Torus((12, 12))
    x, y = np.meshgrid(np.arange(12), np.arange(12), indexing="ij")
    wave = np.exp(2j * np.pi * (6 * x + 6 * y) / 12).ravel()  # symbol value 8
    assert np.linalg.norm(fft_pw_project(wave, 1.0, t)) < 1e-10


@pytest.mark.parametrize(
    "dims, pattern, K0, size",
    [((8, 8), "checker-complement", 4, 48), ((8, 8), "alternate-rows", 2, 32), ((8, 9), "third-rows", 1, 24)],
)
def test_patterns(dims, pattern, K0, size):
    t = Torus(dims)
    S = downsample_set(t, pattern)
    geo = subset_geometry(t.graph, S, 1)
    assert len(S) == size and geo.K[0] == K0 and geo.closure_is_full


def test_pattern_mismatch():
    with pytest.raises(PatternMismatchError):
        downsample_set(Torus((7, 8)), "checker-complement")
    with pytest.raises(PatternMismatchError):
        downsample_set(Torus((8, 8)), "third-rows")
    with pytest.raises(PatternMismatchError):
        downsample_set(Torus((8, 8)), "diagonal")


@pytest.mark.parametrize("dims, pattern", [((12, 12), "checker-complement"), ((12, 12), "alternate-rows"), ((12, 12), "third-rows")])
def test_pattern_reconstruction(rng, dims, pattern):
    t = Torus(dims)
    geo = subset_geometry(t.graph, downsample_set(t, pattern), 1)
    b = eigendecompose(t.graph)
    omega = 0.99 * max_certified_bandwidth(geo)
    cert = certify(geo, omega, b)
    assert cert.theorem_certified
    frame = dual_frame(cert, b)
    for _ in range(5):
        f = random_pw_signal(b, omega, rng)
        assert np.linalg.norm(reconstruct(f[list(frame.S)], frame) - f) < 1e-8 * np.linalg.norm(f)
