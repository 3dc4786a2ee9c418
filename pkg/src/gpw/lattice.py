"""Periodic lattices (discrete tori) diagonalized by the FFT.

On the torus ``C_{N_1} x ... x C_{N_d}`` the Laplacian acts on the Fourier
mode with frequencies ``xi_j = 2 pi k_j / N_j`` as multiplication by the
symbol ``4 sum_j sin^2(xi_j / 2)``. The torus stands in for ``Z^d``;
aperiodic boundary effects of the infinite lattice are not modelled.

Vertices are numbered in row-major (C) order of their coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionTooSmallError, PatternMismatchError
from .filtering import p_multiplier, q_multiplier
from .graph import Graph, build_graph, subset_geometry
from .kernel import FilterKernel
from .spectral import CUTOFF_ATOL

PATTERNS = ("checker-complement", "alternate-rows", "third-rows")


@dataclass(frozen=True)
class Torus:
    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise DimensionTooSmallError("need at least one dimension")
        for N in self.dims:
            if N < 3:
                raise DimensionTooSmallError(f"side {N} < 3 would create multi-edges or loops")

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @cached_property
    def symbol(self) -> np.ndarray:
        """Laplacian eigenvalue for every FFT frequency, shaped like ``dims``."""
        grids = np.meshgrid(*[np.arange(N) for N in self.dims], indexing="ij")
        return sum(4.0 * np.sin(np.pi * k / N) ** 2 for k, N in zip(grids, self.dims))

    @cached_property
    def graph(self) -> Graph:
        return torus_graph(self.dims)

    def index(self, coords) -> int:
        return int(np.ravel_multi_index(tuple(coords), self.dims))

    def coords(self, v: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(v, self.dims))

    def eigenvalues(self) -> np.ndarray:
        return np.sort(self.symbol.ravel())


def parse_dims(text: str) -> tuple[int, ...]:
    """``"16x16"`` -> ``(16, 16)``."""
    return tuple(int(x) for x in text.lower().split("x"))


def torus_graph(dims) -> Graph:
    """The ``2d``-regular periodic lattice graph."""
    dims = tuple(int(N) for N in dims)
    Torus(dims)  # validates sides
    edges = []
    for c in itertools.product(*[range(N) for N in dims]):
        u = int(np.ravel_multi_index(c, dims))
        for axis, N in enumerate(dims):
            nb = list(c)
            nb[axis] = (nb[axis] + 1) % N
            edges.append((u, int(np.ravel_multi_index(tuple(nb), dims))))
    return build_graph(edges, vertex_count=int(np.prod(dims)))


def _grid(f, torus: Torus) -> np.ndarray:
    return np.asarray(f, dtype=complex).reshape(torus.dims)


def apply_symbol(f, values: np.ndarray, torus: Torus) -> np.ndarray:
    F = np.fft.fftn(_grid(f, torus))
    return np.fft.ifftn(values * F).ravel()


def fft_pw_project(f, omega: float, torus: Torus) -> np.ndarray:
    """Projection onto ``PW_omega``: keep frequencies with symbol ``<= omega``."""
    return apply_symbol(f, (torus.symbol <= omega + CUTOFF_ATOL).astype(float), torus)


def fft_schrodinger(f, t: float, torus: Torus) -> np.ndarray:
    return apply_symbol(f, np.exp(1j * t * torus.symbol), torus)


def fft_filter(f, omega: float, m: int, k_: FilterKernel, torus: Torus) -> np.ndarray:
    """``P_h^{omega,m} f`` on the torus (``m = 0`` gives ``Q_h^omega f``)."""
    if m == 0:
        mult = q_multiplier(torus.symbol, omega, k_)
    else:
        mult = p_multiplier(torus.symbol, omega, m, k_)
    return apply_symbol(f, mult, torus)


def fft_out_of_band_energy(f, omega: float, torus: Torus) -> float:
    F = np.fft.fftn(_grid(f, torus)) / np.sqrt(torus.size)
    return float(np.sum(np.abs(F[torus.symbol > omega + CUTOFF_ATOL]) ** 2))


def downsample_set(torus: Torus, pattern: str) -> frozenset[int]:
    """Sampling sets on the torus.

    ``checker-complement``: every site except those with all coordinates
    even (``K_0 = 2d``, i.e. 4 on the plane). ``alternate-rows``: sites whose
    last coordinate is even (``K_0 = 2``). ``third-rows``: last coordinate
    divisible by 3 (``K_0 = 1``). The value of ``K_0`` and ``cl(S) = V`` are
    verified on the constructed set.
    """
    dims = torus.dims
    if pattern == "checker-complement":
        if any(N % 2 for N in dims):
            raise PatternMismatchError(f"checker-complement needs even sides, got {dims}")
        keep = lambda c: any(x % 2 for x in c)
        expected = 2 * torus.ndim
    elif pattern == "alternate-rows":
        if dims[-1] % 2:
            raise PatternMismatchError(f"alternate-rows needs an even last side, got {dims}")
        keep = lambda c: c[-1] % 2 == 0
        expected = 2
    elif pattern == "third-rows":
        if dims[-1] % 3:
            raise PatternMismatchError(f"third-rows needs a last side divisible by 3, got {dims}")
        keep = lambda c: c[-1] % 3 == 0
        expected = 1
    else:
        raise PatternMismatchError(f"unknown pattern {pattern!r}; choose from {PATTERNS}")
    S = frozenset(
        int(np.ravel_multi_index(c, dims)) for c in itertools.product(*[range(N) for N in dims]) if keep(c)
    )
    geo = subset_geometry(torus.graph, S, 1)
    assert geo.K[0] == expected and geo.closure_is_full, (geo.K, geo.exhaustion_level)
    return S
