"""Spectral Fourier transform on a finite graph.

The transform is the expansion in an orthonormal eigenbasis of the dense
Laplacian. Paley-Wiener spaces ``PW_omega`` are spanned by the eigenvectors
with eigenvalue in the closed interval ``[0, omega]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import BasisMismatchError, NotBandlimitedError, TooLargeError
from .graph import Graph, laplacian_apply

MAX_DENSE = 5000
DEFAULT_TOL = 1e-10
CUTOFF_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    graph: Graph

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def band(self, omega: float) -> np.ndarray:
        """Boolean mask of eigenvalues in ``[0, omega]`` (inclusive)."""
        return self.eigenvalues <= omega + CUTOFF_ATOL

    def pw_dimension(self, omega: float) -> int:
        return int(np.count_nonzero(self.band(omega)))

    def check(self, f) -> np.ndarray:
        if isinstance(f, SpectralSignal):
            raise BasisMismatchError("expected a vertex-domain signal, got spectral coefficients")
        arr = np.asarray(f)
        if arr.ndim != 1 or arr.shape[0] != self.size:
            raise BasisMismatchError(
                f"signal of shape {arr.shape} does not match a basis of size {self.size}"
            )
        return arr.astype(complex)


@dataclass(frozen=True, eq=False)
class SpectralSignal:
    """Coefficients ``a_j = <f, phi_j>`` with respect to ``basis``."""

    coefficients: np.ndarray
    basis: SpectralBasis


def eigendecompose(g: Graph, max_dense: int = MAX_DENSE) -> SpectralBasis:
    """Full eigendecomposition of the Laplacian of ``g``.

    Repeated eigenvalues get a reproducible basis of their eigenspace: the
    projector onto the eigenspace is applied to ``e_0, e_1, ...`` in index
    order and the results are Gram-Schmidt orthonormalized. Simple
    eigenvectors are sign-normalized so their largest entry is positive.
    """
    if g.vertex_count > max_dense:
        raise TooLargeError(
            f"{g.vertex_count} vertices exceeds the dense limit {max_dense}; "
            "use gpw.lattice for circulant tori"
        )
    lam, vec = linalg.eigh(g.laplacian_matrix())
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    vec = _canonicalize(lam, vec)
    lam.setflags(write=False)
    vec.setflags(write=False)
    return SpectralBasis(lam, vec, g)


def _canonicalize(lam: np.ndarray, vec: np.ndarray) -> np.ndarray:
    n = lam.shape[0]
    tol = 1e-9 * (1.0 + abs(lam[-1]))
    out = np.empty_like(vec)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and lam[stop] - lam[stop - 1] <= tol:
            stop += 1
        block = vec[:, start:stop]
        if stop - start == 1:
            v = block[:, 0]
            out[:, start] = v if v[np.argmax(np.abs(v))] > 0 else -v
        else:
            out[:, start:stop] = _index_order_basis(block)
        start = stop
    return out


def _index_order_basis(Q: np.ndarray) -> np.ndarray:
    k = Q.shape[1]
    basis: list[np.ndarray] = []
    for i in range(Q.shape[0]):
        v = Q @ Q[i]  # projector applied to e_i
        for _ in range(2):
            for b in basis:
                v = v - (b @ v) * b
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            basis.append(v / nv)
            if len(basis) == k:
                break
    return np.column_stack(basis)


def forward(f, basis: SpectralBasis) -> SpectralSignal:
    f = basis.check(f)
    return SpectralSignal(basis.eigenvectors.T @ f, basis)


def inverse(a: SpectralSignal) -> np.ndarray:
    return a.basis.eigenvectors @ a.coefficients


def _coeffs(f, basis: SpectralBasis) -> np.ndarray:
    return basis.eigenvectors.T @ basis.check(f)


def _synth(c: np.ndarray, basis: SpectralBasis) -> np.ndarray:
    return basis.eigenvectors @ c


def pw_project(f, omega: float, basis: SpectralBasis) -> np.ndarray:
    """Orthogonal projection of ``f`` onto ``PW_omega``."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    c = _coeffs(f, basis)
    c[~basis.band(omega)] = 0.0
    return _synth(c, basis)


def out_of_band_energy(f, omega: float, basis: SpectralBasis) -> float:
    """``sum_{lambda_j > omega} |a_j|^2``."""
    c = _coeffs(f, basis)
    return float(np.sum(np.abs(c[~basis.band(omega)]) ** 2))


def is_pw(f, omega: float, basis: SpectralBasis, tol: float = DEFAULT_TOL) -> bool:
    f = basis.check(f)
    return out_of_band_energy(f, omega, basis) <= tol**2 * float(np.vdot(f, f).real)


def apply_power(f, s: float, basis: SpectralBasis) -> np.ndarray:
    """``L^s f`` for real ``s >= 0`` (``0^0 = 1``)."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        return basis.check(f).copy()
    lam = np.clip(basis.eigenvalues, 0.0, None)
    return _synth(lam**s * _coeffs(f, basis), basis)


def apply_multiplier(f, values: np.ndarray, basis: SpectralBasis) -> np.ndarray:
    """Multiply the j-th spectral coefficient by ``values[j]``."""
    return _synth(np.asarray(values) * _coeffs(f, basis), basis)


def power_norm(f, s: float, basis: SpectralBasis) -> float:
    """``||L^s f||`` computed from the coefficients."""
    lam = np.clip(basis.eigenvalues, 0.0, None)
    c = _coeffs(f, basis)
    w = np.ones_like(lam) if s == 0 else lam**s
    return float(np.linalg.norm(w * c))


def bernstein_check(f, omega: float, k_max: int, basis: SpectralBasis, tol: float = DEFAULT_TOL) -> dict:
    """Verify ``||L^k f|| <= omega^k ||f||`` for ``k = 1..k_max``.

    Raises :class:`NotBandlimitedError` when ``f`` is not in ``PW_omega``.
    """
    f = basis.check(f)
    if not is_pw(f, omega, basis, tol):
        raise NotBandlimitedError(f"signal has spectral energy above omega={omega}")
    nf = float(np.linalg.norm(f))
    rows = []
    for k in range(1, k_max + 1):
        lhs = power_norm(f, k, basis)
        rhs = omega**k * nf
        rows.append({"k": k, "norm_Lk_f": lhs, "bound": rhs, "holds": bool(lhs <= rhs * (1 + tol) + tol)})
    return {"omega": omega, "norm_f": nf, "checks": rows, "holds": all(r["holds"] for r in rows)}


def best_approx_error(f, omega: float, basis: SpectralBasis, s=(1.0,), tol: float = DEFAULT_TOL) -> dict:
    """Distance from ``f`` to ``PW_omega`` and the smoothness bounds ``omega^-s ||L^s f||``."""
    f = basis.check(f)
    E = float(np.sqrt(out_of_band_energy(f, omega, basis)))
    bounds = {}
    if omega > 0:
        for si in s:
            bounds[float(si)] = omega ** (-si) * power_norm(f, si, basis)
    holds = all(E <= b * (1 + tol) + tol * (1 + np.linalg.norm(f)) for b in bounds.values())
    return {"omega": omega, "E": E, "bounds": bounds, "holds": bool(holds)}


def laplacian_residuals(basis: SpectralBasis) -> np.ndarray:
    """``||L phi_j - lambda_j phi_j||`` per eigenpair, using the matrix-free Laplacian."""
    g = basis.graph
    return np.array(
        [
            np.linalg.norm(laplacian_apply(g, basis.eigenvectors[:, j]) - basis.eigenvalues[j] * basis.eigenvectors[:, j])
            for j in range(basis.size)
        ]
    )


def spectrum_report(basis: SpectralBasis, tol: float = 1e-8) -> dict:
    g = basis.graph
    gram = basis.eigenvectors.T @ basis.eigenvectors
    res = laplacian_residuals(basis)
    return {
        "vertex_count": g.vertex_count,
        "max_degree": g.max_degree,
        "eigenvalues": [float(x) for x in basis.eigenvalues],
        "lambda_min_is_zero": bool(abs(basis.eigenvalues[0]) <= tol),
        "within_2D": bool(basis.lambda_max <= 2 * g.max_degree + tol),
        "max_residual": float(res.max()),
        "orthonormal": bool(np.abs(gram - np.eye(basis.size)).max() <= tol),
    }


def random_pw_signal(basis: SpectralBasis, omega: float, rng: np.random.Generator) -> np.ndarray:
    """Random complex signal in ``PW_omega`` with Gaussian coefficients."""
    d = basis.pw_dimension(omega)
    c = np.zeros(basis.size, dtype=complex)
    c[:d] = rng.normal(size=d) + 1j * rng.normal(size=d)
    return _synth(c, basis)
