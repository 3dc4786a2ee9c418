"""Poincare- and Plancherel-Polya-type inequalities for a vertex subset.

Constants are assembled in exact rational arithmetic from the integer
relative degrees ``D_i`` and ``K_i`` and converted to float once.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    BandwidthTooLargeError,
    EmptyBoundaryError,
    EmptyIntermediateBoundaryError,
    GPWError,
    InvalidPowerError,
    NotBandlimitedError,
)
from .graph import Graph, SubsetGeometry, as_signal, laplacian_power_norm, norm, smoothness_norm
from .spectral import SpectralBasis, is_pw

SLACK_TOL = 1e-9


def _ratio(geometry: SubsetGeometry, i: int) -> Fraction:
    return Fraction(2 * geometry.D[i], geometry.K[i]) + 1


def sample_constant_sq(geometry: SubsetGeometry, n: int) -> Fraction:
    """``prod_{i<n} (2 D_i / K_i + 1)``."""
    out = Fraction(1)
    for i in range(n):
        out *= _ratio(geometry, i)
    return out


def smoothness_sum(geometry: SubsetGeometry, n: int) -> Fraction:
    """``sum_{j<n} K_j^{-1} prod_{j<i<n} (2 D_i / K_i + 1)``."""
    total = Fraction(0)
    for j in range(n):
        term = Fraction(1, geometry.K[j])
        for i in range(j + 1, n):
            term *= _ratio(geometry, i)
        total += term
    return total


def poincare_constants(geometry: SubsetGeometry, n: int) -> tuple[float, float]:
    """Return ``(A_n, B_n)`` of the iterated inequality."""
    _require_levels(geometry, n)
    A = math.sqrt(sample_constant_sq(geometry, n))
    B = 2.0 * math.sqrt(smoothness_sum(geometry, n))
    return A, B


def _require_levels(geometry: SubsetGeometry, n: int) -> None:
    if n < 1:
        raise GPWError("level n must be at least 1")
    if geometry.level < n:
        # geometry was computed to a lower level, or cl^{n-1}(S) is already V
        if geometry.exhaustion_level is not None and n > geometry.exhaustion_level:
            raise EmptyIntermediateBoundaryError(
                f"b(cl^{n - 1}(S)) is empty: cl^{geometry.exhaustion_level}(S) = V(G)"
            )
        raise GPWError(f"geometry computed only to level {geometry.level}, need {n}")


@dataclass(frozen=True)
class PoincareReport:
    """One evaluation of a Poincare-type inequality.

    ``rhs = sample_term + B * smoothness_norm``; for the iterated form
    ``sample_term = A * sample_norm``, for the per-vertex form it is the
    weighted sample norm. ``scope`` is ``"global"`` when the closure at
    ``level`` is all of ``V`` and ``"local"`` otherwise, in which case ``lhs``
    is the norm restricted to that closure.
    """

    level: int
    A: float
    B: float
    lhs: float
    sample_norm: float
    sample_term: float
    smoothness_norm: float
    rhs: float
    slack: float
    holds: bool
    scope: str
    form: str
    power: int = 1

    def to_dict(self) -> dict:
        return asdict(self)


def _report(level, A, B, lhs, sample, sample_term, smooth, scope, form, power=1, tol=SLACK_TOL):
    rhs = sample_term + B * smooth
    return PoincareReport(
        level=level,
        A=A,
        B=B,
        lhs=lhs,
        sample_norm=sample,
        sample_term=sample_term,
        smoothness_norm=smooth,
        rhs=rhs,
        slack=rhs - lhs,
        holds=bool(lhs <= rhs + tol * (1.0 + rhs)),
        scope=scope,
        form=form,
        power=power,
    )


def _restricted_norm(f: np.ndarray, W) -> float:
    return norm(f[sorted(W)])


def poincare_iterated(g: Graph, geometry: SubsetGeometry, n: int, f, tol: float = SLACK_TOL) -> PoincareReport:
    """Evaluate ``||f||_{cl^n(S)} <= A_n ||f||_S + B_n ||L^{1/2} f||``."""
    f = as_signal(g, f)
    A, B = poincare_constants(geometry, n)
    cl = geometry.closures[n]
    scope = "global" if len(cl) == g.vertex_count else "local"
    sample = _restricted_norm(f, geometry.S)
    return _report(n, A, B, _restricted_norm(f, cl), sample, A * sample, smoothness_norm(g, f), scope, "iterated", tol=tol)


def poincare_single(g: Graph, geometry: SubsetGeometry, f, tol: float = SLACK_TOL) -> PoincareReport:
    """Single-closure inequality with per-vertex weights ``2 d_0(u) / K_0 + 1``.

    ``A`` is reported as the uniform constant ``sqrt(2 D_0 / K_0 + 1)`` for
    comparison; the inequality itself uses the sharper weighted sample term.
    """
    f = as_signal(g, f)
    if geometry.level < 1 or not geometry.boundaries[0]:
        raise EmptyBoundaryError("S has an empty vertex boundary (S = V or geometry level 0)")
    K0 = geometry.K[0]
    weights = {u: Fraction(2 * geometry.d[0][u], K0) + 1 for u in geometry.S}
    S = sorted(geometry.S)
    w = np.array([float(weights[u]) for u in S])
    sample_term = float(np.sqrt(np.sum(w * np.abs(f[S]) ** 2)))
    A = math.sqrt(_ratio(geometry, 0))
    B = 2.0 / math.sqrt(K0)
    cl = geometry.closures[1]
    scope = "global" if len(cl) == g.vertex_count else "local"
    return _report(
        1, A, B, _restricted_norm(f, cl), _restricted_norm(f, S), sample_term, smoothness_norm(g, f), scope, "single", tol=tol
    )


def power_bootstrap(a: float, c: float, r: int) -> tuple[float, float]:
    """Constants ``(2 r a, 8^{r-1} c^r)`` obtained by raising a smoothness
    bound ``||phi|| <= a + c ||L^s phi||`` to ``||L^{rs} phi||``."""
    _check_power(r)
    return 2 * r * a, 8.0 ** (r - 1) * c**r


def _check_power(r: int) -> None:
    if not isinstance(r, (int, np.integer)) or r < 1 or (r & (r - 1)) != 0:
        raise InvalidPowerError(f"r={r} is not a power of two")


def poincare_power(g: Graph, geometry: SubsetGeometry, f, r: int, n: Optional[int] = None, tol: float = SLACK_TOL) -> PoincareReport:
    """``||f|| <= 2r A_n ||f||_S + 8^{r-1} B_n^r ||L^{r/2} f||`` for ``r = 2^l``.

    Requires ``cl^n(S) = V``; ``n`` defaults to the exhaustion level.
    """
    _check_power(r)
    f = as_signal(g, f)
    if n is None:
        n = geometry.exhaustion_level
    if n is None or not geometry.covers(n):
        raise GPWError(f"cl^{n}(S) is not all of V(G)")
    A, B = poincare_constants(geometry, n)
    A_r, B_r = power_bootstrap(A, B, r)
    sample = _restricted_norm(f, geometry.S)
    return _report(n, A_r, B_r, norm(f), sample, A_r * sample, laplacian_power_norm(g, f, r), "global", "power", power=r, tol=tol)


@dataclass(frozen=True)
class PlancherelPolyaReport:
    omega: float
    level: int
    gamma: float
    A: float
    lower: float
    upper: float
    norm_f: float
    lower_holds: bool
    upper_holds: bool
    holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


def max_pp_bandwidth(geometry: SubsetGeometry, n: int = 1) -> float:
    """Supremum of bandwidths with ``gamma < 1``: ``(4 * smoothness_sum)^{-1}``."""
    return float(1 / (4 * smoothness_sum(geometry, n)))


def plancherel_polya(
    g: Graph,
    geometry: SubsetGeometry,
    omega: float,
    f,
    basis: SpectralBasis,
    n: int = 1,
    tol: float = SLACK_TOL,
    pw_tol: float = 1e-8,
) -> PlancherelPolyaReport:
    """Two-sided bound ``||f||_S <= ||f|| <= (1-gamma)^{-1} A_n ||f||_S`` on ``PW_omega``.

    ``gamma = 2 sqrt(omega * smoothness_sum)``; with ``n = 1`` this is
    ``2 sqrt(omega / K_0)``.
    """
    f = as_signal(g, f)
    if not geometry.covers(n):
        raise GPWError(f"cl^{n}(S) is not all of V(G)")
    A, _ = poincare_constants(geometry, n)
    gamma = 2.0 * math.sqrt(omega * float(smoothness_sum(geometry, n)))
    if gamma >= 1.0:
        raise BandwidthTooLargeError(
            f"gamma = {gamma:.6g} >= 1; omega must be below {max_pp_bandwidth(geometry, n):.6g}"
        )
    if not is_pw(f, omega, basis, pw_tol):
        raise NotBandlimitedError(f"signal is not in PW_{omega}")
    lower = _restricted_norm(f, geometry.S)
    upper = A * lower / (1.0 - gamma)
    nf = norm(f)
    lo = bool(lower <= nf + tol * (1.0 + nf))
    up = bool(nf <= upper + tol * (1.0 + upper))
    return PlancherelPolyaReport(omega, n, gamma, A, lower, upper, nf, lo, up, lo and up)
