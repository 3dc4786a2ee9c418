"""The sinc-power kernel ``h(t) = a (sin(t/n) / t)^n`` and its transform.

``h`` is even, nonnegative and of exponential type one, so its transform
``h_hat(lam) = int h(t) cos(lam t) dt`` vanishes for ``|lam| >= 1``.

All integrals are evaluated by adaptive quadrature: a head ``[0, T]``
handled by :func:`scipy.integrate.quad` and a tail ``[T, inf)`` where
``sin^n(t/n)`` is expanded into a finite cosine series and each piece is a
Fourier integral of a power of ``t`` (QAWF).

:func:`bspline_multiplier` and :func:`sinc_power_integral` are closed forms
used only as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import OddOrderError, OrderMismatchError, OrderTooSmallError

QUAD_EPSABS = 1e-15
QUAD_EPSREL = 1e-13


def _sin_power_series(n: int) -> list[tuple[float, float]]:
    """``sin(x)^n = sum c_k cos(2 k x)`` for even ``n``; returns ``(c_k, 2k)``."""
    half = n // 2
    terms = [(math.comb(n, half) / 2.0**n, 0.0)]
    for k in range(1, half + 1):
        terms.append(((-1) ** k * math.comb(n, half - k) / 2.0 ** (n - 1), 2.0 * k))
    return terms


def _base(t, n: int):
    """``(sin(t/n) / t)^n``, stable at ``t = 0``."""
    return (np.sinc(np.asarray(t) / (n * math.pi)) / n) ** n


def _tail_fourier(q: int, mu: float, T: float) -> float:
    """``int_T^inf t^q cos(mu t) dt`` for ``q <= -2``."""
    mu = abs(mu)
    if mu < 1e-13:
        return T ** (q + 1) / (-q - 1)
    val, _ = integrate.quad(lambda t: t**q, T, np.inf, weight="cos", wvar=mu, epsabs=QUAD_EPSABS, limlst=200)
    return val


@lru_cache(maxsize=None)
def _half_line_integral(n: int, poly: tuple[float, ...], lam: float, split: float) -> float:
    """``int_0^inf (sin(t/n)/t)^n p(t) cos(lam t) dt``, ``p(t) = sum poly[i] t^i``.

    ``deg p <= n - 2`` keeps the integral absolutely convergent.
    """
    coeffs = np.asarray(poly)

    def integrand(t):
        return _base(t, n) * np.polyval(coeffs[::-1], t) * math.cos(lam * t)

    # pieces of length n*pi/(1+|lam|) keep the head quadrature well resolved
    width = n * math.pi / (1.0 + abs(lam))
    edges = np.linspace(0.0, split, max(2, int(math.ceil(split / width)) + 1))
    head = sum(
        integrate.quad(integrand, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=200)[0]
        for lo, hi in zip(edges[:-1], edges[1:])
    )
    # (sin(t/n))^n / t^n * t^i * cos(lam t) = sum_k c_k t^(i-n) cos(w_k t / n) cos(lam t)
    tail = 0.0
    for i, p in enumerate(poly):
        if p == 0.0:
            continue
        for c, w in _sin_power_series(n):
            mu = w / n
            tail += p * c * 0.5 * (_tail_fourier(i - n, mu + lam, split) + _tail_fourier(i - n, mu - lam, split))
    return head + tail


def _default_split(n: int) -> float:
    return 2.0 * n * math.pi


def _check_order(n: int) -> None:
    if n % 2:
        raise OddOrderError(f"kernel order n={n} must be even")
    if n < 4:
        raise OrderTooSmallError(f"kernel order n={n} must be at least 4")


@dataclass(frozen=True)
class FilterKernel:
    """Normalized kernel of even order ``n``; ``a`` makes ``int h = 1``."""

    n: int
    a: float
    split: float = field(repr=False)

    def h(self, t):
        return self.a * _base(t, self.n)

    @property
    def l1_norm(self) -> float:
        """``C_h = int |h| = 1`` since ``h >= 0``."""
        return 1.0

    def multiplier(self, lam) -> np.ndarray:
        """``h_hat(lam) = int h(t) e^{i lam t} dt`` (real, even in ``lam``)."""
        lam = np.abs(np.asarray(lam, dtype=float))
        # rounding lets numerically degenerate eigenvalues share one cached quadrature
        flat = [2.0 * self.a * _half_line_integral(self.n, (1.0,), round(float(x), 12), self.split) for x in lam.ravel()]
        return np.array(flat).reshape(lam.shape)

    def multiplier_table(self, lam_max: float = 1.2, points: int = 121) -> dict:
        grid = np.linspace(0.0, lam_max, points)
        return {
            "lambda": grid.tolist(),
            "h_hat": self.multiplier(grid).tolist(),
            "method": "adaptive quadrature (QUADPACK QAGS head + QAWF tail)",
            "split": self.split,
            "epsabs": QUAD_EPSABS,
        }

    def moment(self, poly: tuple[float, ...]) -> float:
        """``int h(t) p(|t|) dt`` for a polynomial ``p`` of degree <= n - 2."""
        if len(poly) - 1 > self.n - 2:
            raise OrderMismatchError(f"polynomial degree {len(poly) - 1} needs kernel order >= {len(poly) + 1}")
        return 2.0 * self.a * _half_line_integral(self.n, tuple(float(p) for p in poly), 0.0, self.split)


@lru_cache(maxsize=None)
def kernel(n: int = 4, split: float | None = None) -> FilterKernel:
    """Build the order-``n`` kernel, normalizing ``a`` by quadrature."""
    _check_order(n)
    if split is None:
        split = _default_split(n)
    total = 2.0 * _half_line_integral(n, (1.0,), 0.0, float(split))
    return FilterKernel(n=n, a=1.0 / total, split=float(split))


def default_order(m: int) -> int:
    """Smallest even ``n >= max(4, m + 2)``."""
    n = max(4, m + 2)
    return n + (n % 2)


def c_hmk(k_: FilterKernel, m: int, k: int) -> float:
    """``C^h_{m,k} = int h(t) |t|^k (1 + |t|)^(m-k) dt``."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    if k_.n < m + 2:
        raise OrderMismatchError(f"kernel order n={k_.n} < m + 2 = {m + 2}; integral diverges")
    # coefficients of t^k (1 + t)^(m-k)
    poly = [0.0] * (m + 1)
    for i in range(m - k + 1):
        poly[k + i] = float(math.comb(m - k, i))
    return k_.moment(tuple(poly))


# ---------------------------------------------------------------------------
# closed forms (cross-check oracles)
# ---------------------------------------------------------------------------

def sinc_power_integral(n: int) -> float:
    """``int_R (sin(t/n)/t)^n dt`` in closed form."""
    s = sum((-1) ** k * math.comb(n, k) * (n - 2 * k) ** (n - 1) for k in range(n // 2 + 1))
    full = math.pi * s / (2 ** (n - 1) * math.factorial(n - 1))  # int (sin x / x)^n dx
    return full * n ** (1 - n)


def _irwin_hall_pdf(y: float, n: int) -> float:
    if y <= 0 or y >= n:
        return 0.0
    s = sum((-1) ** k * math.comb(n, k) * (y - k) ** (n - 1) for k in range(int(math.floor(y)) + 1))
    return s / math.factorial(n - 1)


def bspline_multiplier(lam, n: int) -> np.ndarray:
    """Transform of ``h`` as a normalized n-fold convolution of boxes on ``[-1/n, 1/n]``."""
    lam = np.asarray(lam, dtype=float)
    peak = _irwin_hall_pdf(n / 2.0, n)
    vals = [_irwin_hall_pdf(n * (x + 1.0) / 2.0, n) / peak for x in lam.ravel()]
    return np.array(vals).reshape(lam.shape)
