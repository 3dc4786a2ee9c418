"""Sampling sets, the frame ``{P_omega delta_u}`` and dual-frame reconstruction.

Frame bounds use the squared convention
``A ||f||^2 <= sum_{u in S} |f(u)|^2 <= B ||f||^2`` for ``f`` in ``PW_omega``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ClosureNotFullError, GPWError, NotUniquenessSetError, SampleSetMismatchError
from .graph import SubsetGeometry
from .spectral import SpectralBasis

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class SamplingCertificate:
    S: tuple[int, ...]
    omega: float
    K0: int
    D0: int
    condition_closure: bool
    condition_bandwidth: bool
    frame_lower: float
    frame_upper: float
    pw_dimension: int
    rank: int

    @property
    def theorem_certified(self) -> bool:
        return self.condition_closure and self.condition_bandwidth

    @property
    def numerically_certified(self) -> bool:
        return self.rank == self.pw_dimension and self.frame_lower > 0

    @property
    def status(self) -> str:
        if self.theorem_certified:
            return "theorem-certified"
        if self.numerically_certified:
            return "numerically-certified"
        return "not-certified"

    def to_dict(self) -> dict:
        return {
            "S_size": len(self.S),
            "omega": self.omega,
            "K0": self.K0,
            "D0": self.D0,
            "condition_closure": self.condition_closure,
            "condition_bandwidth": self.condition_bandwidth,
            "frame_lower": self.frame_lower,
            "frame_upper": self.frame_upper,
            "pw_dimension": self.pw_dimension,
            "rank": self.rank,
            "theorem_certified": self.theorem_certified,
            "numerically_certified": self.numerically_certified,
            "status": self.status,
        }


def _band_basis(omega: float, basis: SpectralBasis) -> np.ndarray:
    return basis.eigenvectors[:, basis.band(omega)]


def certify(geometry: SubsetGeometry, omega: float, basis: SpectralBasis) -> SamplingCertificate:
    """Check the sampling-theorem hypotheses and compute frame bounds.

    The bounds are the extreme squared singular values of the restriction
    ``f -> f|_S`` on ``PW_omega``.
    """
    S = tuple(sorted(geometry.S))
    if len(S) == basis.size:
        K0, D0, closure = 0, 0, True
    else:
        if geometry.level < 1:
            raise GPWError("geometry must be computed to level >= 1")
        K0, D0, closure = geometry.K[0], geometry.D[0], geometry.closure_is_full
    bandwidth = len(S) == basis.size or omega < K0 / 4
    U = _band_basis(omega, basis)
    d = U.shape[1]
    # a connected graph always has the constants in PW_omega
    assert d >= 1, "PW_omega is trivial; omega must be >= 0"
    sv = np.linalg.svd(U[list(S), :], compute_uv=False)
    rank = int(np.count_nonzero(sv > RANK_RTOL * sv[0]))
    lower = float(sv[-1] ** 2) if len(sv) == d and rank == d else 0.0
    return SamplingCertificate(
        S=S,
        omega=float(omega),
        K0=K0,
        D0=D0,
        condition_closure=closure,
        condition_bandwidth=bandwidth,
        frame_lower=lower,
        frame_upper=float(sv[0] ** 2),
        pw_dimension=d,
        rank=rank,
    )


@dataclass(frozen=True, eq=False)
class DualFrame:
    """Reconstruction functions; ``theta[i]`` is ``Theta_u`` for ``u = S[i]``."""

    S: tuple[int, ...]
    theta: np.ndarray
    certificate: SamplingCertificate

    def to_csv(self) -> str:
        lines = ["u," + ",".join(f"v{j}" for j in range(self.theta.shape[1]))]
        for u, row in zip(self.S, self.theta):
            lines.append(f"{u}," + ",".join(repr(float(x)) for x in row.real))
        return "\n".join(lines) + "\n"


def dual_frame(cert: SamplingCertificate, basis: SpectralBasis) -> DualFrame:
    """Canonical dual of ``{P_omega delta_u}_{u in S}``.

    ``Theta = U (U_S)^+`` where ``U`` spans ``PW_omega``, i.e. the frame
    operator inverted on ``PW_omega`` and applied to ``P_omega delta_u``.
    """
    if not cert.numerically_certified:
        raise NotUniquenessSetError(
            f"S is not a uniqueness set for PW_{cert.omega}: rank {cert.rank} < {cert.pw_dimension}"
        )
    U = _band_basis(cert.omega, basis)
    pinv = np.linalg.pinv(U[list(cert.S), :], rcond=RANK_RTOL)
    theta = (U @ pinv).T
    theta.setflags(write=False)
    return DualFrame(cert.S, theta, cert)


def reconstruct(samples, frame: DualFrame) -> np.ndarray:
    """``sum_{u in S} f(u) Theta_u``.

    ``samples`` is a mapping ``u -> value`` over exactly ``S`` or a sequence
    ordered like ``frame.S``. For samples of a ``PW_omega`` signal the result
    is that signal; otherwise it is the minimum-norm ``PW_omega`` fit.
    """
    if isinstance(samples, Mapping):
        if set(samples) != set(frame.S):
            extra = sorted(set(samples) - set(frame.S))
            missing = sorted(set(frame.S) - set(samples))
            raise SampleSetMismatchError(f"sample keys differ from S (missing {missing[:5]}, extra {extra[:5]})")
        values = np.array([samples[u] for u in frame.S], dtype=complex)
    else:
        values = np.asarray(samples, dtype=complex)
        if values.shape != (len(frame.S),):
            raise SampleSetMismatchError(f"expected {len(frame.S)} samples, got shape {values.shape}")
    return values @ frame.theta


def sample(f, frame_or_S) -> np.ndarray:
    S = frame_or_S.S if isinstance(frame_or_S, DualFrame) else frame_or_S
    return np.asarray(f, dtype=complex)[list(S)]


def max_certified_bandwidth(geometry: SubsetGeometry) -> float:
    """``K_0(S) / 4``, the (exclusive) supremum of theorem-certified bandwidths."""
    if not geometry.closure_is_full or geometry.level < 1:
        raise ClosureNotFullError("cl(S) is not all of V(G)")
    return geometry.K[0] / 4
