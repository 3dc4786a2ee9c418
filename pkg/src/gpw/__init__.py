"""Sampling, filtering and sparse approximation of Paley-Wiener signals on graphs."""

from .graph import Graph, SubsetGeometry, build_graph, gradient_norm, laplacian_apply, subset_geometry
from .kernel import FilterKernel, c_hmk, kernel
from .sampling import DualFrame, SamplingCertificate, certify, dual_frame, reconstruct
from .spectral import SpectralBasis, eigendecompose, forward, inverse, pw_project

__all__ = [
    "Graph",
    "SubsetGeometry",
    "build_graph",
    "gradient_norm",
    "laplacian_apply",
    "subset_geometry",
    "SpectralBasis",
    "eigendecompose",
    "forward",
    "inverse",
    "pw_project",
    "SamplingCertificate",
    "DualFrame",
    "certify",
    "dual_frame",
    "reconstruct",
    "FilterKernel",
    "kernel",
    "c_hmk",
]
