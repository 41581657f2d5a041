"""Adjacency spectra and exact trace powers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, PreconditionError
from .graph import Graph

DEFAULT_TOL = 1e-10

# int64 matmul is exact while every entry of every intermediate power stays
# below this; entries of A^k are at most (V-1)^k.
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    tolerance: float

    @property
    def spectral_radius(self) -> float:
        return max((abs(x) for x in self.eigenvalues), default=0.0)

    def __len__(self):
        return len(self.eigenvalues)


def adjacency_spectrum(g: Graph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of the adjacency matrix, sorted descending.

    ``eigvalsh`` (LAPACK's symmetric solver) is backward stable, so the
    absolute error is a small multiple of machine epsilon times the spectral
    radius; values within ``tol * radius`` of an integer are snapped to it.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    try:
        values = np.linalg.eigvalsh(g.adjacency.astype(float))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    scale = max(1.0, float(np.max(np.abs(values), initial=0.0)))
    rounded = np.round(values)
    snap = np.abs(values - rounded) <= tol * scale
    values = np.where(snap, rounded, values)
    values = values + 0.0  # normalise -0.0
    return Spectrum(tuple(sorted(values.tolist(), reverse=True)), tol)


def _matpow(a: np.ndarray, k: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=a.dtype)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def trace_power(g: Graph, k: int) -> int:
    """Exact tr(A^k) by repeated squaring in integer arithmetic."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    n = g.vertex_count
    bound = n * max(n - 1, 1) ** k
    if bound < _INT64_SAFE:
        a = g.adjacency.astype(np.int64)
    else:
        a = g.adjacency.astype(object)
    return int(np.trace(_matpow(a, k)))


def spectral_trace(s: Spectrum, k: int) -> float:
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return float(sum(x**k for x in s.eigenvalues))
