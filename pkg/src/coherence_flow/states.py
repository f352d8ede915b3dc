"""Qubit states: Bloch vectors, density matrices, and l1-norm coherence."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import backend
from .errors import BlochOutOfBall, DimMismatch, InvalidState
from .linalg import SIGMA_1, SIGMA_2, SIGMA_3, as_matrix, hermitian_eigenvalues

BALL_TOL = 1e-12
STATE_TOL = 1e-10


class BlochVector(NamedTuple):
    """Polarizations (r1, r2, r3) of a qubit, r_j = Tr(rho sigma_j)."""

    r1: float
    r2: float
    r3: float

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.r1**2 + self.r2**2 + self.r3**2))

    @property
    def coherence(self) -> float:
        """l1 coherence of the qubit, sqrt(r1^2 + r2^2)."""
        return float(np.hypot(self.r1, self.r2))

    def swapped(self, i: int, j: int) -> "BlochVector":
        """Copy with components ``i`` and ``j`` (0-based) exchanged."""
        r = list(self)
        r[i], r[j] = r[j], r[i]
        return BlochVector(*r)

    @classmethod
    def parse(cls, text: str) -> "BlochVector":
        """Parse a comma-separated triple such as ``"-0.41,0.80,-0.38"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated numbers, got {text!r}")
        vec = cls(*(float(p) for p in parts))
        if not all(np.isfinite(vec)):
            raise ValueError(f"non-finite Bloch component in {text!r}")
        return vec


def check_bloch(r) -> BlochVector:
    r = BlochVector(*(float(x) for x in r))
    if r.r1**2 + r.r2**2 + r.r3**2 > 1.0 + BALL_TOL:
        raise BlochOutOfBall(f"|r| = {r.norm:.15g} exceeds 1")
    return r


def density_from_bloch(r) -> np.ndarray:
    """rho = (sigma_0 + r . sigma) / 2."""
    r1, r2, r3 = check_bloch(r)
    return 0.5 * np.array(
        [[1.0 + r3, r1 - 1j * r2], [r1 + 1j * r2, 1.0 - r3]], dtype=np.complex128
    )


def bloch_from_density(rho) -> BlochVector:
    rho = as_matrix(rho)
    if rho.shape != (2, 2):
        raise DimMismatch(f"expected a 2x2 density matrix, got shape {rho.shape}")
    return BlochVector(
        *(float(np.trace(rho @ s).real) for s in (SIGMA_1, SIGMA_2, SIGMA_3))
    )


def density_from_bloch_array(r: np.ndarray) -> np.ndarray:
    """Vectorized ``density_from_bloch`` for an (n, 3) array, no ball check."""
    r = np.asarray(r, dtype=np.float64)
    out = np.empty(r.shape[:-1] + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = 0.5 * (1.0 + r[..., 2])
    out[..., 1, 1] = 0.5 * (1.0 - r[..., 2])
    out[..., 0, 1] = 0.5 * (r[..., 0] - 1j * r[..., 1])
    out[..., 1, 0] = 0.5 * (r[..., 0] + 1j * r[..., 1])
    return out


def is_density_matrix(rho, tol: float = STATE_TOL) -> bool:
    rho = as_matrix(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if not np.all(np.abs(rho - rho.conj().T) <= tol):
        return False
    if abs(np.trace(rho) - 1.0) > tol:
        return False
    return bool(hermitian_eigenvalues(rho, tol)[-1] >= -tol)


def check_density_matrix(rho, tol: float = STATE_TOL) -> np.ndarray:
    rho = as_matrix(rho)
    if not is_density_matrix(rho, tol):
        raise InvalidState("not a density matrix (Hermitian, unit trace, PSD)")
    return rho


def l1_coherence(rho) -> float:
    """Sum of moduli of the off-diagonal entries in the computational basis."""
    rho = as_matrix(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {rho.shape}")
    return float(backend.l1_offdiag(rho[None])[0])


def l1_coherence_batch(rhos) -> np.ndarray:
    """l1 coherence of each matrix in an (n, d, d) stack."""
    return backend.l1_offdiag(np.ascontiguousarray(rhos, dtype=np.complex128))


def maximally_coherent_state(d: int) -> np.ndarray:
    psi = np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)
    return np.outer(psi, psi.conj())


def _draw_bloch(rng: np.random.Generator, n: int, kind: str) -> np.ndarray:
    if kind not in ("pure", "mixed"):
        raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")
    g = rng.standard_normal((n, 3))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    if kind == "mixed":
        g *= rng.random(n)[:, None] ** (1.0 / 3.0)
    return g


def sample_random_bloch(seed: int, kind: str = "mixed") -> BlochVector:
    """One Bloch vector: uniform on the sphere (pure) or in the ball (mixed)."""
    return BlochVector(*map(float, _draw_bloch(np.random.default_rng(seed), 1, kind)[0]))


def sample_bloch_array(seed: int, n: int, kind: str = "mixed") -> np.ndarray:
    """``n`` Bloch vectors as an (n, 3) array, deterministic in ``seed``."""
    return _draw_bloch(np.random.default_rng(seed), n, kind)
