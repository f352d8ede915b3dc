"""Coherence bookkeeping and entanglement quantifiers on joint states."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .channels import ChannelKind, JointState, evolve_joint, kraus_set
from .channels import reduce_environment, reduce_system
from .errors import DimMismatch
from .linalg import SIGMA_2, as_matrix, hermitian_eigenvalues, psd_sqrt, singular_values
from .states import density_from_bloch, l1_coherence_batch

_YY = np.kron(SIGMA_2, SIGMA_2)


class CoherenceSplit(NamedTuple):
    """Total, local and non-local l1 coherence; fields may be floats or arrays."""

    total: float
    system: float
    environment: float
    local: float
    non_local: float


def coherence_split_batch(mats, d_env: int) -> CoherenceSplit:
    """Coherence split of every joint matrix in an (n, 2 d_E, 2 d_E) stack."""
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    total = l1_coherence_batch(mats)
    system = l1_coherence_batch(reduce_system(mats, d_env))
    environment = l1_coherence_batch(reduce_environment(mats, d_env))
    local = system + environment
    return CoherenceSplit(total, system, environment, local, total - local)


def coherence_split(joint: JointState) -> CoherenceSplit:
    """C(rho), C(rho_S), C(rho_E), C_l = C_S + C_E and C_nl = C - C_l."""
    s = coherence_split_batch(joint.mat[None], joint.d_env)
    return CoherenceSplit(*(float(x[0]) for x in s))


def _two_qubit(rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[-2:] != (4, 4):
        raise DimMismatch(f"concurrence needs 4x4 matrices, got {rho.shape}")
    return rho


def concurrence_roots(rho) -> np.ndarray:
    """sqrt of the eigenvalues of rho rho~, descending (stack-aware).

    Computed as the singular values of R = sqrt(rho) Y sqrt(rho)^*, with
    Y = sigma_2 (x) sigma_2, since R R^dag = sqrt(rho) rho~ sqrt(rho).
    """
    root = psd_sqrt(_two_qubit(rho))
    r = root @ _YY @ root.conj()
    return singular_values(r)


def concurrence_spectrum(rho) -> np.ndarray:
    """Eigenvalues of rho rho~ (equivalently of sqrt(rho) rho~ sqrt(rho)), descending."""
    return concurrence_roots(rho) ** 2


def concurrence(rho) -> float | np.ndarray:
    """Wootters concurrence max(0, s1 - s2 - s3 - s4) of two-qubit states."""
    s = concurrence_roots(rho)
    c = np.maximum(0.0, s[..., 0] - s[..., 1:].sum(axis=-1))
    return float(c) if c.ndim == 0 else c


def _joint_mat(joint) -> tuple[np.ndarray, int]:
    if isinstance(joint, JointState):
        return joint.mat, joint.d_env
    raise TypeError("expected a JointState")


def partial_transpose_batch(mats, d_env: int) -> np.ndarray:
    """Transpose on the environment index of (..., 2 d_E, 2 d_E) joint matrices."""
    mats = np.asarray(mats)
    lead = mats.shape[:-2]
    t = mats.reshape(lead + (2, d_env, 2, d_env))
    t = np.swapaxes(t, -3, -1)
    return np.ascontiguousarray(t).reshape(lead + (2 * d_env, 2 * d_env))


def partial_transpose(joint: JointState) -> np.ndarray:
    mat, d_env = _joint_mat(joint)
    return partial_transpose_batch(mat, d_env)


def negativity_batch(mats, d_env: int) -> np.ndarray:
    """E_n = (||T_E(rho)||_1 - 1)/2 = sum_j (|l_j| - l_j)/2 for each joint matrix."""
    lam = hermitian_eigenvalues(partial_transpose_batch(mats, d_env))
    return 0.5 * (np.abs(lam) - lam).sum(axis=-1)


def negativity(joint: JointState) -> float:
    mat, d_env = _joint_mat(joint)
    return float(negativity_batch(mat, d_env))


def pdc_gap(r, p: float, joint: JointState | None = None) -> float:
    """C_nl - 2 E_n for the phase damping channel at (r, p)."""
    if joint is None:
        joint = evolve_joint(density_from_bloch(r), kraus_set(ChannelKind.PDC, p))
    return coherence_split(joint).non_local - 2.0 * negativity(joint)
