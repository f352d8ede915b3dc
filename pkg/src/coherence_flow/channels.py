"""Noise channels on a qubit and their system-environment dilations.

Joint states live on C^2 (x) C^dE with basis |jk> = |S_j>|E_k>, system index
major. A channel with Kraus operators {K_j} acts on rho (x) |E_0><E_0| as the
isometry |l>|E_0> -> sum_j (K_j|l>)|E_j>, so the joint state is
sum_jk (K_j rho K_k^dag) (x) |E_j><E_k|.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DimMismatch, NonPositiveT, NotUnitary, POutOfRange
from .linalg import SIGMA_1, SIGMA_2, SIGMA_3, as_matrix, dagger, is_unitary

COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    ADC = "adc"
    PDC = "pdc"
    BFC = "bfc"
    PFC = "pfc"
    BPFC = "bpfc"
    DC = "dc"

    @property
    def env_dim(self) -> int:
        """Effective environment dimension = number of Kraus operators."""
        return _ENV_DIM[self]

    @classmethod
    def parse(cls, name) -> "ChannelKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            codes = "|".join(k.value for k in cls)
            raise ValueError(f"unknown channel {name!r}; expected one of {codes}") from None


_ENV_DIM = {
    ChannelKind.ADC: 2,
    ChannelKind.PDC: 3,
    ChannelKind.BFC: 2,
    ChannelKind.PFC: 2,
    ChannelKind.BPFC: 2,
    ChannelKind.DC: 4,
}


@dataclass(frozen=True)
class KrausSet:
    kind: ChannelKind
    p: float
    ops: tuple

    @property
    def env_dim(self) -> int:
        return len(self.ops)

    def stacked(self) -> np.ndarray:
        return np.stack(self.ops)

    def completeness_error(self) -> float:
        s = sum(dagger(k) @ k for k in self.ops)
        return float(np.abs(s - np.eye(2)).max())


@dataclass(frozen=True)
class JointState:
    """System-environment density matrix of shape (2*d_env, 2*d_env)."""

    mat: np.ndarray
    d_env: int

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.mat, self.mat).real)


def _check_p(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if not np.all(np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        raise POutOfRange(f"p must lie in [0, 1], got {p}")
    return p


def kraus_stack(kind, p) -> np.ndarray:
    """Kraus operators for every value in ``p``: shape p.shape + (d_E, 2, 2)."""
    kind = ChannelKind.parse(kind)
    p = _check_p(p)
    q = 1.0 - p
    sp, sq = np.sqrt(p), np.sqrt(q)
    out = np.zeros(p.shape + (kind.env_dim, 2, 2), dtype=np.complex128)
    eye = np.eye(2)
    if kind is ChannelKind.ADC:
        out[..., 0, 0, 0] = 1.0
        out[..., 0, 1, 1] = sq
        out[..., 1, 0, 1] = sp
    elif kind is ChannelKind.PDC:
        out[..., 0, :, :] = sq[..., None, None] * eye
        out[..., 1, 0, 0] = sp
        out[..., 2, 1, 1] = sp
    elif kind is ChannelKind.DC:
        out[..., 0, :, :] = np.sqrt(1.0 - 0.75 * p)[..., None, None] * eye
        for j, sigma in enumerate((SIGMA_1, SIGMA_2, SIGMA_3), start=1):
            out[..., j, :, :] = np.sqrt(0.25 * p)[..., None, None] * sigma
    else:
        flip = {ChannelKind.BFC: SIGMA_1, ChannelKind.PFC: SIGMA_3, ChannelKind.BPFC: SIGMA_2}
        out[..., 0, :, :] = sq[..., None, None] * eye
        out[..., 1, :, :] = sp[..., None, None] * flip[kind]
    return out


def kraus_set(kind, p: float) -> KrausSet:
    """Kraus operators of ``kind`` at parametrized time ``p`` (q = 1 - p)."""
    kind = ChannelKind.parse(kind)
    ops = kraus_stack(kind, float(p))
    ops.setflags(write=False)
    return KrausSet(kind, float(p), tuple(ops))


def evolve_joint_batch(rhos, kraus) -> np.ndarray:
    """Dilate stacks: rhos (n, 2, 2), kraus (n, d_E, 2, 2) -> (n, 2 d_E, 2 d_E)."""
    return backend.dilate(np.asarray(rhos), np.asarray(kraus))


def evolve_joint(rho, ks: KrausSet) -> JointState:
    rho = as_matrix(rho)
    if rho.shape != (2, 2):
        raise DimMismatch(f"system state must be 2x2, got {rho.shape}")
    mat = evolve_joint_batch(rho[None], ks.stacked()[None])[0]
    return JointState(mat, ks.env_dim)


def reduce_system(mats, d_env: int) -> np.ndarray:
    """Tr_E over the last two axes of joint matrices (stack-aware)."""
    mats = np.asarray(mats)
    lead = mats.shape[:-2]
    t = mats.reshape(lead + (2, d_env, 2, d_env))
    return np.einsum("...ikjk->...ij", t)


def reduce_environment(mats, d_env: int) -> np.ndarray:
    """Tr_S over the last two axes of joint matrices (stack-aware)."""
    mats = np.asarray(mats)
    lead = mats.shape[:-2]
    t = mats.reshape(lead + (2, d_env, 2, d_env))
    return np.einsum("...kikj->...ij", t)


def partial_trace(joint: JointState, keep: str) -> np.ndarray:
    """Reduced state of ``"system"`` (2x2) or ``"environment"`` (d_E x d_E)."""
    if keep == "system":
        return reduce_system(joint.mat, joint.d_env)
    if keep == "environment":
        return reduce_environment(joint.mat, joint.d_env)
    raise ValueError(f"keep must be 'system' or 'environment', got {keep!r}")


def apply_channel(rho, ks: KrausSet) -> np.ndarray:
    """sum_j K_j rho K_j^dag."""
    rho = as_matrix(rho)
    k = ks.stacked()
    return np.einsum("jab,bc,jdc->ad", k, rho, k.conj())


def mix_kraus(ks: KrausSet, v) -> KrausSet:
    """Kraus set K'_j = sum_l v[j, l] K_l for a unitary v on the environment."""
    v = as_matrix(v)
    if v.shape != (ks.env_dim, ks.env_dim):
        raise DimMismatch(f"mixing matrix must be {ks.env_dim}x{ks.env_dim}, got {v.shape}")
    if not is_unitary(v, 1e-10):
        raise NotUnitary("mixing matrix is not unitary within 1e-10")
    ops = np.einsum("jl,lab->jab", v, ks.stacked())
    return KrausSet(ks.kind, ks.p, tuple(ops))


def prob_from_time(t: float, T: float) -> float:
    """p = 1 - exp(-t/T) for relaxation time T (T1 or T2)."""
    if not T > 0:
        raise NonPositiveT(f"relaxation time must be positive, got {T}")
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    return -math.expm1(-t / T)


def p_grid(steps: int) -> np.ndarray:
    """Uniform grid {k/(steps-1)} on [0, 1]."""
    if steps < 2:
        raise ValueError("p grid needs at least two points")
    return np.arange(steps, dtype=np.float64) / (steps - 1)
