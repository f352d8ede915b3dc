"""Pure numpy versions of the compiled kernels in ``_core.pyx``.

Same signatures and conventions; loops run over matrix indices while the
batch axis is vectorized, so large stacks stay reasonably fast.
"""
import numpy as np


def eigh(a, tol=1e-15, max_sweeps=60):
    """Cyclic Jacobi on a stack of Hermitian matrices (see ``_core.eigh``).

    Works on a batch-last copy (d, d, n) so row and column updates touch
    contiguous memory.
    """
    a = np.moveaxis(np.asarray(a, dtype=np.complex128), 0, -1).copy(order="C")
    d, _, n = a.shape
    # power-of-two scaling keeps the squared norms below clear of over/underflow
    amax = np.maximum(np.abs(a.real), np.abs(a.imag)).max(axis=(0, 1))
    scale = np.where(amax > 0.0, np.ldexp(1.0, np.frexp(amax)[1]), 1.0)
    a /= scale
    v = np.zeros((d, d, n), dtype=np.complex128)
    for i in range(d):
        v[i, i] = 1.0
    fro2 = (a.real**2 + a.imag**2).sum(axis=(0, 1))
    thresh = tol * tol * fro2
    iu = np.triu_indices(d, 1)

    def offnorm2():
        off = a[iu[0], iu[1]]
        return (off.real**2 + off.imag**2).sum(axis=0)

    for _ in range(max_sweeps):
        active = offnorm2() > thresh
        if not active.any():
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = np.abs(apq)
                rot = active & (mag > 0.0)
                if not rot.any():
                    continue
                safe = np.where(rot, mag, 1.0)
                # componentwise, so subnormal magnitudes do not produce nan
                ph = np.where(rot, apq.real / safe + 1j * (apq.imag / safe), 1.0)
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    tau = (a[q, q].real - a[p, p].real) / (2.0 * safe)
                    t = np.where(
                        tau >= 0.0,
                        1.0 / (tau + np.sqrt(1.0 + tau * tau)),
                        -1.0 / (-tau + np.sqrt(1.0 + tau * tau)),
                    )
                t = np.where(rot, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                gqp = -s * ph.conj()
                gqq = c * ph.conj()

                x = a[:, p].copy()
                y = a[:, q].copy()
                a[:, p] = x * c + y * gqp
                a[:, q] = x * s + y * gqq
                x = a[p].copy()
                y = a[q].copy()
                a[p] = c * x + gqp.conj() * y
                a[q] = s * x + gqq.conj() * y
                a[p, q] = np.where(rot, 0.0, a[p, q])
                a[q, p] = np.where(rot, 0.0, a[q, p])
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                x = v[:, p].copy()
                y = v[:, q].copy()
                v[:, p] = x * c + y * gqp
                v[:, q] = x * s + y * gqq

    bad = np.flatnonzero(offnorm2() > thresh)
    failed = int(bad[0]) if bad.size else -1

    w = np.diagonal(a, axis1=0, axis2=1).real * scale[:, None]  # (n, d)
    v = np.moveaxis(v, -1, 0)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, np.ascontiguousarray(v), failed


def dilate(rho, kraus):
    """Joint states sum_jk (K_j rho K_k^dag) (x) |j><k| (see ``_core.dilate``)."""
    rho = np.asarray(rho, dtype=np.complex128)
    kraus = np.asarray(kraus, dtype=np.complex128)
    n, nk, ds, _ = kraus.shape
    blocks = np.einsum("bjac,bcd,bled->bajel", kraus, rho, kraus.conj())
    return np.ascontiguousarray(blocks).reshape(n, ds * nk, ds * nk)


def l1_offdiag(a):
    """Sum of moduli of the off-diagonal entries of each matrix in a stack."""
    a = np.asarray(a, dtype=np.complex128)
    off = ~np.eye(a.shape[-1], dtype=bool)
    return np.abs(a[:, off]).sum(axis=1)
