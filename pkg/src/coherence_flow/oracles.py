"""Closed-form coherence and entanglement predictions per channel.

Everything is a function of the initial Bloch vector r and the parametrized
time p (q = 1 - p). ``predict_arrays`` broadcasts over numpy inputs so the
verifier can evaluate whole grids at once; ``predict`` wraps it for a single
(kind, r, p) triple.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, _check_p
from .states import check_bloch

QUANTITIES = ("c_total", "c_system", "c_environment", "c_nonlocal", "entanglement")


@dataclass(frozen=True)
class PredictionRecord:
    kind: ChannelKind
    p: float
    c_total: float
    c_system: float
    c_environment: float
    c_nonlocal: float
    entanglement: float | None
    gap_defined: bool

    @property
    def c_local(self) -> float:
        return self.c_system + self.c_environment

    @property
    def gap(self) -> float | None:
        """C_nl minus the closed-form entanglement, where one exists."""
        if self.entanglement is None:
            return None
        return self.c_nonlocal - self.entanglement


def _flip_family(r1, r2, r3, p, s, coh):
    """Bit-flip expressions; phase and bit-phase variants permute r first."""
    system = np.sqrt(r1**2 + r2**2 * (1.0 - 2.0 * p) ** 2)
    environment = 2.0 * s * np.abs(r1)
    nonlocal_ = (1.0 + 2.0 * s) * coh - system + 2.0 * s * (1.0 - np.abs(r1))
    x = r2**2 + r3**2
    y = np.clip(1.0 - r1**2, 0.0, None)
    ent = 2.0 * s * np.minimum(np.sqrt(x), np.sqrt(y))
    return system, environment, nonlocal_, ent


def predict_arrays(kind, r, p) -> dict:
    """Closed forms broadcast over ``r`` (..., 3) and ``p``.

    Returns a dict keyed by ``QUANTITIES``; ``entanglement`` is ``None`` for
    the phase damping and depolarizing channels.
    """
    kind = ChannelKind.parse(kind)
    r = np.asarray(r, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    r1, r2, r3 = r[..., 0], r[..., 1], r[..., 2]
    q = 1.0 - p
    s = np.sqrt(p * q)
    coh = np.hypot(r1, r2)
    pdc_total = (1.0 + 2.0 * s) * coh + 2.0 * s
    ent = None

    if kind is ChannelKind.ADC:
        total = (np.sqrt(q) + np.sqrt(p)) * coh + s * (1.0 - r3)
        system = np.sqrt(q) * coh
        environment = np.sqrt(p) * coh
        nonlocal_ = s * (1.0 - r3)
        ent = nonlocal_
    elif kind is ChannelKind.PDC:
        total = pdc_total
        system = q * coh
        environment = 2.0 * s * np.ones_like(coh)
        nonlocal_ = (p + 2.0 * s) * coh
    elif kind is ChannelKind.BFC:
        total = pdc_total
        system, environment, nonlocal_, ent = _flip_family(r1, r2, r3, p, s, coh)
    elif kind is ChannelKind.BPFC:
        total = pdc_total
        system, environment, nonlocal_, ent = _flip_family(r2, r1, r3, p, s, coh)
    elif kind is ChannelKind.PFC:
        total = pdc_total
        system = np.abs(1.0 - 2.0 * p) * coh
        environment = 2.0 * s * np.abs(r3)
        nonlocal_ = (1.0 + 2.0 * s - np.abs(1.0 - 2.0 * p)) * coh + 2.0 * s * (1.0 - np.abs(r3))
        ent = _flip_family(r3, r2, r1, p, s, coh)[3]
    else:
        u = p / 4.0
        v = 1.0 - 3.0 * u
        g = np.sqrt(u * v) + u
        amp = (3.0 * np.sqrt(u) + np.sqrt(v)) ** 2
        abs_sum = np.abs(r1) + np.abs(r2) + np.abs(r3)
        total = amp * coh + 6.0 * g
        system = q * coh
        environment = 2.0 * g * abs_sum
        nonlocal_ = (amp - q) * coh + 2.0 * g * (3.0 - abs_sum)

    return {
        "c_total": total,
        "c_system": system,
        "c_environment": environment,
        "c_nonlocal": nonlocal_,
        "entanglement": ent,
    }


def predict(kind, r, p: float) -> PredictionRecord:
    kind = ChannelKind.parse(kind)
    r = check_bloch(r)
    p = float(_check_p(p))
    vals = predict_arrays(kind, np.array(r), p)
    ent = vals["entanglement"]
    return PredictionRecord(
        kind=kind,
        p=p,
        c_total=float(vals["c_total"]),
        c_system=float(vals["c_system"]),
        c_environment=float(vals["c_environment"]),
        c_nonlocal=float(vals["c_nonlocal"]),
        entanglement=None if ent is None else float(ent),
        gap_defined=ent is not None,
    )


def pdc_negativity_coeffs(r, p: float) -> tuple[float, float, float]:
    """(c2, c1, c0) of the quartic l^4 - l^3 + c2 l^2 + c1 l + c0 whose roots,
    with a double root at zero, are the phase-damping partial-transpose spectrum."""
    r1, r2, r3 = check_bloch(r)
    p = float(_check_p(p))
    coh2 = r1**2 + r2**2
    c2 = 0.25 * (1.0 - coh2 - r3**2)
    c1 = 0.25 * p * (2.0 - p) * coh2
    c0 = p**2 * (2.0 - p) ** 2 * coh2 * (r3**2 - 1.0) / 16.0
    return c2, c1, c0
