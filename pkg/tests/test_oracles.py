import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_flow import oracles
from coherence_flow.channels import ChannelKind, evolve_joint, kraus_set
from coherence_flow.errors import BlochOutOfBall, POutOfRange
from coherence_flow.measures import coherence_split, concurrence
from coherence_flow.states import density_from_bloch

from .conftest import bloch_vectors

KINDS = list(ChannelKind)
probs = st.floats(0, 1)


def numeric(kind, r, p):
    joint = evolve_joint(density_from_bloch(r), kraus_set(kind, p))
    return coherence_split(joint), joint


@pytest.mark.parametrize("kind", KINDS)
def test_p_zero_keeps_the_initial_coherence(kind):
    r = (0.3, -0.4, 0.5)
    rec = oracles.predict(kind, r, 0.0)
    assert rec.c_total == pytest.approx(0.5, abs=1e-15)
    assert rec.c_system == pytest.approx(0.5, abs=1e-15)
    assert rec.c_environment == pytest.approx(0.0, abs=1e-15)
    assert rec.c_nonlocal == pytest.approx(0.0, abs=1e-15)
    assert rec.c_local == pytest.approx(0.5, abs=1e-15)


def test_adc_examples():
    # excited state: sqrt(q)|1,E0> + sqrt(p)|0,E1>, pure and entangled
    rec = oracles.predict("adc", (0, 0, -1), 0.25)
    s = 2 * math.sqrt(0.25 * 0.75)
    assert (rec.c_total, rec.c_system, rec.c_environment) == pytest.approx((s, 0, 0))
    assert rec.c_nonlocal == pytest.approx(s)
    assert rec.entanglement == pytest.approx(s)
    assert rec.gap == pytest.approx(0.0)
    # full damping moves the coherence into the environment
    rec = oracles.predict("adc", (0.6, 0.0, 0.8), 1.0)
    assert (rec.c_system, rec.c_environment, rec.c_nonlocal) == pytest.approx((0, 0.6, 0))


def test_pdc_examples():
    rec = oracles.predict("pdc", (1, 0, 0), 1.0)
    assert (rec.c_total, rec.c_system, rec.c_environment, rec.c_nonlocal) == pytest.approx(
        (1, 0, 0, 1)
    )
    assert rec.entanglement is None and rec.gap is None and not rec.gap_defined


def test_flip_midpoints():
    r = (0.3, -0.5, 0.6)
    bfc = oracles.predict("bfc", r, 0.5)
    assert (bfc.c_system, bfc.c_environment) == pytest.approx((0.3, 0.3), abs=1e-15)
    pfc = oracles.predict("pfc", r, 0.5)
    assert pfc.c_system == pytest.approx(0.0, abs=1e-15)
    assert pfc.c_environment == pytest.approx(0.6, abs=1e-15)
    bpfc = oracles.predict("bpfc", r, 0.5)
    assert (bpfc.c_system, bpfc.c_environment) == pytest.approx((0.5, 0.5), abs=1e-15)


def test_dc_maximally_mixed():
    for p in (0.0, 0.3, 1.0):
        rec = oracles.predict("dc", (0, 0, 0), p)
        u, v = p / 4, 1 - 3 * p / 4
        assert rec.c_system == 0.0 and rec.c_environment == 0.0
        assert rec.c_nonlocal == pytest.approx(6 * (math.sqrt(u * v) + u), abs=1e-15)
    assert oracles.predict("dc", (0, 0, 0), 1.0).c_nonlocal == pytest.approx(3.0, abs=1e-15)


@given(st.sampled_from(KINDS), bloch_vectors(), probs)
def test_oracle_matches_pipeline(kind, r, p):
    rec = oracles.predict(kind, r, p)
    split, joint = numeric(kind, r, p)
    assert abs(rec.c_total - split.total) <= 1e-12
    assert abs(rec.c_system - split.system) <= 1e-12
    assert abs(rec.c_environment - split.environment) <= 1e-12
    assert abs(rec.c_nonlocal - split.non_local) <= 1e-12
    if rec.gap_defined:
        assert abs(rec.entanglement - concurrence(joint.mat)) <= 1e-9


@given(st.sampled_from(KINDS), bloch_vectors(), probs)
def test_record_identities(kind, r, p):
    rec = oracles.predict(kind, r, p)
    assert abs(rec.c_local + rec.c_nonlocal - rec.c_total) <= 1e-14
    assert rec.c_system >= 0 and rec.c_environment >= 0
    assert rec.gap_defined == (kind not in (ChannelKind.PDC, ChannelKind.DC))


@given(bloch_vectors(), probs)
def test_bpfc_is_bfc_with_swapped_components(r, p):
    a = oracles.predict("bpfc", r, p)
    b = oracles.predict("bfc", r.swapped(0, 1), p)
    for name in oracles.QUANTITIES:
        assert abs(getattr(a, name) - getattr(b, name)) <= 1e-15


@given(bloch_vectors(), probs)
def test_pfc_system_coherence_recurs(r, p):
    rec = oracles.predict("pfc", r, p)
    assert abs(rec.c_system - abs(1 - 2 * p) * r.coherence) <= 1e-15
    assert abs(rec.c_system - oracles.predict("pfc", r, 1 - p).c_system) <= 1e-15


@given(bloch_vectors(), probs)
def test_unital_channels_share_total(r, p):
    ref = oracles.predict("pdc", r, p).c_total
    for kind in ("bfc", "pfc", "bpfc"):
        assert abs(oracles.predict(kind, r, p).c_total - ref) <= 1e-15
    assert abs(oracles.predict("dc", r, p).c_system - oracles.predict("pdc", r, p).c_system) <= 1e-15


def test_predict_arrays_broadcasts():
    rs = np.array([[0.1, 0.2, 0.3], [0.0, 0.0, 1.0]])
    ps = np.linspace(0, 1, 5)
    out = oracles.predict_arrays("adc", rs[:, None, :], ps[None, :])
    assert out["c_total"].shape == (2, 5)
    assert out["c_total"][1, 2] == pytest.approx(0.0)
    assert oracles.predict_arrays("dc", rs, 0.5)["entanglement"] is None


def test_pdc_negativity_coeffs_example():
    # (|0,E1> + |1,E2>)/sqrt(2): T_E spectrum {1/2, 1/2, 1/2, -1/2, 0, 0}
    c2, c1, c0 = oracles.pdc_negativity_coeffs((1, 0, 0), 1.0)
    assert (c2, c1, c0) == pytest.approx((0.0, 0.25, -0.0625))
    for lam in (0.5, -0.5):
        assert lam**4 - lam**3 + c2 * lam**2 + c1 * lam + c0 == pytest.approx(0.0, abs=1e-15)
    assert oracles.pdc_negativity_coeffs((0.6, 0, 0), 0.0)[1:] == (0.0, 0.0)


def test_predict_validates_inputs():
    with pytest.raises(BlochOutOfBall):
        oracles.predict("adc", (1, 1, 0), 0.5)
    with pytest.raises(POutOfRange):
        oracles.predict("adc", (0, 0, 0), 1.5)
    with pytest.raises(ValueError):
        oracles.predict("xyz", (0, 0, 0), 0.5)
