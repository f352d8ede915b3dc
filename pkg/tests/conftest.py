import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from coherence_flow.states import BlochVector

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@st.composite
def bloch_vectors(draw, radius=None):
    """Bloch vectors inside the unit ball (on the sphere when radius=1)."""
    x = draw(st.floats(-1, 1))
    y = draw(st.floats(-1, 1))
    z = draw(st.floats(-1, 1))
    v = np.array([x, y, z])
    n = np.linalg.norm(v)
    if n < 1e-6:
        v, n = np.array([0.0, 0.0, 1.0]), 1.0
    rad = draw(st.floats(0, 1)) if radius is None else radius
    v = v / n * rad
    return BlochVector(*map(float, v))


def random_unitary(rng, d):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g + g.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
