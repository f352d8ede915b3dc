"""Parameter sweeps, figure fixtures and oracle-vs-pipeline verification."""
from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelKind, evolve_joint_batch, kraus_stack, p_grid
from .errors import InvalidConfig, UnknownFixture
from .measures import coherence_split_batch, concurrence, negativity_batch
from .oracles import QUANTITIES, predict_arrays
from .states import BlochVector, check_bloch, density_from_bloch_array, sample_bloch_array

COLUMNS = ("p", "C_total", "C_S", "C_E", "C_l", "C_nl", "E_ent", "gap")
DEFAULT_STEPS = 101
VERIFY_CHUNK = 100


@dataclass(frozen=True)
class SweepConfig:
    channel: ChannelKind
    bloch: BlochVector
    p_steps: int = DEFAULT_STEPS
    output_path: str | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.p_steps < 2:
            raise InvalidConfig(f"p_steps must be >= 2, got {self.p_steps}")
        try:
            check_bloch(self.bloch)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc


def evolve_grid(kind, r, ps) -> np.ndarray:
    """Joint states for one initial state over a p grid: (len(ps), 2 d_E, 2 d_E)."""
    kind = ChannelKind.parse(kind)
    ks = kraus_stack(kind, ps)
    rho = density_from_bloch_array(np.asarray(r, dtype=np.float64))
    rhos = np.broadcast_to(rho, (len(ps), 2, 2))
    return evolve_joint_batch(rhos, ks)


def entanglement_batch(mats, d_env: int) -> np.ndarray:
    """Concurrence for qubit environments, twice the negativity otherwise."""
    if d_env == 2:
        return concurrence(mats)
    return 2.0 * negativity_batch(mats, d_env)


def sweep_table(kind, r, steps: int = DEFAULT_STEPS) -> dict:
    """All sweep columns as arrays keyed by ``COLUMNS``."""
    kind = ChannelKind.parse(kind)
    ps = p_grid(steps)
    mats = evolve_grid(kind, check_bloch(r), ps)
    split = coherence_split_batch(mats, kind.env_dim)
    ent = entanglement_batch(mats, kind.env_dim)
    return {
        "p": ps,
        "C_total": split.total,
        "C_S": split.system,
        "C_E": split.environment,
        "C_l": split.local,
        "C_nl": split.non_local,
        "E_ent": ent,
        "gap": split.non_local - ent,
    }


def _fmt(x: float) -> str:
    return f"{float(x) + 0.0:.15e}"


def format_csv(table: dict) -> str:
    buf = io.StringIO()
    buf.write(",".join(COLUMNS) + "\n")
    for row in zip(*(table[c] for c in COLUMNS)):
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _write(text: str, path: str | None) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_sweep(cfg: SweepConfig) -> str:
    """CSV document for one channel and initial state; also written to
    ``cfg.output_path`` when set (``OSError`` propagates)."""
    text = format_csv(sweep_table(cfg.channel, cfg.bloch, cfg.p_steps))
    _write(text, cfg.output_path)
    return text


@dataclass(frozen=True)
class FigureFixture:
    figure_id: str
    channel: ChannelKind
    states: tuple
    curves: tuple

    @property
    def bloch(self) -> BlochVector:
        return self.states[0]


FIXTURES = {
    f.figure_id: f
    for f in (
        FigureFixture(
            "fig1",
            ChannelKind.PDC,
            (BlochVector(-0.41, 0.80, -0.38), BlochVector(0.03, -0.15, -0.19)),
            ("C_nl", "E_ent", "gap"),
        ),
        FigureFixture(
            "fig2",
            ChannelKind.BFC,
            (BlochVector(-0.11, -0.61, 0.77),),
            ("C_total", "C_S", "C_E", "C_nl", "E_ent"),
        ),
        FigureFixture(
            "fig2_inset",
            ChannelKind.BFC,
            (BlochVector(0.37, -0.08, -0.49),),
            ("C_total", "C_S", "C_E", "C_nl", "E_ent"),
        ),
        FigureFixture(
            "fig3",
            ChannelKind.PFC,
            (BlochVector(-0.11, -0.61, 0.77),),
            ("C_total", "C_S", "C_E", "C_nl", "E_ent"),
        ),
        FigureFixture(
            "fig4",
            ChannelKind.DC,
            (BlochVector(0.0, 0.0, 0.0),),
            ("C_total", "C_S", "C_E", "C_nl", "E_ent"),
        ),
        FigureFixture(
            "fig4_inset",
            ChannelKind.DC,
            (BlochVector(-0.58, -0.76, 0.11),),
            ("C_total", "C_S", "C_E", "C_nl", "E_ent"),
        ),
    )
}


def get_fixture(fixture) -> FigureFixture:
    if isinstance(fixture, FigureFixture):
        return fixture
    try:
        return FIXTURES[fixture]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {fixture!r}; expected one of {', '.join(FIXTURES)}"
        ) from None


def reproduce_figure(fixture, state_index: int = 0, steps: int = DEFAULT_STEPS,
                     output_path: str | None = None) -> str:
    """Sweep CSV for a figure's channel and its ``state_index``-th initial state.

    The header is the full sweep schema; the figure's curves are a subset of
    the columns (``FigureFixture.curves``), with E_ent holding 2 E_n for the
    phase damping and depolarizing figures.
    """
    fx = get_fixture(fixture)
    if not 0 <= state_index < len(fx.states):
        raise InvalidConfig(
            f"{fx.figure_id} has {len(fx.states)} state(s); index {state_index} out of range"
        )
    cfg = SweepConfig(fx.channel, fx.states[state_index], steps, output_path)
    return run_sweep(cfg)


@dataclass
class Deviation:
    max_dev: float = 0.0
    worst_r: tuple = (float("nan"),) * 3
    worst_p: float = float("nan")

    def update(self, dev: np.ndarray, rs: np.ndarray, ps: np.ndarray) -> None:
        idx = np.unravel_index(int(np.argmax(dev)), dev.shape)
        if dev[idx] > self.max_dev or np.isnan(self.worst_p):
            self.max_dev = float(dev[idx])
            self.worst_r = tuple(float(x) for x in rs[idx[0]])
            self.worst_p = float(ps[idx[1]])


@dataclass
class VerificationReport:
    tolerance: float
    n_states: int
    seed: int
    steps: int
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(
            d.max_dev <= self.tolerance for per in self.results.values() for d in per.values()
        )

    def max_deviation(self, kind, quantity: str) -> float:
        return self.results[ChannelKind.parse(kind)][quantity].max_dev

    def format(self) -> str:
        lines = [
            f"# verify n_states={self.n_states} seed={self.seed} "
            f"steps={self.steps} tolerance={self.tolerance:.3e}",
            "channel,quantity,max_deviation,worst_r1,worst_r2,worst_r3,worst_p,status",
        ]
        for kind, per in self.results.items():
            for name, d in per.items():
                status = "PASS" if d.max_dev <= self.tolerance else "FAIL"
                r = ",".join(f"{x:.17g}" for x in d.worst_r)
                lines.append(
                    f"{kind.value},{name},{d.max_dev:.6e},{r},{d.worst_p:.17g},{status}"
                )
        lines.append(f"# overall {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _chunk_deviations(kind: ChannelKind, rs: np.ndarray, ps: np.ndarray,
                      entanglement: bool = True) -> dict:
    """Per-quantity |oracle - numeric| arrays of shape (len(rs), len(ps))."""
    n, m = len(rs), len(ps)
    d_env = kind.env_dim
    ks = np.broadcast_to(kraus_stack(kind, ps), (n, m, d_env, 2, 2)).reshape(n * m, d_env, 2, 2)
    rhos = np.repeat(density_from_bloch_array(rs), m, axis=0)
    mats = evolve_joint_batch(rhos, ks)
    split = coherence_split_batch(mats, d_env)
    numeric = {
        "c_total": split.total,
        "c_system": split.system,
        "c_environment": split.environment,
        "c_nonlocal": split.non_local,
    }
    if entanglement and d_env == 2:
        numeric["entanglement"] = concurrence(mats)
    oracle = predict_arrays(kind, rs[:, None, :], ps[None, :])
    return {
        name: np.abs(oracle[name] - numeric[name].reshape(n, m))
        for name in QUANTITIES
        if name in numeric
    }


def _verify_task(args):
    return _chunk_deviations(*args)


def run_verify(channels=None, n_states: int = 1000, seed: int = 0, tolerance: float = 1e-9,
               steps: int = DEFAULT_STEPS, workers: int = 1,
               entanglement: bool = True) -> VerificationReport:
    """Compare closed forms with the dilation pipeline on random mixed states.

    States are split into fixed-size chunks; with ``workers > 1`` chunks run
    in separate processes and are merged in submission order, so the report
    does not depend on the worker count. ``entanglement=False`` skips the
    concurrence comparison and checks the four coherences only.
    """
    if n_states < 1:
        raise InvalidConfig("n_states must be >= 1")
    kinds = [ChannelKind.parse(c) for c in (channels or list(ChannelKind))]
    rs_all = sample_bloch_array(seed, n_states, "mixed")
    ps = p_grid(steps)
    tasks = [
        (kind, rs_all[i : i + VERIFY_CHUNK], ps, entanglement)
        for kind in kinds
        for i in range(0, n_states, VERIFY_CHUNK)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_verify_task, tasks))
    else:
        outputs = [_verify_task(t) for t in tasks]

    report = VerificationReport(tolerance, n_states, seed, steps)
    for (kind, rs, _, _), devs in zip(tasks, outputs):
        per = report.results.setdefault(kind, {})
        for name, dev in devs.items():
            per.setdefault(name, Deviation()).update(dev, rs, ps)
    return report
