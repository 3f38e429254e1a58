"""Experiment drivers: simulation, inference, and the benchmark suite.

Each ``exp_*`` function consumes an :class:`ExperimentConfig`, runs one
experiment end to end, writes timestamped CSV files plus a ``run_meta`` text
file into the output directory, and returns its numerical results so callers
(tests, demo scripts) can analyse them without re-parsing the CSVs.

Reproducibility: a single seed drives everything.  Substreams are derived
per role (data, inits, chains) and per sweep point with fixed stream ids, so
any experiment re-run with the same config and seed produces identical data
files; only wall-clock fields in run_meta differ.
"""

from __future__ import annotations

import csv
import math
import subprocess
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .integrators import (
    PhaseState,
    imex_l_steps,
    imex_step,
    sv_full_step,
    sv_prior_step,
    svex_l_steps,
)
from .model import ExperimentParams, Simulation, sample_prior_trajectory, simulate
from .posterior import (
    CflCertificate,
    HmcParams,
    PosteriorProblem,
    Scheme,
    cfl_certificate,
    hamiltonian,
    hamiltonian_prior,
)
from .rng import RandomStream
from .sampler import draw_momentum, run_chain

__all__ = [
    "ExperimentConfig",
    "default_config",
    "read_config_file",
    "apply_overrides",
    "primes_below",
    "fit_loglog_slope",
    "exp_simulate",
    "exp_infer",
    "exp_certify",
    "exp_surrogate",
    "exp_stability",
    "exp_efficiency",
    "exp_convergence",
    "exp_complexity",
    "EXPERIMENTS",
]

__version__ = "0.1.0"

# substream roles (offsets into the seed's stream-id space)
_SID_DATA = 1
_SID_INIT_Q = 2
_SID_INIT_P = 3
_SID_CHAIN = 100  # + sweep-point offset + scheme offset
_SID_SWEEP_DATA = 10_000  # + sweep-point offset


@dataclass
class ExperimentConfig:
    """Bundle of everything one experiment run needs."""

    params: ExperimentParams = field(default_factory=ExperimentParams)
    hmc: HmcParams = field(default_factory=HmcParams)
    out_dir: Path = Path("runs")
    thin: int = 10
    sweep: list | None = None          # h values, or K values for complexity
    updates_per_point: int = 200       # chain length per (h, L) efficiency point
    reference_h: float = 1.0e-4        # convergence reference step size
    repeats: int = 3                   # timing repetitions (best-of)

    def __post_init__(self):
        self.out_dir = Path(self.out_dir)
        if self.thin < 1:
            raise ValueError("thin must be >= 1")
        if self.updates_per_point < 1:
            raise ValueError("updates_per_point must be >= 1")
        if self.reference_h <= 0:
            raise ValueError("reference_h must be > 0")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")


_EXPERIMENT_DEFAULTS: dict[str, dict] = {
    "simulate": {},
    "infer": {"hmc": dict(h=0.03, L=15, updates=2000)},
    "certify": {},
    "surrogate": {
        "hmc": dict(h=0.05, L=20),
        "sweep": [round(x, 6) for x in np.geomspace(0.02, 0.2, 13)],
    },
    "stability": {"hmc": dict(h=0.1, L=100), "sweep": [0.1, 0.2]},
    "efficiency": {
        "hmc": dict(h=0.06, L=20),
        "sweep": [0.02, 0.04, 0.06, 0.08, 0.10, 0.12],
    },
    "convergence": {
        "hmc": dict(h=0.01, L=100),
        "sweep": [1.0 / l for l in (100, 141, 200, 283, 400, 566, 800, 1131, 1600, 2263, 3200)],
    },
    "complexity": {
        "params": dict(N=2),
        "hmc": dict(h=0.05, L=20),
        "sweep": [10, 14, 20, 28, 40, 56, 79, 100],
    },
}


def default_config(experiment: str, seed: int = 0, out_dir="runs") -> ExperimentConfig:
    """Per-experiment default configuration (benchmark figures' settings)."""
    if experiment not in _EXPERIMENT_DEFAULTS:
        raise ValueError(f"unknown experiment {experiment!r}")
    d = _EXPERIMENT_DEFAULTS[experiment]
    params = ExperimentParams(**d.get("params", {}))
    hmc = HmcParams(seed=seed, **d.get("hmc", {}))
    return ExperimentConfig(
        params=params, hmc=hmc, out_dir=Path(out_dir), sweep=d.get("sweep")
    )


# -- flat key=value config files -------------------------------------------

_PARAM_KEYS = {"D": float, "I_ref": float, "I_bg": float, "omega": float,
               "tau_dead": float, "tau_exp": float, "N": int, "K": int}
_HMC_KEYS = {"theta": float, "mass": float, "h": float, "L": int,
             "scheme": str, "updates": int, "seed": int}
_RUN_KEYS = {"thin": int, "out": str, "updates_per_point": int,
             "reference_h": float, "repeats": int, "sweep": str}


def read_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment, blanks ignored."""
    mapping: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ValueError(f"{path}:{lineno}: empty key or value")
        mapping[key] = value
    return mapping


def _parse_sweep(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def apply_overrides(config: ExperimentConfig, mapping: dict) -> ExperimentConfig:
    """Return config with string/typed overrides applied (file or CLI flags).

    Unknown keys raise ValueError; values may be strings (parsed per key) or
    already-typed Python values.
    """
    p_over, h_over = {}, {}
    for key, value in mapping.items():
        if value is None:
            continue
        if key in _PARAM_KEYS:
            p_over[key] = _PARAM_KEYS[key](value)
        elif key in _HMC_KEYS:
            h_over[key] = _HMC_KEYS[key](value)
        elif key in _RUN_KEYS:
            if key == "sweep":
                config = replace(config, sweep=_parse_sweep(value) if isinstance(value, str) else list(value))
            elif key == "out":
                config = replace(config, out_dir=Path(value))
            else:
                config = replace(config, **{key: _RUN_KEYS[key](value)})
        else:
            raise ValueError(f"unknown config key {key!r}")
    if p_over:
        config = replace(config, params=replace(config.params, **p_over))
    if h_over:
        config = replace(config, hmc=replace(config.hmc, **h_over))
    return config


# -- output helpers ---------------------------------------------------------


def _timestamp() -> str:
    now = time.time()
    return time.strftime("%Y%m%d-%H%M%S", time.localtime(now)) + f"-{int(now * 1e6) % 1_000_000:06d}"


def _build_identifier() -> str:
    here = Path(__file__).resolve().parent
    try:
        rev = subprocess.run(
            ["git", "-C", str(here), "rev-parse", "--short", "HEAD"],
            capture_output=True, text=True, timeout=5,
        )
        if rev.returncode == 0:
            return rev.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return f"v{__version__}"


def _write_csv(path: Path, header: list[str], rows) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _write_run_meta(config: ExperimentConfig, experiment: str, stamp: str,
                    wall_sec: float, extras: dict) -> Path:
    p, h = config.params, config.hmc
    lines = {
        "experiment": experiment,
        "timestamp": stamp,
        "build": _build_identifier(),
        "version": __version__,
        "seed": h.seed,
        "D": p.D, "I_ref": p.I_ref, "I_bg": p.I_bg, "omega": p.omega,
        "tau_dead": p.tau_dead, "tau_exp": p.tau_exp, "N": p.N, "K": p.K,
        "theta": h.theta, "mass": h.mass, "h": h.h, "L": h.L,
        "scheme": h.scheme.value, "updates": h.updates,
        "thin": config.thin,
        "sweep": "" if config.sweep is None else " ".join(str(v) for v in config.sweep),
        "wall_time_sec": f"{wall_sec:.3f}",
    }
    lines.update(extras)
    path = config.out_dir / f"run_meta_{stamp}.txt"
    with open(path, "w") as fh:
        for key, value in lines.items():
            fh.write(f"{key} = {value}\n")
    return path


def primes_below(n: int) -> list[int]:
    """Primes < n by sieve (integration step counts for the efficiency sweep)."""
    if n <= 2:
        return []
    mask = np.ones(n, dtype=bool)
    mask[:2] = False
    for i in range(2, int(n ** 0.5) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return [int(i) for i in np.nonzero(mask)[0]]


def fit_loglog_slope(x, y) -> float:
    """Least-squares slope of log10(y) against log10(x), finite points only."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y) & (x > 0) & (y > 0)
    if keep.sum() < 2:
        return math.nan
    return float(np.polyfit(np.log10(x[keep]), np.log10(y[keep]), 1)[0])


# -- experiments ------------------------------------------------------------


@dataclass(frozen=True)
class SimulateResult:
    simulation: Simulation
    paths: list


def exp_simulate(config: ExperimentConfig) -> SimulateResult:
    """Draw one synthetic data set and write counts plus latent trajectory."""
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p = config.params
    sim = simulate(RandomStream(config.hmc.seed, _SID_DATA), p)
    mesh = sim.trajectory.mesh
    window_end = mesh.times[(p.K + 1) * np.arange(1, p.N + 1)]
    counts_path = _write_csv(
        config.out_dir / f"simulate_counts_{stamp}.csv",
        ["n", "t_n", "u_n", "w_n"],
        zip(range(1, p.N + 1), window_end, sim.signal, sim.counts),
    )
    traj_path = _write_csv(
        config.out_dir / f"simulate_trajectory_{stamp}.csv",
        ["node_index", "time_sec", "q_um"],
        zip(range(p.node_count), mesh.times, sim.trajectory.values),
    )
    meta = _write_run_meta(config, "simulate", stamp, time.perf_counter() - t0, {})
    return SimulateResult(simulation=sim, paths=[counts_path, traj_path, meta])


@dataclass(frozen=True)
class InferResult:
    simulation: Simulation
    chains: dict
    paths: list


def exp_infer(config: ExperimentConfig) -> InferResult:
    """Simulate one data set, then sample its posterior with both schemes.

    Chains start at the ground-truth trajectory (no burn-in analysis here;
    the point of the experiment is posterior spread, not convergence from a
    cold start).  If the certificate flags the requested h as unstable for
    the explicit scheme the run proceeds; expect rejections.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h = config.params, config.hmc
    sim = simulate(RandomStream(h.seed, _SID_DATA), p)
    problem = PosteriorProblem(p, counts=sim.counts)
    mesh = sim.trajectory.mesh
    truth = sim.trajectory.values

    window_end = mesh.times[(p.K + 1) * np.arange(1, p.N + 1)]
    paths = [
        _write_csv(
            config.out_dir / f"infer_counts_{stamp}.csv",
            ["n", "t_n", "u_n", "w_n"],
            zip(range(1, p.N + 1), window_end, sim.signal, sim.counts),
        ),
        _write_csv(
            config.out_dir / f"infer_truth_{stamp}.csv",
            ["node_index", "time_sec", "q_um"],
            zip(range(p.node_count), mesh.times, truth),
        ),
    ]
    chains: dict = {}
    for offset, scheme in enumerate((Scheme.SVEX, Scheme.IMEX)):
        hmc = replace(h, scheme=scheme)
        cert = cfl_certificate(p, hmc)
        if scheme is Scheme.SVEX and not cert.stable:
            print(f"warning: h = {hmc.h} exceeds certificate h_max = {cert.h_max:.4g}; "
                  "explicit chain may reject almost everything")
        chain = run_chain(truth, problem, hmc, RandomStream(h.seed, _SID_CHAIN + offset))
        chains[scheme.value] = chain
        paths.append(_write_csv(
            config.out_dir / f"infer_chain_{scheme.value}_{stamp}.csv",
            ["step", "accepted", "H_before", "H_after"],
            zip(range(1, hmc.updates + 1), chain.accepted.astype(int),
                chain.h_before, chain.h_after),
        ))
        steps = range(0, hmc.updates + 1, config.thin)
        paths.append(_write_csv(
            config.out_dir / f"infer_samples_{scheme.value}_{stamp}.csv",
            ["step", "node_index", "q_um"],
            ((s, i, chain.samples[s, i]) for s in steps for i in range(p.node_count)),
        ))
    meta = _write_run_meta(config, "infer", stamp, time.perf_counter() - t0,
                           {"init": "ground_truth"})
    return InferResult(simulation=sim, chains=chains, paths=paths + [meta])


@dataclass(frozen=True)
class CertifyResult:
    certificate: CflCertificate
    report: str
    paths: list


def exp_certify(config: ExperimentConfig) -> CertifyResult:
    """Evaluate the explicit-scheme step-size certificate for this config."""
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h = config.params, config.hmc
    cert = cfl_certificate(p, h)
    lines = [
        f"surrogate oscillator frequency c = {cert.c:.6g}",
        f"certified step bound h_max = 2/c = {cert.h_max:.6g}",
        f"requested step h = {cert.h:.6g} -> {'stable' if cert.stable else 'UNSTABLE'}",
    ]
    if p.tau_sub > p.tau_dead:
        lines.append(
            f"note: tau_sub = {p.tau_sub:.3g} > tau_dead = {p.tau_dead:.3g}; the "
            "dead-link modes are faster than the surrogate frequency, so the "
            "bound above can overestimate the observed stability threshold"
        )
    report = "\n".join(lines)
    path = _write_csv(
        config.out_dir / f"certify_{stamp}.csv",
        ["c", "h_max", "h", "stable"],
        [(cert.c, cert.h_max, cert.h, int(cert.stable))],
    )
    meta = _write_run_meta(config, "certify", stamp, time.perf_counter() - t0, {})
    return CertifyResult(certificate=cert, report=report, paths=[path, meta])


@dataclass(frozen=True)
class SweepResult:
    rows: list
    paths: list


def _max_q_norm(state: PhaseState, one_step, steps: int) -> float:
    """max over l = 0..steps of ||q_l||_2; non-finite states count as inf."""
    best = float(np.linalg.norm(state.q))
    for _ in range(steps):
        state = one_step(state)
        norm = float(np.linalg.norm(state.q))
        if not math.isfinite(norm):
            return math.inf
        best = max(best, norm)
    return best


def exp_surrogate(config: ExperimentConfig) -> SweepResult:
    """Trajectory-bound sweep: b(h) = max step norm over an L-step run.

    Compares the full explicit integrator on the posterior against the
    explicit integrator of the prior subsystem alone, from one shared
    (q0, p0).  The h where b first explodes locates each scheme's stability
    edge; the prior subsystem is the cheap surrogate for the full map.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h0 = config.params, config.hmc
    sweep = config.sweep or _EXPERIMENT_DEFAULTS["surrogate"]["sweep"]
    sim = simulate(RandomStream(h0.seed, _SID_DATA), p)
    problem = PosteriorProblem(p, counts=sim.counts)
    q0 = sample_prior_trajectory(RandomStream(h0.seed, _SID_INIT_Q), p)
    p0 = draw_momentum(RandomStream(h0.seed, _SID_INIT_P), h0, p.node_count)
    init = PhaseState(q=q0, p=p0)
    rows = []
    for h_val in sweep:
        hmc = replace(h0, h=float(h_val))
        b_full = _max_q_norm(init, lambda s: sv_full_step(s, problem, hmc), h0.L)
        b_prior = _max_q_norm(init, lambda s: sv_prior_step(s, problem, hmc), h0.L)
        rows.append((float(h_val), b_full, b_prior))
    path = _write_csv(config.out_dir / f"surrogate_{stamp}.csv",
                      ["h", "b_full", "b_prior"], rows)
    meta = _write_run_meta(config, "surrogate", stamp, time.perf_counter() - t0,
                           {"L": h0.L})
    return SweepResult(rows=rows, paths=[path, meta])


def exp_stability(config: ExperimentConfig) -> SweepResult:
    """Explicit integration of the prior subsystem at each sweep h.

    Writes the per-step phase point of one mid-mesh coordinate and the prior
    subsystem energy; bounded oscillation vs blow-up is visible directly in
    the energy column.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h0 = config.params, config.hmc
    sweep = config.sweep or _EXPERIMENT_DEFAULTS["stability"]["sweep"]
    problem = PosteriorProblem(p)  # prior-only target
    q0 = sample_prior_trajectory(RandomStream(h0.seed, _SID_INIT_Q), p)
    p0 = draw_momentum(RandomStream(h0.seed, _SID_INIT_P), h0, p.node_count)
    coord = p.node_count // 2
    rows = []
    for h_val in sweep:
        hmc = replace(h0, h=float(h_val))
        state = PhaseState(q=q0, p=p0)
        rows.append((float(h_val), 0, 0.0, state.q[coord], state.p[coord],
                     hamiltonian_prior(state.q, state.p, problem, hmc)))
        for step in range(1, h0.L + 1):
            state = sv_prior_step(state, problem, hmc)
            rows.append((float(h_val), step, step * float(h_val), state.q[coord],
                         state.p[coord],
                         hamiltonian_prior(state.q, state.p, problem, hmc)))
    path = _write_csv(config.out_dir / f"stability_{stamp}.csv",
                      ["h", "step", "eta", "q_coord", "p_coord", "H_prior"], rows)
    meta = _write_run_meta(config, "stability", stamp, time.perf_counter() - t0,
                           {"coordinate_index": coord, "L": h0.L, "target": "prior_only"})
    return SweepResult(rows=rows, paths=[path, meta])


def exp_efficiency(config: ExperimentConfig, l_values: list[int] | None = None) -> SweepResult:
    """Mean HMC acceptance rate AR(h) for both schemes.

    For each h, AR is averaged over chains of ``updates_per_point`` updates
    for every integration length L in ``l_values`` (default: primes < 100,
    dodging resonant L h cycles).  Each (h, L) point gets fresh synthetic
    data shared by the two schemes; chains start at the ground truth.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h0 = config.params, config.hmc
    sweep = config.sweep or _EXPERIMENT_DEFAULTS["efficiency"]["sweep"]
    if l_values is None:
        l_values = primes_below(100)
    rows = []
    for i, h_val in enumerate(sweep):
        ars = {Scheme.SVEX: [], Scheme.IMEX: []}
        for j, l_val in enumerate(l_values):
            point = i * 1009 + j
            sim = simulate(RandomStream(h0.seed, _SID_SWEEP_DATA + point), p)
            problem = PosteriorProblem(p, counts=sim.counts)
            for offset, scheme in enumerate((Scheme.SVEX, Scheme.IMEX)):
                hmc = replace(h0, h=float(h_val), L=int(l_val), scheme=scheme,
                              updates=config.updates_per_point)
                chain = run_chain(sim.trajectory.values, problem, hmc,
                                  RandomStream(h0.seed, _SID_CHAIN + 2 * point + offset))
                ars[scheme].append(chain.accept_rate)
        rows.append((float(h_val),
                     float(np.mean(ars[Scheme.SVEX])),
                     float(np.mean(ars[Scheme.IMEX]))))
    path = _write_csv(config.out_dir / f"efficiency_{stamp}.csv",
                      ["h", "AR_svex", "AR_imex"], rows)
    meta = _write_run_meta(config, "efficiency", stamp, time.perf_counter() - t0,
                           {"l_values": " ".join(str(v) for v in l_values),
                            "updates_per_point": config.updates_per_point,
                            "init": "ground_truth"})
    return SweepResult(rows=rows, paths=[path, meta])


def _integrate_recorded(init: PhaseState, problem: PosteriorProblem, hmc: HmcParams,
                        steps: int, scheme: Scheme, track_energy: bool):
    """steps applications of the scheme's one-step map; optionally the max
    energy drift along the way.  Returns (terminal state, max |H_l - H_0|)."""
    one = (lambda s: sv_full_step(s, problem, hmc)) if scheme is Scheme.SVEX \
        else (lambda s: imex_step(s, problem, hmc))
    state = init
    h_ref = hamiltonian(state.q, state.p, problem, hmc) if track_energy else 0.0
    drift = 0.0
    for _ in range(steps):
        state = one(state)
        if track_energy:
            h_now = hamiltonian(state.q, state.p, problem, hmc)
            err = abs(h_now - h_ref)
            if not math.isfinite(err):
                return state, math.inf
            drift = max(drift, err)
    return state, drift


def exp_convergence(config: ExperimentConfig) -> SweepResult:
    """Fixed-time self-convergence of both schemes.

    Integrates one shared (q0, p0) to time L h = 1 for each sweep h and
    compares terminal positions against the same scheme run at
    ``reference_h``; also records the worst energy drift along each run.
    Blown-up runs are recorded as inf and excluded from slope fits.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    p, h0 = config.params, config.hmc
    sweep = config.sweep or _EXPERIMENT_DEFAULTS["convergence"]["sweep"]
    sim = simulate(RandomStream(h0.seed, _SID_DATA), p)
    problem = PosteriorProblem(p, counts=sim.counts)
    q0 = sample_prior_trajectory(RandomStream(h0.seed, _SID_INIT_Q), p)
    p0 = draw_momentum(RandomStream(h0.seed, _SID_INIT_P), h0, p.node_count)
    init = PhaseState(q=q0, p=p0)

    reference = {}
    l_ref = round(1.0 / config.reference_h)
    for scheme in (Scheme.SVEX, Scheme.IMEX):
        hmc = replace(h0, h=config.reference_h, scheme=scheme)
        terminal, _ = _integrate_recorded(init, problem, hmc, l_ref, scheme, False)
        reference[scheme] = terminal.q

    rows = []
    for h_val in sweep:
        steps = round(1.0 / float(h_val))
        errs = {}
        for scheme in (Scheme.SVEX, Scheme.IMEX):
            hmc = replace(h0, h=float(h_val), scheme=scheme)
            terminal, drift = _integrate_recorded(init, problem, hmc, steps, scheme, True)
            q_err = float(np.linalg.norm(terminal.q - reference[scheme]))
            errs[scheme] = (q_err if math.isfinite(q_err) else math.inf, drift)
        rows.append((float(h_val), errs[Scheme.SVEX][0], errs[Scheme.IMEX][0],
                     errs[Scheme.SVEX][1], errs[Scheme.IMEX][1]))
    path = _write_csv(
        config.out_dir / f"convergence_{stamp}.csv",
        ["h", "q_err_svex", "q_err_imex", "H_err_svex", "H_err_imex"], rows)
    meta = _write_run_meta(
        config, "convergence", stamp, time.perf_counter() - t0,
        {"reference_h": config.reference_h,
         "steps": " ".join(str(round(1.0 / float(h))) for h in sweep)})
    return SweepResult(rows=rows, paths=[path, meta])


def exp_complexity(config: ExperimentConfig) -> SweepResult:
    """Wall time of one L-step integration as the mesh is refined in K.

    Fresh data per K, shared by both schemes; each timing is the best of
    ``repeats`` runs after one untimed warm-up (which also populates the
    midpoint operator cache, so setup cost is excluded).  Both schemes are
    expected to scale linearly in the trajectory length M = N(K+1)+1.
    """
    t0 = time.perf_counter()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    h0 = config.hmc
    sweep = config.sweep or _EXPERIMENT_DEFAULTS["complexity"]["sweep"]
    rows = []
    for idx, k_val in enumerate(sweep):
        k = int(k_val)
        params = replace(config.params, K=k)
        sim = simulate(RandomStream(h0.seed, _SID_SWEEP_DATA + idx), params)
        problem = PosteriorProblem(params, counts=sim.counts)
        p0 = draw_momentum(RandomStream(h0.seed, _SID_INIT_P + idx), h0, params.node_count)
        init = PhaseState(q=sim.trajectory.values, p=p0)
        walls = {}
        for scheme, runner in ((Scheme.SVEX, svex_l_steps), (Scheme.IMEX, imex_l_steps)):
            hmc = replace(h0, scheme=scheme)
            runner(init, problem, hmc)  # warm-up, untimed
            best = math.inf
            for _ in range(config.repeats):
                tic = time.perf_counter()
                runner(init, problem, hmc)
                best = min(best, time.perf_counter() - tic)
            walls[scheme] = best
        rows.append((k, walls[Scheme.SVEX], walls[Scheme.IMEX]))
    path = _write_csv(config.out_dir / f"complexity_{stamp}.csv",
                      ["K", "wall_svex_sec", "wall_imex_sec"], rows)
    meta = _write_run_meta(config, "complexity", stamp, time.perf_counter() - t0,
                           {"repeats": config.repeats, "N": config.params.N,
                            "timing": "integration only, operators prebuilt"})
    return SweepResult(rows=rows, paths=[path, meta])


EXPERIMENTS = {
    "simulate": exp_simulate,
    "infer": exp_infer,
    "certify": exp_certify,
    "surrogate": exp_surrogate,
    "stability": exp_stability,
    "efficiency": exp_efficiency,
    "convergence": exp_convergence,
    "complexity": exp_complexity,
}
