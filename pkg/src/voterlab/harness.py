"""Experiment orchestration: nested replication over degree sequences, graph
realizations, and voter runs, with theory attached per graph and reproducible
CSV/JSON outputs.

Rows are keyed by (n, degree_seq_id, graph_id, run_id) and carry the full
seed path, so any cell of the replication tree can be replayed exactly.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy import stats as sp_stats

from .version import __version__
from .degrees import (
    DIRECTED,
    DegreeSequence,
    ParetoSpec,
    empirical_moment,
    sample_pareto_bidegrees,
    sample_pareto_degrees,
    scaling_exponents,
)
from .graph import MultiDigraph, build_cm, build_dcm, strongly_connected_components
from .rng import subseed
from .theory import TheoryParams, entropy_H, theory_params
from .voter import fit_chi, run_many, run_voter
from .walk import meeting_time_mc, stationary, KingmanSpec, kingman_sample

EXPERIMENTS = (
    "consensus-scaling",
    "dmax-correlation",
    "density-vs-kingman",
    "wf-parabola",
    "theory-table",
)
ENSEMBLES = ("alpha-CM", "alpha-DCM", "explicit-degrees")
QUENCH_MODES = ("annealed", "quench-degrees", "quench-all")

_COLUMNS = {
    "consensus-scaling": [
        "n", "degree_seq_id", "graph_id", "run_id", "consensus_time",
        "final_opinion", "n_effective", "d_max", "theta", "chi",
        "predicted_mean", "seed_path",
    ],
    "dmax-correlation": [
        "n", "degree_seq_id", "graph_id", "run_id", "consensus_time",
        "final_opinion", "n_effective", "d_max", "seed_path",
    ],
    "density-vs-kingman": [
        "n", "degree_seq_id", "graph_id", "run_id", "kind", "value",
        "rescaled", "m_pi", "seed_path",
    ],
    "wf-parabola": [
        "n", "degree_seq_id", "graph_id", "run_id", "t", "density",
        "weighted_density", "weighted_discordance", "seed_path",
    ],
    "theory-table": [
        "n", "degree_seq_id", "graph_id", "run_id", "n_effective", "d_max",
        "delta", "beta", "rho", "gamma", "theta", "chi", "predicted_mean",
        "seed_path",
    ],
}


@dataclass
class ExperimentConfig:
    experiment: str
    ensemble: str
    n_list: tuple[int, ...]
    u: float = 0.5
    alpha: Optional[float] = None
    x_min: Optional[int] = None
    n_degree_seqs: int = 10
    n_graphs_per_seq: int = 5
    n_voter_runs_per_graph: int = 10
    quench_mode: str = "annealed"
    seed: int = 0
    regular_degree: Optional[int] = None
    explicit_deg: Optional[tuple[int, ...]] = None
    explicit_in_deg: Optional[tuple[int, ...]] = None
    explicit_out_deg: Optional[tuple[int, ...]] = None
    explicit_directed: bool = True
    m_pi_source: str = "mc"  # "mc" | "theory"
    m_pi_pairs: int = 2000
    kingman_k_max: int = 2000
    kingman_draws: int = 10000
    observe_points: int = 200
    max_events: int = 10**12

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}")
        if self.quench_mode not in QUENCH_MODES:
            raise ValueError(f"unknown quench mode {self.quench_mode!r}")
        if self.m_pi_source not in ("mc", "theory"):
            raise ValueError(f"m_pi_source must be 'mc' or 'theory', got {self.m_pi_source!r}")
        if not self.n_list:
            raise ValueError("n_list must be non-empty")
        if min(self.n_degree_seqs, self.n_graphs_per_seq, self.n_voter_runs_per_graph) < 1:
            raise ValueError("replication counts must be >= 1")
        if not 0.0 <= self.u <= 1.0:
            raise ValueError(f"u must lie in [0, 1], got {self.u}")
        if self.ensemble.startswith("alpha"):
            if self.alpha is None or self.x_min is None:
                raise ValueError("alpha ensembles need alpha and x_min")
            recommended = 2 if self.ensemble == "alpha-DCM" else 3
            if self.x_min < recommended:
                import warnings

                warnings.warn(
                    f"x_min={self.x_min} is below the whp-connectivity default "
                    f"{recommended} for {self.ensemble}; runs restrict to the "
                    "largest component",
                    stacklevel=2,
                )
        # quenched layers collapse the corresponding replication axis
        if self.quench_mode == "quench-degrees":
            self.n_degree_seqs = 1
        elif self.quench_mode == "quench-all":
            self.n_degree_seqs = 1
            self.n_graphs_per_seq = 1

    @property
    def directed(self) -> bool:
        if self.ensemble == "alpha-DCM":
            return True
        if self.ensemble == "alpha-CM":
            return False
        return self.explicit_directed

    def to_mapping(self) -> dict:
        out = asdict(self)
        for key in ("n_list", "explicit_deg", "explicit_in_deg", "explicit_out_deg"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out


def parse_config_text(text: str) -> ExperimentConfig:
    """Flat ``key = value`` config; '#' starts a comment, lists are comma-separated."""
    raw: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {line!r}")
        key, value = line.split("=", 1)
        raw[key.strip()] = value.strip()
    return config_from_strings(raw)


def config_from_strings(raw: dict[str, str]) -> ExperimentConfig:
    kwargs: dict = {}
    int_keys = {
        "x_min", "n_degree_seqs", "n_graphs_per_seq", "n_voter_runs_per_graph",
        "seed", "regular_degree", "m_pi_pairs", "kingman_k_max", "kingman_draws",
        "observe_points", "max_events",
    }
    float_keys = {"u", "alpha"}
    tuple_keys = {"n_list", "explicit_deg", "explicit_in_deg", "explicit_out_deg"}
    bool_keys = {"explicit_directed"}
    for key, value in raw.items():
        if key in tuple_keys:
            kwargs[key] = tuple(int(v) for v in value.split(",") if v.strip())
        elif key in int_keys:
            kwargs[key] = int(value)
        elif key in float_keys:
            kwargs[key] = float(value)
        elif key in bool_keys:
            kwargs[key] = value.lower() in ("1", "true", "yes")
        else:
            kwargs[key] = value
    return ExperimentConfig(**kwargs)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[dict]
    summary: dict
    meta: dict

    @property
    def columns(self) -> list[str]:
        return _COLUMNS[self.config.experiment]

    def rows_csv_text(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_fmt(row.get(c)) for c in self.columns))
        return "\n".join(lines) + "\n"

    def write(self, outdir: str | Path) -> None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "rows.csv").write_text(self.rows_csv_text())
        (outdir / "summary.json").write_text(_dumps(self.summary))
        (outdir / "meta.json").write_text(_dumps(self.meta))


class PartialExperimentError(RuntimeError):
    """Raised when a cell of the replication tree fails; carries what finished."""

    def __init__(self, cause: BaseException, rows: list[dict], resume_token: dict):
        super().__init__(f"experiment aborted at {resume_token}: {cause}")
        self.cause = cause
        self.rows = rows
        self.resume_token = resume_token


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def box_stats(values: np.ndarray) -> dict:
    """Five-number summary with linearly interpolated quartiles and the
    1.5 IQR whisker/outlier rule."""
    values = np.asarray(values, dtype=float)
    q1, med, q3 = np.percentile(values, [25, 50, 75])
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = values[(values >= lo_fence) & (values <= hi_fence)]
    return {
        "count": int(values.size),
        "mean": float(values.mean()),
        "median": float(med),
        "q1": float(q1),
        "q3": float(q3),
        "whisker_lo": float(inside.min()) if inside.size else float(q1),
        "whisker_hi": float(inside.max()) if inside.size else float(q3),
        "outliers_lower": int((values < lo_fence).sum()),
        "outliers_upper": int((values > hi_fence).sum()),
    }


def compare_distributions(samples_a, samples_b) -> tuple[float, float]:
    """(two-sample KS statistic, difference of means)."""
    a = np.asarray(samples_a, dtype=float)
    b = np.asarray(samples_b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    ks = float(sp_stats.ks_2samp(a, b).statistic)
    return ks, float(a.mean() - b.mean())


@dataclass(eq=False)
class RealizedGraph:
    """One cell of the (sequence, graph) grid, restricted to its giant piece."""

    n_requested: int
    degree_seq_id: int
    graph_id: int
    sequence: DegreeSequence
    graph: MultiDigraph
    n_effective: int
    d_max: int
    theory: Optional[TheoryParams]
    sequence_hash: str


def _sequence_for(cfg: ExperimentConfig, n: int, seq_id: int) -> DegreeSequence:
    if cfg.ensemble == "explicit-degrees":
        if cfg.regular_degree is not None:
            const = np.full(n, cfg.regular_degree, dtype=np.int64)
            if cfg.explicit_directed:
                return DegreeSequence.directed(const, const)
            return DegreeSequence.undirected(const)
        if cfg.explicit_deg is not None:
            return DegreeSequence.undirected(np.array(cfg.explicit_deg))
        if cfg.explicit_in_deg is not None and cfg.explicit_out_deg is not None:
            return DegreeSequence.directed(
                np.array(cfg.explicit_in_deg), np.array(cfg.explicit_out_deg)
            )
        raise ValueError("explicit-degrees needs regular_degree, explicit_deg, or explicit_in/out_deg")
    spec = ParetoSpec(cfg.alpha, cfg.x_min, n, subseed(cfg.seed, "degrees", n, seq_id))
    if cfg.ensemble == "alpha-DCM":
        return sample_pareto_bidegrees(spec)
    return sample_pareto_degrees(spec)


def _realize(cfg: ExperimentConfig, n: int, seq_id: int, graph_id: int) -> RealizedGraph:
    seq = _sequence_for(cfg, n, seq_id)
    seq_hash = hashlib.sha256(
        seq.in_deg.tobytes() + seq.out_deg.tobytes()
    ).hexdigest()[:16]
    build = build_dcm if seq.kind == DIRECTED else build_cm
    g = build(seq, subseed(cfg.seed, "graph", n, seq_id, graph_id))
    comps = strongly_connected_components(g)
    if comps.largest_size < g.n:
        g, _ = comps.largest_subgraph(g)
    seq_eff = g.degree_sequence()
    theory = None
    if seq_eff.kind == DIRECTED and g.n >= 2 and int(seq_eff.out_deg.min()) >= 1:
        try:
            theory = theory_params(seq_eff)
        except ValueError:
            # degenerate sequences (rho = 1) have no closed-form prefactor
            theory = None
    return RealizedGraph(
        n, seq_id, graph_id, seq_eff, g, g.n, seq.d_max, theory, seq_hash
    )


def _seed_path(cfg: ExperimentConfig, n: int, sid: int, gid: int, rid) -> str:
    return f"{cfg.seed}/{n}/{sid}/{gid}/{rid}"


def _iter_cells(cfg: ExperimentConfig, n: int):
    for sid in range(cfg.n_degree_seqs):
        for gid in range(cfg.n_graphs_per_seq):
            yield sid, gid


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Execute the configured replication protocol; see _COLUMNS for schemas.

    On a mid-run failure the rows completed so far are attached to the raised
    PartialExperimentError together with a resume token naming the failed
    cell.
    """
    rows: list[dict] = []
    cell = {"n": None, "degree_seq_id": None, "graph_id": None}
    try:
        builder = {
            "consensus-scaling": _run_consensus_rows,
            "dmax-correlation": _run_consensus_rows,
            "density-vs-kingman": _run_kingman_rows,
            "wf-parabola": _run_wf_rows,
            "theory-table": _run_theory_rows,
        }[cfg.experiment]
        per_graph: list[dict] = []
        for n in cfg.n_list:
            for sid, gid in _iter_cells(cfg, n):
                cell = {"n": n, "degree_seq_id": sid, "graph_id": gid}
                realized = _realize(cfg, n, sid, gid)
                per_graph.append(builder(cfg, realized, rows))
    except Exception as exc:  # pragma: no cover - exercised via tests
        raise PartialExperimentError(exc, rows, cell) from exc

    rows.sort(key=_row_key)
    summary = _summarize(cfg, rows, per_graph)
    meta = {
        "config": cfg.to_mapping(),
        "columns": _COLUMNS[cfg.experiment],
        "package_version": __version__,
        "numpy_version": np.__version__,
    }
    return ExperimentResult(cfg, rows, summary, meta)


def _row_key(row: dict) -> tuple:
    return (
        row.get("n", 0),
        row.get("degree_seq_id", -1),
        row.get("graph_id", -1),
        str(row.get("kind", "")),
        row.get("run_id", -1),
        row.get("t", 0.0),
    )


def _run_consensus_rows(cfg: ExperimentConfig, rg: RealizedGraph, rows: list[dict]) -> dict:
    n, sid, gid = rg.n_requested, rg.degree_seq_id, rg.graph_id
    predicted = None
    if rg.theory is not None:
        predicted = entropy_H(cfg.u) * rg.theory.theta * rg.n_effective
    if rg.n_effective < 2:
        times = np.zeros(cfg.n_voter_runs_per_graph)
        finals = np.zeros(cfg.n_voter_runs_per_graph, dtype=int)
    else:
        times, finals, _ = run_many(
            rg.graph, cfg.u, cfg.n_voter_runs_per_graph,
            subseed(cfg.seed, "voter", n, sid, gid), cfg.max_events,
        )
    for rid in range(cfg.n_voter_runs_per_graph):
        row = {
            "n": n, "degree_seq_id": sid, "graph_id": gid, "run_id": rid,
            "consensus_time": float(times[rid]), "final_opinion": int(finals[rid]),
            "n_effective": rg.n_effective, "d_max": rg.d_max,
            "seed_path": _seed_path(cfg, n, sid, gid, rid),
        }
        if cfg.experiment == "consensus-scaling":
            row["theta"] = rg.theory.theta if rg.theory else None
            row["chi"] = rg.theory.chi if rg.theory else None
            row["predicted_mean"] = predicted
        rows.append(row)
    return {
        "n": n, "degree_seq_id": sid, "graph_id": gid, "d_max": rg.d_max,
        "mean_time": float(times.mean()), "n_effective": rg.n_effective,
        "theta": rg.theory.theta if rg.theory else None,
        "predicted_mean": predicted, "sequence_hash": rg.sequence_hash,
    }


def _graph_m_pi(cfg: ExperimentConfig, rg: RealizedGraph):
    if cfg.m_pi_source == "theory":
        if rg.theory is None:
            raise ValueError("theory m_pi needs a directed, strongly connected graph")
        return rg.n_effective * rg.theory.theta / 2.0, 0.0
    pi = stationary(rg.graph).pi
    est = meeting_time_mc(
        rg.graph, pi, cfg.m_pi_pairs,
        subseed(cfg.seed, "meeting", rg.n_requested, rg.degree_seq_id, rg.graph_id),
    )
    return est.mean, est.stderr


def _run_kingman_rows(cfg: ExperimentConfig, rg: RealizedGraph, rows: list[dict]) -> dict:
    n, sid, gid = rg.n_requested, rg.degree_seq_id, rg.graph_id
    m_pi, m_pi_err = _graph_m_pi(cfg, rg)
    if m_pi <= 0.0:
        raise ValueError(
            f"meeting time is zero on cell (n={n}, seq={sid}, graph={gid}); "
            "cannot rescale consensus samples"
        )
    times, _, _ = run_many(
        rg.graph, cfg.u, cfg.n_voter_runs_per_graph,
        subseed(cfg.seed, "voter", n, sid, gid), cfg.max_events,
    )
    for rid in range(cfg.n_voter_runs_per_graph):
        rows.append({
            "n": n, "degree_seq_id": sid, "graph_id": gid, "run_id": rid,
            "kind": "consensus", "value": float(times[rid]),
            "rescaled": float(times[rid] / m_pi), "m_pi": m_pi,
            "seed_path": _seed_path(cfg, n, sid, gid, rid),
        })
    return {
        "n": n, "degree_seq_id": sid, "graph_id": gid,
        "m_pi": m_pi, "m_pi_stderr": m_pi_err,
        "rescaled": (times / m_pi).tolist(), "sequence_hash": rg.sequence_hash,
    }


def _run_wf_rows(cfg: ExperimentConfig, rg: RealizedGraph, rows: list[dict]) -> dict:
    n, sid, gid = rg.n_requested, rg.degree_seq_id, rg.graph_id
    dist = stationary(rg.graph)
    if rg.theory is not None:
        scale = entropy_H(cfg.u) * rg.theory.theta * rg.n_effective
    else:
        order = empirical_moment(rg.sequence.in_deg, 1) ** 2 / empirical_moment(rg.sequence.in_deg, 2)
        scale = entropy_H(cfg.u) * rg.n_effective * order
    grid = np.linspace(0.0, 2.0 * scale, cfg.observe_points)
    points: list[tuple[float, float]] = []
    for rid in range(cfg.n_voter_runs_per_graph):
        trace = run_voter(
            rg.graph, cfg.u, subseed(cfg.seed, "voter", n, sid, gid, rid),
            pi=dist.pi, observe=grid, max_events=cfg.max_events,
        )
        for t, density, weighted, disc in trace.observations:
            rows.append({
                "n": n, "degree_seq_id": sid, "graph_id": gid, "run_id": rid,
                "t": float(t), "density": float(density),
                "weighted_density": float(weighted),
                "weighted_discordance": float(disc),
                "seed_path": _seed_path(cfg, n, sid, gid, rid),
            })
            # t = 0 is the raw iid initialization, before any relaxation
            if t > 0.0:
                points.append((weighted, disc))
    chi_hat = fit_chi(points)
    m_pi, m_pi_err = _graph_m_pi(cfg, rg)
    out = {
        "n": n, "degree_seq_id": sid, "graph_id": gid, "chi_hat": chi_hat,
        "pi_delta": dist.pi_delta, "m_pi": m_pi, "m_pi_stderr": m_pi_err,
        "inv_chi_product": m_pi * dist.pi_delta, "sequence_hash": rg.sequence_hash,
    }
    if rg.theory is not None:
        out["chi_formula"] = rg.theory.chi
    return out


def _run_theory_rows(cfg: ExperimentConfig, rg: RealizedGraph, rows: list[dict]) -> dict:
    n, sid, gid = rg.n_requested, rg.degree_seq_id, rg.graph_id
    row = {
        "n": n, "degree_seq_id": sid, "graph_id": gid, "run_id": 0,
        "n_effective": rg.n_effective, "d_max": rg.d_max,
        "seed_path": _seed_path(cfg, n, sid, gid, 0),
    }
    if rg.theory is not None:
        t = rg.theory
        row.update(delta=t.delta, beta=t.beta, rho=t.rho, gamma=t.gamma,
                   theta=t.theta, chi=t.chi,
                   predicted_mean=entropy_H(cfg.u) * t.theta * rg.n_effective)
    rows.append(row)
    return {**row, "sequence_hash": rg.sequence_hash}


def _summarize(cfg: ExperimentConfig, rows: list[dict], per_graph: list[dict]) -> dict:
    summary: dict = {
        "experiment": cfg.experiment,
        "ensemble": cfg.ensemble,
        "u": cfg.u,
        "entropy": entropy_H(cfg.u),
    }
    if cfg.experiment in ("consensus-scaling", "dmax-correlation"):
        per_n = []
        for n in cfg.n_list:
            vals = np.array([r["consensus_time"] for r in rows if r["n"] == n])
            stats = box_stats(vals)
            stats["n"] = n
            preds = [g["predicted_mean"] for g in per_graph if g["n"] == n and g["predicted_mean"]]
            if preds:
                stats["predicted_mean"] = float(np.mean(preds))
            per_n.append(stats)
        summary["per_n"] = per_n
        if cfg.experiment == "consensus-scaling" and len(cfg.n_list) > 1:
            ns = np.array([p["n"] for p in per_n], dtype=float)
            means = np.array([p["mean"] for p in per_n])
            if (means > 0).all():
                slope, intercept = np.polyfit(np.log(ns), np.log(means), 1)
                summary["scaling"] = {"slope": float(slope), "intercept": float(intercept)}
                if cfg.alpha is not None:
                    a, b = scaling_exponents(cfg.alpha)
                    summary["scaling"]["predicted_a"] = a
                    summary["scaling"]["predicted_b"] = b
                    # empirical prefactor of log^a(n) n^b, never asserted
                    logc = np.log(means) - a * np.log(np.log(ns)) - b * np.log(ns)
                    summary["scaling"]["fitted_c"] = float(np.exp(logc.mean()))
        if cfg.experiment == "dmax-correlation":
            d = np.array([g["d_max"] for g in per_graph], dtype=float)
            m = np.array([g["mean_time"] for g in per_graph])
            summary["per_graph"] = [
                {k: g[k] for k in ("n", "degree_seq_id", "graph_id", "d_max", "mean_time")}
                for g in per_graph
            ]
            if d.size > 2 and d.std() > 0:
                slope, intercept = np.polyfit(d, m, 1)
                summary["dmax"] = {
                    "pearson_r": float(np.corrcoef(d, m)[0, 1]),
                    "slope": float(slope),
                    "intercept": float(intercept),
                }
    elif cfg.experiment == "density-vs-kingman":
        rescaled = np.concatenate([np.asarray(g["rescaled"]) for g in per_graph])
        reference = kingman_sample(
            KingmanSpec(cfg.u, cfg.kingman_k_max), cfg.kingman_draws,
            subseed(cfg.seed, "kingman-reference"),
        )
        for i, value in enumerate(reference):
            rows.append({
                "n": cfg.n_list[0], "degree_seq_id": -1, "graph_id": -1,
                "run_id": i, "kind": "kingman", "value": float(value),
                "rescaled": float(value), "m_pi": None,
                "seed_path": _seed_path(cfg, cfg.n_list[0], -1, -1, i),
            })
        rows.sort(key=_row_key)
        ks, gap = compare_distributions(rescaled, reference)
        summary["kingman"] = {
            "ks": ks,
            "mean_gap": gap,
            "rescaled_mean": float(rescaled.mean()),
            "target_mean": 2.0 * entropy_H(cfg.u),
            "k_max": cfg.kingman_k_max,
            "per_graph_m_pi": [
                {k: g[k] for k in ("n", "degree_seq_id", "graph_id", "m_pi", "m_pi_stderr")}
                for g in per_graph
            ],
        }
    elif cfg.experiment == "wf-parabola":
        keys = ("n", "degree_seq_id", "graph_id", "chi_hat", "chi_formula",
                "pi_delta", "m_pi", "m_pi_stderr", "inv_chi_product")
        table = [{k: g.get(k) for k in keys} for g in per_graph]
        summary["wf"] = {
            "per_graph": table,
            "chi_hat_mean": float(np.mean([g["chi_hat"] for g in per_graph])),
        }
        formulas = [g["chi_formula"] for g in per_graph if g.get("chi_formula") is not None]
        if formulas:
            summary["wf"]["chi_formula_mean"] = float(np.mean(formulas))
    elif cfg.experiment == "theory-table":
        keys = ("n", "degree_seq_id", "graph_id", "n_effective", "d_max",
                "delta", "beta", "rho", "gamma", "theta", "chi", "predicted_mean")
        summary["theory"] = {
            "per_graph": [{k: g.get(k) for k in keys} for g in per_graph],
        }
        thetas = [g["theta"] for g in per_graph if g.get("theta") is not None]
        if thetas:
            summary["theory"]["theta_mean"] = float(np.mean(thetas))

    summary["sequence_hashes"] = {
        f'{g["n"]}/{g["degree_seq_id"]}/{g["graph_id"]}': g["sequence_hash"]
        for g in per_graph
    }
    return summary
