"""FastAPI service exposing the voterlab pipeline."""
from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from ..degrees import DegreeSequence, ParetoSpec, empirical_moment, moment_summary
from ..graph import MultiDigraph, build_cm, build_dcm, strongly_connected_components
from ..harness import (
    _COLUMNS,
    ExperimentConfig,
    PartialExperimentError,
    config_from_strings,
    run_experiment,
)
from ..theory import entropy_H, predict_consensus, theory_params, theta_leading_order
from ..version import __version__
from ..voter import run_many, run_voter
from ..walk import (
    KingmanSpec,
    full_coalescence_mc,
    kingman_sample,
    meeting_time_mc,
    mixing_diagnostics,
    stationary,
)
from . import schemas


def _sequence_from_model(model: schemas.DegreeSequenceModel) -> DegreeSequence:
    if model.kind == "undirected":
        if model.deg is None:
            raise ValueError("undirected sequences need 'deg'")
        return DegreeSequence.undirected(model.deg)
    if model.in_deg is None or model.out_deg is None:
        raise ValueError("directed sequences need 'in_deg' and 'out_deg'")
    return DegreeSequence.directed(model.in_deg, model.out_deg)


def _sequence_to_model(seq: DegreeSequence) -> schemas.DegreeSequenceModel:
    return schemas.DegreeSequenceModel(**seq.to_payload())


def _graph_from_model(model: schemas.GraphModel) -> MultiDigraph:
    return MultiDigraph.from_payload(model.model_dump())


def _graph_to_model(g: MultiDigraph) -> schemas.GraphModel:
    return schemas.GraphModel(**g.to_payload())


def _summary(samples: np.ndarray) -> schemas.SampleSummary:
    n = int(samples.size)
    stderr = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return schemas.SampleSummary(
        mean=float(samples.mean()), stderr=stderr, count=n, samples=samples.tolist()
    )


def create_app() -> FastAPI:
    api = FastAPI(title="voterlab", version=__version__)

    @api.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @api.post("/degrees", response_model=schemas.DegreesResponse)
    def degrees(req: schemas.DegreesRequest) -> schemas.DegreesResponse:
        with _client_errors():
            spec = ParetoSpec(req.alpha, req.x_min, req.n, req.seed)
            if req.directed:
                from ..degrees import sample_pareto_bidegrees

                seq = sample_pareto_bidegrees(spec)
            else:
                from ..degrees import sample_pareto_degrees

                seq = sample_pareto_degrees(spec)
            moments = moment_summary(seq, req.alpha, req.x_min)
        return schemas.DegreesResponse(
            spec=req,
            sequence=_sequence_to_model(seq),
            moments=schemas.MomentSummaryModel(**moments.to_payload()),
        )

    @api.post("/graph", response_model=schemas.GraphResponse)
    def graph(req: schemas.GraphRequest) -> schemas.GraphResponse:
        with _client_errors():
            seq = _sequence_from_model(req.degrees)
            g = build_dcm(seq, req.seed) if seq.kind == "directed" else build_cm(seq, req.seed)
            comps = strongly_connected_components(g)
        return schemas.GraphResponse(
            graph=_graph_to_model(g),
            seed=req.seed,
            n_components=comps.n_components,
            largest_component=comps.largest_size,
        )

    @api.post("/theory", response_model=schemas.TheoryResponse)
    def theory(req: schemas.TheoryRequest) -> schemas.TheoryResponse:
        with _client_errors():
            seq = _sequence_from_model(req.degrees)
            n = req.n if req.n is not None else seq.n
            order = theta_leading_order(seq)
            h = entropy_H(req.u)
            if seq.kind == "directed":
                params = theory_params(seq)
                pred = predict_consensus(params, n, req.u)
                return schemas.TheoryResponse(
                    delta=params.delta, beta=params.beta, rho=params.rho,
                    gamma=params.gamma, theta=params.theta, chi=params.chi,
                    order_m1sq_over_m2=order, H=h,
                    predicted_mean=pred.predicted_mean,
                    predicted_meeting=pred.predicted_meeting,
                )
        # undirected: only the order factor is available in closed form
        return schemas.TheoryResponse(order_m1sq_over_m2=order, H=h)

    @api.post("/walk", response_model=schemas.WalkResponse)
    def walk(req: schemas.WalkRequest) -> schemas.WalkResponse:
        with _client_errors():
            g = _graph_from_model(req.graph)
            dist = stationary(g)
            out = schemas.WalkResponse(
                stationary=schemas.StationaryModel(
                    pi_max=dist.pi_max, pi_delta=dist.pi_delta,
                    residual=dist.residual, method=dist.method,
                )
            )
            m_pi = None
            if req.meeting:
                est = meeting_time_mc(g, dist.pi, req.meeting, req.seed, req.max_events)
                m_pi = est.mean
                out.meeting = _summary(est.samples)
            if req.coalesce:
                samples = full_coalescence_mc(g, req.coalesce, req.seed, req.max_events)
                out.coalescence = _summary(samples)
            if req.kingman:
                spec = KingmanSpec(req.kingman.u, req.kingman.k_max)
                samples = kingman_sample(spec, req.kingman.draws, req.seed)
                out.kingman = _summary(samples)
            if req.mixing:
                diag = mixing_diagnostics(g, dist.pi, m_pi=m_pi)
                out.mixing = schemas.MixingModel(
                    q_max=diag.q_max, t_mix=diag.t_mix, t_mix_steps=diag.t_mix_steps,
                    pi_max=diag.pi_max, directed_condition=diag.directed_condition,
                    ratio_mix_meet=diag.ratio_mix_meet,
                    pure_skeleton_mixes=diag.pure_skeleton_mixes,
                )
        return out

    @api.post("/vote", response_model=schemas.VoteResponse)
    def vote(req: schemas.VoteRequest) -> schemas.VoteResponse:
        with _client_errors():
            g = _graph_from_model(req.graph)
            if req.observe is None:
                times, finals, _ = run_many(g, req.u, req.runs, req.seed, req.max_events)
                runs = [
                    schemas.VoteRun(run_id=r, consensus_time=float(times[r]),
                                    final_opinion=int(finals[r]))
                    for r in range(req.runs)
                ]
                return schemas.VoteResponse(runs=runs)
            dist = stationary(g)
            grid = _observe_grid(req.observe, g, req.u)
            runs = []
            observations = []
            for r in range(req.runs):
                trace = run_voter(
                    g, req.u, req.seed + r, pi=dist.pi, observe=grid,
                    max_events=req.max_events,
                )
                runs.append(schemas.VoteRun(
                    run_id=r, consensus_time=trace.consensus_time,
                    final_opinion=trace.final_opinion,
                ))
                observations.extend(
                    schemas.VoteObservation(
                        run_id=r, t=t, density=o, weighted_density=m,
                        weighted_discordance=s,
                    )
                    for t, o, m, s in trace.observations
                )
            return schemas.VoteResponse(runs=runs, observations=observations)

    @api.post("/experiment", response_model=schemas.ExperimentResponse)
    def experiment(req: schemas.ExperimentRequest) -> schemas.ExperimentResponse:
        with _client_errors():
            cfg = req.config
            if all(isinstance(v, str) for v in cfg.values()):
                config = config_from_strings(cfg)
            else:
                config = ExperimentConfig(**{
                    k: tuple(v) if isinstance(v, list) else v for k, v in cfg.items()
                })
        try:
            result = run_experiment(config)
        except PartialExperimentError as err:
            columns = _COLUMNS[config.experiment]
            from ..harness import _fmt

            lines = [",".join(columns)]
            lines += [",".join(_fmt(r.get(c)) for c in columns) for r in err.rows]
            raise HTTPException(status_code=500, detail={
                "error": str(err.cause),
                "resume_token": err.resume_token,
                "rows_csv": "\n".join(lines) + "\n",
            })
        return schemas.ExperimentResponse(
            rows_csv=result.rows_csv_text(), summary=result.summary, meta=result.meta
        )

    return api


def _observe_grid(req: schemas.ObserveRequest, g: MultiDigraph, u: float) -> np.ndarray:
    if req.mode == "explicit":
        if req.t_max is None:
            raise ValueError("explicit observation grids need t_max")
        t_max = req.t_max
    else:
        # bracket the consensus scale: 2 * H(u) * theta * n when the exact
        # prefactor is known, else the order-level analogue
        seq = g.degree_sequence()
        scale = None
        if g.directed:
            try:
                scale = theory_params(seq).theta
            except ValueError:
                scale = None  # degenerate sequence: no closed-form prefactor
        if scale is None:
            m1 = empirical_moment(seq.in_deg, 1)
            m2 = empirical_moment(seq.in_deg, 2)
            scale = m1 * m1 / m2
        t_max = 2.0 * entropy_H(u) * g.n * scale
        if t_max <= 0:
            raise ValueError("auto grid needs u strictly inside (0, 1)")
    return np.linspace(0.0, t_max, req.points)


class _client_errors:
    """Map domain validation errors onto 422 responses."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None and issubclass(exc_type, ValueError):
            raise HTTPException(status_code=422, detail=str(exc))
        return False


app = create_app()
