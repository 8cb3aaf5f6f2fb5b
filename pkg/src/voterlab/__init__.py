"""voterlab: consensus dynamics on heterogeneous (directed) random graphs.

Core layers: Pareto degree sampling, configuration-model matching, random-walk
analytics (stationary law, meeting/coalescence Monte Carlo, Kingman reference
draws), event-driven voter dynamics with diffusion observables, closed-form
theory, and an experiment harness. A FastAPI service wraps the library; the
``voterlab`` CLI is a thin client of that service.
"""
from .version import __version__

from .degrees import (
    DegreeSequence,
    MomentSummary,
    ParetoSpec,
    moment_summary,
    sample_pareto_bidegrees,
    sample_pareto_degrees,
    scaling_exponents,
    truncated_moment,
)
from .graph import (
    ComponentLabeling,
    MultiDigraph,
    build_cm,
    build_dcm,
    is_strongly_connected,
    strongly_connected_components,
)
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    compare_distributions,
    run_experiment,
)
from .theory import (
    ConsensusPrediction,
    TheoryParams,
    entropy_H,
    predict_consensus,
    theory_params,
    theta_leading_order,
)
from .voter import OpinionState, SimTrace, exact_consensus_mean, fit_chi, run_many, run_voter
from .walk import (
    KingmanSpec,
    MeanFieldDiagnostics,
    MeetingEstimate,
    StationaryDistribution,
    full_coalescence_mc,
    kingman_sample,
    meeting_time_mc,
    mixing_diagnostics,
    stationary,
)

__all__ = [
    "__version__",
    "ComponentLabeling",
    "ConsensusPrediction",
    "DegreeSequence",
    "ExperimentConfig",
    "ExperimentResult",
    "KingmanSpec",
    "MeanFieldDiagnostics",
    "MeetingEstimate",
    "MomentSummary",
    "MultiDigraph",
    "OpinionState",
    "ParetoSpec",
    "SimTrace",
    "StationaryDistribution",
    "TheoryParams",
    "build_cm",
    "build_dcm",
    "compare_distributions",
    "entropy_H",
    "exact_consensus_mean",
    "fit_chi",
    "full_coalescence_mc",
    "is_strongly_connected",
    "kingman_sample",
    "meeting_time_mc",
    "mixing_diagnostics",
    "moment_summary",
    "predict_consensus",
    "run_experiment",
    "run_many",
    "run_voter",
    "sample_pareto_bidegrees",
    "sample_pareto_degrees",
    "scaling_exponents",
    "stationary",
    "strongly_connected_components",
    "theory_params",
    "theta_leading_order",
    "truncated_moment",
]
