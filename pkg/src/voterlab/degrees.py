"""Pareto degree sequences: sampling, graphical repair, and moments."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .rng import stream

UNDIRECTED = "undirected"
DIRECTED = "directed"


@dataclass(frozen=True)
class ParetoSpec:
    """Pareto(alpha) with scale ``x_min``: density alpha * x_min^alpha * x^(-alpha-1)."""

    alpha: float
    x_min: int
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.x_min < 1:
            raise ValueError(f"x_min must be >= 1, got {self.x_min}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Integer degrees of ``n`` vertices, undirected or directed (in/out)."""

    kind: str
    in_deg: np.ndarray
    out_deg: np.ndarray

    @classmethod
    def undirected(cls, deg) -> "DegreeSequence":
        deg = np.asarray(deg, dtype=np.int64)
        if deg.ndim != 1 or deg.size == 0:
            raise ValueError("degree sequence must be a non-empty 1-d array")
        if (deg < 0).any():
            raise ValueError("degrees must be non-negative")
        if int(deg.sum()) % 2 != 0:
            raise ValueError("undirected degree sum must be even")
        return cls(UNDIRECTED, deg, deg)

    @classmethod
    def directed(cls, in_deg, out_deg) -> "DegreeSequence":
        in_deg = np.asarray(in_deg, dtype=np.int64)
        out_deg = np.asarray(out_deg, dtype=np.int64)
        if in_deg.shape != out_deg.shape or in_deg.ndim != 1 or in_deg.size == 0:
            raise ValueError("in/out degree sequences must be equal-length 1-d arrays")
        if (in_deg < 0).any() or (out_deg < 0).any():
            raise ValueError("degrees must be non-negative")
        if int(in_deg.sum()) != int(out_deg.sum()):
            raise ValueError("directed sequences need equal in- and out-stub totals")
        return cls(DIRECTED, in_deg, out_deg)

    @property
    def n(self) -> int:
        return int(self.in_deg.size)

    @property
    def deg(self) -> np.ndarray:
        if self.kind != UNDIRECTED:
            raise ValueError("deg is only defined for undirected sequences")
        return self.in_deg

    @property
    def total_stubs(self) -> int:
        """Sum of degrees: 2*edges for undirected, edge count m for directed."""
        return int(self.in_deg.sum())

    @property
    def d_max(self) -> int:
        if self.kind == UNDIRECTED:
            return int(self.in_deg.max())
        return int(max(self.in_deg.max(), self.out_deg.max()))

    def to_payload(self) -> dict:
        if self.kind == UNDIRECTED:
            return {"kind": UNDIRECTED, "deg": self.in_deg.tolist()}
        return {
            "kind": DIRECTED,
            "in_deg": self.in_deg.tolist(),
            "out_deg": self.out_deg.tolist(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "DegreeSequence":
        kind = payload.get("kind")
        if kind == UNDIRECTED:
            return cls.undirected(payload["deg"])
        if kind == DIRECTED:
            return cls.directed(payload["in_deg"], payload["out_deg"])
        raise ValueError(f"unknown degree-sequence kind: {kind!r}")


@dataclass(frozen=True)
class MomentSummary:
    """Empirical first/second moments plus truncated-integral counterparts."""

    m1: float
    m2: float
    m1_out: Optional[float]
    m2_out: Optional[float]
    m1_trunc: Optional[float]
    m2_trunc: Optional[float]
    d_max: int
    frechet_rescaled: Optional[float]

    def to_payload(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def pareto_continuous(rng: np.random.Generator, alpha: float, x_min: float, n: int) -> np.ndarray:
    """Continuous Pareto draws via inverse CDF x_min * U^(-1/alpha), U in (0, 1]."""
    u = 1.0 - rng.random(n)
    return x_min * u ** (-1.0 / alpha)


def sample_pareto_degrees(spec: ParetoSpec) -> DegreeSequence:
    """Undirected sequence: floored Pareto draws, parity repaired.

    If the stub sum is odd one uniformly chosen vertex gains a single stub,
    which perturbs the law by O(1/n).
    """
    rng = stream(spec.seed, "degrees")
    deg = np.floor(pareto_continuous(rng, spec.alpha, spec.x_min, spec.n)).astype(np.int64)
    if int(deg.sum()) % 2 != 0:
        deg[rng.integers(spec.n)] += 1
    return DegreeSequence.undirected(deg)


def sample_pareto_bidegrees(spec: ParetoSpec) -> DegreeSequence:
    """Directed sequence: Pareto in-degrees; out-degrees a random permutation.

    Permuting makes both marginals Pareto while the stub totals balance
    exactly, so no parity repair is needed.
    """
    rng = stream(spec.seed, "degrees")
    in_deg = np.floor(pareto_continuous(rng, spec.alpha, spec.x_min, spec.n)).astype(np.int64)
    out_deg = rng.permutation(in_deg)
    return DegreeSequence.directed(in_deg, out_deg)


def truncated_moment(alpha: float, x_min: float, d_max_cut: float, i: int) -> float:
    """Integral of x^i against the Pareto density over [x_min, d_max_cut].

    The ``alpha == i`` branch is the logarithmic one and is handled exactly.
    ``d_max_cut`` may be ``inf`` only when the integral converges (alpha > i).
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if i not in (1, 2):
        raise ValueError(f"moment order must be 1 or 2, got {i}")
    if d_max_cut < x_min:
        raise ValueError("d_max_cut must be >= x_min")
    if math.isinf(d_max_cut):
        if alpha <= i:
            raise ValueError(f"untruncated moment of order {i} diverges for alpha={alpha}")
        return alpha * x_min**i / (alpha - i)
    if alpha == i:
        return alpha * x_min**alpha * math.log(d_max_cut / x_min)
    p = i - alpha
    return alpha * x_min**alpha * (d_max_cut**p - x_min**p) / p


def scaling_exponents(alpha: float) -> tuple[float, float]:
    """(a, b) in the consensus-time law ~ c * log^a(n) * n^b for the given tail."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if alpha > 2:
        return (0.0, 1.0)
    if alpha == 2:
        return (-1.0, 1.0)
    if alpha > 1:
        return (0.0, 2.0 * (alpha - 1.0) / alpha)
    if alpha == 1:
        return (2.0, 0.0)
    return (0.0, 0.0)


def empirical_moment(deg: np.ndarray, i: int) -> float:
    # integer power sums are exact in Python ints
    total = sum(int(d) ** i for d in deg.tolist())
    return total / deg.size


def moment_summary(
    seq: DegreeSequence,
    alpha: Optional[float] = None,
    x_min: Optional[float] = None,
) -> MomentSummary:
    """Empirical moments of ``seq`` plus, when (alpha, x_min) are known, the
    truncated integrals at the observed d_max and the Frechet rescaling."""
    m1 = empirical_moment(seq.in_deg, 1)
    m2 = empirical_moment(seq.in_deg, 2)
    m1_out = m2_out = None
    if seq.kind == DIRECTED:
        m1_out = empirical_moment(seq.out_deg, 1)
        m2_out = empirical_moment(seq.out_deg, 2)
    d_max = seq.d_max
    m1_trunc = m2_trunc = frechet = None
    if alpha is not None and x_min is not None:
        m1_trunc = truncated_moment(alpha, x_min, float(d_max), 1)
        m2_trunc = truncated_moment(alpha, x_min, float(d_max), 2)
        frechet = d_max / seq.n ** (1.0 / alpha)
    return MomentSummary(m1, m2, m1_out, m2_out, m1_trunc, m2_trunc, d_max, frechet)


def write_degrees_csv(
    path: str | Path,
    seq: DegreeSequence,
    header: Optional[dict] = None,
) -> None:
    """CSV with a ``#``-prefixed JSON header line, then one row per vertex."""
    meta = dict(header or {})
    meta["kind"] = seq.kind
    meta["n"] = seq.n
    lines = ["#" + json.dumps(meta, sort_keys=True, separators=(",", ":"))]
    if seq.kind == UNDIRECTED:
        lines.append("vertex,deg")
        lines.extend(f"{v},{d}" for v, d in enumerate(seq.in_deg.tolist()))
    else:
        lines.append("vertex,in_deg,out_deg")
        lines.extend(
            f"{v},{a},{b}"
            for v, (a, b) in enumerate(zip(seq.in_deg.tolist(), seq.out_deg.tolist()))
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_degrees_csv(path: str | Path) -> tuple[DegreeSequence, dict]:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError(f"{path}: missing JSON header line")
    meta = json.loads(text[0][1:])
    body = [ln for ln in text[1:] if ln.strip()]
    if not body:
        raise ValueError(f"{path}: no rows")
    columns = body[0].split(",")
    rows = [ln.split(",") for ln in body[1:]]
    if meta.get("kind") == UNDIRECTED:
        if columns != ["vertex", "deg"]:
            raise ValueError(f"{path}: expected columns vertex,deg got {columns}")
        deg = np.array([int(r[1]) for r in rows], dtype=np.int64)
        return DegreeSequence.undirected(deg), meta
    if columns != ["vertex", "in_deg", "out_deg"]:
        raise ValueError(f"{path}: expected columns vertex,in_deg,out_deg got {columns}")
    in_deg = np.array([int(r[1]) for r in rows], dtype=np.int64)
    out_deg = np.array([int(r[2]) for r in rows], dtype=np.int64)
    return DegreeSequence.directed(in_deg, out_deg), meta
