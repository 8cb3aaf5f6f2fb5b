"""Configuration-model multigraphs and component extraction.

Edges are stored once as an ``(k, 2)`` array plus a stub-level CSR adjacency
with one entry per stub, so sampling a uniform out-stub is an O(1) index.
Self-loops and multi-edges are kept; an undirected self-loop contributes two
stubs to its endpoint.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .degrees import DIRECTED, UNDIRECTED, DegreeSequence
from .rng import stream


def _csr_from(src: np.ndarray, dst: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    order = np.argsort(src, kind="stable")
    return offsets, dst[order].astype(np.int32)


@dataclass(eq=False)
class MultiDigraph:
    n: int
    directed: bool
    edges: np.ndarray  # (k, 2) int32; one row per edge (tail, head)
    out_offsets: np.ndarray = field(repr=False, default=None)
    out_targets: np.ndarray = field(repr=False, default=None)
    in_offsets: np.ndarray = field(repr=False, default=None)
    in_sources: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_edges(cls, n: int, edges, directed: bool) -> "MultiDigraph":
        edges = np.asarray(edges, dtype=np.int32).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoints out of range")
        if directed:
            out_off, out_tgt = _csr_from(edges[:, 0], edges[:, 1], n)
            in_off, in_src = _csr_from(edges[:, 1], edges[:, 0], n)
        else:
            # stub-doubled adjacency: each edge contributes both directions,
            # a self-loop appearing twice in its endpoint's list
            src = np.concatenate([edges[:, 0], edges[:, 1]])
            dst = np.concatenate([edges[:, 1], edges[:, 0]])
            out_off, out_tgt = _csr_from(src, dst, n)
            in_off, in_src = out_off, out_tgt
        return cls(n, directed, edges, out_off, out_tgt, in_off, in_src)

    @property
    def out_deg(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    @property
    def in_deg(self) -> np.ndarray:
        return np.diff(self.in_offsets)

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def degree_sequence(self) -> DegreeSequence:
        if self.directed:
            return DegreeSequence.directed(self.in_deg, self.out_deg)
        return DegreeSequence.undirected(self.out_deg)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        """A(x, y) as a sparse dict; undirected edges are keyed sorted."""
        counts: dict[tuple[int, int], int] = {}
        for a, b in self.edges.tolist():
            if not self.directed and a > b:
                a, b = b, a
            counts[(a, b)] = counts.get((a, b), 0) + 1
        return counts

    def permuted(self, perm: np.ndarray) -> "MultiDigraph":
        """Relabel vertices by ``perm`` (vertex v becomes perm[v])."""
        perm = np.asarray(perm, dtype=np.int32)
        return MultiDigraph.from_edges(self.n, perm[self.edges], self.directed)

    def to_payload(self) -> dict:
        rows = [[int(a), int(b), c] for (a, b), c in sorted(self.multiplicities().items())]
        return {"n": self.n, "directed": self.directed, "edges": rows}

    @classmethod
    def from_payload(cls, payload: dict) -> "MultiDigraph":
        rows = payload["edges"]
        expanded = [(a, b) for a, b, c in rows for _ in range(int(c))]
        edges = np.array(expanded, dtype=np.int32).reshape(-1, 2)
        return cls.from_edges(int(payload["n"]), edges, bool(payload["directed"]))


def build_cm(degrees: DegreeSequence, seed: int) -> MultiDigraph:
    """Uniform stub matching of an undirected sequence (even stub sum)."""
    if degrees.kind != UNDIRECTED:
        raise ValueError("build_cm needs an undirected degree sequence")
    if degrees.total_stubs % 2 != 0:
        raise ValueError("stub sum must be even")
    rng = stream(seed, "matching")
    stubs = np.repeat(np.arange(degrees.n, dtype=np.int32), degrees.deg)
    rng.shuffle(stubs)
    edges = stubs.reshape(-1, 2)
    return MultiDigraph.from_edges(degrees.n, edges, directed=False)


def build_dcm(degrees: DegreeSequence, seed: int) -> MultiDigraph:
    """Uniform bijection of out-stubs (tails) onto in-stubs (heads)."""
    if degrees.kind != DIRECTED:
        raise ValueError("build_dcm needs a directed degree sequence")
    rng = stream(seed, "matching")
    tails = np.repeat(np.arange(degrees.n, dtype=np.int32), degrees.out_deg)
    heads = np.repeat(np.arange(degrees.n, dtype=np.int32), degrees.in_deg)
    rng.shuffle(heads)
    edges = np.column_stack([tails, heads])
    return MultiDigraph.from_edges(degrees.n, edges, directed=True)


@dataclass(eq=False)
class ComponentLabeling:
    labels: np.ndarray  # component id per vertex
    sizes: np.ndarray  # size per component id
    largest: int  # id of a largest component

    @property
    def n_components(self) -> int:
        return int(self.sizes.size)

    @property
    def largest_size(self) -> int:
        return int(self.sizes[self.largest])

    def largest_member_mask(self) -> np.ndarray:
        return self.labels == self.largest

    def largest_subgraph(self, g: MultiDigraph) -> tuple[MultiDigraph, np.ndarray]:
        """Induced subgraph on a largest component; returns (subgraph, old ids)."""
        keep = self.largest_member_mask()
        old_ids = np.flatnonzero(keep)
        remap = np.full(g.n, -1, dtype=np.int64)
        remap[old_ids] = np.arange(old_ids.size)
        if g.n_edges:
            inside = keep[g.edges[:, 0]] & keep[g.edges[:, 1]]
            edges = remap[g.edges[inside]]
        else:
            edges = np.empty((0, 2), dtype=np.int64)
        sub = MultiDigraph.from_edges(old_ids.size, edges, g.directed)
        return sub, old_ids


def strongly_connected_components(g: MultiDigraph) -> ComponentLabeling:
    """Tarjan SCCs (iterative); undirected graphs get connected components."""
    if not g.directed:
        return _connected_components(g)
    n = g.n
    off, tgt = g.out_offsets, g.out_targets
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    counter = 0
    n_comp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, off[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, ptr = work[-1]
            if ptr < off[v + 1]:
                work[-1] = (v, ptr + 1)
                w = tgt[ptr]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, off[w]))
                elif on_stack[w]:
                    if low[v] > index[w]:
                        low[v] = index[w]
            else:
                work.pop()
                if work:
                    pv = work[-1][0]
                    if low[pv] > low[v]:
                        low[pv] = low[v]
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = n_comp
                        if w == v:
                            break
                    n_comp += 1
    sizes = np.bincount(comp, minlength=n_comp)
    return ComponentLabeling(comp, sizes, int(np.argmax(sizes)))


def _connected_components(g: MultiDigraph) -> ComponentLabeling:
    n = g.n
    off, tgt = g.out_offsets, g.out_targets
    comp = np.full(n, -1, dtype=np.int64)
    n_comp = 0
    for root in range(n):
        if comp[root] != -1:
            continue
        comp[root] = n_comp
        frontier = [root]
        while frontier:
            v = frontier.pop()
            for w in tgt[off[v]: off[v + 1]]:
                if comp[w] == -1:
                    comp[w] = n_comp
                    frontier.append(int(w))
        n_comp += 1
    sizes = np.bincount(comp, minlength=n_comp)
    return ComponentLabeling(comp, sizes, int(np.argmax(sizes)))


def is_strongly_connected(g: MultiDigraph) -> bool:
    return strongly_connected_components(g).largest_size == g.n


def write_graph_csv(path: str | Path, g: MultiDigraph, header: Optional[dict] = None) -> None:
    """Edge-list CSV ``src,dst,multiplicity`` with a JSON header line."""
    meta = dict(header or {})
    meta.update({"n": g.n, "directed": g.directed})
    lines = ["#" + json.dumps(meta, sort_keys=True, separators=(",", ":"))]
    lines.append("src,dst,multiplicity")
    for (a, b), c in sorted(g.multiplicities().items()):
        lines.append(f"{a},{b},{c}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_graph_csv(path: str | Path) -> tuple[MultiDigraph, dict]:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError(f"{path}: missing JSON header line")
    meta = json.loads(text[0][1:])
    body = [ln for ln in text[1:] if ln.strip()]
    if not body or body[0].split(",") != ["src", "dst", "multiplicity"]:
        raise ValueError(f"{path}: expected columns src,dst,multiplicity")
    rows = [[int(x) for x in ln.split(",")] for ln in body[1:]]
    payload = {"n": meta["n"], "directed": meta["directed"], "edges": rows}
    return MultiDigraph.from_payload(payload), meta
