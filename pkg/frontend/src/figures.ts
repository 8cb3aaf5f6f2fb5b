/** The four figure kinds rendered from harness outputs. */
import { writeFileSync } from "node:fs";

import {
    FigureSpec,
    loadSummary,
    numeric,
    readTable,
    resolveKey,
    resolveNumber,
} from "./schema.js";
import { boxStats, gaussianKde, maxParabolaResidual } from "./stats.js";
import { MARGIN, drawAxes, el, finish, makeFrame, polyline } from "./svg.js";

export interface RenderResult {
    outPath: string;
    /** max vertical distance of the cloud from the overlay parabola */
    residual?: number;
}

export function render(spec: FigureSpec, outPath: string): RenderResult {
    const summary = loadSummary(spec.summary);
    let svg: string;
    let residual: number | undefined;
    switch (spec.figure_kind) {
        case "boxplot":
            svg = renderBoxplot(spec, summary);
            break;
        case "scatter":
            svg = renderScatter(spec, summary);
            break;
        case "density":
            svg = renderDensity(spec, summary);
            break;
        case "parabola": {
            const out = renderParabola(spec, summary);
            svg = out.svg;
            residual = out.residual;
            break;
        }
    }
    writeFileSync(outPath, svg);
    return { outPath, residual };
}

function overlayPath(spec: FigureSpec, name: string, fallback: string): string {
    return spec.overlays?.[name] ?? fallback;
}

function renderBoxplot(spec: FigureSpec, summary: unknown): string {
    const table = readTable(spec.rows, ["n", "consensus_time"]);
    const groups = new Map<number, number[]>();
    for (const row of table.rows) {
        const n = numeric(row, "n");
        const t = numeric(row, "consensus_time");
        if (!groups.has(n)) groups.set(n, []);
        groups.get(n)!.push(t);
    }
    const xKind = spec.x_scale ?? "log";
    const yKind = spec.y_scale ?? "log";
    const ns = [...groups.keys()].sort((a, b) => a - b);
    const stats = ns.map((n) => {
        let values = groups.get(n)!;
        if (yKind === "log") {
            values = values.filter((v) => v > 0);
            if (values.length === 0) {
                throw new Error(`all consensus times at n=${n} are <= 0; use y_scale=linear`);
            }
        }
        return boxStats(values);
    });
    const yLo = Math.min(...stats.map((s) => Math.min(s.whiskerLo, ...s.outliers, s.mean)));
    const yHi = Math.max(...stats.map((s) => Math.max(s.whiskerHi, ...s.outliers, s.mean)));
    const frame = makeFrame([ns[0]!, ns[ns.length - 1]!], [yLo, yHi], xKind, yKind);
    drawAxes(frame, "n", "consensus time");

    const half = Math.min(18, (frame.x.range[1] - frame.x.range[0]) / (4 * ns.length));
    ns.forEach((n, i) => {
        const s = stats[i]!;
        const cx = frame.x(n);
        const top = frame.y(s.q3);
        const bottom = frame.y(s.q1);
        frame.body.push(
            el("line", { x1: cx, y1: frame.y(s.whiskerLo), x2: cx, y2: bottom, stroke: "#333" }),
            el("line", { x1: cx, y1: frame.y(s.whiskerHi), x2: cx, y2: top, stroke: "#333" }),
            el("rect", {
                x: cx - half, y: top, width: 2 * half, height: bottom - top,
                fill: "#cfe3f7", stroke: "#333",
            }),
            el("line", {
                x1: cx - half, y1: frame.y(s.median), x2: cx + half, y2: frame.y(s.median),
                stroke: "#b8860b", "stroke-width": 2,
            }),
            el("circle", { cx, cy: frame.y(s.mean), r: 3.5, fill: "#1f77b4" }),
        );
        for (const v of s.outliers) {
            frame.body.push(el("circle", { cx, cy: frame.y(v), r: 2, fill: "none", stroke: "#555" }));
        }
    });

    const perN = resolveKey(summary, overlayPath(spec, "predicted", "per_n"));
    if (Array.isArray(perN)) {
        const line = perN
            .filter((p): p is { n: number; predicted_mean: number } =>
                typeof p === "object" && p !== null
                && typeof (p as Record<string, unknown>)["predicted_mean"] === "number"
                && typeof (p as Record<string, unknown>)["n"] === "number")
            .sort((a, b) => a.n - b.n);
        if (line.length >= 2) {
            polyline(frame, line.map((p) => p.n), line.map((p) => p.predicted_mean), "#2ca02c", 2);
        }
    }
    return finish(frame);
}

function renderScatter(spec: FigureSpec, summary: unknown): string {
    const table = readTable(spec.rows, ["degree_seq_id", "graph_id", "d_max", "consensus_time"]);
    const groups = new Map<string, { dMax: number; times: number[] }>();
    for (const row of table.rows) {
        const key = `${row["degree_seq_id"]}/${row["graph_id"]}`;
        if (!groups.has(key)) groups.set(key, { dMax: numeric(row, "d_max"), times: [] });
        groups.get(key)!.times.push(numeric(row, "consensus_time"));
    }
    const points = [...groups.values()].map((g) => ({
        x: g.dMax,
        y: g.times.reduce((s, v) => s + v, 0) / g.times.length,
    }));
    const xs = points.map((p) => p.x);
    const ys = points.map((p) => p.y);
    const frame = makeFrame(
        [Math.min(...xs), Math.max(...xs)],
        [Math.min(...ys), Math.max(...ys)],
        spec.x_scale ?? "linear",
        spec.y_scale ?? "linear",
    );
    drawAxes(frame, "largest degree", "mean consensus time");
    for (const p of points) {
        frame.body.push(el("circle", { cx: frame.x(p.x), cy: frame.y(p.y), r: 4, fill: "#1f77b4" }));
    }
    const slope = resolveNumber(summary, overlayPath(spec, "slope", "dmax.slope"));
    const intercept = resolveNumber(summary, overlayPath(spec, "intercept", "dmax.intercept"));
    const [x0, x1] = frame.x.domain;
    polyline(frame, [x0, x1], [intercept + slope * x0, intercept + slope * x1], "#d62728", 2);
    return finish(frame);
}

function renderDensity(spec: FigureSpec, summary: unknown): string {
    const table = readTable(spec.rows, ["kind", "rescaled"]);
    const consensus: number[] = [];
    const reference: number[] = [];
    for (const row of table.rows) {
        const value = numeric(row, "rescaled");
        if (row["kind"] === "consensus") consensus.push(value);
        else if (row["kind"] === "kingman") reference.push(value);
    }
    if (consensus.length === 0 || reference.length === 0) {
        throw new Error(`${spec.rows}: needs rows of kind 'consensus' and 'kingman'`);
    }
    const dc = gaussianKde(consensus);
    const dk = gaussianKde(reference);
    const xLo = Math.min(dc.x[0]!, dk.x[0]!);
    const xHi = Math.max(dc.x[dc.x.length - 1]!, dk.x[dk.x.length - 1]!);
    const yHi = Math.max(...dc.y, ...dk.y);
    const frame = makeFrame([xLo, xHi], [0, yHi], spec.x_scale ?? "linear", spec.y_scale ?? "linear");
    drawAxes(frame, "rescaled consensus time", "density");
    polyline(frame, dk.x, dk.y, "#1f77b4", 2);
    polyline(frame, dc.x, dc.y, "#d62728", 2);
    try {
        const target = resolveNumber(summary, overlayPath(spec, "target_mean", "kingman.target_mean"));
        frame.body.push(el("line", {
            x1: frame.x(target), y1: frame.y.range[0], x2: frame.x(target), y2: frame.y.range[1],
            stroke: "#2ca02c", "stroke-dasharray": "4 3",
        }));
    } catch {
        // no reference-mean key in this summary; the overlay is optional
    }
    frame.body.push(
        el("text", { x: MARGIN.left + 10, y: MARGIN.top + 14, "font-size": 12, fill: "#d62728" },
            "rescaled consensus"),
        el("text", { x: MARGIN.left + 10, y: MARGIN.top + 30, "font-size": 12, fill: "#1f77b4" },
            "Kingman reference"),
    );
    return finish(frame);
}

function renderParabola(spec: FigureSpec, summary: unknown): { svg: string; residual: number } {
    const table = readTable(spec.rows, ["weighted_density", "weighted_discordance"]);
    const points = table.rows.map(
        (row) => [numeric(row, "weighted_density"), numeric(row, "weighted_discordance")] as const,
    );
    const chi = resolveNumber(summary, overlayPath(spec, "chi", "wf.chi_hat_mean"));
    const residual = maxParabolaResidual(points, chi);
    const yHi = Math.max(chi / 4, ...points.map((p) => p[1]));
    const frame = makeFrame([0, 1], [0, yHi], spec.x_scale ?? "linear", spec.y_scale ?? "linear");
    drawAxes(frame, "weighted opinion density", "weighted discordance");
    for (const [x, y] of points) {
        frame.body.push(el("circle", {
            cx: frame.x(x), cy: frame.y(y), r: 2, fill: "#1f77b4", "fill-opacity": 0.35,
        }));
    }
    const grid = Array.from({ length: 101 }, (_, i) => i / 100);
    polyline(frame, grid, grid.map((x) => chi * x * (1 - x)), "#d62728", 2);
    console.log(`parabola overlay max residual: ${residual.toExponential(3)} (chi = ${chi})`);
    return { svg: finish(frame), residual };
}
