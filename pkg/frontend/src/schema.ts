/** Harness file schemas: rows.csv tables, summary.json key paths, FigureSpec. */
import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

export interface Table {
    columns: string[];
    rows: Record<string, string>[];
}

/** Plain comma-separated table (harness rows never quote or embed commas). */
export function parseCsv(text: string, path: string): Table {
    const lines = text.split("\n").filter((line) => line.trim().length > 0);
    if (lines.length === 0) throw new Error(`${path}: empty file`);
    const columns = lines[0]!.split(",");
    const rows = lines.slice(1).map((line, i) => {
        const cells = line.split(",");
        if (cells.length !== columns.length) {
            throw new Error(
                `${path}: row ${i + 1} has ${cells.length} cells for columns [${columns.join(", ")}]`,
            );
        }
        const row: Record<string, string> = {};
        columns.forEach((c, j) => (row[c] = cells[j]!));
        return row;
    });
    return { columns, rows };
}

export function readTable(path: string, required: string[]): Table {
    const table = parseCsv(readFileSync(path, "utf-8"), path);
    const missing = required.filter((c) => !table.columns.includes(c));
    if (missing.length > 0) {
        throw new Error(
            `${path}: missing columns [${missing.join(", ")}]; found [${table.columns.join(", ")}]`,
        );
    }
    if (table.rows.length === 0) throw new Error(`${path}: no data rows`);
    return table;
}

export function numeric(row: Record<string, string>, column: string): number {
    const raw = row[column];
    if (raw === undefined || raw === "") return NaN;
    return Number(raw);
}

export type FigureKind = "boxplot" | "scatter" | "density" | "parabola";
export type AxisScale = "linear" | "log";

export interface FigureSpec {
    figure_kind: FigureKind;
    rows: string;
    summary: string;
    name?: string;
    x_scale?: AxisScale;
    y_scale?: AxisScale;
    /** overlay name -> summary.json key path; literals are refused */
    overlays?: Record<string, string>;
}

const KINDS: FigureKind[] = ["boxplot", "scatter", "density", "parabola"];

export function validateSpec(raw: unknown, specDir: string): FigureSpec {
    if (typeof raw !== "object" || raw === null) throw new Error("figure spec must be an object");
    const spec = raw as Record<string, unknown>;
    const kind = spec["figure_kind"];
    if (typeof kind !== "string" || !KINDS.includes(kind as FigureKind)) {
        throw new Error(`figure_kind must be one of ${KINDS.join(", ")}; got ${String(kind)}`);
    }
    for (const key of ["rows", "summary"]) {
        if (typeof spec[key] !== "string") throw new Error(`figure spec needs a ${key} path`);
    }
    const overlays = spec["overlays"];
    if (overlays !== undefined) {
        if (typeof overlays !== "object" || overlays === null) {
            throw new Error("overlays must map names to summary.json key paths");
        }
        for (const [name, value] of Object.entries(overlays)) {
            if (typeof value !== "string") {
                throw new Error(
                    `overlay '${name}' must reference a summary.json key path, not a literal (${JSON.stringify(value)})`,
                );
            }
        }
    }
    for (const key of ["x_scale", "y_scale"]) {
        const v = spec[key];
        if (v !== undefined && v !== "linear" && v !== "log") {
            throw new Error(`${key} must be 'linear' or 'log'`);
        }
    }
    return {
        figure_kind: kind as FigureKind,
        rows: resolve(specDir, spec["rows"] as string),
        summary: resolve(specDir, spec["summary"] as string),
        name: typeof spec["name"] === "string" ? (spec["name"] as string) : undefined,
        x_scale: spec["x_scale"] as AxisScale | undefined,
        y_scale: spec["y_scale"] as AxisScale | undefined,
        overlays: overlays as Record<string, string> | undefined,
    };
}

export function loadSpecs(path: string): FigureSpec[] {
    const raw = JSON.parse(readFileSync(path, "utf-8"));
    const dir = dirname(resolve(path));
    const list = Array.isArray(raw) ? raw : [raw];
    return list.map((entry) => validateSpec(entry, dir));
}

export function loadSummary(path: string): unknown {
    return JSON.parse(readFileSync(path, "utf-8"));
}

/** Resolve a dotted key path with [index] steps, e.g. "wf.per_graph[0].chi_hat". */
export function resolveKey(summary: unknown, path: string): unknown {
    const steps = path.split(".").flatMap((part) => {
        const out: (string | number)[] = [];
        const match = part.match(/^([^[\]]+)((\[\d+\])*)$/);
        if (!match) throw new Error(`bad key path segment '${part}' in '${path}'`);
        out.push(match[1]!);
        for (const idx of match[2]!.matchAll(/\[(\d+)\]/g)) out.push(Number(idx[1]));
        return out;
    });
    let node: unknown = summary;
    for (const step of steps) {
        if (node === null || typeof node !== "object") {
            throw new Error(`summary.json has no value at '${path}' (stopped at '${String(step)}')`);
        }
        node = (node as Record<string | number, unknown>)[step];
        if (node === undefined) {
            throw new Error(`summary.json has no value at '${path}' (missing '${String(step)}')`);
        }
    }
    return node;
}

export function resolveNumber(summary: unknown, path: string): number {
    const value = resolveKey(summary, path);
    if (typeof value !== "number" || !Number.isFinite(value)) {
        throw new Error(`summary.json value at '${path}' is not a finite number`);
    }
    return value;
}
