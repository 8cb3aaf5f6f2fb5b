/** Minimal SVG scene building: scales, axes, marks. No DOM, just strings. */
import type { AxisScale } from "./schema.js";

export interface Scale {
    (value: number): number;
    kind: AxisScale;
    domain: [number, number];
    range: [number, number];
}

export function makeScale(domain: [number, number], range: [number, number], kind: AxisScale): Scale {
    let [d0, d1] = domain;
    if (kind === "log" && (d0 <= 0 || d1 <= 0)) {
        throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
    }
    if (d0 === d1) {
        // degenerate data span: widen symmetrically so marks stay visible
        const pad = kind === "log" ? 2 : Math.abs(d0) || 1;
        d0 = kind === "log" ? d0 / pad : d0 - pad;
        d1 = kind === "log" ? d1 * pad : d1 + pad;
    }
    const t = (v: number) => (kind === "log" ? Math.log(v) : v);
    const f = ((value: number) =>
        range[0] + ((t(value) - t(d0)) / (t(d1) - t(d0))) * (range[1] - range[0])) as Scale;
    f.kind = kind;
    f.domain = [d0, d1];
    f.range = range;
    return f;
}

export function ticks(scale: Scale, want = 6): number[] {
    const [d0, d1] = scale.domain;
    if (scale.kind === "log") {
        const out: number[] = [];
        const lo = Math.floor(Math.log10(d0));
        const hi = Math.ceil(Math.log10(d1));
        for (let e = lo; e <= hi; e++) {
            for (const m of hi - lo > 3 ? [1] : [1, 2, 5]) {
                const v = m * 10 ** e;
                if (v >= d0 * 0.999 && v <= d1 * 1.001) out.push(v);
            }
        }
        return out;
    }
    const span = d1 - d0;
    const step = 10 ** Math.floor(Math.log10(span / want));
    const candidates = [step, 2 * step, 5 * step, 10 * step];
    const chosen = candidates.find((s) => span / s <= want) ?? 10 * step;
    const out: number[] = [];
    for (let v = Math.ceil(d0 / chosen) * chosen; v <= d1 + 1e-12 * span; v += chosen) {
        out.push(Number(v.toPrecision(12)));
    }
    return out;
}

const fmt = (v: number) => Number(v.toPrecision(6)).toString();

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
    const parts = Object.entries(attrs)
        .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : v}"`)
        .join(" ");
    return body ? `<${tag} ${parts}>${body}</${tag}>` : `<${tag} ${parts}/>`;
}

export interface Frame {
    width: number;
    height: number;
    x: Scale;
    y: Scale;
    body: string[];
}

export const MARGIN = { left: 64, right: 16, top: 20, bottom: 48 };

export function makeFrame(
    xDomain: [number, number],
    yDomain: [number, number],
    xKind: AxisScale,
    yKind: AxisScale,
    width = 640,
    height = 420,
): Frame {
    const x = makeScale(xDomain, [MARGIN.left, width - MARGIN.right], xKind);
    const y = makeScale(yDomain, [height - MARGIN.bottom, MARGIN.top], yKind);
    return { width, height, x, y, body: [] };
}

export function drawAxes(frame: Frame, xLabel: string, yLabel: string): void {
    const { x, y, width, height } = frame;
    const floor = height - MARGIN.bottom;
    frame.body.push(
        el("line", { x1: MARGIN.left, y1: floor, x2: width - MARGIN.right, y2: floor, stroke: "#333" }),
        el("line", { x1: MARGIN.left, y1: floor, x2: MARGIN.left, y2: MARGIN.top, stroke: "#333" }),
    );
    for (const tick of ticks(x)) {
        const px = x(tick);
        frame.body.push(
            el("line", { x1: px, y1: floor, x2: px, y2: floor + 5, stroke: "#333" }),
            el("text", { x: px, y: floor + 18, "text-anchor": "middle", "font-size": 11 }, fmt(tick)),
        );
    }
    for (const tick of ticks(y)) {
        const py = y(tick);
        frame.body.push(
            el("line", { x1: MARGIN.left - 5, y1: py, x2: MARGIN.left, y2: py, stroke: "#333" }),
            el("text", {
                x: MARGIN.left - 8, y: py + 4, "text-anchor": "end", "font-size": 11,
            }, fmt(tick)),
        );
    }
    frame.body.push(
        el("text", {
            x: (MARGIN.left + width - MARGIN.right) / 2, y: height - 10,
            "text-anchor": "middle", "font-size": 13,
        }, xLabel),
        el("text", {
            x: 16, y: (MARGIN.top + height - MARGIN.bottom) / 2, "font-size": 13,
            "text-anchor": "middle",
            transform: `rotate(-90 16 ${(MARGIN.top + height - MARGIN.bottom) / 2})`,
        }, yLabel),
    );
}

export function polyline(frame: Frame, xs: number[], ys: number[], stroke: string, width = 1.5): void {
    const pts = xs.map((v, i) => `${fmt(frame.x(v))},${fmt(frame.y(ys[i]!))}`).join(" ");
    frame.body.push(el("polyline", { points: pts, fill: "none", stroke, "stroke-width": width }));
}

export function finish(frame: Frame): string {
    return [
        `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">`,
        el("rect", { x: 0, y: 0, width: frame.width, height: frame.height, fill: "white" }),
        ...frame.body,
        "</svg>",
    ].join("\n");
}
