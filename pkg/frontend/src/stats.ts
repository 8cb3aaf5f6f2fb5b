/** Statistics helpers matching the harness conventions exactly. */

export interface BoxStats {
    count: number;
    mean: number;
    median: number;
    q1: number;
    q3: number;
    whiskerLo: number;
    whiskerHi: number;
    outliers: number[];
}

/** Linearly interpolated quantile (numpy's default), q in [0, 1]. */
export function quantileLinear(sorted: readonly number[], q: number): number {
    if (sorted.length === 0) throw new Error("quantile of an empty sample");
    if (q < 0 || q > 1) throw new Error(`quantile level ${q} outside [0, 1]`);
    const pos = (sorted.length - 1) * q;
    const lo = Math.floor(pos);
    const hi = Math.ceil(pos);
    const a = sorted[lo]!;
    const b = sorted[hi]!;
    return a + (b - a) * (pos - lo);
}

/** Five-number box summary with the 1.5 IQR whisker/outlier rule. */
export function boxStats(values: readonly number[]): BoxStats {
    if (values.length === 0) throw new Error("box statistics of an empty sample");
    const sorted = [...values].sort((a, b) => a - b);
    const q1 = quantileLinear(sorted, 0.25);
    const median = quantileLinear(sorted, 0.5);
    const q3 = quantileLinear(sorted, 0.75);
    const iqr = q3 - q1;
    const loFence = q1 - 1.5 * iqr;
    const hiFence = q3 + 1.5 * iqr;
    const inside = sorted.filter((v) => v >= loFence && v <= hiFence);
    const mean = sorted.reduce((s, v) => s + v, 0) / sorted.length;
    return {
        count: sorted.length,
        mean,
        median,
        q1,
        q3,
        whiskerLo: inside.length ? inside[0]! : q1,
        whiskerHi: inside.length ? inside[inside.length - 1]! : q3,
        outliers: sorted.filter((v) => v < loFence || v > hiFence),
    };
}

export interface Line {
    slope: number;
    intercept: number;
}

export function linearRegression(xs: readonly number[], ys: readonly number[]): Line {
    if (xs.length !== ys.length || xs.length < 2) {
        throw new Error("regression needs two equal-length samples of size >= 2");
    }
    const n = xs.length;
    const mx = xs.reduce((s, v) => s + v, 0) / n;
    const my = ys.reduce((s, v) => s + v, 0) / n;
    let sxx = 0;
    let sxy = 0;
    for (let i = 0; i < n; i++) {
        sxx += (xs[i]! - mx) ** 2;
        sxy += (xs[i]! - mx) * (ys[i]! - my);
    }
    if (sxx === 0) throw new Error("regression on a constant abscissa");
    const slope = sxy / sxx;
    return { slope, intercept: my - slope * mx };
}

export interface Density {
    x: number[];
    y: number[];
}

/** Gaussian KDE with Silverman bandwidth on an even grid over the support. */
export function gaussianKde(values: readonly number[], gridPoints = 200): Density {
    if (values.length < 2) throw new Error("density estimate needs at least two samples");
    const n = values.length;
    const mean = values.reduce((s, v) => s + v, 0) / n;
    const sd = Math.sqrt(values.reduce((s, v) => s + (v - mean) ** 2, 0) / (n - 1));
    const sorted = [...values].sort((a, b) => a - b);
    const iqr = quantileLinear(sorted, 0.75) - quantileLinear(sorted, 0.25);
    const spread = Math.min(sd, iqr / 1.34) || sd || 1e-12;
    const bw = 0.9 * spread * Math.pow(n, -0.2);
    const lo = sorted[0]! - 3 * bw;
    const hi = sorted[sorted.length - 1]! + 3 * bw;
    const x: number[] = [];
    const y: number[] = [];
    const norm = 1 / (n * bw * Math.sqrt(2 * Math.PI));
    for (let i = 0; i < gridPoints; i++) {
        const xi = lo + ((hi - lo) * i) / (gridPoints - 1);
        let s = 0;
        for (const v of values) {
            const z = (xi - v) / bw;
            s += Math.exp(-0.5 * z * z);
        }
        x.push(xi);
        y.push(norm * s);
    }
    return { x, y };
}

/** Largest vertical distance from the points to chi * x (1 - x). */
export function maxParabolaResidual(
    points: readonly (readonly [number, number])[],
    chi: number,
): number {
    let worst = 0;
    for (const [x, y] of points) {
        worst = Math.max(worst, Math.abs(y - chi * x * (1 - x)));
    }
    return worst;
}
