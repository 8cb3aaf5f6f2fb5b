export { render } from "./figures.js";
export type { RenderResult } from "./figures.js";
export {
    loadSpecs,
    loadSummary,
    parseCsv,
    readTable,
    resolveKey,
    resolveNumber,
    validateSpec,
} from "./schema.js";
export type { AxisScale, FigureKind, FigureSpec, Table } from "./schema.js";
export {
    boxStats,
    gaussianKde,
    linearRegression,
    maxParabolaResidual,
    quantileLinear,
} from "./stats.js";
export type { BoxStats, Density, Line } from "./stats.js";
