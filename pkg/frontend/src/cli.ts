#!/usr/bin/env node
/** voterlab-plots --spec FILE --out DIR: render harness outputs to SVG. */
import { mkdirSync } from "node:fs";
import { join } from "node:path";

import { render } from "./figures.js";
import { loadSpecs } from "./schema.js";

function parseArgs(argv: string[]): { spec: string; out: string } {
    let spec: string | undefined;
    let out: string | undefined;
    for (let i = 0; i < argv.length; i++) {
        if (argv[i] === "--spec") spec = argv[++i];
        else if (argv[i] === "--out") out = argv[++i];
        else throw new Error(`unknown argument '${argv[i]}'`);
    }
    if (!spec || !out) throw new Error("usage: voterlab-plots --spec FILE --out DIR");
    return { spec, out };
}

export function main(argv: string[]): number {
    let args;
    try {
        args = parseArgs(argv);
    } catch (err) {
        console.error((err as Error).message);
        return 2;
    }
    try {
        const specs = loadSpecs(args.spec);
        mkdirSync(args.out, { recursive: true });
        const used = new Set<string>();
        for (const spec of specs) {
            let name = spec.name ?? spec.figure_kind;
            if (used.has(name)) name = `${name}-${used.size}`;
            used.add(name);
            const result = render(spec, join(args.out, `${name}.svg`));
            console.log(`wrote ${result.outPath}`);
        }
        return 0;
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 1;
    }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("voterlab-plots")) {
    process.exit(main(process.argv.slice(2)));
}
