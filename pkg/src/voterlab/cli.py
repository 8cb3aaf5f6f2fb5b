"""voterlab command line: a thin HTTP client of the service.

Without --server the CLI talks to the bundled app in-process over an ASGI
transport; with --server it targets a remote instance started via
``voterlab serve``. All file handling stays on the client side.
"""
from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .degrees import read_degrees_csv, DegreeSequence
from .graph import read_graph_csv, MultiDigraph, write_graph_csv
from .harness import parse_config_text


class ServiceError(RuntimeError):
    def __init__(self, status: int, detail):
        super().__init__(f"service returned {status}: {detail}")
        self.status = status
        self.detail = detail


class ServiceClient:
    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def post(self, path: str, payload: dict) -> dict:
        if self.server is None:
            return asyncio.run(self._post_inprocess(path, payload))
        resp = httpx.post(self.server + path, json=payload, timeout=None)
        return self._unwrap(resp)

    async def _post_inprocess(self, path: str, payload: dict) -> dict:
        from .service import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://voterlab.local", timeout=None
        ) as client:
            resp = await client.post(path, json=payload)
        return self._unwrap(resp)

    @staticmethod
    def _unwrap(resp: httpx.Response) -> dict:
        if resp.status_code != 200:
            try:
                detail = resp.json().get("detail", resp.text)
            except ValueError:
                detail = resp.text
            raise ServiceError(resp.status_code, detail)
        return resp.json()


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _header_line(obj: dict) -> str:
    return "#" + json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_degrees(client: ServiceClient, args) -> int:
    resp = client.post("/degrees", {
        "alpha": args.alpha, "x_min": args.xmin, "n": args.n,
        "directed": args.directed, "seed": args.seed,
    })
    seq = DegreeSequence.from_payload(resp["sequence"])
    from .degrees import write_degrees_csv

    write_degrees_csv(args.out, seq, {"spec": resp["spec"], "moments": resp["moments"]})
    print(_dump(resp["moments"]))
    return 0


def cmd_graph(client: ServiceClient, args) -> int:
    seq, _ = read_degrees_csv(args.degrees)
    resp = client.post("/graph", {"degrees": seq.to_payload(), "seed": args.seed})
    g = MultiDigraph.from_payload(resp["graph"])
    write_graph_csv(args.out, g, {
        "seed": resp["seed"],
        "n_components": resp["n_components"],
        "largest_component": resp["largest_component"],
    })
    print(_dump({k: resp[k] for k in ("n_components", "largest_component")}))
    return 0


def cmd_theory(client: ServiceClient, args) -> int:
    seq, _ = read_degrees_csv(args.degrees)
    payload = {"degrees": seq.to_payload(), "u": args.u}
    if args.n is not None:
        payload["n"] = args.n
    resp = client.post("/theory", payload)
    print(_dump(resp))
    return 0


def _parse_kingman(text: str) -> dict:
    parts = text.split(",")
    if len(parts) != 3:
        raise SystemExit("--kingman expects U,KMAX,DRAWS (U may be 'full')")
    u = None if parts[0] in ("full", "full-coalescence") else float(parts[0])
    return {"u": u, "k_max": int(parts[1]), "draws": int(parts[2])}


def cmd_walk(client: ServiceClient, args) -> int:
    g, _ = read_graph_csv(args.graph)
    payload = {
        "graph": g.to_payload(), "seed": args.seed, "mixing": args.mixing,
        "max_events": args.max_events,
    }
    if args.meeting:
        payload["meeting"] = args.meeting
    if args.coalesce:
        payload["coalesce"] = args.coalesce
    if args.kingman:
        payload["kingman"] = _parse_kingman(args.kingman)
    resp = client.post("/walk", payload)

    summary = {"stationary": resp["stationary"]}
    lines = []
    for kind in ("meeting", "coalescence", "kingman"):
        block = resp.get(kind)
        if block is None:
            continue
        summary[kind] = {k: block[k] for k in ("mean", "stderr", "count")}
        lines.extend(
            f"{kind},{i},{value!r}" for i, value in enumerate(block["samples"])
        )
    if resp.get("mixing") is not None:
        summary["mixing"] = resp["mixing"]
    out = [_header_line(summary), "kind,sample_id,value"] + lines
    Path(args.out).write_text("\n".join(out) + "\n")
    print(_dump(summary))
    return 0


def cmd_vote(client: ServiceClient, args) -> int:
    g, _ = read_graph_csv(args.graph)
    payload = {
        "graph": g.to_payload(), "u": args.u, "runs": args.runs,
        "seed": args.seed, "max_events": args.max_events,
    }
    if args.observe:
        if args.observe.startswith("auto"):
            points = int(args.observe.split(":")[1]) if ":" in args.observe else 200
            payload["observe"] = {"mode": "auto", "points": points}
        else:
            t_max, points = args.observe.split(":")
            payload["observe"] = {
                "mode": "explicit", "t_max": float(t_max), "points": int(points),
            }
    resp = client.post("/vote", payload)

    times = [r["consensus_time"] for r in resp["runs"]]
    header = {"u": args.u, "runs": args.runs, "seed": args.seed,
              "mean_consensus_time": sum(times) / len(times)}
    lines = [_header_line(header), "run_id,consensus_time,final_opinion"]
    lines += [
        f'{r["run_id"]},{r["consensus_time"]!r},{r["final_opinion"]}'
        for r in resp["runs"]
    ]
    Path(args.out).write_text("\n".join(lines) + "\n")
    if resp.get("observations"):
        obs_path = Path(args.out).with_suffix(".obs.csv")
        obs_lines = ["run_id,t,density,weighted_density,weighted_discordance"]
        obs_lines += [
            f'{o["run_id"]},{o["t"]!r},{o["density"]!r},'
            f'{o["weighted_density"]!r},{o["weighted_discordance"]!r}'
            for o in resp["observations"]
        ]
        obs_path.write_text("\n".join(obs_lines) + "\n")
    print(_dump(header))
    return 0


def cmd_experiment(client: ServiceClient, args) -> int:
    raw = {}
    for line in Path(args.config).read_text().splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            key, value = stripped.split("=", 1)
            raw[key.strip()] = value.strip()
    parse_config_text(Path(args.config).read_text())  # fail fast on bad keys
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        resp = client.post("/experiment", {"config": raw})
    except ServiceError as err:
        detail = err.detail
        if isinstance(detail, dict) and "resume_token" in detail:
            (outdir / "rows.partial.csv").write_text(detail.get("rows_csv", ""))
            (outdir / "resume.json").write_text(_dump({
                "resume_token": detail["resume_token"], "error": detail.get("error"),
            }) + "\n")
            print(f"experiment aborted; partial rows flushed to {outdir}", file=sys.stderr)
        raise SystemExit(f"experiment failed: {detail}")
    (outdir / "rows.csv").write_text(resp["rows_csv"])
    (outdir / "summary.json").write_text(_dump(resp["summary"]) + "\n")
    (outdir / "meta.json").write_text(_dump(resp["meta"]) + "\n")
    print(f"wrote {outdir / 'rows.csv'}")
    return 0


def cmd_serve(_client: ServiceClient, args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="voterlab")
    parser.add_argument("--server", default=None,
                        help="remote service URL (default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrees", help="sample a Pareto degree sequence")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--xmin", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("graph", help="match stubs into a CM/DCM multigraph")
    p.add_argument("--degrees", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("theory", help="closed-form parameters and predictions")
    p.add_argument("--degrees", required=True)
    p.add_argument("--u", type=float, default=0.5)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("walk", help="random-walk Monte Carlo and diagnostics")
    p.add_argument("--graph", required=True)
    p.add_argument("--meeting", type=int, default=None)
    p.add_argument("--coalesce", type=int, default=None)
    p.add_argument("--kingman", default=None, metavar="U,KMAX,DRAWS")
    p.add_argument("--mixing", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-events", type=int, default=10**9)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("vote", help="voter-model runs")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--observe", default=None, metavar="auto[:POINTS]|TMAX:POINTS")
    p.add_argument("--max-events", type=int, default=10**12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_vote)

    p = sub.add_parser("experiment", help="run a replication protocol")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8377)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.server)
    try:
        return args.func(client, args)
    except ServiceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
