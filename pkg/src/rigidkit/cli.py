"""Command-line client for the experiment service.

Every subcommand builds a config model, posts it to the service (an
in-process instance by default, or a remote one via --server), and writes
the returned record.  Exit codes: 0 all verdicts passed, 1 the run
finished but a verdict failed, 2 parameter error, 3 generation or numeric
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .records import (
    CodecConfig,
    CountConfig,
    FriedmanConfig,
    GenConfig,
    LowerBoundConfig,
    RigidityScanConfig,
    WitnessConfig,
)

EXIT_PASS = 0
EXIT_VERDICT_FAILED = 1
EXIT_PARAMETER = 2
EXIT_NUMERIC = 3


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        import httpx

        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
        return resp.status_code, resp.json()
    import warnings

    with warnings.catch_warnings():
        # starlette warns at import about its httpx test pairing; the
        # category is starlette-private, so silence the import wholesale.
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    with TestClient(app, raise_server_exceptions=False) as client:
        resp = client.post(path, json=payload)
        return resp.status_code, resp.json()


def _fail_exit(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    sys.stderr.write(f"error: {detail}\n")
    if status in (400, 422):
        return EXIT_PARAMETER
    return EXIT_NUMERIC


def _rows_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(record: dict, out: str | None, fmt: str) -> None:
    if fmt == "csv":
        text = _rows_csv(record["rows"])
    else:
        text = json.dumps(record, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_record_command(args, path: str, config) -> int:
    status, body = _post(args.server, path, config.model_dump(mode="json"))
    if status != 200:
        return _fail_exit(status, body)
    _emit(body, args.out, args.format)
    return EXIT_PASS if body["passed"] else EXIT_VERDICT_FAILED


def _cmd_gen(args) -> int:
    out = args.out or f"graph-n{args.n}-d{args.d}-seed{args.seed}.txt"
    config = GenConfig(
        n=args.n, d=args.d, bipartite=args.bipartite, seed=args.seed, out=out
    )
    status, body = _post(args.server, "/v1/gen", config.model_dump(mode="json"))
    if status != 200:
        return _fail_exit(status, body)
    with open(out, "w") as fh:
        fh.write(body["graph_text"])
    sys.stdout.write(f"{body['sha256']}  {out}\n")
    return EXIT_PASS


def _cmd_rigidity_scan(args) -> int:
    config = RigidityScanConfig(
        kind=args.kind,
        n=args.n,
        d=args.d,
        seeds=args.seeds,
        swaps=[int(s) for s in args.swaps.split(",")],
        seed=args.seed,
        out=args.out,
        format=args.format,
    )
    return _run_record_command(args, "/v1/rigidity-scan", config)


def _cmd_witness(args) -> int:
    config = WitnessConfig(
        n=args.n,
        d=args.d,
        delta=args.delta,
        epsilon_target=args.epsilon_target,
        trials=args.trials,
        seeds=args.seeds,
        min_success_rate=args.min_success_rate,
        seed=args.seed,
        out=args.out,
        format=args.format,
    )
    return _run_record_command(args, "/v1/witness", config)


def _cmd_friedman(args) -> int:
    config = FriedmanConfig(
        n=args.n,
        d=args.d,
        seeds=args.seeds,
        seed=args.seed,
        out=args.out,
        format=args.format,
    )
    return _run_record_command(args, "/v1/friedman", config)


def _cmd_codec(args) -> int:
    config = CodecConfig(
        n=args.n,
        d=args.d,
        pairs=args.pairs,
        swaps=args.swaps,
        seed=args.seed,
        out=args.out,
        format=args.format,
    )
    return _run_record_command(args, "/v1/codec", config)


def _parse_points(text: str) -> list[tuple[int, int]]:
    points = []
    for part in text.split(","):
        n_str, _, d_str = part.partition(":")
        points.append((int(n_str), int(d_str)))
    return points


def _cmd_count(args) -> int:
    config = CountConfig(
        points=_parse_points(args.points), out=args.out, format=args.format
    )
    return _run_record_command(args, "/v1/count", config)


def _cmd_lowerbound(args) -> int:
    config = LowerBoundConfig(
        kind=args.kind,
        n_values=[int(v) for v in args.n_values.split(",")],
        epsilon_values=[float(v) for v in args.epsilon_values.split(",")],
        out=args.out,
        format=args.format,
    )
    return _run_record_command(args, "/v1/lowerbound", config)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_PASS


def _add_common(sub) -> None:
    sub.add_argument("--seed", type=int, default=0, help="base seed; all randomness derives from it")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidkit",
        description="Rigidity experiments: overlap laws, witness cuts, sketch codec, counting calculators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random regular graph file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="graph file path (default: derived name)")
    p.add_argument("--server", default=None)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("rigidity-scan", help="perturbation scan against the overlap laws")
    p.add_argument("--kind", choices=["spectral", "cut"], default="spectral")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--swaps", default="0,1,10", help="comma-separated switch counts")
    _add_common(p)
    p.set_defaults(fn=_cmd_rigidity_scan)

    p = sub.add_parser("witness", help="hyperplane-rounding witness cuts on perturbed pairs")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--d", type=int, default=8)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--epsilon-target", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--min-success-rate", type=float, default=0.95)
    _add_common(p)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("friedman", help="approximation factor against the scaled complete graph")
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--seeds", type=int, default=5)
    _add_common(p)
    p.set_defaults(fn=_cmd_friedman)

    p = sub.add_parser("codec", help="relative-sketch round-trip and length-law audit")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--d", type=int, default=6)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--swaps", type=int, default=5)
    _add_common(p)
    p.set_defaults(fn=_cmd_codec)

    p = sub.add_parser("count", help="counting formula versus the exact enumerator")
    p.add_argument("--points", default="4:2,4:3,6:3,8:3", help="comma-separated n:d pairs")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--server", default=None)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("lowerbound", help="sketch-size lower-bound tables")
    p.add_argument("--kind", choices=["spectral", "cut", "both"], default="spectral")
    p.add_argument("--n-values", default="1000000")
    p.add_argument("--epsilon-values", default="0.01")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--server", default=None)
    p.set_defaults(fn=_cmd_lowerbound)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        # Flag parsing that survives argparse (bad list literals, points).
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
