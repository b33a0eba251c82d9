"""Command-line front end: classes, bounds, scan, heatmap, verify.

Payload goes to stdout (JSON or CSV, byte-stable for a fixed seed); a run
manifest with timing goes to stderr.  Exit codes: 0 success, 1 verification
failure, 2 user error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

import magicwit
from magicwit import bell, graphs, optimize, verify
from magicwit.errors import ResourceLimitError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USER = 2
EXIT_LIMIT = 3

CATALOG = ("tilted-chsh", "cglmp", "svetlichny-r2")


def _default_seed() -> int:
    raw = os.environ.get("MAGICWIT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"MAGICWIT_SEED must be an integer, got {raw!r}") from exc


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--restarts", type=int, default=64, help="see-saw restarts (default 64)")
    p.add_argument("--max-iters", type=int, default=500, help="sweep limit per restart")
    p.add_argument("--tol", type=float, default=1e-9, help="objective-change stopping tolerance")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default MAGICWIT_SEED or 0)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for restarts")


def _config(args) -> optimize.OptimizerConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return optimize.OptimizerConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol=args.tol,
        seed=seed,
        jobs=args.jobs,
    )


def _emit_manifest(command: str, extra: dict, wall: float) -> None:
    manifest = {
        "command": command,
        "version": magicwit.__version__,
        "wall_time_s": round(wall, 3),
        **extra,
    }
    print("manifest: " + json.dumps(manifest, sort_keys=True), file=sys.stderr)


def _cfg_echo(cfg: optimize.OptimizerConfig) -> dict:
    return {"seed": cfg.seed, "restarts": cfg.restarts, "tol": cfg.tol, "jobs": cfg.jobs}


def load_inequality_file(path: str) -> bell.BellInequality:
    """Read a coefficient file: parties, outcomes, settings, sparse coefficients."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    for field in ("parties", "outcomes", "settings", "coefficients"):
        if field not in data:
            raise ValueError(f"{path}: missing field {field!r}")
    parties = data["parties"]
    outcomes = tuple(data["outcomes"])
    settings = tuple(data["settings"])
    if not isinstance(parties, int) or parties < 1:
        raise ValueError(f"{path}: field 'parties' must be a positive integer")
    if len(outcomes) != parties or len(settings) != parties:
        raise ValueError(f"{path}: 'outcomes' and 'settings' must list {parties} entries")
    coeffs = np.zeros(outcomes + settings)
    seen = set()
    for idx, rec in enumerate(data["coefficients"]):
        where = f"{path}: coefficients[{idx}]"
        for field in ("a", "x", "value"):
            if field not in rec:
                raise ValueError(f"{where}: missing field {field!r}")
        a = tuple(rec["a"])
        x = tuple(rec["x"])
        if len(a) != parties or len(x) != parties:
            raise ValueError(f"{where}: 'a' and 'x' must list {parties} indices")
        for i, (ai, di) in enumerate(zip(a, outcomes)):
            if not 0 <= ai < di:
                raise ValueError(f"{where}: outcome index {ai} out of range for party {i}")
        for i, (xi, mi) in enumerate(zip(x, settings)):
            if not 0 <= xi < mi:
                raise ValueError(f"{where}: setting index {xi} out of range for party {i}")
        if (a, x) in seen:
            raise ValueError(f"{where}: duplicate entry for a={list(a)}, x={list(x)}")
        seen.add((a, x))
        coeffs[a + x] = float(rec["value"])
    return bell.BellInequality(outcomes, settings, coeffs, name=data.get("name", path))


def inequality_to_json(ineq: bell.BellInequality) -> dict:
    """Sparse JSON form of an inequality (inverse of load_inequality_file)."""
    records = []
    n = ineq.parties
    for index in np.ndindex(*ineq.coeffs.shape):
        value = float(ineq.coeffs[index])
        if value != 0.0:
            records.append({"a": list(index[:n]), "x": list(index[n:]), "value": value})
    return {
        "name": ineq.name,
        "parties": n,
        "outcomes": list(ineq.outcomes),
        "settings": list(ineq.settings),
        "coefficients": records,
    }


def _resolve_inequality(args) -> bell.BellInequality:
    spec = args.spec
    if spec == "tilted-chsh":
        return bell.catalog_tilted_chsh(args.alpha)
    if spec == "cglmp":
        return bell.catalog_cglmp(args.d)
    if spec == "svetlichny-r2":
        return bell.catalog_svetlichny_r2()
    return load_inequality_file(spec)


def cmd_classes(args) -> int:
    t0 = time.perf_counter()
    cat = graphs.enumerate_classes(args.n, args.d, args.budget)
    if args.json:
        payload = {
            "n": cat.n,
            "d": cat.d,
            "class_count": len(cat),
            "total_matrices": cat.total,
            "classes": [
                {"index": i, "size": size, "edges": [list(e) for e in rep.edges()]}
                for i, (rep, size) in enumerate(zip(cat.representatives, cat.orbit_sizes))
            ],
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"n={cat.n} d={cat.d}: {len(cat)} classes, {cat.total} matrices")
        for i, (rep, size) in enumerate(zip(cat.representatives, cat.orbit_sizes)):
            edges = " ".join(f"{a}-{b}:{w}" for a, b, w in rep.edges()) or "(no edges)"
            print(f"class {i}  size {size}  edges {edges}")
    _emit_manifest("classes", {"n": args.n, "d": args.d}, time.perf_counter() - t0)
    return EXIT_OK


def cmd_bounds(args) -> int:
    t0 = time.perf_counter()
    ineq = _resolve_inequality(args)
    cfg = _config(args)
    dims = tuple(int(x) for x in args.dims.split(",")) if args.dims else ineq.outcomes
    out: dict = {"name": ineq.name}
    which = args.which
    if which in ("local", "all"):
        out["local"] = bell.local_bound(ineq, cfg.strategy_budget)
    if which in ("stab", "all"):
        out["stabilizer"] = optimize.stabilizer_value(ineq, cfg, dims).value
    if which in ("quantum", "all"):
        out["quantum"] = optimize.quantum_value(ineq, cfg).value
    if "stabilizer" in out and "quantum" in out:
        out["gap"] = out["quantum"] - out["stabilizer"]
    out["manifest"] = {
        "command": "bounds",
        "version": magicwit.__version__,
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "tol": cfg.tol,
    }
    print(json.dumps(out, sort_keys=True, indent=2))
    _emit_manifest("bounds", _cfg_echo(cfg), time.perf_counter() - t0)
    return EXIT_OK


def cmd_scan(args) -> int:
    t0 = time.perf_counter()
    if args.family != "tilted-chsh":
        raise ValueError(f"unknown scan family {args.family!r} (available: tilted-chsh)")
    if args.step <= 0:
        raise ValueError("step must be positive")
    cfg = _config(args)
    count = int(round((args.stop - args.start) / args.step)) + 1
    params = [args.start + i * args.step for i in range(count)]
    if any(not 0.0 <= p <= 2.0 for p in params):
        raise ValueError("tilted-chsh scan parameters must lie in [0, 2]")
    rows = optimize.gap_scan(bell.catalog_tilted_chsh, params, cfg)
    print("param,local,stab,quantum,gap")
    for r in rows:
        print(f"{r.param:.10g},{r.local:.10g},{r.stabilizer:.10g},{r.quantum:.10g},{r.gap:.10g}")
    _emit_manifest(
        "scan", {"family": args.family, "rows": len(rows), **_cfg_echo(cfg)}, time.perf_counter() - t0
    )
    return EXIT_OK


def cmd_heatmap(args) -> int:
    t0 = time.perf_counter()
    if args.theta_steps < 2 or args.phi_steps < 2:
        raise ValueError("grid sizes must be at least 2")
    cfg = _config(args)
    thetas = np.linspace(0.0, np.pi, args.theta_steps)
    phis = np.linspace(0.0, np.pi, args.phi_steps)
    heat = optimize.w_heatmap(thetas, phis, cfg)
    print("theta,phi,value")
    for i, t in enumerate(thetas):
        for j, p in enumerate(phis):
            print(f"{t / np.pi:.10g},{p / np.pi:.10g},{heat[i, j]:.10g}")
    _emit_manifest(
        "heatmap",
        {"theta_steps": args.theta_steps, "phi_steps": args.phi_steps, **_cfg_echo(cfg)},
        time.perf_counter() - t0,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = verify.run_checks(quick=args.quick)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.name:28s} ({r.seconds:7.2f}s)  {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    _emit_manifest("verify", {"quick": args.quick, "failed": len(failed)}, time.perf_counter() - t0)
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magicwit",
        description=(
            "Classical, stabilizer and quantum bounds of multi-qudit Bell "
            "inequalities; a quantum/stabilizer gap witnesses magic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", help="enumerate graph-state classes at fixed (n, d)")
    p.add_argument("n", type=int, help="number of vertices")
    p.add_argument("d", type=int, help="prime local dimension")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget", type=int, default=graphs.DEFAULT_ENUM_BUDGET)
    p.set_defaults(fn=cmd_classes)

    p = sub.add_parser("bounds", help="local/stabilizer/quantum values of one inequality")
    p.add_argument("spec", help=f"catalog name ({', '.join(CATALOG)}) or JSON file path")
    p.add_argument("--alpha", type=float, default=0.0, help="tilting parameter for tilted-chsh")
    p.add_argument("--d", type=int, default=3, help="outcome count for cglmp")
    p.add_argument("--dims", default=None, help="stabilizer register, e.g. 2,3 (default: outcomes)")
    p.add_argument("--which", choices=("local", "stab", "quantum", "all"), default="all")
    _add_optimizer_flags(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("scan", help="CSV of bounds over a parametrized family")
    p.add_argument("family", help="family name (tilted-chsh)")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.1)
    _add_optimizer_flags(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("heatmap", help="CSV of the W-family witness values (angles in units of pi)")
    p.add_argument("--theta-steps", type=int, default=13)
    p.add_argument("--phi-steps", type=int, default=13)
    _add_optimizer_flags(p)
    p.set_defaults(fn=cmd_heatmap)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="run only the fast subset")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
