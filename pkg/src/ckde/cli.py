"""Command line: ``ckde {params,demo,bench,verify}``.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
``CKDE_SEED`` in the environment overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from ckde.bench import bench_run
from ckde.curve import serialize_point
from ckde.errors import CkdeError, ConfigInvalid
from ckde.keying import setup
from ckde.pairing import params_from_prime
from ckde.simnet import ScenarioConfig, replay, replay_file, run_scenario

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG = 0, 1, 2


def _seed(args) -> int:
    env = os.environ.get("CKDE_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise ConfigInvalid([("CKDE_SEED", f"not an integer: {env!r}")]) from None
    return args.seed


def cmd_params(args) -> int:
    holders = [f"kgc{i + 1}" for i in range(args.nodes)]
    pairing = params_from_prime(args.p) if args.p else None
    params, _, shares = setup(args.bits, args.threshold, holders, _seed(args), pairing=pairing)
    out = params.to_dict()
    out["holders"] = [{"name": n, "id": format(sh.holder_id, "x"), "W": serialize_point(sh.W)}
                      for n, sh in zip(holders, shares)]
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_demo(args) -> int:
    cfg = ScenarioConfig.from_json(args.config)
    seed = _seed(args)
    if seed is not None:
        cfg.seed = seed
    transcript = run_scenario(cfg)
    if args.out:
        transcript.write(args.out)
    else:
        sys.stdout.write(transcript.to_jsonl())
    for nid, o in transcript.outcomes.items():
        print(f"{nid}: reconstructed={o['reconstructed']} oracle_match={o['oracle_match']}",
              file=sys.stderr)
    report = replay(transcript.lines())
    for f in report.failures:
        print(f"replay: {f}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    report = bench_run(iters=args.iters, seed=_seed(args), ec_bits=args.bits, pin=True)
    Path(args.out).write_text(report.to_csv())
    print(report.render())
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = replay_file(args.transcript)
    except (OSError, ValueError) as exc:
        print(f"cannot read transcript: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for f in report.failures:
        print(f, file=sys.stderr)
    print(f"{report.checked} checks, {len(report.failures)} failures")
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ckde", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="generate system parameters and share commitments")
    p.add_argument("--bits", type=int, default=160)
    p.add_argument("--p", type=int, default=None, help="explicit prime instead of --bits")
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("demo", help="run a scenario config and emit its transcript")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("bench", help="time the unit operations, write CSV")
    p.add_argument("--iters", type=int, default=30)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bits", type=int, default=160)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="replay a transcript's pairing checks")
    p.add_argument("--transcript", required=True)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        for field, msg in exc.diagnostics:
            print(f"config error: {field}: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except (CkdeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
