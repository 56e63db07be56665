"""Run a scenario config, write its transcript and replay it offline.

    python scripts/run_demo.py scripts/desk_scenario.json --out transcript.jsonl
"""

import argparse
import sys

from ckde.simnet import ScenarioConfig, replay_file, run_scenario


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config")
    ap.add_argument("--out", default="transcript.jsonl")
    args = ap.parse_args()

    tr = run_scenario(ScenarioConfig.from_json(args.config))
    tr.write(args.out)
    for rec in tr.records:
        msg = rec["message"]
        label = msg.get("event") or msg["type"]
        print(f"{rec['step']:>3} {rec['sender']:>6} -> {rec['receiver']:<6} {label:<15} "
              f"{rec['verdict']:<9} {rec['reason'] or ''}")
    for nid, o in tr.outcomes.items():
        print(f"{nid}: reconstructed={o['reconstructed']} oracle_match={o['oracle_match']}")
    report = replay_file(args.out)
    print(f"replay: {report.checked} checks, {len(report.failures)} failures")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
