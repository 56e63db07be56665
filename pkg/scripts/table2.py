"""Unit-operation timings in the historical column order.

    python scripts/table2.py --iters 100 --bits 160 --csv bench.csv
"""

import argparse
from pathlib import Path

from ckde.bench import bench_run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--iters", type=int, default=100)
    ap.add_argument("--bits", type=int, default=160)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    report = bench_run(iters=args.iters, seed=args.seed, ec_bits=args.bits, pin=True)
    print(report.render())
    if args.csv:
        Path(args.csv).write_text(report.to_csv())


if __name__ == "__main__":
    main()
