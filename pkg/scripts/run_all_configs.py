#!/usr/bin/env python3
"""Run every YAML config under configs/ and print one verdict line per run.

Outputs land under $GZK_OUTPUT_ROOT (default ./runs).  Exit status is the
worst exit code seen (0 pass, 1 fail, 2 error).
"""
import argparse
import sys
import time
from pathlib import Path

from gzk import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="*", type=Path,
                    help="config files (default: every configs/*.yaml)")
    args = ap.parse_args()
    paths = args.configs or sorted((Path(__file__).resolve().parent.parent / "configs").glob("*.yaml"))
    worst = 0
    for p in paths:
        t0 = time.perf_counter()
        rc = cli.run(p)
        print(f"{p.name:40s} exit {rc}  {time.perf_counter() - t0:7.1f}s", flush=True)
        worst = max(worst, rc)
    return worst


if __name__ == "__main__":
    sys.exit(main())
