#!/usr/bin/env python3
"""Step-size dependence of the Duhamel-part growth factor in the smoothing check.

For each dt runs the two-grid smoothing report and prints the linear and
Duhamel growth factors.  Fine steps at n = 128 take many minutes.
"""
import argparse

from gzk.audit import smoothing_report
from gzk.blowup_data import ProfileSpec, sample_profile
from gzk.grid import make_grid
from gzk.solver import SolverConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--s-probe", type=float, default=3.0)
    ap.add_argument("--amplitude", type=float, default=1.0)
    ap.add_argument("--dts", default="0.01,0.005,0.0025")
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--box", type=float, default=30.0)
    args = ap.parse_args()
    grids = [make_grid(args.n, args.box), make_grid(2 * args.n, args.box)]
    make = lambda g: args.amplitude * sample_profile(ProfileSpec(), g)  # noqa: E731
    print("dt         G_lin growth  G_duh growth  verdict")
    for dt in (float(v) for v in args.dts.split(",")):
        rep = smoothing_report(make, SolverConfig(k=args.k, dt=dt), args.s_probe, grids)
        print(f"{dt:<10g} {rep.lin_growth[0]:12.4f}  {rep.duh_growth[0]:12.4f}  {rep.verdict}",
              flush=True)


if __name__ == "__main__":
    main()
