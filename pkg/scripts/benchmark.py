"""Wall-clock timings of the census at the largest desk-scale sizes."""

import argparse
import time

from superbbw import census, lookup
from superbbw.bbw import run_census


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    args = ap.parse_args()
    for name in ("gl(5|5)", "gl(6|4)", "osp(8|6)", "osp(6|6)", "p(6)"):
        spec = lookup(name)
        for w in args.workers:
            r, dt = timed(lambda: census(spec, w))
            print(f"{name:10} |Phi1+|={len(spec.pos_roots):2d} workers={w}  {dt:7.3f}s  {r.poincare}")
    spec = lookup("osp(8|6)")
    roots = spec.pos_roots + spec.pos_roots[:1]
    for w in args.workers:
        _, dt = timed(lambda: run_census(spec, roots, w))
        print(f"2^{len(roots)} subsets (osp(8|6) plus one repeated root) workers={w}  {dt:7.3f}s")


if __name__ == "__main__":
    main()
