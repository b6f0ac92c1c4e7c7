"""Census, z(t) and p_W1(t^s) side by side for every built-in entry (Markdown)."""

import argparse

from superbbw import builtin_catalog, census
from superbbw.superalg import IdentityViolation, w1_series, z_poly


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print("| algebra | W1 | census | z(t) | census = z | nontrivial | euler |")
    print("|---|---|---|---|---|---|---|")
    for spec in builtin_catalog():
        r = census(spec, args.workers)
        try:
            z = z_poly(spec).as_poly()
        except IdentityViolation:
            z = w1_series(spec)
        print(f"| {spec.name} | {spec.w1} | {r.poincare} | {z} | {'yes' if z == r.poincare else 'NO'} | "
              f"{'yes' if r.nontrivial_found else ''} | {list(r.euler_per_lambda_degree)} |")


if __name__ == "__main__":
    main()
