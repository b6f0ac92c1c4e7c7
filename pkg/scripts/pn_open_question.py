"""p(n), n = 2..6: census against z(t), with the per-degree data behind each.

For every cohomological degree j the script lists which exterior degrees feed it,
and the Euler characteristic per exterior degree. Nothing here is interpreted.
"""

from superbbw import census, lookup, z_poly
from superbbw.rootsys import poincare_poly
from superbbw.series import poly_substitute_power


def main() -> None:
    for n in range(2, 7):
        spec = lookup(f"p({n})")
        r = census(spec)
        z = z_poly(spec).as_poly()
        w1 = poincare_poly(spec.w1)
        print(f"p({n})  W1 = {spec.w1} (order {spec.w1.order})")
        print(f"  census      {r.poincare}")
        print(f"  z(t)        {z}")
        print(f"  agree       {r.poincare == z}")
        hits = [k for k in range(1, 5) if poly_substitute_power(w1, k) == r.poincare]
        print(f"  census = p_W1(t^r) for r in {hits or 'none of 1..4'}")
        print(f"  euler       {list(r.euler_per_lambda_degree)}")
        print("  degree <- exterior degrees: "
              + ", ".join(f"{j}<-{sorted(ns)}" for j, ns in sorted(r.parity_ledger.items())))
        print()


if __name__ == "__main__":
    main()
