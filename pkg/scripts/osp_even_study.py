"""Even orthosymplectic entries: raw census, Euler shadow and the parabolic factorizations."""

from superbbw import census, census_parabolic, lookup
from superbbw.series import Poly
from superbbw.superalg import embedding_specs, w1_series


def shadow(euler) -> Poly:
    """Euler vector read as a polynomial in t (entries sit in even exterior degrees here)."""
    return Poly(tuple(euler))


def main() -> None:
    for name in ("osp(2|2)", "osp(4|2)", "osp(6|2)", "osp(2|4)", "osp(4|4)", "osp(6|4)", "osp(4|6)", "osp(6|6)"):
        spec = lookup(name)
        r = census(spec)
        print(f"{name}  W1 = {spec.w1}")
        print(f"  census          {r.poincare}")
        print(f"  p_W1(t^2)       {w1_series(spec)}")
        print(f"  euler by |J|    {shadow(r.euler_per_lambda_degree)}")
        print(f"  census(-1) = {r.poincare(-1)},  p_W1(-1) = {w1_series(spec)(-1)}")
        try:
            pqs = embedding_specs(spec)
        except LookupError:
            pqs = []
        for pq in pqs:
            upper = census_parabolic(pq).poincare
            lower = census(pq.levi).poincare if pq.levi is not None else None
            print(f"  {pq.label}: p_G,P = {upper}" + (f", p_P,B = {lower}" if lower is not None else ""))
        print()
    for n in (1, 2, 3):
        spec = lookup(f"osp({2 * n}|{2 * n})")
        pq = next(p for p in embedding_specs(spec) if p.levi is None)
        upper = census_parabolic(pq).poincare
        prod = Poly.one()
        for k in range(1, n + 1):
            prod = prod * (Poly.one() + Poly.monomial(2 * k))
        print(f"osp({2 * n}|{2 * n}) gl-parabolic census {upper};  (1+t^2)...(1+t^{2 * n}) = {prod}")
        sym = census(lookup(f"gl({n}|{n})")).poincare
        print(f"  census * p_Sym(t^2) = {upper * sym};  p_W1(t^2) = {w1_series(spec)}")


if __name__ == "__main__":
    main()
