"""Diagonal complex structures and hermitian data on extension charts.

Run with:  python3 demos/04_complex_structures.py

The extension chart of a complex manifold carries the obvious diagonal
structure J_k (multiply holomorphic directions by i, antiholomorphic by -i)
and its covector-side twin J_k*.  Both square to -identity at every order.

The same structure also arrives by *lifting*: take J_0 on the base and push
it through the complete (1,1)-tensor lift.  The demo checks that the lifted
structure still squares to -identity and agrees with the direct diagonal
construction -- and that a hermitian metric stays hermitian under both the
vertical and the complete (0,2) lift, with a closed fundamental form.
"""

from liftcalc import (
    ChartSpec,
    Expr,
    HermitianPackage,
    build_Jk,
    format_endo,
    hermitian_check,
    kaehler_closed,
    kaehler_form,
    lift_J0,
    t02_lift_solve,
)


def main():
    for k in (0, 1, 2):
        chart = ChartSpec(m=1, k=k, has_time=False)
        J = build_Jk(chart)
        sq = J.compose(J)
        is_minus_id = all(
            (v.is_zero() if a != b else v == -Expr.one())
            for (a, b), v in sq.entries.items()
        )
        print(f"J_{k} on the m=1 order-{k} chart: "
              f"J^2 = -Id  ->  {is_minus_id}")

    print("\nJ_2 obtained by lifting J_0 through the complete tensor lift:")
    J_lifted = lift_J0(1, "c", 2)
    for line in format_endo(J_lifted):
        print(f"  {line}")
    J_direct = build_Jk(ChartSpec(1, 2, False))
    print(f"coincides with the direct diagonal construction: "
          f"{J_lifted == J_direct}")

    print("\nflat hermitian package on the m=2 base:")
    pkg = HermitianPackage.flat(2)
    print(f"  metric hermitian w.r.t. J:      {hermitian_check(pkg.metric, pkg.J)}")
    phi = kaehler_form(pkg.metric, pkg.J)
    print(f"  fundamental two-form closed:    {kaehler_closed(phi)}")

    print("\nlift the metric and re-test against the lifted structure:")
    for kind, label in (("v", "vertical"), ("c", "complete")):
        for k in (1, 2):
            g_up = t02_lift_solve(pkg.metric, kind, k)
            J_up = lift_J0(2, "c", k)
            ok = hermitian_check(g_up, J_up)
            closed = kaehler_closed(kaehler_form(g_up, J_up))
            print(f"  {label:8s} lift, k={k}:  hermitian={ok}  "
                  f"fundamental form closed={closed}")


if __name__ == "__main__":
    main()
