"""Lifting scalar functions from a base chart to its k-th extension.

Run with:  python3 demos/01_scalar_lifts.py

A scalar on the base chart (coordinates z0_i, zb0_i, optionally t) has four
lifts to the k-th extension chart:

  * vertical      -- the same polynomial, reread on the bigger chart;
  * complete      -- the total-derivative tower: each application replaces
                     coordinates by their next-level shadows via the chain
                     rule, and k applications land on the k-th chart;
  * complete-vertical -- r complete steps then s vertical steps (r+s = k);
  * horizontal    -- only on product charts (with a time line): the complete
                     lift corrected by the time flow, so anything t-free
                     dies and t itself records the flow offset.
"""

from liftcalc import (
    ChartSpec,
    ScalarField,
    fn_complete,
    fn_complete_vertical,
    fn_horizontal,
    fn_vertical,
    format_expr,
    parse,
)


def show(label, field):
    print(f"  {label:28s} {format_expr(field.value)}")


def main():
    base = ChartSpec(m=1, k=0, has_time=False)
    f = ScalarField(base, parse("z0_1^2"))
    print("base scalar f = z0_1^2 on a one-dimensional chart\n")

    print("vertical lifts (value never changes, chart grows):")
    for k in (1, 2, 3):
        show(f"f^(v^{k}) =", fn_vertical(f, k))

    print("\ncomplete lifts (one derivative tower per step):")
    for k in (1, 2, 3):
        show(f"f^(c^{k}) =", fn_complete(f, k))

    print("\nmixed lifts at k = 3 (r complete steps, s vertical steps):")
    for r in range(4):
        s = 3 - r
        show(f"f^(c^{r} v^{s}) =", fn_complete_vertical(f, r, s))
    print("  (the endpoints reproduce the pure lifts, and the value only")
    print("   depends on r -- the vertical steps just enlarge the chart)")

    # Horizontal lifts need a time line on the chart.
    prod = ChartSpec(m=1, k=0, has_time=True)
    g = ScalarField(prod, parse("t*z0_1"))
    h = ScalarField(prod, parse("z0_1"))
    print("\nhorizontal lifts on the product chart (m=1, time line):")
    show("(t*z0_1)^(H^1) =", fn_horizontal(g, 1))
    show("(t*z0_1)^(H^2) =", fn_horizontal(g, 2))
    show("(z0_1)^(H^1) =", fn_horizontal(h, 1))
    print("  (t-free scalars are annihilated; the t factor is what survives)")


if __name__ == "__main__":
    main()
