"""Adapted frames: connection-corrected bases for the extension chart.

Run with:  python3 demos/03_adapted_frames.py

On a product chart with a connection, the coordinate frame is not the
natural one -- the good basis tilts the upper-level directions by the
connection coefficients.  ``adapted_frame`` builds:

  D, Dbar        horizontal-type vector families (level 0 rows drive
                 vf_horizontal), plus the time direction riding along;
  V, Vbar        the top-level vertical directions;
  theta, thetabar  covector families reading off field components;
  eta, etabar    connection-corrected covectors
                 eta[(r,i)] = dz^{r+1,i} + sum_j Gamma[r,i,j] dz^{r,j}.

Within one level the families are dual to each other; across levels the
pairings can survive once k >= 2 -- the demo shows both.
"""

from liftcalc import (
    ChartSpec,
    ConnectionCoeffs,
    VectorField,
    adapted_frame,
    format_expr,
    format_oneform,
    format_vector,
    parse,
    vf_horizontal,
)


def dump(name, family):
    for key in sorted(family):
        field = family[key]
        lines = format_vector(field) if isinstance(field, VectorField) \
            else format_oneform(field)
        print(f"  {name}[{key}] = {'; '.join(lines) or '0'}")


def main():
    # m=1, k=2 product chart; one nontrivial connection coefficient
    # Gamma^1_{11} = z0_1 at every transition level.
    chart = ChartSpec(m=1, k=2, has_time=True)
    conn = ConnectionCoeffs(
        chart,
        gamma={(0, 1, 1): parse("z0_1"), (1, 1, 1): parse("z0_1")},
    )
    frame = adapted_frame(chart, conn)

    print("adapted frame on the m=1, k=2 product chart,"
          " Gamma^1_11 = z0_1 at both levels\n")
    print("vector families (plus d/dt riding along):")
    dump("D", frame.D)
    dump("V", frame.V)
    print("covector families:")
    dump("theta", frame.theta)
    dump("eta", frame.eta)

    print("\nbiorthogonality inside a level:")
    for lhs, name_l, rhs, name_r in (
        (frame.theta, "theta", frame.D, "D"),
        (frame.eta, "eta", frame.V, "V"),
        (frame.eta, "eta", frame.D, "D"),
        (frame.theta, "theta", frame.V, "V"),
    ):
        val = lhs[(0, 1)].pair(rhs[(0, 1)])
        print(f"  {name_l}[(0,1)] ( {name_r}[(0,1)] ) = {format_expr(val)}")
    print("  (theta reads the guide components, eta reads the upright ones,")
    print("   and each family annihilates the other's partners)")

    print("\ncross-level pairings (k = 2 keeps some of them alive):")
    base = chart.base()
    z = base.holo_coords(0)[0]
    Z = VectorField(base, {base.time_coord: parse("1"), z: parse("zb0_1")})
    ZH = vf_horizontal(Z, conn)
    print(f"  Z = d/dt + zb0_1 d/dz0_1,   Z^H = {'; '.join(format_vector(ZH))}")
    for level in (0, 1):
        val = frame.eta[(level, 1)].pair(ZH)
        print(f"  eta[({level},1)] ( Z^H ) = {format_expr(val)}")
    print("  (the level-0 covector annihilates the horizontal lift; the")
    print("   level-1 one picks up a genuine second-order correction)")


if __name__ == "__main__":
    main()
