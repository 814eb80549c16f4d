"""Connection-adapted frames on order-k charts: duality relations, the
cross-level pairing that survives at k >= 2, and reconstruction of
horizontal lifts from the frame."""

import pytest

from liftcalc.charts import ChartSpec
from liftcalc.fields import ConnectionCoeffs, OneForm, VectorField
from liftcalc.lifts import LiftError, adapted_frame, vf_horizontal
from liftcalc.symkernel import Expr, TIME, holo, parse


def chart(m=1, k=1):
    return ChartSpec(m, 0, True).extend(k)


def conn_with(chart_, text="z0_1"):
    table = {}
    for r in range(chart_.k):
        for i in range(1, chart_.m + 1):
            for j in range(1, chart_.m + 1):
                table[(r, i, j)] = parse(text) if i == j else parse("zb0_1")
    return ConnectionCoeffs(chart_, table)


def test_zero_connection_frame_is_coordinate_frame():
    c = chart(1, 2)
    f = adapted_frame(c, ConnectionCoeffs.zero(c))
    assert f.D[(0, 1)] == VectorField.basis(c, holo(0, 1))
    assert f.D[(1, 1)] == VectorField.basis(c, holo(1, 1))
    assert f.V[(0, 1)] == VectorField.basis(c, holo(1, 1))
    assert f.eta[(0, 1)] == OneForm.differential_of(c, holo(1, 1))
    assert f.theta[(1, 1)] == OneForm.differential_of(c, holo(1, 1))


def test_same_level_duality_with_connection():
    c = chart(2, 2)
    f = adapted_frame(c, conn_with(c))
    for r in range(c.k):
        for i in range(1, c.m + 1):
            for j in range(1, c.m + 1):
                delta = Expr.one() if i == j else Expr.zero()
                assert f.theta[(r, i)].pair(f.D[(r, j)]) == delta
                assert f.theta[(r, i)].pair(f.V[(r, j)]).is_zero()
                assert f.eta[(r, i)].pair(f.V[(r, j)]) == delta
                assert f.eta[(r, i)].pair(f.D[(r, j)]).is_zero()
                assert f.theta[(r, i)].pair(f.Dbar[(r, j)]).is_zero()
                assert f.eta[(r, i)].pair(f.Vbar[(r, j)]).is_zero()


def test_cross_level_pairing_survives():
    # eta at level 0 sees D at level 1 through its dz1 component: the
    # adapted families are not biorthogonal across levels once k >= 2
    c = chart(1, 2)
    f = adapted_frame(c, ConnectionCoeffs.zero(c))
    assert f.eta[(0, 1)].pair(f.D[(1, 1)]) == Expr.one()
    # ... and with a connection the same slot keeps a nonzero value
    fc = adapted_frame(c, conn_with(c))
    assert not fc.eta[(0, 1)].pair(fc.D[(1, 1)]).is_zero()


def test_frame_needs_positive_order():
    c = ChartSpec(1, 0, True)
    with pytest.raises(LiftError):
        adapted_frame(c, ConnectionCoeffs.zero(c))


def test_frame_chart_mismatch():
    c1 = chart(1, 1)
    c2 = chart(1, 2)
    with pytest.raises(LiftError):
        adapted_frame(c2, ConnectionCoeffs.zero(c1))


def test_horizontal_reconstruction_from_frame():
    # Z^H = (time comp) d/dt + sum_i Z^i D_i + conjugates, with the level-0
    # frame fields
    c = chart(2, 2)
    conn = conn_with(c)
    f = adapted_frame(c, conn)
    base = ChartSpec(2, 0, True)
    Z = VectorField(base, {
        TIME: Expr.one(),
        holo(0, 1): parse("z0_1*zb0_2"),
        holo(0, 2): parse("i"),
    })
    expected = VectorField(c, {TIME: Expr.one()})
    expected = expected + f.D[(0, 1)].scaled(parse("z0_1*zb0_2"))
    expected = expected + f.D[(0, 2)].scaled(parse("i"))
    assert vf_horizontal(Z, conn) == expected


def test_theta_reads_off_horizontal_components():
    c = chart(1, 2)
    conn = conn_with(c)
    f = adapted_frame(c, conn)
    base = ChartSpec(1, 0, True)
    Z = VectorField(base, {TIME: parse("2"), holo(0, 1): parse("zb0_1")})
    ZH = vf_horizontal(Z, conn)
    assert f.theta[(0, 1)].pair(ZH) == parse("zb0_1")
    # the same-level transition covector annihilates the horizontal field...
    assert f.eta[(0, 1)].pair(ZH).is_zero()
    # ...but the level-1 one picks up a cross-level term (see the frames
    # suite conflict clause): -Gamma^2 * Z-component here
    assert f.eta[(1, 1)].pair(ZH) == parse("-z0_1^2*zb0_1")


def test_barred_families_are_conjugates_for_conjugate_closed_connections():
    c = chart(1, 1)
    conn = conn_with(c)  # bars default to conjugated coefficients
    f = adapted_frame(c, conn)
    assert f.Dbar[(0, 1)] == f.D[(0, 1)].conjugate()
    assert f.etabar[(0, 1)] == f.eta[(0, 1)].conjugate()
