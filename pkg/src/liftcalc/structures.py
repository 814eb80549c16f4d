"""Complex structures, hermitian metrics, and their lifted compatibility.

An order-k extension chart of a complex manifold carries the diagonal
complex structure (multiply holomorphic directions by i, antiholomorphic
by -i) and its cobasis twin acting on differentials.  This module builds
both, lifts the order-0 structure through the determined (1,1)-solver, and
packages hermitian metrics with their fundamental two-forms so compatibility
of the lifted data can be checked mechanically:

* ``hermitian_check(G, J)``: does G(J., J.) equal G entrywise?
* ``kaehler_form(G, J)``: the two-form (X, Y) -> G(X, J Y), validated to be
  antisymmetric before conversion.
* ``kaehler_closed(phi)``: exterior derivative vanishes.

Nothing here assumes the checks succeed; every predicate is computed from
the exact entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charts import ChartSpec
from .fields import AltForm, Bilinear, EndoField, OneForm
from .lifts import t11_lift_solve
from .symkernel import CoordId, Expr, Kind


class StructureError(Exception):
    """A structure constructor was used outside its domain."""


def build_Jk(chart: ChartSpec) -> EndoField:
    """The diagonal complex structure of an extension chart: i on every
    holomorphic direction, -i on every antiholomorphic one.  Time-free
    charts only — a time direction has no consistent eigenvalue."""
    if chart.has_time:
        raise StructureError(
            "the diagonal complex structure lives on time-free charts")
    i = Expr.imag_unit()
    entries: dict[tuple[CoordId, CoordId], Expr] = {}
    for coord in chart.coordinates():
        entries[(coord, coord)] = i if coord.kind == Kind.HOLO else -i
    return EndoField(chart, entries)


def build_Jk_star(chart: ChartSpec) -> EndoField:
    """The cobasis twin of :func:`build_Jk`: the same diagonal matrix, read
    as acting on one-form components (i on each dz slot, -i on each dzb
    slot).  Apply it to a one-form with :func:`star_apply`."""
    if chart.has_time:
        raise StructureError(
            "the cobasis complex structure lives on time-free charts")
    i = Expr.imag_unit()
    entries: dict[tuple[CoordId, CoordId], Expr] = {}
    for coord in chart.coordinates():
        entries[(coord, coord)] = i if coord.kind == Kind.HOLO else -i
    return EndoField(chart, entries)


def star_apply(S: EndoField, w: OneForm) -> OneForm:
    """Direct cobasis action: the output component at slot a is
    sum_b S[a, b] * w_b (matrix times component vector)."""
    if S.chart != w.chart:
        raise StructureError("operator and form live on different charts")
    comps: dict[CoordId, Expr] = {}
    for (a, b), value in S.entries.items():
        wb = w.components.get(b)
        if wb is None:
            continue
        comps[a] = comps.get(a, Expr.zero()) + value * wb
    return OneForm(S.chart, comps)


def lift_J0(m: int, kind: str, k: int) -> EndoField:
    """Determined lift of the order-0 diagonal structure on a time-free
    chart with m holomorphic directions."""
    chart0 = ChartSpec(m, 0, False)
    return t11_lift_solve(build_Jk(chart0), kind, k)


def hermitian_check(G: Bilinear, J: EndoField) -> bool:
    """Whether G(J., J.) == G, computed entrywise through the pullback."""
    return G.pullback_endo(J) == G


def fundamental_bilinear(G: Bilinear, J: EndoField) -> Bilinear:
    """The bilinear (X, Y) -> G(X, J Y), with no symmetry requirement."""
    if G.chart != J.chart:
        raise StructureError("metric and operator live on different charts")
    entries: dict[tuple[CoordId, CoordId], Expr] = {}
    for (a, c), g in G.entries.items():
        for (cc, b), j in J.entries.items():
            if cc != c:
                continue
            key = (a, b)
            entries[key] = entries.get(key, Expr.zero()) + g * j
    return Bilinear(G.chart, entries)


def kaehler_form(G: Bilinear, J: EndoField) -> AltForm:
    """The fundamental two-form (X, Y) -> G(X, J Y).  Raises unless the
    resulting bilinear is antisymmetric (i.e. unless G is hermitian-
    symmetric for J)."""
    phi = fundamental_bilinear(G, J)
    if not phi.is_antisymmetric():
        raise StructureError(
            "G(., J.) is not antisymmetric; no fundamental two-form")
    return AltForm.from_bilinear(phi)


def kaehler_closed(phi: AltForm) -> bool:
    """Whether the two-form is closed (exterior derivative vanishes)."""
    return phi.exterior_derivative().is_zero()


@dataclass(frozen=True)
class HermitianPackage:
    """A time-free order-0 chart with a hermitian metric, its diagonal
    structure, and the fundamental two-form bilinear (kept as a Bilinear so
    it can be lifted through the (0,2)-solver)."""

    chart: ChartSpec
    metric: Bilinear
    J: EndoField
    phi: Bilinear

    @staticmethod
    def flat(m: int) -> "HermitianPackage":
        """The flat package: metric dz_i (x) dzb_i + dzb_i (x) dz_i."""
        chart = ChartSpec(m, 0, False)
        one = Expr.one()
        entries: dict[tuple[CoordId, CoordId], Expr] = {}
        for i in range(1, m + 1):
            z = CoordId(Kind.HOLO, 0, i)
            zb = CoordId(Kind.ANTI, 0, i)
            entries[(z, zb)] = one
            entries[(zb, z)] = one
        metric = Bilinear(chart, entries)
        J = build_Jk(chart)
        phi_entries: dict[tuple[CoordId, CoordId], Expr] = {}
        for (a, c), g in metric.entries.items():
            for (cc, b), j in J.entries.items():
                if cc == c:
                    key = (a, b)
                    phi_entries[key] = phi_entries.get(key, Expr.zero()) + g * j
        phi = Bilinear(chart, phi_entries)
        return HermitianPackage(chart, metric, J, phi)

    def fundamental_form(self) -> AltForm:
        return kaehler_form(self.metric, self.J)
