"""Lift operations between extension charts.

Three layers live here.

**Function lifts.**  The vertical lift of a function is the same polynomial
read on a higher-order chart.  The complete lift is the level-shift
derivation, applied stepwise: each step sends f to
``t*(df/dt) + sum over coords c of shift(c)*(df/dc)`` where ``shift`` raises
the level of a z/zb coordinate by one (the time term only exists on charts
with a time line).  Mixed lifts compose the two; the horizontal lift of a
function is the complete lift minus the time-unscaled step (:func:`gamma_gradient`)
of the previous complete lift, which vanishes identically for time-free
functions.

**Closed-form lifts.**  Constructors named ``*_closed`` build the lifted
vector fields and one-forms from explicit componentwise formulas (binomially
weighted level placements).  They are kept strictly separate from the solver
so the two can be compared; the package never assumes they agree.

**Determined lifts (the solver).**  Constructors named ``*_lift_solve`` treat
the lifted object as unknown and impose its defining equations against a
finite spanning family of test objects:

* vector field ``Z``:  ``Z^lift(f^{c^k}) = (Z f)^lift`` over a family of
  functions,
* one-form ``w``:  ``w^lift(X^{c^k}) = (w X)^lift`` over a family of vector
  fields,
* (1,1)-tensor ``phi``:  ``phi^lift(X^{c^k}) = (phi X)^lift`` componentwise,
* (0,2)-tensor ``G``:  ``G^lift(X^{c^k}, Y^{c^k}) = (G(X,Y))^lift`` over
  ordered pairs.

Each unknown component is a whole polynomial, solved exactly by
:func:`liftcalc.symkernel.solve_poly_linear`.  Every solve re-verifies the
defining equation on a disjoint holdout family and raises if any residual is
nonzero, so a returned lift carries a machine-checked certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .charts import ChartSpec
from .fields import (
    Bilinear,
    ConnectionCoeffs,
    EndoField,
    OneForm,
    ScalarField,
    VectorField,
)
from .symkernel import (
    TIME,
    CoordId,
    Expr,
    Kind,
    LinearSolveError,
    UnderdeterminedError,
    UnknownId,
    binomial,
    format_expr,
    solve_poly_linear,
)


class LiftError(Exception):
    """A lift operation was asked for outside its domain, or a determined
    lift could not be certified."""


VF_KINDS = ("v", "c", "cv")


# ---------------------------------------------------------------------------
# Function lifts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _complete_step_expr(expr: Expr) -> Expr:
    """One complete-lift step at the expression level."""
    out = Expr.zero()
    for coord in sorted(expr.coords(), key=lambda c: c.sort_key()):
        d = expr.diff(coord)
        if d.is_zero():
            continue
        if coord.kind == Kind.TIME:
            out = out + Expr.atom(TIME) * d
        else:
            shifted = CoordId(coord.kind, coord.level + 1, coord.index)
            out = out + Expr.atom(shifted) * d
    return out


@lru_cache(maxsize=None)
def _complete_expr(expr: Expr, steps: int) -> Expr:
    out = expr
    for _ in range(steps):
        out = _complete_step_expr(out)
    return out


def _lift_scalar_expr(expr: Expr, kind: str, k: int, r: int | None,
                      s: int | None) -> Expr:
    """Lift a base-chart scalar; vertical steps leave the polynomial alone."""
    if kind == "v":
        return expr
    if kind == "c":
        return _complete_expr(expr, k)
    if kind == "cv":
        return _complete_expr(expr, r)
    raise LiftError(f"unknown lift kind {kind!r}")


def clear_lift_cache() -> None:
    _complete_step_expr.cache_clear()
    _complete_expr.cache_clear()
    _VF_SOLVE_CACHE.clear()


def fn_vertical(f: ScalarField, steps: int = 1) -> ScalarField:
    """Vertical lift: the same polynomial on a chart `steps` orders higher."""
    if steps < 0:
        raise LiftError("vertical lift takes a non-negative step count")
    return ScalarField(f.chart.extend(steps), f.value)


def fn_complete_step(f: ScalarField) -> ScalarField:
    """One complete-lift step: chart order j -> j+1."""
    return ScalarField(f.chart.extend(1), _complete_step_expr(f.value))


def fn_complete(f: ScalarField, steps: int) -> ScalarField:
    if steps < 0:
        raise LiftError("complete lift takes a non-negative step count")
    return ScalarField(f.chart.extend(steps), _complete_expr(f.value, steps))


def fn_complete_vertical(f: ScalarField, r: int, s: int) -> ScalarField:
    """Complete r steps, then vertical s steps (the two step kinds commute
    on functions; the property suite checks this rather than assuming it)."""
    if r < 0 or s < 0:
        raise LiftError("lift step counts must be non-negative")
    return fn_vertical(fn_complete(f, r), s)


def gamma_gradient(f: ScalarField) -> ScalarField:
    """The time-unscaled step: like one complete step but the time term is
    (df/dt) instead of t*(df/dt).  Only defined on charts with a time line."""
    if not f.chart.has_time:
        raise LiftError("gamma_gradient requires a chart with a time coordinate")
    expr = f.value
    out = expr.diff(TIME)
    for coord in sorted(expr.coords(), key=lambda c: c.sort_key()):
        if coord.kind == Kind.TIME:
            continue
        d = expr.diff(coord)
        if not d.is_zero():
            shifted = CoordId(coord.kind, coord.level + 1, coord.index)
            out = out + Expr.atom(shifted) * d
    return ScalarField(f.chart.extend(1), out)


def fn_horizontal(f: ScalarField, k: int) -> ScalarField:
    """Horizontal lift of a function: complete lift minus the time-unscaled
    step of the order-(k-1) complete lift.  Identically zero on time-free
    functions; for time-dependent ones it measures the time defect."""
    if k < 1:
        raise LiftError("horizontal lift needs k >= 1")
    if not f.chart.has_time:
        raise LiftError("horizontal lift requires a chart with a time coordinate")
    top = fn_complete(f, k)
    grad = gamma_gradient(fn_complete(f, k - 1))
    return ScalarField(top.chart, top.value - grad.value)


# ---------------------------------------------------------------------------
# Closed-form lifts of vector fields and one-forms
# ---------------------------------------------------------------------------

def _require_base_chart(obj, what: str) -> ChartSpec:
    if obj.chart.k != 0:
        raise LiftError(f"{what} must live on an order-0 chart")
    return obj.chart


def _constant_time_component(comp: Expr, what: str) -> Expr:
    if not comp.is_constant():
        raise LiftError(
            f"{what} requires a constant time component, got {format_expr(comp)}")
    return comp


def vf_vertical_closed(Z: VectorField, k: int) -> VectorField:
    """Closed-form vertical lift: level-0 components move to level k (the
    time component, if any, stays on the time direction)."""
    chart0 = _require_base_chart(Z, "vertical lift input")
    if k < 0:
        raise LiftError("lift order must be non-negative")
    target = chart0.extend(k)
    comps: dict[CoordId, Expr] = {}
    for coord, comp in Z.components.items():
        if coord.kind == Kind.TIME:
            comps[TIME] = comp
        else:
            comps[CoordId(coord.kind, k, coord.index)] = comp
    return VectorField(target, comps)


def vf_complete_closed(Z: VectorField, k: int) -> VectorField:
    """Closed-form complete lift: the level-r slot of direction i carries
    C(k, r) times the mixed lift (Z-component)^{v^{k-r} c^r}.  Requires a
    constant time component."""
    chart0 = _require_base_chart(Z, "complete lift input")
    if k < 0:
        raise LiftError("lift order must be non-negative")
    target = chart0.extend(k)
    comps: dict[CoordId, Expr] = {}
    if chart0.has_time:
        tc = _constant_time_component(Z.component(TIME), "closed-form complete lift")
        if not tc.is_zero():
            comps[TIME] = tc
    for coord, comp in Z.components.items():
        if coord.kind == Kind.TIME:
            continue
        for r in range(k + 1):
            value = _complete_expr(comp, r)
            if value.is_zero():
                continue
            weighted = value * binomial(k, r)
            slot = CoordId(coord.kind, r, coord.index)
            comps[slot] = comps.get(slot, Expr.zero()) + weighted
    return VectorField(target, comps)


def vf_cv_closed(Z: VectorField, r: int, s: int) -> VectorField:
    """Closed-form complete-vertical lift at split (r, s), k = r + s:
    the level-l slot of direction i carries C(r, k-l) times
    (Z-component)^{v^{s+k-l} c^{l-s}}; slots with l < s are zero."""
    if r < 0 or s < 0:
        raise LiftError("lift split must be non-negative")
    k = r + s
    chart0 = _require_base_chart(Z, "complete-vertical lift input")
    target = chart0.extend(k)
    comps: dict[CoordId, Expr] = {}
    if chart0.has_time:
        tc = _constant_time_component(Z.component(TIME),
                                      "closed-form complete-vertical lift")
        if not tc.is_zero():
            comps[TIME] = tc
    for coord, comp in Z.components.items():
        if coord.kind == Kind.TIME:
            continue
        for level in range(s, k + 1):
            if k - level > r:
                continue
            value = _complete_expr(comp, level - s)
            if value.is_zero():
                continue
            weighted = value * binomial(r, k - level)
            slot = CoordId(coord.kind, level, coord.index)
            comps[slot] = comps.get(slot, Expr.zero()) + weighted
    return VectorField(target, comps)


def of_vertical_closed(w: OneForm, k: int) -> OneForm:
    """Closed-form vertical lift of a one-form: the same components on the
    same (level-0 and time) slots, read on the order-k chart."""
    chart0 = _require_base_chart(w, "vertical lift input")
    if k < 0:
        raise LiftError("lift order must be non-negative")
    return OneForm(chart0.extend(k), dict(w.components))


def of_complete_closed(w: OneForm, k: int) -> OneForm:
    """Closed-form complete lift of a one-form: the level-r slot of index i
    carries (w-component)^{c^{k-r} v^r}, with no binomial weight.  The time
    component must be constant and stays on dt."""
    chart0 = _require_base_chart(w, "complete lift input")
    if k < 0:
        raise LiftError("lift order must be non-negative")
    target = chart0.extend(k)
    comps: dict[CoordId, Expr] = {}
    if chart0.has_time:
        tc = _constant_time_component(w.component(TIME), "closed-form complete lift")
        if not tc.is_zero():
            comps[TIME] = tc
    for coord, comp in w.components.items():
        if coord.kind == Kind.TIME:
            continue
        for r in range(k + 1):
            value = _complete_expr(comp, k - r)
            if value.is_zero():
                continue
            slot = CoordId(coord.kind, r, coord.index)
            comps[slot] = comps.get(slot, Expr.zero()) + value
    return OneForm(target, comps)


def of_cv_closed(w: OneForm, r: int, s: int) -> OneForm:
    """Closed-form complete-vertical lift of a one-form at split (r, s),
    k = r + s: the level-l slot carries (C(r,l)/C(k,l)) times
    (w-component)^{v^{s+l} c^{r-l}}; slots with l > r are zero."""
    if r < 0 or s < 0:
        raise LiftError("lift split must be non-negative")
    k = r + s
    chart0 = _require_base_chart(w, "complete-vertical lift input")
    target = chart0.extend(k)
    comps: dict[CoordId, Expr] = {}
    if chart0.has_time:
        tc = _constant_time_component(w.component(TIME),
                                      "closed-form complete-vertical lift")
        if not tc.is_zero():
            comps[TIME] = tc
    for coord, comp in w.components.items():
        if coord.kind == Kind.TIME:
            continue
        for level in range(0, r + 1):
            value = _complete_expr(comp, r - level)
            if value.is_zero():
                continue
            weight = Fraction(binomial(r, level), binomial(k, level))
            slot = CoordId(coord.kind, level, coord.index)
            comps[slot] = comps.get(slot, Expr.zero()) + value * weight
    return OneForm(target, comps)


# ---------------------------------------------------------------------------
# Adapted frames and horizontal lifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdaptedFrame:
    """The connection-adapted frame and coframe of an order-k chart.

    For levels 0 <= r <= k-1 and indices 1 <= i <= m:

    * ``D[(r, i)]``   = d/dz{r}_{i} - sum_j gamma[r,j,i] d/dz{r+1}_{j}
    * ``V[(r, i)]``   = d/dz{r+1}_{i}
    * ``theta[(r,i)]`` = dz{r}_{i}
    * ``eta[(r, i)]`` = dz{r+1}_{i} + sum_j gamma[r,i,j] dz{r}_{j}

    with barred versions built from the antiholomorphic coefficients.  The
    same-level duality relations (theta against D, eta against V and D) are
    verified by the frames suite, not assumed.
    """

    chart: ChartSpec
    conn: ConnectionCoeffs
    D: dict
    Dbar: dict
    V: dict
    Vbar: dict
    theta: dict
    thetabar: dict
    eta: dict
    etabar: dict


def adapted_frame(chart: ChartSpec, conn: ConnectionCoeffs) -> AdaptedFrame:
    if conn.chart != chart:
        raise LiftError("connection coefficients belong to a different chart")
    if chart.k < 1:
        raise LiftError("adapted frames need extension order k >= 1")
    D: dict = {}
    Dbar: dict = {}
    V: dict = {}
    Vbar: dict = {}
    theta: dict = {}
    thetabar: dict = {}
    eta: dict = {}
    etabar: dict = {}
    m = chart.m
    for r in range(chart.k):
        for i in range(1, m + 1):
            d_comps = {CoordId(Kind.HOLO, r, i): Expr.one()}
            dbar_comps = {CoordId(Kind.ANTI, r, i): Expr.one()}
            eta_comps = {CoordId(Kind.HOLO, r + 1, i): Expr.one()}
            etabar_comps = {CoordId(Kind.ANTI, r + 1, i): Expr.one()}
            for j in range(1, m + 1):
                g = conn.gamma_at(r, j, i)
                if not g.is_zero():
                    d_comps[CoordId(Kind.HOLO, r + 1, j)] = -g
                gb = conn.gammabar_at(r, j, i)
                if not gb.is_zero():
                    dbar_comps[CoordId(Kind.ANTI, r + 1, j)] = -gb
                ge = conn.gamma_at(r, i, j)
                if not ge.is_zero():
                    eta_comps[CoordId(Kind.HOLO, r, j)] = ge
                gbe = conn.gammabar_at(r, i, j)
                if not gbe.is_zero():
                    etabar_comps[CoordId(Kind.ANTI, r, j)] = gbe
            D[(r, i)] = VectorField(chart, d_comps)
            Dbar[(r, i)] = VectorField(chart, dbar_comps)
            V[(r, i)] = VectorField.basis(chart, CoordId(Kind.HOLO, r + 1, i))
            Vbar[(r, i)] = VectorField.basis(chart, CoordId(Kind.ANTI, r + 1, i))
            theta[(r, i)] = OneForm.differential_of(chart, CoordId(Kind.HOLO, r, i))
            thetabar[(r, i)] = OneForm.differential_of(chart, CoordId(Kind.ANTI, r, i))
            eta[(r, i)] = OneForm(chart, eta_comps)
            etabar[(r, i)] = OneForm(chart, etabar_comps)
    return AdaptedFrame(chart, conn, D, Dbar, V, Vbar,
                        theta, thetabar, eta, etabar)


def vf_horizontal(Z: VectorField, conn: ConnectionCoeffs) -> VectorField:
    """Horizontal lift of a base vector field through an adapted frame:
    the time component rides along vertically and each level-0 component
    multiplies the corresponding level-0 frame field D."""
    chart0 = _require_base_chart(Z, "horizontal lift input")
    if not chart0.has_time:
        raise LiftError("horizontal lifts require a chart with a time coordinate")
    target = conn.chart
    if target.m != chart0.m or not target.has_time or target.k < 1:
        raise LiftError("connection chart must extend the input chart")
    frame = adapted_frame(target, conn)
    out = VectorField.zero(target)
    tc = Z.component(TIME)
    if not tc.is_zero():
        out = out + VectorField(target, {TIME: tc})
    for i in range(1, chart0.m + 1):
        zc = Z.component(CoordId(Kind.HOLO, 0, i))
        if not zc.is_zero():
            out = out + frame.D[(0, i)].scaled(zc)
        zbc = Z.component(CoordId(Kind.ANTI, 0, i))
        if not zbc.is_zero():
            out = out + frame.Dbar[(0, i)].scaled(zbc)
    return out


def of_horizontal(w: OneForm, conn: ConnectionCoeffs) -> OneForm:
    """Horizontal lift of a base one-form: each level-0 component multiplies
    the top-level coframe form eta.  The time component must vanish — with a
    dt term the two defining pairing clauses cannot hold simultaneously."""
    chart0 = _require_base_chart(w, "horizontal lift input")
    if not chart0.has_time:
        raise LiftError("horizontal lifts require a chart with a time coordinate")
    if not w.component(TIME).is_zero():
        raise LiftError(
            "horizontal lift of a one-form requires a zero time component: "
            "a dt term would have to pair to zero against every horizontal "
            "lift and to itself against every vertical lift at once")
    target = conn.chart
    if target.m != chart0.m or not target.has_time or target.k < 1:
        raise LiftError("connection chart must extend the input chart")
    frame = adapted_frame(target, conn)
    out = OneForm.zero(target)
    top = target.k - 1
    for i in range(1, chart0.m + 1):
        zc = w.component(CoordId(Kind.HOLO, 0, i))
        if not zc.is_zero():
            out = out + frame.eta[(top, i)].scaled(zc)
        zbc = w.component(CoordId(Kind.ANTI, 0, i))
        if not zbc.is_zero():
            out = out + frame.etabar[(top, i)].scaled(zbc)
    return out


# ---------------------------------------------------------------------------
# Determined lifts: test families
# ---------------------------------------------------------------------------

def _base_coords(chart0: ChartSpec) -> list[CoordId]:
    return list(chart0.holo_coords(0) + chart0.anti_coords(0))


def function_family(chart0: ChartSpec, include_time: bool, k: int) -> list[Expr]:
    """Functions whose defining equations pin a lifted vector field: the
    coordinates, all their squares and pairwise products, and pure powers up
    to degree k+1 (plus t itself when requested).  A coordinate's pure powers
    x, x^2, ..., x^{k+1} pin the whole level ladder above x; the mixed
    quadratics tie the ladders together."""
    coords0 = _base_coords(chart0)
    fam: list[Expr] = []
    if include_time and chart0.has_time:
        fam.append(Expr.atom(TIME))
    fam.extend(Expr.atom(c) for c in coords0)
    for a, b in combinations_with_replacement(coords0, 2):
        fam.append(Expr.atom(a) * Expr.atom(b))
    for d in range(3, max(3, k + 1) + 1):
        fam.extend(Expr.atom(c) ** d for c in coords0)
    return fam


def function_holdout(chart0: ChartSpec) -> list[Expr]:
    """Degree-3 mixed products — disjoint from the solving family, whose
    degree-3 members are pure cubes."""
    coords0 = _base_coords(chart0)
    out: list[Expr] = []
    for combo in combinations_with_replacement(coords0, 3):
        if len(set(combo)) > 1:
            prod = Expr.one()
            for c in combo:
                prod = prod * Expr.atom(c)
            out.append(prod)
    return out


def _vector_stage(chart0: ChartSpec, stage: int) -> list[VectorField]:
    """Test vector fields with coefficient degree == stage (stage 0 also
    contributes the time direction on product charts)."""
    coords0 = _base_coords(chart0)
    out: list[VectorField] = []
    if stage == 0:
        if chart0.has_time:
            out.append(VectorField.basis(chart0, TIME))
        out.extend(VectorField.basis(chart0, c) for c in coords0)
        return out
    for coeffs in combinations_with_replacement(coords0, stage):
        coeff = Expr.one()
        for c in coeffs:
            coeff = coeff * Expr.atom(c)
        for direction in coords0:
            out.append(VectorField(chart0, {direction: coeff}))
    return out


def vector_test_family(chart0: ChartSpec, max_stage: int) -> list[VectorField]:
    out: list[VectorField] = []
    for stage in range(max_stage + 1):
        out.extend(_vector_stage(chart0, stage))
    return out


def vector_test_holdout(chart0: ChartSpec) -> list[VectorField]:
    """Cube-coefficient fields; coefficient degrees used for solving stop at 2."""
    coords0 = _base_coords(chart0)
    out: list[VectorField] = []
    for c in coords0:
        coeff = Expr.atom(c) ** 3
        for direction in coords0:
            out.append(VectorField(chart0, {direction: coeff}))
    return out


# ---------------------------------------------------------------------------
# Determined lifts: solver core
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolveCertificate:
    """Record of a certified determined-lift solve.

    ``notes`` carries post-verification observations that are reported
    rather than enforced (currently: the covector-pairing law checked after
    every (1,1)-tensor solve)."""

    op: str
    kind: str
    k: int
    r: int | None
    s: int | None
    family_size: int
    holdout_size: int
    residuals_zero: bool
    notes: tuple[str, ...] = ()


def _check_kind(kind: str, k: int, r: int | None, s: int | None
                ) -> tuple[int | None, int | None]:
    if kind not in VF_KINDS:
        raise LiftError(f"unknown lift kind {kind!r}; expected one of {VF_KINDS}")
    if k < 1:
        raise LiftError("determined lifts need k >= 1")
    if kind == "cv":
        if r is None or s is None or r < 0 or s < 0:
            raise LiftError("complete-vertical lifts need a split r, s >= 0")
        if r + s != k:
            raise LiftError(f"split must satisfy r + s = k, got {r} + {s} != {k}")
        return r, s
    return None, None


def _solve_and_verify(equations: list[Expr], unknowns: list[UnknownId],
                      context: str) -> dict[UnknownId, Expr]:
    try:
        solution = solve_poly_linear(equations, unknowns)
    except UnderdeterminedError:
        raise
    except LinearSolveError as exc:
        raise LiftError(f"{context}: {exc}") from exc
    for n, eq in enumerate(equations):
        if not eq.substitute_unknowns(solution).is_zero():
            raise LiftError(
                f"{context}: solution fails its own equation {n}")
    return solution


def _nonzero(residuals: Iterable[Expr]) -> list[Expr]:
    return [res for res in residuals if not res.is_zero()]


# -- vector fields -----------------------------------------------------------

def vf_lift_solve_certified(Z: VectorField, kind: str, k: int, *,
                            r: int | None = None, s: int | None = None
                            ) -> tuple[VectorField, SolveCertificate]:
    """Determined lift of a vector field, with its solve certificate.

    The defining equations decouple into one small square system per level
    ladder (the pure powers of a base coordinate only ever reach that
    coordinate's higher levels), so each ladder is eliminated separately and
    the cross-coordinate family members are then enforced by substitution.
    If a ladder fails to determine its unknowns the solve falls back to a
    joint elimination of the whole family."""
    chart0 = _require_base_chart(Z, "determined lift input")
    r, s = _check_kind(kind, k, r, s)
    target = chart0.extend(k)

    pinned: dict[CoordId, Expr] = {}
    include_time = False
    if chart0.has_time:
        if kind == "v":
            include_time = True
        else:
            tc = Z.component(TIME)
            if not tc.is_constant():
                raise LiftError(
                    "complete and complete-vertical lifts require a constant "
                    f"time component, got {format_expr(tc)}")
            pinned[TIME] = tc

    solve_coords = [c for c in target.coordinates() if c not in pinned]
    if not include_time and chart0.has_time:
        solve_coords = [c for c in solve_coords if c.kind != Kind.TIME]
    unknowns = {c: UnknownId(f"U_{c.name}") for c in solve_coords}

    def equations_for(functions: Sequence[Expr]) -> list[Expr]:
        eqs = []
        for f in functions:
            fck = _complete_expr(f, k)
            lhs = Expr.zero()
            for coord in sorted(fck.coords(), key=lambda c: c.sort_key()):
                d = fck.diff(coord)
                u = unknowns.get(coord)
                if u is not None:
                    lhs = lhs + Expr.atom(u) * d
                else:
                    pin = pinned.get(coord)
                    if pin is not None:
                        lhs = lhs + pin * d
            rhs = _lift_scalar_expr(Z.apply(f), kind, k, r, s)
            eqs.append(lhs - rhs)
        return eqs

    family = function_family(chart0, include_time, k)

    solution: dict[UnknownId, Expr] | None = {}
    try:
        if include_time:
            t_eqs = equations_for([Expr.atom(TIME)])
            solution.update(solve_poly_linear(t_eqs, [unknowns[TIME]]))
        for base in _base_coords(chart0):
            ladder = [CoordId(base.kind, level, base.index)
                      for level in range(k + 1)]
            x = Expr.atom(base)
            ladder_eqs = equations_for([x ** d for d in range(1, k + 2)])
            solution.update(solve_poly_linear(
                ladder_eqs, [unknowns[c] for c in ladder]))
    except LinearSolveError:
        solution = None

    try:
        if solution is None:
            solution = _solve_and_verify(equations_for(family),
                                         list(unknowns.values()),
                                         f"vector {kind}-lift solve")
        else:
            for n, eq in enumerate(equations_for(family)):
                if not eq.substitute_unknowns(solution).is_zero():
                    raise LiftError(
                        f"vector {kind}-lift solve: solution fails its own "
                        f"equation {n}")
    except UnderdeterminedError as exc:
        free = ", ".join(u.name[2:] for u in exc.free)
        raise LiftError(
            f"vector {kind}-lift solve underdetermined; free components: {free}"
        ) from exc

    comps = dict(pinned)
    for coord, u in unknowns.items():
        value = solution[u]
        if not value.is_zero():
            comps[coord] = value
    result = VectorField(target, comps)

    holdout = function_holdout(chart0)
    bad = _nonzero(vf_defining_residuals(Z, result, kind, k, r=r, s=s,
                                         functions=holdout))
    if bad:
        raise LiftError(
            f"vector {kind}-lift holdout residual nonzero: {format_expr(bad[0])}")
    cert = SolveCertificate("vector", kind, k, r, s,
                            len(family), len(holdout), True)
    return result, cert


def vf_lift_solve(Z: VectorField, kind: str, k: int, *,
                  r: int | None = None, s: int | None = None) -> VectorField:
    return vf_lift_solve_certified(Z, kind, k, r=r, s=s)[0]


def vf_defining_residuals(Z: VectorField, lifted: VectorField, kind: str,
                          k: int, *, r: int | None = None, s: int | None = None,
                          functions: Sequence[Expr] | None = None) -> list[Expr]:
    """Residuals lifted(f^{c^k}) - (Z f)^lift over the given functions
    (default: the holdout family)."""
    chart0 = Z.chart
    if functions is None:
        functions = function_holdout(chart0)
    out = []
    for f in functions:
        fck = _complete_expr(f, k)
        rhs = _lift_scalar_expr(Z.apply(f), kind, k, r, s)
        out.append(lifted.apply(fck) - rhs)
    return out


# -- cached complete lifts of test vector fields ------------------------------

_VF_SOLVE_CACHE: dict = {}


def _field_key(Z: VectorField) -> tuple:
    return tuple(sorted(Z.components.items(), key=lambda kv: kv[0].sort_key()))


def _vf_solve_cached(Z: VectorField, kind: str, k: int) -> VectorField:
    key = (Z.chart, kind, k, _field_key(Z))
    hit = _VF_SOLVE_CACHE.get(key)
    if hit is None:
        hit = vf_lift_solve(Z, kind, k)
        _VF_SOLVE_CACHE[key] = hit
    return hit


def complete_vf_cached(Z: VectorField, k: int) -> VectorField:
    """Memoized determined complete lift; the one-form and tensor solves pair
    their ansatz against these."""
    return _vf_solve_cached(Z, "c", k)


# -- one-forms ----------------------------------------------------------------

def _of_equations(w: OneForm, unknowns: dict[CoordId, UnknownId], kind: str,
                  k: int, r: int | None, s: int | None,
                  tests: Sequence[VectorField]) -> list[Expr]:
    chart0 = w.chart
    equations = []
    for X in tests:
        Xc = complete_vf_cached(X, k)
        lhs = Expr.zero()
        for coord, comp in Xc.components.items():
            lhs = lhs + Expr.atom(unknowns[coord]) * comp
        rhs = _lift_scalar_expr(w.pair(X), kind, k, r, s)
        equations.append(lhs - rhs)
    return equations


def of_lift_solve_certified(w: OneForm, kind: str, k: int, *,
                            r: int | None = None, s: int | None = None
                            ) -> tuple[OneForm, SolveCertificate]:
    """Determined lift of a one-form, with its solve certificate.

    Complete and complete-vertical solves require a zero time component:
    with a dt term the defining equations contradict each other (pairing
    against the lifted time direction forces the dt coefficient to both
    survive and vanish)."""
    chart0 = _require_base_chart(w, "determined lift input")
    r, s = _check_kind(kind, k, r, s)
    if kind != "v" and chart0.has_time and not w.component(TIME).is_zero():
        raise LiftError(
            f"one-form {kind}-lift requires a zero time component, got "
            f"{format_expr(w.component(TIME))}")
    target = chart0.extend(k)
    unknowns = {c: UnknownId(f"W_{c.name}") for c in target.coordinates()}

    tests = vector_test_family(chart0, 1)
    equations = _of_equations(w, unknowns, kind, k, r, s, tests)
    try:
        solution = _solve_and_verify(equations, list(unknowns.values()),
                                     f"one-form {kind}-lift solve")
    except UnderdeterminedError:
        extra = _vector_stage(chart0, 2)
        tests = tests + extra
        equations = equations + _of_equations(w, unknowns, kind, k, r, s, extra)
        try:
            solution = _solve_and_verify(equations, list(unknowns.values()),
                                         f"one-form {kind}-lift solve")
        except UnderdeterminedError as exc:
            free = ", ".join(u.name[2:] for u in exc.free)
            raise LiftError(
                f"one-form {kind}-lift solve underdetermined; free components: {free}"
            ) from exc

    comps = {c: solution[u] for c, u in unknowns.items()
             if not solution[u].is_zero()}
    result = OneForm(target, comps)

    holdout = vector_test_holdout(chart0)
    bad = _nonzero(of_defining_residuals(w, result, kind, k, r=r, s=s,
                                         vectors=holdout))
    if bad:
        raise LiftError(
            f"one-form {kind}-lift holdout residual nonzero: {format_expr(bad[0])}")
    cert = SolveCertificate("oneform", kind, k, r, s,
                            len(tests), len(holdout), True)
    return result, cert


def of_lift_solve(w: OneForm, kind: str, k: int, *,
                  r: int | None = None, s: int | None = None) -> OneForm:
    return of_lift_solve_certified(w, kind, k, r=r, s=s)[0]


def of_defining_residuals(w: OneForm, lifted: OneForm, kind: str, k: int, *,
                          r: int | None = None, s: int | None = None,
                          vectors: Sequence[VectorField] | None = None
                          ) -> list[Expr]:
    """Residuals lifted(X^{c^k}) - (w X)^lift over the given base vector
    fields (default: the holdout family)."""
    chart0 = w.chart
    if vectors is None:
        vectors = vector_test_holdout(chart0)
    out = []
    for X in vectors:
        Xc = complete_vf_cached(X, k)
        rhs = _lift_scalar_expr(w.pair(X), kind, k, r, s)
        out.append(lifted.pair(Xc) - rhs)
    return out


# -- (1,1)-tensors -------------------------------------------------------------

def _t_kind(kind: str, k: int) -> None:
    if kind not in ("v", "c"):
        raise LiftError(f"tensor lifts support kinds 'v' and 'c', got {kind!r}")
    if k < 1:
        raise LiftError("determined lifts need k >= 1")


def t11_lift_solve_certified(phi: EndoField, kind: str, k: int
                             ) -> tuple[EndoField, SolveCertificate]:
    """Determined lift of a (1,1)-tensor field.

    Row-wise: the output component at coordinate a couples only the unknowns
    E[a, .], so each output direction is an independent small solve against
    the shared test-field matrix."""
    chart0 = _require_base_chart(phi, "determined lift input")
    _t_kind(kind, k)
    target = chart0.extend(k)
    target_coords = list(target.coordinates())

    def rhs_field(X: VectorField) -> VectorField:
        return _lift_vf_definitional(phi.apply_vector(X), kind, k)

    stage_max = 1
    tests = vector_test_family(chart0, stage_max)
    lifted_tests = [complete_vf_cached(X, k) for X in tests]
    rhs_fields = [rhs_field(X) for X in tests]

    # Probe one row for determinacy; the coefficient matrix is shared by all
    # rows, so escalating the test family once covers every row.
    def row_solve(row_coord: CoordId, tests_l, rhss) -> dict[CoordId, Expr]:
        unknowns = {c: UnknownId(f"E_{row_coord.name}__{c.name}")
                    for c in target_coords}
        equations = []
        for Xc, rhs_vf in zip(tests_l, rhss):
            lhs = Expr.zero()
            for coord, comp in Xc.components.items():
                lhs = lhs + Expr.atom(unknowns[coord]) * comp
            equations.append(lhs - rhs_vf.component(row_coord))
        solution = _solve_and_verify(equations, list(unknowns.values()),
                                     f"(1,1)-tensor {kind}-lift solve")
        return {c: solution[u] for c, u in unknowns.items()
                if not solution[u].is_zero()}

    try:
        first_row = row_solve(target_coords[0], lifted_tests, rhs_fields)
    except UnderdeterminedError:
        extra = _vector_stage(chart0, 2)
        tests = tests + extra
        lifted_tests = lifted_tests + [complete_vf_cached(X, k) for X in extra]
        rhs_fields = rhs_fields + [rhs_field(X) for X in extra]
        try:
            first_row = row_solve(target_coords[0], lifted_tests, rhs_fields)
        except UnderdeterminedError as exc:
            free = ", ".join(u.name.split("__")[-1] for u in exc.free)
            raise LiftError(
                f"(1,1)-tensor {kind}-lift solve underdetermined; "
                f"free entries: {free}") from exc

    entries: dict[tuple[CoordId, CoordId], Expr] = {}
    for b, value in first_row.items():
        entries[(target_coords[0], b)] = value
    for a in target_coords[1:]:
        try:
            row = row_solve(a, lifted_tests, rhs_fields)
        except UnderdeterminedError as exc:
            free = ", ".join(u.name.split("__")[-1] for u in exc.free)
            raise LiftError(
                f"(1,1)-tensor {kind}-lift solve underdetermined; "
                f"free entries: {free}") from exc
        for b, value in row.items():
            entries[(a, b)] = value
    result = EndoField(target, entries)

    holdout = vector_test_holdout(chart0)
    bad = _nonzero(t11_defining_residuals(phi, result, kind, k,
                                          vectors=holdout))
    if bad:
        raise LiftError(
            f"(1,1)-tensor {kind}-lift holdout residual nonzero: "
            f"{format_expr(bad[0])}")
    notes = t11_form_clause_notes(phi, result, kind, k)
    cert = SolveCertificate("endo", kind, k, None, None,
                            len(tests), len(holdout), True, notes)
    return result, cert


def t11_form_clause_notes(phi: EndoField, lifted: EndoField, kind: str,
                          k: int) -> tuple[str, ...]:
    """Post-verify the covector half of the tensor-lift law: composing each
    lifted basis covector with the lifted tensor should reproduce the lift
    of the composition.  A nonzero residual is reported (never raised): for
    vertical lifts the pairing annihilates every level-0 covector, so this
    half of the law cannot hold whenever the base composition is nonzero."""
    chart0 = phi.chart
    for coord in _base_coords(chart0):
        eta = OneForm(chart0, {coord: Expr.one()})
        composed = phi.apply_form(eta)
        lifted_eta = of_lift_solve(eta, kind, k)
        expected = of_lift_solve(composed, kind, k)
        if lifted.apply_form(lifted_eta) != expected:
            return (
                f"covector pairing fails at d{coord.name}: the {kind}-lifted "
                f"covector composed with the lifted tensor differs from the "
                f"lifted composition",)
    return ()


def t11_lift_solve(phi: EndoField, kind: str, k: int) -> EndoField:
    return t11_lift_solve_certified(phi, kind, k)[0]


def t11_defining_residuals(phi: EndoField, lifted: EndoField, kind: str,
                           k: int, *,
                           vectors: Sequence[VectorField] | None = None
                           ) -> list[Expr]:
    """Component residuals of lifted(X^{c^k}) - (phi X)^lift over the given
    base vector fields (default: the holdout family)."""
    chart0 = phi.chart
    if vectors is None:
        vectors = vector_test_holdout(chart0)
    out: list[Expr] = []
    target = lifted.chart
    for X in vectors:
        Xc = complete_vf_cached(X, k)
        rhs = _lift_vf_definitional(phi.apply_vector(X), kind, k)
        diff = lifted.apply_vector(Xc) - rhs
        for coord in target.coordinates():
            out.append(diff.component(coord))
    return out


def _lift_vf_definitional(Z: VectorField, kind: str, k: int) -> VectorField:
    """Memoized determined lift of a vector field; tensor solves use these
    as right-hand sides so every ingredient stays definitional."""
    return _vf_solve_cached(Z, kind, k)


# -- (0,2)-tensors -------------------------------------------------------------

def _t02_pairs(fields: Sequence[VectorField]) -> list[tuple[int, int]]:
    n = len(fields)
    return [(i, j) for i in range(n) for j in range(n)]


def t02_lift_solve_certified(G: Bilinear, kind: str, k: int
                             ) -> tuple[Bilinear, SolveCertificate]:
    """Determined lift of a (0,2)-tensor field against ordered pairs of test
    fields (ordered, so antisymmetric parts are pinned too)."""
    chart0 = _require_base_chart(G, "determined lift input")
    _t_kind(kind, k)
    target = chart0.extend(k)
    target_coords = list(target.coordinates())
    unknowns = {(a, b): UnknownId(f"B_{a.name}__{b.name}")
                for a in target_coords for b in target_coords}

    def equations_for(fields: Sequence[VectorField]) -> list[Expr]:
        lifted = [complete_vf_cached(X, k) for X in fields]
        eqs = []
        for i, j in _t02_pairs(fields):
            Xc, Yc = lifted[i], lifted[j]
            lhs = Expr.zero()
            for a, xa in Xc.components.items():
                for b, yb in Yc.components.items():
                    lhs = lhs + Expr.atom(unknowns[(a, b)]) * xa * yb
            rhs = _lift_scalar_expr(G.evaluate(fields[i], fields[j]),
                                    kind, k, None, None)
            eqs.append(lhs - rhs)
        return eqs

    tests = vector_test_family(chart0, 1)
    equations = equations_for(tests)
    unknown_list = [unknowns[(a, b)] for a in target_coords for b in target_coords]
    try:
        solution = _solve_and_verify(equations, unknown_list,
                                     f"(0,2)-tensor {kind}-lift solve")
    except UnderdeterminedError:
        extra = _vector_stage(chart0, 2)
        all_tests = tests + extra
        equations = equations_for(all_tests)
        tests = all_tests
        try:
            solution = _solve_and_verify(equations, unknown_list,
                                         f"(0,2)-tensor {kind}-lift solve")
        except UnderdeterminedError as exc:
            free = ", ".join(u.name[2:] for u in exc.free)
            raise LiftError(
                f"(0,2)-tensor {kind}-lift solve underdetermined; "
                f"free entries: {free}") from exc

    entries = {}
    for (a, b), u in unknowns.items():
        value = solution[u]
        if not value.is_zero():
            entries[(a, b)] = value
    result = Bilinear(target, entries)

    holdout_fields = vector_test_holdout(chart0)
    bad = _nonzero(t02_defining_residuals(G, result, kind, k,
                                          vectors=holdout_fields))
    if bad:
        raise LiftError(
            f"(0,2)-tensor {kind}-lift holdout residual nonzero: "
            f"{format_expr(bad[0])}")
    cert = SolveCertificate("bilinear", kind, k, None, None,
                            len(tests) ** 2, len(holdout_fields), True)
    return result, cert


def t02_lift_solve(G: Bilinear, kind: str, k: int) -> Bilinear:
    return t02_lift_solve_certified(G, kind, k)[0]


def t02_defining_residuals(G: Bilinear, lifted: Bilinear, kind: str, k: int, *,
                           vectors: Sequence[VectorField] | None = None
                           ) -> list[Expr]:
    """Residuals lifted(X^{c^k}, Y^{c^k}) - (G(X,Y))^lift over ordered pairs
    (X, Y) drawn from the given fields paired with themselves and with the
    stage-0 basis fields (default fields: the holdout family)."""
    chart0 = G.chart
    if vectors is None:
        vectors = vector_test_holdout(chart0)
    basis = _vector_stage(chart0, 0)
    pairs: list[tuple[VectorField, VectorField]] = []
    for X in vectors:
        for Y in basis:
            pairs.append((X, Y))
            pairs.append((Y, X))
    for i, X in enumerate(vectors):
        for Y in vectors[i:]:
            pairs.append((X, Y))
    out = []
    for X, Y in pairs:
        Xc = complete_vf_cached(X, k)
        Yc = complete_vf_cached(Y, k)
        lhs = Expr.zero()
        for (a, b), value in lifted.entries.items():
            xa = Xc.components.get(a)
            yb = Yc.components.get(b)
            if xa is not None and yb is not None:
                lhs = lhs + value * xa * yb
        rhs = _lift_scalar_expr(G.evaluate(X, Y), kind, k, None, None)
        out.append(lhs - rhs)
    return out


# ---------------------------------------------------------------------------
# Basis lift tables
# ---------------------------------------------------------------------------

def _compact_vector(Z: VectorField) -> str:
    if not Z.components:
        return "0"
    parts = []
    for c in sorted(Z.components, key=lambda c: c.sort_key()):
        comp = Z.components[c]
        if comp == Expr.one():
            parts.append(f"d/d{c.name}")
        elif comp == -Expr.one():
            parts.append(f"-d/d{c.name}")
        else:
            parts.append(f"({format_expr(comp)})*d/d{c.name}")
    return " + ".join(parts)


def _compact_oneform(w: OneForm) -> str:
    if not w.components:
        return "0"
    parts = []
    for c in sorted(w.components, key=lambda c: c.sort_key()):
        comp = w.components[c]
        if comp == Expr.one():
            parts.append(f"d{c.name}")
        elif comp == -Expr.one():
            parts.append(f"-d{c.name}")
        else:
            parts.append(f"({format_expr(comp)})*d{c.name}")
    return " + ".join(parts)


def basis_lift_rows(m: int, k: int, has_time: bool = True,
                    conn: ConnectionCoeffs | None = None
                    ) -> list[tuple[str, str]]:
    """Closed-form lifts of every basis vector and differential, as
    deterministic (label, value) rows.  Horizontal rows appear on charts with
    a time line; they use the given connection (zero by default)."""
    if k < 1:
        raise LiftError("basis tables need k >= 1")
    chart0 = ChartSpec(m, 0, has_time)
    target = chart0.extend(k)
    if conn is None:
        conn = ConnectionCoeffs.zero(target)
    rows: list[tuple[str, str]] = []

    def vf_rows(coord: CoordId) -> None:
        name = coord.name
        basis = VectorField.basis(chart0, coord)
        rows.append((f"(d/d{name})^{{v^{k}}}",
                     _compact_vector(vf_vertical_closed(basis, k))))
        rows.append((f"(d/d{name})^{{c^{k}}}",
                     _compact_vector(vf_complete_closed(basis, k))))
        if has_time:
            rows.append((f"(d/d{name})^{{H^{k}}}",
                         _compact_vector(vf_horizontal(basis, conn))))

    def of_rows(coord: CoordId) -> None:
        name = coord.name
        diff = OneForm.differential_of(chart0, coord)
        rows.append((f"(d{name})^{{v^{k}}}",
                     _compact_oneform(of_vertical_closed(diff, k))))
        rows.append((f"(d{name})^{{c^{k}}}",
                     _compact_oneform(of_complete_closed(diff, k))))
        if has_time and coord.kind != Kind.TIME:
            rows.append((f"(d{name})^{{H^{k}}}",
                         _compact_oneform(of_horizontal(diff, conn))))

    if has_time:
        vf_rows(TIME)
        of_rows(TIME)
    for i in range(1, m + 1):
        vf_rows(CoordId(Kind.HOLO, 0, i))
        of_rows(CoordId(Kind.HOLO, 0, i))
    for i in range(1, m + 1):
        vf_rows(CoordId(Kind.ANTI, 0, i))
        of_rows(CoordId(Kind.ANTI, 0, i))
    return rows
