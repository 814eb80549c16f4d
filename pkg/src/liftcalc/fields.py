"""Field objects over an extension chart.

Every geometric object in the package is stored componentwise against the
coordinate frame of a chart: vector fields against the partials
``d/d{coord}``, one-forms against the differentials ``d{coord}``, and the
rank-2 objects against coordinate pairs.  Components are kernel expressions;
zero components are never stored, so structural equality of two fields is
equality of their component maps.

Components may contain solver unknowns (the determined-lift machinery builds
ansatz fields this way); chart validation only constrains the coordinates.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .charts import ChartSpec
from .symkernel import CoordId, Expr, ExprLike, format_expr


class FieldError(Exception):
    pass


def _clean_components(chart: ChartSpec, components: Mapping[CoordId, ExprLike],
                      what: str) -> dict[CoordId, Expr]:
    clean: dict[CoordId, Expr] = {}
    for coord, raw in components.items():
        if not isinstance(coord, CoordId):
            raise FieldError(f"{what} components must be keyed by CoordId")
        if not chart.contains(coord):
            raise FieldError(f"{what} component key {coord.name} is not in the chart")
        value = Expr.from_value(raw)
        chart.validate_expr(value, f"{what} component at {coord.name}")
        if not value.is_zero():
            clean[coord] = value
    return clean


def _sorted_coords(coords: Iterable[CoordId]) -> list[CoordId]:
    return sorted(coords, key=lambda c: c.sort_key())


class ScalarField:
    """A polynomial function on a chart."""

    __slots__ = ("chart", "value")

    def __init__(self, chart: ChartSpec, value: ExprLike):
        expr = Expr.from_value(value)
        chart.validate_expr(expr, "scalar field")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "value", expr)

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("ScalarField is immutable")

    def conjugate(self) -> "ScalarField":
        return ScalarField(self.chart, self.value.conjugate())

    def __add__(self, other: "ScalarField") -> "ScalarField":
        _same_chart(self, other)
        return ScalarField(self.chart, self.value + other.value)

    def __mul__(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            _same_chart(self, other)
            return ScalarField(self.chart, self.value * other.value)
        return ScalarField(self.chart, self.value * Expr.from_value(other))

    __rmul__ = __mul__

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.chart, -self.value)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self.chart == other.chart and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.chart, self.value))

    def __repr__(self) -> str:
        return f"ScalarField({format_expr(self.value)})"


class VectorField:
    """A vector field: components against the coordinate partials."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: ChartSpec, components: Mapping[CoordId, ExprLike]):
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "components",
                           _clean_components(chart, components, "vector"))

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("VectorField is immutable")

    @staticmethod
    def zero(chart: ChartSpec) -> "VectorField":
        return VectorField(chart, {})

    @staticmethod
    def basis(chart: ChartSpec, coord: CoordId) -> "VectorField":
        return VectorField(chart, {coord: Expr.one()})

    def component(self, coord: CoordId) -> Expr:
        return self.components.get(coord, Expr.zero())

    def apply(self, f: ExprLike) -> Expr:
        """Directional derivative of a function: sum of comp * df/dcoord."""
        expr = Expr.from_value(f)
        out = Expr.zero()
        for coord, comp in self.components.items():
            out = out + comp * expr.diff(coord)
        return out

    def conjugate(self) -> "VectorField":
        return VectorField(self.chart, {
            coord.conjugate(): comp.conjugate()
            for coord, comp in self.components.items()})

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        merged = dict(self.components)
        for coord, comp in other.components.items():
            merged[coord] = merged.get(coord, Expr.zero()) + comp
        return VectorField(self.chart, merged)

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart,
                           {c: -v for c, v in self.components.items()})

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scaled(self, factor: ExprLike) -> "VectorField":
        f = Expr.from_value(factor)
        return VectorField(self.chart,
                           {c: f * v for c, v in self.components.items()})

    def __rmul__(self, factor) -> "VectorField":
        return self.scaled(factor)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __repr__(self) -> str:
        if not self.components:
            return "VectorField(0)"
        parts = [f"({format_expr(v)})*d/d{c.name}"
                 for c, v in sorted(self.components.items(),
                                    key=lambda kv: kv[0].sort_key())]
        return "VectorField(" + " + ".join(parts) + ")"


class OneForm:
    """A one-form: components against the coordinate differentials."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: ChartSpec, components: Mapping[CoordId, ExprLike]):
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "components",
                           _clean_components(chart, components, "one-form"))

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("OneForm is immutable")

    @staticmethod
    def zero(chart: ChartSpec) -> "OneForm":
        return OneForm(chart, {})

    @staticmethod
    def differential_of(chart: ChartSpec, coord: CoordId) -> "OneForm":
        return OneForm(chart, {coord: Expr.one()})

    def component(self, coord: CoordId) -> Expr:
        return self.components.get(coord, Expr.zero())

    def pair(self, Z: VectorField) -> Expr:
        """Natural pairing with a vector field."""
        _same_chart(self, Z)
        out = Expr.zero()
        for coord, comp in self.components.items():
            zc = Z.components.get(coord)
            if zc is not None:
                out = out + comp * zc
        return out

    def conjugate(self) -> "OneForm":
        return OneForm(self.chart, {
            coord.conjugate(): comp.conjugate()
            for coord, comp in self.components.items()})

    def __add__(self, other: "OneForm") -> "OneForm":
        _same_chart(self, other)
        merged = dict(self.components)
        for coord, comp in other.components.items():
            merged[coord] = merged.get(coord, Expr.zero()) + comp
        return OneForm(self.chart, merged)

    def __neg__(self) -> "OneForm":
        return OneForm(self.chart, {c: -v for c, v in self.components.items()})

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)

    def scaled(self, factor: ExprLike) -> "OneForm":
        f = Expr.from_value(factor)
        return OneForm(self.chart, {c: f * v for c, v in self.components.items()})

    def __rmul__(self, factor) -> "OneForm":
        return self.scaled(factor)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __repr__(self) -> str:
        if not self.components:
            return "OneForm(0)"
        parts = [f"({format_expr(v)})*d{c.name}"
                 for c, v in sorted(self.components.items(),
                                    key=lambda kv: kv[0].sort_key())]
        return "OneForm(" + " + ".join(parts) + ")"


class EndoField:
    """A (1,1)-tensor field: entries[(out, in)] against the coordinate frame.

    Acting on a vector field: (T Z)^out = sum_in entries[(out, in)] * Z^in.
    Acting on a one-form by precomposition: (w T)(Z) = w(T Z).
    """

    __slots__ = ("chart", "entries")

    def __init__(self, chart: ChartSpec,
                 entries: Mapping[tuple[CoordId, CoordId], ExprLike]):
        clean: dict[tuple[CoordId, CoordId], Expr] = {}
        for key, raw in entries.items():
            out_c, in_c = key
            for c in (out_c, in_c):
                if not isinstance(c, CoordId) or not chart.contains(c):
                    raise FieldError(f"endo entry key {c} is not a chart coordinate")
            value = Expr.from_value(raw)
            chart.validate_expr(value, f"endo entry ({out_c.name}, {in_c.name})")
            if not value.is_zero():
                clean[(out_c, in_c)] = value
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("EndoField is immutable")

    @staticmethod
    def identity(chart: ChartSpec) -> "EndoField":
        return EndoField(chart, {(c, c): Expr.one() for c in chart.coordinates()})

    def entry(self, out_c: CoordId, in_c: CoordId) -> Expr:
        return self.entries.get((out_c, in_c), Expr.zero())

    def apply_vector(self, Z: VectorField) -> VectorField:
        _same_chart(self, Z)
        comps: dict[CoordId, Expr] = {}
        for (out_c, in_c), value in self.entries.items():
            zc = Z.components.get(in_c)
            if zc is not None:
                comps[out_c] = comps.get(out_c, Expr.zero()) + value * zc
        return VectorField(self.chart, comps)

    def apply_form(self, w: OneForm) -> OneForm:
        _same_chart(self, w)
        comps: dict[CoordId, Expr] = {}
        for (out_c, in_c), value in self.entries.items():
            wc = w.components.get(out_c)
            if wc is not None:
                comps[in_c] = comps.get(in_c, Expr.zero()) + value * wc
        return OneForm(self.chart, comps)

    def compose(self, other: "EndoField") -> "EndoField":
        """Matrix product: (self . other) Z = self(other(Z))."""
        _same_chart(self, other)
        entries: dict[tuple[CoordId, CoordId], Expr] = {}
        by_in: dict[CoordId, list[tuple[CoordId, Expr]]] = {}
        for (out_c, mid_c), value in self.entries.items():
            by_in.setdefault(mid_c, []).append((out_c, value))
        for (mid_c, in_c), value in other.entries.items():
            for out_c, left in by_in.get(mid_c, ()):
                key = (out_c, in_c)
                entries[key] = entries.get(key, Expr.zero()) + left * value
        return EndoField(self.chart, entries)

    def square(self) -> "EndoField":
        return self.compose(self)

    def scaled(self, factor: ExprLike) -> "EndoField":
        f = Expr.from_value(factor)
        return EndoField(self.chart, {k: f * v for k, v in self.entries.items()})

    def __add__(self, other: "EndoField") -> "EndoField":
        _same_chart(self, other)
        merged = dict(self.entries)
        for key, value in other.entries.items():
            merged[key] = merged.get(key, Expr.zero()) + value
        return EndoField(self.chart, merged)

    def __neg__(self) -> "EndoField":
        return self.scaled(-1)

    def __sub__(self, other: "EndoField") -> "EndoField":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoField):
            return NotImplemented
        return self.chart == other.chart and self.entries == other.entries

    def __repr__(self) -> str:
        return f"EndoField({len(self.entries)} entries)"


class Bilinear:
    """A (0,2)-tensor field: entries[(a, b)] = value of the tensor on the
    coordinate pair (d/da, d/db)."""

    __slots__ = ("chart", "entries")

    def __init__(self, chart: ChartSpec,
                 entries: Mapping[tuple[CoordId, CoordId], ExprLike]):
        clean: dict[tuple[CoordId, CoordId], Expr] = {}
        for key, raw in entries.items():
            a, b = key
            for c in (a, b):
                if not isinstance(c, CoordId) or not chart.contains(c):
                    raise FieldError(f"bilinear entry key {c} is not a chart coordinate")
            value = Expr.from_value(raw)
            chart.validate_expr(value, f"bilinear entry ({a.name}, {b.name})")
            if not value.is_zero():
                clean[(a, b)] = value
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("Bilinear is immutable")

    def entry(self, a: CoordId, b: CoordId) -> Expr:
        return self.entries.get((a, b), Expr.zero())

    def evaluate(self, X: VectorField, Y: VectorField) -> Expr:
        _same_chart(self, X)
        _same_chart(self, Y)
        out = Expr.zero()
        for (a, b), value in self.entries.items():
            xa = X.components.get(a)
            yb = Y.components.get(b)
            if xa is not None and yb is not None:
                out = out + value * xa * yb
        return out

    def pullback_endo(self, J: EndoField) -> "Bilinear":
        """The bilinear (X, Y) -> self(J X, J Y), componentwise."""
        _same_chart(self, J)
        by_out: dict[CoordId, list[tuple[CoordId, Expr]]] = {}
        for (out_c, in_c), value in J.entries.items():
            by_out.setdefault(out_c, []).append((in_c, value))
        entries: dict[tuple[CoordId, CoordId], Expr] = {}
        for (c, d), g in self.entries.items():
            for a, jca in by_out.get(c, ()):
                for b, jdb in by_out.get(d, ()):
                    key = (a, b)
                    entries[key] = entries.get(key, Expr.zero()) + jca * g * jdb
        return Bilinear(self.chart, entries)

    def is_symmetric(self) -> bool:
        return all(self.entry(b, a) == v for (a, b), v in self.entries.items())

    def is_antisymmetric(self) -> bool:
        return all(self.entry(b, a) == -v for (a, b), v in self.entries.items())

    def scaled(self, factor: ExprLike) -> "Bilinear":
        f = Expr.from_value(factor)
        return Bilinear(self.chart, {k: f * v for k, v in self.entries.items()})

    def __add__(self, other: "Bilinear") -> "Bilinear":
        _same_chart(self, other)
        merged = dict(self.entries)
        for key, value in other.entries.items():
            merged[key] = merged.get(key, Expr.zero()) + value
        return Bilinear(self.chart, merged)

    def __neg__(self) -> "Bilinear":
        return self.scaled(-1)

    def __sub__(self, other: "Bilinear") -> "Bilinear":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bilinear):
            return NotImplemented
        return self.chart == other.chart and self.entries == other.entries

    def __repr__(self) -> str:
        return f"Bilinear({len(self.entries)} entries)"


class AltForm:
    """An alternating form of degree 0..3.

    Components are stored on strictly increasing coordinate tuples (canonical
    coordinate order); a degree-p component at (c1 < ... < cp) is the value on
    (d/dc1, ..., d/dcp).
    """

    __slots__ = ("chart", "degree", "components")

    def __init__(self, chart: ChartSpec, degree: int,
                 components: Mapping[tuple, ExprLike]):
        if not 0 <= degree <= 3:
            raise FieldError(f"alternating forms support degree 0..3, got {degree}")
        clean: dict[tuple, Expr] = {}
        for key, raw in components.items():
            key = tuple(key)
            if len(key) != degree:
                raise FieldError(f"component key {key} has wrong arity for degree {degree}")
            for c in key:
                if not isinstance(c, CoordId) or not chart.contains(c):
                    raise FieldError("alternating-form component keys must be chart coordinates")
            keys = [c.sort_key() for c in key]
            if any(keys[i] >= keys[i + 1] for i in range(len(keys) - 1)):
                raise FieldError(
                    "component keys must be strictly increasing in the coordinate order")
            value = Expr.from_value(raw)
            chart.validate_expr(value, "alternating-form component")
            if not value.is_zero():
                clean[key] = value
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("AltForm is immutable")

    @staticmethod
    def from_oneform(w: OneForm) -> "AltForm":
        return AltForm(w.chart, 1, {(c,): v for c, v in w.components.items()})

    @staticmethod
    def from_bilinear(B: Bilinear) -> "AltForm":
        """Convert an antisymmetric bilinear into the degree-2 form with the
        same values: component at (a < b) is B(d/da, d/db)."""
        if not B.is_antisymmetric():
            raise FieldError("from_bilinear requires an antisymmetric bilinear")
        comps: dict[tuple, Expr] = {}
        for (a, b), value in B.entries.items():
            if a.sort_key() < b.sort_key():
                comps[(a, b)] = comps.get((a, b), Expr.zero()) + value
        return AltForm(B.chart, 2, comps)

    def is_zero(self) -> bool:
        return not self.components

    def wedge(self, other: "AltForm") -> "AltForm":
        _same_chart(self, other)
        degree = self.degree + other.degree
        if degree > 3:
            raise FieldError("wedge beyond degree 3 is not supported")
        comps: dict[tuple, Expr] = {}
        for s1, v1 in self.components.items():
            for s2, v2 in other.components.items():
                sign, merged = _merge_ordered(s1, s2)
                if sign == 0:
                    continue
                value = v1 * v2 if sign > 0 else -(v1 * v2)
                comps[merged] = comps.get(merged, Expr.zero()) + value
        return AltForm(self.chart, degree, comps)

    def exterior_derivative(self) -> "AltForm":
        if self.degree > 2:
            raise FieldError("exterior derivative beyond degree 2 is not supported")
        comps: dict[tuple, Expr] = {}
        coords = self.chart.coordinates()
        for key, value in self.components.items():
            for c in coords:
                dv = value.diff(c)
                if dv.is_zero():
                    continue
                sign, merged = _merge_ordered((c,), key)
                if sign == 0:
                    continue
                add = dv if sign > 0 else -dv
                comps[merged] = comps.get(merged, Expr.zero()) + add
        return AltForm(self.chart, self.degree + 1, comps)

    def evaluate(self, *vectors: VectorField) -> Expr:
        if len(vectors) != self.degree:
            raise FieldError(f"degree-{self.degree} form takes {self.degree} vectors")
        if self.degree > 2:
            raise FieldError("evaluation beyond degree 2 is not supported")
        for Z in vectors:
            _same_chart(self, Z)
        out = Expr.zero()
        if self.degree == 0:
            return self.components.get((), Expr.zero())
        if self.degree == 1:
            (X,) = vectors
            for (a,), value in self.components.items():
                xa = X.components.get(a)
                if xa is not None:
                    out = out + value * xa
            return out
        X, Y = vectors
        for (a, b), value in self.components.items():
            xa, xb = X.components.get(a), X.components.get(b)
            ya, yb = Y.components.get(a), Y.components.get(b)
            if xa is not None and yb is not None:
                out = out + value * xa * yb
            if xb is not None and ya is not None:
                out = out - value * xb * ya
        return out

    def scaled(self, factor: ExprLike) -> "AltForm":
        f = Expr.from_value(factor)
        return AltForm(self.chart, self.degree,
                       {k: f * v for k, v in self.components.items()})

    def __add__(self, other: "AltForm") -> "AltForm":
        _same_chart(self, other)
        if self.degree != other.degree:
            raise FieldError("cannot add alternating forms of different degree")
        merged = dict(self.components)
        for key, value in other.components.items():
            merged[key] = merged.get(key, Expr.zero()) + value
        return AltForm(self.chart, self.degree, merged)

    def __neg__(self) -> "AltForm":
        return self.scaled(-1)

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AltForm):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self.components == other.components)

    def __repr__(self) -> str:
        return f"AltForm(degree={self.degree}, {len(self.components)} components)"


def _merge_ordered(s1: Sequence[CoordId], s2: Sequence[CoordId]):
    """Merge two strictly increasing coordinate tuples.

    Returns (sign, merged): the permutation sign taking the concatenation
    s1 + s2 to the sorted merge, or (0, None) when a coordinate repeats.
    """
    sign = 1
    merged: list[CoordId] = []
    i, j = 0, 0
    n1, n2 = len(s1), len(s2)
    while i < n1 and j < n2:
        k1, k2 = s1[i].sort_key(), s2[j].sort_key()
        if k1 == k2:
            return 0, None
        if k1 < k2:
            merged.append(s1[i])
            i += 1
        else:
            # s2[j] moves left past the remaining n1 - i entries of s1
            if (n1 - i) % 2:
                sign = -sign
            merged.append(s2[j])
            j += 1
    merged.extend(s1[i:])
    merged.extend(s2[j:])
    return sign, tuple(merged)


class ConnectionCoeffs:
    """Connection coefficients for the adapted frames.

    ``gamma[(r, i, j)]`` is the coefficient used at frame level ``r``
    (0 <= r <= k-1 on a chart of extension order k; 1 <= i, j <= m).  The
    antiholomorphic coefficients default to the conjugates of the
    holomorphic ones and may be overridden explicitly.
    """

    __slots__ = ("chart", "gamma", "gammabar")

    def __init__(self, chart: ChartSpec,
                 gamma: Mapping[tuple[int, int, int], ExprLike],
                 gammabar: Mapping[tuple[int, int, int], ExprLike] | None = None):
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "gamma", self._clean(chart, gamma, "gamma"))
        if gammabar is None:
            derived = {}
            for key, value in self.gamma.items():
                derived[key] = value.conjugate()
            object.__setattr__(self, "gammabar", derived)
        else:
            object.__setattr__(self, "gammabar",
                               self._clean(chart, gammabar, "gammabar"))

    @staticmethod
    def _clean(chart: ChartSpec, table: Mapping[tuple[int, int, int], ExprLike],
               what: str) -> dict[tuple[int, int, int], Expr]:
        clean: dict[tuple[int, int, int], Expr] = {}
        for key, raw in table.items():
            r, i, j = key
            if not 0 <= r <= chart.k - 1:
                raise FieldError(
                    f"{what} level {r} out of range 0..{chart.k - 1}")
            if not (1 <= i <= chart.m and 1 <= j <= chart.m):
                raise FieldError(f"{what} index ({i},{j}) out of range 1..{chart.m}")
            value = Expr.from_value(raw)
            chart.validate_expr(value, f"{what}[{r},{i},{j}]")
            if not value.is_zero():
                clean[(r, i, j)] = value
        return clean

    def __setattr__(self, name, v):  # pragma: no cover
        raise AttributeError("ConnectionCoeffs is immutable")

    @staticmethod
    def zero(chart: ChartSpec) -> "ConnectionCoeffs":
        return ConnectionCoeffs(chart, {})

    def gamma_at(self, r: int, i: int, j: int) -> Expr:
        return self.gamma.get((r, i, j), Expr.zero())

    def gammabar_at(self, r: int, i: int, j: int) -> Expr:
        return self.gammabar.get((r, i, j), Expr.zero())


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Commutator [X, Y]: components X(Y^a) - Y(X^a)."""
    _same_chart(X, Y)
    comps: dict[CoordId, Expr] = {}
    for a in set(X.components) | set(Y.components):
        value = X.apply(Y.component(a)) - Y.apply(X.component(a))
        if not value.is_zero():
            comps[a] = value
    return VectorField(X.chart, comps)


def _same_chart(a, b) -> None:
    if a.chart != b.chart:
        raise FieldError(f"chart mismatch: {a.chart} vs {b.chart}")


# -- deterministic text rendering (CLI and reports) --------------------------

def format_vector(Z: VectorField) -> list[str]:
    if not Z.components:
        return ["0"]
    return [f"d/d{c.name}: {format_expr(Z.components[c])}"
            for c in _sorted_coords(Z.components)]


def format_oneform(w: OneForm) -> list[str]:
    if not w.components:
        return ["0"]
    return [f"d{c.name}: {format_expr(w.components[c])}"
            for c in _sorted_coords(w.components)]


def format_endo(T: EndoField) -> list[str]:
    if not T.entries:
        return ["0"]
    keys = sorted(T.entries, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
    return [f"d/d{o.name} <- d/d{i.name}: {format_expr(T.entries[(o, i)])}"
            for o, i in keys]


def format_bilinear(B: Bilinear) -> list[str]:
    if not B.entries:
        return ["0"]
    keys = sorted(B.entries, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
    return [f"d{a.name} (x) d{b.name}: {format_expr(B.entries[(a, b)])}"
            for a, b in keys]
