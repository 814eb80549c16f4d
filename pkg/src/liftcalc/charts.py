"""Chart descriptors for higher-order extension spaces.

A chart is described by three numbers: the complex dimension ``m`` of the
underlying manifold, the extension order ``k``, and whether the space carries
an extra real time line (the product case).  The chart's coordinates are

* ``t`` -- only when the time line is present;
* ``z{r}_{i}`` -- holomorphic, level ``0 <= r <= k``, index ``1 <= i <= m``;
* ``zb{r}_{i}`` -- their antiholomorphic partners.

Level 0 coordinates are the base-manifold coordinates; level ``r`` carries the
r-th extension data.  ChartSpec is a frozen value object: operations that
"move" between orders (extend, project) return new specs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symkernel import TIME, CoordId, Expr, Kind


class ChartError(Exception):
    pass


@dataclass(frozen=True)
class ChartSpec:
    """A chart of the k-th order extension of an m-dimensional manifold."""

    m: int
    k: int
    has_time: bool = False

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ChartError(f"need at least one complex dimension, got m={self.m}")
        if self.k < 0:
            raise ChartError(f"extension order must be >= 0, got k={self.k}")

    # -- coordinate enumeration ---------------------------------------------
    def coordinates(self) -> tuple[CoordId, ...]:
        """All coordinates in canonical order: t, then z by level, then zb."""
        coords: list[CoordId] = []
        if self.has_time:
            coords.append(TIME)
        for kind in (Kind.HOLO, Kind.ANTI):
            for level in range(self.k + 1):
                for index in range(1, self.m + 1):
                    coords.append(CoordId(kind, level, index))
        return tuple(coords)

    def holo_coords(self, level: int | None = None) -> tuple[CoordId, ...]:
        levels = range(self.k + 1) if level is None else (self._check_level(level),)
        return tuple(CoordId(Kind.HOLO, r, i)
                     for r in levels for i in range(1, self.m + 1))

    def anti_coords(self, level: int | None = None) -> tuple[CoordId, ...]:
        levels = range(self.k + 1) if level is None else (self._check_level(level),)
        return tuple(CoordId(Kind.ANTI, r, i)
                     for r in levels for i in range(1, self.m + 1))

    def _check_level(self, level: int) -> int:
        if not 0 <= level <= self.k:
            raise ChartError(f"level {level} out of range 0..{self.k}")
        return level

    @property
    def time_coord(self) -> CoordId:
        if not self.has_time:
            raise ChartError("chart has no time coordinate")
        return TIME

    def dimension(self) -> int:
        return (1 if self.has_time else 0) + 2 * self.m * (self.k + 1)

    # -- membership ----------------------------------------------------------
    def contains(self, coord: CoordId) -> bool:
        if coord.kind == Kind.TIME:
            return self.has_time
        return 0 <= coord.level <= self.k and 1 <= coord.index <= self.m

    def in_chart(self, e: Expr) -> bool:
        return all(self.contains(c) for c in e.coords())

    def validate_expr(self, e: Expr, context: str = "expression") -> Expr:
        bad = sorted((c for c in e.coords() if not self.contains(c)),
                     key=lambda c: c.sort_key())
        if bad:
            names = ", ".join(c.name for c in bad)
            raise ChartError(f"{context} uses coordinates outside the chart: {names}")
        return e

    # -- moving between orders ------------------------------------------------
    def extend(self, steps: int = 1) -> "ChartSpec":
        if steps < 0:
            raise ChartError("extend takes a non-negative step count")
        return ChartSpec(self.m, self.k + steps, self.has_time)

    def project(self) -> "ChartSpec":
        if self.k == 0:
            raise ChartError("cannot project below extension order 0")
        return ChartSpec(self.m, self.k - 1, self.has_time)

    def base(self) -> "ChartSpec":
        return ChartSpec(self.m, 0, self.has_time)

    def dot(self, coord: CoordId) -> CoordId:
        """Shift a z/zb coordinate one level up (the formal velocity map)."""
        if coord.kind == Kind.TIME:
            raise ChartError("the time coordinate has no level shift")
        if not self.contains(coord):
            raise ChartError(f"{coord.name} is not in the chart")
        if coord.level >= self.k:
            raise ChartError(
                f"cannot shift {coord.name} beyond the top level {self.k}")
        return CoordId(coord.kind, coord.level + 1, coord.index)
