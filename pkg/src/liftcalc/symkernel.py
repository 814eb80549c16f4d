"""Exact symbolic kernel: Gaussian-rational polynomials in canonical normal form.

Everything downstream (charts, fields, lifts, verification) reduces to algebra in
this module. The objects are multivariate polynomials whose coefficients are
Gaussian rationals (complex numbers with exact rational real and imaginary
parts) and whose variables ("atoms") are either coordinates of an extension
chart -- the time coordinate ``t``, holomorphic coordinates ``z{r}_{i}``,
antiholomorphic coordinates ``zb{r}_{i}`` -- or solver-internal unknowns.

Polynomials are kept in a canonical normal form (a map from monomials to
nonzero coefficients, with a fixed total order on atoms and on monomials), so
equality of expressions is literal equality of term maps and every identity
check in the package is exact and decidable. No floating point is used
anywhere.

The module also provides the two exact linear solvers used by the lift
machinery:

* :func:`solve_linear` -- unknowns stand for scalar constants; each equation is
  split by coordinate monomial into scalar equations which are eliminated over
  the Gaussian rationals.
* :func:`solve_poly_linear` -- unknowns stand for whole polynomial values;
  fraction-free elimination over the polynomial ring with exact-division
  back-substitution. This is the engine behind the determined-lift solver,
  where each unknown is an entire component function of the lifted field.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union


class SymKernelError(Exception):
    """Base class for kernel errors."""


class ParseError(SymKernelError):
    """Lexical or syntactic error in expression text, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConjugationError(SymKernelError):
    """Conjugation applied to an expression containing solver unknowns."""


class LinearSolveError(SymKernelError):
    """Base class for linear-system failures."""


class NonlinearSystemError(LinearSolveError):
    """An equation is not linear in the designated unknowns."""


class InconsistentSystemError(LinearSolveError):
    """The system has no solution; carries a witness equation."""

    def __init__(self, message: str, equation_index: int | None = None,
                 witness: str | None = None):
        detail = message
        if equation_index is not None:
            detail += f" [equation {equation_index}]"
        if witness:
            detail += f": {witness}"
        super().__init__(detail)
        self.equation_index = equation_index
        self.witness = witness


class UnderdeterminedError(LinearSolveError):
    """The system does not determine all unknowns; lists the free ones."""

    def __init__(self, free: Sequence["UnknownId"]):
        self.free = tuple(free)
        names = ", ".join(u.name for u in self.free)
        super().__init__(f"underdetermined system; free unknowns: {names}")


class ExactDivisionError(SymKernelError):
    """Polynomial division with a nonzero remainder was requested."""


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------

class Kind(IntEnum):
    """Coordinate kind; the order TIME < HOLO < ANTI is the canonical one."""

    TIME = 0
    HOLO = 1
    ANTI = 2


@dataclass(frozen=True)
class CoordId:
    """A chart coordinate: ``t``, ``z{level}_{index}`` or ``zb{level}_{index}``.

    The time coordinate carries no level/index (both are fixed at 0).
    Holomorphic/antiholomorphic coordinates have level >= 0 and index >= 1.
    """

    kind: Kind
    level: int = 0
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind == Kind.TIME:
            if self.level != 0 or self.index != 0:
                raise ValueError("time coordinate carries no level/index")
        else:
            if self.level < 0:
                raise ValueError(f"negative level {self.level}")
            if self.index < 1:
                raise ValueError(f"coordinate index must be >= 1, got {self.index}")

    def sort_key(self) -> tuple:
        return (0, int(self.kind), self.level, self.index, "")

    @property
    def name(self) -> str:
        if self.kind == Kind.TIME:
            return "t"
        prefix = "z" if self.kind == Kind.HOLO else "zb"
        return f"{prefix}{self.level}_{self.index}"

    def conjugate(self) -> "CoordId":
        if self.kind == Kind.TIME:
            return self
        swapped = Kind.ANTI if self.kind == Kind.HOLO else Kind.HOLO
        return CoordId(swapped, self.level, self.index)

    def __repr__(self) -> str:
        return f"CoordId({self.name})"


@dataclass(frozen=True)
class UnknownId:
    """A solver unknown; a namespace disjoint from chart coordinates."""

    name: str

    def sort_key(self) -> tuple:
        return (1, 0, 0, 0, self.name)

    def __repr__(self) -> str:
        return f"UnknownId({self.name})"


Atom = Union[CoordId, UnknownId]

TIME = CoordId(Kind.TIME)


def holo(level: int, index: int) -> CoordId:
    return CoordId(Kind.HOLO, level, index)


def anti(level: int, index: int) -> CoordId:
    return CoordId(Kind.ANTI, level, index)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

_RatLike = Union[int, Fraction]


class GRat:
    """An exact Gaussian rational ``re + im*i`` with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: _RatLike = 0, im: _RatLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("GRat is immutable")

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_value(value: "GRatLike") -> "GRat":
        if isinstance(value, GRat):
            return value
        if isinstance(value, (int, Fraction)):
            return GRat(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "GRatLike") -> "GRat":
        o = GRat.from_value(other)
        return GRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GRat":
        return GRat(-self.re, -self.im)

    def __sub__(self, other: "GRatLike") -> "GRat":
        return self + (-GRat.from_value(other))

    def __rsub__(self, other: "GRatLike") -> "GRat":
        return GRat.from_value(other) + (-self)

    def __mul__(self, other: "GRatLike") -> "GRat":
        o = GRat.from_value(other)
        return GRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GRat":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GRat(self.re / norm, -self.im / norm)

    def __truediv__(self, other: "GRatLike") -> "GRat":
        return self * GRat.from_value(other).inverse()

    def __rtruediv__(self, other: "GRatLike") -> "GRat":
        return GRat.from_value(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GRat":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("GRat powers take non-negative integer exponents")
        result = GRat(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GRat(other)
        if not isinstance(other, GRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if not self.im and self.re.denominator == 1:
            return hash(int(self.re))
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GRat({self.re}, {self.im})"


GRatLike = Union[GRat, int, Fraction]

GR_ZERO = GRat(0)
GR_ONE = GRat(1)
GR_I = GRat(0, 1)


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------

# A monomial is a tuple of (atom, exponent) pairs, sorted by atom sort key,
# with all exponents positive.  The empty tuple is the monomial 1.
Monomial = tuple

MONO_ONE: Monomial = ()


def mono_from_pairs(pairs: Iterable[tuple[Atom, int]]) -> Monomial:
    merged: dict[Atom, int] = {}
    for atom, exp in pairs:
        if exp < 0:
            raise ValueError("negative exponent in monomial")
        if exp:
            merged[atom] = merged.get(atom, 0) + exp
    return tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key()))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for atom, exp in b:
        merged[atom] = merged.get(atom, 0) + exp
    return tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Divide monomial a by b, or return None when b does not divide a."""
    if not b:
        return a
    result = dict(a)
    for atom, exp in b:
        have = result.get(atom, 0)
        if have < exp:
            return None
        if have == exp:
            del result[atom]
        else:
            result[atom] = have - exp
    return tuple(sorted(result.items(), key=lambda kv: kv[0].sort_key()))


def mono_degree(m: Monomial) -> int:
    return sum(exp for _, exp in m)


def _mono_order_key(m: Monomial) -> tuple:
    """Sort key realizing the canonical term order (used for display too).

    Graded lexicographic, largest first: higher total degree sorts earlier;
    within a degree, the monomial with the larger exponent on the earliest
    atom (canonical atom order) sorts earlier.  The key expands the monomial
    into its atom sequence so that plain tuple comparison implements the
    lexicographic part.
    """
    expanded = []
    for atom, exp in m:
        expanded.extend([atom.sort_key()] * exp)
    return (-mono_degree(m), tuple(expanded))


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

ExprLike = Union["Expr", GRat, int, Fraction]


class Expr:
    """A polynomial over the Gaussian rationals in canonical normal form.

    Immutable.  Equality is term-map equality, which by canonicity of the
    normal form decides mathematical equality of polynomials.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, GRat]):
        clean = {m: c for m, c in terms.items() if c}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Expr is immutable")

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero() -> "Expr":
        return _EXPR_ZERO

    @staticmethod
    def one() -> "Expr":
        return _EXPR_ONE

    @staticmethod
    def constant(value: GRatLike) -> "Expr":
        c = GRat.from_value(value)
        if not c:
            return _EXPR_ZERO
        return Expr({MONO_ONE: c})

    @staticmethod
    def imag_unit() -> "Expr":
        return Expr({MONO_ONE: GR_I})

    @staticmethod
    def atom(a: Atom, exponent: int = 1) -> "Expr":
        if exponent < 0:
            raise ValueError("negative exponent")
        if exponent == 0:
            return _EXPR_ONE
        return Expr({((a, exponent),): GR_ONE})

    @staticmethod
    def from_value(value: ExprLike) -> "Expr":
        if isinstance(value, Expr):
            return value
        return Expr.constant(value)

    # -- inspection ----------------------------------------------------------
    def terms(self) -> Iterator[tuple[Monomial, GRat]]:
        """Iterate terms in the canonical (display) order."""
        for m in sorted(self._terms, key=_mono_order_key):
            yield m, self._terms[m]

    def term_map(self) -> Mapping[Monomial, GRat]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and MONO_ONE in self._terms)

    def constant_value(self) -> GRat:
        if self.is_zero():
            return GR_ZERO
        if not self.is_constant():
            raise ValueError(f"not a constant expression: {format_expr(self)}")
        return self._terms[MONO_ONE]

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(mono_degree(m) for m in self._terms)

    def atoms(self) -> set:
        out: set = set()
        for m in self._terms:
            for atom, _ in m:
                out.add(atom)
        return out

    def coords(self) -> set:
        return {a for a in self.atoms() if isinstance(a, CoordId)}

    def unknowns(self) -> set:
        return {a for a in self.atoms() if isinstance(a, UnknownId)}

    def leading_term(self) -> tuple[Monomial, GRat]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = min(self._terms, key=_mono_order_key)
        return m, self._terms[m]

    def coefficient(self, m: Monomial) -> GRat:
        return self._terms.get(m, GR_ZERO)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: ExprLike) -> "Expr":
        o = Expr.from_value(other)
        if not self._terms:
            return o
        if not o._terms:
            return self
        merged = dict(self._terms)
        for m, c in o._terms.items():
            s = merged.get(m, GR_ZERO) + c
            if s:
                merged[m] = s
            else:
                merged.pop(m, None)
        return Expr(merged)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: ExprLike) -> "Expr":
        return self + (-Expr.from_value(other))

    def __rsub__(self, other: ExprLike) -> "Expr":
        return Expr.from_value(other) + (-self)

    def __mul__(self, other: ExprLike) -> "Expr":
        o = Expr.from_value(other)
        if not self._terms or not o._terms:
            return _EXPR_ZERO
        acc: dict[Monomial, GRat] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = mono_mul(m1, m2)
                s = acc.get(m, GR_ZERO) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return Expr(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Expr":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Expr powers take non-negative integer exponents")
        result = _EXPR_ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c: GRatLike) -> "Expr":
        cv = GRat.from_value(c)
        if not cv:
            return _EXPR_ZERO
        return Expr({m: coef * cv for m, coef in self._terms.items()})

    # -- calculus ------------------------------------------------------------
    def diff(self, coord: CoordId) -> "Expr":
        """Formal partial derivative with respect to a coordinate."""
        if not isinstance(coord, CoordId):
            raise TypeError("diff differentiates with respect to a CoordId")
        acc: dict[Monomial, GRat] = {}
        for m, c in self._terms.items():
            for pos, (atom, exp) in enumerate(m):
                if atom == coord:
                    if exp == 1:
                        reduced = m[:pos] + m[pos + 1:]
                    else:
                        reduced = m[:pos] + ((atom, exp - 1),) + m[pos + 1:]
                    s = acc.get(reduced, GR_ZERO) + c * exp
                    if s:
                        acc[reduced] = s
                    else:
                        acc.pop(reduced, None)
                    break
        return Expr(acc)

    def conjugate(self) -> "Expr":
        """Complex conjugation: swap z <-> zb atoms, conjugate coefficients."""
        acc: dict[Monomial, GRat] = {}
        for m, c in self._terms.items():
            pairs = []
            for atom, exp in m:
                if isinstance(atom, UnknownId):
                    raise ConjugationError(
                        f"cannot conjugate expression containing unknown {atom.name}")
                pairs.append((atom.conjugate(), exp))
            acc[mono_from_pairs(pairs)] = c.conjugate()
        return Expr(acc)

    def substitute(self, mapping: Mapping[CoordId, "Expr"]) -> "Expr":
        """Simultaneous substitution of coordinates by expressions."""
        for key in mapping:
            if not isinstance(key, CoordId):
                raise TypeError("substitute keys must be CoordId")
        return self._subst(mapping)

    def substitute_unknowns(self, mapping: Mapping[UnknownId, "Expr"]) -> "Expr":
        for key in mapping:
            if not isinstance(key, UnknownId):
                raise TypeError("substitute_unknowns keys must be UnknownId")
        return self._subst(mapping)

    def _subst(self, mapping: Mapping[Atom, "Expr"]) -> "Expr":
        if not mapping:
            return self
        relevant = set(mapping)
        result = _EXPR_ZERO
        for m, c in self._terms.items():
            if not any(atom in relevant for atom, _ in m):
                result = result + Expr({m: c})
                continue
            piece = Expr.constant(c)
            for atom, exp in m:
                if atom in relevant:
                    piece = piece * (Expr.from_value(mapping[atom]) ** exp)
                else:
                    piece = piece * Expr.atom(atom, exp)
            result = result + piece
        return result

    def linear_split(self, unknowns: Iterable[UnknownId]
                     ) -> tuple[dict[UnknownId, "Expr"], "Expr"]:
        """Split into (coefficient-of-unknown map, remainder).

        Requires the expression to be linear (degree <= 1) in the given
        unknowns jointly; raises NonlinearSystemError otherwise.
        """
        uset = set(unknowns)
        coeffs: dict[UnknownId, dict[Monomial, GRat]] = {}
        rest: dict[Monomial, GRat] = {}
        for m, c in self._terms.items():
            present = [(atom, exp) for atom, exp in m if atom in uset]
            if not present:
                rest[m] = c
                continue
            if len(present) > 1 or present[0][1] > 1:
                raise NonlinearSystemError(
                    f"term {format_expr(Expr({m: c}))} is not linear in the unknowns")
            u = present[0][0]
            reduced = tuple(pair for pair in m if pair[0] != u)
            bucket = coeffs.setdefault(u, {})
            bucket[reduced] = bucket.get(reduced, GR_ZERO) + c
        return ({u: Expr(t) for u, t in coeffs.items()}, Expr(rest))

    # -- identity ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GRat)):
            other = Expr.constant(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Expr({format_expr(self)})"


_EXPR_ZERO = Expr({})
_EXPR_ONE = Expr({MONO_ONE: GR_ONE})


def binomial(r: int, j: int) -> int:
    """Binomial coefficient C(r, j) with strict range checking."""
    if r < 0 or j < 0:
        raise ValueError(f"binomial arguments must be non-negative, got ({r}, {j})")
    if j > r:
        raise ValueError(f"binomial out of range: j={j} > r={r}")
    return math.comb(r, j)


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_coeff_magnitude(c: GRat) -> tuple[str, bool]:
    """Render a nonzero coefficient magnitude.

    Returns (text, needs_star): needs_star is False when the coefficient is
    1 (so the monomial prints bare).  The caller has already made the
    leading sign non-negative (re > 0, or re == 0 and im > 0).
    """
    if c.is_real():
        if c.re == 1:
            return "", False
        return _format_fraction(c.re), True
    if not c.re:
        if c.im == 1:
            return "i", True
        return f"{_format_fraction(c.im)}*i", True
    # Mixed: parenthesized so the output re-parses as a single factor.
    im = c.im
    joiner = " + " if im > 0 else " - "
    im_abs = im if im > 0 else -im
    im_text = "i" if im_abs == 1 else f"{_format_fraction(im_abs)}*i"
    return f"({_format_fraction(c.re)}{joiner}{im_text})", True


def _format_monomial(m: Monomial) -> str:
    parts = []
    for atom, exp in m:
        name = atom.name
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def format_expr(e: Expr) -> str:
    """Canonical text form; deterministic, and re-parses to an equal Expr."""
    if e.is_zero():
        return "0"
    pieces: list[str] = []
    for n, (m, c) in enumerate(e.terms()):
        negative = c.re < 0 or (not c.re and c.im < 0)
        mag = -c if negative else c
        coeff_text, needs_star = _format_coeff_magnitude(mag)
        if not m:
            body = coeff_text if coeff_text else "1"
        elif coeff_text:
            body = f"{coeff_text}*{_format_monomial(m)}"
        else:
            body = _format_monomial(m)
        if n == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_COORD_RE = re.compile(r"(zb?)(\d+)_(\d+)")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, object, int]] = []
        self._scan()
        self.cursor = 0

    def _scan(self) -> None:
        text = self.text
        n = len(text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*^/()":
                self.tokens.append(("op", ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("nat", int(text[i:j]), i))
                i = j
                continue
            m = _COORD_RE.match(text, i)
            if m:
                kind = Kind.HOLO if m.group(1) == "z" else Kind.ANTI
                coord = CoordId(kind, int(m.group(2)), int(m.group(3)))
                self.tokens.append(("coord", coord, i))
                i = m.end()
                continue
            if ch in ("t", "i"):
                nxt = text[i + 1] if i + 1 < n else ""
                if not (nxt.isalnum() or nxt == "_"):
                    if ch == "t":
                        self.tokens.append(("coord", TIME, i))
                    else:
                        self.tokens.append(("imag", None, i))
                    i += 1
                    continue
            raise ParseError(f"unexpected character {text[i:i + 4]!r}", i)
        self.tokens.append(("end", None, n))

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.cursor]

    def advance(self) -> tuple[str, object, int]:
        tok = self.tokens[self.cursor]
        self.cursor += 1
        return tok


class _Parser:
    """Recursive-descent parser for the expression grammar.

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ["^" nat]
    base   := coord | "i" | number | "(" expr ")"
    number := nat ["/" nat]
    """

    def __init__(self, text: str, chart=None):
        self.scanner = _Scanner(text)
        self.chart = chart

    def parse(self) -> Expr:
        value = self._expr()
        kind, _, pos = self.scanner.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return value

    def _expr(self) -> Expr:
        kind, val, _ = self.scanner.peek()
        negate = False
        if kind == "op" and val == "-":
            self.scanner.advance()
            negate = True
        value = self._term()
        if negate:
            value = -value
        while True:
            kind, val, _ = self.scanner.peek()
            if kind == "op" and val in "+-":
                self.scanner.advance()
                rhs = self._term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def _term(self) -> Expr:
        value = self._factor()
        while True:
            kind, val, _ = self.scanner.peek()
            if kind == "op" and val == "*":
                self.scanner.advance()
                value = value * self._factor()
            else:
                return value

    def _factor(self) -> Expr:
        base = self._base()
        kind, val, pos = self.scanner.peek()
        if kind == "op" and val == "^":
            self.scanner.advance()
            kind, val, pos = self.scanner.peek()
            if kind == "op" and val == "-":
                raise ParseError("negative exponent", pos)
            if kind != "nat":
                raise ParseError("expected a natural-number exponent", pos)
            self.scanner.advance()
            return base ** val
        return base

    def _base(self) -> Expr:
        kind, val, pos = self.scanner.advance()
        if kind == "coord":
            if self.chart is not None and not self.chart.contains(val):
                raise ParseError(
                    f"coordinate {val.name} is not in the chart", pos)
            return Expr.atom(val)
        if kind == "imag":
            return Expr.imag_unit()
        if kind == "nat":
            nxt_kind, nxt_val, _ = self.scanner.peek()
            if nxt_kind == "op" and nxt_val == "/":
                self.scanner.advance()
                dkind, dval, dpos = self.scanner.advance()
                if dkind != "nat":
                    raise ParseError("expected a denominator", dpos)
                if dval == 0:
                    raise ParseError("zero denominator", dpos)
                return Expr.constant(Fraction(val, dval))
            return Expr.constant(val)
        if kind == "op" and val == "(":
            inner = self._expr()
            ckind, cval, cpos = self.scanner.advance()
            if not (ckind == "op" and cval == ")"):
                raise ParseError("expected ')'", cpos)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, chart=None) -> Expr:
    """Parse expression text; optionally validate coordinates against a chart."""
    return _Parser(text, chart).parse()


# ---------------------------------------------------------------------------
# Exact polynomial division
# ---------------------------------------------------------------------------

def divide_exact(f: Expr, g: Expr) -> Expr:
    """Return q with f == q*g, or raise ExactDivisionError.

    Standard single-divisor reduction under the canonical term order; when g
    divides f exactly the leading term of every intermediate remainder is
    divisible by the leading term of g, so the loop either completes with
    remainder zero or detects non-divisibility.
    """
    if g.is_zero():
        raise ExactDivisionError("division by the zero polynomial")
    if f.is_zero():
        return Expr.zero()
    g_mono, g_coeff = g.leading_term()
    quotient = Expr.zero()
    rest = f
    while not rest.is_zero():
        r_mono, r_coeff = rest.leading_term()
        q_mono = mono_div(r_mono, g_mono)
        if q_mono is None:
            raise ExactDivisionError(
                f"{format_expr(g)} does not divide {format_expr(f)}")
        t = Expr({q_mono: r_coeff / g_coeff})
        quotient = quotient + t
        rest = rest - t * g
    return quotient


# ---------------------------------------------------------------------------
# Linear solving, scalar semantics
# ---------------------------------------------------------------------------

def solve_linear(equations: Sequence[Expr], unknowns: Sequence[UnknownId]
                 ) -> dict[UnknownId, Expr]:
    """Solve a linear system whose unknowns are scalar constants.

    Each equation (an Expr understood as "== 0") is split by coordinate
    monomial: the coefficient of every coordinate monomial must vanish, which
    yields scalar equations over the Gaussian rationals.  Exact Gaussian
    elimination follows.    Returns the unique assignment as constant Exprs.

    Raises NonlinearSystemError, InconsistentSystemError (with the violated
    monomial equation as witness) or UnderdeterminedError (listing free
    unknowns).
    """
    unknown_list = list(unknowns)
    uset = set(unknown_list)
    if len(uset) != len(unknown_list):
        raise ValueError("duplicate unknowns")

    # Scalar rows: (coeff map, constant, provenance)
    rows: list[tuple[dict[UnknownId, GRat], GRat, tuple[int, Monomial]]] = []
    for eq_idx, eq in enumerate(equations):
        stray = eq.unknowns() - uset
        if stray:
            names = ", ".join(sorted(u.name for u in stray))
            raise LinearSolveError(f"equation {eq_idx} contains unlisted unknowns: {names}")
        coeff_polys, rest = eq.linear_split(unknown_list)
        monos: set[Monomial] = set(rest.term_map())
        for poly in coeff_polys.values():
            monos.update(poly.term_map())
        for mono in sorted(monos, key=_mono_order_key):
            row = {u: poly.coefficient(mono)
                   for u, poly in coeff_polys.items() if poly.coefficient(mono)}
            const = rest.coefficient(mono)
            if row or const:
                rows.append((row, const, (eq_idx, mono)))

    solution: dict[UnknownId, GRat] = {}
    pivot_rows: list[tuple[UnknownId, dict[UnknownId, GRat], GRat]] = []
    remaining = rows
    for u in unknown_list:
        chosen = None
        for idx, (row, _, _) in enumerate(remaining):
            if row.get(u):
                chosen = idx
                break
        if chosen is None:
            continue
        prow, pconst, _ = remaining.pop(chosen)
        pc = prow[u]
        prow = {v: c / pc for v, c in prow.items()}
        pconst = pconst / pc
        reduced = []
        for row, const, prov in remaining:
            c = row.get(u)
            if c:
                row = {v: cv - c * prow.get(v, GR_ZERO)
                       for v, cv in row.items() if v != u}
                for v, pv in prow.items():
                    if v != u and v not in row:
                        nv = -c * pv
                        if nv:
                            row[v] = nv
                row = {v: cv for v, cv in row.items() if cv}
                const = const - c * pconst
            if row or const:
                reduced.append((row, const, prov))
        remaining = reduced
        pivot_rows.append((u, prow, pconst))

    for row, const, (eq_idx, mono) in remaining:
        if not row and const:
            mono_text = _format_monomial(mono) if mono else "1"
            raise InconsistentSystemError(
                "no solution", eq_idx,
                f"coefficient of {mono_text} reduces to {format_expr(Expr.constant(const))} == 0")

    pivoted = {u for u, _, _ in pivot_rows}
    free = [u for u in unknown_list if u not in pivoted]
    if free:
        raise UnderdeterminedError(free)

    for u, prow, pconst in reversed(pivot_rows):
        value = -pconst
        for v, c in prow.items():
            if v != u:
                value = value - c * solution[v]
        solution[u] = value
    return {u: Expr.constant(v) for u, v in solution.items()}


# ---------------------------------------------------------------------------
# Linear solving, polynomial semantics
# ---------------------------------------------------------------------------

def solve_poly_linear(equations: Sequence[Expr], unknowns: Sequence[UnknownId]
                      ) -> dict[UnknownId, Expr]:
    """Solve a linear system whose unknowns stand for whole polynomials.

    Each equation is linear in the unknowns with polynomial coefficients.
    Fraction-free forward elimination (cross-multiplication, no division)
    keeps the rows polynomial; back-substitution divides exactly, so a unique
    polynomial solution is recovered whenever one exists.  Pivots prefer
    constant coefficients, then lowest degree, for determinism and to limit
    growth.
    """
    unknown_list = list(unknowns)

    rows: list[tuple[dict[UnknownId, Expr], Expr, int]] = []
    for eq_idx, eq in enumerate(equations):
        coeffs, rest = eq.linear_split(unknown_list)
        if coeffs or not rest.is_zero():
            rows.append((coeffs, rest, eq_idx))

    pivots: list[tuple[UnknownId, dict[UnknownId, Expr], Expr, int]] = []
    remaining = rows
    for u in unknown_list:
        best = None
        best_rank = None
        for idx, (coeffs, _, _) in enumerate(remaining):
            c = coeffs.get(u)
            if c is None or c.is_zero():
                continue
            rank = (0, 0) if c.is_constant() else (1, c.degree())
            if best_rank is None or rank < best_rank:
                best = idx
                best_rank = rank
                if rank == (0, 0):
                    break
        if best is None:
            continue
        prow_coeffs, prow_rest, prov = remaining.pop(best)
        pc = prow_coeffs[u]
        if pc.is_constant():
            inv = pc.constant_value().inverse()
            prow_coeffs = {v: c.scale(inv) for v, c in prow_coeffs.items()}
            prow_rest = prow_rest.scale(inv)
            pc = _EXPR_ONE
        reduced = []
        for coeffs, rest, rprov in remaining:
            c = coeffs.get(u)
            if c is not None and not c.is_zero():
                # row' = pc*row - c*pivot  (eliminates u without division)
                new_coeffs: dict[UnknownId, Expr] = {}
                for v in set(coeffs) | set(prow_coeffs):
                    if v == u:
                        continue
                    val = pc * coeffs.get(v, _EXPR_ZERO) - c * prow_coeffs.get(v, _EXPR_ZERO)
                    if not val.is_zero():
                        new_coeffs[v] = val
                rest = pc * rest - c * prow_rest
                coeffs = new_coeffs
            if coeffs or not rest.is_zero():
                reduced.append((coeffs, rest, rprov))
        remaining = reduced
        pivots.append((u, prow_coeffs, prow_rest, prov))

    for coeffs, rest, prov in remaining:
        if not coeffs and not rest.is_zero():
            raise InconsistentSystemError(
                "no solution", prov, f"residual {format_expr(rest)} == 0")

    pivoted = {u for u, _, _, _ in pivots}
    free = [u for u in unknown_list if u not in pivoted]
    if free:
        raise UnderdeterminedError(free)

    solution: dict[UnknownId, Expr] = {}
    for u, coeffs, rest, prov in reversed(pivots):
        numer = -rest
        for v, c in coeffs.items():
            if v != u:
                numer = numer - c * solution[v]
        pc = coeffs[u]
        if pc == _EXPR_ONE:
            solution[u] = numer
        else:
            try:
                solution[u] = divide_exact(numer, pc)
            except ExactDivisionError as exc:
                raise InconsistentSystemError(
                    f"no polynomial solution for {u.name}", prov, str(exc)) from exc
    return solution
