"""Kernel-level tests: Gaussian-rational arithmetic, the polynomial ring,
parsing/printing, differentiation, conjugation, and the exact linear solver.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liftcalc.symkernel import (
    TIME,
    ConjugationError,
    CoordId,
    ExactDivisionError,
    Expr,
    GRat,
    InconsistentSystemError,
    Kind,
    NonlinearSystemError,
    ParseError,
    UnderdeterminedError,
    UnknownId,
    anti,
    binomial,
    divide_exact,
    format_expr,
    holo,
    parse,
    solve_linear,
    solve_poly_linear,
)

Z01 = holo(0, 1)
Z02 = holo(0, 2)
ZB01 = anti(0, 1)
Z11 = holo(1, 1)


# -- GRat ---------------------------------------------------------------------

def test_grat_exact_arithmetic():
    a = GRat(Fraction(1, 3), Fraction(1, 2))
    b = GRat(Fraction(2, 3), Fraction(-1, 2))
    assert a + b == GRat(1, 0)
    assert a - a == GRat(0, 0)
    assert (a * b).re == Fraction(1, 3) * Fraction(2, 3) + Fraction(1, 4)


def test_grat_imag_unit_squares_to_minus_one():
    i = GRat(0, 1)
    assert i * i == GRat(-1, 0)
    assert i ** 4 == GRat(1, 0)


def test_grat_division_is_exact():
    a = GRat(Fraction(3, 7), Fraction(-2, 5))
    assert (a / a) == GRat(1, 0)
    assert a * a.inverse() == GRat(1, 0)
    with pytest.raises(ZeroDivisionError):
        GRat(1, 0).__truediv__(GRat(0, 0))


def test_grat_conjugate():
    a = GRat(Fraction(1, 2), Fraction(3, 4))
    assert a.conjugate() == GRat(Fraction(1, 2), Fraction(-3, 4))
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()


# -- coordinates --------------------------------------------------------------

def test_coord_names():
    assert Z01.name == "z0_1"
    assert ZB01.name == "zb0_1"
    assert holo(3, 2).name == "z3_2"
    assert TIME.name == "t"


def test_coord_sort_order_time_holo_anti():
    coords = [anti(0, 1), holo(1, 1), TIME, holo(0, 2), holo(0, 1)]
    ordered = sorted(coords, key=lambda c: c.sort_key())
    assert ordered == [TIME, holo(0, 1), holo(0, 2), holo(1, 1), anti(0, 1)]


def test_coord_conjugate_swaps_kind():
    assert Z01.conjugate() == ZB01
    assert ZB01.conjugate() == Z01
    # the real coordinate is its own conjugate
    assert TIME.conjugate() == TIME


def test_coord_validation():
    with pytest.raises(ValueError):
        CoordId(Kind.HOLO, -1, 1)
    with pytest.raises(ValueError):
        CoordId(Kind.HOLO, 0, 0)
    with pytest.raises(ValueError):
        CoordId(Kind.TIME, 1, 1)


# -- Expr ring ---------------------------------------------------------------

def test_expr_basic_identities():
    x = Expr.atom(Z01)
    assert (x - x).is_zero()
    assert (x * Expr.zero()).is_zero()
    assert x * Expr.one() == x
    assert x + 0 == x


def test_expr_imag_unit():
    i = Expr.imag_unit()
    assert i * i == Expr.from_value(-1)
    assert format_expr(i) == "i"


def test_expr_powers():
    x = Expr.atom(Z01)
    assert x ** 0 == Expr.one()
    assert x ** 3 == x * x * x
    assert Expr.atom(Z01, 3) == x ** 3
    with pytest.raises(ValueError):
        x ** -1


def test_expr_diff():
    x = Expr.atom(Z01)
    y = Expr.atom(Z02)
    f = x ** 2 * y + 3 * x
    assert f.diff(Z01) == 2 * x * y + 3
    assert f.diff(Z02) == x ** 2
    assert f.diff(Z11).is_zero()


def test_expr_mixed_partials_commute():
    f = parse("z0_1^3*zb0_1^2 + i*z0_1*z0_2")
    assert f.diff(Z01).diff(ZB01) == f.diff(ZB01).diff(Z01)


def test_expr_conjugate_swaps_coordinates():
    f = parse("i*z0_1 + 2*zb0_1^2")
    g = f.conjugate()
    assert g == parse("-i*zb0_1 + 2*z0_1^2")
    assert g.conjugate() == f


def test_expr_conjugate_fixes_time():
    assert parse("t*z0_1").conjugate() == parse("t*zb0_1")


def test_expr_conjugate_rejects_unknowns():
    u = UnknownId("u")
    with pytest.raises(ConjugationError):
        (Expr.atom(u) + 1).conjugate()


def test_expr_substitute():
    f = parse("z0_1^2 + z0_2")
    g = f.substitute({Z01: Expr.atom(Z11)})
    assert g == parse("z1_1^2 + z0_2")


# -- parse / format ----------------------------------------------------------

def test_parse_canonical_reordering():
    # printing follows the fixed coordinate order, not input order
    assert format_expr(parse("zb0_1 + z0_1")) == "z0_1 + zb0_1"


@pytest.mark.parametrize("text", [
    "0",
    "1",
    "i",
    "z0_1",
    "t",
    "2*z0_1",
    "z0_1 + zb0_1",
    "z0_1^2",
    "1/2*z1_1",
    "(1 + i)*z0_1",
    "-z0_1 - 1",
    "t^2*z0_1 - i",
    "3/7 + 2/7*i",
    "z0_1*z0_2*zb0_2",
])
def test_parse_format_round_trip(text):
    e = parse(text)
    assert parse(format_expr(e)) == e


def test_format_deterministic_term_order():
    e = parse("z1_1 + z0_1 + t + zb0_1")
    assert format_expr(e) == "t + z0_1 + z1_1 + zb0_1"


def test_parse_arithmetic():
    assert parse("(z0_1 + 1)^2") == parse("z0_1^2 + 2*z0_1 + 1")
    assert parse("(1+i)*(1-i)") == Expr.from_value(2)
    assert parse("z0_1 - z0_1").is_zero()


@pytest.mark.parametrize("bad,pos", [
    ("z0_1 +", 6),
    ("(z0_1", 5),
    ("z0_1 + )", 7),
    ("^2", 0),
])
def test_parse_error_positions(bad, pos):
    with pytest.raises(ParseError) as err:
        parse(bad)
    assert err.value.position == pos


def test_parse_rejects_unknown_token():
    with pytest.raises(ParseError):
        parse("q + 1")


# -- hypothesis: ring axioms --------------------------------------------------

_COORDS = [TIME, holo(0, 1), holo(0, 2), anti(0, 1), holo(1, 1)]

_coeffs = st.builds(
    GRat,
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
)

_monomials = st.lists(
    st.tuples(st.sampled_from(_COORDS), st.integers(min_value=1, max_value=3)),
    max_size=2,
).map(lambda ps: Expr.from_value(1) if not ps else _mono_expr(ps))


def _mono_expr(ps):
    e = Expr.one()
    for coord, n in ps:
        e = e * Expr.atom(coord, n)
    return e


_exprs = st.lists(st.tuples(_coeffs, _monomials), max_size=3).map(
    lambda ts: sum((m.scale(c) for c, m in ts), Expr.zero()))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_exprs, _exprs, _exprs)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_exprs, _exprs)
def test_diff_is_leibniz(a, b):
    for coord in (Z01, TIME):
        lhs = (a * b).diff(coord)
        assert lhs == a.diff(coord) * b + a * b.diff(coord)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_exprs)
def test_format_parse_round_trip_property(e):
    assert parse(format_expr(e)) == e


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_exprs)
def test_conjugation_involution(e):
    if any(c.kind == Kind.TIME for c in e.coords()):
        e = e.substitute({TIME: Expr.atom(Z02)})
    assert e.conjugate().conjugate() == e


# -- binomial -----------------------------------------------------------------

@pytest.mark.parametrize("r,j,value", [
    (4, 2, 6),
    (0, 0, 1),
    (5, 0, 1),
    (5, 5, 1),
    (6, 3, 20),
])
def test_binomial(r, j, value):
    assert binomial(r, j) == value


@pytest.mark.parametrize("r,j", [(3, 5), (-1, 0), (2, -1)])
def test_binomial_rejects_out_of_range(r, j):
    with pytest.raises(ValueError):
        binomial(r, j)


# -- exact division ----------------------------------------------------------

def test_divide_exact():
    f = parse("z0_1^2 - zb0_1^2")
    g = parse("z0_1 - zb0_1")
    assert divide_exact(f, g) == parse("z0_1 + zb0_1")


def test_divide_exact_rejects_remainder():
    with pytest.raises(ExactDivisionError):
        divide_exact(parse("z0_1^2 + 1"), parse("z0_1 + 1"))


# -- linear solver ------------------------------------------------------------

def _u(name):
    return UnknownId(name)


def test_solve_linear_simple():
    a, b = _u("a"), _u("b")
    # a + b = 3, a - b = 1  =>  a = 2, b = 1
    eqs = [Expr.atom(a) + Expr.atom(b) - 3, Expr.atom(a) - Expr.atom(b) - 1]
    sol = solve_linear(eqs, [a, b])
    assert sol[a] == Expr.from_value(2)
    assert sol[b] == Expr.from_value(1)


def test_solve_linear_matches_monomial_coefficients():
    # scalar-constant semantics: a*z0_1 + b == 0 identically forces a = b = 0
    a, b = _u("a"), _u("b")
    eq = Expr.atom(a) * Expr.atom(Z01) + Expr.atom(b)
    sol = solve_linear([eq], [a, b])
    assert sol[a].is_zero() and sol[b].is_zero()


def test_solve_linear_rejects_nonconstant_solution():
    # a scalar unknown cannot absorb a coordinate
    a = _u("a")
    with pytest.raises(InconsistentSystemError):
        solve_linear([Expr.atom(a) - Expr.atom(Z01)], [a])


def test_solve_linear_inconsistent():
    a = _u("a")
    eqs = [Expr.atom(a) - 1, Expr.atom(a) - 2]
    with pytest.raises(InconsistentSystemError):
        solve_linear(eqs, [a])


def test_solve_linear_underdetermined():
    a, b = _u("a"), _u("b")
    with pytest.raises(UnderdeterminedError) as err:
        solve_linear([Expr.atom(a) + Expr.atom(b)], [a, b])
    assert len(err.value.free) == 1


def test_solve_linear_rejects_nonlinear():
    a = _u("a")
    with pytest.raises(NonlinearSystemError):
        solve_linear([Expr.atom(a, 2) - 1], [a])


def test_solve_poly_linear_polynomial_unknown():
    # polynomial-unknown semantics: 2*a = z0_1^2 gives a = z0_1^2 / 2
    a = _u("a")
    x = Expr.atom(Z01)
    sol = solve_poly_linear([Expr.atom(a) * 2 - x ** 2], [a])
    assert sol[a] == x ** 2 * GRat(Fraction(1, 2))


def test_solve_poly_linear_square_system():
    # a + b = 2*z0_1 and a - b = 2  =>  a = z0_1 + 1, b = z0_1 - 1
    a, b = _u("a"), _u("b")
    x = Expr.atom(Z01)
    eqs = [Expr.atom(a) + Expr.atom(b) - 2 * x,
           Expr.atom(a) - Expr.atom(b) - 2]
    sol = solve_poly_linear(eqs, [a, b])
    assert sol[a] == x + 1
    assert sol[b] == x - 1


def test_solve_poly_linear_nonconstant_pivot():
    # z0_1 * a = z0_1 * zb0_1 needs an exact polynomial division
    a = _u("a")
    eq = Expr.atom(a) * Expr.atom(Z01) - Expr.atom(Z01) * Expr.atom(ZB01)
    sol = solve_poly_linear([eq], [a])
    assert sol[a] == Expr.atom(ZB01)


def test_solve_poly_linear_underdetermined_family():
    # a*z0_1 + b = 0 has the polynomial family a = -p, b = p*z0_1
    a, b = _u("a"), _u("b")
    eq = Expr.atom(a) * Expr.atom(Z01) + Expr.atom(b)
    with pytest.raises(UnderdeterminedError):
        solve_poly_linear([eq], [a, b])


def test_solve_poly_linear_inconsistent():
    # a*z0_1 = 1 has no polynomial solution
    a = _u("a")
    eq = Expr.atom(a) * Expr.atom(Z01) - 1
    with pytest.raises(InconsistentSystemError):
        solve_poly_linear([eq], [a])


def test_unknowns_do_not_leak_into_results():
    a = _u("a")
    sol = solve_poly_linear([Expr.atom(a) - Expr.atom(Z01)], [a])
    assert not sol[a].unknowns()
