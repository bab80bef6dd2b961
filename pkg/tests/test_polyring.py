import itertools

import pytest
import sympy

from fqzeta.field import field_for_q, make_field
from fqzeta.polyring import (
    BudgetError, FqPoly, RatFunc, bracket, dfact, ell, enum_budget, lfact, monic_polys,
    parse_poly, parse_ratfunc, render_ratfunc,
)

T = sympy.Symbol("t")


def _grid_polys(ctx, maxdeg, limit=40):
    """Deterministic sample of polynomials of degree <= maxdeg."""
    out = []
    for i, c in enumerate(itertools.product(range(ctx.q), repeat=maxdeg + 1)):
        if i % 7 == 0:
            out.append(FqPoly(ctx, c))
        if len(out) >= limit:
            break
    return out


def _to_sympy(f, p):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], T, modulus=p)


def _from_sympy(ctx, g):
    return FqPoly(ctx, [int(c) % ctx.p for c in reversed(g.all_coeffs())])


def test_canonical_form():
    F = field_for_q(3)
    f = FqPoly(F, [1, 2, 0, 0])
    assert f.coeffs == (1, 2)
    assert FqPoly(F, []).degree == float("-inf")
    assert FqPoly(F, [0, 0]).coeffs == ()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_arithmetic_matches_sympy(p):
    F = field_for_q(p)
    polys = _grid_polys(F, 4, 25) + [FqPoly.monomial(F, 9, 1) - FqPoly.t(F)]
    for f, g in itertools.product(polys, repeat=2):
        sf, sg = _to_sympy(f, p), _to_sympy(g, p)
        assert f * g == _from_sympy(F, sf * sg)
        assert f + g == _from_sympy(F, sf + sg)
        if g.coeffs:
            qq, rr = divmod(f, g)
            sq, sr = sf.div(sg)
            assert (qq, rr) == (_from_sympy(F, sq), _from_sympy(F, sr))
            if f.coeffs:
                assert f.gcd(g) == _from_sympy(F, sympy.gcd(sf, sg)).monic()
                assert f.degree + g.degree == (f * g).degree


def test_extension_field_division_identity():
    F = make_field(2, 2)
    polys = _grid_polys(F, 3, 30)
    for f, g in itertools.product(polys, repeat=2):
        if g.coeffs:
            qq, rr = divmod(f, g)
            assert qq * g + rr == f
            assert rr.degree < g.degree


def test_pow_matches_repeated_mul():
    F = make_field(3, 2)
    f = FqPoly(F, [1, 5, 7])
    acc = FqPoly.const(F)
    for e in range(8):
        assert f**e == acc
        acc = acc * f


def test_ratfunc_examples():
    F = field_for_q(2)
    t = RatFunc(FqPoly.t(F))
    x = RatFunc(FqPoly(F, [1, 1]), FqPoly(F, [0, 1, 1]))
    assert (x + (-x)).is_zero()
    assert (1 / t) * t == RatFunc.one(F)
    b1 = RatFunc(bracket(F, 1))
    lhs = 1 / b1**3 + 1 / b1**2
    assert lhs == RatFunc(FqPoly(F, [1, 1, 1]), bracket(F, 1) ** 3)


def test_ratfunc_normalization_unique():
    F = field_for_q(5)
    polys = [f for f in _grid_polys(F, 3, 30) if f.coeffs][:12]
    h = FqPoly(F, [2, 3, 1])
    pairs = list(itertools.combinations(polys, 2))
    for (a, b), (c, d) in itertools.product(pairs, repeat=2):
        x, y = RatFunc(a, b), RatFunc(c, d)
        assert (x == y) == (a * d == b * c)
        assert x.den.lead == 1
        assert x.num.gcd(x.den).degree == 0
    for a, b in pairs:
        x = RatFunc(a * h, b * h)
        assert x == RatFunc(a, b) and hash(x) == hash(RatFunc(a, b))
        assert (x.num, x.den) == (RatFunc(a, b).num, RatFunc(a, b).den)


def test_ratfunc_field_ops():
    F = make_field(2, 2)
    polys = [f for f in _grid_polys(F, 2, 12) if f.coeffs]
    vals = [RatFunc(a, b) for a, b in zip(polys, polys[1:])]
    for x, y in itertools.product(vals, repeat=2):
        assert (x + y) - y == x
        assert (x * y) / y == x
        assert x * y == y * x
    with pytest.raises(ZeroDivisionError):
        RatFunc.one(F) / RatFunc.zero(F)


def test_monic_enumeration():
    F2, F3 = field_for_q(2), field_for_q(3)
    assert [f.coeffs for f in monic_polys(F2, 0)] == [(1,)]
    assert sorted(str(f) for f in monic_polys(F2, 1)) == ["t", "t + 1"]
    quads = list(monic_polys(F3, 2))
    assert len(quads) == 9 and len(set(quads)) == 9
    for q, d in [(4, 3), (5, 2), (2, 6)]:
        got = list(monic_polys(field_for_q(q), d))
        assert len(got) == q**d == len(set(got))
        assert all(f.degree == d and f.lead == 1 for f in got)


def test_monic_budget():
    with pytest.raises(BudgetError):
        list(monic_polys(field_for_q(3), 5, budget=100))
    with enum_budget(8):
        with pytest.raises(BudgetError):
            list(monic_polys(field_for_q(3), 2))


def test_bracket_examples():
    F2, F3 = field_for_q(2), field_for_q(3)
    assert bracket(F2, 1) == FqPoly(F2, [0, 1, 1])
    assert bracket(F3, 1) == FqPoly(F3, [0, 2, 0, 1])
    assert ell(F3, 1) == -bracket(F3, 1)
    assert bracket(F2, 2) == FqPoly(F2, [0, 1, 0, 0, 1])
    assert bracket(F2, 2) == bracket(F2, 1) * FqPoly(F2, [1, 1, 1])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_ell_equals_signed_lfact(q):
    F = field_for_q(q)
    for n in range(7 if q == 2 else 4):
        sign = -1 if n % 2 else 1
        assert ell(F, n) == lfact(F, n).scale(F.from_int(sign))
    assert dfact(F, 0) == lfact(F, 0) == FqPoly.const(F)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_dfact_is_product_of_monics(q):
    # D_n is the product of all monic polynomials of degree n
    F = field_for_q(q)
    for n in (1, 2):
        acc = FqPoly.const(F)
        for f in monic_polys(F, n):
            acc = acc * f
        assert acc == dfact(F, n)


def test_render_and_parse():
    F = field_for_q(2)
    x = RatFunc(FqPoly.const(F), bracket(F, 1))
    assert render_ratfunc(x).replace(" ", "") == "1/(t^2+t)"
    assert parse_ratfunc("1/(t^2+t)", F) == x
    G = field_for_q(3)
    assert str(parse_poly("2*t^3 + t + 1", G)) == "2*t^3 + t + 1"
    assert parse_poly("(t+1)^3", G) == parse_poly("t^3 + 1", G)
    assert parse_ratfunc("t^-2", G) == 1 / RatFunc(FqPoly.monomial(G, 2))


def test_render_parse_roundtrip_extension():
    F = make_field(3, 2)
    for f in _grid_polys(F, 2, 30):
        x = RatFunc(f, FqPoly(F, [4, 0, 1]))
        assert parse_ratfunc(render_ratfunc(x), F) == x


def test_parse_errors():
    F = field_for_q(2)
    for bad in ["t^", "1/(t", "x + 1", "t + + "]:
        with pytest.raises(ValueError):
            parse_ratfunc(bad, F)
    with pytest.raises(ValueError):
        parse_poly("1/t", F)
