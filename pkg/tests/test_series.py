import random
from fractions import Fraction

import pytest
import sympy as sp

from conftest import random_series_input, sx, sy, to_sympy
from magnuskit.arith import ONE, X, Y, LaurentPoly, bracket
from magnuskit.errors import NonIntegralRootPower, NotHomogeneous, ZeroLeading
from magnuskit.geometry import Direction
from magnuskit.parser import parse_poly as P
from magnuskit.series import (
    HFrac,
    TruncSeries,
    multinomial_expand,
    root_extract,
    series_bracket,
    series_of,
    series_power,
    sqf_list,
)

F = Fraction


def test_root_extract_examples():
    r = root_extract(P("x^2*y^2"), (1, 1))
    assert (r.r, r.rho, r.H) == (2, 1, P("x*y"))
    r = root_extract(P("x^3 + y^3"), (1, 1))
    assert (r.r, r.rho, r.H) == (1, 1, P("x^3 + y^3"))
    # sympy.sqf_list(4*x**2*(x+y)**2) == (4, [(x**2 + x*y, 2)])
    r = root_extract(P("4*x^2*(x+y)^2"), (1, 1))
    assert (r.r, r.rho, r.H) == (2, 4, P("x^2 + x*y"))
    with pytest.raises(NotHomogeneous):
        root_extract(P("x^2 + y"), (1, 1))


def test_root_extract_branch_convention():
    r = root_extract(P("-3*(x - 2*y)^2*x^4"), (1, 1))
    assert r.r == 2 and r.rho == -3
    e, c = r.H.leading()
    assert c > 0
    assert r.form == P("-3*(x - 2*y)^2*x^4")


def test_root_extract_against_sympy():
    rng = random.Random(3)
    for _ in range(30):
        w = Direction(*rng.choice([(1, 1), (1, 2), (2, 1)]))
        su, sv = w.step
        factors = []
        for _ in range(rng.randint(1, 3)):
            a, b = rng.randint(1, 3), rng.randint(-3, 3) or 1
            factors.append(LaurentPoly({(0, 0): a, (su, sv): b}) if sv >= 0 else
                           LaurentPoly({(0, -sv): a, (su, 0): b}))
        f = ONE.scale(rng.choice([1, 2, 4, -1]))
        for g in factors:
            f = f * g ** rng.choice([1, 2, 2, 4])
        f = f * X ** (2 * rng.randint(0, 2)) * Y ** (2 * rng.randint(0, 2))
        r = root_extract(f, w)
        assert r.form == f
        _, fac = sp.sqf_list(to_sympy(f))
        mults = [m for g, m in fac if not sp.Poly(g, sx, sy).is_monomial]
        assert all(m % r.r == 0 for m in mults)
        deg = sp.Poly(to_sympy(f), sx, sy)
        i0 = min(m[0] for m in deg.monoms())
        j0 = min(m[1] for m in deg.monoms())
        assert i0 % r.r == 0 and j0 % r.r == 0


def test_sqf_list_small():
    # (z + 1)^2 (z - 2) = z^3 - 3z - 2, coefficients from the constant term up
    lc, fs = sqf_list([F(-2), F(-3), F(0), F(1)])
    assert lc == 1 and sorted((m, tuple(s)) for s, m in fs) == [(1, (-2, 1)), (2, (1, 1))]


def test_binomial_series():
    S = TruncSeries.from_polys([ONE, ONE], 2)
    root = root_extract(ONE, (1, 1))
    out = series_power(S, F(1, 2), root)
    assert [c.to_poly() for c in out.coeffs] == [ONE, ONE.scale(F(1, 2)), ONE.scale(F(-1, 8))]


def test_square_root_of_monomial_leading():
    S = TruncSeries.from_polys([P("x^2*y^2"), ONE], 1)
    root = root_extract(P("x^2*y^2"), (1, 1))
    out = series_power(S, F(1, 2), root)
    assert out[0] == HFrac.of(P("x*y"), root.H)
    assert out[1] == HFrac(ONE.scale(F(1, 2)), 1, root.H)
    assert out == multinomial_expand([P("x^2*y^2"), ONE], F(1, 2), 1, root)


def test_exact_square_root_terminates():
    f = P("(x*y + x)^2")
    S = series_of(f, (0, 1), 4)
    root = root_extract(S[0].num, (0, 1))
    out = series_power(S, F(1, 2), root)
    assert [c.to_poly() for c in out.coeffs] == [P("x*y"), P("x"), LaurentPoly(), LaurentPoly(), LaurentPoly()]


def test_series_power_errors():
    root = root_extract(P("x*y"), (1, 1))
    with pytest.raises(NonIntegralRootPower):
        series_power(TruncSeries.from_polys([P("x*y"), ONE], 1), F(1, 2), root)
    with pytest.raises(ZeroLeading):
        series_power(TruncSeries.from_polys([LaurentPoly(), ONE], 1), F(1, 2), root)


def test_integer_exponent_is_ring_power():
    xs = [P("x^2"), P("x + y"), P("3")]
    root = root_extract(xs[0], (1, 1))
    out = multinomial_expand(xs, 3, 4, root)
    t = sp.Symbol("t")
    ser = sp.expand((to_sympy(xs[0]) + to_sympy(xs[1]) * t + to_sympy(xs[2]) * t ** 2) ** 3)
    for n in range(5):
        assert out[n].to_poly() == P(str(ser.coeff(t, n)).replace("**", "^"))


def test_binomial_cross_check_to_order_six():
    S = TruncSeries.from_polys([ONE, ONE], 6)
    root = root_extract(ONE, (1, 1))
    assert series_power(S, F(1, 2), root) == multinomial_expand([ONE, ONE], F(1, 2), 6, root)


def _random_case(rng):
    xs, w = random_series_input(rng)
    root = root_extract(xs[0], w)
    N = rng.randint(0, 4)
    return xs, root, N


def test_recurrence_matches_multinomial():
    rng = random.Random(11)
    for _ in range(60):
        xs, root, N = _random_case(rng)
        A = rng.choice([F(1, 2), F(-1, 2), F(3, 2), F(-3, 2), F(2), F(5, 2)])
        S = TruncSeries.from_polys(xs, N, root.H)
        assert series_power(S, A, root) == multinomial_expand(xs, A, N, root)


def test_inverse_and_additivity():
    rng = random.Random(5)
    for _ in range(30):
        xs, root, N = _random_case(rng)
        S = TruncSeries.from_polys(xs, N)
        A, B = F(1, 2), F(3, 2)
        pa, pma = series_power(S, A, root), series_power(S, -A, root)
        prod = pa * pma
        assert prod[0] == HFrac.of(ONE) and all(prod[n].is_zero() for n in range(1, N + 1))
        pb = series_power(S, B, root)
        # rho^-A S^A * rho^-B S^B = rho^-(A+B) S^(A+B)
        assert pa * pb == series_power(S, A + B, root)


def test_series_bracket_examples():
    f = P("x^2*y + x*y + 3")
    Fs = series_of(f, (1, 1), 3)
    assert series_bracket(Fs, Fs).is_zero()
    g = P("x^4*y^2")
    Gs = series_of(g * g, (1, 1), 3)
    root2 = root_extract(Gs[0].num, (1, 1))
    half = series_power(Gs, F(3, 4), root2)
    assert series_bracket(Gs, half).is_zero()


def test_series_bracket_is_bracket_component():
    f = P("x^3 + x*y^2 + y + 2")
    g = P("y^3 + x^2*y + x")
    w = Direction(1, 1)
    Fs, Gs = series_of(f, w, 4), series_of(g, w, 4)
    br = bracket(f, g)
    top = 3 + 3 - 2
    for mu in range(5):
        expected = LaurentPoly({e: c for e, c in br.items() if w.deg(e) == top - mu})
        assert series_bracket(Fs, Gs)[mu].to_poly() == expected
