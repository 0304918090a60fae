import random
from fractions import Fraction

import pytest
import sympy as sp

from conftest import SAMPLE_HALF, sx, sy, to_sympy
from magnuskit.arith import ONE, X, Y, LaurentPoly, bracket
from magnuskit.errors import (
    MembershipFailed,
    NonSquareLeading,
    NotAVertex,
    OddVertex,
    PreconditionViolated,
    VanishingViolated,
)
from magnuskit.geometry import NewtonPolygon, newton_polygon
from magnuskit.hypotheses import gen_power_pair, random_p, rect_shape
from magnuskit.parser import parse_poly as P
from magnuskit.squares import (
    INCONCLUSIVE,
    ZERO_RESULT,
    complete_square,
    excluded_region,
    len_vanish_step,
    membership_step,
    rectangle_pipeline,
    solve_order,
    theorem_pipeline,
)

F = Fraction


def test_perfect_square():
    sq = complete_square(P("(x*y + x + y + 1)^2"))
    assert sq.P == P("x*y + x + y + 1") and sq.R.is_zero()
    assert sq.solve_order[0] == (1, 1)


def test_brute_force_example():
    # sympy.solve of the four coefficient equations on N'' gives exactly +-(xy + x)
    F_ = P("x^2*y^2 + 2*x^2*y + x^2 + y^2")
    sq = complete_square(F_, (2, 2))
    assert sq.P == P("x*y + x") and sq.R == P("y^2")
    assert not excluded_region(F_, (2, 2)).contains((0, 2))


def test_section3_relations():
    rng = random.Random(2)
    for _ in range(5):
        p = random_p(rng, rect_shape(1, 1), nonzero={(1, 1), (1, 0), (0, 1)})
        if p.coeff(1, 1) < 0:
            p = -p
        F_ = p * p + 7
        sq = complete_square(F_, (2, 2))
        assert sq.P == p and sq.R == ONE.scale(7)
        lam = F_.coeff
        c = p.coeff
        assert lam(2, 2) == c(1, 1) ** 2
        assert lam(2, 1) == 2 * c(1, 1) * c(1, 0)
        assert lam(1, 2) == 2 * c(1, 1) * c(0, 1)
        assert lam(1, 1) == 2 * c(1, 0) * c(0, 1) + 2 * c(1, 1) * c(0, 0)


def test_errors():
    with pytest.raises(OddVertex):
        complete_square(P("x^3 + 1"))
    with pytest.raises(NonSquareLeading):
        complete_square(P("2*x^2*y^2 + 1"))
    with pytest.raises(NotAVertex):
        complete_square(P("x^2*y^2 + x^2 + y^2 + 1"), (1, 1))


def _random_even_f(rng, shape):
    p = random_p(rng, shape)
    if p.coeff(*max(NewtonPolygon.from_points(shape).vertices)) == 0:
        p = p + X ** 0
    noise = LaurentPoly({pt: F(rng.randint(-3, 3)) for pt in newton_polygon(p * p).lattice_points()
                         if rng.random() < 0.3 and pt not in newton_polygon(p * p).vertices})
    return p * p + noise


SHAPES = [rect_shape(1, 1), rect_shape(2, 1), SAMPLE_HALF, [(0, 0), (2, 0), (1, 2), (0, 1)]]


def test_support_exclusion():
    rng = random.Random(9)
    for shape in SHAPES:
        for _ in range(4):
            F_ = _random_even_f(rng, shape)
            try:
                sq = complete_square(F_)
            except NonSquareLeading:
                continue
            region = excluded_region(F_, sq.C)
            for pt in sq.R.support():
                assert not region.contains(pt)
            assert sq.P.coeff(sq.C[0] // 2, sq.C[1] // 2) > 0


def test_only_two_solutions():
    rng = random.Random(4)
    shapes = [rect_shape(1, 1), [(0, 0), (2, 0), (0, 1)], [(0, 0), (1, 0), (1, 1), (0, 2)]]
    for shape in shapes:
        F_ = _random_even_f(rng, shape)
        try:
            sq = complete_square(F_)
        except NonSquareLeading:
            continue
        half = newton_polygon(F_).scaled(F(1, 2)).lattice_points()
        assert len(half) <= 6
        syms = sp.symbols(f"p0:{len(half)}")
        Psym = sum(s * sx ** i * sy ** j for s, (i, j) in zip(syms, half))
        R = sp.Poly(sp.expand(to_sympy(F_) - Psym ** 2), sx, sy)
        region = excluded_region(F_, sq.C)
        eqs = [R.coeff_monomial(sx ** i * sy ** j) for (i, j) in region.lattice_points()]
        sols = sp.solve(eqs, syms, dict=True)
        expected = {tuple(sq.P.coeff(*z) for z in half), tuple(-sq.P.coeff(*z) for z in half)}
        got = {tuple(F(str(s[v])) for v in syms) for s in sols}
        assert got == expected


def test_order_independence():
    rng = random.Random(12)
    for shape in SHAPES:
        F_ = _random_even_f(rng, shape)
        try:
            base = complete_square(F_)
        except NonSquareLeading:
            continue
        N = newton_polygon(F_)
        C = base.C
        vs = list(N.vertices)
        k = vs.index(C)
        prev, nxt = vs[k - 1], vs[(k + 1) % len(vs)]
        n1 = (C[1] - prev[1], prev[0] - C[0])
        n2 = (nxt[1] - C[1], C[0] - nxt[0])
        pts = N.scaled(F(1, 2)).lattice_points()
        for a, b in [(1, 3), (3, 1), (2, 5)]:
            ell = (a * n1[0] + b * n2[0], a * n1[1] + b * n2[1])
            order = sorted(pts, key=lambda z: (ell[0] * z[0] + ell[1] * z[1], -z[0], -z[1]), reverse=True)
            assert complete_square(F_, C, order).P == base.P
        assert solve_order(N, C)[0] == (C[0] // 2, C[1] // 2)


def _membership_setup():
    Pp = P("x*y + x^2 + y + 1")
    R = P("3*x^2*y + 3*x^3")
    return Pp * Pp + R, Pp, R


def test_membership_examples():
    F_, Pp, R = _membership_setup()
    assert membership_step(F_, Pp, R, (1, 1), 1, 1) == P("3*x")
    Z = LaurentPoly()
    assert membership_step(Pp * Pp, Pp, Z, (1, 1), 1, 1).is_zero()


def test_membership_failures():
    F_, Pp, R = _membership_setup()
    with pytest.raises(PreconditionViolated):
        membership_step(F_, Pp, R, (1, 1), 0, 1)
    with pytest.raises(PreconditionViolated):
        membership_step(F_, Pp, R, (1, 1), 2, 1)  # R_(d-1) is nonzero
    with pytest.raises(PreconditionViolated):
        membership_step(F_, Pp, R, (1, 1), 1, 1, e=0)
    R2 = P("x^3 + 2*y^3")
    with pytest.raises(MembershipFailed):
        membership_step(Pp * Pp + R2, Pp, R2, (1, 1), 1, 1)


def test_len_vanish_examples():
    assert len_vanish_step(LaurentPoly(), P("x + y"), (1, 1)) == ZERO_RESULT
    assert len_vanish_step(P("x^2 + x*y + y^2"), P("x + y"), (1, 1)) == INCONCLUSIVE
    with pytest.raises(VanishingViolated):
        len_vanish_step(P("x^2"), P("x + y"), (1, 1))


def test_rectangle_pipeline_planted_constant():
    rng = random.Random(8)
    p = random_p(rng, rect_shape(2, 1), nonzero={(0, 0), (1, 0), (0, 1)})
    F_, G = p * p + 5, p ** 3 + p.scale(5)
    v = rectangle_pipeline(F_, G)
    assert v.generic_ok and v.conclusion == "R_constant" and v.R == ONE.scale(5) and v.bracket_zero
    assert any(c.mechanism == "membership" for s in v.swept for c in s.checks)


def test_rectangle_square_example():
    pp = gen_power_pair(0, rect_shape(1, 1), k=1, u0=3)
    v = rectangle_pipeline(pp.F, pp.G)
    c = v.P.coeff
    lam = pp.F.coeff
    assert lam(0, 2) == c(0, 1) ** 2 and lam(0, 1) == 2 * c(0, 1) * c(0, 0)
    assert lam(2, 0) == c(1, 0) ** 2 and lam(1, 0) == 2 * c(1, 0) * c(0, 0)
    assert v.R == ONE.scale(3)


def test_rectangle_declines_nongeneric():
    p = Y * (X + 1) ** 2 + X + 1
    F_ = p * p + 1
    v = rectangle_pipeline(F_, p * F_)
    assert not v.generic_ok and v.conclusion == "declined"
    with pytest.raises(Exception):
        rectangle_pipeline(F_, p * F_, strict=True)


def test_theorem_pipeline_sample_shape():
    pp = gen_power_pair(5, SAMPLE_HALF, k=1)
    v = theorem_pipeline(pp.F, pp.G)
    assert v.conclusion == "R_constant" and v.u0 == pp.u0 and v.bracket_zero
    assert len(v.swept) == 31 and all(s.empty for s in v.swept)
    assert v.P in (pp.P, -pp.P)


def test_cross_path_agreement():
    for seed in range(3):
        pp = gen_power_pair(seed, rect_shape(2, 2), k=1)
        a, b = rectangle_pipeline(pp.F, pp.G), theorem_pipeline(pp.F, pp.G)
        assert (a.P, a.R, a.conclusion) == (b.P, b.R, b.conclusion)


def test_bracket_recheck():
    pp = gen_power_pair(1, rect_shape(1, 2), k=2)
    assert bracket(pp.F, pp.G).is_zero()
    assert theorem_pipeline(pp.F, pp.G).bracket_zero


def test_violation_is_reported():
    pp = gen_power_pair(1, rect_shape(2, 1), k=1)
    F_ = pp.F + P("3*x*y")
    v = theorem_pipeline(F_, pp.G, require_hypotheses=False)
    assert v.conclusion.startswith("violation at T_")
    bad = [s for s in v.swept if s.offending]
    assert bad and bad[0].offending == [(1, 1)]
