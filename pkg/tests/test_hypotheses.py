from fractions import Fraction

from conftest import SAMPLE_HALF
from magnuskit.arith import ONE, X, Y, bracket
from magnuskit.geometry import Direction, newton_polygon, similar_with_ratio
from magnuskit.hypotheses import (
    check_conjectureA_preconditions,
    check_direction,
    compose_triangular,
    gen_jacobian_pair,
    gen_power_pair,
    generic_boundaries,
    infer_ratio,
    normalize_pair,
    rect_shape,
    substitute_linear,
)
from magnuskit.parser import parse_poly as P


def _square_pair():
    p = P("2*x*y + x - 3*y + 1")
    F = p * p + 5
    return F, p * F


def test_conjecture_preconditions_square_example():
    F, G = _square_pair()
    assert newton_polygon(F).vertices == ((0, 0), (2, 0), (2, 2), (0, 2))
    h = check_conjectureA_preconditions(F, G, 2, 3)
    assert h.bracket_value == 0 and h.similarity_ok and h.corner_points_ok and h.min_ab_ok
    assert h.conjecture_a_ok


def test_min_condition_and_corners():
    F, G = _square_pair()
    assert not check_conjectureA_preconditions(F, G, 1, 2).min_ab_ok
    h = check_conjectureA_preconditions(F, P("x + x^2*y^3"), 2, 3)
    assert not h.corner_points_ok


def test_non_constant_bracket_reported():
    h = check_conjectureA_preconditions(P("x^2 + y"), P("y^2"), 1, 1)
    assert h.bracket_value is None and not h.bracket_constant


def test_direction_examples():
    w = Direction(1, 1)
    assert check_direction(P("(x + y)^2"), w, 2).ok
    bad = check_direction(P("(x + y)^4"), w, 2)
    assert not bad.ok and "square" in bad.reason
    assert check_direction(P("4*x^2*(x + y)^2"), w, 2).ok
    missing = check_direction(P("x*(x + y)^2"), w, 2)
    assert not missing.ok and missing.reason.startswith("RootMissing")


def test_generic_boundaries_negative_control():
    F = P("(x + y)^4 + x + y + 1")
    h = generic_boundaries(F, F, 2, 3)
    assert not h.generic_boundaries_ok
    failing = [d.w for d in h.directions if not d.ok]
    assert failing == [Direction(1, 1)]


def test_generic_implies_preconditions():
    for seed in range(6):
        pp = gen_power_pair(seed, rect_shape(2, 1), k=1)
        h = generic_boundaries(pp.F, pp.G, 2, 3)
        assert h.generic_boundaries_ok
        assert h.bracket_constant and h.similarity_ok and h.corner_points_ok


def test_scaling_does_not_change_verdicts():
    pp = gen_power_pair(2, SAMPLE_HALF, k=1)
    for lam in (Fraction(-3), Fraction(2, 7)):
        h1 = generic_boundaries(pp.F, pp.G, 2, 3)
        h2 = generic_boundaries(pp.F.scale(lam), pp.G, 2, 3)
        assert h1.generic_boundaries_ok == h2.generic_boundaries_ok
        assert [d.ok for d in h1.directions] == [d.ok for d in h2.directions]
    bad = P("(x + y)^4 + x + y + 1")
    assert not generic_boundaries(bad.scale(5), bad, 2, 3).generic_boundaries_ok


def test_triangular_compositions():
    assert compose_triangular([("y", [0, 0, 1])]) == (X, Y + X ** 2)
    Fp, Gp = compose_triangular([("y", [0, 0, 1]), ("x", [0, 0, 1])])
    assert Fp == P("x + (y + x^2)^2") and bracket(Fp, Gp) == ONE


def test_jacobian_generator_postcondition():
    for seed in range(40):
        Fp, Gp = gen_jacobian_pair(seed, steps=3, degree_bound=12)
        assert bracket(Fp, Gp) in (ONE, -ONE)
        assert max(Fp.total_degree(), Gp.total_degree()) <= 12
    assert gen_jacobian_pair(3) == gen_jacobian_pair(3)


def test_power_pair_construction():
    pp = gen_power_pair(0, rect_shape(1, 1), k=1, u0=5)
    assert pp.F == pp.P * pp.P + 5
    assert pp.G == pp.P ** 3 + pp.P.scale(5)
    assert bracket(pp.F, pp.G).is_zero()


def test_power_pair_postconditions():
    for seed, shape, k in [(1, rect_shape(2, 1), 1), (2, SAMPLE_HALF, 2), (3, [(0, 0), (2, 0), (0, 2)], 1)]:
        pp = gen_power_pair(seed, shape, k=k)
        assert bracket(pp.F, pp.G).is_zero()
        assert similar_with_ratio(newton_polygon(pp.F), newton_polygon(pp.G), 2, 2 * k + 1)
        assert infer_ratio(pp.F, pp.G) == (2, 2 * k + 1)
        assert generic_boundaries(pp.F, pp.G, 2, 2 * k + 1).generic_boundaries_ok


def test_normalization_step():
    Fp, Gp = P("x^2*y + y^3"), P("x*y^2 + x^3")
    F2, G2, steps = normalize_pair(Fp, Gp, seed=1)
    assert steps
    assert check_conjectureA_preconditions(F2, G2, 1, 1).corner_points_ok
    assert not check_conjectureA_preconditions(Fp, Gp, 1, 1).corner_points_ok


def test_shear_preserves_bracket():
    Fp, Gp = gen_jacobian_pair(5)
    xs, ys = X + Y.scale(2), Y
    assert bracket(substitute_linear(Fp, xs, ys), substitute_linear(Gp, xs, ys)) == bracket(Fp, Gp)
