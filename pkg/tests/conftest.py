from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from magnuskit.arith import LaurentPoly

sx, sy = sp.symbols("x y")

SAMPLE_F = "y + 7*x*y^3 + 7*x^3*y^4 - 4*x^5*y^3 + 2*x^5*y^2 - 1/2*x^3 + x*y + 1"
SAMPLE_POLYGON = [(0, 0), (0, 2), (2, 6), (6, 8), (10, 6), (10, 4), (6, 0)]
SAMPLE_HALF = [(0, 0), (0, 1), (1, 3), (3, 4), (5, 3), (5, 2), (3, 0)]


def to_sympy(f: LaurentPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * sx ** i * sy ** j
                for (i, j), c in f.items()), sp.Integer(0))


def from_sympy(expr) -> LaurentPoly:
    p = sp.Poly(sp.expand(expr), sx, sy)
    return LaurentPoly({m: Fraction(int(c.p), int(c.q)) for m, c in zip(p.monoms(), p.coeffs())})


rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(min_exp=0, max_exp=3, max_terms=5):
    exps = st.tuples(st.integers(min_exp, max_exp), st.integers(min_exp, max_exp))
    return st.dictionaries(exps, rationals, max_size=max_terms).map(LaurentPoly)


def nonzero_polys(**kw):
    return polys(**kw).filter(lambda f: not f.is_zero())


def random_even_polygon(rng, size=5):
    """Convex lattice polygon with even vertices, the origin as a vertex and both chains nontrivial."""
    from magnuskit.geometry import NewtonPolygon

    while True:
        pts = [(0, 0)] + [(rng.randint(0, size), rng.randint(0, size)) for _ in range(rng.randint(3, 7))]
        N = NewtonPolygon.from_points([(2 * a, 2 * b) for a, b in pts])
        if len(N.vertices) >= 4 and (0, 0) in N.vertices:
            return N


def random_series_input(rng, max_terms=3):
    """(xs, w): xs[0] = rho * h^2 with h w-homogeneous, then up to two arbitrary terms."""
    from fractions import Fraction as Q

    from magnuskit.geometry import Direction

    w = Direction(*rng.choice([(1, 1), (1, 2), (2, 1), (0, 1), (1, 0)]))
    su, sv = w.step
    base = (rng.randint(0, 2) + max(0, -su) * 2, rng.randint(0, 2) + max(0, -sv) * 2)
    h = LaurentPoly({(base[0] + k * su, base[1] + k * sv): Q(rng.choice([1, 2, -1, 3]), rng.choice([1, 2]))
                     for k in range(rng.randint(1, 2))})
    rho = Q(rng.choice([1, 2, 3, -5]), rng.choice([1, 3]))
    xs = [(h * h).scale(rho)]
    for _ in range(rng.randint(0, max_terms - 1)):
        xs.append(LaurentPoly({(rng.randint(0, 3), rng.randint(0, 3)): Q(rng.randint(-3, 3), rng.choice([1, 2]))
                               for _ in range(rng.randint(1, 2))}))
    return xs, w


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
