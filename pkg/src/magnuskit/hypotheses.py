"""Hypothesis checks on pairs (F, G) and seeded generators of test pairs."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import X, Y, LaurentPoly, bracket
from .geometry import Direction, NewtonPolygon, leading_form, newton_polygon, similar_with_ratio
from .series import root_extract

log = logging.getLogger(__name__)

CORNERS = ((1, 0), (0, 1), (0, 0))


@dataclass
class DirectionCheck:
    w: Direction
    r: int
    ok: bool
    reason: str = ""


@dataclass
class PairHypotheses:
    a: int
    b: int
    bracket_value: Fraction | None  # None when [F, G] is not constant
    similarity_ok: bool
    corner_points_ok: bool
    min_ab_ok: bool
    generic_boundaries_ok: bool | None = None
    directions: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def bracket_constant(self) -> bool:
        return self.bracket_value is not None

    @property
    def conjecture_a_ok(self) -> bool:
        return self.bracket_constant and self.similarity_ok and self.corner_points_ok and self.min_ab_ok

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "bracket": None if self.bracket_value is None else str(self.bracket_value),
            "bracket_constant": self.bracket_constant,
            "similarity_ok": self.similarity_ok,
            "corner_points_ok": self.corner_points_ok,
            "min_ab_ok": self.min_ab_ok,
            "generic_boundaries_ok": self.generic_boundaries_ok,
            "directions": [{"w": [d.w.u, d.w.v], "r": d.r, "ok": d.ok, "reason": d.reason}
                           for d in self.directions],
            "notes": list(self.notes),
        }


def infer_ratio(F: LaurentPoly, G: LaurentPoly) -> tuple[int, int]:
    """deg(F) : deg(G) in lowest terms."""
    df, dg = F.total_degree(), G.total_degree()
    g = gcd(df, dg) or 1
    return df // g, dg // g


def check_conjectureA_preconditions(F: LaurentPoly, G: LaurentPoly, a: int, b: int) -> PairHypotheses:
    notes = []
    br = bracket(F, G)
    value = br.constant_term() if br.is_constant() else None
    if gcd(a, b) != 1:
        notes.append(f"a={a} and b={b} are not coprime")
    sim = False
    if F and G:
        sim = (gcd(a, b) == 1
               and similar_with_ratio(newton_polygon(F), newton_polygon(G), a, b)
               and b * F.total_degree() == a * G.total_degree())
    corners = bool(F and G) and all(
        newton_polygon(F).contains(p) and newton_polygon(G).contains(p) for p in CORNERS)
    return PairHypotheses(a, b, value, sim, corners, min(a, b) >= 2, notes=notes)


def check_direction(F: LaurentPoly, w, a: int) -> DirectionCheck:
    """Is the a-th root of F_+ free of squares of non-monomial factors?"""
    w = Direction.of(w)
    fplus = leading_form(F, w)
    if fplus.is_monomial():
        return DirectionCheck(w, 0, True, "monomial leading form")
    root = root_extract(fplus, w)
    if root.r % a:
        return DirectionCheck(w, root.r, False, f"RootMissing: a={a} does not divide r={root.r}")
    bad = [m // a for m in root.multiplicities if m // a > 1]
    if bad:
        return DirectionCheck(w, root.r, False,
                              f"a-th root divisible by the square of a non-monomial polynomial "
                              f"(multiplicity {max(bad)})")
    return DirectionCheck(w, root.r, True, "")


def generic_boundaries(F: LaurentPoly, G: LaurentPoly, a: int, b: int) -> PairHypotheses:
    hyp = check_conjectureA_preconditions(F, G, a, b)
    if F.is_zero():
        hyp.generic_boundaries_ok = False
        return hyp
    checks = [check_direction(F, w, a) for w in newton_polygon(F).edge_normals()]
    hyp.directions = checks
    hyp.generic_boundaries_ok = (hyp.bracket_constant and hyp.similarity_ok
                                 and hyp.corner_points_ok and all(c.ok for c in checks))
    return hyp


# ---------------------------------------------------------------------------
# generators


def _upoly(var: LaurentPoly, coeffs) -> LaurentPoly:
    out = LaurentPoly()
    for k, c in enumerate(coeffs):
        if c:
            out = out + (var ** k).scale(c)
    return out


def compose_triangular(maps, F: LaurentPoly = X, G: LaurentPoly = Y):
    """Apply elementary automorphisms to the pair (F, G) in order.

    Each map is ``("y", coeffs)`` for G <- G + p(F), ``("x", coeffs)`` for
    F <- F + q(G), or ``("lin", (a, b, c, d))`` for a unimodular linear map.
    Coefficient lists start at the constant term.
    """
    for kind, data in maps:
        if kind == "y":
            G = G + _upoly(F, data)
        elif kind == "x":
            F = F + _upoly(G, data)
        elif kind == "lin":
            a, b, c, d = data
            if a * d - b * c not in (1, -1):
                raise ValueError("linear map is not unimodular")
            F, G = F.scale(a) + G.scale(b), F.scale(c) + G.scale(d)
        else:
            raise ValueError(f"unknown map kind {kind!r}")
    return F, G


_UNIMODULAR = [(1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 0), (1, -1, 0, 1), (2, 1, 1, 1), (1, 0, -1, 1)]


def _small_coeff(rng: random.Random) -> Fraction:
    c = rng.choice([1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2)])
    return Fraction(c)


def gen_jacobian_pair(seed: int, steps: int = 3, degree_bound: int = 12):
    """Random composition of triangular and unimodular maps; [F, G] = +-1."""
    rng = random.Random(seed)
    for _attempt in range(200):
        maps = []
        F, G = X, Y
        for _ in range(steps):
            kind = rng.choice(["y", "x", "lin"] if maps else ["y", "x"])
            if kind == "lin":
                cand = ("lin", rng.choice(_UNIMODULAR))
            else:
                deg = rng.randint(2, 3)
                coeffs = [Fraction(0)] * (deg + 1)
                coeffs[deg] = _small_coeff(rng)
                for k in range(deg):
                    if rng.random() < 0.5:
                        coeffs[k] = _small_coeff(rng)
                cand = (kind, coeffs)
            F2, G2 = compose_triangular([cand], F, G)
            if max(F2.total_degree(), G2.total_degree()) > degree_bound:
                continue
            F, G = F2, G2
            maps.append(cand)
        if max(F.total_degree(), G.total_degree()) >= 2:
            return F, G
    raise RuntimeError("could not generate a pair within the degree bound")


def rect_shape(mx: int, my: int) -> list:
    return [(0, 0), (mx, 0), (mx, my), (0, my)]


def _shape_points(shape) -> list:
    return NewtonPolygon.from_points(shape).lattice_points()


def random_p(rng: random.Random, shape, nonzero=()) -> LaurentPoly:
    terms = {}
    for p in _shape_points(shape):
        c = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
        if p in nonzero or p in NewtonPolygon.from_points(shape).vertices:
            while not c:
                c = Fraction(rng.randint(-4, 4), rng.choice([1, 2]))
        terms[p] = c
    return LaurentPoly(terms)


@dataclass
class PowerPair:
    F: LaurentPoly
    G: LaurentPoly
    P: LaurentPoly
    u0: Fraction
    k: int
    trials: int


def gen_power_pair(seed: int, shape, k: int = 1, u0=None, max_trials: int = 200) -> PowerPair:
    """F = P^2 + u0 and G = P * F^k, so [F, G] = 0 and N(G) = (2k+1)/2 N(F).

    ``shape`` is the vertex list of N(P).  Coefficients are resampled until
    the pair has generic boundaries with a = 2, b = 2k + 1.
    """
    rng = random.Random(seed)
    if u0 is None:
        u0 = Fraction(rng.choice([1, 2, 3, 5, 7]), rng.choice([1, 2, 3]))
    u0 = Fraction(u0)
    corners = {(0, 0), (1, 0), (0, 1)}
    for trial in range(1, max_trials + 1):
        P = random_p(rng, shape, nonzero=corners)
        F = P * P + u0
        G = P * F ** k
        hyp = generic_boundaries(F, G, 2, 2 * k + 1)
        if hyp.generic_boundaries_ok:
            return PowerPair(F, G, P, u0, k, trial)
    raise RuntimeError(f"no generic coefficients found in {max_trials} trials")


def substitute_linear(f: LaurentPoly, xs: LaurentPoly, ys: LaurentPoly) -> LaurentPoly:
    out = LaurentPoly()
    for (i, j), c in f.items():
        out = out + (xs ** i * ys ** j).scale(c)
    return out


def normalize_pair(F: LaurentPoly, G: LaurentPoly, seed: int = 0, max_trials: int = 50):
    """Add constants and shear variables until (1,0), (0,1), (0,0) lie in N(F) and N(G).

    Returns ``(F, G, steps)``; each step is logged.  Shears have determinant 1,
    so the bracket is unchanged.
    """
    rng = random.Random(seed)
    steps = []

    def corners_ok(f, g):
        return all(newton_polygon(f).contains(p) and newton_polygon(g).contains(p) for p in CORNERS)

    for _ in range(max_trials):
        if corners_ok(F, G):
            return F, G, steps
        if not (F.constant_term() and G.constant_term()):
            cf = Fraction(rng.randint(1, 9))
            cg = Fraction(rng.randint(1, 9))
            F, G = F + cf, G + cg
            steps.append(f"add constants {cf} to F and {cg} to G")
            log.info(steps[-1])
            continue
        s = Fraction(rng.choice([1, -1, 2, -2, 3]))
        if rng.random() < 0.5:
            xs, ys, desc = X + Y.scale(s), Y, f"x -> x + {s}*y"
        else:
            xs, ys, desc = X, Y + X.scale(s), f"y -> y + {s}*x"
        F, G = substitute_linear(F, xs, ys), substitute_linear(G, xs, ys)
        steps.append(desc)
        log.info(desc)
    raise RuntimeError("normalization did not reach the corner condition")
