"""Square completion and the F = P^2 + u0 verification pipelines.

Given F whose Newton polygon has even vertices, ``complete_square`` finds the
P (unique up to sign) with supp(F - P^2) disjoint from N'' = N' + C/2, where
N' = N(F)/2 and C is a northeastern vertex.  The pipelines then check, level
by level, that R = F - P^2 is a constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .arith import LaurentPoly, bracket, divide_exact, to_text
from .errors import (
    HypothesisFailed,
    MembershipFailed,
    NonSquareLeading,
    NotAVertex,
    NotDivisible,
    OddVertex,
    PreconditionViolated,
    SweepViolation,
    VanishingViolated,
)
from .geometry import (
    Direction,
    NewtonPolygon,
    component,
    lattice_len,
    newton_polygon,
    northeastern_vertex,
    primitive_direction,
    w_deg,
)
from .hypotheses import PairHypotheses, generic_boundaries, infer_ratio
from .parallelograms import build_decomposition, enumerate_broken_lines

ZERO_RESULT = "zero"
INCONCLUSIVE = "inconclusive"


def rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass
class SquareCompletion:
    P: LaurentPoly
    R: LaurentPoly
    C: tuple
    solve_order: list

    def to_dict(self) -> dict:
        return {"P": to_text(self.P), "R": to_text(self.R), "C": list(self.C),
                "solve_order": [list(z) for z in self.solve_order]}


def _vertex_normal(N: NewtonPolygon, C) -> tuple:
    """A vector whose linear form is maximized over N only at the vertex C."""
    vs = list(N.vertices)
    if len(vs) == 1:
        return (1, 1)
    k = vs.index(C)
    if len(vs) == 2:
        other = vs[1 - k]
        return (C[0] - other[0], C[1] - other[1])
    prev, nxt = vs[k - 1], vs[(k + 1) % len(vs)]
    # counterclockwise order: outward normal of edge a->b is (b_y - a_y, a_x - b_x)
    n1 = (C[1] - prev[1], prev[0] - C[0])
    n2 = (nxt[1] - C[1], C[0] - nxt[0])
    return (n1[0] + n2[0], n1[1] + n2[1])


def solve_order(N: NewtonPolygon, C) -> list:
    """Lattice points of N/2, in decreasing order of a generic linear form maximized at C/2."""
    a, b = _vertex_normal(N, C)
    pts = N.scaled(Fraction(1, 2)).lattice_points()
    return sorted(pts, key=lambda z: (a * z[0] + b * z[1], z[0], z[1]), reverse=True)


def complete_square(F: LaurentPoly, C=None, order=None) -> SquareCompletion:
    N = newton_polygon(F)
    for v in N.vertices:
        if v[0] % 2 or v[1] % 2:
            raise OddVertex(f"vertex {v} of N(F) is not in (2Z)^2", vertex=list(v))
    C = northeastern_vertex(N) if C is None else tuple(C)
    if C not in N.vertices or C == (0, 0):
        raise NotAVertex(f"{C} is not a nonzero vertex of N(F)")
    zs = list(order) if order is not None else solve_order(N, C)
    z1 = (C[0] // 2, C[1] // 2)
    if not zs or zs[0] != z1:
        raise PreconditionViolated("solve order must start at C/2")
    p1 = rational_sqrt(F.coeff(*C))
    if p1 is None or p1 == 0:
        raise NonSquareLeading(f"coefficient {F.coeff(*C)} at {C} is not a nonzero rational square")
    p = {z1: p1}
    for zk in zs[1:]:
        t = (z1[0] + zk[0], z1[1] + zk[1])
        s = Fraction(0)
        for zi, ci in p.items():
            zj = (t[0] - zi[0], t[1] - zi[1])
            if zj in p:
                s += ci * p[zj]
        p[zk] = (F.coeff(*t) - s) / (2 * p1)
    P = LaurentPoly(p)
    return SquareCompletion(P, F - P * P, C, zs)


def excluded_region(F: LaurentPoly, C) -> NewtonPolygon:
    """N'' = N(F)/2 + C/2."""
    half = Fraction(1, 2)
    return newton_polygon(F).scaled(half).translated((Fraction(C[0]) * half, Fraction(C[1]) * half))


# ---------------------------------------------------------------------------
# single-level steps


def membership_step(F, P, R, w, h: int, k: int, e: int | None = None) -> LaurentPoly:
    """R_{d-h} / P_m as a Laurent polynomial, after checking the preconditions."""
    w = Direction.of(w)
    d, m = w_deg(F, w), w_deg(P, w)
    if d != 2 * m:
        raise PreconditionViolated("w-deg(F) must equal 2 w-deg(P)", which="degree", d=d, m=m)
    Pm = component(P, w, m)
    if component(F, w, d) != Pm * Pm:
        raise PreconditionViolated("F_d must equal P_m^2", which="leading")
    if not 1 <= h <= 2 * m - 1:
        raise PreconditionViolated(f"h={h} outside [1, {2 * m - 1}]", which="h_range")
    for ell in range(h):
        if component(R, w, d - ell):
            raise PreconditionViolated(f"R_(d-{ell}) is nonzero", which="lower_levels", ell=ell)
    if e is None:
        e = (2 * k + 1) * m
    top = d + e - w.u - w.v - 1
    if h * (k + 1) > top:
        raise PreconditionViolated(f"h(k+1)={h * (k + 1)} exceeds d+e-u-v-1={top}", which="inequality")
    Rdh = component(R, w, d - h)
    try:
        return divide_exact(Rdh, Pm, laurent=True)
    except NotDivisible as exc:
        raise MembershipFailed(f"R_(d-{h}) is not a Laurent multiple of P_m for w={w}",
                               w=[w.u, w.v], h=h) from exc


def len_vanish_step(Rdh: LaurentPoly, Pm: LaurentPoly, w=None) -> str:
    """Apply the length bound, assuming R_dh / P_m is a Laurent polynomial.

    A nonzero Laurent multiple of P_m has len >= len(P_m), so a shorter R_dh
    must vanish.  A nonzero R_dh violating the bound raises VanishingViolated.
    """
    lp = lattice_len(Pm, w)
    if Rdh.is_zero():
        return ZERO_RESULT
    lr = lattice_len(Rdh, w)
    if lr < lp:
        raise VanishingViolated(f"nonzero component with len {lr} < len(P_m) = {lp}",
                                len_R=lr, len_P=lp)
    return INCONCLUSIVE


# ---------------------------------------------------------------------------
# pipelines


@dataclass
class LevelCheck:
    w: Direction | None
    h: int | None
    mechanism: str  # "base", "membership", "direct", "precondition-unmet", "no-grading"
    empty: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"w": None if self.w is None else [self.w.u, self.w.v], "h": self.h,
                "mechanism": self.mechanism, "empty": self.empty, "detail": self.detail}


@dataclass
class SweepEntry:
    index: int
    name: str
    empty: bool
    checks: list = field(default_factory=list)
    offending: list = field(default_factory=list)
    vertices: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"index": self.index, "line": self.name, "empty": self.empty,
                "offending": [list(p) for p in self.offending],
                "vertices": [[str(c) for c in v] for v in self.vertices],
                "checks": [c.to_dict() for c in self.checks]}


@dataclass
class PipelineVerdict:
    generic_ok: bool
    hypotheses: PairHypotheses | None
    P: LaurentPoly | None = None
    R: LaurentPoly | None = None
    swept: list = field(default_factory=list)
    conclusion: str = "declined"
    bracket_zero: bool | None = None
    k: int | None = None
    notes: list = field(default_factory=list)

    @property
    def r_constant(self) -> bool:
        return self.conclusion == "R_constant"

    @property
    def u0(self) -> Fraction | None:
        return self.R.constant_term() if self.R is not None and self.r_constant else None

    @property
    def passed(self) -> bool:
        return self.r_constant and bool(self.bracket_zero)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "verify-thm",
            "generic_ok": self.generic_ok,
            "hypotheses": None if self.hypotheses is None else self.hypotheses.to_dict(),
            "P": None if self.P is None else to_text(self.P),
            "R": None if self.R is None else to_text(self.R),
            "u0": None if self.u0 is None else str(self.u0),
            "k": self.k,
            "conclusion": self.conclusion,
            "bracket_zero": self.bracket_zero,
            "swept": [s.to_dict() for s in self.swept],
            "notes": list(self.notes),
        }


def _gate(F, G, strict: bool, require: bool = True):
    a, b = infer_ratio(F, G)
    hyp = generic_boundaries(F, G, a, b)
    reasons = []
    if not require:
        return hyp, ((b - 1) // 2 if b % 2 and b > 1 else None), reasons
    if a != 2:
        reasons.append(f"a = {a}, only a = 2 is handled")
    if not hyp.generic_boundaries_ok:
        reasons.append("generic boundaries fail")
    if reasons:
        if strict:
            raise HypothesisFailed("; ".join(reasons), a=a, b=b)
        return hyp, None, reasons
    k = (b - 1) // 2 if b % 2 else None
    return hyp, k, []


def _finish(verdict: PipelineVerdict, F, G, R):
    support = R.support() - {(0, 0)}
    if any(not s.empty for s in verdict.swept) or support:
        bad = next((s for s in verdict.swept if not s.empty), None)
        verdict.conclusion = f"violation at T_{bad.index}" if bad else "violation"
    else:
        verdict.conclusion = "R_constant"
    verdict.bracket_zero = bracket(F, G).is_zero()
    return verdict


def _level(F, P, R, w: Direction, h: int, k: int | None, e: int) -> LevelCheck:
    """Check R_{d-h} = 0 through the membership/len mechanism and by inspection."""
    d = w_deg(F, w)
    Rdh = component(R, w, d - h)
    empty = Rdh.is_zero()
    if h == 0:
        return LevelCheck(w, h, "base", empty, "F_d = P_m^2" if empty else "leading forms differ")
    if k is None:
        return LevelCheck(w, h, "direct", empty, "b even: membership step unavailable")
    try:
        membership_step(F, P, R, w, h, k, e)
    except PreconditionViolated as exc:
        return LevelCheck(w, h, "direct", empty, f"precondition-unmet: {exc}")
    except MembershipFailed as exc:
        return LevelCheck(w, h, "membership", False, str(exc))
    Pm = component(P, w, w_deg(P, w))
    try:
        res = len_vanish_step(Rdh, Pm, w)
    except VanishingViolated as exc:
        return LevelCheck(w, h, "membership", False, str(exc))
    return LevelCheck(w, h, "membership", empty, res)


def rectangle_pipeline(F: LaurentPoly, G: LaurentPoly, strict: bool = False) -> PipelineVerdict:
    N = newton_polygon(F)
    vs = set(N.vertices)
    xs = max(v[0] for v in vs)
    ys = max(v[1] for v in vs)
    if vs != {(0, 0), (xs, 0), (xs, ys), (0, ys)} or xs == 0 or ys == 0:
        if strict:
            raise HypothesisFailed("N(F) is not a rectangle [0,2m']x[0,2m]")
        return PipelineVerdict(False, None, notes=["N(F) is not a rectangle"])
    hyp, k, reasons = _gate(F, G, strict)
    if reasons:
        return PipelineVerdict(False, hyp, notes=reasons)
    sq = complete_square(F, (xs, ys))
    P, R = sq.P, sq.R
    verdict = PipelineVerdict(True, hyp, P, R, k=k)
    for idx, w in enumerate((Direction(0, 1), Direction(1, 0)), start=1):
        d = w_deg(F, w)
        e = w_deg(G, w)
        checks = [_level(F, P, R, w, h, k, e) for h in range(d)]
        offending = sorted(p for p in R.support() if p != (0, 0) and w.deg(p) > 0)
        empty = all(c.empty for c in checks) and not offending
        verdict.swept.append(SweepEntry(idx, f"w={w}", empty, checks, offending))
    return _finish(verdict, F, G, R)


def _chain_normal(decomp, side: str, seg) -> Direction | None:
    """Outward normal of the chain edge parallel to the segment, if it is a direction."""
    chain = decomp.chain(side)
    dx, dy = seg[1][0] - seg[0][0], seg[1][1] - seg[0][1]
    vs = decomp.polygon.vertices
    cx = Fraction(sum(v[0] for v in vs), len(vs))
    cy = Fraction(sum(v[1] for v in vs), len(vs))
    for k in range(1, len(chain)):
        a, b = chain[k - 1], chain[k]
        ex, ey = b[0] - a[0], b[1] - a[1]
        if ex * dy - ey * dx != 0:
            continue
        n = (ey, -ex)
        if n[0] * (a[0] - cx) + n[1] * (a[1] - cy) < 0:
            n = (-n[0], -n[1])
        return primitive_direction((int(n[0]), int(n[1])))
    return None


def theorem_pipeline(F: LaurentPoly, G: LaurentPoly, strict: bool = False,
                     require_hypotheses: bool = True) -> PipelineVerdict:
    """Sweep the broken lines and check that F - P^2 is a constant.

    With ``require_hypotheses=False`` the sweep runs even when the pair fails
    the hypotheses; this is how violations are exercised in tests.
    """
    hyp, k, reasons = _gate(F, G, strict, require_hypotheses)
    if reasons:
        return PipelineVerdict(False, hyp, notes=reasons)
    N = newton_polygon(F)
    C = northeastern_vertex(N)
    sq = complete_square(F, C)
    P, R = sq.P, sq.R
    verdict = PipelineVerdict(bool(hyp.generic_boundaries_ok), hyp, P, R, k=k)
    if k is None:
        verdict.notes.append("b is even: membership steps unavailable, direct checks only")
    decomp = build_decomposition(N, C)
    if decomp.swapped:
        verdict.notes.append("A-chain had a single edge; chains swapped")
    lines = enumerate_broken_lines(decomp, F.support())
    rsupp = [p for p in R.support() if p != (0, 0)]
    for idx, line in enumerate(lines, start=1):
        checks = []
        seen = set()
        for seg in line.segments() or [(line.anchor, line.anchor)]:
            w = _chain_normal(decomp, line.side, seg)
            if w is None:
                checks.append(LevelCheck(None, None, "no-grading", True, "segment normal is not a direction"))
                continue
            level = Fraction(w.deg(seg[0]))
            if level.denominator != 1:
                checks.append(LevelCheck(w, None, "direct", True, "segment off the lattice levels"))
                continue
            h = w_deg(F, w) - int(level)
            if (w, h) in seen:
                continue
            seen.add((w, h))
            checks.append(_level(F, P, R, w, h, k, w_deg(G, w)))
        offending = sorted(p for p in rsupp if line.contains(p))
        empty = not offending and all(c.empty or c.h is None for c in checks)
        if offending and strict:
            raise SweepViolation(f"support of R meets T_{idx} at {offending[0]}",
                                 i=idx, point=list(offending[0]))
        verdict.swept.append(SweepEntry(idx, line.name, empty, checks, offending, list(line.vertices)))
    return _finish(verdict, F, G, R)
