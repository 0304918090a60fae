"""Newton polygons, w-gradings and small exact convex-geometry helpers.

Points are tuples of ints or Fractions; nothing here uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .arith import LaurentPoly
from .errors import NotHomogeneous, ZeroPolynomial

Point = tuple


@dataclass(frozen=True, order=True)
class Direction:
    """Primitive grading vector: x^i y^j has degree u*i + v*j."""

    u: int
    v: int

    def __post_init__(self):
        if not (self.u > 0 or self.v > 0):
            raise ValueError(f"direction needs u > 0 or v > 0, got {(self.u, self.v)}")
        if gcd(abs(self.u), abs(self.v)) != 1:
            raise ValueError(f"direction {(self.u, self.v)} is not primitive")

    @classmethod
    def of(cls, w) -> "Direction":
        return w if isinstance(w, Direction) else cls(*w)

    def deg(self, p) -> int:
        return self.u * p[0] + self.v * p[1]

    @property
    def step(self) -> tuple[int, int]:
        """Primitive lattice step along a line of constant w-degree."""
        return (self.v, -self.u)

    def __iter__(self):
        return iter((self.u, self.v))

    def __str__(self):
        return f"({self.u},{self.v})"


def primitive_direction(n: tuple[int, int]) -> Direction | None:
    g = gcd(abs(n[0]), abs(n[1]))
    u, v = n[0] // g, n[1] // g
    if u > 0 or v > 0:
        return Direction(u, v)
    return None


# gradings


def support(f: LaurentPoly) -> set:
    return f.support()


def w_deg(f: LaurentPoly, w) -> int:
    if f.is_zero():
        raise ZeroPolynomial("w-degree of the zero polynomial")
    w = Direction.of(w)
    return max(w.deg(e) for e in f.support())


def leading_form(f: LaurentPoly, w) -> LaurentPoly:
    w = Direction.of(w)
    d = w_deg(f, w)
    return LaurentPoly({e: c for e, c in f.items() if w.deg(e) == d})


def component(f: LaurentPoly, w, n: int) -> LaurentPoly:
    """The w-homogeneous part of f of degree n (possibly zero)."""
    w = Direction.of(w)
    return LaurentPoly({e: c for e, c in f.items() if w.deg(e) == n})


@dataclass(frozen=True)
class WDecomp:
    w: Direction
    components: dict  # degree -> nonzero homogeneous LaurentPoly

    @property
    def degree(self) -> int:
        return max(self.components)

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.components.get(n, LaurentPoly())

    def total(self) -> LaurentPoly:
        out = LaurentPoly()
        for c in self.components.values():
            out = out + c
        return out


def decompose(f: LaurentPoly, w) -> WDecomp:
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    w = Direction.of(w)
    buckets: dict[int, dict] = {}
    for e, c in f.items():
        buckets.setdefault(w.deg(e), {})[e] = c
    comps = {n: LaurentPoly(t) for n, t in sorted(buckets.items(), reverse=True)}
    return WDecomp(w, comps)


def is_homogeneous(f: LaurentPoly, w) -> bool:
    w = Direction.of(w)
    return len({w.deg(e) for e in f.support()}) <= 1


def lattice_len(h: LaurentPoly, w=None) -> int:
    """One less than the number of lattice points on the segment N(h)."""
    if h.is_zero():
        raise ZeroPolynomial("len of the zero polynomial")
    pts = sorted(h.support())
    if w is not None and not is_homogeneous(h, w):
        raise NotHomogeneous(f"not homogeneous for w={tuple(w)}")
    a, b = pts[0], pts[-1]
    for p in pts[1:-1]:
        if cross(a, b, p) != 0:
            raise NotHomogeneous("support is not collinear")
    return segment_len(a, b)


def segment_len(a, b) -> int:
    return gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


# polygons


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list:
    """Strictly convex hull, counterclockwise from the lexicographically smallest point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))

    @classmethod
    def from_points(cls, points) -> "NewtonPolygon":
        pts = list(points)
        if not pts:
            raise ZeroPolynomial("empty support has no Newton polygon")
        return cls(tuple(convex_hull(pts)))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self):
        vs = self.vertices
        n = len(vs)
        if n < 2:
            return []
        if n == 2:
            return [(vs[0], vs[1]), (vs[1], vs[0])]
        return [(vs[k], vs[(k + 1) % n]) for k in range(n)]

    def contains(self, p) -> bool:
        return point_in_convex(self.vertices, p)

    def scaled(self, s) -> "NewtonPolygon":
        s = Fraction(s)
        return NewtonPolygon(tuple(_norm_pt((v[0] * s, v[1] * s)) for v in self.vertices))

    def translated(self, t) -> "NewtonPolygon":
        return NewtonPolygon(tuple(_norm_pt((v[0] + t[0], v[1] + t[1])) for v in self.vertices))

    def lattice_points(self) -> list:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        x0, x1 = _ceil(min(xs)), _floor(max(xs))
        y0, y1 = _ceil(min(ys)), _floor(max(ys))
        return [(i, j) for i in range(x0, x1 + 1) for j in range(y0, y1 + 1)
                if self.contains((i, j))]

    def edge_normals(self) -> list:
        """Outward primitive normals of the edges that are directions (u>0 or v>0)."""
        out = []
        for a, b in self.edges():
            # counterclockwise order: the outward normal is the right-hand perpendicular
            n = (b[1] - a[1], a[0] - b[0])
            w = primitive_direction((int(n[0]), int(n[1])))
            if w is not None and w not in out:
                out.append(w)
        return out

    def area(self) -> Fraction:
        return polygon_area(self.vertices)


def _norm_pt(p):
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in p)


def _floor(c):
    return c.numerator // c.denominator if isinstance(c, Fraction) else int(c)


def _ceil(c):
    return -((-c.numerator) // c.denominator) if isinstance(c, Fraction) else int(c)


def point_in_convex(vertices: Sequence, p) -> bool:
    n = len(vertices)
    if n == 0:
        return False
    if n == 1:
        return tuple(p) == tuple(vertices[0])
    if n == 2:
        return on_segment(vertices[0], vertices[1], p)
    for k in range(n):
        if cross(vertices[k], vertices[(k + 1) % n], p) < 0:
            return False
    return True


def on_segment(a, b, p) -> bool:
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def polygon_area(vertices: Sequence) -> Fraction:
    """Signed shoelace area (positive for counterclockwise order)."""
    n = len(vertices)
    s = Fraction(0)
    for k in range(n):
        a, b = vertices[k], vertices[(k + 1) % n]
        s += Fraction(a[0]) * b[1] - Fraction(b[0]) * a[1]
    return s / 2


def newton_polygon(f: LaurentPoly) -> NewtonPolygon:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return NewtonPolygon.from_points(f.support())


def similar_with_ratio(nf: NewtonPolygon, ng: NewtonPolygon, a: int, b: int) -> bool:
    """True iff (b/a) * N(F) == N(G), with the origin as centre."""
    scaled = {(Fraction(v[0]) * b / a, Fraction(v[1]) * b / a) for v in nf.vertices}
    return scaled == {(Fraction(v[0]), Fraction(v[1])) for v in ng.vertices}


def northeastern_vertex(n: NewtonPolygon):
    """A vertex not dominated coordinatewise by any other; lexicographically largest wins."""
    vs = n.vertices
    good = [c for c in vs
            if not any(v != c and v[0] >= c[0] and v[1] >= c[1] for v in vs)]
    return max(good)


def convex_intersection(P: Sequence, Q: Sequence) -> list:
    """Exact intersection of two closed convex polygons, as a hull vertex list.

    The result has 0 (empty), 1 (point), 2 (segment) or more vertices.
    """
    P, Q = convex_hull(P), convex_hull(Q)
    if len(Q) < 3:
        P, Q = Q, P
    if len(Q) < 3:
        return _lowdim_intersection(P, Q)
    pts = [tuple(Fraction(c) for c in p) for p in P]
    for k in range(len(Q)):
        a, b = Q[k], Q[(k + 1) % len(Q)]
        if not pts:
            break
        out = []
        n = len(pts)
        for m in range(n):
            cur, nxt = pts[m], pts[(m + 1) % n]
            c1, c2 = cross(a, b, cur), cross(a, b, nxt)
            if c1 >= 0:
                out.append(cur)
            if (c1 > 0 > c2) or (c1 < 0 < c2):
                t = Fraction(c1) / (c1 - c2)
                out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
        pts = out
    return [_norm_pt(p) for p in convex_hull(pts)]


def _lowdim_intersection(P, Q) -> list:
    # P and Q are points or segments
    cands = [p for p in P if point_in_convex(Q, p)] + [q for q in Q if point_in_convex(P, q)]
    if len(P) == 2 and len(Q) == 2:
        (a, b), (c, d) = P, Q
        ca, cb = cross(c, d, a), cross(c, d, b)
        if ca != cb:
            s = Fraction(ca) / (ca - cb)
            p = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
            if on_segment(a, b, p) and on_segment(c, d, p):
                cands.append(p)
    return [_norm_pt(p) for p in convex_hull(tuple(Fraction(c) for c in p) for p in cands)]
