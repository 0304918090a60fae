"""Parallelogram cells and broken lines attached to a northeastern vertex.

Let N be a lattice polygon with the origin O as a vertex and C a northeastern
vertex.  The boundary splits into the A-chain O=A_0, A_1, ..., A_alpha=C
(clockwise from O) and the B-chain O=B_0, ..., B_beta=C (counterclockwise).
With v_k = (A_k - A_{k-1})/2 and A_ij = (A_i + A_j)/2, the cell P_ij
(1 <= i < j <= alpha) is A_{i-1,j-1} + s v_i + t v_j, 0 <= s, t <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AnchorOutOfRange, NotAVertex
from .geometry import NewtonPolygon, cross, on_segment, polygon_area

HALF = Fraction(1, 2)


def _pt(x, y):
    return (Fraction(x), Fraction(y))


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _mul(a, s):
    return (a[0] * s, a[1] * s)


def _solve2(a, b, rhs):
    """Solve s*a + t*b = rhs; None when a, b are parallel."""
    det = a[0] * b[1] - a[1] * b[0]
    if det == 0:
        return None
    s = Fraction(rhs[0] * b[1] - rhs[1] * b[0], 1) / det
    t = Fraction(a[0] * rhs[1] - a[1] * rhs[0], 1) / det
    return s, t


@dataclass(frozen=True)
class Cell:
    """Parallelogram P_ij (or P'_ij on the B side)."""

    side: str
    i: int
    j: int
    base: tuple  # A_{i-1,j-1}
    vi: tuple
    vj: tuple

    @property
    def vertices(self) -> tuple:
        # A_{i-1,j-1}, A_{i,j-1}, A_{ij}, A_{i-1,j}
        b = self.base
        return (b, _add(b, self.vi), _add(_add(b, self.vi), self.vj), _add(b, self.vj))

    @property
    def edges(self) -> dict:
        a, b, c, d = self.vertices
        return {"west": (a, b), "north": (b, c), "east": (c, d), "south": (d, a)}

    def coords(self, p):
        """(s, t) with p = base + s v_i + t v_j."""
        return _solve2(self.vi, self.vj, _sub(p, self.base))

    def contains(self, p) -> bool:
        st = self.coords(p)
        return st is not None and 0 <= st[0] <= 1 and 0 <= st[1] <= 1

    def area(self) -> Fraction:
        return abs(polygon_area(self.vertices))

    @property
    def name(self) -> str:
        return f"P{'' if self.side == 'A' else chr(39)}_{self.i}{self.j}"


@dataclass(frozen=True)
class ParallelogramDecomp:
    polygon: NewtonPolygon
    C: tuple
    A: tuple  # A_0 .. A_alpha
    B: tuple  # B_0 .. B_beta
    swapped: bool = False

    @property
    def alpha(self) -> int:
        return len(self.A) - 1

    @property
    def beta(self) -> int:
        return len(self.B) - 1

    @property
    def C_half(self) -> tuple:
        return _mul(self.C, HALF)

    def chain(self, side: str) -> tuple:
        return self.A if side == "A" else self.B

    def v(self, side: str, k: int) -> tuple:
        ch = self.chain(side)
        return _mul(_sub(ch[k], ch[k - 1]), HALF)

    def mid(self, side: str, i: int, j: int) -> tuple:
        ch = self.chain(side)
        return _mul(_add(ch[i], ch[j]), HALF)

    def cell(self, side: str, i: int, j: int) -> Cell:
        return Cell(side, i, j, self.mid(side, i - 1, j - 1), self.v(side, i), self.v(side, j))

    def cells(self, side: str = "A") -> list[Cell]:
        n = len(self.chain(side)) - 1
        return [self.cell(side, i, j) for i in range(1, n) for j in range(i + 1, n + 1)]

    def union_polygon(self, side: str = "A") -> list:
        """A_01 A_02 .. A_0n A_1n .. A_{n-1,n} A_{n-1} .. A_1."""
        n = len(self.chain(side)) - 1
        pts = [self.mid(side, 0, j) for j in range(1, n + 1)]
        pts += [self.mid(side, i, n) for i in range(1, n)]
        pts += [self.mid(side, i, i) for i in range(n - 1, 0, -1)]
        return pts

    @property
    def half_polygon(self) -> NewtonPolygon:
        return self.polygon.scaled(HALF)

    @property
    def shifted_half_polygon(self) -> NewtonPolygon:
        return self.half_polygon.translated(self.C_half)

    def side_of(self, p) -> str | None:
        c = cross((0, 0), self.C, p)
        if c == 0:
            return None
        ref = cross((0, 0), self.C, self.A[1])
        return "A" if (c > 0) == (ref > 0) else "B"

    def to_dict(self) -> dict:
        return {
            "C": _json_pt(self.C),
            "C_half": _json_pt(self.C_half),
            "alpha": self.alpha,
            "beta": self.beta,
            "swapped": self.swapped,
            "A": [_json_pt(p) for p in self.A],
            "B": [_json_pt(p) for p in self.B],
            "cells": [{"name": c.name, "vertices": [_json_pt(v) for v in c.vertices]}
                      for side in "AB" for c in self.cells(side)],
        }


def _json_pt(p):
    return [[Fraction(c).numerator, Fraction(c).denominator] for c in p]


def build_decomposition(N: NewtonPolygon, C) -> ParallelogramDecomp:
    vs = list(N.vertices)
    C = tuple(C)
    if C not in vs:
        raise NotAVertex(f"{C} is not a vertex of the polygon")
    if (0, 0) not in vs:
        raise NotAVertex("the origin must be a vertex of the polygon")
    if C == (0, 0):
        raise NotAVertex("C must differ from the origin")
    k0 = vs.index((0, 0))
    vs = vs[k0:] + vs[:k0]
    kc = vs.index(C)
    B = tuple(vs[: kc + 1])
    A = tuple([vs[0]] + vs[kc:][::-1])
    swapped = False
    if len(A) == 2 and len(B) > 2:
        A, B, swapped = B, A, True
    if len(A) == 2:
        raise NotAVertex("degenerate polygon: both chains are the segment OC")
    A = tuple(_pt(*p) for p in A)
    B = tuple(_pt(*p) for p in B)
    return ParallelogramDecomp(N, _pt(*C), A, B, swapped)


# ---------------------------------------------------------------------------
# broken lines


@dataclass(frozen=True)
class BrokenLine:
    anchor: tuple
    side: str
    vertices: tuple
    scale: Fraction  # D = scale * C
    kind: str  # "upper" for D on C'C, "scaled" for D on OC'

    def segments(self) -> list:
        vs = self.vertices
        return [(vs[k], vs[k + 1]) for k in range(len(vs) - 1)]

    def contains(self, p) -> bool:
        p = (Fraction(p[0]), Fraction(p[1]))
        if len(self.vertices) == 1:
            return p == self.vertices[0]
        return any(on_segment(a, b, p) for a, b in self.segments())

    @property
    def name(self) -> str:
        return ("T" if self.side == "A" else "T'") + f"_D(D={_fmt(self.anchor)})"

    def to_dict(self) -> dict:
        return {"side": self.side, "kind": self.kind, "anchor": _json_pt(self.anchor),
                "vertices": [_json_pt(v) for v in self.vertices]}


def _fmt(p):
    return "(" + ",".join(str(c) for c in p) + ")"


def _anchor_scale(decomp: ParallelogramDecomp, D) -> Fraction:
    C = decomp.C
    if cross((0, 0), C, D) != 0:
        raise AnchorOutOfRange(f"{_fmt(D)} is not on the line OC")
    mu = Fraction(D[0]) / C[0] if C[0] else Fraction(D[1]) / C[1]
    if not 0 < mu <= 1:
        raise AnchorOutOfRange(f"{_fmt(D)} is not on the segment OC minus O")
    return mu


def _dedupe(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return tuple(out)


def broken_line(decomp: ParallelogramDecomp, D, side: str = "A") -> BrokenLine:
    D = (Fraction(D[0]), Fraction(D[1]))
    mu = _anchor_scale(decomp, D)
    chain = decomp.chain(side)
    n = len(chain) - 1
    if mu <= HALF or n < 2:
        verts = [_mul(chain[k], mu) for k in range(n, 0, -1)]
        return BrokenLine(D, side, _dedupe(verts), mu, "scaled")
    vn = decomp.v(side, n)
    best = None
    for r in range(1, n):
        sol = _solve2(vn, decomp.v(side, r), _sub(D, decomp.mid(side, r - 1, n)))
        if sol is None:
            continue
        tau, s = sol
        if tau < 0 or not 0 <= s <= 1:
            continue
        if s > 0:
            best = (r, s)
            break
        if best is None:
            best = (r, s)
    if best is None:
        raise AnchorOutOfRange(f"no cell column entry found for D={_fmt(D)}")
    r, s = best
    vr = decomp.v(side, r)
    verts = [D] + [_add(decomp.mid(side, r - 1, k), _mul(vr, s)) for k in range(n - 1, r - 1, -1)]
    return BrokenLine(D, side, _dedupe(verts), mu, "upper")


def _hit_diagonal(C, q, v) -> Fraction:
    """mu with q + tau v = mu C for some tau."""
    den = cross((0, 0), v, C)
    tau = -Fraction(cross((0, 0), q, C)) / den
    p = _add(q, _mul(v, tau))
    return Fraction(p[0]) / C[0] if C[0] else Fraction(p[1]) / C[1]


def gauge(decomp: ParallelogramDecomp, side: str, p) -> Fraction:
    """Least lam with p in lam * (O, chain[1], ..., C) for p on that side of OC."""
    chain = decomp.chain(side)
    best = Fraction(0)
    for k in range(2, len(chain)):
        a, b = chain[k - 1], chain[k]
        nrm = (b[1] - a[1], a[0] - b[0])
        h = nrm[0] * a[0] + nrm[1] * a[1]
        if h < 0:
            nrm, h = (-nrm[0], -nrm[1]), -h
        val = Fraction(nrm[0] * p[0] + nrm[1] * p[1]) / h
        best = max(best, val)
    return best


def locate(decomp: ParallelogramDecomp, p) -> tuple[str, Fraction]:
    """(side, mu) of the broken line through a point p of N off the diagonal."""
    side = decomp.side_of(p)
    if side is None:
        raise AnchorOutOfRange(f"{_fmt(p)} lies on OC")
    p = (Fraction(p[0]), Fraction(p[1]))
    lam = gauge(decomp, side, p)
    if lam <= HALF:
        return side, lam
    n = len(decomp.chain(side)) - 1
    vn = decomp.v(side, n)
    for cell in decomp.cells(side):
        if cell.j == n:
            continue
        st = cell.coords(p)
        if st is not None and 0 <= st[0] <= 1 and 0 <= st[1] <= 1:
            start = _add(decomp.mid(side, cell.i - 1, n - 1), _mul(cell.vi, st[0]))
            return side, _hit_diagonal(decomp.C, start, vn)
    return side, _hit_diagonal(decomp.C, p, vn)


def enumerate_broken_lines(decomp: ParallelogramDecomp, support: Sequence | None = None) -> list[BrokenLine]:
    """Broken lines through every lattice point of N other than O, ordered for the sweep.

    Order: decreasing distance of the anchor from O; on ties the A-side line first.
    """
    N = decomp.polygon
    keys: set = set()
    for p in N.lattice_points():
        if p == (0, 0):
            continue
        side = decomp.side_of(p)
        if side is None:
            mu = Fraction(p[0]) / decomp.C[0] if decomp.C[0] else Fraction(p[1]) / decomp.C[1]
            for sd in "AB":
                if len(decomp.chain(sd)) > 2:
                    keys.add((sd, mu))
            continue
        keys.add(locate(decomp, p))
    if support is not None:
        for p in support:
            if tuple(p) != (0, 0) and not N.contains(p):
                raise AnchorOutOfRange(f"support point {_fmt(p)} lies outside the polygon")
    order = sorted(keys, key=lambda k: (-k[1], k[0]))
    return [broken_line(decomp, _mul(decomp.C, mu), side) for side, mu in order]
