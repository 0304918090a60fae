"""Static SVG drawings of lattice polygons, cells and broken lines.

Rational coordinates are converted to decimals only at output time.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

UNIT = 40
MARGIN = 30


def _num(c) -> str:
    s = f"{float(Fraction(c)):.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class Canvas:
    """Lattice-coordinate canvas; y grows upward as in the usual lattice drawings."""

    def __init__(self, xmax, ymax, xmin=0, ymin=0):
        self.xmin, self.ymin = min(0, xmin), min(0, ymin)
        self.xmax, self.ymax = max(1, xmax), max(1, ymax)
        self.items: list[str] = []

    def _xy(self, p):
        return (MARGIN + (Fraction(p[0]) - self.xmin) * UNIT,
                MARGIN + (self.ymax - Fraction(p[1])) * UNIT)

    def _pts(self, pts) -> str:
        return " ".join(f"{_num(x)},{_num(y)}" for x, y in map(self._xy, pts))

    def grid(self):
        for i in range(int(self.xmin), int(self.xmax) + 1):
            a, b = self._xy((i, self.ymin)), self._xy((i, self.ymax))
            self.items.append(f'<line x1="{_num(a[0])}" y1="{_num(a[1])}" x2="{_num(b[0])}" '
                              f'y2="{_num(b[1])}" stroke="#ddd" stroke-width="1"/>')
        for j in range(int(self.ymin), int(self.ymax) + 1):
            a, b = self._xy((self.xmin, j)), self._xy((self.xmax, j))
            self.items.append(f'<line x1="{_num(a[0])}" y1="{_num(a[1])}" x2="{_num(b[0])}" '
                              f'y2="{_num(b[1])}" stroke="#ddd" stroke-width="1"/>')
        return self

    def polygon(self, pts, stroke="black", fill="none", width=2, cls=""):
        c = f' class="{cls}"' if cls else ""
        if len(pts) == 1:
            return self.point(pts[0], r=4, fill=stroke)
        self.items.append(f'<polygon{c} points="{self._pts(pts)}" stroke="{stroke}" '
                          f'fill="{fill}" stroke-width="{width}"/>')
        return self

    def polyline(self, pts, stroke="red", width=2, cls=""):
        c = f' class="{cls}"' if cls else ""
        self.items.append(f'<polyline{c} points="{self._pts(pts)}" stroke="{stroke}" '
                          f'fill="none" stroke-width="{width}"/>')
        return self

    def point(self, p, r=3, fill="black"):
        x, y = self._xy(p)
        self.items.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{r}" fill="{fill}"/>')
        return self

    def label(self, p, text, dx=5, dy=-5):
        x, y = self._xy(p)
        self.items.append(f'<text x="{_num(x + dx)}" y="{_num(y + dy)}" font-size="12" '
                          f'font-family="sans-serif">{escape(text)}</text>')
        return self

    def render(self) -> str:
        w = (self.xmax - self.xmin) * UNIT + 2 * MARGIN
        h = (self.ymax - self.ymin) * UNIT + 2 * MARGIN
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{_num(w)}" height="{_num(h)}" viewBox="0 0 {_num(w)} {_num(h)}">\n')
        return head + "\n".join(self.items) + "\n</svg>\n"


def _canvas_for(points) -> Canvas:
    xs = [Fraction(p[0]) for p in points] or [0]
    ys = [Fraction(p[1]) for p in points] or [0]
    return Canvas(max(xs), max(ys), min(xs), min(ys)).grid()


def newton_svg(polygon, support=()) -> str:
    pts = list(polygon.vertices) + list(support)
    cv = _canvas_for(pts)
    cv.polygon(list(polygon.vertices), fill="#cde", cls="hull")
    for p in sorted(support):
        cv.point(p)
    for v in polygon.vertices:
        cv.point(v, r=4, fill="#036")
    return cv.render()


def decomposition_svg(decomp, lines=()) -> str:
    cv = _canvas_for(decomp.polygon.vertices)
    cv.polygon(list(decomp.polygon.vertices), fill="none", cls="hull")
    cv.polygon(list(decomp.half_polygon.vertices), stroke="#369", fill="#def", width=1, cls="half")
    cv.polygon(list(decomp.shifted_half_polygon.vertices), stroke="#963", fill="#fed", width=1,
               cls="shifted-half")
    for side, colour in (("A", "#2a2"), ("B", "#a2a")):
        for cell in decomp.cells(side):
            cv.polygon(list(cell.vertices), stroke=colour, width=1, cls="cell")
    cv.polyline([(0, 0), decomp.C], stroke="#888", width=1)
    for line in lines:
        cv.polyline(list(line.vertices), stroke="red", width=2, cls="broken-line")
    cv.label(decomp.C, "C")
    return cv.render()


def verdict_svg(F_polygon, decomp, lines, offending=()) -> str:
    cv_svg = decomposition_svg(decomp, lines)
    if not offending:
        return cv_svg
    cv = _canvas_for(F_polygon.vertices)
    extra = []
    for p in offending:
        x, y = cv._xy(p)
        extra.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="5" fill="none" stroke="red"/>')
    return cv_svg.replace("\n</svg>\n", "\n" + "\n".join(extra) + "\n</svg>\n")
