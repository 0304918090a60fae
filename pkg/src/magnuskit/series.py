"""Truncated t-series whose coefficients are fractions num / H^k.

A w-homogeneous form F_d is split as ``rho * H**r`` with ``H`` integral,
primitive and ``r`` maximal.  Rational powers of a series with leading
coefficient F_d are computed in the rho-normalized form ``rho**-A * S**A``,
which keeps every coefficient inside Q[x, y][1/H].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

from .arith import ONE, ZERO, LaurentPoly, as_rat, bracket, content_normalize, divide_exact
from .errors import NonIntegralRootPower, NotDivisible, NotHomogeneous, ZeroLeading
from .geometry import Direction, component, is_homogeneous, w_deg

# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _deriv(p):
    return _trim([k * p[k] for k in range(1, len(p))])


def _monic(p):
    p = _trim(p)
    lc = p[-1]
    return [c / lc for c in p]


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lb
        q[shift] = c
        for k, bk in enumerate(b):
            r[shift + k] -= c * bk
        r = _trim(r)
    return _trim(q), r


def _ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a) if a else []


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def sqf_list(p: Sequence) -> tuple[Fraction, list]:
    """Yun's squarefree decomposition over Q.

    Returns ``(lc, [(s_i, i), ...])`` with monic squarefree, pairwise coprime
    ``s_i`` of positive degree such that ``p = lc * prod s_i**i``.
    """
    p = _trim([Fraction(c) for c in p])
    if not p:
        raise ValueError("zero polynomial")
    lc = p[-1]
    f = _monic(p)
    if len(f) == 1:
        return lc, []
    fp = _deriv(f)
    a0 = _ugcd(f, fp)
    b = _divmod(f, a0)[0]
    c = _divmod(fp, a0)[0]
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _ugcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = _sub(c, _deriv(b))
        i += 1
    return lc, out


# ---------------------------------------------------------------------------
# homogeneous forms <-> one-variable polynomials


def to_univariate(f: LaurentPoly, w) -> tuple[tuple[int, int], list]:
    """Write a w-homogeneous f as x^b0 y^c0 * p(x^v y^-u); returns ((b0, c0), p)."""
    w = Direction.of(w)
    if not is_homogeneous(f, w):
        raise NotHomogeneous(f"not homogeneous for w={w}")
    s = w.step
    base = min(f.support(), key=lambda e: e[0] * s[0] + e[1] * s[1])
    norm = s[0] * s[0] + s[1] * s[1]
    coeffs: dict[int, Fraction] = {}
    for e, c in f.items():
        k = ((e[0] - base[0]) * s[0] + (e[1] - base[1]) * s[1]) // norm
        coeffs[k] = c
    p = [coeffs.get(k, Fraction(0)) for k in range(max(coeffs) + 1)]
    return base, p


def from_univariate(base, p, w) -> LaurentPoly:
    s = Direction.of(w).step
    return LaurentPoly({(base[0] + k * s[0], base[1] + k * s[1]): c
                        for k, c in enumerate(p) if c})


def _upow(p, n):
    out = [Fraction(1)]
    for _ in range(n):
        out = _mul(out, p)
    return out


@dataclass(frozen=True)
class RootData:
    r: int
    rho: Fraction
    H: LaurentPoly
    w: Direction
    # squarefree multiplicities of the non-monomial part
    multiplicities: tuple = ()
    monomial: tuple = (0, 0)

    @property
    def form(self) -> LaurentPoly:
        return (self.H ** self.r).scale(self.rho)


def root_extract(fd: LaurentPoly, w) -> RootData:
    """Split a w-homogeneous form as rho * H**r with r maximal."""
    w = Direction.of(w)
    if fd.is_zero():
        raise ZeroLeading("root of the zero form")
    if not is_homogeneous(fd, w):
        raise NotHomogeneous(f"not homogeneous for w={w}")
    if fd.is_constant():
        # every root of a constant exists; H = 1 admits any rational power
        return RootData(1, fd.constant_term(), ONE, w)
    imin, jmin = fd.min_exponents()
    _, p = to_univariate(fd, w)
    lc, factors = sqf_list(p)
    r = gcd(abs(imin), abs(jmin))
    for _, mult in factors:
        r = gcd(r, mult)
    hz = [Fraction(1)]
    for s, mult in factors:
        hz = _mul(hz, _upow(s, mult // r))
    nonmono = from_univariate((0, 0), hz, w)
    ni, nj = nonmono.min_exponents()
    H = nonmono.shift(imin // r - ni, jmin // r - nj)
    _, H = content_normalize(H)
    Hr = H ** r
    (e, c) = Hr.leading()
    rho = fd.coeff(*e) / c
    if Hr.scale(rho) != fd:
        raise AssertionError("root extraction failed to reproduce the form")
    return RootData(r, rho, H, w, tuple(m for _, m in factors), (imin, jmin))


# ---------------------------------------------------------------------------
# num / H^k


_POW_CACHE: dict = {}


def hpow(H: LaurentPoly, n: int) -> LaurentPoly:
    if n == 0:
        return ONE
    key = (H, n)
    got = _POW_CACHE.get(key)
    if got is None:
        if len(_POW_CACHE) > 4096:
            _POW_CACHE.clear()
        got = H * hpow(H, n - 1)
        _POW_CACHE[key] = got
    return got


@dataclass(frozen=True, eq=False)
class HFrac:
    """The fraction num / H**k."""

    num: LaurentPoly
    k: int = 0
    H: LaurentPoly = ONE

    @classmethod
    def of(cls, value, H: LaurentPoly = ONE) -> "HFrac":
        if isinstance(value, HFrac):
            return value
        if not isinstance(value, LaurentPoly):
            value = LaurentPoly.const(value)
        return cls(value, 0, H)

    def _align(self, other: "HFrac") -> LaurentPoly:
        if self.k and other.k and self.H != other.H:
            raise ValueError("fractions over different H")
        if self.k:
            return self.H
        if other.k:
            return other.H
        return self.H if self.H != ONE else other.H

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = HFrac.of(other, self.H)
        H = self._align(other)
        k = max(self.k, other.k)
        num = self.num * hpow(H, k - self.k) + other.num * hpow(H, k - other.k)
        return HFrac(num, k, H)

    __radd__ = __add__

    def __neg__(self):
        return HFrac(-self.num, self.k, self.H)

    def __sub__(self, other):
        return self + (-HFrac.of(other, self.H))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HFrac(self.num.scale(other), self.k, self.H)
        other = HFrac.of(other, self.H)
        H = self._align(other)
        return HFrac(self.num * other.num, self.k + other.k, H)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = HFrac.of(other, self.H)
        if not isinstance(other, HFrac):
            return NotImplemented
        H = self._align(other)
        return self.num * hpow(H, other.k) == other.num * hpow(H, self.k)

    def __hash__(self):
        raise TypeError("HFrac is unhashable; equality is by cross-multiplication")

    def reduce(self) -> "HFrac":
        num, k = self.num, self.k
        if num.is_zero():
            return HFrac(ZERO, 0, self.H)
        while k:
            try:
                num = divide_exact(num, self.H)
            except NotDivisible:
                break
            k -= 1
        return HFrac(num, k, self.H)

    def to_poly(self) -> LaurentPoly:
        red = self.reduce()
        if red.k:
            raise NotDivisible("fraction does not reduce to a Laurent polynomial")
        return red.num

    def partials(self) -> tuple["HFrac", "HFrac"]:
        nx, ny = self.num.diff_x(), self.num.diff_y()
        if not self.k:
            return HFrac(nx, 0, self.H), HFrac(ny, 0, self.H)
        H = self.H
        hx, hy = H.diff_x(), H.diff_y()
        k = self.k
        return (HFrac(nx * H - self.num * hx * k, k + 1, H),
                HFrac(ny * H - self.num * hy * k, k + 1, H))

    def __str__(self):
        red = self.reduce()
        if not red.k:
            return str(red.num)
        return f"({red.num})/({red.H})^{red.k}"


def hfrac_bracket(f: HFrac, g: HFrac) -> HFrac:
    fx, fy = f.partials()
    gx, gy = g.partials()
    return fx * gy - gx * fy


# ---------------------------------------------------------------------------
# truncated series


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """sum_i coeffs[i] t^i + O(t^(order+1))."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(HFrac.of(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_polys(cls, polys: Sequence, order: int, H: LaurentPoly = ONE) -> "TruncSeries":
        cs = [HFrac.of(polys[i] if i < len(polys) else ZERO, H) for i in range(order + 1)]
        return cls(tuple(cs))

    def __getitem__(self, i) -> HFrac:
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncSeries"):
        n = min(self.order, other.order)
        return TruncSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncSeries"):
        n = min(self.order, other.order)
        return TruncSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncSeries(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        out = []
        for m in range(n + 1):
            acc = HFrac(ZERO, 0, self.coeffs[0].H)
            for i in range(m + 1):
                acc = acc + self.coeffs[i] * other.coeffs[m - i]
            out.append(acc)
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        raise TypeError("TruncSeries is unhashable")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(f"({c})" + ("" if i == 0 else "*t" if i == 1 else f"*t^{i}"))
        parts.append(f"O(t^{self.order + 1})")
        return " + ".join(parts)


def _check_exponent(A: Fraction, root: RootData) -> int:
    if root.H == ONE:
        return 0
    rA = root.r * A
    if rA.denominator != 1:
        raise NonIntegralRootPower(f"r*A = {rA} is not an integer", r=root.r, A=str(A))
    return int(rA)


def _leading_poly(S: TruncSeries) -> list:
    polys = []
    for c in S.coeffs:
        if c.k:
            raise ValueError("series_power needs polynomial coefficients")
        polys.append(c.num)
    return polys


def _h_power_frac(n: LaurentPoly, k: int, rA: int, H: LaurentPoly) -> HFrac:
    # n / H^k * H^rA
    if H == ONE:
        return HFrac(n, 0, H)
    if rA >= 0:
        return HFrac(n * hpow(H, rA), k, H)
    return HFrac(n, k - rA, H)


def series_power(S: TruncSeries, A, root: RootData) -> TruncSeries:
    """rho**-A * S**A truncated at the order of S.

    Uses (1 + Y)^A with Y = (S - c0)/c0 and the recurrence
    n u_n = sum_k (A k - (n - k)) y_k u_{n-k}, carried on numerators over H^(r n).
    """
    A = as_rat(A)
    polys = _leading_poly(S)
    c0 = polys[0]
    if c0.is_zero():
        raise ZeroLeading("series has zero leading coefficient")
    rA = _check_exponent(A, root)
    if root.form != c0:
        raise ValueError("root data does not match the leading coefficient")
    H, r, rho = root.H, root.r, root.rho
    N = S.order
    Y = [None] + [p.scale(1 / rho) for p in polys[1:]]
    nums = [ONE]
    for n in range(1, N + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if Y[k].is_zero() or nums[n - k].is_zero():
                continue
            w = A * k - (n - k)
            if not w:
                continue
            acc = acc + (Y[k] * nums[n - k] * hpow(H, r * (k - 1))).scale(w)
        nums.append(acc.scale(Fraction(1, n)))
    return TruncSeries(tuple(_h_power_frac(nums[n], r * n, rA, H) for n in range(N + 1)))


def falling(A: Fraction, s: int) -> Fraction:
    out = Fraction(1)
    for k in range(s):
        out *= A - k
    return out


def _compositions(weights, budget):
    """All exponent vectors v (aligned with weights) with sum w_i v_i <= budget."""
    if not weights:
        yield ()
        return
    w0, rest = weights[0], weights[1:]
    for v in range(budget // w0 + 1):
        for tail in _compositions(rest, budget - v * w0):
            yield (v,) + tail


def multinomial_expand(xs: Sequence[LaurentPoly], A, N: int, root: RootData) -> TruncSeries:
    """rho**-A * (x0 + x1 t + ... + xn t^n)**A by direct multinomial enumeration.

    Coefficient of t^m is the sum over (v_1..v_n) with sum i v_i = m of
    A(A-1)...(A-s+1) / prod v_i! * x0^(A-s) * prod x_i^v_i, with s = sum v_i.
    """
    A = as_rat(A)
    x0 = xs[0]
    if x0.is_zero():
        raise ZeroLeading("series has zero leading coefficient")
    rA = _check_exponent(A, root)
    if root.form != x0:
        raise ValueError("root data does not match the leading coefficient")
    H, r, rho = root.H, root.r, root.rho
    idx = [i for i in range(1, min(len(xs) - 1, N) + 1) if not xs[i].is_zero()]
    pows: dict = {}

    def xpow(i, v):
        if (i, v) not in pows:
            pows[(i, v)] = xs[i] ** v
        return pows[(i, v)]

    terms: list[list] = [[] for _ in range(N + 1)]
    for v in _compositions(idx, N):
        m = sum(i * vi for i, vi in zip(idx, v))
        s = sum(v)
        coef = falling(A, s)
        for vi in v:
            coef /= factorial(vi)
        if not coef:
            continue
        mono = ONE
        for i, vi in zip(idx, v):
            if vi:
                mono = mono * xpow(i, vi)
        terms[m].append((mono.scale(coef / rho ** s), r * s))
    out = []
    for m in range(N + 1):
        if not terms[m]:
            out.append(_h_power_frac(ZERO, 0, rA, H))
            continue
        k = max(t[1] for t in terms[m])
        num = ZERO
        for mono, kk in terms[m]:
            num = num + mono * hpow(H, k - kk)
        out.append(_h_power_frac(num, k, rA, H))
    return TruncSeries(tuple(out))


def series_bracket(Fs: TruncSeries, Gs: TruncSeries) -> TruncSeries:
    """t-coefficient m is sum_{i+j=m} [F_i, G_j]."""
    n = min(Fs.order, Gs.order)
    out = []
    for m in range(n + 1):
        acc = None
        for i in range(m + 1):
            a, b = Fs.coeffs[i], Gs.coeffs[m - i]
            if a.is_zero() or b.is_zero():
                continue
            if not a.k and not b.k:
                term = HFrac(bracket(a.num, b.num), 0, a.H if a.H != ONE else b.H)
            else:
                term = hfrac_bracket(a, b)
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else HFrac(ZERO))
    return TruncSeries(tuple(out))


def series_of(f: LaurentPoly, w, order: int, H: LaurentPoly = ONE) -> TruncSeries:
    """The series f_d + f_{d-1} t + f_{d-2} t^2 + ... for the w-grading of f."""
    d = w_deg(f, w)
    return TruncSeries.from_polys([component(f, w, d - i) for i in range(order + 1)], order, H)
