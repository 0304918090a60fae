"""Magnus coefficients for pairs with constant Jacobian.

For a direction w with d = w-deg(F) > 0 and e = w-deg(G), the solver finds
constants c'_0..c'_M with

    G_{e-mu} = sum_{gamma <= mu} c'_gamma [rho^{-A} F~^A]_{t^(mu-gamma)},  A = (e-gamma)/d,

for every mu <= M, where F_d = rho * H^r.  The unnormalized constants are
c_gamma = c'_gamma * rho^(-(e-gamma)/d); only the rational c' are stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import ONE, LaurentPoly, bracket
from .errors import (
    FractionalExponentResidual,
    NonConstantJacobian,
    NotCommuting,
    NotProportional,
    PreconditionViolated,
    ResidualNotProportional,
)
from .geometry import Direction, component, decompose, is_homogeneous, w_deg
from .series import (
    HFrac,
    RootData,
    TruncSeries,
    hfrac_bracket,
    hpow,
    multinomial_expand,
    root_extract,
    series_of,
    series_power,
)


def _hfrac_wdeg(g: HFrac, w: Direction) -> int:
    return w_deg(g.num, w) - (g.k * w_deg(g.H, w) if g.k else 0)


def proportional_to_power(g, f: LaurentPoly, w, root: RootData | None = None) -> tuple[Fraction, int]:
    """Return (c, s) with g == c * H**s, where f = rho * H**r.

    ``g`` may be a Laurent polynomial or an :class:`HFrac` over the same H.
    """
    w = Direction.of(w)
    g = HFrac.of(g)
    if g.is_zero():
        raise NotProportional("g must be nonzero")
    if not is_homogeneous(f, w) or not is_homogeneous(g.num, w):
        raise NotProportional("inputs must be w-homogeneous")
    df = w_deg(f, w)
    if df <= 0:
        raise PreconditionViolated("f needs positive w-degree", w_deg=df)
    if root is None:
        root = root_extract(f, w)
    H, r = root.H, root.r
    if g.k and g.H != H:
        raise NotProportional("g is a fraction over a different H")
    if not hfrac_bracket(g, HFrac.of(f, H)).is_zero():
        raise NotCommuting("[g, f] != 0")
    dg = _hfrac_wdeg(g, w)
    s = Fraction(r * dg, df)
    if s.denominator != 1:
        raise NotProportional(f"s = r*d_g/d_f = {s} is not an integer")
    s = int(s)
    t = g.k + s
    # g = num / H^k  ==  c * H^s   <=>   num == c * H^(k+s)
    lhs, rhs = (g.num, hpow(H, t)) if t >= 0 else (g.num * hpow(H, -t), ONE)
    e, lc = rhs.leading()
    c = lhs.coeff(*e) / lc
    if not c or lhs != rhs.scale(c):
        raise NotProportional("g is not a constant multiple of H^s")
    return c, s


@dataclass
class MagnusCoeffs:
    w: Direction
    d: int
    e: int
    r: int
    rho: Fraction
    H: LaurentPoly
    coeffs: list
    forced_zero: list
    mu_max: int

    @property
    def top(self) -> int:
        return self.d + self.e - self.w.u - self.w.v - 1

    def exponent(self, gamma: int) -> Fraction:
        return Fraction(self.e - gamma, self.d)

    def to_dict(self) -> dict:
        return {
            "w": [self.w.u, self.w.v],
            "d": self.d,
            "e": self.e,
            "r": self.r,
            "rho": str(self.rho),
            "H": str(self.H),
            "mu_max": self.mu_max,
            "coeffs": [str(c) for c in self.coeffs],
            "forced_zero": list(self.forced_zero),
            "normalization": "c_gamma = c'_gamma * rho^(-(e-gamma)/d); H has positive leading coefficient",
        }


def _setup(F: LaurentPoly, G: LaurentPoly, w):
    w = Direction.of(w)
    br = bracket(F, G)
    if not br.is_constant():
        raise NonConstantJacobian("[F, G] is not a constant", bracket=str(br))
    if G.is_zero():
        raise PreconditionViolated("G must be nonzero")
    d = w_deg(F, w)
    if d <= 0:
        raise PreconditionViolated("w-deg(F) must be positive", d=d)
    e = w_deg(G, w)
    return w, d, e


def magnus_solve(F: LaurentPoly, G: LaurentPoly, w, mu_max: int | None = None) -> MagnusCoeffs:
    w, d, e = _setup(F, G, w)
    top = d + e - w.u - w.v - 1
    if mu_max is None:
        mu_max = top
    if mu_max > top:
        raise PreconditionViolated("mu_max exceeds d+e-u-v-1", mu_max=mu_max, top=top)
    fd = component(F, w, d)
    root = root_extract(fd, w)
    H, r = root.H, root.r
    Fs = series_of(F, w, max(mu_max, 0))
    powers: dict[int, TruncSeries] = {}
    coeffs: list[Fraction] = []
    forced: list[bool] = []
    for mu in range(mu_max + 1):
        residual = HFrac(component(G, w, e - mu), 0, H)
        for gamma, c in enumerate(coeffs):
            if c:
                residual = residual - powers[gamma][mu - gamma] * c
        frac = Fraction(r * (e - mu), d).denominator != 1
        forced.append(frac)
        if residual.is_zero():
            coeffs.append(Fraction(0))
            continue
        if frac:
            raise FractionalExponentResidual(
                f"nonzero residual at level {mu} but r(e-mu)/d is not an integer", mu=mu)
        try:
            c, _ = proportional_to_power(residual, fd, w, root)
        except (NotCommuting, NotProportional) as exc:
            raise ResidualNotProportional(f"level {mu}: {exc}", mu=mu) from exc
        coeffs.append(c)
        powers[mu] = series_power(Fs.truncate(mu_max - mu), Fraction(e - mu, d), root)
    return MagnusCoeffs(w, d, e, r, root.rho, H, coeffs, forced, mu_max)


@dataclass
class LevelStatus:
    mu: int
    ok: bool
    forced_zero: bool
    coeff: Fraction


@dataclass
class MagnusReport:
    coeffs: MagnusCoeffs
    levels: list = field(default_factory=list)
    vanishing_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.vanishing_ok and all(lv.ok for lv in self.levels)

    def lines(self) -> list[str]:
        out = []
        for lv in self.levels:
            tag = "PASS" if lv.ok else "FAIL"
            fz = " forced_zero" if lv.forced_zero else ""
            out.append(f"mu={lv.mu} c'={lv.coeff} {tag}{fz}")
        return out

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "magnus-verify",
            "status": "PASS" if self.passed else "FAIL",
            "vanishing_rule": "PASS" if self.vanishing_ok else "FAIL",
            "coefficients": self.coeffs.to_dict(),
            "levels": [{"mu": lv.mu, "status": "PASS" if lv.ok else "FAIL",
                        "coeff": str(lv.coeff), "forced_zero": lv.forced_zero}
                       for lv in self.levels],
        }


def check_levels(F: LaurentPoly, G: LaurentPoly, mc: MagnusCoeffs) -> list[bool]:
    """Re-evaluate the right-hand side at every level from given coefficients.

    Uses the literal multinomial expansion, not the recurrence the solver uses.
    """
    w, d, e, top = mc.w, mc.d, mc.e, mc.mu_max
    fd = component(F, w, d)
    root = root_extract(fd, w)
    comps = [component(F, w, d - i) for i in range(top + 1)]
    expansions = {}
    for gamma, c in enumerate(mc.coeffs):
        if c:
            expansions[gamma] = multinomial_expand(comps, Fraction(e - gamma, d), top - gamma, root)
    out = []
    for mu in range(top + 1):
        rhs = HFrac(LaurentPoly(), 0, root.H)
        for gamma in range(mu + 1):
            if gamma in expansions:
                rhs = rhs + expansions[gamma][mu - gamma] * mc.coeffs[gamma]
        out.append(rhs == HFrac(component(G, w, e - mu), 0, root.H))
    return out


def verify_magnus(F: LaurentPoly, G: LaurentPoly, w) -> MagnusReport:
    mc = magnus_solve(F, G, w)
    ok = check_levels(F, G, mc)
    levels = [LevelStatus(mu, ok[mu], mc.forced_zero[mu], mc.coeffs[mu]) for mu in range(len(ok))]
    vanishing = all(not fz or c == 0 for fz, c in zip(mc.forced_zero, mc.coeffs))
    ok0 = not mc.coeffs or mc.coeffs[0] != 0
    return MagnusReport(mc, levels, vanishing and ok0)


def bracket_level_sums(F: LaurentPoly, G: LaurentPoly, w) -> list[LaurentPoly]:
    """sum_{i+j=mu} [F_{d-i}, G_{e-j}] for mu = 0 .. d+e-u-v-1."""
    w = Direction.of(w)
    dF, dG = decompose(F, w), decompose(G, w)
    d, e = dF.degree, dG.degree
    out = []
    for mu in range(d + e - w.u - w.v):
        acc = LaurentPoly()
        for i in range(mu + 1):
            a, b = dF[d - i], dG[e - (mu - i)]
            if a and b:
                acc = acc + bracket(a, b)
        out.append(acc)
    return out
