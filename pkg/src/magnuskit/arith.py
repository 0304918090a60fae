"""Exact bivariate Laurent polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; a polynomial is an immutable
mapping from exponent pairs ``(i, j)`` to nonzero coefficients.  Terms are
kept sorted in descending graded-lex order, which fixes printing and hashing.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import NotDivisible, ZeroDivisor

Rat = Fraction
Exp = tuple[int, int]


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or int")
    return Fraction(value)


def grlex_key(e: Exp):
    return (e[0] + e[1], e[0], e[1])


class LaurentPoly:
    """Sparse element of Q[x^{+-1}, y^{+-1}].

    Instances are immutable; every arithmetic operation returns a new one.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | Iterable[tuple[Exp, object]] = ()):
        acc: dict[Exp, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = as_rat(c)
            if not c:
                continue
            e = (int(e[0]), int(e[1]))
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        self._terms = dict(sorted(acc.items(), key=lambda kv: grlex_key(kv[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, Fraction]) -> "LaurentPoly":
        # terms must already be free of zeros
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True))
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "LaurentPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "LaurentPoly":
        return cls.monomial(0, 1)

    # mapping-like access

    @property
    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def support(self) -> set[Exp]:
        return set(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        return all(i >= 0 and j >= 0 for i, j in self._terms)

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    def leading(self) -> tuple[Exp, Fraction]:
        """Leading exponent and coefficient in graded-lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = next(iter(self._terms))
        return e, self._terms[e]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def min_exponents(self) -> Exp:
        return (min(i for i, _ in self._terms), min(j for _, j in self._terms))

    # arithmetic

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                del acc[e]
        return LaurentPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly()
        acc: dict[Exp, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = as_rat(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({e: v * c for e, v in self._terms.items()})

    def shift(self, di: int, dj: int) -> "LaurentPoly":
        """Multiply by the monomial x^di y^dj."""
        return LaurentPoly._raw({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and self.is_monomial():
                (i, j), c = self.leading()
                return LaurentPoly.monomial(i * n, j * n, Fraction(c) ** n)
            raise ValueError("only nonnegative integer powers of non-monomials")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisor("division by zero constant")
            return self.scale(Fraction(1) / as_rat(other))
        if isinstance(other, LaurentPoly):
            return divide_exact(self, other)
        return NotImplemented

    # calculus

    def diff_x(self) -> "LaurentPoly":
        return LaurentPoly._raw({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})

    def diff_y(self) -> "LaurentPoly":
        return LaurentPoly._raw({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def __repr__(self):
        return f"LaurentPoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


X = LaurentPoly.x()
Y = LaurentPoly.y()
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def power(a: LaurentPoly, n: int) -> LaurentPoly:
    return a ** n


def partials(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    return f.diff_x(), f.diff_y()


def bracket(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Jacobian determinant f_x g_y - g_x f_y."""
    fx, fy = partials(f)
    gx, gy = partials(g)
    return fx * gy - gx * fy


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_monomial(i: int, j: int) -> str:
    parts = []
    for var, k in (("x", i), ("y", j)):
        if k == 1:
            parts.append(var)
        elif k:
            parts.append(f"{var}^{k}")
    return "*".join(parts)


def to_text(f: LaurentPoly) -> str:
    """Canonical text, e.g. ``x^2*y^2 + 2*x^2*y - 1/2*x^3``."""
    if f.is_zero():
        return "0"
    out = []
    for n, ((i, j), c) in enumerate(f.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _fmt_monomial(i, j)
        if not mono:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rat(mag)}*{mono}"
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def divide_exact(f: LaurentPoly, g: LaurentPoly, laurent: bool = True) -> LaurentPoly:
    """Exact quotient q with f == q*g.

    Reduction runs against the graded-lex leading term of ``g``; any term of
    the running remainder that cannot be eliminated means no Laurent quotient
    exists.  With ``laurent=False`` the quotient must also be a polynomial.
    """
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    if g.is_monomial():
        (gi, gj), gc = g.leading()
        q = LaurentPoly._raw({(i - gi, j - gj): c / gc for (i, j), c in f.items()})
    else:
        q = _divide_multi(f, g)
    if not laurent and not q.is_polynomial():
        raise NotDivisible("quotient is not a polynomial")
    return q


def _divide_multi(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    # Normalize both to polynomials with min exponents zero, so that the
    # Laurent question reduces to ordinary polynomial divisibility.
    fi, fj = f.min_exponents()
    gi, gj = g.min_exponents()
    f0 = f.shift(-fi, -fj)
    g0 = g.shift(-gi, -gj)
    (li, lj), lc = g0.leading()
    g_terms = list(g0.items())
    rem = dict(f0.items())
    quot: dict[Exp, Fraction] = {}
    lead_key = lambda e: grlex_key(e)
    while rem:
        e = max(rem, key=lead_key)
        c = rem[e]
        qi, qj = e[0] - li, e[1] - lj
        if qi < 0 or qj < 0:
            raise NotDivisible("non-eliminable remainder term", term=e)
        qc = c / lc
        quot[(qi, qj)] = quot.get((qi, qj), 0) + qc
        for (ti, tj), tc in g_terms:
            k = (ti + qi, tj + qj)
            s = rem.get(k, 0) - qc * tc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    q = LaurentPoly._raw({e: c for e, c in quot.items() if c})
    return q.shift(fi - gi, fj - gj)


def is_laurent_multiple(f: LaurentPoly, g: LaurentPoly) -> bool:
    try:
        divide_exact(f, g)
    except NotDivisible:
        return False
    return True


def content_normalize(f: LaurentPoly) -> tuple[Fraction, LaurentPoly]:
    """Split f = c * g with g integral, primitive, positive leading coefficient."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    den = 1
    for c in f._terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    nums = [int(c * den) for c in f._terms.values()]
    g = 0
    for n in nums:
        g = gcd(g, n)
    c = Fraction(g, den)
    if f.leading()[1] < 0:
        c = -c
    return c, f.scale(1 / c)
