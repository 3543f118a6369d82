"""Exact scalar arithmetic for the engine's coefficient field.

Sparse multivariate polynomials over Q (mapping exponent tuple -> Fraction)
and canonical quotients of them.  A quotient is kept reduced (the gcd of
numerator and denominator is constant) with the denominator monic in
graded-lex order, so structural equality coincides with mathematical
equality.  Everything is immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm


class ExactDivisionError(ArithmeticError):
    """Exact polynomial division left a remainder."""


def _grlex_key(e):
    return (sum(e), e)


class MultivarPolynomial:
    """Polynomial in a fixed number of variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        out = {}
        if terms:
            for e, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if not c:
                    continue
                e = tuple(int(x) for x in e)
                if len(e) != self.nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e!r} for {self.nvars} variables")
                prev = out.get(e)
                s = c if prev is None else prev + c
                if s:
                    out[e] = s
                elif prev is not None:
                    del out[e]
        self.terms = out

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def is_one(self):
        return self.is_constant() and not self.is_zero() and self.constant_value() == 1

    # -- degrees and leading data ------------------------------------------

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # -- arithmetic ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultivarPolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self):
        return MultivarPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        self._check(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) + c
            if s:
                res[e] = s
            elif e in res:
                del res[e]
        return self._raw(res)

    def __sub__(self, other):
        self._check(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) - c
            if s:
                res[e] = s
            elif e in res:
                del res[e]
        return self._raw(res)

    def __mul__(self, other):
        self._check(other)
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(e, Fraction(0)) + c1 * c2
                if s:
                    res[e] = s
                elif e in res:
                    del res[e]
        return self._raw(res)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent on a polynomial")
        out = MultivarPolynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultivarPolynomial.zero(self.nvars)
        return self._raw({e: cc * c for e, cc in self.terms.items()})

    def mul_term(self, exps, c):
        c = Fraction(c)
        if not c:
            return MultivarPolynomial.zero(self.nvars)
        return self._raw({tuple(a + b for a, b in zip(e, exps)): cc * c
                          for e, cc in self.terms.items()})

    def partial(self, i):
        res = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                res[tuple(e2)] = c * e[i]
        return self._raw(res)

    def _raw(self, terms):
        p = MultivarPolynomial.__new__(MultivarPolynomial)
        p.nvars = self.nvars
        p.terms = terms
        return p

    def _check(self, other):
        if not isinstance(other, MultivarPolynomial) or other.nvars != self.nvars:
            raise ValueError("mixed polynomial contexts")

    # -- division -----------------------------------------------------------

    def divexact(self, other):
        """Exact division by ``other``; raises ExactDivisionError otherwise."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        rem = self
        out = {}
        le_g, lc_g = other.leading()
        while rem.terms:
            le_r, lc_r = rem.leading()
            q = tuple(a - b for a, b in zip(le_r, le_g))
            if any(x < 0 for x in q):
                raise ExactDivisionError("inexact polynomial division")
            c = lc_r / lc_g
            out[q] = out.get(q, Fraction(0)) + c
            rem = rem - other.mul_term(q, c)
        return self._raw({e: c for e, c in out.items() if c})

    # -- printing ------------------------------------------------------------

    def format(self, names):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            body = "*".join(factors)
            mag = abs(c)
            if body and mag == 1:
                text = body
            elif body:
                text = f"{mag}*{body}"
            else:
                text = f"{mag}"
            pieces.append(("-" if c < 0 else "+", text))
        sign, head = pieces[0]
        parts = [("-" + head) if sign == "-" else head]
        for sign, text in pieces[1:]:
            parts.append(f" {sign} {text}")
        return "".join(parts)

    def __repr__(self):
        return f"MultivarPolynomial({self.nvars}, {self.format([f'x{i+1}' for i in range(self.nvars)])})"


# -- gcd via primitive pseudo-remainder sequences ----------------------------

def _rat_normalize(p):
    """Scale to coprime integer coefficients with positive grlex-leading sign."""
    if p.is_zero():
        return p
    num = 0
    den = 1
    for c in p.terms.values():
        num = _int_gcd(num, c.numerator)
        den = _int_lcm(den, c.denominator)
    factor = Fraction(den, num)
    if p.leading()[1] < 0:
        factor = -factor
    return p.scale(factor)


def _coeffs_in(p, v):
    """View ``p`` as univariate in variable ``v``: degree -> coefficient poly."""
    out = {}
    for e, c in p.terms.items():
        d = e[v]
        e2 = list(e)
        e2[v] = 0
        coeff = out.setdefault(d, {})
        coeff[tuple(e2)] = coeff.get(tuple(e2), Fraction(0)) + c
    return {d: MultivarPolynomial(p.nvars, t) for d, t in out.items()}


def _content_in(p, v):
    cont = MultivarPolynomial.zero(p.nvars)
    for coeff in _coeffs_in(p, v).values():
        cont = poly_gcd(cont, coeff)
        if cont.is_one():
            break
    return cont


def _prem(f, g, v):
    """Pseudo-remainder of f by g with respect to variable ``v``."""
    dg = g.degree_in(v)
    lc_g = _coeffs_in(g, v)[dg]
    r = f
    while r.terms and r.degree_in(v) >= dg:
        dr = r.degree_in(v)
        lc_r = _coeffs_in(r, v)[dr]
        shift = [0] * f.nvars
        shift[v] = dr - dg
        r = r * lc_g - g.mul_term(tuple(shift), 1) * lc_r
    return r


def poly_gcd(f, g):
    """Gcd of two polynomials, normalized to primitive integer coefficients."""
    if f.is_zero():
        return _rat_normalize(g)
    if g.is_zero():
        return _rat_normalize(f)
    if f.is_constant() or g.is_constant():
        return MultivarPolynomial.const(f.nvars, 1)
    v = next(i for i in range(f.nvars) if f.degree_in(i) or g.degree_in(i))
    cf = _content_in(f, v)
    cg = _content_in(g, v)
    c = poly_gcd(cf, cg)
    pf = f.divexact(cf)
    pg = g.divexact(cg)
    while pg.terms and pg.degree_in(v) > 0:
        if pf.degree_in(v) < pg.degree_in(v):
            pf, pg = pg, pf
            continue
        r = _prem(pf, pg, v)
        pf = pg
        pg = r.divexact(_content_in(r, v)) if r.terms else r
    if pg.terms:
        # nonzero remainder free of v: the primitive parts are coprime
        return _rat_normalize(c)
    return _rat_normalize(c * pf)


class RationalFunction:
    """Reduced quotient of two multivariate polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = MultivarPolynomial.const(num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num = MultivarPolynomial.zero(num.nvars)
            den = MultivarPolynomial.const(num.nvars, 1)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = num.divexact(g)
                den = den.divexact(g)
            lc = den.leading()[1]
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, nvars):
        return cls(MultivarPolynomial.zero(nvars))

    @classmethod
    def one(cls, nvars):
        return cls(MultivarPolynomial.const(nvars, 1))

    @classmethod
    def const(cls, nvars, value):
        return cls(MultivarPolynomial.const(nvars, value))

    @classmethod
    def variable(cls, nvars, i):
        return cls(MultivarPolynomial.variable(nvars, i))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return self._raw(-self.num, self.den)

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other):
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self):
        return RationalFunction.one(self.nvars) / self

    def scale(self, c):
        return self._raw(self.num.scale(c), self.den) if c else RationalFunction.zero(self.nvars)

    def partial(self, i):
        # quotient rule; canonicalized by the constructor
        return RationalFunction(self.num.partial(i) * self.den - self.num * self.den.partial(i),
                                self.den * self.den)

    def _raw(self, num, den):
        r = RationalFunction.__new__(RationalFunction)
        r.num = num
        r.den = den
        return r

    def format(self, names):
        if self.den.is_one():
            return self.num.format(names)
        ns = self.num.format(names)
        ds = self.den.format(names)
        if " " in ns or ns.startswith("-"):
            ns = f"({ns})"
        if " " in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        names = [f"x{i+1}" for i in range(self.nvars)]
        return f"RationalFunction({self.format(names)})"


def arith(a, b, op):
    """Field operation dispatch: op in {'add','sub','mul','div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(a, i):
    """Derivation operator d/dx_i applied to a rational function."""
    return a.partial(i)
