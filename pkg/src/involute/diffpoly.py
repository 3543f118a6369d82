"""Derivatives, rankings and linear differential polynomials.

A linear differential polynomial is a finite sum  c0 + sum c_k * D_k  where
the c's are rational functions of the independent variables and each D_k is a
derivative of one of the dependent functions (order 0 included).  Rankings
are total orders on derivatives compatible with differentiation; they are
realized as sort keys, so the maximum key picks the leading derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .monomial import MultiIndex
from .scalars import RationalFunction


@dataclass(frozen=True)
class Context:
    """Naming and dimensions shared by the polynomials of one system."""

    variables: tuple
    functions: tuple

    def __post_init__(self):
        names = list(self.variables) + list(self.functions)
        if len(set(names)) != len(names):
            raise ValueError("variable and function names must be unique")

    @property
    def n(self):
        return len(self.variables)

    @property
    def m(self):
        return len(self.functions)

    def variable_index(self, name):
        return self.variables.index(name)

    def function_index(self, name):
        return self.functions.index(name)


class Derivative(NamedTuple):
    """A derivative of the ``indet``-th dependent function."""

    indet: int
    index: MultiIndex

    @property
    def order(self):
        return self.index.degree

    def differentiate(self, i):
        return Derivative(self.indet, self.index * MultiIndex.variable(len(self.index), i))

    def prolong(self, beta):
        return Derivative(self.indet, self.index * beta)

    def lcm(self, other):
        if self.indet != other.indet:
            raise ValueError("lcm of derivatives of different functions is undefined")
        return Derivative(self.indet, self.index.lcm(other.index))

    def format(self, ctx):
        name = ctx.functions[self.indet]
        if self.index.is_one():
            return name
        return f"D[{name},{{{','.join(str(e) for e in self.index)}}}]"


ORDERLY_SCHEMES = ("grlex", "degrevlex")


@dataclass(frozen=True)
class Ranking:
    """Total order on derivatives, encoded as a sort key.

    ``scheme`` orders the multiindices (grlex and degrevlex are orderly);
    ``tiebreak`` decides whether the function priority is consulted before or
    after the multiindex comparison ('indet' or 'term').  ``variable_order``
    and ``indeterminate_order`` are permutations listing positions from the
    highest priority down; None means the context order.
    """

    scheme: str = "grlex"
    tiebreak: str = "term"
    variable_order: tuple = None
    indeterminate_order: tuple = None

    def __post_init__(self):
        if self.scheme not in ("lex", "grlex", "degrevlex"):
            raise ValueError(f"unknown ranking scheme {self.scheme!r}")
        if self.tiebreak not in ("term", "indet"):
            raise ValueError(f"unknown tiebreak {self.tiebreak!r}")

    @property
    def is_orderly(self):
        return self.scheme in ORDERLY_SCHEMES

    def _term_key(self, alpha):
        order = self.variable_order if self.variable_order is not None else range(len(alpha))
        if self.scheme == "degrevlex":
            return tuple(-alpha[v] for v in reversed(list(order)))
        return tuple(alpha[v] for v in order)

    def _indet_key(self, j):
        if self.indeterminate_order is None:
            return -j
        return -self.indeterminate_order.index(j)

    def key(self, d):
        """Sort key; bigger key means higher-ranked derivative."""
        term = self._term_key(d.index)
        indet = self._indet_key(d.indet)
        tie = (term, indet) if self.tiebreak == "term" else (indet, term)
        if self.is_orderly:
            return (d.order,) + tie
        return tie

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self):
        parts = [self.scheme, f"tiebreak={self.tiebreak}"]
        if self.variable_order is not None:
            parts.append(f"variables={self.variable_order}")
        if self.indeterminate_order is not None:
            parts.append(f"functions={self.indeterminate_order}")
        return ", ".join(parts)


class LinearDiffPoly:
    """Linear differential polynomial over the rational-function field."""

    __slots__ = ("ctx", "const", "terms")

    def __init__(self, ctx, terms=None, const=None):
        self.ctx = ctx
        self.const = const if const is not None else RationalFunction.zero(ctx.n)
        out = {}
        if terms:
            for d, c in terms.items():
                if c.is_zero():
                    continue
                if len(d.index) != ctx.n or not 0 <= d.indet < ctx.m:
                    raise ValueError(f"derivative {d!r} outside context")
                prev = out.get(d)
                s = c if prev is None else prev + c
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        self.terms = out

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def from_derivative(cls, ctx, d, coeff=None):
        coeff = coeff if coeff is not None else RationalFunction.one(ctx.n)
        return cls(ctx, {d: coeff})

    def is_zero(self):
        return not self.terms and self.const.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (isinstance(other, LinearDiffPoly) and self.ctx == other.ctx
                and self.const == other.const and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.const, frozenset(self.terms.items())))

    def __neg__(self):
        return LinearDiffPoly(self.ctx, {d: -c for d, c in self.terms.items()}, -self.const)

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            s = terms.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(d, None)
            else:
                terms[d] = s
        return self._raw(terms, self.const + other.const)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c.is_zero():
            return LinearDiffPoly.zero(self.ctx)
        return self._raw({d: cc * c for d, cc in self.terms.items()}, self.const * c)

    def differentiate(self, i):
        """Apply d/dx_i: product rule on each coefficient-times-derivative term."""
        terms = {}
        e_i = MultiIndex.variable(self.ctx.n, i)

        def acc(d, c):
            if c.is_zero():
                return
            s = terms.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(d, None)
            else:
                terms[d] = s

        for d, c in self.terms.items():
            acc(d, c.partial(i))
            acc(d.prolong(e_i), c)
        return self._raw(terms, self.const.partial(i))

    def prolong(self, beta):
        out = self
        for i, e in enumerate(beta):
            for _ in range(e):
                out = out.differentiate(i)
        return out

    def ld(self, ranking):
        """Leading derivative under the ranking."""
        if not self.terms:
            raise ValueError("zero or constant polynomial has no leading derivative")
        return max(self.terms, key=ranking.key)

    def lc(self, ranking):
        return self.terms[self.ld(ranking)]

    def normalize(self, ranking):
        """Divide through by the leading coefficient."""
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        if not self.terms:
            raise ValueError("cannot normalize a constant polynomial by a leading term")
        lc = self.lc(ranking)
        if lc.is_one():
            return self
        inv = lc.inverse()
        return self._raw({d: c * inv for d, c in self.terms.items()}, self.const * inv)

    def sorted_terms(self, ranking):
        return sorted(self.terms.items(), key=lambda item: ranking.key(item[0]), reverse=True)

    def _raw(self, terms, const):
        p = LinearDiffPoly.__new__(LinearDiffPoly)
        p.ctx = self.ctx
        p.const = const
        p.terms = terms
        return p

    def _check(self, other):
        if not isinstance(other, LinearDiffPoly) or other.ctx != self.ctx:
            raise ValueError("mixed contexts")

    def format(self, ranking=None):
        if self.is_zero():
            return "0"
        ranking = ranking or Ranking()
        names = self.ctx.variables
        pieces = []
        for d, c in self.sorted_terms(ranking):
            cs = c.format(names)
            ds = d.format(self.ctx)
            neg = cs.startswith("-") and " " not in cs
            if neg:
                cs = cs[1:]
            if " " in cs:
                body = f"({cs})*{ds}"
            elif cs == "1":
                body = ds
            else:
                body = f"{cs}*{ds}"
            pieces.append(("-" if neg else "+", body))
        if not self.const.is_zero():
            cs = self.const.format(names)
            neg = cs.startswith("-") and " " not in cs
            if neg:
                cs = cs[1:]
            if " " in cs:
                cs = f"({cs})"
            pieces.append(("-" if neg else "+", cs))
        sign, head = pieces[0]
        parts = [("-" + head) if sign == "-" else head]
        for sign, text in pieces[1:]:
            parts.append(f" {sign} {text}")
        return "".join(parts)

    def __repr__(self):
        return f"LinearDiffPoly({self.format()})"
