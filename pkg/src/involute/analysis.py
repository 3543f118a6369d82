"""Solution-structure analysis of an involutive basis.

Classifies derivatives as principal or parametric, derives well-posed
initial data from the complementary decomposition, and evaluates the Hilbert
function and Hilbert polynomial of the differential ideal.  All of it
requires an orderly main ranking, which is what ties counting by order to
the leading-monomial data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .monomial import complementary_decomposition, in_cone
from .diffpoly import Derivative


def _comb(a, b):
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def _require_orderly(basis):
    if not basis.options.main.is_orderly:
        raise ValueError("an orderly main ranking is required")


def classify(theta, basis):
    """'principal' if theta is a derivative of some leading derivative."""
    sets = basis.monomial_sets()
    us = sets.get(theta.indet, ())
    return "principal" if in_cone(theta.index, us) else "parametric"


def complementary_set(basis):
    """Per-function decomposition of the parametric derivatives."""
    sets = basis.monomial_sets()
    n = basis.elements[0].ctx.n
    kind = basis.options.division
    return {j: complementary_decomposition(sets.get(j, ()), kind, n=n)
            for j in range(basis.elements[0].ctx.m)}


@dataclass(frozen=True)
class IVPEntry:
    indet: int
    derivative: Derivative
    multipliers: frozenset
    fixed: frozenset
    kind: str  # 'function' or 'constant'


@dataclass(frozen=True)
class IVPSpec:
    entries: tuple
    point_suffix: str = "°"

    def format(self, ctx):
        lines = []
        nfun = 0
        ncon = 0
        for e in self.entries:
            pin = ", ".join(f"{ctx.variables[i]}={ctx.variables[i]}{self.point_suffix}"
                            for i in sorted(e.fixed))
            head = e.derivative.format(ctx)
            if e.kind == "function":
                nfun += 1
                args = ", ".join(ctx.variables[i] for i in sorted(e.multipliers))
                rhs = f"f{nfun}({args})   (arbitrary function)"
            else:
                ncon += 1
                rhs = f"c{ncon}   (arbitrary constant)"
            lines.append(f"{head} | {pin} = {rhs}")
        return "\n".join(lines)


def ivp_spec(basis, point_suffix="°"):
    """Initial data making the solution unique: one entry per generator.

    Each generator of the complementary set becomes an arbitrary function of
    its multipliers, restricted to the initial point in the remaining
    coordinates; generators without multipliers become arbitrary constants.
    """
    _require_orderly(basis)
    ctx = basis.elements[0].ctx
    decs = complementary_set(basis)
    allv = frozenset(range(ctx.n))
    entries = []
    for j in sorted(decs):
        for v, mult in decs[j].entries():
            kind = "function" if mult else "constant"
            entries.append(IVPEntry(j, Derivative(j, v), frozenset(mult),
                                    allv - frozenset(mult), kind))
    return IVPSpec(tuple(entries), point_suffix)


def _mu_data(basis):
    """(function, degree, multiplier count) per basis element."""
    out = []
    for f, sep in zip(basis.elements, basis.separations):
        d = f.ld(basis.options.main)
        out.append((d.indet, d.index.degree, sep.mu))
    return out


@dataclass(frozen=True)
class HilbertData:
    """Hilbert function and polynomial of the differential ideal."""

    n: int
    m: int
    mus: tuple
    hp: tuple  # polynomial in s, ascending coefficients
    stabilization: int

    def hf(self, s):
        """Number of parametric derivatives of order <= s."""
        if s < 0:
            return 0
        total = self.m * _comb(self.n + s, s)
        principal = sum(_comb(s - deg + mu, mu) for _, deg, mu in self.mus)
        return total - principal

    def hp_eval(self, s):
        acc = Fraction(0)
        for c in reversed(self.hp):
            acc = acc * s + c
        return acc

    def hp_format(self, var="s"):
        if all(c == 0 for c in self.hp):
            return "0"
        parts = []
        for k in range(len(self.hp) - 1, -1, -1):
            c = self.hp[k]
            if not c:
                continue
            if k == 0:
                body = f"{abs(c)}"
            elif k == 1:
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            else:
                body = f"{var}^{k}" if abs(c) == 1 else f"{abs(c)}*{var}^{k}"
            parts.append(("-" if c < 0 else "+", body))
        sign, head = parts[0]
        out = [("-" + head) if sign == "-" else head]
        for sign, body in parts[1:]:
            out.append(f" {sign} {body}")
        return "".join(out)


def _binomial_poly(shift, k):
    """C(s + shift, k) expanded as a polynomial in s."""
    coeffs = [Fraction(1)]
    for i in range(k):
        root = Fraction(shift - i)
        coeffs = [Fraction(0)] + coeffs
        for t in range(len(coeffs) - 1):
            coeffs[t] += coeffs[t + 1] * root
    inv = Fraction(1, math.factorial(k)) if k else Fraction(1)
    out = [c * inv for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_add(a, b, scale=1):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c * scale
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def hilbert_data(basis):
    _require_orderly(basis)
    ctx = basis.elements[0].ctx
    mus = tuple(_mu_data(basis))
    hp = [c * ctx.m for c in _binomial_poly(ctx.n, ctx.n)]
    for _, deg, mu in mus:
        hp = _poly_add(hp, _binomial_poly(mu - deg, mu), scale=-1)
    data = HilbertData(ctx.n, ctx.m, mus, tuple(hp), 0)
    bound = max((deg for _, deg, _ in mus), default=0) + ctx.n
    stab = bound
    for s in range(bound, -1, -1):
        if data.hf(s) == data.hp_eval(s):
            stab = s
        else:
            break
    return HilbertData(ctx.n, ctx.m, mus, tuple(hp), stab)


def hilbert_function(basis, s):
    return hilbert_data(basis).hf(s)


def hilbert_polynomial(basis):
    return hilbert_data(basis).hp


@dataclass(frozen=True)
class SolutionDimension:
    finite: bool
    value: int
    decompositions: dict

    def __repr__(self):
        return f"SolutionDimension({self.value if self.finite else 'infinite'})"


def solution_dimension(basis):
    """Size of the solution space: |W| when finite, else the generator table."""
    data = hilbert_data(basis)
    decs = complementary_set(basis)
    if len(data.hp) == 1:
        value = data.hp[0]
        if value.denominator != 1:
            raise AssertionError("constant Hilbert polynomial is not integral")
        return SolutionDimension(True, int(value), decs)
    return SolutionDimension(False, -1, decs)
