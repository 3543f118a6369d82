import textwrap
from pathlib import Path

import pytest

from involute import (MultiIndex, RationalFunction, in_cone,
                      involutive_divides, monomials_up_to, parse_problem,
                      separations)
from involute.scalars import MultivarPolynomial

PROBLEMS = Path(__file__).resolve().parents[1] / "problems"


@pytest.fixture(scope="session")
def problems_path():
    return PROBLEMS


def load_problem(name):
    return parse_problem((PROBLEMS / name).read_text())


def system(text):
    pf = parse_problem(textwrap.dedent(text))
    return pf, pf.linear_system()


def norm_set(eqs, ranking):
    return frozenset(f.normalize(ranking) for f in eqs)


def mi(*exps):
    return MultiIndex(exps)


# -- independent oracles -----------------------------------------------------

def involutive_divisors_bruteforce(w, U, kind):
    seps = separations(U, kind)
    return [u for u in U if involutive_divides(u, w, U, kind, seps)]


def cones_pairwise_disjoint_bruteforce(U, kind, extra_degree=3):
    """Def-style autoreducedness check by plain enumeration."""
    if not U:
        return True
    n = len(U[0])
    bound = max(u.degree for u in U) + extra_degree
    for w in monomials_up_to(n, bound):
        if len(involutive_divisors_bruteforce(w, U, kind)) > 1:
            return False
    return True


def complete_bruteforce(U, completed, kind, extra_degree=3):
    """Every multiple of U up to the bound has an involutive divisor."""
    n = len(U[0])
    bound = max(u.degree for u in completed) + extra_degree
    for u in U:
        for w in monomials_up_to(n, bound - u.degree):
            if not involutive_divisors_bruteforce(u * w, completed, kind):
                return False
    return True


def decomposition_exact_bruteforce(U, dec, extra_degree=3):
    """Each complement monomial in exactly one cone, ideal members in none."""
    n = dec.nvars
    bound = max([u.degree for u in U] + [v.degree for v, _ in dec.entries()] + [0])
    for w in monomials_up_to(n, bound + extra_degree):
        hits = sum(1 for v, mult in dec.entries()
                   if v.divides(w) and (w / v).support() <= mult)
        expected = 0 if in_cone(w, U) else 1
        if hits != expected:
            return False
    return True


def hf_bruteforce(basis, s):
    ctx = basis.elements[0].ctx
    sets = basis.monomial_sets()
    count = 0
    for j in range(ctx.m):
        us = sets.get(j, ())
        count += sum(1 for w in monomials_up_to(ctx.n, s) if not in_cone(w, us))
    return count


def lift_rational(rf, total):
    """Embed a rational function into a wider variable context (appended vars)."""
    def lift_poly(p):
        return MultivarPolynomial(total, {tuple(e) + (0,) * (total - p.nvars): c
                                          for e, c in p.terms.items()})
    return RationalFunction(lift_poly(rf.num), lift_poly(rf.den))


def substitute_solution(eq, assignments, total):
    """Plug explicit expressions (polynomials over extended vars) into a
    determining equation; returns the resulting rational function."""
    acc = RationalFunction.zero(total)
    for d, c in eq.terms.items():
        p = assignments[d.indet]
        for i, e in enumerate(d.index):
            for _ in range(e):
                p = p.partial(i)
        acc = acc + lift_rational(c, total) * RationalFunction(p)
    return acc + lift_rational(eq.const, total)
