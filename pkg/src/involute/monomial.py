"""Multiindex arithmetic and involutive divisions on monomial sets.

Variables are indexed 0..n-1 and ordered by priority: position 0 is the
highest variable of the fixed order.  The three divisions (Janet, Pommaret,
lexicographically induced) all arise from a partition of the variables into
multiplicative and nonmultiplicative ones per element of a finite set, so the
involutive cone of an element is the monoid generated by its multiplicative
variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum


class MultiIndex(tuple):
    """Exponent vector in NN^n; doubles as the monomial x^alpha."""

    def __new__(cls, exponents):
        t = tuple(int(e) for e in exponents)
        if any(e < 0 for e in t):
            raise ValueError(f"negative exponent in {t!r}")
        return super().__new__(cls, t)

    @classmethod
    def unit(cls, n):
        return cls((0,) * n)

    @classmethod
    def variable(cls, n, i, power=1):
        e = [0] * n
        e[i] = power
        return cls(e)

    @property
    def degree(self):
        return sum(self)

    def deg(self, i):
        return self[i]

    def is_one(self):
        return not any(self)

    def __mul__(self, other):
        return MultiIndex(a + b for a, b in zip(self, other))

    def __truediv__(self, other):
        q = [a - b for a, b in zip(self, other)]
        if any(x < 0 for x in q):
            raise ValueError(f"{other!r} does not divide {self!r}")
        return MultiIndex(q)

    def divides(self, other):
        return len(self) == len(other) and all(a <= b for a, b in zip(self, other))

    def lcm(self, other):
        return MultiIndex(max(a, b) for a, b in zip(self, other))

    def support(self):
        return frozenset(i for i, e in enumerate(self) if e)

    def format(self, names=None):
        if self.is_one():
            return "1"
        names = names or [f"x{i+1}" for i in range(len(self))]
        parts = []
        for i, e in enumerate(self):
            if e == 1:
                parts.append(names[i])
            elif e > 1:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"MultiIndex{tuple(self)!r}"


class Division(Enum):
    JANET = "janet"
    POMMARET = "pommaret"
    LEX_INDUCED = "lexinduced"


@dataclass(frozen=True)
class Separation:
    """Partition of the variables for one element of a monomial set."""

    multiplicative: frozenset
    nonmultiplicative: frozenset

    @property
    def mu(self):
        return len(self.multiplicative)


class CapExceeded(RuntimeError):
    """A completion exceeded its prolongation budget; partial work attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def monomial_sort_key(scheme="grlex", variable_order=None):
    """Key function realizing an admissible ordering (max = greatest)."""

    def key(u):
        order = variable_order if variable_order is not None else range(len(u))
        perm = tuple(u[v] for v in order)
        if scheme == "lex":
            return perm
        if scheme == "grlex":
            return (sum(u), perm)
        if scheme == "degrevlex":
            return (sum(u), tuple(-u[v] for v in reversed(list(order))))
        raise ValueError(f"unknown monomial ordering {scheme!r}")

    return key


_LEX = monomial_sort_key("lex")


def _check_set(U):
    U = [u if isinstance(u, MultiIndex) else MultiIndex(u) for u in U]
    if U:
        n = len(U[0])
        if any(len(u) != n for u in U):
            raise ValueError("monomials of mixed dimension")
    return sorted(set(U), key=_LEX)


def _janet_separations(U):
    n = len(U[0])
    out = {}
    for u in U:
        mult = set()
        group = U
        for i in range(n):
            if u[i] == max(v[i] for v in group):
                mult.add(i)
            group = [v for v in group if v[i] == u[i]]
        out[u] = mult
    return out


def _pommaret_multiplicative(u):
    n = len(u)
    trailing = max((i for i, e in enumerate(u) if e), default=None)
    if trailing is None:
        return set(range(n))
    return set(range(trailing, n))


def _lex_induced_separations(U):
    n = len(U[0])
    out = {}
    for u in U:
        nonmult = set()
        for v in U:
            if _LEX(v) < _LEX(u):
                nonmult.update(i for i in range(n) if u[i] < v[i])
        out[u] = set(range(n)) - nonmult
    return out


def separations(U, kind):
    """Multiplicative-variable map for every element of U under the division."""
    U = _check_set(U)
    if not U:
        return {}
    if kind is Division.JANET:
        mult = _janet_separations(U)
    elif kind is Division.POMMARET:
        mult = {u: _pommaret_multiplicative(u) for u in U}
    elif kind is Division.LEX_INDUCED:
        mult = _lex_induced_separations(U)
    else:
        raise ValueError(f"unknown division {kind!r}")
    n = len(U[0])
    allv = frozenset(range(n))
    return {u: Separation(frozenset(m), allv - frozenset(m)) for u, m in mult.items()}


def separation(u, U, kind):
    u = u if isinstance(u, MultiIndex) else MultiIndex(u)
    seps = separations(U, kind)
    if u not in seps:
        raise ValueError(f"{u!r} is not an element of the set")
    return seps[u]


def involutive_divides(u, w, U, kind, seps=None):
    """True iff u | w with the quotient supported on u's multiplicative variables."""
    u = u if isinstance(u, MultiIndex) else MultiIndex(u)
    w = w if isinstance(w, MultiIndex) else MultiIndex(w)
    if not u.divides(w):
        return False
    sep = seps[u] if seps is not None else separation(u, U, kind)
    return (w / u).support() <= sep.multiplicative


def _cones_intersect(u, su, v, sv):
    # minimal common element exists iff the forced exponents are consistent
    for i in range(len(u)):
        in_u = i in su.multiplicative
        in_v = i in sv.multiplicative
        if not in_u and not in_v:
            if u[i] != v[i]:
                return False
        elif in_u and not in_v:
            if v[i] < u[i]:
                return False
        elif in_v and not in_u:
            if u[i] < v[i]:
                return False
    return True


def autoreduce(U, kind):
    """Maximal subset with pairwise disjoint involutive cones.

    Discards, smallest first in lexicographic order, any element lying in the
    involutive cone of another element, until none remains.
    """
    U = _check_set(U)
    while True:
        seps = separations(U, kind)
        victims = [u for u in U
                   if any(v != u and involutive_divides(v, u, U, kind, seps) for v in U)]
        if not victims:
            return tuple(U)
        U.remove(min(victims, key=_LEX))


def complete(U, kind, completion_order="grlex", cap=10000):
    """Complete a monomial set so every multiple has an involutive divisor.

    Autoreduces the input, then repeatedly adjoins the lowest (with respect to
    ``completion_order``) nonmultiplicative prolongation lacking an involutive
    divisor.  Raises CapExceeded, with the partial set attached, after ``cap``
    candidate examinations without closure.
    """
    U = list(autoreduce(U, kind))
    if not U:
        raise ValueError("empty set after autoreduction")
    order_key = (completion_order if callable(completion_order)
                 else monomial_sort_key(completion_order))
    examinations = 0
    while True:
        # keep the set autoreduced: an adjoined prolongation may swallow an
        # older element into its cone, and coverage survives the removal
        U = list(autoreduce(U, kind))
        seps = separations(U, kind)
        candidates = []
        for u in U:
            for i in sorted(seps[u].nonmultiplicative):
                w = u * MultiIndex.variable(len(u), i)
                examinations += 1
                if examinations > cap:
                    raise CapExceeded(
                        f"no closure within {cap} prolongation examinations",
                        partial=tuple(sorted(U, key=_LEX)))
                if not any(involutive_divides(v, w, U, kind, seps) for v in U):
                    candidates.append(w)
        if not candidates:
            return tuple(sorted(U, key=_LEX))
        w = min(candidates, key=order_key)
        if w not in U:
            U.append(w)


def is_involutive(U, kind):
    """Autoreduced and locally complete: the involutive cones partition the ideal."""
    U = _check_set(U)
    if not U:
        return True
    seps = separations(U, kind)
    for u in U:
        if any(v != u and involutive_divides(v, u, U, kind, seps) for v in U):
            return False
    for u in U:
        for i in seps[u].nonmultiplicative:
            w = u * MultiIndex.variable(len(u), i)
            if not any(involutive_divides(v, w, U, kind, seps) for v in U):
                return False
    return True


def in_cone(w, U):
    """Ordinary monomial-ideal membership."""
    w = w if isinstance(w, MultiIndex) else MultiIndex(w)
    return any(u.divides(w) for u in U)


def monomials_of_degree(n, d):
    """All exponent vectors in n variables of total degree exactly d."""
    if n == 0:
        if d == 0:
            yield MultiIndex(())
        return
    for head in range(d + 1):
        for tail in monomials_of_degree(n - 1, d - head):
            yield MultiIndex((head,) + tuple(tail))


def monomials_up_to(n, d):
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


@dataclass(frozen=True)
class ComplementaryDecomposition:
    """Disjoint cone decomposition of the complement of a monomial ideal.

    ``finite_part`` lists standalone monomials; ``generators`` pairs a cone
    tip with the variable positions along which it may be multiplied.
    """

    finite_part: tuple
    generators: tuple
    nvars: int

    def is_finite(self):
        return all(not mult for _, mult in self.generators)

    def monomials(self):
        if not self.is_finite():
            raise ValueError("complement is infinite")
        return tuple(sorted(set(self.finite_part) | {v for v, _ in self.generators},
                            key=_LEX))

    def entries(self):
        """Uniform view: every finite-part element as a multiplier-free cone."""
        return tuple((v, frozenset()) for v in self.finite_part) + tuple(self.generators)

    def contains(self, w):
        w = w if isinstance(w, MultiIndex) else MultiIndex(w)
        if w in self.finite_part:
            return True
        return any(v.divides(w) and (w / v).support() <= mult
                   for v, mult in self.generators)


def _split_decompose(us, k, front):
    """Disjoint cone decomposition of the complement, one variable at a time.

    ``us`` is a set of exponent tuples over ``k`` active variables; splitting
    is on the first variable (Janet grouping) or the last.  Returns pairs of
    (tuple over the active variables, multiplier position set).
    """
    if any(not any(u) for u in us):
        return []
    if not us:
        return [((0,) * k, frozenset(range(k)))]
    i = 0 if front else k - 1
    d = max(u[i] for u in us)
    out = []

    def reinsert(sub, a, saturated):
        for v, s in sub:
            full = v[:i] + (a,) + v[i:]
            if front:
                shifted = frozenset(x + 1 for x in s)
            else:
                shifted = frozenset(s)
            if saturated:
                shifted |= {i}
            out.append((full, shifted))

    for a in range(d):
        ua = {u[:i] + u[i + 1:] for u in us if u[i] <= a}
        reinsert(_split_decompose(ua, k - 1, front), a, False)
    ud = {u[:i] + u[i + 1:] for u in us}
    reinsert(_split_decompose(ud, k - 1, front), d, True)
    return out


def _janet_decomposition(U, n):
    cones = _split_decompose({tuple(u) for u in U}, n, front=True)
    gens = tuple(sorted(((MultiIndex(v), frozenset(s)) for v, s in cones),
                        key=lambda g: _LEX(g[0])))
    return ComplementaryDecomposition((), gens, n)


def _pommaret_decomposition(U, n):
    q = max((u.degree for u in U), default=0)
    finite = []
    gens = []
    for w in monomials_up_to(n, q):
        if in_cone(w, U):
            continue
        if w.degree < q:
            finite.append(w)
        else:
            gens.append((w, frozenset(_pommaret_multiplicative(w))))
    return ComplementaryDecomposition(tuple(finite), tuple(gens), n)


def _normalized_lex_decomposition(U, n):
    # Constructive route: split on the last variable, then push the low part
    # of every multiplier cone into the finite set so the remaining cone tips
    # sit at the degree of the basis.
    cones = _split_decompose({tuple(u) for u in U}, n, front=False)
    q = max((u.degree for u in U), default=0)
    finite = []
    gens = []
    for v, s in cones:
        v = MultiIndex(v)
        if not s:
            finite.append(v)
            continue
        if v.degree >= q:
            gens.append((v, frozenset(s)))
            continue
        svars = sorted(s)
        for extra in monomials_up_to(len(svars), q - v.degree - 1):
            w = list(v)
            for pos, e in zip(svars, extra):
                w[pos] += e
            finite.append(MultiIndex(w))
        for extra in monomials_of_degree(len(svars), q - v.degree):
            w = list(v)
            trailing = None
            for local, (pos, e) in enumerate(zip(svars, extra)):
                w[pos] += e
                if e:
                    trailing = local
            mult = frozenset(svars[trailing:]) if trailing is not None else frozenset(svars)
            gens.append((MultiIndex(w), mult))
    finite = sorted(set(finite), key=_LEX)
    gens = sorted(gens, key=lambda g: _LEX(g[0]))
    return ComplementaryDecomposition(tuple(finite), tuple(gens), n)


def complementary_decomposition(U, kind, n=None):
    """Decompose the complement of (U) into disjoint cones with multipliers.

    Requires a ``kind``-involutive input (or an empty set with ``n`` given).
    Janet uses the compact grouped form; Pommaret takes the finite part below
    the degree of the basis plus all complement monomials at that degree with
    their Pommaret multipliers; the lexicographically induced division uses
    the generic constructive decomposition normalized to the basis degree.
    """
    U = _check_set(U)
    if not U:
        if n is None:
            raise ValueError("variable count required for an empty set")
        return ComplementaryDecomposition(
            (), ((MultiIndex.unit(n), frozenset(range(n))),), n)
    n = len(U[0])
    if not is_involutive(U, kind):
        raise ValueError(f"set is not {kind.value}-involutive")
    if kind is Division.JANET:
        return _janet_decomposition(U, n)
    if kind is Division.POMMARET:
        return _pommaret_decomposition(U, n)
    if kind is Division.LEX_INDUCED:
        return _normalized_lex_decomposition(U, n)
    raise ValueError(f"unknown division {kind!r}")


@dataclass(frozen=True)
class CartanCharacters:
    """Counts of degree-q Pommaret generators by number of multipliers."""

    q: int
    sigma: tuple

    def __getitem__(self, i):
        """sigma_q^i with i in 1..n."""
        return self.sigma[i - 1]


def cartan_characters(U, n=None):
    U = _check_set(U)
    if not U:
        if n is None:
            raise ValueError("variable count required for an empty set")
    else:
        n = len(U[0])
        if not is_involutive(U, Division.POMMARET):
            raise ValueError("set is not pommaret-involutive")
    dec = complementary_decomposition(U, Division.POMMARET, n=n)
    q = max((u.degree for u in U), default=0)
    sigma = [0] * n
    for _, mult in dec.generators:
        if mult:
            sigma[len(mult) - 1] += 1
    return CartanCharacters(q, tuple(sigma))


def axioms_check(U, kind, degree_margin=3):
    """Report violations of the involutive-division axioms (a)-(d) on U.

    (a) is checked on multiplicative monomials up to ``degree_margin`` above
    the set degree; (b) uses an exact cone-intersection test; (c) and (d) are
    exact, (d) over all subsets for small sets and a fixed sample otherwise.
    """
    U = _check_set(U)
    report = []
    if not U:
        return report
    n = len(U[0])
    seps = separations(U, kind)

    for u in U:
        mult = sorted(seps[u].multiplicative)
        for w in monomials_up_to(len(mult), degree_margin):
            full = [0] * n
            for pos, e in zip(mult, w):
                full[pos] = e
            wfull = MultiIndex(full)
            for v in monomials_up_to(n, wfull.degree):
                if v.divides(wfull) and not v.support() <= seps[u].multiplicative:
                    report.append(f"(a) violated for {u.format()}: {v.format()} "
                                  f"divides a multiplicative monomial but is not multiplicative")

    for u, v in itertools.combinations(U, 2):
        if _cones_intersect(u, seps[u], v, seps[v]):
            if not (involutive_divides(v, u, U, kind, seps)
                    or involutive_divides(u, v, U, kind, seps)):
                report.append(f"(b) violated for {u.format()}, {v.format()}: "
                              f"cones meet but neither contains the other's tip")

    for u in U:
        for v in U:
            if v != u and involutive_divides(u, v, U, kind, seps):
                if not seps[v].multiplicative <= seps[u].multiplicative:
                    report.append(f"(c) violated for {u.format()} <| {v.format()}")

    others = [u for u in U]
    if len(U) <= 6:
        subsets = []
        for r in range(1, len(U) + 1):
            subsets.extend(itertools.combinations(others, r))
    else:
        import random
        rng = random.Random(1729)
        subsets = [tuple(rng.sample(others, rng.randint(1, len(U))))
                   for _ in range(50)]
    for sub in subsets:
        sub = _check_set(sub)
        sub_seps = separations(sub, kind)
        for u in sub:
            if not seps[u].multiplicative <= sub_seps[u].multiplicative:
                report.append(f"(d) violated for {u.format()} in subset "
                              f"{{{', '.join(v.format() for v in sub)}}}")
    return report
