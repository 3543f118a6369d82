"""Lie point-symmetry determining systems for solved-form polynomial PDEs.

Works with polynomials in the independent variables, the dependent
functions, their derivative symbols, and the derivatives of the unknown
infinitesimal coefficients (one xi per independent variable, one eta per
dependent function, each a function of all x's and y's).  Applying the
prolonged vector field to an equation and eliminating the equation's lead
and its differential consequences leaves a polynomial in the surviving
derivative symbols whose coefficients, linear in the xi/eta derivatives,
form the determining system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import solution_dimension
from .completion import CompletionOptions, minimal_involutive_basis
from .diffpoly import Context, Derivative, LinearDiffPoly, Ranking
from .monomial import MultiIndex
from .scalars import MultivarPolynomial, RationalFunction


def _add_index(alpha, i):
    return tuple(e + 1 if k == i else e for k, e in enumerate(alpha))


class DiffPolynomial:
    """Sparse polynomial over Q in variables, functions and derivative symbols.

    Symbols: ('x', i) and ('y', j) for coordinates, ('d', j, alpha) for the
    derivative of y_j by the multiindex alpha, ('a', k, beta) for derivatives
    of the k-th infinitesimal coefficient (beta runs over x's then y's).
    """

    __slots__ = ("n", "m", "terms")

    def __init__(self, n, m, terms=None):
        self.n = n
        self.m = m
        out = {}
        if terms:
            for key, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if not c:
                    continue
                key = tuple(sorted((sym, int(e)) for sym, e in key if e))
                prev = out.get(key)
                s = c if prev is None else prev + c
                if s:
                    out[key] = s
                elif prev is not None:
                    del out[key]
        self.terms = out

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n, m):
        return cls(n, m)

    @classmethod
    def const(cls, n, m, c):
        return cls(n, m, {(): Fraction(c)})

    @classmethod
    def symbol(cls, n, m, sym, power=1):
        return cls(n, m, {((sym, power),): Fraction(1)})

    @classmethod
    def var(cls, n, m, i):
        return cls.symbol(n, m, ("x", i))

    @classmethod
    def func(cls, n, m, j):
        return cls.symbol(n, m, ("y", j))

    @classmethod
    def deriv(cls, n, m, j, alpha):
        alpha = tuple(alpha)
        if not any(alpha):
            return cls.func(n, m, j)
        return cls.symbol(n, m, ("d", j, alpha))

    # -- basic structure -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, DiffPolynomial) and self.n == other.n
                and self.m == other.m and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def _raw(self, terms):
        p = DiffPolynomial.__new__(DiffPolynomial)
        p.n, p.m, p.terms = self.n, self.m, terms
        return p

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        res = dict(self.terms)
        for k, c in other.terms.items():
            s = res.get(k, Fraction(0)) + c
            if s:
                res[k] = s
            elif k in res:
                del res[k]
        return self._raw(res)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        res = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                merged = dict(k1)
                for sym, e in k2:
                    merged[sym] = merged.get(sym, 0) + e
                key = tuple(sorted(merged.items()))
                s = res.get(key, Fraction(0)) + c1 * c2
                if s:
                    res[key] = s
                elif key in res:
                    del res[key]
        return self._raw(res)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = DiffPolynomial.const(self.n, self.m, 1)
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
            return DiffPolynomial.zero(self.n, self.m)
        return self._raw({k: cc * c for k, cc in self.terms.items()})

    def symbols(self):
        out = set()
        for key in self.terms:
            out.update(sym for sym, _ in key)
        return out

    def max_order(self):
        return max((sum(sym[2]) for key in self.terms for sym, _ in key
                    if sym[0] == "d"), default=0)

    # -- calculus -------------------------------------------------------------

    def partial_wrt(self, sym):
        """Formal partial derivative with respect to one symbol."""
        res = {}
        for key, c in self.terms.items():
            for pos, (s, e) in enumerate(key):
                if s == sym:
                    rest = key[:pos] + ((s, e - 1),) + key[pos + 1:]
                    rest = tuple(x for x in rest if x[1])
                    val = res.get(rest, Fraction(0)) + c * e
                    if val:
                        res[rest] = val
                    elif rest in res:
                        del res[rest]
                    break
        return self._raw(res)

    def _d_symbol(self, i, sym):
        """Total derivative of a single symbol by x_i."""
        n, m = self.n, self.m
        head = sym[0]
        if head == "x":
            return DiffPolynomial.const(n, m, 1 if sym[1] == i else 0)
        if head == "y":
            return DiffPolynomial.deriv(n, m, sym[1], _add_index((0,) * n, i))
        if head == "d":
            return DiffPolynomial.deriv(n, m, sym[1], _add_index(sym[2], i))
        if head == "a":
            k, beta = sym[1], sym[2]
            out = DiffPolynomial.symbol(n, m, ("a", k, _add_index(beta, i)))
            for j in range(m):
                step = DiffPolynomial.deriv(n, m, j, _add_index((0,) * n, i))
                out = out + step * DiffPolynomial.symbol(n, m, ("a", k, _add_index(beta, n + j)))
            return out
        raise ValueError(f"unknown symbol {sym!r}")

    def total_derivative(self, i):
        """Chain-rule total derivative D_i over every symbol present."""
        out = DiffPolynomial.zero(self.n, self.m)
        for sym in self.symbols():
            part = self.partial_wrt(sym)
            if part.is_zero():
                continue
            out = out + part * self._d_symbol(i, sym)
        return out

    def substitute(self, mapping):
        """Replace symbols by polynomials; symbols not mapped stay put."""
        out = DiffPolynomial.zero(self.n, self.m)
        for key, c in self.terms.items():
            prod = DiffPolynomial.const(self.n, self.m, c)
            for sym, e in key:
                rep = mapping.get(sym)
                if rep is None:
                    prod = prod * DiffPolynomial.symbol(self.n, self.m, sym, e)
                else:
                    prod = prod * rep ** e
            out = out + prod
        return out

    def format(self, var_names=None, func_names=None, coeff_names=None):
        if not self.terms:
            return "0"
        var_names = var_names or [f"x{i+1}" for i in range(self.n)]
        func_names = func_names or [f"y{j+1}" for j in range(self.m)]
        coeff_names = coeff_names or ([f"xi{i+1}" for i in range(self.n)]
                                      + [f"eta{j+1}" for j in range(self.m)])

        def sym_str(sym):
            if sym[0] == "x":
                return var_names[sym[1]]
            if sym[0] == "y":
                return func_names[sym[1]]
            if sym[0] == "d":
                return f"D[{func_names[sym[1]]},{{{','.join(map(str, sym[2]))}}}]"
            return f"D[{coeff_names[sym[1]]},{{{','.join(map(str, sym[2]))}}}]"

        pieces = []
        for key in sorted(self.terms):
            c = self.terms[key]
            factors = []
            for sym, e in key:
                s = sym_str(sym)
                factors.append(s if e == 1 else f"{s}^{e}")
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
        return f"DiffPolynomial({self.format()})"


def total_derivative(p, i):
    return p.total_derivative(i)


class VectorFieldAnsatz:
    """Point-symmetry generator with unknown coefficients xi_i(x,y), eta_j(x,y)."""

    def __init__(self, n, m):
        self.n = n
        self.m = m
        self._zeta = {}

    def xi(self, i):
        return DiffPolynomial.symbol(self.n, self.m, ("a", i, (0,) * (self.n + self.m)))

    def eta(self, j):
        return DiffPolynomial.symbol(self.n, self.m, ("a", self.n + j, (0,) * (self.n + self.m)))

    def zeta(self, j, path):
        """Prolongation coefficient for the derivative of y_j along ``path``."""
        path = tuple(path)
        if not path:
            raise ValueError("empty prolongation path")
        key = (j, path)
        cached = self._zeta.get(key)
        if cached is not None:
            return cached
        n, m = self.n, self.m
        i = path[-1]
        if len(path) == 1:
            z = self.eta(j).total_derivative(i)
            prefix_alpha = (0,) * n
        else:
            z = self.zeta(j, path[:-1]).total_derivative(i)
            prefix_alpha = [0] * n
            for p in path[:-1]:
                prefix_alpha[p] += 1
            prefix_alpha = tuple(prefix_alpha)
        for q in range(n):
            z = z - (DiffPolynomial.deriv(n, m, j, _add_index(prefix_alpha, q))
                     * self.xi(q).total_derivative(i))
        self._zeta[key] = z
        return z


def zeta(ansatz, j, path):
    return ansatz.zeta(j, path)


def apply_prolonged_field(f, ansatz, q):
    """Apply the vector field prolonged to order q to a differential polynomial."""
    if q < f.max_order():
        raise ValueError(f"prolongation order {q} below the order of the equation")
    n, m = f.n, f.m
    out = DiffPolynomial.zero(n, m)
    for i in range(n):
        part = f.partial_wrt(("x", i))
        if part:
            out = out + ansatz.xi(i) * part
    for j in range(m):
        part = f.partial_wrt(("y", j))
        if part:
            out = out + ansatz.eta(j) * part
    for sym in f.symbols():
        if sym[0] != "d":
            continue
        part = f.partial_wrt(sym)
        if part:
            path = []
            for i, e in enumerate(sym[2]):
                path.extend([i] * e)
            out = out + ansatz.zeta(sym[1], tuple(path)) * part
    return out


@dataclass(frozen=True)
class SolvedEquation:
    """lead = rhs, with the lead a derivative symbol absent from the rhs."""

    lead: tuple  # (function index, multiindex)
    rhs: DiffPolynomial

    def __post_init__(self):
        j, alpha = self.lead
        alpha = tuple(alpha)
        if not any(alpha):
            raise ValueError("the lead of a solved equation must have order >= 1")
        for sym in self.rhs.symbols():
            if sym[0] == "d" and sym[1] == j and all(b >= a for a, b in zip(alpha, sym[2])):
                raise ValueError("rhs contains the lead or one of its derivatives")
        object.__setattr__(self, "lead", (j, alpha))

    def residual(self):
        n, m = self.rhs.n, self.rhs.m
        return DiffPolynomial.deriv(n, m, *self.lead) - self.rhs


class _LeadSubstituter:
    """Fixed-point elimination of lead symbols and their derivatives."""

    def __init__(self, eqs):
        self.eqs = list(eqs)
        self.cache = {}

    def _rhs_derivative(self, idx, delta):
        key = (idx, delta)
        got = self.cache.get(key)
        if got is not None:
            return got
        if not any(delta):
            out = self.eqs[idx].rhs
        else:
            i = next(k for k, e in enumerate(delta) if e)
            lower = tuple(e - 1 if k == i else e for k, e in enumerate(delta))
            out = self._rhs_derivative(idx, lower).total_derivative(i)
        self.cache[key] = out
        return out

    def _match(self, sym):
        if sym[0] != "d":
            return None
        for idx, eq in enumerate(self.eqs):
            j, alpha = eq.lead
            if sym[1] == j and all(b >= a for a, b in zip(alpha, sym[2])):
                return idx
        return None

    def reduce(self, p, max_rounds=200):
        for _ in range(max_rounds):
            mapping = {}
            for sym in p.symbols():
                idx = self._match(sym)
                if idx is not None:
                    j, alpha = self.eqs[idx].lead
                    delta = tuple(b - a for a, b in zip(alpha, sym[2]))
                    mapping[sym] = self._rhs_derivative(idx, delta)
            if not mapping:
                return p
            p = p.substitute(mapping)
        raise ValueError("substitution did not reach a fixed point; circular leads?")


@dataclass(frozen=True)
class SymmetryProblem:
    variables: tuple
    functions: tuple
    equations: tuple
    det_order: tuple = None  # sequence of ('x', i) / ('y', j), highest first

    @property
    def n(self):
        return len(self.variables)

    @property
    def m(self):
        return len(self.functions)


def _default_det_order(n, m):
    return tuple(("y", j) for j in range(m)) + tuple(("x", i) for i in reversed(range(n)))


def determining_context(problem):
    """Context of the determining system induced by the problem's ordering."""
    order = problem.det_order or _default_det_order(problem.n, problem.m)
    if len(order) != problem.n + problem.m:
        raise ValueError("determining order must list every coordinate once")
    names = []
    for head, k in order:
        names.append(problem.variables[k] if head == "x" else problem.functions[k])
    dep = tuple([f"xi_{v}" for v in problem.variables]
                + [f"eta_{f}" for f in problem.functions])
    return Context(tuple(names), dep), order


def determining_system(problem):
    """Generate the linear determining system for the infinitesimal coefficients.

    Returns the determining-system context and the monic, deduplicated list
    of determining equations.
    """
    n, m = problem.n, problem.m
    ansatz = VectorFieldAnsatz(n, m)
    subst = _LeadSubstituter(problem.equations)
    det_ctx, order = determining_context(problem)
    pos = {(head, k): p for p, (head, k) in enumerate(order)}
    nv = n + m

    raw = []
    for eq in problem.equations:
        f = eq.residual()
        g = apply_prolonged_field(f, ansatz, f.max_order())
        raw.append(subst.reduce(g))

    internal = Ranking("grlex", "term")
    collected = {}
    for g in raw:
        buckets = {}
        for key, c in g.terms.items():
            dpart = []
            apart = []
            coeff_exp = [0] * nv
            for sym, e in key:
                if sym[0] == "d":
                    dpart.append((sym, e))
                elif sym[0] == "a":
                    apart.append((sym, e))
                elif sym[0] == "x":
                    coeff_exp[pos[("x", sym[1])]] += e
                else:
                    coeff_exp[pos[("y", sym[1])]] += e
            if len(apart) != 1 or apart[0][1] != 1:
                raise AssertionError("invariance condition is not linear in the ansatz")
            (asym, _), = apart
            bucket = buckets.setdefault(tuple(sorted(dpart)), {})
            prev = bucket.get(asym)
            mono = MultivarPolynomial(nv, {tuple(coeff_exp): c})
            bucket[asym] = mono if prev is None else prev + mono
        for bucket in buckets.values():
            terms = {}
            for asym, poly in bucket.items():
                if poly.is_zero():
                    continue
                k, beta = asym[1], asym[2]
                gamma = [0] * nv
                for i in range(n):
                    gamma[pos[("x", i)]] = beta[i]
                for j in range(m):
                    gamma[pos[("y", j)]] = beta[n + j]
                terms[Derivative(k, MultiIndex(gamma))] = RationalFunction(poly)
            eqn = LinearDiffPoly(det_ctx, terms)
            if eqn.is_zero():
                continue
            eqn = eqn.normalize(internal)
            collected[(tuple(sorted(eqn.terms.items(), key=lambda t: internal.key(t[0]))),
                       eqn.const)] = eqn
    eqs = sorted(collected.values(),
                 key=lambda e: (internal.key(e.ld(internal)), len(e.terms), e.format(internal)))
    return det_ctx, eqs


def symmetry_dimension(problem, opts=None):
    """Dimension of the symmetry group: complete the determining system.

    Returns (SolutionDimension, InvolutiveBasis, determining context).
    """
    det_ctx, eqs = determining_system(problem)
    opts = opts or CompletionOptions(main=Ranking("degrevlex", "term"))
    basis = minimal_involutive_basis(eqs, opts)
    return solution_dimension(basis), basis, det_ctx
