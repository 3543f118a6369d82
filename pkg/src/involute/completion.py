"""Involutive reduction and completion of linear differential systems.

The completion routine keeps a set G of monic generators together with
bookkeeping triples (poly, ancestor, processed-variables).  Elements of a
queue Q are merged in lowest-leader first; between merges, nonmultiplicative
prolongations are examined lowest first under the completion ranking, with a
chain criterion to skip prolongations that cannot contribute.  Every element
whose leader exceeds a newly found lower leader is displaced back into the
queue, which keeps the final basis minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diffpoly import Ranking
from .monomial import CapExceeded, Division, separations

__all__ = [
    "CompletionOptions", "InvolutiveBasis", "Triple", "CapExceeded",
    "involutive_normal_form", "conventional_normal_form",
    "minimal_involutive_basis", "chain_criterion", "basis_from",
    "verify_involutive", "verify_partial_involutive",
    "groebner_oracle", "s_polynomial", "conventional_autoreduce",
]


@dataclass(frozen=True)
class CompletionOptions:
    division: Division = Division.JANET
    main: Ranking = Ranking()
    completion: Ranking = None
    cap: int = 10000
    use_criterion: bool = True
    autoreduce_input: bool = False

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.completion is None:
            object.__setattr__(self, "completion", self.main)


class Triple:
    """Basis element with its prolongation ancestor and processed variables."""

    __slots__ = ("poly", "ancestor", "processed", "serial")

    def __init__(self, poly, ancestor, processed, serial):
        self.poly = poly
        self.ancestor = ancestor
        self.processed = set(processed)
        self.serial = serial


@dataclass(frozen=True)
class InvolutiveBasis:
    """Completed system: monic elements, their separations, options used."""

    elements: tuple
    separations: tuple
    options: CompletionOptions
    ancestors: tuple = ()
    prolongations_examined: int = 0

    def __len__(self):
        return len(self.elements)

    def leading(self):
        return [f.ld(self.options.main) for f in self.elements]

    def monomial_sets(self):
        out = {}
        for f in self.elements:
            d = f.ld(self.options.main)
            out.setdefault(d.indet, []).append(d.index)
        return {j: tuple(sorted(us)) for j, us in out.items()}

    def format(self):
        return "\n".join(f.format(self.options.main) for f in self.elements)


def _separation_data(G, division, ranking):
    """Leading-monomial sets per function and the separation of each element."""
    leaders = [g.ld(ranking) for g in G]
    sets = {}
    for d in leaders:
        sets.setdefault(d.indet, set()).add(d.index)
    seps_by_j = {j: separations(us, division) for j, us in sets.items()}
    elem_seps = [seps_by_j[d.indet][d.index] for d in leaders]
    return sets, seps_by_j, leaders, elem_seps


def _find_involutive_reducer(term, G, leaders, seps_by_j):
    for idx, f in enumerate(G):
        lead = leaders[idx]
        if lead.indet != term.indet:
            continue
        if not lead.index.divides(term.index):
            continue
        sep = seps_by_j[lead.indet][lead.index]
        if (term.index / lead.index).support() <= sep.multiplicative:
            yield idx


def _reduce(p, G, ranking, reducer_for):
    """Generic full reduction loop; ``reducer_for`` yields candidate indices."""
    if not G:
        return p
    h = p
    while h.terms:
        target = None
        for d, a in h.sorted_terms(ranking):
            candidates = sorted(reducer_for(d),
                                key=lambda i: (ranking.key(G[i].ld(ranking)), i))
            if candidates:
                target = (d, a, G[candidates[0]])
                break
        if target is None:
            return h
        d, a, f = target
        beta = d.index / f.ld(ranking).index
        factor = a / f.lc(ranking)
        h = h - f.prolong(beta).scale(factor)
    return h


def involutive_normal_form(p, G, division, ranking):
    """Full involutive normal form of p modulo the elements of G.

    No term of the result lies in the involutive cone of any leading
    derivative of G; reducers are scanned lowest leader first.
    """
    G = list(G)
    if not G:
        return p
    _, seps_by_j, leaders, _ = _separation_data(G, division, ranking)

    def reducer_for(term):
        return _find_involutive_reducer(term, G, leaders, seps_by_j)

    return _reduce(p, G, ranking, reducer_for)


def conventional_normal_form(p, G, ranking):
    """Ordinary (non-involutive) full normal form; the independent reducer."""
    G = list(G)
    if not G:
        return p
    leaders = [g.ld(ranking) for g in G]

    def reducer_for(term):
        for idx, lead in enumerate(leaders):
            if lead.indet == term.indet and lead.index.divides(term.index):
                yield idx

    return _reduce(p, G, ranking, reducer_for)


def s_polynomial(f, g, ranking):
    """Differential S-polynomial of two elements with same-function leaders."""
    df, dg = f.ld(ranking), g.ld(ranking)
    if df.indet != dg.indet:
        raise ValueError("S-polynomial requires leaders of the same function")
    gamma = df.index.lcm(dg.index)
    pf = f.normalize(ranking).prolong(gamma / df.index)
    pg = g.normalize(ranking).prolong(gamma / dg.index)
    return pf - pg


def groebner_oracle(F, ranking):
    """True iff all pairwise S-polynomials reduce to zero conventionally."""
    F = [f.normalize(ranking) for f in F if not f.is_zero()]
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            if F[i].ld(ranking).indet != F[j].ld(ranking).indet:
                continue
            rem = conventional_normal_form(s_polynomial(F[i], F[j], ranking), F, ranking)
            if not rem.is_zero():
                return False
    return True


def conventional_autoreduce(F, ranking):
    """Mutual conventional reduction until stable; drops zeros, keeps monic."""
    work = [f.normalize(ranking) for f in F if not f.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            rest = work[:i] + work[i + 1:]
            r = conventional_normal_form(work[i], rest, ranking)
            if r.is_zero():
                work.pop(i)
                changed = True
                break
            r = r.normalize(ranking)
            if r != work[i]:
                work[i] = r
                changed = True
                break
    return work


def chain_criterion(p, theta, triples, seps_by_j, ranking_c, main):
    """Involutive analogue of the Buchberger chain criterion.

    True if some triple (f, ancestor, _) has a leader involutively dividing
    ld(p) for the same function while lcm(theta, ancestor) ranks strictly
    below ld(p) under the completion ranking.  Ancestors attached to a
    different function never qualify.
    """
    lead = p.ld(main)
    key_lead = ranking_c.key(lead)
    for t in triples:
        fl = t.poly.ld(main)
        if fl.indet != lead.indet or not fl.index.divides(lead.index):
            continue
        sep = seps_by_j[fl.indet][fl.index]
        if not (lead.index / fl.index).support() <= sep.multiplicative:
            continue
        if theta.indet != t.ancestor.indet:
            continue
        if ranking_c.key(theta.lcm(t.ancestor)) < key_lead:
            return True
    return False


def _basis_of(G, opts, ancestors=None, examined=0):
    order = sorted(range(len(G)), key=lambda i: opts.main.key(G[i].ld(opts.main)),
                   reverse=True)
    elements = tuple(G[i] for i in order)
    _, seps_by_j, leaders, _ = _separation_data(elements, opts.division, opts.main)
    seps = tuple(seps_by_j[d.indet][d.index] for d in leaders)
    anc = tuple(ancestors[i] for i in order) if ancestors else ()
    return InvolutiveBasis(elements, seps, opts, anc, examined)


def minimal_involutive_basis(F, opts=None, trace=None):
    """Complete a finite system to its minimal involutive basis.

    Raises CapExceeded (with the partial basis attached) once the number of
    examined nonmultiplicative prolongations passes ``opts.cap``; Pommaret
    division is not noetherian, so that outcome is expected for inputs with
    no finite Pommaret basis.
    """
    opts = opts or CompletionOptions()
    main, comp = opts.main, opts.completion
    division = opts.division
    work = [f for f in F if not f.is_zero()]
    if not work:
        raise ValueError("input system is empty or all zero")
    if any(not f.terms for f in work):
        raise ValueError("input contains a nonzero constant equation")
    work = [f.normalize(main) for f in work]
    if opts.autoreduce_input:
        work = conventional_autoreduce(work, main)

    serial = 0

    def new_triple(poly, ancestor, processed):
        nonlocal serial
        serial += 1
        return Triple(poly, ancestor, processed, serial)

    start = min(range(len(work)), key=lambda i: (main.key(work[i].ld(main)), i))
    g0 = work[start]
    T = [new_triple(g0, g0.ld(main), set())]
    G = [g0]
    Q = [new_triple(f, f.ld(main), set()) for i, f in enumerate(work) if i != start]
    examined = 0

    def seps_now():
        return _separation_data(G, division, main)

    def nm_of(poly, seps_by_j):
        d = poly.ld(main)
        return seps_by_j[d.indet][d.index].nonmultiplicative

    def displace(h):
        """Move every triple with leader above ld(h) back to the queue."""
        nonlocal T, G
        key_h = main.key(h.ld(main))
        kept = []
        for t in T:
            if main.key(t.poly.ld(main)) > key_h:
                Q.append(t)
                G.remove(t.poly)
            else:
                kept.append(t)
        T = kept
        _, seps_by_j, _, _ = seps_now()
        for t in T:
            t.processed &= set(nm_of(t.poly, seps_by_j))

    while True:
        h = None
        # merge queue elements, lowest leader first, until one survives
        while Q and h is None:
            pick = min(range(len(Q)), key=lambda i: (main.key(Q[i].poly.ld(main)),
                                                     Q[i].serial))
            t = Q.pop(pick)
            _, seps_by_j, _, _ = seps_now()
            skip = opts.use_criterion and chain_criterion(
                t.poly, t.ancestor, T, seps_by_j, comp, main)
            if trace is not None:
                trace.append({"stage": "queue", "leader": t.poly.ld(main),
                              "criterion": skip})
            if skip:
                continue
            r = involutive_normal_form(t.poly, G, division, main)
            if not r.is_zero():
                h = (r.normalize(main), t)
        if h is not None:
            r, t = h
            G.append(r)
            if r.ld(main) == t.poly.ld(main):
                _, seps_by_j, _, _ = seps_now()
                T.append(new_triple(r, t.ancestor,
                                    t.processed & set(nm_of(r, seps_by_j))))
            else:
                T.append(new_triple(r, r.ld(main), set()))
                displace(r)

        # examine nonmultiplicative prolongations by the normal strategy
        while True:
            _, seps_by_j, _, _ = seps_now()
            gate = None
            if Q:
                gate = min(main.key(t.poly.ld(main)) for t in Q)
            best = None
            for t in T:
                for x in nm_of(t.poly, seps_by_j) - t.processed:
                    lead = t.poly.ld(main).differentiate(x)
                    if gate is not None and not main.key(lead) < gate:
                        continue
                    cand_key = (comp.key(lead), t.serial, x)
                    if best is None or cand_key < best[0]:
                        best = (cand_key, t, x)
            if best is None:
                break
            _, t, x = best
            examined += 1
            if examined > opts.cap:
                raise CapExceeded(
                    f"completion exceeded {opts.cap} prolongation examinations",
                    partial=_basis_of(G, opts, examined=examined))
            t.processed.add(x)
            p = t.poly.differentiate(x)
            _, seps_by_j, _, _ = seps_now()
            skip = opts.use_criterion and chain_criterion(
                p, t.ancestor, T, seps_by_j, comp, main)
            status = "criterion"
            if not skip:
                r = involutive_normal_form(p, G, division, main)
                if r.is_zero():
                    status = "zero"
                else:
                    status = "added"
                    r = r.normalize(main)
                    G.append(r)
                    if r.ld(main) == p.ld(main):
                        T.append(new_triple(r, t.ancestor, set()))
                    else:
                        T.append(new_triple(r, r.ld(main), set()))
                        displace(r)
            if trace is not None:
                trace.append({"stage": "prolongation", "leader": t.poly.ld(main),
                              "variable": x, "criterion": skip, "result": status})
        if not Q:
            break

    ancestors = {id(t.poly): t.ancestor for t in T}
    return _basis_of(G, opts, [ancestors[id(g)] for g in G], examined)


def basis_from(elements, opts=None):
    """Wrap an existing system (monic, distinct leaders) without completing."""
    opts = opts or CompletionOptions()
    work = [f.normalize(opts.main) for f in elements if not f.is_zero()]
    if not work:
        raise ValueError("empty system")
    leaders = [f.ld(opts.main) for f in work]
    if len(set(leaders)) != len(leaders):
        raise ValueError("leading derivatives are not pairwise distinct")
    return _basis_of(work, opts)


def verify_involutive(basis):
    """Local involutivity: every nonmultiplicative prolongation reduces to 0."""
    G = list(basis.elements)
    division, main = basis.options.division, basis.options.main
    _, _, _, elem_seps = _separation_data(G, division, main)
    for f, sep in zip(G, elem_seps):
        for x in sep.nonmultiplicative:
            if not involutive_normal_form(f.differentiate(x), G, division, main).is_zero():
                return False
    return True


def verify_partial_involutive(basis, vartheta):
    """Involutivity restricted to prolongations ranked below ``vartheta``.

    Only nonmultiplicative prolongations whose leading derivative precedes
    ``vartheta`` under the completion ranking are required to vanish.
    """
    G = list(basis.elements)
    division, main = basis.options.division, basis.options.main
    comp = basis.options.completion
    bound = comp.key(vartheta)
    _, _, _, elem_seps = _separation_data(G, division, main)
    for f, sep in zip(G, elem_seps):
        for x in sep.nonmultiplicative:
            if not comp.key(f.ld(main).differentiate(x)) < bound:
                continue
            if not involutive_normal_form(f.differentiate(x), G, division, main).is_zero():
                return False
    return True
