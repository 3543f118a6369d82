from fractions import Fraction

import pytest

from involute import (CompletionOptions, Division, Ranking,
                      conventional_normal_form, minimal_involutive_basis,
                      solution_dimension, symmetry_dimension,
                      verify_involutive)
from involute.scalars import MultivarPolynomial
from involute.symmetry import (DiffPolynomial, SolvedEquation, SymmetryProblem,
                               VectorFieldAnsatz, apply_prolonged_field,
                               determining_system, total_derivative, zeta)
from conftest import load_problem, norm_set, substitute_solution, system

DRL = Ranking("degrevlex")


def dp(n, m):
    return {
        "const": lambda c: DiffPolynomial.const(n, m, c),
        "x": lambda i: DiffPolynomial.var(n, m, i),
        "y": lambda j: DiffPolynomial.func(n, m, j),
        "d": lambda j, *alpha: DiffPolynomial.deriv(n, m, j, alpha),
    }


DIFFUSION_INVOLUTIVE = """
    vars: y x t
    funcs: xi_t xi_x eta_y
    ranking: degrevlex
    eq: D[xi_t,{1,0,0}]
    eq: D[xi_x,{1,0,0}]
    eq: D[eta_y,{1,0,0}]
    eq: D[xi_t,{0,1,0}]
    eq: D[xi_x,{0,1,0}] - 1/t*xi_t
    eq: D[eta_y,{0,1,0}]
    eq: D[xi_t,{0,0,1}] - 1/t*xi_t
    eq: D[xi_x,{0,0,1}] - eta_y
    eq: D[eta_y,{0,0,1}]
"""

DIFFUSION_RAW = """
    vars: y x t
    funcs: xi_t xi_x eta_y
    ranking: degrevlex
    eq: D[xi_t,{2,0,0}]
    eq: D[xi_x,{2,0,0}]
    eq: t*D[eta_y,{2,0,0}] - 2*t*D[xi_x,{1,1,0}] - 2*y*D[xi_x,{1,0,0}]
    eq: D[xi_t,{1,0,0}]
    eq: 2*t^2*D[eta_y,{1,1,0}] - t^2*D[xi_x,{0,2,0}] - y*t*D[xi_x,{0,1,0}] + t*D[xi_x,{0,0,1}] + y*xi_t - t*eta_y
    eq: t*D[eta_y,{0,2,0}] - y*D[eta_y,{0,1,0}] - D[eta_y,{0,0,1}]
    eq: t^2*D[xi_t,{0,2,0}] - y*t*D[xi_t,{0,1,0}] + 2*t*D[xi_x,{0,1,0}] - t*D[xi_t,{0,0,1}] - xi_t
    eq: t*D[xi_t,{1,1,0}] + D[xi_x,{1,0,0}]
    eq: D[xi_t,{0,1,0}]
"""

HARRY_DYM_INVOLUTIVE = """
    vars: y x t
    funcs: xi_t xi_x eta_y
    ranking: degrevlex
    eq: D[eta_y,{0,2,0}]
    eq: D[eta_y,{0,1,1}]
    eq: D[eta_y,{1,0,0}] - 1/y*eta_y
    eq: D[eta_y,{0,0,1}]
    eq: D[xi_x,{1,0,0}]
    eq: D[xi_x,{0,1,0}] - 1/3*D[xi_t,{0,0,1}] - 1/y*eta_y
    eq: D[xi_x,{0,0,1}]
    eq: D[xi_t,{0,0,2}]
    eq: D[xi_t,{1,0,0}]
    eq: D[xi_t,{0,1,0}]
"""

HARRY_DYM_RAW = """
    vars: y x t
    funcs: xi_t xi_x eta_y
    ranking: degrevlex
    eq: D[xi_t,{1,0,0}]
    eq: D[xi_t,{0,1,0}]
    eq: D[xi_x,{1,0,0}]
    eq: D[eta_y,{2,0,0}]
    eq: D[eta_y,{1,1,0}] - D[xi_x,{0,2,0}]
    eq: D[eta_y,{0,0,1}] - y^3*D[eta_y,{0,3,0}]
    eq: 3*y^3*D[eta_y,{1,2,0}] + D[xi_x,{0,0,1}] - y^3*D[xi_x,{0,3,0}]
    eq: y*D[xi_t,{0,0,1}] - 3*y*D[xi_x,{0,1,0}] + 3*eta_y
"""


class TestTotalDerivative:
    def test_coordinate_function(self):
        s = dp(1, 1)
        assert total_derivative(s["y"](0), 0) == s["d"](0, 1)

    def test_product_rule(self):
        s = dp(2, 1)
        t, yx = s["x"](0), s["d"](0, 0, 1)
        got = total_derivative(t * yx, 0)
        assert got == yx + t * s["d"](0, 1, 1)

    def test_chain_rule_power(self):
        s = dp(1, 1)
        y = s["y"](0)
        got = total_derivative(y ** 3, 0)
        assert got == s["const"](3) * y * y * s["d"](0, 1)


class TestZeta:
    def test_first_prolongation(self):
        # single-variable, single-function expansion of the first coefficient
        ansatz = VectorFieldAnsatz(1, 1)
        s = dp(1, 1)
        yx = s["d"](0, 1)
        eta_x = DiffPolynomial.symbol(1, 1, ("a", 1, (1, 0)))
        eta_y = DiffPolynomial.symbol(1, 1, ("a", 1, (0, 1)))
        xi_x = DiffPolynomial.symbol(1, 1, ("a", 0, (1, 0)))
        xi_y = DiffPolynomial.symbol(1, 1, ("a", 0, (0, 1)))
        want = eta_x + (eta_y - xi_x) * yx - xi_y * yx * yx
        assert zeta(ansatz, 0, (0,)) == want

    def test_path_symmetry(self):
        ansatz = VectorFieldAnsatz(2, 1)
        assert zeta(ansatz, 0, (0, 1)) == zeta(ansatz, 0, (1, 0))
        ansatz3 = VectorFieldAnsatz(2, 1)
        assert (zeta(ansatz3, 0, (0, 1, 1)) == zeta(ansatz3, 0, (1, 0, 1))
                == zeta(ansatz3, 0, (1, 1, 0)))

    def test_translation_ansatz_vanishes(self):
        # constant xi, zero eta: all prolongation coefficients vanish
        ansatz = VectorFieldAnsatz(2, 1)
        z = zeta(ansatz, 0, (0, 1))
        mapping = {}
        for key in z.terms:
            for sym, _ in key:
                if sym[0] != "a":
                    continue
                k, beta = sym[1], sym[2]
                if k >= 2 or any(beta):  # eta or any derivative of xi
                    mapping[sym] = DiffPolynomial.zero(2, 1)
        assert z.substitute(mapping).is_zero()


class TestProlongedField:
    def test_single_derivative(self):
        ansatz = VectorFieldAnsatz(2, 1)
        s = dp(2, 1)
        f = s["d"](0, 1, 0)  # y_t with variables (t, x)
        assert apply_prolonged_field(f, ansatz, 1) == zeta(ansatz, 0, (0,))

    def test_linearity(self):
        ansatz = VectorFieldAnsatz(2, 1)
        s = dp(2, 1)
        f = s["d"](0, 1, 0) - s["d"](0, 0, 2)
        want = zeta(ansatz, 0, (0,)) - zeta(ansatz, 0, (1, 1))
        assert apply_prolonged_field(f, ansatz, 2) == want

    def test_product_of_symbols(self):
        ansatz = VectorFieldAnsatz(2, 1)
        s = dp(2, 1)
        y, yxxx = s["y"](0), s["d"](0, 0, 3)
        f = y ** 3 * yxxx
        want = (s["const"](3) * y * y * ansatz.eta(0) * yxxx
                + y ** 3 * zeta(ansatz, 0, (1, 1, 1)))
        assert apply_prolonged_field(f, ansatz, 3) == want

    def test_order_too_small(self):
        ansatz = VectorFieldAnsatz(2, 1)
        s = dp(2, 1)
        with pytest.raises(ValueError):
            apply_prolonged_field(s["d"](0, 0, 2), ansatz, 1)


class TestSolvedEquation:
    def test_rejects_lead_in_rhs(self):
        s = dp(2, 1)
        with pytest.raises(ValueError):
            SolvedEquation((0, (1, 0)), s["d"](0, 1, 1))

    def test_rejects_order_zero_lead(self):
        s = dp(2, 1)
        with pytest.raises(ValueError):
            SolvedEquation((0, (0, 0)), s["y"](0))


class TestDeterminingSystems:
    def test_linear_homogeneous(self):
        pf = load_problem("diffusion.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        for e in eqs:
            assert e.const.is_zero()
            assert e.terms

    def test_diffusion_completion_matches_table(self):
        pf = load_problem("diffusion.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        opts = CompletionOptions(division=Division.JANET, main=DRL)
        basis = minimal_involutive_basis(eqs, opts)
        want_pf, want = system(DIFFUSION_INVOLUTIVE)
        assert norm_set(basis.elements, DRL) == norm_set(want, DRL)

    def test_diffusion_ideal_equals_published_raw_system(self):
        pf = load_problem("diffusion.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        raw_pf, raw = system(DIFFUSION_RAW)
        opts = CompletionOptions(division=Division.JANET, main=DRL)
        ours = minimal_involutive_basis(eqs, opts)
        theirs = minimal_involutive_basis(raw, opts)
        assert norm_set(ours.elements, DRL) == norm_set(theirs.elements, DRL)

    @pytest.mark.parametrize("division", [Division.JANET, Division.POMMARET])
    def test_harry_dym_completion(self, division):
        pf = load_problem("harrydym.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        opts = CompletionOptions(division=division, main=DRL)
        basis = minimal_involutive_basis(eqs, opts)
        want_pf, want = system(HARRY_DYM_INVOLUTIVE)
        assert norm_set(basis.elements, DRL) == norm_set(want, DRL)
        assert verify_involutive(basis)

    def test_harry_dym_ideal_equals_published_raw_system(self):
        pf = load_problem("harrydym.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        raw_pf, raw = system(HARRY_DYM_RAW)
        opts = CompletionOptions(division=Division.JANET, main=DRL)
        ours = minimal_involutive_basis(eqs, opts)
        theirs = minimal_involutive_basis(raw, opts)
        assert norm_set(ours.elements, DRL) == norm_set(theirs.elements, DRL)


class TestKnownSolutionsAnnihilate:
    def test_diffusion_three_parameter_family(self):
        # xi_t = c1*t, xi_x = c1*x + c2*t + c3, eta = c2 over (y, x, t, c1, c2, c3)
        pf = load_problem("diffusion.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        total = 6

        def P(terms):
            return MultivarPolynomial(total, terms)

        assigns = {
            0: P({(0, 0, 1, 1, 0, 0): 1}),
            1: P({(0, 1, 0, 1, 0, 0): 1, (0, 0, 1, 0, 1, 0): 1,
                  (0, 0, 0, 0, 0, 1): 1}),
            2: P({(0, 0, 0, 0, 1, 0): 1}),
        }
        for e in eqs:
            assert substitute_solution(e, assigns, total).is_zero()

    def test_harry_dym_five_parameter_family(self):
        # xi_t = c1 + c2*t, xi_x = c3 + c4*x + c5*x^2,
        # eta = (c4 - c2/3 + 2*c5*x) * y over (y, x, t, c1..c5)
        pf = load_problem("harrydym.pde")
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        total = 8

        def P(terms):
            return MultivarPolynomial(total, terms)

        assigns = {
            0: P({(0, 0, 0, 1, 0, 0, 0, 0): 1, (0, 0, 1, 0, 1, 0, 0, 0): 1}),
            1: P({(0, 0, 0, 0, 0, 1, 0, 0): 1, (0, 1, 0, 0, 0, 0, 1, 0): 1,
                  (0, 2, 0, 0, 0, 0, 0, 1): 1}),
            2: P({(1, 0, 0, 0, 0, 0, 1, 0): 1,
                  (1, 0, 0, 0, 1, 0, 0, 0): Fraction(-1, 3),
                  (1, 1, 0, 0, 0, 0, 0, 1): 2}),
        }
        for e in eqs:
            assert substitute_solution(e, assigns, total).is_zero()

    def test_translations_solve_trivial_equation(self):
        # y_t = 0: constant xi's and zero eta annihilate the system
        pf, _ = system("""
            vars: t x
            funcs: y
            solve: D[y,t] = 0
        """)
        det_ctx, eqs = determining_system(pf.symmetry_problem())
        total = 5  # (y, x, t, c1, c2)

        def P(terms):
            return MultivarPolynomial(total, terms)

        assigns = {
            0: P({(0, 0, 0, 1, 0): 1}),
            1: P({(0, 0, 0, 0, 1): 1}),
            2: P({}),
        }
        for e in eqs:
            assert substitute_solution(e, assigns, total).is_zero()


class TestSymmetryDimension:
    def test_diffusion(self):
        pf = load_problem("diffusion.pde")
        dim, basis, det_ctx = symmetry_dimension(pf.symmetry_problem())
        assert dim.finite and dim.value == 3

    def test_harry_dym(self):
        pf = load_problem("harrydym.pde")
        dim, basis, det_ctx = symmetry_dimension(pf.symmetry_problem())
        assert dim.finite and dim.value == 5
        # five multiplier-free generators: xi_t, d_t xi_t, xi_x, eta, d_x eta
        gens = {(det_ctx.functions[j], tuple(v))
                for j, dec in dim.decompositions.items()
                for v, mult in dec.entries()}
        assert gens == {("xi_t", (0, 0, 0)), ("xi_t", (0, 0, 1)),
                        ("xi_x", (0, 0, 0)), ("eta_y", (0, 0, 0)),
                        ("eta_y", (0, 1, 0))}

    def test_transport_infinite(self):
        pf = load_problem("transport.pde")
        dim, basis, det_ctx = symmetry_dimension(pf.symmetry_problem())
        assert not dim.finite


class TestDetOrderOverride:
    def test_explicit_default_order(self):
        import textwrap
        from involute import parse_problem
        pf = load_problem("diffusion.pde")
        base = pf.symmetry_problem()
        pf2 = parse_problem(textwrap.dedent("""
            vars: t x
            funcs: y
            detvars: y x t
            solve: D[y,t] = -y*D[y,x] + t*D[y,x,x]
        """))
        override = pf2.symmetry_problem()
        ctx_a, eqs_a = determining_system(base)
        ctx_b, eqs_b = determining_system(override)
        assert ctx_a == ctx_b
        assert norm_set(eqs_a, DRL) == norm_set(eqs_b, DRL)

    def test_alternative_order_same_dimension(self):
        import textwrap
        from involute import parse_problem
        pf = parse_problem(textwrap.dedent("""
            vars: t x
            funcs: y
            detvars: t x y
            solve: D[y,t] = -y*D[y,x] + t*D[y,x,x]
        """))
        dim, basis, det_ctx = symmetry_dimension(pf.symmetry_problem())
        assert det_ctx.variables == ("t", "x", "y")
        assert dim.finite and dim.value == 3
