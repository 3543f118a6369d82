import random

import pytest

from involute import (CapExceeded, Division, MultiIndex, autoreduce,
                      axioms_check, cartan_characters,
                      complementary_decomposition, complete, in_cone,
                      involutive_divides, is_involutive, monomials_up_to,
                      separation, separations)
from conftest import (complete_bruteforce, cones_pairwise_disjoint_bruteforce,
                      decomposition_exact_bruteforce, mi)

EX1 = (mi(2, 0, 1), mi(1, 1, 0), mi(1, 0, 2))


class TestSeparations:
    # all nine table cells for the three-element set
    TABLE = {
        Division.JANET: {mi(2, 0, 1): {0, 1, 2}, mi(1, 1, 0): {1, 2},
                         mi(1, 0, 2): {2}},
        Division.POMMARET: {mi(2, 0, 1): {2}, mi(1, 1, 0): {1, 2},
                            mi(1, 0, 2): {2}},
        Division.LEX_INDUCED: {mi(2, 0, 1): {0}, mi(1, 1, 0): {0, 1},
                               mi(1, 0, 2): {0, 1, 2}},
    }

    @pytest.mark.parametrize("kind", list(Division))
    def test_table(self, kind):
        for u, mult in self.TABLE[kind].items():
            sep = separation(u, EX1, kind)
            assert sep.multiplicative == frozenset(mult)
            assert sep.nonmultiplicative == frozenset(range(3)) - frozenset(mult)
            assert sep.mu == len(mult)

    def test_pommaret_unit(self):
        assert separation(mi(0, 0, 0), [mi(0, 0, 0)],
                          Division.POMMARET).multiplicative == frozenset(range(3))

    def test_not_member(self):
        with pytest.raises(ValueError):
            separation(mi(1, 1, 1), EX1, Division.JANET)

    @pytest.mark.parametrize("kind", list(Division))
    def test_partition(self, kind):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 4)
            U = {MultiIndex(tuple(rng.randint(0, 3) for _ in range(n)))
                 for _ in range(rng.randint(1, 6))}
            for u, sep in separations(U, kind).items():
                assert sep.multiplicative | sep.nonmultiplicative == frozenset(range(n))
                assert not sep.multiplicative & sep.nonmultiplicative


class TestInvolutiveDivides:
    def test_nonmultiplicative_direction(self):
        assert not involutive_divides(mi(1, 1, 0), mi(2, 1, 0), EX1, Division.JANET)

    def test_reflexive(self):
        for kind in Division:
            for u in EX1:
                assert involutive_divides(u, u, EX1, kind)

    def test_lex_induced_free_cone(self):
        assert involutive_divides(mi(1, 0, 2), mi(1, 3, 5), EX1, Division.LEX_INDUCED)


class TestAutoreduce:
    def test_example_set_is_reduced(self):
        assert set(autoreduce(EX1, Division.JANET)) == set(EX1)
        assert cones_pairwise_disjoint_bruteforce(list(EX1), Division.JANET)

    def test_empty(self):
        assert autoreduce((), Division.JANET) == ()

    def test_pommaret_discard(self):
        assert autoreduce([mi(1, 0), mi(1, 1)], Division.POMMARET) == (mi(1, 0),)

    @pytest.mark.parametrize("kind", list(Division))
    def test_output_disjoint(self, kind):
        rng = random.Random(23)
        for _ in range(25):
            n = rng.randint(1, 3)
            U = {MultiIndex(tuple(rng.randint(0, 3) for _ in range(n)))
                 for _ in range(rng.randint(1, 6))}
            red = autoreduce(U, kind)
            assert cones_pairwise_disjoint_bruteforce(list(red), kind)


class TestComplete:
    def test_janet_adds_one(self):
        res = complete(EX1, Division.JANET)
        assert set(res) == set(EX1) | {mi(2, 1, 0)}
        assert complete_bruteforce(list(EX1), list(res), Division.JANET)

    def test_lex_induced_adds_one(self):
        res = complete(EX1, Division.LEX_INDUCED)
        assert set(res) == set(EX1) | {mi(1, 1, 1)}
        assert complete_bruteforce(list(EX1), list(res), Division.LEX_INDUCED)

    def test_pommaret_cap(self):
        with pytest.raises(CapExceeded) as err:
            complete(EX1, Division.POMMARET, cap=100)
        assert len(err.value.partial) > len(EX1)

    def test_noetherian_divisions_terminate(self):
        rng = random.Random(41)
        for _ in range(40):
            n = rng.randint(1, 3)
            U = {MultiIndex(tuple(rng.randint(0, 4) for _ in range(n)))
                 for _ in range(rng.randint(1, 5))}
            for kind in (Division.JANET, Division.LEX_INDUCED):
                res = complete(U, kind, cap=5000)
                assert is_involutive(res, kind)


class TestComplementaryDecomposition:
    def test_janet_compact_table(self):
        U = complete(EX1, Division.JANET)
        dec = complementary_decomposition(U, Division.JANET)
        table = dict(dec.entries())
        # the three rows of the compact table
        assert table[mi(0, 0, 0)] == frozenset({1, 2})
        assert table[mi(1, 0, 0)] == frozenset()
        assert table[mi(2, 0, 0)] == frozenset({0})
        # x1*x3 is in the complement and needs its own multiplier-free cone
        assert table[mi(1, 0, 1)] == frozenset()
        assert len(table) == 4
        assert decomposition_exact_bruteforce(list(U), dec)

    def test_lex_induced_cover(self):
        U = complete(EX1, Division.LEX_INDUCED)
        dec = complementary_decomposition(U, Division.LEX_INDUCED)
        assert decomposition_exact_bruteforce(list(U), dec)
        # normalized tips: every multiplier cone sits at the set degree or above
        q = max(u.degree for u in U)
        assert all(v.degree >= q for v, mult in dec.generators if mult)

    def test_whole_ring(self):
        dec = complementary_decomposition([mi(0, 0, 0)], Division.JANET)
        assert dec.finite_part == () and dec.generators == ()

    @pytest.mark.parametrize("kind", list(Division))
    def test_random_exact_cover(self, kind):
        rng = random.Random(59)
        done = 0
        while done < 15:
            n = rng.randint(1, 3)
            U = {MultiIndex(tuple(rng.randint(0, 3) for _ in range(n)))
                 for _ in range(rng.randint(1, 5))}
            try:
                U = complete(U, kind, cap=2000)
            except CapExceeded:
                continue
            dec = complementary_decomposition(U, kind)
            assert decomposition_exact_bruteforce(list(U), dec)
            done += 1


class TestCartanCharacters:
    def test_single_variable(self):
        ch = cartan_characters([mi(1)])
        assert ch.sigma == (0,)
        dec = complementary_decomposition([mi(1)], Division.POMMARET)
        assert dec.finite_part == (mi(0),)

    def test_empty_set(self):
        ch = cartan_characters((), n=2)
        assert ch.q == 0 and ch.sigma == (0, 1)

    def test_finite_complement_all_zero(self):
        U = complete([mi(2, 0, 0), mi(0, 2, 0), mi(0, 1, 2), mi(0, 0, 4)],
                     Division.POMMARET)
        ch = cartan_characters(U)
        dec = complementary_decomposition(U, Division.POMMARET)
        assert ch.sigma == (0, 0, 0)
        assert len(dec.finite_part) == 12
        assert decomposition_exact_bruteforce(list(U), dec)

    def test_requires_involutive(self):
        with pytest.raises(ValueError):
            cartan_characters(EX1)  # not pommaret-complete


class TestAxioms:
    @pytest.mark.parametrize("kind", list(Division))
    def test_example_set(self, kind):
        assert axioms_check(EX1, kind) == []

    def test_singleton(self):
        for kind in Division:
            assert axioms_check([mi(2, 1)], kind) == []

    @pytest.mark.parametrize("kind", list(Division))
    def test_randomized(self, kind):
        rng = random.Random(61)
        for _ in range(30):
            n = rng.randint(1, 4)
            U = {MultiIndex(tuple(rng.randint(0, 3) for _ in range(n)))
                 for _ in range(rng.randint(1, 8))}
            assert axioms_check(U, kind, degree_margin=2) == []
