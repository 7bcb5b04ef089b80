"""The correspondence algebra and the Chow-Kunneth verification."""

import random
from fractions import Fraction

import pytest

from gmlab.ckmotives import (
    Correspondence,
    DEGREES,
    IdentityViolation,
    TautClass,
    WrongCodimension,
    act_on,
    compose,
    perturbed_degree_table,
    projectors,
    schubert_degree,
    schubert_expand,
    schubert_normal_form,
    taut_degree,
    taut_equal,
    taut_monomials,
    verify_chow_kunneth,
)


class TestDegrees:
    def test_published_values(self):
        assert taut_degree(TautClass.monomial("GM4", 4)) == 10
        assert taut_degree(TautClass.monomial("GM6", 6)) == 10
        assert taut_degree(TautClass.monomial("GM6", 4, 1)) == 4
        assert taut_degree(TautClass.monomial("GM6", 2, 2)) == 2
        assert taut_degree(TautClass.monomial("GM6", 0, 3)) == 2

    def test_schubert_oracle_matches_table(self):
        # the Pieri oracle on Gr(2,5), doubled by the degree-2 cover
        for m, v in DEGREES["GM6"].items():
            assert schubert_degree(*m) == v

    def test_sigma11_cube_is_a_point(self):
        assert schubert_expand(0, 3) == {(3, 3): Fraction(1)}

    def test_degree_of_grassmannian(self):
        assert schubert_expand(6, 0)[(3, 3)] == 5

    def test_delta_system_has_unique_solution(self):
        # with deg H^6 = 10 and the printed f1, f2, the pair (4, 2) is forced
        f1 = TautClass.make("GM6", {(4, 0): Fraction(1, 2), (2, 1): -1})
        f2 = TautClass.make("GM6", {(4, 0): -1, (2, 1): Fraction(5, 2)})
        e1 = TautClass.monomial("GM6", 2)
        e2 = TautClass.monomial("GM6", 0, 1)
        solutions = []
        for u in range(11):
            for v in range(11):
                table = dict(DEGREES["GM6"])
                table[(4, 1)] = Fraction(u)
                table[(2, 2)] = Fraction(v)
                ok = (
                    taut_degree(e1.mul(f1), table) == 1
                    and taut_degree(e1.mul(f2), table) == 0
                    and taut_degree(e2.mul(f1), table) == 0
                    and taut_degree(e2.mul(f2), table) == 1
                )
                if ok:
                    solutions.append((u, v))
        assert solutions == [(4, 2)]

    def test_non_top_rejected(self):
        with pytest.raises(WrongCodimension):
            taut_degree(TautClass.monomial("GM6", 3))


class TestRingRelations:
    def test_codim5_is_one_dimensional(self):
        h5 = TautClass.monomial("GM6", 5)
        h3e2 = TautClass.monomial("GM6", 3, 1)
        assert taut_equal(h3e2, h5.scaled(Fraction(2, 5)))

    def test_e2sq_relation(self):
        # sigma11^2 = sigma22 and sigma1^2 sigma11 = sigma22 + sigma31... :
        # verify e2^2 against its Schubert expansion rather than guessing
        e2sq = schubert_normal_form(TautClass.monomial("GM6", 0, 2))
        assert e2sq == (((2, 2), Fraction(1)),)


class TestProjectors:
    def test_printed_shapes(self):
        pi4 = projectors("GM4")
        assert set(pi4) == {0, 2, 4, 6, 8}
        assert pi4[0].products == ((((4, 0), (0, 0)), Fraction(1, 10)),)
        assert pi4[4].delta == 1
        pi6 = projectors("GM6")
        assert set(pi6) == {0, 2, 4, 6, 8, 10, 12}
        assert pi6[6].delta == 1
        # pi^8 = e1 x f1 + e2 x f2
        prods = dict(pi6[8].products)
        assert prods[((2, 0), (4, 0))] == Fraction(1, 2)
        assert prods[((2, 0), (2, 1))] == Fraction(-1)
        assert prods[((0, 1), (4, 0))] == Fraction(-1)
        assert prods[((0, 1), (2, 1))] == Fraction(5, 2)

    def test_middle_projector_negates_the_rest(self):
        pi6 = projectors("GM6")
        total = Correspondence.diagonal("GM6")
        for k, p in pi6.items():
            if k != 6:
                total = total.sub(p)
        assert total.sub(pi6[6]).is_zero()


class TestComposition:
    def test_diagonal_is_two_sided_identity(self):
        pi = projectors("GM6")
        delta = Correspondence.diagonal("GM6")
        for p in pi.values():
            assert compose(delta, p).sub(p).is_zero()
            assert compose(p, delta).sub(p).is_zero()

    def test_pi2_idempotent_via_degree_ten(self):
        pi = projectors("GM4")
        assert compose(pi[2], pi[2]).sub(pi[2]).is_zero()

    def test_pi4_pi2_orthogonal(self):
        pi = projectors("GM6")
        assert compose(pi[4], pi[2]).is_zero()

    def _random_product_corr(self, rng):
        monos6 = [(a, b) for b in range(4) for a in range(7 - 2 * b)]
        while True:
            ml = rng.choice(monos6)
            mr_codim = 6 - (ml[0] + 2 * ml[1])
            options = [m for m in monos6 if m[0] + 2 * m[1] == mr_codim]
            if options:
                mr = rng.choice(options)
                return Correspondence.make(
                    "GM6", {(ml, mr): Fraction(rng.randint(1, 5))}
                )

    def test_associativity(self):
        rng = random.Random(12)
        for _ in range(30):
            f = self._random_product_corr(rng)
            g = self._random_product_corr(rng)
            h = self._random_product_corr(rng)
            assert compose(compose(h, g), f).sub(compose(h, compose(g, f))).is_zero()

    def test_transpose_antiautomorphism(self):
        rng = random.Random(13)
        for _ in range(30):
            f = self._random_product_corr(rng)
            g = self._random_product_corr(rng)
            lhs = compose(g, f).transpose()
            rhs = compose(f.transpose(), g.transpose())
            assert lhs.sub(rhs).is_zero()

    def test_projector_transposes(self):
        for variety, n2 in (("GM4", 8), ("GM6", 12)):
            pi = projectors(variety)
            for i, p in pi.items():
                assert p.transpose().sub(pi[n2 - i]).is_zero()

    def test_act_respects_composition(self):
        rng = random.Random(14)
        for _ in range(20):
            f = self._random_product_corr(rng)
            g = self._random_product_corr(rng)
            for x in taut_monomials("GM6"):
                lhs = act_on(compose(g, f), x)
                rhs = act_on(g, act_on(f, x))
                assert lhs.add(rhs.scaled(-1)).is_zero()


class TestAction:
    def test_degree_selection_pins(self):
        pi4 = projectors("GM4")
        one = TautClass.one("GM4")
        assert act_on(pi4[0], one).terms == (((0, 0), Fraction(1)),)
        assert act_on(pi4[0], TautClass.monomial("GM4", 1)).is_zero()
        pi6 = projectors("GM6")
        H = TautClass.monomial("GM6", 1)
        assert act_on(pi6[2], H).terms == (((1, 0), Fraction(1)),)
        e2 = TautClass.monomial("GM6", 0, 1)
        assert act_on(pi6[4], e2).terms == (((0, 1), Fraction(1)),)
        H2 = TautClass.monomial("GM6", 2)
        assert act_on(pi6[4], H2).terms == (((2, 0), Fraction(1)),)


class TestVerification:
    @pytest.mark.parametrize("variety", ["GM4", "GM6"])
    def test_full_suite(self, variety):
        rep = verify_chow_kunneth(variety)
        assert rep["idempotent"] and rep["orthogonal"] and rep["complete"]
        assert rep["degree_selection"] and rep["transpose_symmetry"]

    def test_negative_control(self):
        bad = perturbed_degree_table("GM6", (4, 1), 5)
        with pytest.raises(IdentityViolation):
            verify_chow_kunneth("GM6", degree_table=bad)
