"""The diamond derivations and the golden tangent dimensions."""


import pytest

from gmlab.ledger import (
    Derivation,
    chi_X_twist,
    binom_poly,
    derive_diamond,
    tangent_report,
    topological_euler,
    trace_json,
)


class TestChi:
    def test_binom_poly_matches_math_comb(self):
        import math

        for n in range(0, 15):
            for k in (0, 1, 3, 10):
                assert binom_poly(n, k) == math.comb(n, k)

    def test_negative_arguments(self):
        assert binom_poly(-1, 10) == 1
        assert binom_poly(-2, 3) == -4

    @pytest.mark.parametrize("m,expected", [(0, 1), (1, 11), (2, 60)])
    def test_published_values(self, m, expected):
        assert chi_X_twist(m) == expected

    def test_quadric_count(self):
        # 66 quadrics on the ambient space minus the 6 through the sixfold
        assert 66 - chi_X_twist(2) == 6

    def test_serre_duality_identity(self):
        for m in range(-12, 13):
            assert chi_X_twist(m) == chi_X_twist(-m - 4)


GR_DIAGONAL = [1, 1, 2, 2, 2, 1, 1]
Y_ENTRIES = {
    (0, 0): 1, (1, 1): 1, (2, 2): 2, (2, 3): 10, (3, 2): 10, (3, 3): 2,
    (4, 4): 1, (5, 5): 1,
}
X_ENTRIES = {
    (0, 0): 1, (1, 1): 1, (2, 2): 2, (2, 4): 1, (4, 2): 1, (3, 3): 22,
    (4, 4): 2, (5, 5): 1, (6, 6): 1,
}


class TestDiamonds:
    def test_grassmannian(self):
        d, _ = derive_diamond("Gr", 5)
        assert [d.entry(i, i) for i in range(7)] == GR_DIAGONAL
        assert all(d.entry(i, j) == 0 for i in range(7) for j in range(7) if i != j)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_fivefold(self, p):
        d, _ = derive_diamond("Y", p)
        for i in range(6):
            for j in range(6):
                assert d.entry(i, j) == Y_ENTRIES.get((i, j), 0), (i, j)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_sixfold(self, p):
        d, _ = derive_diamond("X", p)
        for i in range(7):
            for j in range(7):
                assert d.entry(i, j) == X_ENTRIES.get((i, j), 0), (i, j)

    def test_topological_euler_numbers(self):
        assert topological_euler("Gr") == 10
        assert topological_euler("Y") == -12
        assert topological_euler("X") == 32

    def test_serre_symmetry_is_checked_not_assumed(self):
        d, _ = derive_diamond("Y", 5)
        for i in range(6):
            for j in range(6):
                assert d.entry(i, j) == d.entry(5 - i, 5 - j)

    def test_trace_is_deterministic(self):
        _, t1 = derive_diamond("X", 5)
        _, t2 = derive_diamond("X", 5)
        assert trace_json(t1) == trace_json(t2)

    def test_rejects_small_p(self):
        with pytest.raises(Exception):
            derive_diamond("Y", 3)


class TestColumnEuler:
    def test_y_columns_match_independent_chi(self):
        d = Derivation(5)
        diamond = d.diamond_y()
        for i in range(6):
            chi = d.chi_omega_y(i, 0)
            col = sum((-1) ** j * diamond.entry(i, j) for j in range(6))
            assert chi == col


class TestTangentReport:
    def test_goldens(self):
        rep = tangent_report(5)["report"]
        assert rep["h1(Y,T_Y)"] == 25
        assert rep["h_other(Y,T_Y)"] == 0
        assert rep["h1(X,T_X)"] == 25
        assert rep["h0(Y,O_Y(1))"] == 10
        assert rep["h0(Y,O_Y(2))"] == 49
        assert rep["h33_00(X)"] == 20
        assert rep["h24(X)"] == 1

    def test_axioms_are_tagged_in_trace(self):
        trace = tangent_report(5)["trace"]
        axioms = [t for t in trace if t["step"] == "axiom"]
        assert any("T_Y" in t["output"] for t in axioms)

    def test_same_at_7(self):
        assert tangent_report(7)["report"] == tangent_report(5)["report"]


class TestPartialColumn:
    def test_omega2_y_minus1_is_20_in_degree_3(self):
        d = Derivation(5)
        assert d.omega2_y_minus1() == [0, 0, 0, 20, 0, 0]
