"""Gram lattices, discriminant groups, signatures, complements."""

import random
from fractions import Fraction

import pytest

from gmlab.lattice import (
    Degenerate,
    GramLattice,
    NotPrimitive,
    discriminant_group,
    e8,
    gm_sixfold_full_lattice,
    gm_sixfold_vanishing_lattice,
    hyperbolic_plane,
    is_primitive,
    orthogonal_complement,
    rank_one,
    signature,
    verify_gm_lattice_facts,
)


class TestConstructors:
    def test_e8_is_even_unimodular_definite(self):
        L = e8(-1)
        assert L.rank == 8
        assert L.is_even()
        assert L.det() == 1
        assert signature(L) == (0, 8)
        assert signature(e8(1)) == (8, 0)

    def test_gram_must_be_symmetric(self):
        with pytest.raises(ValueError):
            GramLattice([[0, 1], [2, 0]])

    def test_ranks(self):
        assert gm_sixfold_vanishing_lattice().rank == 22
        assert gm_sixfold_full_lattice().rank == 24


class TestDiscriminant:
    def test_unimodular_trivial(self):
        assert discriminant_group(hyperbolic_plane()).invariants == ()
        assert discriminant_group(e8(-1)).invariants == ()

    def test_two_copies_of_minus_two(self):
        d = discriminant_group(rank_one(-2).direct_sum(rank_one(-2)))
        assert d.invariants == (2, 2)
        assert d.pairing == ((Fraction(1, 2), 0), (0, Fraction(1, 2)))
        assert d.is_two_elementary()
        assert d.pairing_killed_by_sign()

    def test_primitive_lattice(self):
        d = discriminant_group(gm_sixfold_vanishing_lattice())
        assert d.invariants == (2, 2)

    def test_order_equals_det(self):
        rng = random.Random(0)
        for _ in range(15):
            n = rng.randint(1, 4)
            while True:
                G = [[0] * n for _ in range(n)]
                for i in range(n):
                    for j in range(i, n):
                        G[i][j] = G[j][i] = rng.randint(-4, 4)
                L = GramLattice(G)
                if L.det() != 0:
                    break
            assert discriminant_group(L).order() == abs(L.det())

    def test_degenerate_rejected(self):
        with pytest.raises(Degenerate):
            discriminant_group(GramLattice([[1, 1], [1, 1]]))

    def test_pairing_self_consistency(self):
        # on <n>: generator pairing is 1/n mod 1 up to sign
        d = discriminant_group(rank_one(3))
        assert d.invariants == (3,)
        assert d.pairing[0][0] in (Fraction(1, 3), Fraction(2, 3))


class TestSignature:
    def test_small_cases(self):
        assert signature(rank_one(-2)) == (0, 1)
        assert signature(rank_one(7)) == (1, 0)
        assert signature(hyperbolic_plane()) == (1, 1)

    def test_additive_under_direct_sum(self):
        rng = random.Random(1)
        pieces = [e8(-1), e8(1), hyperbolic_plane(), rank_one(-2), rank_one(2), rank_one(5)]
        for _ in range(10):
            a, b = rng.choice(pieces), rng.choice(pieces)
            sa, sb = signature(a), signature(b)
            s = signature(a.direct_sum(b))
            assert s == (sa[0] + sb[0], sa[1] + sb[1])

    def test_vanishing_lattice_pair(self):
        sig = signature(gm_sixfold_vanishing_lattice())
        assert sig == (2, 20)
        assert sorted(sig) == [2, 20]

    def test_full_lattice(self):
        assert signature(gm_sixfold_full_lattice()) == (4, 20)


class TestComplement:
    def test_u_inside_u_plus_u(self):
        UU = hyperbolic_plane().direct_sum(hyperbolic_plane())
        comp, basis = orthogonal_complement(UU, [[1, 0, 0, 0], [0, 1, 0, 0]])
        assert comp.gram == hyperbolic_plane().gram

    def test_rank_drop(self):
        L = gm_sixfold_full_lattice()
        s = [[0] * 24, [0] * 24]
        s[0][20] = s[0][21] = 1
        s[1][22] = s[1][23] = 1
        comp, basis = orthogonal_complement(L, s)
        assert comp.rank == 22

    def test_non_primitive_rejected(self):
        UU = hyperbolic_plane().direct_sum(hyperbolic_plane())
        with pytest.raises(NotPrimitive):
            orthogonal_complement(UU, [[2, 0, 0, 0]])
        assert is_primitive(UU, [[1, 0, 0, 0]])


class TestBundledFacts:
    def test_verify(self):
        rep = verify_gm_lattice_facts()
        assert rep["rank_primitive"] == 22
        assert rep["rank_full"] == 24
        assert rep["discriminant_invariants"] == [2, 2]
        assert rep["discriminant_killed_by_2"]
        assert sorted(rep["signature_primitive"]) == [2, 20]
        assert rep["complement_gram_congruent_to_primitive"]
        assert rep["complement_discriminant"] == [2, 2]
