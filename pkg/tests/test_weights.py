"""Weight lattice, dot action, sorting, and the dimension formula."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from gmlab.weights import (
    RHO,
    Weight,
    WeylElem,
    all_weyl_elements,
    dot_act,
    pairing,
    simple_pairing,
    sorting_word,
    weyl_dim,
)


class TestWeight:
    def test_shift_normalization(self):
        assert Weight((1, 1, 1, 0, 0)) == Weight((0, 0, 0, -1, -1))

    def test_pairing_examples(self):
        rho = Weight(RHO)
        for i in range(1, 5):
            assert simple_pairing(rho, i) == 1
        assert simple_pairing(Weight((-1, -1, -1, 0, 0)), 3) == -1
        assert simple_pairing(Weight((-2, -2, -2, 0, 0)), 3) == -2

    def test_pairing_shift_invariance(self):
        rng = random.Random(0)
        for _ in range(30):
            raw = [rng.randint(-5, 5) for _ in range(5)]
            shift = rng.randint(-3, 3)
            shifted = [a + shift for a in raw]
            for root in [(1, 2), (2, 4), (1, 5), (3, 4)]:
                assert pairing(Weight(raw), root) == pairing(Weight(shifted), root)


class TestWeylElem:
    def test_lengths(self):
        assert WeylElem.identity().length == 0
        assert WeylElem.from_cycles([(3, 4)]).length == 1
        assert WeylElem.from_cycles([(1, 2, 4), (3, 5)]).length == 5

    def test_cycle_string_round_trip(self):
        for w in all_weyl_elements():
            cyc = w.cycles()
            assert WeylElem.from_cycles(cyc) == w

    def test_sign_is_determinant(self):
        for w in all_weyl_elements():
            assert w.sign() == (-1) ** w.length


class TestDotAction:
    def test_identity(self):
        lam = Weight((3, 1, 0, -2, 4))
        assert dot_act(WeylElem.identity(), lam) == lam

    def test_published_values(self):
        assert dot_act(WeylElem.from_cycles([(3, 4)]), Weight((0, 0, -1, 1, 0))) == Weight((0,) * 5)
        assert dot_act(WeylElem.from_cycles([(2, 3, 4)]), Weight((0, -1, -1, 2, 0))) == Weight((0,) * 5)
        assert dot_act(WeylElem.from_cycles([(3, 5, 4)]), Weight((0, 0, -2, 1, 1))) == Weight((0,) * 5)

    @settings(max_examples=150, deadline=None)
    @given(
        st.tuples(*[st.integers(-6, 6)] * 5),
        st.permutations([1, 2, 3, 4, 5]),
        st.permutations([1, 2, 3, 4, 5]),
    )
    def test_group_action(self, entries, p1, p2):
        lam = Weight(entries)
        w1, w2 = WeylElem(p1), WeylElem(p2)
        assert dot_act(w1, dot_act(w2, lam)) == dot_act(w1.compose(w2), lam)


class TestSortingWord:
    def test_dominant_gives_identity(self):
        lam = Weight((4, 3, 2, 1, 0))
        w, v = sorting_word(lam)
        assert w.is_identity()
        assert list(v) == sorted(v, reverse=True)

    def test_published_words(self):
        w, _ = sorting_word(Weight((0, 0, -2, 1, 1)))
        assert w == WeylElem.from_cycles([(3, 5, 4)])
        w, _ = sorting_word(Weight((0, -1, -1, 5, 3)))
        assert w == WeylElem.from_cycles([(1, 2, 4), (3, 5)])
        _, v = sorting_word(Weight((0, -1, -1, 5, 3)))
        # v is the sorted shifted vector of the canonical representative
        assert list(v) == sorted(v, reverse=True)

    @settings(max_examples=150, deadline=None)
    @given(st.tuples(*[st.integers(-6, 6)] * 5))
    def test_minimal_length_and_dominance(self, entries):
        lam = Weight(entries)
        w, v = sorting_word(lam)
        assert list(v) == sorted(v, reverse=True)
        # minimal length among all sorters
        better = [
            u
            for u in all_weyl_elements()
            if u.apply([a + r for a, r in zip(lam.rep, RHO)]) == v and u.length < w.length
        ]
        assert not better
        # dominance of the dot image iff strict sort
        strict = all(v[i] > v[i + 1] for i in range(4))
        assert dot_act(w, lam).is_dominant() == (len(set(v)) == 5 and strict) or dot_act(w, lam).is_dominant() == strict


class TestWeylDim:
    @pytest.mark.parametrize(
        "mu,expected",
        [
            ((0, 0, 0, 0, 0), 1),
            ((1, 0, 0, 0, 0), 5),
            ((1, 1, 0, 0, 0), 10),
            ((2, 2, 2, 0, 0), 50),
            ((1, 0, 0, 0, -1), 24),
            ((2, 0, 0, 0, 0), 15),
        ],
    )
    def test_values(self, mu, expected):
        assert weyl_dim(Weight(mu)) == expected

    def test_rejects_non_dominant(self):
        with pytest.raises(ValueError):
            weyl_dim(Weight((0, 1, 0, 0, 0)))
