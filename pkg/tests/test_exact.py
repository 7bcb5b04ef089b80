"""Substrate tests: normal forms, ranks, kernels, and the coefficient rings."""

import itertools
import random
from fractions import Fraction

import pytest

from gmlab.exact import (
    GFExt,
    IntegersModPK,
    PolyRing,
    PrimeField,
    QQ,
    QuadExtRing,
    _is_irreducible,
    conway_like_modulus,
    det_bareiss,
    elementary_divisors,
    hnf,
    identity_matrix,
    integer_kernel_saturated,
    is_prime,
    kernel_over,
    mat_mul,
    primes_upto,
    rank_over,
    smith_normal_form,
)


def cofactor_det(M):
    """Independent oracle: determinant by plain cofactor expansion."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return total


def rank_by_minors(M, modulus=None):
    """Independent oracle: largest r with a nonvanishing r x r minor."""
    m, n = len(M), len(M[0])
    for r in range(min(m, n), 0, -1):
        for rows in itertools.combinations(range(m), r):
            for cols in itertools.combinations(range(n), r):
                d = cofactor_det([[M[i][j] for j in cols] for i in rows])
                if modulus is not None:
                    d %= modulus
                if d != 0:
                    return r
    return 0


class TestHNF:
    def test_identity(self):
        H, U = hnf(identity_matrix(5))
        assert H == identity_matrix(5)
        assert U == identity_matrix(5)

    def test_diagonal_already_reduced(self):
        M = [[2, 0], [0, 3]]
        H, U = hnf(M)
        assert H == M
        assert U == identity_matrix(2)

    def test_hand_reduction(self):
        # rows (1,1,0,0,0), (2,1,1,0,0): subtracting twice row 1 gives
        # (0,-1,1,0,0); negate and reduce above: pivots 1, 1 in columns 1, 2
        M = [[1, 1, 0, 0, 0], [2, 1, 1, 0, 0]]
        H, U = hnf(M)
        assert H[0][0] == 1 and H[1][1] == 1
        assert H[0][1] == 0  # entry above the second pivot is reduced
        assert mat_mul(U, M) == H

    @pytest.mark.parametrize("seed", range(20))
    def test_transform_is_unimodular(self, seed):
        rng = random.Random(seed)
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        H, U = hnf(M)
        assert mat_mul(U, M) == H
        assert abs(det_bareiss(U)) == 1
        # pivots positive, entries above reduced into [0, pivot)
        r = 0
        for row in H:
            nz = [j for j, v in enumerate(row) if v]
            if not nz:
                continue
            piv_col = nz[0]
            assert row[piv_col] > 0
            for above in range(r):
                assert 0 <= H[above][piv_col] < row[piv_col]
            r += 1


class TestRankKernel:
    def test_zero_matrix(self):
        assert rank_over([[0, 0], [0, 0]], QQ) == 0
        assert rank_over([[0, 0], [0, 0]], PrimeField(7)) == 0

    def test_pivot_dies_mod_5(self):
        M = [[5, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
             [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        assert rank_over(M, QQ) == 5
        assert rank_over(M, PrimeField(5)) == 4

    def test_circulant_det_two(self):
        M = [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0],
             [0, 0, 0, 1, 1], [1, 0, 0, 0, 1]]
        assert cofactor_det(M) == 2
        assert rank_over(M, QQ) == 5
        assert rank_over(M, PrimeField(5)) == 5

    @pytest.mark.parametrize("seed", range(15))
    def test_rank_against_minor_oracle(self, seed):
        rng = random.Random(100 + seed)
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        assert rank_over(M, QQ) == rank_by_minors(M)
        assert rank_over(M, PrimeField(5)) == rank_by_minors(M, 5)

    def test_kernel_identity_empty(self):
        assert kernel_over(identity_matrix(4), QQ) == []

    def test_kernel_single_row_mod5(self):
        basis = kernel_over([[1, 1, 1, 1, 0]], PrimeField(5))
        assert len(basis) == 4
        for vec in basis:
            assert sum(vec[:4]) % 5 == 0

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(3)
        for _ in range(10):
            M = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
            for F in (QQ, PrimeField(7)):
                for vec in kernel_over(M, F):
                    for row in M:
                        acc = F.zero
                        for a, x in zip(row, vec):
                            acc = F.add(acc, F.mul(F.from_int(a), x))
                        assert F.is_zero(acc)


class TestSmith:
    def test_classic_example(self):
        M = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
        D, S, T = smith_normal_form(M)
        assert mat_mul(mat_mul(S, M), T) == D
        divs = [D[i][i] for i in range(3)]
        assert divs == [2, 2, 156]  # invariant factors of this standard example
        assert abs(det_bareiss(S)) == 1 and abs(det_bareiss(T)) == 1

    @pytest.mark.parametrize("seed", range(15))
    def test_divisibility_chain_and_transforms(self, seed):
        rng = random.Random(200 + seed)
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        D, S, T = smith_normal_form(M)
        assert mat_mul(mat_mul(S, M), T) == D
        divs = [D[i][i] for i in range(min(m, n))]
        for a, b in zip(divs, divs[1:]):
            if a and b:
                assert b % a == 0
        assert all(d >= 0 for d in divs)

    def test_saturated_kernel(self):
        M = [[2, 4, 6]]
        basis = integer_kernel_saturated(M)
        assert len(basis) == 2
        for vec in basis:
            assert sum(a * b for a, b in zip(M[0], vec)) == 0
        # saturated: the basis extends to a basis of ZZ^3
        assert all(d == 1 for d in elementary_divisors([list(b) for b in basis]))


class TestPrimeField:
    def test_requires_prime(self):
        with pytest.raises(ValueError):
            PrimeField(6)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_fermat(self, p):
        F = PrimeField(p)
        for a in range(p):
            assert F.pow(a, p) if hasattr(F, "pow") else pow(a, p, p) == a

    def test_inverse(self):
        F = PrimeField(11)
        for a in range(1, 11):
            assert F.mul(a, F.inv(a)) == 1


class TestGFExt:
    def test_x4_plus_1_is_reducible_over_f5(self):
        # regression: x^4 + 1 factors as (x^2+2)(x^2+3) over GF(5)
        assert not _is_irreducible([1, 0, 0, 0, 1], 5)
        assert conway_like_modulus(5, 4) != (1, 0, 0, 0, 1)

    @pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (5, 4), (7, 4)])
    def test_field_axioms(self, p, m):
        F = GFExt(p, m)
        rng = random.Random(p * m)
        for _ in range(25):
            a = tuple(rng.randrange(p) for _ in range(m))
            b = tuple(rng.randrange(p) for _ in range(m))
            c = tuple(rng.randrange(p) for _ in range(m))
            assert F.mul(a, b) == F.mul(b, a)
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.pow(a, F.order) == a  # Frobenius fixed point
            if not F.is_zero(a):
                assert F.mul(a, F.inv(a)) == F.one

    def test_zech_tables_match_polynomial_mul(self):
        F = GFExt(3, 2)
        from gmlab.exact import _poly_mulmod

        for a in F.elements():
            for b in F.elements():
                ref = F._wrap(_poly_mulmod(list(a), list(b), list(F.modulus), F.p))
                assert F.mul(a, b) == ref


class TestIntegersModPK:
    def test_units_and_valuation(self):
        R = IntegersModPK(5, 3)
        assert R.modulus == 125
        assert R.is_unit(7) and not R.is_unit(10)
        assert R.mul(7, R.inv(7)) == 1
        assert R.valuation(50) == 2
        assert R.valuation(0) == 3


class TestPolyRing:
    def test_arithmetic_and_eval(self):
        R = PolyRing(PrimeField(5), ["x", "y"])
        x, y = R.var(0), R.var(1)
        f = R.add(R.mul(x, x), R.scale(3, y))  # x^2 + 3y
        assert R.evaluate(f, [2, 1]) == (4 + 3) % 5
        assert R.is_zero(R.sub(f, f))
        assert R.render(R.one) == "1"

    def test_units(self):
        R = PolyRing(QQ, ["t"])
        assert R.is_unit(R.const(Fraction(2)))
        assert not R.is_unit(R.var(0))
        with pytest.raises(ZeroDivisionError):
            R.inv(R.var(0))


class TestQuadExt:
    def _ring(self):
        base = PolyRing(PrimeField(5), ["a", "b", "c"])
        # y^2 reduction against a*y^2 + b*y + c
        return base, QuadExtRing(base, base.var(0), base.var(1), base.var(2))

    def test_generator_satisfies_its_quadratic(self):
        base, E = self._ring()
        y = E.gen()
        a, b, c = (E.inject(base.var(i)) for i in range(3))
        expr = E.add(E.add(E.mul(a, E.mul(y, y)), E.mul(b, y)), c)
        assert E.is_zero(expr)

    def test_degree_stays_at_most_one(self):
        base, E = self._ring()
        rng = random.Random(9)

        def rand_elem():
            def rand_poly():
                f = base.zero
                for _ in range(2):
                    exp = tuple(rng.randrange(2) for _ in range(3))
                    f = base.add(f, {exp: rng.randrange(1, 5)})
                return f

            return (rand_poly(), rand_poly(), rng.randrange(2))

        for _ in range(15):
            x, y, z = rand_elem(), rand_elem(), rand_elem()
            assert E.eq(E.mul(x, y), E.mul(y, x))
            assert E.eq(E.mul(E.mul(x, y), z), E.mul(x, E.mul(y, z)))
            # representation keeps lambda-degree <= 1 by construction
            assert len(E.mul(x, y)) == 3


def test_primes_upto():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(199) and not is_prime(200)
