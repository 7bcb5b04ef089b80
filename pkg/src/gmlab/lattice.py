"""Integral quadratic lattices by Gram matrix: E8(-1), the hyperbolic plane,
rank-one lattices, discriminant groups with their Q/Z pairing, signatures by
exact symmetric reduction, and orthogonal complements of primitive
sublattices.

Everything is exact: signatures use rational symmetric Gaussian reduction
(with hyperbolic-pair handling for zero diagonals), never eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    det_bareiss,
    elementary_divisors,
    integer_kernel_saturated,
    mat_mul,
    mat_transpose,
    smith_normal_form,
)


class Degenerate(Exception):
    pass


class NotPrimitive(Exception):
    pass


@dataclass(frozen=True)
class GramLattice:
    gram: tuple  # symmetric integer Gram matrix, rows as tuples

    def __init__(self, gram):
        g = tuple(tuple(int(v) for v in row) for row in gram)
        r = len(g)
        if any(len(row) != r for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(r) for j in range(r)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return det_bareiss([list(r) for r in self.gram])

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        r, s = self.rank, other.rank
        out = [[0] * (r + s) for _ in range(r + s)]
        for i in range(r):
            for j in range(r):
                out[i][j] = self.gram[i][j]
        for i in range(s):
            for j in range(s):
                out[r + i][r + j] = other.gram[i][j]
        return GramLattice(out)

    def bilinear(self, x, y) -> int:
        return sum(
            x[i] * self.gram[i][j] * y[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )


def rank_one(n: int) -> GramLattice:
    """The rank-1 lattice <n>."""
    return GramLattice([[n]])


def hyperbolic_plane() -> GramLattice:
    return GramLattice([[0, 1], [1, 0]])


# E8 Gram in a root basis: 2 on the diagonal, -1 for each Dynkin edge
# (chain 1-2-3-4-5-6-7 with node 8 attached to node 5), negated below.
_E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))


def e8(sign: int = 1) -> GramLattice:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2 * sign
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = -sign
        g[b - 1][a - 1] = -sign
    return GramLattice(g)


def gm_sixfold_vanishing_lattice() -> GramLattice:
    """E8(-1)^2 + U^2 + <-2>^2, rank 22: the primitive middle lattice."""
    L = e8(-1).direct_sum(e8(-1))
    L = L.direct_sum(hyperbolic_plane()).direct_sum(hyperbolic_plane())
    L = L.direct_sum(rank_one(-2)).direct_sum(rank_one(-2))
    return L


def gm_sixfold_full_lattice() -> GramLattice:
    """E8(-1)^2 + U^4, rank 24: the full middle-cohomology lattice."""
    L = e8(-1).direct_sum(e8(-1))
    for _ in range(4):
        L = L.direct_sum(hyperbolic_plane())
    return L


# ----------------------------------------------------------------------
# discriminant groups
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DiscriminantGroup:
    invariants: tuple  # elementary divisors > 1, ascending divisibility chain
    pairing: tuple  # Fractions mod 1 on the canonical generators

    def order(self) -> int:
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.invariants)

    def pairing_killed_by_sign(self) -> bool:
        """Does x.y = -x.y hold in Q/Z (true when the group is 2-torsion)?"""
        return all(
            (2 * v) % 1 == 0 for row in self.pairing for v in row
        )


def discriminant_group(L: GramLattice) -> DiscriminantGroup:
    """L^vee / L via the Smith normal form of the Gram matrix, with the
    Q/Z-valued pairing on the canonical generators."""
    G = [list(r) for r in L.gram]
    if det_bareiss(G) == 0:
        raise Degenerate("the form is degenerate")
    D, S, T = smith_normal_form(G)
    r = L.rank
    divisors = [D[i][i] for i in range(r)]
    keep = [i for i, d in enumerate(divisors) if d > 1]
    # generators: U^-1 e_i span ZZ^r / G ZZ^r; the dual vectors are
    # y_i = G^-1 U^-1 e_i, and the pairing is y_i^t G y_j mod ZZ.
    # With D = S G T:  G^-1 = T D^-1 S, so y_i^t G y_j = (U^-1e_i)^t T D^-1 S (U^-1 e_j);
    # here U = S (row transform), so U^-1 e_i has the columns of S^-1.
    # Work rationally but exactly.
    Sinv = _int_inverse(S)
    pairing = []
    TD = [[Fraction(T[i][j], divisors[j]) if divisors[j] else Fraction(0) for j in range(r)] for i in range(r)]
    # M = T D^-1 S
    TDS = [[sum(TD[i][k] * S[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
    for i in keep:
        row = []
        for j in keep:
            # (S^-1 e_i)^t (T D^-1 S) (S^-1 e_j)
            vi = [Sinv[t][i] for t in range(r)]
            vj = [Sinv[t][j] for t in range(r)]
            val = sum(
                Fraction(vi[a]) * TDS[a][b] * vj[b] for a in range(r) for b in range(r)
            )
            row.append(val % 1)
        pairing.append(tuple(row))
    return DiscriminantGroup(tuple(divisors[i] for i in keep), tuple(pairing))


def _int_inverse(U):
    """Inverse of a unimodular integer matrix, exactly."""
    n = len(U)
    A = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for i in range(n):
            if i != col and A[i][col] != 0:
                c = A[i][col]
                A[i] = [v - c * w for v, w in zip(A[i], A[col])]
    out = [[A[i][n + j] for j in range(n)] for i in range(n)]
    assert all(v.denominator == 1 for row in out for v in row)
    return [[int(v) for v in row] for row in out]


# ----------------------------------------------------------------------
# signatures
# ----------------------------------------------------------------------


def signature(L: GramLattice) -> tuple[int, int]:
    """(n+, n-) by exact symmetric Gaussian reduction over Q."""
    n = L.rank
    A = [[Fraction(v) for v in row] for row in L.gram]
    if det_bareiss([list(r) for r in L.gram]) == 0:
        raise Degenerate("the form is degenerate")
    pos = neg = 0
    idx = list(range(n))
    while idx:
        # prefer a nonzero diagonal entry
        d = next((i for i in idx if A[i][i] != 0), None)
        if d is not None:
            if A[d][d] > 0:
                pos += 1
            else:
                neg += 1
            for i in idx:
                if i == d or A[i][d] == 0:
                    continue
                c = A[i][d] / A[d][d]
                for j in idx:
                    A[i][j] -= c * A[d][j]
                for j in idx:
                    A[j][i] = A[i][j]
            idx.remove(d)
            continue
        # all diagonal zero: pick a hyperbolic pair, contributing (1, 1)
        i = idx[0]
        j = next(j for j in idx[1:] if A[i][j] != 0)
        pos += 1
        neg += 1
        # split off the plane spanned by e_i, e_j: reduce the others against it
        others = [k for k in idx if k not in (i, j)]
        b = A[i][j]
        for k in others:
            ci = A[k][j] / b  # coefficient on e_i
            cj = A[k][i] / b  # coefficient on e_j
            for l in others:
                A[k][l] = A[k][l] - ci * A[i][l] - cj * A[j][l]
            for l in others:
                A[l][k] = A[k][l]
        # fix the block among others exactly: recompute symmetrically
        idx = others
    return pos, neg


# ----------------------------------------------------------------------
# orthogonal complements
# ----------------------------------------------------------------------


def is_primitive(L: GramLattice, S_rows) -> bool:
    """Is the sublattice spanned by the rows saturated in ZZ^rank?"""
    divisors = elementary_divisors([list(r) for r in S_rows])
    return all(d == 1 for d in divisors)


def orthogonal_complement(L: GramLattice, S_rows) -> tuple[GramLattice, list]:
    """Gram of {x : b(x, S) = 0} with its basis (rows in L-coordinates)."""
    if not is_primitive(L, S_rows):
        raise NotPrimitive("the sublattice basis is not primitive")
    SG = mat_mul([list(r) for r in S_rows], [list(r) for r in L.gram])
    basis_cols = integer_kernel_saturated(SG)
    basis = [list(col) for col in basis_cols]
    G = mat_mul(mat_mul(basis, [list(r) for r in L.gram]), mat_transpose(basis))
    return GramLattice(G), basis


# ----------------------------------------------------------------------
# the bundled verification
# ----------------------------------------------------------------------


def verify_gm_lattice_facts() -> dict:
    """The rank/signature/discriminant facts for the two middle-cohomology
    lattices, and the complement computation connecting them."""
    L = gm_sixfold_vanishing_lattice()
    N = gm_sixfold_full_lattice()
    report: dict = {}
    report["rank_primitive"] = L.rank
    report["rank_full"] = N.rank
    assert L.rank == 22 and N.rank == 24

    disc = discriminant_group(L)
    report["discriminant_invariants"] = list(disc.invariants)
    assert disc.invariants == (2, 2)
    report["discriminant_killed_by_2"] = disc.pairing_killed_by_sign()
    assert report["discriminant_killed_by_2"]

    # (n+, n-) = (2, 20): two positive directions from the hyperbolic planes.
    # The corresponding real orthogonal group is O(20, 2); the unordered
    # signature pair is what the verification pins down.
    sig = signature(L)
    report["signature_primitive"] = list(sig)
    assert sorted(sig) == [2, 20]
    assert sig == (2, 20)

    e8m = e8(-1)
    assert e8m.is_even() and e8m.det() == 1 and signature(e8m) == (0, 8)
    report["e8_minus"] = {"even": True, "det": 1, "signature": [0, 8]}

    # the primitive <2>^2 inside E8(-1)^2 + U^4: e + f in the third and
    # fourth hyperbolic summands (coordinates 20..23)
    r = N.rank
    s1 = [0] * r
    s1[20] = s1[21] = 1
    s2 = [0] * r
    s2[22] = s2[23] = 1
    sub = [s1, s2]
    gram_sub = [[N.bilinear(a, b) for b in sub] for a in sub]
    assert gram_sub == [[2, 0], [0, 2]]
    comp, basis = orthogonal_complement(N, sub)
    assert comp.rank == 22

    # the expected complement basis: both E8(-1) blocks, both untouched U
    # blocks, and e - f in each split hyperbolic plane
    expected = []
    for i in range(20):
        v = [0] * r
        v[i] = 1
        expected.append(v)
    v = [0] * r
    v[20], v[21] = 1, -1
    expected.append(v)
    v = [0] * r
    v[22], v[23] = 1, -1
    expected.append(v)
    gram_expected = [[N.bilinear(a, b) for b in expected] for a in expected]
    assert GramLattice(gram_expected).gram == L.gram, "complement not Gram-congruent to L"
    # the expected vectors must span the computed complement over ZZ
    from .exact import hnf

    H1, _ = hnf(expected)
    H2, _ = hnf(basis)
    assert H1 == H2, "constructed basis does not span the computed complement"
    report["complement_gram_congruent_to_primitive"] = True

    disc_comp = discriminant_group(comp)
    report["complement_discriminant"] = list(disc_comp.invariants)
    assert disc_comp.invariants == (2, 2)
    return report
