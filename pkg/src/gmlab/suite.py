"""The acceptance suite: every headline verification as one callable
criterion, returning a uniform record.  The pytest module and the command
line front end both drive these functions, so there is exactly one source of
truth for what "pass" means.

Criterion 8 is special: the lifting criterion for the sixteen nilpotent
Jordan patterns is genuinely false at p = 5 for the full Jordan block (its
55x55 action matrix has two elementary divisors equal to 10), so the check
honestly fails there; the record carries the analysis and the two extra
mod-5 kernel quadrics.  See the README for discussion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import bott, ckmotives, gmlag, lattice, ledger, vfsearch
from .bott import BundleSpec
from .exact import GFExt, PrimeField, QQ


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    payload: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.cid:>2}  {verdict}  {self.title}  ({self.seconds:.1f}s){'  -- ' + self.detail if self.detail else ''}"


def _timed(fn):
    t0 = time.time()
    out = fn()
    return out, time.time() - t0


# expected printed table for Omega^2(-2) at p = 5: columns lambda,
# lambda+rho, w (cycles), sorted vector, dot image.  Four cells of the
# published tables are internally inconsistent with their own neighbouring
# columns (they do not match w, or the sorted multiset); the values below
# are the self-consistent ones, and the discrepancies are listed in
# PUBLISHED_TABLE_DEVIATIONS.
OMEGA2_M2_TABLE = [
    ([-1, -1, 0, 4, 2], [1, 0, 0, 3, 0], "(1 2 3 4)", [3, 1, 0, 0, 0], [1, 0, 0, 1, 2]),
    ([-1, 0, -1, 4, 2], [1, 1, -1, 3, 0], "(1 2 3 5 4)", [3, 1, 1, 0, -1], [1, 0, 1, 1, 1]),
    ([-2, 0, 0, 3, 3], [0, 1, 0, 2, 1], "(1 4)(3 5)", [2, 1, 1, 0, 0], [0, 0, 1, 1, 2]),
    ([-1, -1, 0, 3, 3], [1, 0, 0, 2, 1], "(1 2 4)(3 5)", [2, 1, 1, 0, 0], [0, 0, 1, 1, 2]),
    ([-1, 0, -1, 3, 3], [1, 1, -1, 2, 1], "(1 2 3 5 4)", [2, 1, 1, 1, -1], [0, 0, 1, 2, 1]),
    ([0, -1, -1, 4, 2], [2, 0, -1, 3, 0], "(1 2 3 5 4)", [3, 2, 0, 0, -1], [1, 1, 0, 1, 1]),
    ([0, -2, 0, 3, 3], [2, -1, 0, 2, 1], "(2 5 3 4)", [2, 2, 1, 0, -1], [0, 1, 1, 1, 1]),
    ([0, -1, -1, 3, 3], [2, 0, -1, 2, 1], "(2 4)(3 5)", [2, 2, 1, 0, -1], [0, 1, 1, 1, 1]),
    ([0, 0, -2, 3, 3], [2, 1, -2, 2, 1], "(2 3 5 4)", [2, 2, 1, 1, -2], [0, 1, 1, 2, 0]),
    ([-1, -1, 0, 2, 4], [1, 0, 0, 1, 2], "(1 2 4 3 5)", [2, 1, 1, 0, 0], [0, 0, 1, 1, 2]),
    ([-1, 0, -1, 2, 4], [1, 1, -1, 1, 2], "(1 2 3 5)", [2, 1, 1, 1, -1], [0, 0, 1, 2, 1]),
    ([0, -1, -1, 2, 4], [2, 0, -1, 1, 2], "(2 4 3 5)", [2, 2, 1, 0, -1], [0, 1, 1, 1, 1]),
]

OMEGA2_M3_TABLE = [
    ([-1, -1, 0, 5, 3], [1, 0, 0, 4, 1], None, [4, 1, 1, 0, 0], [2, 0, 1, 1, 2]),
    ([-1, 0, -1, 5, 3], [1, 1, -1, 4, 1], None, [4, 1, 1, 1, -1], [2, 0, 1, 2, 1]),
    ([-2, 0, 0, 4, 4], [0, 1, 0, 3, 2], None, [3, 2, 1, 0, 0], [1, 1, 1, 1, 2]),
    ([-1, -1, 0, 4, 4], [1, 0, 0, 3, 2], None, [3, 2, 1, 0, 0], [1, 1, 1, 1, 2]),
    ([-1, 0, -1, 4, 4], [1, 1, -1, 3, 2], None, [3, 2, 1, 1, -1], [1, 1, 1, 2, 1]),
    ([0, -1, -1, 5, 3], [2, 0, -1, 4, 1], "(1 2 4)(3 5)", [4, 2, 1, 0, -1], [2, 1, 1, 1, 1]),
    ([0, -2, 0, 4, 4], [2, -1, 0, 3, 2], None, [3, 2, 2, 0, -1], [1, 1, 2, 1, 1]),
    ([0, -1, -1, 4, 4], [2, 0, -1, 3, 2], None, [3, 2, 2, 0, -1], [1, 1, 2, 1, 1]),
    ([0, 0, -2, 4, 4], [2, 1, -2, 3, 2], None, [3, 2, 2, 1, -2], [1, 1, 2, 2, 0]),
    ([-1, -1, 0, 3, 5], [1, 0, 0, 2, 3], None, [3, 2, 1, 0, 0], [1, 1, 1, 1, 2]),
    ([-1, 0, -1, 3, 5], [1, 1, -1, 2, 3], None, [3, 2, 1, 1, -1], [1, 1, 1, 2, 1]),
    ([0, -1, -1, 3, 5], [2, 0, -1, 2, 3], None, [3, 2, 2, 0, -1], [1, 1, 2, 1, 1]),
]

# cells of the published tables that contradict their own rows; the values
# asserted above are the self-consistent recomputations
PUBLISHED_TABLE_DEVIATIONS = [
    "twist -2, row 2: published w-cycle omits index 5, inconsistent with its sorted column",
    "twist -2, rows 7-8: published sorted vector ends in -2, which is not an entry of lambda+rho",
    "twist -2, row 12: published dot image differs from (sorted - rho) of its own columns",
    "twist -3, row 1: published sorted vector [4,1,0,0,1] is not weakly decreasing",
    "twist -3, rows 7-8: published sorted vector ends in -2, which is not an entry of lambda+rho",
    "twist -3, row 12: published dot image sums to 5, but dot images preserve the entry sum (6)",
]


def criterion_1() -> CriterionResult:
    def run():
        problems = []
        for twist, expected in ((-2, OMEGA2_M2_TABLE), (-3, OMEGA2_M3_TABLE)):
            rows = bott.weight_table(BundleSpec.omega(2, twist), 5)
            if len(rows) != 12:
                problems.append(f"twist {twist}: {len(rows)} rows")
                continue
            for k, (lam, lam_rho, wcyc, sorted_vec, dot) in enumerate(expected):
                r = rows[k]
                if list(r.lam_raw) != lam or list(r.lam_rho) != lam_rho:
                    problems.append(f"twist {twist} row {k+1}: weight columns differ")
                if list(r.sorted_vec) != sorted_vec or list(r.dot_raw) != dot:
                    problems.append(f"twist {twist} row {k+1}: image columns differ")
                if wcyc is not None and r.w.cycle_string() != wcyc:
                    problems.append(f"twist {twist} row {k+1}: w differs")
        table = bott.bundle_cohomology(BundleSpec.omega(2, -3), 5)
        if table.dims() != [0, 0, 0, 0, 0, 5, 0]:
            problems.append("h^5 of the twist -3 bundle is not the only nonzero entry")
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        1,
        "both printed 12-row weight tables and h^5 = 5",
        not problems,
        "; ".join(problems),
        dt,
    )


def criterion_2() -> CriterionResult:
    def run():
        problems = []
        t = bott.bundle_cohomology(BundleSpec.tangent(0), 5)
        if t.dims() != [24, 0, 0, 0, 0, 0, 0]:
            problems.append("tangent bundle cohomology is not 24 in degree 0")
        for m in (-1, -2):
            if bott.bundle_cohomology(BundleSpec.tangent(m), 5).dims() != [0] * 7:
                problems.append(f"tangent twist {m} does not vanish")
        for m in range(-12, 13):
            dims = bott.bundle_cohomology_with_duality(BundleSpec.structure(m), 5).dims()
            for j, d in enumerate(dims):
                ok_nonzero = (j == 0 and m >= 0) or (j == 6 and m <= -5)
                if (d != 0) != ok_nonzero:
                    problems.append(f"O({m}) degree {j} = {d}")
        diag, _ = ledger.derive_diamond("Gr", 5)
        if [diag.entry(i, i) for i in range(7)] != [1, 1, 2, 2, 2, 1, 1]:
            problems.append("Hodge diagonal of the Grassmannian is wrong")
        if any(
            diag.entry(i, j) for i in range(7) for j in range(7) if i != j
        ):
            problems.append("off-diagonal Hodge numbers are nonzero")
        for spec in (
            BundleSpec.omega(1, -1),
            BundleSpec.omega(1, -2),
            BundleSpec.omega(2, -1),
            BundleSpec.omega(2, -2),
            BundleSpec.omega(3, -1),
        ):
            if bott.bundle_cohomology(spec, 5).dims() != [0] * 7:
                problems.append(f"{spec.label()} does not vanish")
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        2, "tangent/structure/cotangent vanishing suite at p = 5", not problems, "; ".join(problems), dt
    )


Y_DIAMOND = {
    (0, 0): 1, (1, 1): 1, (2, 2): 2, (2, 3): 10, (3, 2): 10, (3, 3): 2,
    (4, 4): 1, (5, 5): 1,
}
X_DIAMOND = {
    (0, 0): 1, (1, 1): 1, (2, 2): 2, (2, 4): 1, (4, 2): 1, (3, 3): 22,
    (4, 4): 2, (5, 5): 1, (6, 6): 1,
}


def criterion_3() -> CriterionResult:
    def run():
        problems = []
        ref = {}
        for p in (5, 7, 11, 13):
            dy, _ = ledger.derive_diamond("Y", p)
            dx, _ = ledger.derive_diamond("X", p)
            for (i, j), v in Y_DIAMOND.items():
                if dy.entry(i, j) != v:
                    problems.append(f"Y at p={p}: h^{i},{j} = {dy.entry(i,j)} != {v}")
            for i in range(6):
                for j in range(6):
                    if (i, j) not in Y_DIAMOND and dy.entry(i, j):
                        problems.append(f"Y at p={p}: h^{i},{j} nonzero")
            for (i, j), v in X_DIAMOND.items():
                if dx.entry(i, j) != v:
                    problems.append(f"X at p={p}: h^{i},{j} = {dx.entry(i,j)} != {v}")
            for i in range(7):
                for j in range(7):
                    if (i, j) not in X_DIAMOND and dx.entry(i, j):
                        problems.append(f"X at p={p}: h^{i},{j} nonzero")
            if p == 5:
                ref = (dy.h, dx.h)
            else:
                if (dy.h, dx.h) != ref:
                    problems.append(f"results differ between p=5 and p={p}")
        dgr, _ = ledger.derive_diamond("Gr", 5)
        if dgr.topological_euler() != 10:
            problems.append("Euler characteristic of the Grassmannian is not 10")
        dy5, _ = ledger.derive_diamond("Y", 5)
        if dy5.topological_euler() != -12:
            problems.append("Euler characteristic of the fivefold is not -12")
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        3, "Hodge diamonds of Y and X, p-independent, Euler 10 and -12", not problems, "; ".join(problems), dt
    )


def criterion_4() -> CriterionResult:
    def run():
        rep = ledger.tangent_report(5)["report"]
        expected = {
            "h1(Y,T_Y)": 25,
            "h_other(Y,T_Y)": 0,
            "h1(X,T_X)": 25,
            "h0(Y,O_Y(1))": 10,
            "h0(Y,O_Y(2))": 49,
        }
        return [f"{k}: {rep[k]} != {v}" for k, v in expected.items() if rep[k] != v]

    problems, dt = _timed(run)
    return CriterionResult(
        4, "golden section and tangent dimensions (10, 49, 25, 25)", not problems, "; ".join(problems), dt
    )


def criteria_5_and_6(jobs: int = 1, cached_result=None):
    t0 = time.time()
    result = cached_result or vfsearch.enumerate_hits(p_filter=None, jobs=jobs)
    families = vfsearch.filter_hits(result)
    problems = vfsearch.matches_pinned_classification(result, families)
    fam1 = next(
        (f for f in families if f.p == 5 and f.a == (0, 0, 1, 2, 3)), None
    )
    if fam1 is None or len(fam1.monomials) != 11:
        problems.append("the first family does not have 11 monomials")
    else:
        published = next(
            f for f in vfsearch.PAPER_FAMILIES if f["id"] == 1
        )
        if vfsearch.monomials_killed_by(5, published["a"]) != frozenset(published["monomials"]):
            problems.append("family-1 monomial set differs from the published list")
    large_prime_families = [f for f in families if f.p >= 11]
    if large_prime_families:
        problems.append(f"families survive at p >= 11: {large_prime_families}")
    dt = time.time() - t0
    c5 = CriterionResult(
        5,
        "exhaustive classification: 4 classes at p=5, 1 at p=7, none beyond",
        not problems,
        "; ".join(problems),
        dt,
        {"hit_pairs": result.hit_pair_count(), "classes": result.distinct_class_count()},
    )
    c6 = CriterionResult(
        6,
        "rank lemma re-verification over the full enumeration",
        not result.violations,
        f"{len(result.violations)} violations" if result.violations else "",
        0.0,
        {"prime_multiset": dict(sorted(result.prime_multiset.items()))},
    )
    return c5, c6, result, families


def criterion_7(families=None) -> CriterionResult:
    def run():
        problems = []
        fams = families
        if fams is None:
            fams = [
                vfsearch.FamilyClass(
                    p=f["p"],
                    a=vfsearch.canonical_class(f["p"], f["a"]),
                    monomials=vfsearch.monomials_killed_by(
                        f["p"], vfsearch.canonical_class(f["p"], f["a"])
                    ),
                    witness_count=0,
                    representatives=(),
                )
                for f in vfsearch.PAPER_FAMILIES
            ]
        if len(fams) != 5:
            problems.append(f"{len(fams)} families instead of 5")
        for f in fams:
            try:
                cert = vfsearch.certify_family_singular(f)
            except vfsearch.CertificateFailed as exc:
                problems.append(f"family at p={f.p}, a={f.a}: {exc}")
                continue
            if cert.zero_minor_count != 3150:
                problems.append(f"family {cert.family_id}: {cert.zero_minor_count} minors checked")
            if not vfsearch.recheck_certificate_numeric(f, samples=100, seed=20240801):
                problems.append(f"family {cert.family_id}: numeric re-check failed")
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        7, "singularity certificates for all five families + numeric re-check", not problems, "; ".join(problems), dt
    )


def criterion_8() -> CriterionResult:
    """The nilpotent lifting criterion as stated: all sixteen patterns at
    p in {5, 7, 11} with equal kernel dimensions.  This is genuinely false
    at p = 5 (full Jordan block), and the result carries the analysis."""

    def run():
        problems = []
        payload = {}
        for p in (5, 7, 11):
            try:
                vfsearch.verify_nilpotent_lift(p)
            except vfsearch.LemmaViolation as exc:
                analysis = vfsearch.nilpotent_kernel_analysis(p)
                jumping = {
                    bits: v
                    for bits, v in analysis["patterns"].items()
                    if v["kernel_QQ"] != v["kernel_Fp"]
                }
                payload[p] = jumping
                problems.append(
                    f"p={p}: {exc}; kernels "
                    + ", ".join(
                        f"{bits}: {v['kernel_QQ']} over QQ vs {v['kernel_Fp']} over GF({p})"
                        for bits, v in jumping.items()
                    )
                )
        return problems, payload

    (problems, payload), dt = _timed(run)
    return CriterionResult(
        8,
        "nilpotent patterns: equal kernel dimensions at p in {5, 7, 11}",
        not problems,
        "; ".join(problems),
        dt,
        payload,
    )


def criterion_9(trials: int = 200, seed: int = 31) -> CriterionResult:
    def run():
        problems = []
        rng = random.Random(seed)
        fields = [PrimeField(5), PrimeField(7), GFExt(3, 2), QQ]
        for ring in fields:
            for n in (3, 4, 5):
                for t in range(trials):
                    D = gmlag.random_lagrangian(ring, n, rng)
                    if len(gmlag.intersection_with_wedge3_v5(D)) != 5 - n:
                        problems.append(f"{ring!r} n={n} trial {t}: intersection rank")
                        break
                    gm = gmlag.lagrangian_to_gm(D)
                    if len(gm.w_rows) != n + 5:
                        problems.append(f"{ring!r} n={n} trial {t}: rank W")
                        break
                    D2 = gmlag.gm_to_lagrangian(gm)  # asserts v0-independence
                    if gmlag._row_span_canonical(ring, D.a_rows) != gmlag._row_span_canonical(ring, D2.a_rows):
                        problems.append(f"{ring!r} n={n} trial {t}: A not recovered")
                        break
                    gm2 = gmlag.lagrangian_to_gm(D2)
                    if gmlag.canonical_wq(gm) != gmlag.canonical_wq(gm2):
                        problems.append(f"{ring!r} n={n} trial {t}: (W, q) not recovered")
                        break
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        9,
        f"{trials} round trips per (field, n) recover (W, q) exactly",
        not problems,
        "; ".join(problems),
        dt,
    )


def criterion_10(trials: int = 50, seed: int = 97) -> CriterionResult:
    def run():
        problems = []
        rng = random.Random(seed)
        for p, k in ((5, 4), (7, 3)):
            ring = PrimeField(p)
            for t in range(trials):
                n = rng.choice((3, 4, 5))
                D = gmlag.random_lagrangian(ring, n, rng)
                try:
                    lifted = gmlag.lift_lagrangian(D, k)  # checks isotropy + reduction
                except Exception as exc:
                    problems.append(f"p={p} k={k} trial {t}: {exc}")
                    break
                if lifted.ring.modulus != p ** k:
                    problems.append(f"p={p} k={k} trial {t}: wrong ring")
                    break
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        10,
        f"{trials} lifts to Z/5^4 and Z/7^3 with exact isotropy and reduction",
        not problems,
        "; ".join(problems),
        dt,
    )


def criterion_11() -> CriterionResult:
    def run():
        problems = []
        try:
            rep = lattice.verify_gm_lattice_facts()
        except AssertionError as exc:
            return [f"lattice fact failed: {exc}"]
        if rep["discriminant_invariants"] != [2, 2]:
            problems.append("discriminant group is not (Z/2)^2")
        if sorted(rep["signature_primitive"]) != [2, 20]:
            problems.append("signature pair is not {20, 2}")
        if not rep["complement_gram_congruent_to_primitive"]:
            problems.append("complement is not Gram-congruent")
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        11, "lattice facts: Discr = (Z/2)^2, signature pair {20,2}, complement", not problems, "; ".join(problems), dt
    )


def criterion_12() -> CriterionResult:
    def run():
        problems = []
        for v in ("GM4", "GM6"):
            try:
                ckmotives.verify_chow_kunneth(v)
            except ckmotives.IdentityViolation as exc:
                problems.append(f"{v}: {exc}")
        bad = ckmotives.perturbed_degree_table("GM6", (4, 1), 5)
        try:
            ckmotives.verify_chow_kunneth("GM6", degree_table=bad)
            problems.append("negative control did not fail")
        except ckmotives.IdentityViolation:
            pass
        return problems

    problems, dt = _timed(run)
    return CriterionResult(
        12, "Chow-Kunneth suites for GM4 and GM6 + negative control", not problems, "; ".join(problems), dt
    )


def run_all(jobs: int = 1, trials_9: int = 200, trials_10: int = 50) -> list[CriterionResult]:
    out = [criterion_1(), criterion_2(), criterion_3(), criterion_4()]
    c5, c6, result, families = criteria_5_and_6(jobs=jobs)
    out.extend([c5, c6])
    out.append(criterion_7(families))
    out.append(criterion_8())
    out.append(criterion_9(trials=trials_9))
    out.append(criterion_10(trials=trials_10))
    out.append(criterion_11())
    out.append(criterion_12())
    return out
