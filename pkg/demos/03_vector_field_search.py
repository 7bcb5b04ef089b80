"""The exhaustive vector-field obstruction search.

A diagonal matrix A = diag(-a) acts on a quadric Q in Plücker coordinates
monomial by monomial; A o Q = 0 forces the weight rows of Q's monomials to
pair to zero with a.  Sweeping all 1,221,759 five-row submatrices of the
45 x 5 weight matrix finds every prime p >= 5 and kernel class a that could
support a quadric section with a nonzero vector field; two geometric filters
and S5-x-scalar canonicalization leave four families at p = 5 and one at
p = 7, and each surviving family is certified singular by an exact symbolic
certificate at an explicit point.

Run:  python demos/03_vector_field_search.py   (about half a minute)
"""

import time

from gmlab.vfsearch import (
    build_E,
    certify_family_singular,
    enumerate_hits,
    filter_hits,
    nilpotent_kernel_analysis,
    recheck_certificate_numeric,
)

E = build_E()
print(f"weight matrix: {len(E.rows)} rows, hash {E.content_hash()}")

t0 = time.time()
result = enumerate_hits(p_filter=None, jobs=1)
print(
    f"swept {result.subsets_scanned:,} subsets in {time.time()-t0:.1f}s: "
    f"{result.hit_pair_count():,} (N, p) hits, "
    f"{result.distinct_class_count()} kernel classes, "
    f"prime multiset {dict(sorted(result.prime_multiset.items()))}, "
    f"{len(result.violations)} rank-lemma violations"
)

families = filter_hits(result)
print(f"\nafter the two filters and canonicalization: {len(families)} families")
for f in families:
    print(f"  p = {f.p}:  a ~ {f.a}   ({len(f.monomials)} monomials, {f.witness_count} witnesses)")

print("\nsingularity certificates:")
for f in families:
    cert = certify_family_singular(f)
    ok = recheck_certificate_numeric(f, samples=100, seed=1)
    ext = " over a quadratic extension" if cert.uses_quadratic_extension else ""
    print(
        f"  family {cert.family_id} (p={cert.p}): singular at {cert.point_label}{ext}; "
        f"all {cert.zero_minor_count} 4x4 minors vanish, numeric re-check {ok}"
    )

print("\nnilpotent patterns (the non-diagonal case):")
for p in (5, 7):
    analysis = nilpotent_kernel_analysis(p)
    jumping = {
        bits: v for bits, v in analysis["patterns"].items()
        if v["kernel_QQ"] != v["kernel_Fp"]
    }
    if not jumping:
        print(f"  p = {p}: all sixteen patterns lift (kernel dimensions equal)")
    else:
        for bits, v in jumping.items():
            print(
                f"  p = {p}: pattern {bits} jumps ({v['kernel_QQ']} over QQ vs "
                f"{v['kernel_Fp']} over GF({p})); extra solutions:"
            )
            for q in v["extra"]:
                print(f"      {q}")
        print(
            "    -> these extra mod-5 solutions do not lift with the pattern fixed;"
            "\n       whether their generic member cuts a singular section is the"
            "\n       one verification this workbench reports as open."
        )
