"""Integral quadratic lattices and the Chow-Kunneth projector algebra.

Run:  python demos/05_lattices_and_projectors.py
"""

import json

from gmlab.ckmotives import (
    TautClass,
    act_on,
    compose,
    perturbed_degree_table,
    projectors,
    schubert_degree,
    verify_chow_kunneth,
    IdentityViolation,
)
from gmlab.lattice import (
    discriminant_group,
    e8,
    gm_sixfold_vanishing_lattice,
    hyperbolic_plane,
    signature,
    verify_gm_lattice_facts,
)

print("=" * 72)
print("lattices")
print("=" * 72)
print("E8(-1): even", e8(-1).is_even(), "; det", e8(-1).det(), "; signature", signature(e8(-1)))
print("U:      signature", signature(hyperbolic_plane()))
L = gm_sixfold_vanishing_lattice()
d = discriminant_group(L)
print(
    f"rank-22 middle lattice: signature {signature(L)}, "
    f"discriminant invariants {d.invariants}, pairing {[[str(v) for v in row] for row in d.pairing]}"
)
print()
print(json.dumps(verify_gm_lattice_facts(), indent=2, sort_keys=True))

print()
print("=" * 72)
print("Chow-Kunneth projectors")
print("=" * 72)
for variety in ("GM4", "GM6"):
    pi = projectors(variety)
    print(f"{variety}: even projectors {sorted(pi)}; middle one carries the diagonal")
    verify_chow_kunneth(variety)
    print(f"  idempotence, orthogonality, completeness, degree selection: all exact")

print()
print("intersection numbers on the sixfold from the Pieri oracle:")
for (a, b) in [(6, 0), (4, 1), (2, 2), (0, 3)]:
    print(f"  deg(H^{a} e2^{b}) = {schubert_degree(a, b)}")

print()
print("negative control (deg H^4 e2 forced to 5):")
try:
    verify_chow_kunneth("GM6", degree_table=perturbed_degree_table("GM6", (4, 1), 5))
    print("  unexpectedly passed")
except IdentityViolation as exc:
    print(f"  fails as it must: {exc}")

pi = projectors("GM6")
H = TautClass.monomial("GM6", 1)
print()
print("sample action:  pi^2 fixes H:", act_on(pi[2], H).render())
print("composition:    pi^4 o pi^2 = ", compose(pi[4], pi[2]).render())
