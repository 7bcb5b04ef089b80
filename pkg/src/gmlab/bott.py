"""Characteristic-p cohomology of line bundles on SL5/B and of the filtered
homogeneous bundles Omega^i(m), T(m), O(m) on Gr(2,5).

The decision engine is deliberately partial.  It knows exactly four rules:

  R1   Kempf vanishing: dominant weights contribute only in degree 0.
  R2a  a simple coroot pairing equal to -1 kills all cohomology (any p).
  R4   pairings (-2, 0) against adjacent simple roots kill all cohomology
       (any p); this is the precise instance pattern used for O(-2) and
       T(-2)-type weights.
  R3   inside the closed p-alcove (spread of lambda+rho at most p) the
       outcome follows the dot-orbit: repeated entries give zero, distinct
       entries give a single degree l(w) of dimension dim(w . lambda).

Everything else is reported as undecidable rather than guessed.  Bundle
tables mark a degree Exact only when every nonzero contribution of the weight
filtration lands in that single degree (the filtration spectral sequence then
degenerates for free); otherwise per-degree upper bounds are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .weights import (
    RHO,
    Weight,
    WeylElem,
    dot_act,
    simple_pairing,
    sorting_word,
    weyl_dim,
)

GR_DIM = 6

# The six weights of the reduced cotangent filtration, in the (b, a) order
# -e_a + e_b for b = 4 then b = 5, a = 1, 2, 3.  This is the order in which
# the printed twelve-row tables for Omega^2 list the pair sums.
OMEGA1_RAW: tuple[tuple[int, ...], ...] = (
    (-1, 0, 0, 1, 0),
    (0, -1, 0, 1, 0),
    (0, 0, -1, 1, 0),
    (-1, 0, 0, 0, 1),
    (0, -1, 0, 0, 1),
    (0, 0, -1, 0, 1),
)


class UndecidableWeights(Exception):
    """Raised when a bundle table hits weights outside every rule regime."""

    def __init__(self, weights: list[Weight]):
        self.weights = weights
        super().__init__(f"undecidable weights: {[w.rep for w in weights]}")


@dataclass(frozen=True)
class BottOutcome:
    kind: str  # "all_zero" | "single" | "undecidable"
    rule: str
    degree: Optional[int] = None
    dim: Optional[int] = None
    mu: Optional[Weight] = None
    w: Optional[WeylElem] = None
    spread: Optional[int] = None

    @staticmethod
    def all_zero(rule: str) -> "BottOutcome":
        return BottOutcome("all_zero", rule)

    @staticmethod
    def single(rule: str, degree: int, dim: int, mu: Weight, w: WeylElem) -> "BottOutcome":
        return BottOutcome("single", rule, degree=degree, dim=dim, mu=mu, w=w)

    @staticmethod
    def undecidable(spread: int) -> "BottOutcome":
        return BottOutcome("undecidable", "outside-alcove", spread=spread)


@dataclass(frozen=True)
class BundleSpec:
    """Omega(i) twisted by O(m), the tangent bundle twisted, or O(m)."""

    kind: str  # "omega" | "tangent" | "structure"
    twist: int = 0
    i: int = 0

    def __post_init__(self):
        if self.kind not in ("omega", "tangent", "structure"):
            raise ValueError(f"unknown bundle kind {self.kind!r}")
        if self.kind == "omega" and not 1 <= self.i <= 6:
            raise ValueError("omega degree must be in 1..6; use structure for Omega^0")
        if self.kind != "omega" and self.i:
            raise ValueError("only omega bundles carry an exterior degree")

    @staticmethod
    def omega(i: int, twist: int = 0) -> "BundleSpec":
        return BundleSpec("omega", twist, i)

    @staticmethod
    def tangent(twist: int = 0) -> "BundleSpec":
        return BundleSpec("tangent", twist)

    @staticmethod
    def structure(twist: int = 0) -> "BundleSpec":
        return BundleSpec("structure", twist)

    def serre_dual(self) -> "BundleSpec":
        """The bundle with h^j(dual) = h^(6-j)(self), via (F)^vee (x) omega_Gr."""
        if self.kind == "omega":
            if self.i == 6:
                return BundleSpec.structure(-(self.twist - 5) - 5)
            return BundleSpec.omega(6 - self.i, -self.twist)
        if self.kind == "structure":
            return BundleSpec.structure(-self.twist - 5)
        return BundleSpec.omega(1, -self.twist - 5)

    def label(self) -> str:
        if self.kind == "structure":
            return f"O({self.twist})"
        base = f"Omega^{self.i}" if self.kind == "omega" else "T"
        return f"{base}({self.twist})" if self.twist else base


# ----------------------------------------------------------------------
# line bundles on G/B
# ----------------------------------------------------------------------


def line_cohomology(lam: Weight, p: int) -> BottOutcome:
    """Decide H*(G/B_-, L(lambda)) in characteristic p, or report undecidable."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if lam.is_dominant():
        return BottOutcome.single(
            "kempf", 0, weyl_dim(lam), lam, WeylElem.identity()
        )
    pair = [simple_pairing(lam, i) for i in range(1, 5)]
    if any(v == -1 for v in pair):
        return BottOutcome.all_zero("demazure-wall")
    for a in range(4):
        if pair[a] == -2:
            for b in (a - 1, a + 1):  # adjacent simples have <alpha, beta^vee> = -1
                if 0 <= b < 4 and pair[b] == 0:
                    return BottOutcome.all_zero("demazure-pair")
    w, v = sorting_word(lam)
    spread = v[0] - v[-1]
    if spread <= p:
        if len(set(v)) < 5:
            return BottOutcome.all_zero("alcove-nondominant")
        mu = dot_act(w, lam)
        return BottOutcome.single("alcove", w.length, weyl_dim(mu), mu, w)
    return BottOutcome.undecidable(spread)


# ----------------------------------------------------------------------
# bundle weights, in the raw representatives the printed tables use
# ----------------------------------------------------------------------


def _twist_raw(m: int) -> tuple[int, ...]:
    # m * [1,1,1,0,0] written as the sum-free representative [0,0,0,-m,-m]
    return (0, 0, 0, -m, -m)


def _vec_add(*vs) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*vs))


def bundle_weight_rows(spec: BundleSpec) -> list[tuple[tuple[int, ...], int]]:
    """Distinct filtration weights with multiplicities, as raw vectors in
    the printed representatives and row order."""
    import itertools

    if spec.kind == "structure":
        return [((spec.twist, spec.twist, spec.twist, 0, 0), 1)]
    tw = _twist_raw(spec.twist)
    if spec.kind == "tangent":
        # negation swaps the two blocks of the (b, a) order; listing the
        # second block first keeps the printed representatives in their
        # e_a + e_4 before e_a + e_5 order
        order = OMEGA1_RAW[3:] + OMEGA1_RAW[:3]
        return [(_vec_add(tuple(-x for x in w), tw), 1) for w in order]
    rows: list[tuple[tuple[int, ...], int]] = []
    index: dict[tuple[int, ...], int] = {}
    for subset in itertools.combinations(range(6), spec.i):
        vec = _vec_add(*(OMEGA1_RAW[k] for k in subset), tw)
        if vec in index:
            pos = index[vec]
            rows[pos] = (vec, rows[pos][1] + 1)
        else:
            index[vec] = len(rows)
            rows.append((vec, 1))
    return rows


def bundle_weights(spec: BundleSpec) -> list[Weight]:
    """Full multiset of filtration weights (multiplicity expanded)."""
    out = []
    for vec, mult in bundle_weight_rows(spec):
        out.extend([Weight(vec)] * mult)
    return out


# ----------------------------------------------------------------------
# Euler characteristics (characteristic free)
# ----------------------------------------------------------------------


def euler_char(spec: BundleSpec) -> int:
    total = 0
    for vec, mult in bundle_weight_rows(spec):
        lam = Weight(vec)
        w, v = sorting_word(lam)
        if len(set(v)) < 5:
            continue
        total += mult * w.sign() * weyl_dim(dot_act(w, lam))
    return total


# ----------------------------------------------------------------------
# cohomology tables
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CohomTable:
    spec: BundleSpec
    p: int
    entries: tuple  # 7 entries, each ("zero", 0) | ("exact", d) | ("upper", d)
    chi: int

    def dims(self) -> list[int]:
        """Exact dimension vector h^0..h^6; raises if any entry is a bound."""
        out = []
        for tag, d in self.entries:
            if tag == "upper":
                raise ValueError("table has unresolved upper bounds")
            out.append(d)
        return out

    def is_exact(self) -> bool:
        return all(tag != "upper" for tag, _ in self.entries)

    def as_json(self) -> dict:
        return {
            "bundle": self.spec.label(),
            "p": self.p,
            "entries": [{"degree": j, "status": tag, "dim": d} for j, (tag, d) in enumerate(self.entries)],
            "chi": self.chi,
        }


def bundle_cohomology(spec: BundleSpec, p: int) -> CohomTable:
    """Cohomology table of the bundle from the weight filtration alone.

    Raises UndecidableWeights when some filtration weight escapes all rules;
    callers that also know Serre duality (the ledger) can recover from that.
    """
    contributions: dict[int, int] = {}
    bad: list[Weight] = []
    for vec, mult in bundle_weight_rows(spec):
        lam = Weight(vec)
        out = line_cohomology(lam, p)
        if out.kind == "undecidable":
            bad.append(lam)
        elif out.kind == "single":
            contributions[out.degree] = contributions.get(out.degree, 0) + mult * out.dim
    if bad:
        raise UndecidableWeights(bad)
    chi = euler_char(spec)
    nonzero_degrees = sorted(d for d, v in contributions.items() if v)
    entries = []
    for j in range(GR_DIM + 1):
        v = contributions.get(j, 0)
        if v == 0:
            entries.append(("zero", 0))
        elif len(nonzero_degrees) == 1:
            entries.append(("exact", v))
        else:
            entries.append(("upper", v))
    table = CohomTable(spec, p, tuple(entries), chi)
    if table.is_exact():
        alt = sum((-1) ** j * d for j, (tag, d) in enumerate(table.entries))
        assert alt == chi, f"chi mismatch for {spec.label()}: {alt} != {chi}"
    return table


def bundle_cohomology_with_duality(spec: BundleSpec, p: int) -> CohomTable:
    """Bundle table, falling back to the Serre-dual bundle when the direct
    filtration has weights outside the rule regimes (O(m) for m <= -5 at
    small p is the standard use of this)."""
    try:
        return bundle_cohomology(spec, p)
    except UndecidableWeights:
        dual = bundle_cohomology(spec.serre_dual(), p)
        entries = tuple(dual.entries[GR_DIM - j] for j in range(GR_DIM + 1))
        chi = euler_char(spec)
        table = CohomTable(spec, p, entries, chi)
        if table.is_exact():
            alt = sum((-1) ** j * d for j, (tag, d) in enumerate(entries))
            assert alt == chi, f"chi mismatch for dual of {spec.label()}"
        return table


# ----------------------------------------------------------------------
# the printed five-column tables
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    lam_raw: tuple[int, ...]
    lam_rho: tuple[int, ...]
    w: WeylElem
    sorted_vec: tuple[int, ...]
    dot_raw: tuple[int, ...]
    multiplicity: int
    dominant: bool
    outcome: BottOutcome


def weight_table(spec: BundleSpec, p: int) -> list[TableRow]:
    """One row per distinct filtration weight, in the conventional printed
    order, with the five table columns computed from the printed
    representatives (block order of the six cotangent weights, pair sums
    deduplicated at first occurrence)."""
    rows = []
    for vec, mult in bundle_weight_rows(spec):
        lam_rho = tuple(a + r for a, r in zip(vec, RHO))
        lam = Weight(vec)
        w, _ = sorting_word(lam)
        sorted_vec = w.apply(lam_rho)
        dot_raw = tuple(a - r for a, r in zip(sorted_vec, RHO))
        dominant = all(sorted_vec[i] > sorted_vec[i + 1] for i in range(4))
        rows.append(
            TableRow(
                lam_raw=vec,
                lam_rho=lam_rho,
                w=w,
                sorted_vec=sorted_vec,
                dot_raw=dot_raw,
                multiplicity=mult,
                dominant=dominant,
                outcome=line_cohomology(lam, p),
            )
        )
    return rows


def render_table_markdown(spec: BundleSpec, p: int, omit_nondominant_w: bool = False) -> str:
    """The printed 5-column layout.  With `omit_nondominant_w`, the w column
    is left blank on rows whose dot image is in the closed alcove but not
    dominant (the convention of the twist -3 table)."""
    rows = weight_table(spec, p)
    lines = [
        f"| lambda | lambda+rho | w | w(lambda+rho) | w.lambda |",
        "|---|---|---|---|---|",
    ]
    for r in rows:
        w_cell = r.w.cycle_string()
        if omit_nondominant_w and not r.dominant:
            w_cell = ""
        lines.append(
            "| {} | {} | {} | {} | {} |".format(
                list(r.lam_raw), list(r.lam_rho), w_cell, list(r.sorted_vec), list(r.dot_raw)
            )
        )
    return "\n".join(lines)


def table_as_json(spec: BundleSpec, p: int) -> str:
    rows = weight_table(spec, p)
    payload = []
    for r in rows:
        payload.append(
            {
                "lambda": list(r.lam_raw),
                "lambda_plus_rho": list(r.lam_rho),
                "w": r.w.cycle_string(),
                "w_of_lambda_plus_rho": list(r.sorted_vec),
                "w_dot_lambda": list(r.dot_raw),
                "multiplicity": r.multiplicity,
                "dominant": r.dominant,
                "outcome": r.outcome.kind,
            }
        )
    return json.dumps({"bundle": spec.label(), "p": p, "rows": payload}, indent=2)
