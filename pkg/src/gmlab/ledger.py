"""Cohomology-dimension bookkeeping for Gr(2,5), the quadric section Y, and
the double cover X (the six-dimensional intersection).

The derivations replay a fixed script of short-exact-sequence steps; there is
no general constraint solver over all sheaves, only a local solver for one
long exact sequence at a time (`exact_sequence_solve`): inside a run bounded
by zeros, a single unknown is forced by the alternating sum, and fully known
runs must sum to zero or the derivation aborts with its trace.

Dualizing sheaves: omega_Gr = O(-5), omega_Y = O_Y(-3), omega_X = O_X(-4).
Serre duality is used in the twist-free form h^j(Omega^i(m)) =
h^(d-j)(Omega^(d-i)(-m)).  Raynaud vanishing (the characteristic-p
Kodaira-Akizuki-Nakano theorem, applicable because these varieties lift to
W2) gives h^j(Omega^i(-l)) = 0 for l >= 1 and i + j < min(p, dim).

The single imported axiom is the vanishing of global vector fields on Y,
whose computational proof lives in `gmlab.vfsearch`; every use is tagged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import bott
from .bott import BundleSpec

GR_DIM = 6
Y_DIM = 5
X_DIM = 6


class LedgerError(Exception):
    pass


class ContradictionInLedger(LedgerError):
    def __init__(self, step: str, detail: str, trace):
        self.step = step
        self.trace = trace
        super().__init__(f"contradiction at step {step!r}: {detail}")


class UndecidableDependency(LedgerError):
    def __init__(self, weights):
        self.weights = weights
        super().__init__(f"bott engine undecidable on weights {weights}")


# ----------------------------------------------------------------------
# exact binomials and the structure-sheaf Euler characteristic of X
# ----------------------------------------------------------------------


def binom_poly(n: int, k: int) -> int:
    """Binomial coefficient as the polynomial n(n-1)...(n-k+1)/k!, valid for
    negative n as well.  The resolution-derived chi below needs the
    polynomial convention so that Serre duality chi(O(m)) = chi(O(-m-4))
    holds at every twist."""
    num = 1
    for t in range(k):
        num *= n - t
    den = 1
    for t in range(1, k + 1):
        den *= t
    q, r = divmod(num, den)
    assert r == 0
    return q


def chi_X_twist(m: int) -> int:
    """chi(O_X(m)) from the length-five resolution of O_X on P^10."""
    return (
        binom_poly(m + 10, 10)
        - 6 * binom_poly(m + 8, 10)
        + 5 * binom_poly(m + 7, 10)
        + 5 * binom_poly(m + 6, 10)
        - 6 * binom_poly(m + 5, 10)
        + binom_poly(m + 3, 10)
    )


# ----------------------------------------------------------------------
# local exact-sequence solver
# ----------------------------------------------------------------------


def exact_sequence_solve(entries: list, trace_name: str, trace) -> list:
    """Solve for the unknowns (None) in an exact sequence of dimensions.

    `entries` is [(label, value_or_None), ...] for a sequence that is exact
    and bounded by zeros at both ends.  Repeatedly, any run strictly between
    two zero entries with exactly one unknown is solved from the alternating
    sum; fully known runs are checked.  Returns values in order; unsolved
    stay None.
    """
    vals = [v for _, v in entries]
    labels = [l for l, _ in entries]
    changed = True
    while changed:
        changed = False
        zero_positions = [-1] + [i for i, v in enumerate(vals) if v == 0] + [len(vals)]
        for a, b in zip(zero_positions, zero_positions[1:]):
            run = list(range(a + 1, b))
            if not run:
                continue
            unknown = [i for i in run if vals[i] is None]
            if len(unknown) == 1:
                i = unknown[0]
                acc = 0
                for k in run:
                    if k == i:
                        continue
                    sign = 1 if (k - run[0]) % 2 == 0 else -1
                    acc += sign * vals[k]
                sign_i = 1 if (i - run[0]) % 2 == 0 else -1
                value = -sign_i * acc
                if value < 0:
                    raise ContradictionInLedger(
                        trace_name, f"negative dimension for {labels[i]}", trace
                    )
                vals[i] = value
                changed = True
            elif not unknown:
                acc = 0
                for k in run:
                    sign = 1 if (k - run[0]) % 2 == 0 else -1
                    acc += sign * vals[k]
                if acc != 0:
                    raise ContradictionInLedger(
                        trace_name,
                        f"exactness fails on run {labels[run[0]]}..{labels[run[-1]]}",
                        trace,
                    )
    return vals


def _interleave(A, B, C, top):
    """Entries of the long exact sequence of 0 -> A -> B -> C -> 0."""
    entries = []
    for j in range(top + 1):
        entries.append((f"A{j}", A[j] if j < len(A) else 0))
        entries.append((f"B{j}", B[j] if j < len(B) else 0))
        entries.append((f"C{j}", C[j] if j < len(C) else 0))
    return entries


def _extract(vals, which: str, top: int, dim: int):
    offset = {"A": 0, "B": 1, "C": 2}[which]
    out = []
    for j in range(dim + 1):
        out.append(vals[3 * j + offset])
    return out


class SES:
    """One scripted short-exact-sequence step 0 -> A -> B -> C -> 0."""

    def __init__(self, name: str, cite: str = ""):
        self.name = name
        self.cite = cite

    def solve(self, A, B, C, trace, top=GR_DIM + 1):
        entries = _interleave(A, B, C, top)
        vals = exact_sequence_solve(entries, self.name, trace)
        return vals


# ----------------------------------------------------------------------
# the derivation engine
# ----------------------------------------------------------------------


@dataclass
class HodgeDiamond:
    dim: int
    h: tuple  # h[i][j]

    def entry(self, i: int, j: int) -> int:
        return self.h[i][j]

    def check(self):
        d = self.dim
        for i in range(d + 1):
            for j in range(d + 1):
                if self.h[i][j] < 0:
                    raise LedgerError(f"negative Hodge number h^{i},{j}")
                if self.h[i][j] != self.h[d - i][d - j]:
                    raise LedgerError(f"Serre symmetry fails at ({i},{j})")

    def topological_euler(self) -> int:
        return sum(
            (-1) ** (i + j) * self.h[i][j]
            for i in range(self.dim + 1)
            for j in range(self.dim + 1)
        )

    def rows(self) -> list[list[int]]:
        """Diamond rows from top (i+j = 2d) to bottom (i+j = 0)."""
        d = self.dim
        out = []
        for s in range(2 * d, -1, -1):
            row = []
            for i in range(d, -1, -1):
                j = s - i
                if 0 <= j <= d:
                    row.append(self.h[i][j])
            out.append(row)
        return out

    def render(self) -> str:
        rows = self.rows()
        width = max(len(str(v)) for row in rows for v in row) + 2
        total = max(len(row) for row in rows) * width
        lines = []
        for row in rows:
            body = "".join(str(v).center(width) for v in row)
            lines.append(body.center(total).rstrip())
        return "\n".join(lines)

    def as_json(self) -> dict:
        return {"dim": self.dim, "h": [list(row) for row in self.h]}


@dataclass
class Derivation:
    """Caches sheaf-cohomology dimension vectors and records every step."""

    p: int
    trace: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def log(self, step: str, output: str, dims, cite: str = ""):
        self.trace.append(
            {"step": step, "output": output, "dims": list(dims), "cite": cite}
        )

    # -- Grassmannian level -------------------------------------------------
    def gr(self, spec: BundleSpec) -> list[int]:
        key = ("Gr", spec)
        if key not in self.facts:
            try:
                table = bott.bundle_cohomology_with_duality(spec, self.p)
            except bott.UndecidableWeights as exc:
                raise UndecidableDependency([w.rep for w in exc.weights]) from exc
            dims = table.dims()
            self.facts[key] = dims
            self.log("bott", f"Gr:{spec.label()}", dims, "alcove rules + duality")
        return self.facts[key]

    def chi_gr(self, spec: BundleSpec) -> int:
        return bott.euler_char(spec)

    # -- restriction to Y ---------------------------------------------------
    def store(self, key: str, dims: list[int], step: str, cite: str = ""):
        clean = [int(v) for v in dims]
        if key in self.facts and self.facts[key] != clean:
            raise ContradictionInLedger(step, f"refitting {key}", self.trace)
        self.facts[key] = clean
        self.log(step, key, clean, cite)
        return clean

    def o_y(self, m: int) -> list[int]:
        key = f"Y:O({m})"
        if key in self.facts:
            return self.facts[key]
        A = self.gr(BundleSpec.structure(m - 2))
        B = self.gr(BundleSpec.structure(m))
        ses = SES(f"restrict O({m}) to Y")
        vals = ses.solve(A, B, [None] * (Y_DIM + 1), self.trace)
        dims = _extract(vals, "C", GR_DIM + 1, Y_DIM)
        if any(v is None for v in dims):
            raise ContradictionInLedger(ses.name, "unresolved degrees", self.trace)
        return self.store(key, dims, ses.name, "O(2)-restriction sequence")

    def omega_gr_on_y(self, i: int, m: int) -> list[int]:
        key = f"Y:Omega^{i}_Gr({m})|Y"
        if key in self.facts:
            return self.facts[key]
        A = self.gr(BundleSpec.omega(i, m - 2))
        B = self.gr(BundleSpec.omega(i, m))
        ses = SES(f"restrict Omega^{i}({m}) to Y")
        vals = ses.solve(A, B, [None] * (Y_DIM + 1), self.trace)
        dims = _extract(vals, "C", GR_DIM + 1, Y_DIM)
        if any(v is None for v in dims):
            raise ContradictionInLedger(ses.name, "unresolved degrees", self.trace)
        return self.store(key, dims, ses.name, "O(2)-restriction sequence")

    def omega_y(self, i: int, m: int) -> list[int]:
        """h^*(Y, Omega^i_Y(m)) via the conormal sequence
        0 -> Omega^(i-1)_Y(m-2) -> Omega^i_Gr(m)|_Y -> Omega^i_Y(m) -> 0."""
        key = f"Y:Omega^{i}({m})"
        if key in self.facts:
            return self.facts[key]
        if i == 0:
            return self.o_y(m)
        A = self.omega_y(i - 1, m - 2)
        B = self.omega_gr_on_y(i, m)
        ses = SES(f"conormal sequence for Omega^{i}_Y({m})")
        vals = ses.solve(A, B, [None] * (Y_DIM + 1), self.trace, top=Y_DIM + 1)
        dims = _extract(vals, "C", Y_DIM + 1, Y_DIM)
        if any(v is None for v in dims):
            raise ContradictionInLedger(ses.name, "unresolved degrees", self.trace)
        return self.store(key, dims, ses.name, "conormal sequence on Y")

    def chi_o_y(self, m: int) -> int:
        return self.chi_gr(BundleSpec.structure(m)) - self.chi_gr(
            BundleSpec.structure(m - 2)
        )

    def chi_omega_y(self, i: int, m: int) -> int:
        if i == 0:
            return self.chi_o_y(m)
        restricted = self.chi_gr(BundleSpec.omega(i, m)) - self.chi_gr(
            BundleSpec.omega(i, m - 2)
        )
        return restricted - self.chi_omega_y(i - 1, m - 2)

    def raynaud_zero_range(self, i: int, dim: int) -> int:
        """Degrees j with h^j(Omega^i (x) ample^(-1)) = 0: j < bound - i."""
        return min(self.p, dim) - i

    def omega_y_raynaud(self, i: int, m: int) -> list:
        """Partially known column for Omega^i_Y(m), m < 0, from Raynaud."""
        bound = self.raynaud_zero_range(i, Y_DIM)
        dims = [0 if j < bound else None for j in range(Y_DIM + 1)]
        self.log(
            "raynaud",
            f"Y:Omega^{i}({m}) partial",
            [v if v is not None else -1 for v in dims],
            "Kodaira-Akizuki-Nakano in char p (liftable to W2)",
        )
        return dims

    # -- X level ------------------------------------------------------------
    def o_x(self) -> list[int]:
        key = "X:O"
        if key in self.facts:
            return self.facts[key]
        # Every term of the length-five resolution on P(W) = P^10 has twists
        # in -7..0, so the only hypercohomology is H^0(O) = 1.
        dims = [1] + [0] * X_DIM
        assert chi_X_twist(0) == 1
        return self.store(key, dims, "resolution of O_X on P^10", "R^i f_* O_X = 0")

    def gamma_omega_x(self, i: int) -> list:
        """Known degrees of h^*(X, Omega^i_X) via the pushforward sequence
        0 -> Omega^i + Omega^i(-1) -> g_* Omega^i_X -> Omega^(i-1)_Y(-1) -> 0.
        Returns a (possibly partial) column."""
        A1 = self.gr(BundleSpec.omega(i, 0))
        A2 = self.gr(BundleSpec.omega(i, -1))
        A = [a + b for a, b in zip(A1, A2)]
        if i == 1:
            C = self.o_y(-1)
        else:
            C = self.omega_y_partial(i - 1, -1)
        ses = SES(f"pushforward sequence for Omega^{i}_X")
        vals = ses.solve(A, [None] * (X_DIM + 1), C, self.trace)
        return _extract(vals, "B", GR_DIM + 1, X_DIM)

    def omega_y_partial(self, i: int, m: int) -> list:
        """Omega^i_Y(m) for m < 0: full column when the script can close it,
        otherwise the Raynaud zeros with unknowns above."""
        key = f"Y:Omega^{i}({m})"
        if key in self.facts:
            return self.facts[key]
        if i == 0:
            return self.o_y(m)
        if i == 1 and m == -1:
            # 0 -> O_Y(-3) -> Omega^1_Gr(-1)|_Y -> Omega^1_Y(-1) -> 0
            A = self.o_y(-3)
            B = self.omega_gr_on_y(1, -1)
            ses = SES("conormal sequence for Omega^1_Y(-1)")
            vals = ses.solve(A, B, [None] * (Y_DIM + 1), self.trace, top=Y_DIM + 1)
            dims = _extract(vals, "C", Y_DIM + 1, Y_DIM)
            if any(v is None for v in dims):
                raise ContradictionInLedger(ses.name, "unresolved", self.trace)
            return self.store(key, dims, ses.name, "conormal sequence on Y")
        return self.omega_y_raynaud(i, m)

    # -- diamonds -----------------------------------------------------------
    def diamond_gr(self) -> HodgeDiamond:
        cols = []
        for i in range(GR_DIM + 1):
            spec = BundleSpec.structure(0) if i == 0 else BundleSpec.omega(i, 0)
            cols.append(self.gr(spec))
        h = tuple(tuple(cols[i][j] for j in range(GR_DIM + 1)) for i in range(GR_DIM + 1))
        diamond = HodgeDiamond(GR_DIM, h)
        diamond.check()
        for i in range(GR_DIM + 1):
            spec = BundleSpec.structure(0) if i == 0 else BundleSpec.omega(i, 0)
            chi = self.chi_gr(spec)
            col = sum((-1) ** j * cols[i][j] for j in range(GR_DIM + 1))
            if chi != col:
                raise ContradictionInLedger("chi check Gr", f"column {i}", self.trace)
        return diamond

    def diamond_y(self) -> HodgeDiamond:
        if self.p < 5:
            raise LedgerError("the derivation scripts require p >= 5")
        cols: dict[int, list[int]] = {}
        cols[0] = self.o_y(0)
        cols[1] = self.omega_y(1, 0)
        cols[2] = self.omega_y(2, 0)
        # Serre duality on Y closes the remaining columns.
        for i in range(3, Y_DIM + 1):
            dual = cols[Y_DIM - i]
            cols[i] = [dual[Y_DIM - j] for j in range(Y_DIM + 1)]
            self.log("serre", f"Y:Omega^{i} by duality", cols[i], "omega_Y = O_Y(-3)")
        h = tuple(tuple(cols[i][j] for j in range(Y_DIM + 1)) for i in range(Y_DIM + 1))
        diamond = HodgeDiamond(Y_DIM, h)
        diamond.check()
        for i in range(Y_DIM + 1):
            chi = self.chi_omega_y(i, 0)
            col = sum((-1) ** j * cols[i][j] for j in range(Y_DIM + 1))
            if chi != col:
                raise ContradictionInLedger("chi check Y", f"column {i}", self.trace)
        return diamond

    def diamond_x(self) -> HodgeDiamond:
        if self.p < 5:
            raise LedgerError("the derivation scripts require p >= 5")
        cols: dict[int, list] = {}
        cols[0] = self.o_x()
        cols[1] = self.gamma_omega_x(1)
        cols[2] = self.gamma_omega_x(2)
        cols[3] = self.gamma_omega_x(3)
        for i in (1, 2):
            if any(v is None for v in cols[i]):
                raise ContradictionInLedger(
                    f"X column {i}", "unresolved degrees", self.trace
                )
        # Serre duality fills columns 4..6 and the outer part of column 3.
        for i in range(4, X_DIM + 1):
            src = cols[X_DIM - i]
            cols[i] = [src[X_DIM - j] for j in range(X_DIM + 1)]
            self.log("serre", f"X:Omega^{i} by duality", cols[i], "omega_X = O_X(-4)")
        col3 = list(cols[3])
        for j in range(X_DIM + 1):
            dual_val = col3[X_DIM - j]
            if col3[j] is None and dual_val is not None:
                col3[j] = dual_val
        # Euler characteristic pins the middle Hodge number.
        chi3 = (
            self.chi_gr(BundleSpec.omega(3, 0))
            + self.chi_gr(BundleSpec.omega(3, -1))
            + self.chi_omega_y(2, -1)
        )
        if col3.count(None) == 1:
            missing = col3.index(None)
            known = sum(
                (-1) ** j * v for j, v in enumerate(col3) if v is not None
            )
            value = (chi3 - known) * (1 if missing % 2 == 0 else -1)
            if value < 0:
                raise ContradictionInLedger("chi pin X", "negative dimension", self.trace)
            col3[missing] = value
            self.log(
                "euler-pin",
                f"X:h^3,{missing}",
                [value],
                "chi additivity across the pushforward sequence",
            )
        if any(v is None for v in col3):
            raise ContradictionInLedger("X column 3", "unresolved degrees", self.trace)
        cols[3] = col3
        h = tuple(tuple(cols[i][j] for j in range(X_DIM + 1)) for i in range(X_DIM + 1))
        diamond = HodgeDiamond(X_DIM, h)
        diamond.check()
        return diamond

    # -- the Omega^2_Y(-1) column, needed for the primitive middle piece ----
    def omega2_y_minus1(self) -> list[int]:
        key = "Y:Omega^2(-1)"
        if key in self.facts:
            return self.facts[key]
        dx = self.diamond_x()
        A1 = self.gr(BundleSpec.omega(3, 0))
        A2 = self.gr(BundleSpec.omega(3, -1))
        A = [a + b for a, b in zip(A1, A2)]
        B = [dx.entry(3, j) for j in range(X_DIM + 1)]
        bound = self.raynaud_zero_range(2, Y_DIM)
        C: list = [0 if j < bound else None for j in range(Y_DIM + 1)]
        ses = SES("pushforward sequence for Omega^3_X, solved for the quotient")
        vals = ses.solve(A, B, C, self.trace)
        dims = _extract(vals, "C", GR_DIM + 1, Y_DIM)
        if any(v is None for v in dims):
            raise ContradictionInLedger(ses.name, "unresolved", self.trace)
        chi = self.chi_omega_y(2, -1)
        if sum((-1) ** j * d for j, d in enumerate(dims)) != chi:
            raise ContradictionInLedger(ses.name, "chi mismatch", self.trace)
        return self.store(key, dims, ses.name, "Raynaud zeros + X diamond")


# ----------------------------------------------------------------------
# public API
# ----------------------------------------------------------------------


def derive_diamond(variety: str, p: int) -> tuple[HodgeDiamond, list]:
    d = Derivation(p)
    if variety == "Gr":
        diamond = d.diamond_gr()
    elif variety == "Y":
        diamond = d.diamond_y()
    elif variety == "X":
        diamond = d.diamond_x()
    else:
        raise ValueError(f"unknown variety {variety!r}")
    return diamond, d.trace


def topological_euler(variety: str, p: int = 5) -> int:
    diamond, _ = derive_diamond(variety, p)
    return diamond.topological_euler()


def tangent_report(p: int) -> dict:
    """The golden tangent-cohomology dimensions, with their derivation trace.

    The single imported fact is h^0(Y, T_Y) = 0, established by the
    exhaustive vector-field obstruction search (gmlab.vfsearch); both uses
    are tagged in the trace.
    """
    if p < 5:
        raise LedgerError("the derivation scripts require p >= 5")
    d = Derivation(p)
    oy1 = d.o_y(1)
    oy2 = d.o_y(2)

    # T_Gr restricted to Y: 0 -> T(-2) -> T -> T|_Y -> 0 with H*(T(-2)) = 0.
    A = d.gr(BundleSpec.tangent(-2))
    B = d.gr(BundleSpec.tangent(0))
    ses = SES("restrict T_Gr to Y")
    vals = ses.solve(A, B, [None] * (Y_DIM + 1), d.trace)
    t_on_y = _extract(vals, "C", GR_DIM + 1, Y_DIM)
    d.store("Y:T_Gr|Y", t_on_y, ses.name)

    # Normal bundle sequence 0 -> T_Y -> T_Gr|_Y -> O_Y(2) -> 0, with the
    # vector-field axiom h^0(T_Y) = 0 closing the first run.
    ty: list = [0] + [None] * Y_DIM
    d.log(
        "axiom",
        "Y:h^0(T_Y)=0",
        [0],
        "exhaustive vector-field obstruction search (vfsearch)",
    )
    ses2 = SES("normal bundle sequence of Y in Gr")
    vals2 = ses2.solve(ty, t_on_y, oy2, d.trace, top=Y_DIM + 1)
    ty = _extract(vals2, "A", Y_DIM + 1, Y_DIM)
    d.store("Y:T_Y", ty, ses2.name)

    # Pushforward 0 -> g_* T_X -> T + T(-1) -> O_Y(2) -> 0; beta is injective
    # because h^0(T_Y) = 0 and H*(T_Gr(-2)) = 0, so h^0(T_X) = 0.
    Bsum = [
        a + b
        for a, b in zip(d.gr(BundleSpec.tangent(0)), d.gr(BundleSpec.tangent(-1)))
    ]
    tx: list = [0] + [None] * X_DIM
    d.log(
        "axiom",
        "X:h^0(T_X)=0",
        [0],
        "beta injective: h^0(T_Y)=0 plus H*(T_Gr(-2))=0",
    )
    ses3 = SES("pushforward tangent sequence of X")
    vals3 = ses3.solve(tx, Bsum, oy2, d.trace)
    tx = _extract(vals3, "A", GR_DIM + 1, X_DIM)
    d.store("X:T_X", tx, ses3.name)

    dx = d.diamond_x()
    dgr = d.diamond_gr()
    om2 = d.omega2_y_minus1()
    h33_00 = dx.entry(3, 3) - dgr.entry(3, 3)
    d.log(
        "axiom",
        "X:h^3,3_00",
        [h33_00],
        "gamma^* injective on H^3,3 (primitive part has codimension rank H^3,3(Gr))",
    )
    if h33_00 != om2[3]:
        raise ContradictionInLedger(
            "primitive middle",
            f"h33_00 = {h33_00} but h^3(Omega^2_Y(-1)) = {om2[3]}",
            d.trace,
        )

    report = {
        "h1(Y,T_Y)": ty[1],
        "h_other(Y,T_Y)": sum(v for j, v in enumerate(ty) if j != 1),
        "h1(X,T_X)": tx[1],
        "h0(Y,O_Y(1))": oy1[0],
        "h0(Y,O_Y(2))": oy2[0],
        "h33_00(X)": h33_00,
        "h24(X)": dx.entry(2, 4),
    }
    return {"p": p, "report": report, "trace": d.trace}


def trace_json(trace: list) -> str:
    return json.dumps(trace, indent=2, sort_keys=True)
