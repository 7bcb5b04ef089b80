"""The acceptance suite: one test per headline criterion, at full strength.

Every criterion is asserted exactly as stated, with its pinned tolerance
(exact equality throughout; runtimes are bounds on the slower machines this
runs on, checked loosely here).  One line per criterion is printed so a
plain `pytest -s tests/test_acceptance.py` reads as a verification protocol.

Criterion 8 is expected to fail and is marked xfail(strict=True): the
sixteen-pattern lifting check is genuinely false at p = 5, where the full
Jordan block's 55x55 action matrix has elementary divisors 10 (kernel 9 over
QQ against 11 over GF(5)).  The companion test freezes that analysis, so the
gap is pinned rather than silently tolerated.
"""

import time

import pytest

from gmlab import suite
from gmlab.vfsearch import LemmaViolation, nilpotent_kernel_analysis, verify_nilpotent_lift


def _report(result, budget=None):
    print()
    print(result.line())
    assert result.passed, result.detail
    if budget is not None:
        assert result.seconds < budget, f"criterion {result.cid} exceeded {budget}s"


def test_criterion_1_printed_weight_tables():
    _report(suite.criterion_1(), budget=1.0)


def test_criterion_2_vanishing_suite():
    _report(suite.criterion_2(), budget=1.0)


def test_criterion_3_hodge_diamonds():
    _report(suite.criterion_3(), budget=1.0)


def test_criterion_4_golden_dimensions():
    _report(suite.criterion_4(), budget=1.0)


@pytest.fixture(scope="module")
def search_pair():
    return suite.criteria_5_and_6(jobs=1)


def test_criterion_5_classification(search_pair):
    c5, _, _, _ = search_pair
    _report(c5, budget=60.0)


def test_criterion_6_rank_lemma(search_pair):
    _, c6, _, _ = search_pair
    _report(c6)


def test_criterion_7_certificates(search_pair):
    _, _, _, families = search_pair
    _report(suite.criterion_7(families), budget=10.0)


@pytest.mark.xfail(
    strict=True,
    reason=(
        "genuine gap: the full Jordan block pattern 1111 has kernel 11 over "
        "GF(5) against 9 over QQ (elementary divisors 10); equal kernel "
        "dimensions at p = 5 are therefore unattainable"
    ),
)
def test_criterion_8_nilpotent_lifting_as_stated():
    result = suite.criterion_8()
    print()
    print(result.line())
    assert result.passed, result.detail


def test_criterion_8_gap_is_pinned():
    """The honest content behind criterion 8: fifteen of sixteen patterns
    pass at p = 5, all sixteen at p = 7 and 11, and the single failure is
    exactly the full Jordan block with the frozen extra kernel."""
    t0 = time.time()
    for p in (7, 11):
        assert verify_nilpotent_lift(p)["all_equal"]
    with pytest.raises(LemmaViolation):
        verify_nilpotent_lift(5)
    analysis = nilpotent_kernel_analysis(5)
    jumping = {
        bits: v
        for bits, v in analysis["patterns"].items()
        if v["kernel_QQ"] != v["kernel_Fp"]
    }
    assert set(jumping) == {"1111"}
    assert jumping["1111"]["kernel_QQ"] == 9
    assert jumping["1111"]["kernel_Fp"] == 11
    print()
    print(
        f"criterion  8* PASS  documented gap: only pattern 1111 jumps at p=5 "
        f"(9 vs 11), all 16 equal at p in {{7,11}}  ({time.time()-t0:.1f}s)"
    )


def test_criterion_9_round_trips():
    _report(suite.criterion_9(trials=200))


def test_criterion_10_lifting():
    _report(suite.criterion_10(trials=50))


def test_criterion_11_lattices():
    _report(suite.criterion_11(), budget=1.0)


def test_criterion_12_chow_kunneth():
    _report(suite.criterion_12(), budget=1.0)
