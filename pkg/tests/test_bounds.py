import dataclasses
import math
from decimal import Decimal, localcontext

import numpy as np
import pytest

from surfwalk.bounds import (BoundReport, check_consistent, kesten_girth_correction, kesten_girth_lower,
                             kesten_lower, one_form_bound, one_form_c, one_form_row_sums, one_relator_bound,
                             one_relator_reports, small_cancellation_report, surface_reports, tree_bound,
                             verify_one_form)
from surfwalk.errors import CertificationFailure, InvalidGenus, InvalidParameter


def test_kesten_values():
    assert kesten_lower(8) == pytest.approx(math.sqrt(7) / 4, abs=1e-15)
    assert kesten_lower(4) == pytest.approx(math.sqrt(3) / 2)
    assert round(kesten_lower(8), 4) == 0.6614
    with pytest.raises(InvalidParameter):
        kesten_lower(2)


@pytest.mark.parametrize("g", [2, 3, 5, 10, 40])
def test_girth_correction_log_domain(g):
    corr = kesten_girth_correction(g)
    log_expected = (math.log(4 - 2 * math.sqrt(3)) - math.log(4 * g + 2) - (4 * g + 2) * math.log(4 * g))
    assert math.isclose(float(corr.ln()), log_expected, rel_tol=1e-9)
    with localcontext() as ctx:
        ctx.prec = 1000
        diff = kesten_girth_lower(g) - Decimal(4 * g - 1).sqrt() / (2 * g)
    assert diff > 0
    assert abs(diff / corr - 1) < Decimal("1e-6")


def test_girth_correction_size_genus2():
    c = float(kesten_girth_correction(2))
    assert 4e-11 < c < 6e-11
    assert float(kesten_girth_lower(2)) > kesten_lower(8)
    with pytest.raises(InvalidGenus):
        kesten_girth_correction(1)


def test_one_form_values():
    assert one_form_c(8, math.sqrt(3)) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert one_form_c(8, 1.0) == 1.0
    assert one_form_c(12, math.sqrt(5)) == pytest.approx(math.sqrt(5) / 3)
    b, c = one_form_bound(40)
    assert b == pytest.approx(math.sqrt(19))
    assert round(c, 4) == 0.4359
    with pytest.raises(InvalidParameter):
        one_form_c(8, 0.5)
    with pytest.raises(InvalidParameter):
        one_form_bound(7)


@pytest.mark.parametrize("k", [4, 8, 12, 40])
def test_one_form_bound_is_minimum(k):
    b, c = one_form_bound(k)
    grid = np.linspace(1, 10, 20001)
    assert c <= min(one_form_c(k, x) for x in grid) + 1e-12


def test_tree_bound():
    assert tree_bound(8, 8 - 1) == pytest.approx(math.sqrt(6) / 4 + 1 / 8)
    assert round(tree_bound(40, 39), 4) == 0.3332
    # l = k collapses to Kesten's value; checked through the formula directly
    assert 2 * math.sqrt(7) / 8 == pytest.approx(kesten_lower(8))
    with pytest.raises(InvalidParameter):
        tree_bound(8, 8)


def test_one_relator():
    assert one_relator_bound(2) == pytest.approx((1 + 1) / 2)
    r = one_relator_reports(4)
    check_consistent(r)
    assert r[0].value < r[1].value


def test_report_validation_and_ordering():
    with pytest.raises(InvalidParameter):
        BoundReport({"genus": 2}, "kesten-lower", 1.5)
    with pytest.raises(InvalidParameter):
        BoundReport({"genus": 2}, "magic", 0.5)
    for g in range(2, 11):
        check_consistent(surface_reports(g))
    check_consistent([small_cancellation_report(4)])
    bad = [BoundReport({"genus": 2}, "kesten-lower", 0.9), BoundReport({"genus": 2}, "one-form", 0.8)]
    with pytest.raises(CertificationFailure):
        check_consistent(bad)
    # different groups are never compared
    check_consistent([BoundReport({"genus": 2}, "kesten-lower", 0.9), BoundReport({"genus": 3}, "one-form", 0.8)])


def test_verify_one_form(p2, ball3_4):
    from surfwalk.ball import build_ball
    b, c = one_form_bound(8)
    # radius 5 puts the first type-2 vertices (level 4) in the interior
    cert = verify_one_form(build_ball(p2, 5), b)
    assert abs(cert.max_row_sum / 8 - c) <= 1e-12
    assert cert.row_sums_by_type[2] == pytest.approx(6 / b + 2 * b)
    assert cert.row_sums_by_type[1] == pytest.approx(7 / b + b)
    # genus 3 needs radius 7 for interior type-2 vertices; the bound still holds
    b3, c3 = one_form_bound(12)
    assert verify_one_form(ball3_4, b3).max_row_sum / 12 <= c3 + 1e-12
    assert 2 not in verify_one_form(ball3_4, b3).row_sums_by_type


def test_one_form_rejects_bad_b(ball2_4):
    # b = 1 gives every row sum k, still within the bound k * c(1) = k
    assert verify_one_form(ball2_4, 1.0).max_row_sum == pytest.approx(8)


def test_level_preserving_edge_detected(ball2_4):
    lv = np.array(ball2_4.level)
    lv[1] = 0
    fake = dataclasses.replace(ball2_4, level=lv)
    with pytest.raises(CertificationFailure):
        one_form_row_sums(fake, math.sqrt(3))
