"""Relation catalog, closed-diagram evaluator, and structural reports."""

import random

import pytest

import glnwebs.verify as V
import glnwebs.webcat as W
from glnwebs.functor import gamma_scalar
from glnwebs.qalg import LaurentFraction, qbinom, qint


def _lf(n, poly):
    return LaurentFraction.from_poly(poly)


def test_relation_ids_catalog():
    ids = V.relation_ids()
    assert len(ids) == len(set(ids))
    for must in ("assoc", "circle-1", "dumbbell-kl", "jw-recursion", "square-switch-thin"):
        assert must in ids


@pytest.mark.parametrize(
    "rel_id",
    ["assoc", "coassoc", "digon-thin", "circle-1", "circle-1-rev", "dumbbell-slide",
     "split-cross", "R1-thin", "pitchfork"],
)
def test_catalog_spot_checks(rel_id):
    for n in (2, 3):
        rep = V.check(rel_id, n)
        assert rep.status == "pass", (rel_id, n, rep)


def test_check_unknown_relation():
    with pytest.raises(KeyError):
        V.check("no-such-relation", 2)


def test_circle_value_closed_form():
    # circle on a k-strand counts symmetric-power dimension, q-deformed
    for n in (2, 3, 4):
        assert V.circle_value(n, 1) == _lf(n, qint(n, n))
        for k in (1, 2, 3):
            assert V.circle_value(n, k) == _lf(n, qbinom(n + k - 1, k, n))


def test_curl_and_split_cross_scalars_invert():
    n = 3
    for k, l in ((1, 1), (1, 2), (2, 2)):
        one = LaurentFraction.one(n)
        assert V.split_cross_scalar(n, k, l, "over") * V.split_cross_scalar(n, k, l, "under") == one
    for k in (1, 2):
        assert V.curl_scalar(n, k, "over") * V.curl_scalar(n, k, "under") == LaurentFraction.one(n)


def test_two_dumbbell_count():
    assert [V.two_dumbbell_count(k) for k in (0, 1, 2, 3, 4, 5)] == [0, 0, 1, 3, 7, 15]


def test_thin_expression_matches_functor():
    from glnwebs.functor import gamma

    n = 2
    one = W.wid(n, ((1, W.UP),))
    for k in (2, 3):
        full = W.WebExpr.from_diagram(n, V._canonical_dumbbell(n, k)).tensor(one)
        thin = V.thin_expression(full)
        assert gamma(thin - full, n).is_zero()
        # every surviving diagram uses only thin labels
        for _, diag in thin.terms:
            assert all(g.k == 1 and g.l == 1 for g in diag.all_gens())


def test_color_change_is_involutive_on_functor():
    from glnwebs.functor import gamma

    n = 2
    d = V.thin_expression(W.dumbbell(n))
    once = V.color_change(d)
    twice = V.color_change(once)
    assert gamma(twice - d, n).is_zero()


def test_eval_closed_rewrite_circle():
    for n in (2, 3):
        for k in (1, 2):
            circ = V.close_up(W.wid(n, ((k, W.UP),)))
            assert V.eval_closed_rewrite(circ, n) == V.circle_value(n, k)


def test_eval_closed_rewrite_matches_gamma_on_corpus():
    for n in (2, 3):
        rep = V.closed_corpus_report(n, count=25, seed=5)
        assert rep.status == "pass", rep


def test_minimality_report():
    for n in (2, 3):
        rep = V.minimality_report(n)
        assert rep.status == "pass", rep


def test_projector_rank():
    rep = V.projector_rank_report(2, 3)
    assert rep.status == "pass", rep


def test_homdim_report():
    for k in (2, 3):
        rep = V.homdim_report(2, k)
        assert rep.status == "pass", rep


def test_bend_roundtrip():
    rep = V.bend_roundtrip_report(2, count=10, seed=3)
    assert rep.status == "pass", rep


def test_int_suite_small():
    reports = V.int_suite(2, max_label=2)
    assert reports and all(r.status == "pass" for r in reports), reports


def test_jw_recursion_sides_agree():
    n = 2
    lhs, rhs = V.jw_recursion_sides(n, 3)
    from glnwebs.functor import gamma

    assert gamma(lhs, n) == gamma(rhs, n)
