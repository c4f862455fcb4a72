"""Acceptance suite: the full set of exact identities the package promises.

Every check here is also runnable end to end via `glnwebs suite`; these
tests call the same library entry points with the same parameters.
"""

import time

import glnwebs.verify as V
from glnwebs.cli import _merge, suite_items


def _timed(budget):
    start = time.monotonic()

    def done():
        elapsed = time.monotonic() - start
        assert elapsed < budget, f"budget exceeded: {elapsed:.1f}s >= {budget}s"

    return done


def test_01_thin_circles_both_orientations():
    done = _timed(1.0)
    for n in (2, 3, 4, 5):
        assert V.check("circle-1", n).status == "pass"
        assert V.check("circle-1-rev", n).status == "pass"
    done()


def test_02_thick_circles():
    done = _timed(5.0)
    for n in (2, 3):
        assert V.check("circle-k", n, ks=(1, 2, 3)).status == "pass"
    done()


def test_03_dumbbell_removals():
    done = _timed(10.0)
    for n in (2, 3):
        assert V.check("dumbbell-side", n).status == "pass"
        assert V.check("dumbbell-kl", n).status == "pass"
    done()


def test_04_full_relation_catalog():
    done = _timed(120.0)
    for n in (2, 3):
        for rid in V.relation_ids():
            rep = V.check(rid, n, labels=V.suite_labels(rid))
            assert rep.status == "pass", (rid, n, rep.as_dict())
    done()


def test_05_serre_web_identity():
    done = _timed(5.0)
    for k, l, m in ((2, 1, 1), (2, 1, 2)):
        rep = V.check("serre-web", 2, k=k, l=l, m=m)
        assert rep.status == "pass", (k, l, m, rep.as_dict())
    done()


def test_06_twist_scalars():
    done = _timed(10.0)
    for n in (2, 3):
        assert V.check("R1-thin", n).status == "pass"
        assert V.check("R1-thick", n, ks=(1, 2)).status == "pass"
        assert V.check("split-cross", n, labels=(1, 2)).status == "pass"
    done()


def test_07_minimality_closures():
    done = _timed(2.0)
    for n in (2, 3, 4):
        rep = V.minimality_report(n)
        assert rep.status == "pass", (n, rep.as_dict())
    done()


def test_08_projectors_and_recursion():
    done = _timed(30.0)
    for n in (2, 3):
        for k in (1, 2, 3, 4):
            rep = V.projector_rank_report(n, k)
            assert rep.status == "pass", (n, k, rep.as_dict())
        rep = V.check("jw-recursion", n, ks=(3, 4))
        assert rep.status == "pass", (n, rep.as_dict())
    done()


def test_09_divided_power_relation_sweep():
    done = _timed(60.0)
    for n in (2, 3):
        for rep in V.dot_suite(n):
            assert rep.status == "pass", rep.as_dict()
    done()


def test_10_integral_mode():
    done = _timed(60.0)
    for n in (2, 3):
        for rep in V.int_suite(n):
            assert rep.status == "pass", rep.as_dict()
    done()


def test_11_rewrite_oracle_agreement():
    done = _timed(120.0)
    for n in (2, 3):
        rep = V.closed_corpus_report(n, count=200, seed=0)
        assert rep.status == "pass", (n, rep.as_dict())
    done()


def test_12_hom_dimensions():
    done = _timed(30.0)
    for k in (2, 3):
        rep = V.homdim_report(2, k)
        assert rep.status == "pass", (k, rep.as_dict())
    done()


def test_13_bend_unbend_round_trip():
    done = _timed(30.0)
    rep = V.bend_roundtrip_report(2, count=50, seed=0)
    assert rep.status == "pass", rep.as_dict()
    done()


def test_suite_items_cover_all_criteria():
    ids = {iid.split("/")[0] for iid, _, _ in suite_items()}
    expected = {
        "circle-1", "circle-1-rev", "circle-k", "dumbbell-side", "dumbbell-kl",
        "serre-web", "minimality", "projector", "jw-recursion", "dot-sweep",
        "integral", "closed-corpus", "homdim", "bend-roundtrip",
    }
    assert expected <= ids
    # the per-relation catalog is present too
    assert any(iid.startswith("rel:") for iid, _, _ in suite_items())
