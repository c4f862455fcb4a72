"""Divided-power words on weights and their web images."""

import pytest

import glnwebs.webcat as W
from glnwebs.dotu import (
    FAMILIES,
    a_mn,
    apply_letter,
    check_dot_relation,
    letter,
    word_target,
)
from glnwebs.functor import gamma


def test_letter_validation():
    assert letter("E", 1) == ("E", 1, 1)
    assert letter("F", 2, 3) == ("F", 2, 3)
    with pytest.raises(ValueError):
        letter("G", 1)
    with pytest.raises(ValueError):
        letter("E", 0)
    with pytest.raises(ValueError):
        letter("E", 1, -1)


def test_apply_letter_moves_weight():
    assert apply_letter((2, 1), letter("F", 1)) == (1, 2)
    assert apply_letter((2, 1), letter("E", 1, 2)) == (4, -1)
    assert apply_letter((1, 1, 1), letter("F", 2, 1)) == (1, 0, 2)


def test_word_target_composes():
    word = (letter("F", 1), letter("F", 1), letter("E", 1))
    assert word_target((3, 0), word) == (2, 1)


def test_a_mn_identity_word():
    n = 2
    e = a_mn((), (2, 1), n)
    assert e.dom == ((2, W.UP), (1, W.UP))
    assert e.cod == e.dom
    (coeff, diag), = e.terms
    assert diag.n_gens() == 0


def test_a_mn_dead_weight_is_zero():
    n = 2
    # E at weight (0, 2) would pass through (-1, ...) territory via F first
    e = a_mn((letter("F", 1),), (0, 2), n)
    assert e.is_zero()
    # a longer word that dips negative in the middle also dies
    e2 = a_mn((letter("E", 1), letter("E", 1), letter("F", 1)), (1, 1), n)
    assert e2.is_zero()


def test_a_mn_rejects_negative_start():
    with pytest.raises(ValueError):
        a_mn((), (1, -1), 2)


def test_a_mn_boundaries_track_weights():
    n = 3
    word = (letter("E", 1), letter("F", 2))
    start = (1, 2, 1)
    e = a_mn(word, start, n)
    tgt = word_target(start, word)
    assert e.dom == tuple((k, W.UP) for k in start)
    assert e.cod == tuple((k, W.UP) for k in tgt if k > 0)
    # the image is an actual intertwiner matrix with those boundaries
    mat = gamma(e, n)
    assert mat.domain.dim >= 1 and mat.codomain.dim >= 1


@pytest.mark.parametrize("family", FAMILIES)
def test_dot_relation_smoke(family):
    n = 2
    if family == "distant-comm":
        weight = (1, 1, 1, 1)
    elif family == "serre":
        weight = (1, 1, 1)
    elif family == "mixed-comm":
        weight = (1, 2, 1)
    else:
        weight = (2, 1)
    rep = check_dot_relation(family, weight, n)
    assert rep.status == "pass", rep


def test_square_switch_with_powers():
    rep = check_dot_relation("square-switch", (2, 2), 2, g=2, h=1)
    assert rep.status == "pass", rep


def test_unknown_family_raises():
    with pytest.raises(ValueError):
        check_dot_relation("nope", (1, 1), 2)
