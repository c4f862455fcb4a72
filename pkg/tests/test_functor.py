"""Representation functor: functoriality, intertwining, duality, circles."""

import random

import pytest

import glnwebs.webcat as W
from glnwebs.functor import (
    GammaContext,
    dual_space,
    dualize,
    gamma,
    gamma_expr,
    gamma_generator,
    gamma_scalar,
    space_of,
)
from glnwebs.glnmod import Matrix, intertwiner_check
from glnwebs.qalg import LaurentFraction, qbinom


def up(*ks):
    return tuple((k, W.UP) for k in ks)


def _lf(n, poly):
    return LaurentFraction.from_poly(poly)


def test_gamma_of_identity_is_identity_matrix():
    for n in (2, 3):
        for word in (up(1,), up(2,), up(1, 1), ((1, W.DN), (2, W.UP))):
            mat = gamma(W.wid(n, word), n)
            assert mat == Matrix.identity(space_of(word, n))


def test_circle_values():
    for n in (2, 3, 4):
        for k in range(1, n + 1):
            circ = W.cap(n, k, "left").compose(W.cup(n, k, "right"))
            want = _lf(n, qbinom(n + k - 1, k, n))
            assert gamma_scalar(circ, n) == want
            circ2 = W.cap(n, k, "right").compose(W.cup(n, k, "left"))
            assert gamma_scalar(circ2, n) == want


def test_functoriality_on_random_stacks():
    rng = random.Random(11)
    for n in (2, 3):
        for _ in range(15):
            word = up(*(rng.randint(1, 2) for _ in range(rng.randint(1, 3))))
            bottom = W.wid(n, word)
            for _ in range(rng.randint(1, 3)):
                w = bottom.cod
                opts = []
                for p in range(len(w) - 1):
                    k, l = w[p][0], w[p + 1][0]
                    opts.append(W.wid(n, w[:p]).tensor(W.merge_up(n, k, l)).tensor(W.wid(n, w[p + 2:])))
                for p in range(len(w)):
                    k = w[p][0]
                    if k >= 2:
                        opts.append(W.wid(n, w[:p]).tensor(W.split_up(n, 1, k - 1)).tensor(W.wid(n, w[p + 1:])))
                if not opts:
                    break
                step = rng.choice(opts)
                # gamma is a functor: image of a stack is the product of images
                assert gamma(step.compose(bottom), n) == gamma(step, n) @ gamma(bottom, n)
                bottom = step.compose(bottom)


def test_gamma_of_interchange_agrees():
    n = 2
    m = W.merge_up(n, 1, 1)
    s = W.split_up(n, 1, 1)
    lhs = (m.compose(s)).tensor(s.compose(m))
    rhs = (m.tensor(s)).compose(s.tensor(m))
    assert gamma(lhs, n) == gamma(rhs, n)


def test_generator_images_are_intertwiners():
    for n in (2, 3):
        gens = [
            W.Gen(W.MU, 1, 1),
            W.Gen(W.SU, 1, 1),
            W.Gen(W.MU, 2, 1),
            W.Gen(W.CAPL, 1),
            W.Gen(W.CUPR, 1),
            W.Gen(W.XUO, 1, 1),
        ]
        for g in gens:
            rep = intertwiner_check(gamma_generator(g, n))
            assert rep.status == "pass", (n, g, rep)


def test_dualize_is_involutive():
    n = 2
    for g in (W.Gen(W.MU, 1, 1), W.Gen(W.SU, 2, 1), W.Gen(W.XUO, 1, 1)):
        mat = gamma_generator(g, n)
        assert dualize(dualize(mat)) == mat
        assert dualize(mat).domain == dual_space(mat.codomain)
        assert dualize(mat).codomain == dual_space(mat.domain)


def test_gamma_linear_in_terms():
    n = 2
    d = W.dumbbell(n)
    i = W.wid(n, up(1, 1))
    c = _lf(n, qbinom(3, 1, n))
    lhs = gamma(d.scale(c) + i, n)
    rhs = gamma(d, n).scale(c) + gamma(i, n)
    assert lhs == rhs


def test_gamma_scalar_requires_closed():
    n = 2
    with pytest.raises(ValueError):
        gamma_scalar(W.wid(n, up(1,)), n)


def test_gamma_rejects_wrong_n():
    with pytest.raises(ValueError):
        gamma(W.wid(2, up(1,)), GammaContext(3))


def test_zigzag_images_are_identities():
    for n in (2, 3):
        for k in (1, 2):
            idu = W.wid(n, up(k))
            z = (
                W.cap(n, k, "right").tensor(idu)
                .compose(idu.tensor(W.cup(n, k, "right")))
            )
            assert gamma(z, n) == gamma(idu, n)
