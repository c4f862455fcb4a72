"""Diagram category core: normalization, interchange, boundaries, builders."""

import random

import pytest

from glnwebs.webcat import (
    DN,
    MU,
    SU,
    UP,
    XUO,
    XUU,
    BoundaryError,
    Diagram,
    Gen,
    WebExpr,
    cap,
    cross,
    cup,
    dumbbell,
    gen_cod,
    gen_dom,
    merge_up,
    split_up,
    wid,
)


def up(*ks):
    return tuple((k, UP) for k in ks)


def same(a, b):
    """Expression equality: the difference cancels to the zero expression."""
    return (a - b).is_zero()


def test_identity_boundaries():
    d = Diagram.identity(up(1, 2))
    assert d.dom == up(1, 2)
    assert d.cod == up(1, 2)
    assert d.n_gens() == 0


def test_generator_boundaries():
    g = Gen(MU, 2, 3)
    assert gen_dom(g) == up(2, 3)
    assert gen_cod(g) == up(5)
    s = Gen(SU, 2, 3)
    assert gen_dom(s) == up(5)
    assert gen_cod(s) == up(2, 3)


def test_compose_boundary_mismatch():
    with pytest.raises(BoundaryError):
        merge_up(2, 1, 1).compose(merge_up(2, 1, 1))


def test_identity_compose_laws():
    m = merge_up(2, 1, 2)
    assert same(wid(2, up(3)).compose(m), m)
    assert same(m.compose(wid(2, up(1, 2))), m)


def test_interchange_law():
    """(a . c) x (b . d) == (a x b) . (c x d) after normalization."""
    n = 2
    a, c = merge_up(n, 1, 1), split_up(n, 1, 1)
    b, d = split_up(n, 1, 1), merge_up(n, 1, 1)
    lhs = (a.compose(c)).tensor(b.compose(d))
    rhs = (a.tensor(b)).compose(c.tensor(d))
    assert same(lhs, rhs)


def test_normalization_is_order_independent():
    """Disjoint generators commute past each other into the same layering."""
    n = 2
    g1 = Gen(MU, 1, 1)
    g2 = Gen(SU, 1, 1)
    w = up(1, 1, 2)
    first_then_second = Diagram(w, (((0, g1),), ((1, g2),)))
    second_then_first = Diagram(w, (((2, g2),), ((0, g1),)))
    assert first_then_second == second_then_first


def test_flip_involution_random():
    rng = random.Random(7)
    for _ in range(30):
        w = up(*(rng.randint(1, 2) for _ in range(rng.randint(1, 3))))
        d = Diagram.identity(w)
        for _ in range(rng.randint(0, 3)):
            word = d.cod
            opts = []
            for p in range(len(word) - 1):
                k, l = word[p][0], word[p + 1][0]
                opts.append((p, Gen(MU, k, l)))
                opts.append((p, Gen(rng.choice((XUO, XUU)), k, l)))
            for p in range(len(word)):
                if word[p][0] >= 2:
                    opts.append((p, Gen(SU, 1, word[p][0] - 1)))
            if not opts:
                break
            p, g = rng.choice(opts)
            d = Diagram(d.cod, (((p, g),),)).compose(d)
        from glnwebs.webcat import pointwise_dual

        assert d.flip().flip() == d
        assert d.flip().dom == pointwise_dual(d.cod)
        assert d.flip().cod == pointwise_dual(d.dom)


def test_cup_cap_boundaries():
    n = 2
    assert cup(n, 2, "left").cod == ((2, UP), (2, DN))
    assert cup(n, 2, "right").cod == ((2, DN), (2, UP))
    assert cap(n, 2, "left").dom == ((2, DN), (2, UP))
    assert cap(n, 2, "right").dom == ((2, UP), (2, DN))
    assert cup(n, 1, "left").dom == ()


def test_zero_label_conventions():
    n = 2
    assert cross(n, 0, 2).dom == up(2)
    assert cap(n, 0).dom == ()
    assert merge_up(n, 1, 1).compose(wid(n, up(1, 1))).dom == up(1, 1)


def test_dumbbell_shape():
    d = dumbbell(2)
    assert d.dom == up(1, 1)
    assert d.cod == up(1, 1)
    (coeff, diag), = d.terms
    assert coeff.is_one()
    assert diag.n_gens() == 2


def test_webexpr_linear_structure():
    n = 2
    d = dumbbell(n)
    i = wid(n, up(1, 1))
    assert same(d + i, i + d)
    assert (d - d).is_zero()
    two = d + d
    assert len(two.terms) == 1 and len((two - d).terms) == 1


def test_webexpr_scale_and_zero():
    from glnwebs.qalg import LaurentFraction

    n = 2
    d = dumbbell(n)
    z = d.scale(LaurentFraction.zero(n))
    assert z.is_zero()
    assert same(d + z, d)


def test_sink_normalization_adjacency():
    """A consumer lands directly above its producer after normalization."""
    n = 2
    e = split_up(n, 1, 1).compose(merge_up(n, 1, 1))
    (coeff, diag), = e.terms
    assert len(diag.layers) == 2
    (p1, g1), = diag.layers[0]
    (p2, g2), = diag.layers[1]
    assert g1.kind == MU and g2.kind == SU
