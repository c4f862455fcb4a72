"""Divided-power ladder words and their web images.

A weight is a tuple of m nonnegative integers.  A word is a sequence of
letters E_i^{(j)} / F_i^{(j)} acting on weights: F moves j units from
entry i to entry i+1, E the other way.  Words evaluate to web
expressions built from ladder rungs, with zero-labelled edges erased and
any word passing through a negative weight sent to zero.
"""

from functools import lru_cache

from .qalg import LaurentFraction, LaurentPoly, qbinom
from . import webcat as W
from .functor import gamma, GammaContext
from .glnmod import Matrix
from .report import Report


def letter(sym, i, j=1):
    if sym not in ("E", "F") or i < 1 or j < 0:
        raise ValueError(f"bad letter {(sym, i, j)}")
    return (sym, i, j)


def apply_letter(weight, let):
    sym, i, j = let
    w = list(weight)
    if sym == "F":
        w[i - 1] -= j
        w[i] += j
    else:
        w[i - 1] += j
        w[i] -= j
    return tuple(w)


def word_target(weight, word):
    for let in word:
        weight = apply_letter(weight, let)
    return weight


def _object_word(weight):
    return tuple((k, W.UP) for k in weight if k > 0)


def a_mn(word, weight, n):
    """Web image of a divided-power word applied at the given weight."""
    if any(k < 0 for k in weight):
        raise ValueError("starting weight must be nonnegative")
    cur = weight
    out = W.wid(n, _object_word(weight))
    dead = False
    for let in word:
        nxt = apply_letter(cur, let)
        if dead or any(k < 0 for k in nxt):
            dead = True
            cur = nxt
            continue
        sym, i, j = let
        k, l = cur[i - 1], cur[i]
        rung = W.ladder_F(n, j, k, l) if sym == "F" else W.ladder_E(n, j, k, l)
        prefix = W.wid(n, tuple((a, W.UP) for a in cur[: i - 1] if a > 0))
        suffix = W.wid(n, tuple((a, W.UP) for a in cur[i + 1 :] if a > 0))
        out = prefix.tensor(rung).tensor(suffix).compose(out)
        cur = nxt
    if dead:
        tgt = word_target(weight, word)
        cod = tuple((max(k, 0), W.UP) for k in tgt)
        return W.WebExpr.zero(n, _object_word(weight), tuple(w for w in cod if w[0]))
    return out


@lru_cache(maxsize=None)
def _letter_matrix(let, weight, n):
    return gamma(a_mn((let,), weight, n), GammaContext(n))


@lru_cache(maxsize=None)
def _word_matrix(word, weight, n):
    cur = weight
    mat = None
    for idx, let in enumerate(word):
        nxt = apply_letter(cur, let)
        if any(k < 0 for k in nxt):
            tgt = word_target(weight, word)
            cod = tuple((k, W.UP) for k in tgt if k > 0)
            zero = W.WebExpr.zero(n, _object_word(weight), cod)
            return gamma(zero, GammaContext(n))
        m = _letter_matrix(let, cur, n)
        mat = m if mat is None else m @ mat
        cur = nxt
    if mat is None:
        return gamma(W.wid(n, _object_word(weight)), GammaContext(n))
    return mat


def _gamma_combo(terms, weight, n):
    """Evaluate a linear combination [(coeff poly or None, word), ...]."""
    acc = None
    for coeff, word in terms:
        mat = _word_matrix(tuple(word), tuple(weight), n)
        if coeff is not None:
            mat = mat.scale(LaurentFraction.from_poly(coeff))
        acc = mat if acc is None else acc + mat
    return acc


def check_dot_relation(family, weight, n, i=1, j=None, g=1, h=1):
    """Check one divided-power relation instance through its web image."""
    m = len(weight)
    one = None
    minus = LaurentPoly.const(-1, n)
    if family == "divided-powers":
        for sym in ("E", "F"):
            lhs = _gamma_combo([(one, (letter(sym, i, g), letter(sym, i, h)))], weight, n)
            rhs = _gamma_combo(
                [(qbinom(g + h, g, n), (letter(sym, i, g + h),))], weight, n
            )
            if lhs != rhs:
                return Report(
                    f"dot:{family}", "fail",
                    witness={"sym": sym, "weight": weight, "diff": lhs.diff_witness(rhs)},
                )
        return Report(f"dot:{family}", "pass")
    if family == "square-switch":
        lam = weight[i - 1] - weight[i]
        lhs = _gamma_combo([(one, (letter("F", i, h), letter("E", i, g)))], weight, n)
        terms = []
        for t in range(0, min(g, h) + 1):
            word = []
            if h - t:
                word.append(letter("F", i, h - t))
            if g - t:
                word.append(letter("E", i, g - t))
            # word applies right-to-left in operator order: E^{(g)}F^{(h)}
            # means F first; our words act bottom-to-top, so F^{(h-t)} then
            # E^{(g-t)} reads [E, F] reversed below
            terms.append((qbinom(lam + g - h, t, n), tuple(reversed(word))))
        rhs = _gamma_combo(terms, weight, n)
        if lhs != rhs:
            return Report(
                f"dot:{family}", "fail",
                witness={"weight": weight, "g": g, "h": h, "diff": lhs.diff_witness(rhs)},
            )
        return Report(f"dot:{family}", "pass")
    if family == "serre":
        jj = i + 1 if j is None else j
        for sym in ("E", "F"):
            a, b = letter(sym, i), letter(sym, jj)
            a2 = letter(sym, i, 2)
            lhs = _gamma_combo(
                [
                    (one, (b, a2)),
                    (minus, (a, b, a)),
                    (one, (a2, b)),
                ],
                weight,
                n,
            )
            if not lhs.is_zero():
                return Report(
                    f"dot:{family}", "fail",
                    witness={"sym": sym, "weight": weight, "i": i, "j": jj},
                )
        return Report(f"dot:{family}", "pass")
    if family == "distant-comm":
        jj = i + 2 if j is None else j
        for s1 in ("E", "F"):
            for s2 in ("E", "F"):
                lhs = _gamma_combo(
                    [(one, (letter(s2, jj, h), letter(s1, i, g)))], weight, n
                )
                rhs = _gamma_combo(
                    [(one, (letter(s1, i, g), letter(s2, jj, h)))], weight, n
                )
                if lhs != rhs:
                    return Report(
                        f"dot:{family}", "fail",
                        witness={"pair": (s1, s2), "weight": weight},
                    )
        return Report(f"dot:{family}", "pass")
    if family == "mixed-comm":
        jj = i + 1 if j is None else j
        lhs = _gamma_combo([(one, (letter("F", jj, h), letter("E", i, g)))], weight, n)
        rhs = _gamma_combo([(one, (letter("E", i, g), letter("F", jj, h)))], weight, n)
        if lhs != rhs:
            return Report(
                f"dot:{family}", "fail", witness={"weight": weight, "i": i, "j": jj}
            )
        return Report(f"dot:{family}", "pass")
    raise ValueError(f"unknown relation family {family!r}")


FAMILIES = ("divided-powers", "square-switch", "serre", "distant-comm", "mixed-comm")
