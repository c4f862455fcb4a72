"""Evaluation of web diagrams on symmetric-power representations.

Each boundary word maps to a tensor product of symmetric powers (upward
strands) and their duals (downward strands); each diagram maps to an
exact matrix over the fraction field of Z[u, u^{-1}], u = q^{1/n}.
Thin generators get explicit matrices; every thick or sideways generator
is expanded (once, memoized) through its defining composite.
"""

from dataclasses import dataclass

from .qalg import LaurentFraction, LaurentPoly, qint
from .glnmod import Matrix, TensorSpace, sym_basis
from . import webcat as W

FIELD = "field"
INTEGRAL = "integral"


@dataclass(frozen=True)
class GammaContext:
    n: int
    mode: str = FIELD

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.mode not in (FIELD, INTEGRAL):
            raise ValueError(f"unknown mode {self.mode!r}")


def space_of(word, n):
    return TensorSpace(n, tuple(("sym" if o == W.UP else "dual", k) for k, o in word))


def dual_space(space):
    return TensorSpace(
        space.n,
        tuple(
            ("dual" if kind == "sym" else "sym", k)
            for kind, k in reversed(space.factors)
        ),
    )


def dualize(mat):
    """The dual map: rotate a matrix by a half turn (transpose with both
    factor orders reversed and factor kinds swapped)."""
    X, Y = mat.domain, mat.codomain
    Xd, Yd = dual_space(X), dual_space(Y)
    out = Matrix(Yd, Xd)
    for r, cs in mat.rows.items():
        rd = Yd.index[tuple(reversed(Y.basis[r]))]
        for c, v in cs.items():
            cd = Xd.index[tuple(reversed(X.basis[c]))]
            out.rows.setdefault(cd, {})[rd] = v
    return out


def _frac(n, poly):
    return LaurentFraction.from_poly(poly)


def _merge_k1_matrix(n, k):
    dom = space_of(((k, W.UP), (1, W.UP)), n)
    cod = space_of(((k + 1, W.UP),), n)
    out = Matrix(dom, cod)
    for M in sym_basis(n, k):
        for j in range(1, n + 1):
            e = sum(1 for a in M if a > j)
            tgt = tuple(sorted(M + (j,)))
            out.add_to(
                cod.index[(tgt,)],
                dom.index[(M, (j,))],
                _frac(n, LaurentPoly.q_power(e, n)),
            )
    return out


def _split_k1_matrix(n, k):
    dom = space_of(((k + 1, W.UP),), n)
    cod = space_of(((k, W.UP), (1, W.UP)), n)
    out = Matrix(dom, cod)
    for M in sym_basis(n, k + 1):
        for j in sorted(set(M)):
            e = sum(1 for a in M if a < j)
            mult = M.count(j)
            rest = list(M)
            rest.remove(j)
            coeff = _frac(n, LaurentPoly.q_power(-e, n) * qint(mult, n))
            out.add_to(
                cod.index[(tuple(rest), (j,))],
                dom.index[(M,)],
                coeff,
            )
    return out


def _cap_matrix(n, side):
    if side == "left":
        dom = space_of(((1, W.DN), (1, W.UP)), n)
    else:
        dom = space_of(((1, W.UP), (1, W.DN)), n)
    cod = space_of((), n)
    out = Matrix(dom, cod)
    for i in range(1, n + 1):
        coeff = (
            _frac(n, LaurentPoly.one(n))
            if side == "left"
            else _frac(n, LaurentPoly.q_power(n + 1 - 2 * i, n))
        )
        out.add_to(0, dom.index[((i,), (i,))], coeff)
    return out


def _cup_matrix(n, side):
    dom = space_of((), n)
    if side == "left":
        cod = space_of(((1, W.UP), (1, W.DN)), n)
    else:
        cod = space_of(((1, W.DN), (1, W.UP)), n)
    out = Matrix(dom, cod)
    for i in range(1, n + 1):
        coeff = (
            _frac(n, LaurentPoly.one(n))
            if side == "left"
            else _frac(n, LaurentPoly.q_power(-n - 1 + 2 * i, n))
        )
        out.add_to(cod.index[((i,), (i,))], 0, coeff)
    return out


_GEN_CACHE = {}


def gamma_generator(gen, n):
    key = (gen, n)
    cached = _GEN_CACHE.get(key)
    if cached is not None:
        return cached
    mat = _gen_matrix(gen, n)
    _GEN_CACHE[key] = mat
    return mat


def _gen_matrix(gen, n):
    k, l = gen.k, gen.l
    kind = gen.kind
    if kind == W.ID:
        return Matrix.identity(space_of(((k, gen.orient),), n))
    if kind == W.MU:
        if l == 1:
            return _merge_k1_matrix(n, k)
        return gamma_expr(W.thick_merge(n, k, l), n)
    if kind == W.SU:
        if l == 1:
            return _split_k1_matrix(n, k)
        return gamma_expr(W.thick_split(n, k, l), n)
    if kind == W.MD:
        return dualize(gamma_generator(W.Gen(W.SU, l, k), n))
    if kind == W.SD:
        return dualize(gamma_generator(W.Gen(W.MU, l, k), n))
    if kind == W.CAPL:
        return _cap_matrix(n, "left") if k == 1 else gamma_expr(W.exploded_cap(n, k, "left"), n)
    if kind == W.CAPR:
        return _cap_matrix(n, "right") if k == 1 else gamma_expr(W.exploded_cap(n, k, "right"), n)
    if kind == W.CUPL:
        return _cup_matrix(n, "left") if k == 1 else gamma_expr(W.exploded_cup(n, k, "left"), n)
    if kind == W.CUPR:
        return _cup_matrix(n, "right") if k == 1 else gamma_expr(W.exploded_cup(n, k, "right"), n)
    if kind in (W.XUO, W.XUU):
        sense = "over" if kind == W.XUO else "under"
        if k == 1 and l == 1:
            return gamma_expr(W.thin_cross(n, sense, gen.flavor), n)
        return gamma_expr(W.exploded_cross(n, k, l, sense, gen.flavor), n)
    if kind in (W.XDO, W.XDU):
        up_kind = W.XUO if kind == W.XDO else W.XUU
        return dualize(gamma_generator(W.Gen(up_kind, k, l, flavor=gen.flavor), n))
    if kind == W.XL:
        return gamma_expr(_bent_left(n, k, l, gen.flavor), n)
    if kind == W.XR:
        return gamma_expr(_bent_right(n, k, l, gen.flavor), n)
    raise ValueError(f"unknown generator kind {kind!r}")


def _bent_left(n, k, l, flavor):
    """Leftward crossing k_dn x l_up -> l_up x k_dn, bent from an upward
    crossing with a left cup and cap."""
    idk = W.wid(n, ((k, W.DN),))
    lower = W.wid(n, ((k, W.DN), (l, W.UP))).tensor(W.caps_cups(n, k, "left", "cup"))
    mid = idk.tensor(W.cross(n, l, k, "over", "up", flavor)).tensor(idk)
    upper = W.caps_cups(n, k, "left", "cap").tensor(W.wid(n, ((l, W.UP), (k, W.DN))))
    return upper.compose(mid).compose(lower)


def _bent_right(n, k, l, flavor):
    """Rightward crossing k_up x l_dn -> l_dn x k_up, bent from an upward
    crossing with a right cup and cap."""
    idl = W.wid(n, ((l, W.DN),))
    lower = W.caps_cups(n, l, "right", "cup").tensor(W.wid(n, ((k, W.UP), (l, W.DN))))
    mid = idl.tensor(W.cross(n, l, k, "under", "up", flavor)).tensor(idl)
    upper = W.wid(n, ((l, W.DN), (k, W.UP))).tensor(W.caps_cups(n, l, "right", "cap"))
    return upper.compose(mid).compose(lower)


def gamma_diagram(diag, n):
    mat = Matrix.identity(space_of(diag.dom, n))
    words = diag.words
    for i, layer in enumerate(diag.layers):
        mat = _layer_matrix(words[i], layer, n) @ mat
    return mat


def _layer_matrix(word, layer, n):
    mats = []
    i = 0
    for p, g in layer:
        if p > i:
            mats.append(Matrix.identity(space_of(word[i:p], n)))
        mats.append(gamma_generator(g, n))
        i = p + len(W.gen_dom(g))
    if i < len(word):
        mats.append(Matrix.identity(space_of(word[i:], n)))
    if not mats:
        return Matrix.identity(space_of(word, n))
    out = mats[0]
    for m in mats[1:]:
        dom = TensorSpace(n, out.domain.factors + m.domain.factors)
        cod = TensorSpace(n, out.codomain.factors + m.codomain.factors)
        out = out.kron(m, dom, cod)
    return out


def gamma_expr(expr, n):
    acc = Matrix.zero(space_of(expr.dom, n), space_of(expr.cod, n))
    for coeff, diag in expr.terms:
        acc = acc + gamma_diagram(diag, n).scale(coeff)
    return acc


def gamma(expr, ctx):
    """Evaluate a web expression in the given context."""
    if isinstance(ctx, int):
        ctx = GammaContext(ctx)
    if expr.n != ctx.n:
        raise ValueError("expression built for a different n")
    return gamma_expr(expr, ctx.n)


def gamma_scalar(expr, ctx):
    """Value of a closed expression (1x1 matrix) as a LaurentFraction."""
    mat = gamma(expr, ctx)
    if mat.domain.dim != 1 or mat.codomain.dim != 1:
        raise ValueError("expression is not closed")
    return mat.get(0, 0)


def gamma_integral_audit(expr, ctx):
    """Report whether the image has Laurent-polynomial entries only."""
    from .report import Report

    mat = gamma(expr, ctx if isinstance(ctx, GammaContext) else GammaContext(ctx))
    for r, c, v in mat.entries():
        if not v.is_integral():
            return Report(
                "integral-audit",
                "fail",
                lhs=str(v),
                witness={"row": r, "col": c},
            )
    return Report("integral-audit", "pass")
