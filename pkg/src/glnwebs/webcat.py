"""Web diagrams: boundary words, layered diagrams with implicit identities,
formal linear combinations, and builders for all generators and derived
webs (thick merges/splits, crossings, caps/cups, ladders, projectors,
bending) in symmetric and exterior flavors.

A boundary word is a tuple of (label, orientation) with orientation "u"
(upward) or "d" (downward).  A Diagram stores, per layer, the non-identity
generators with the position where each one starts; strands not covered
pass through.  Composition and tensoring renormalize by sinking every
generator as low as it can go, which makes the interchange law hold on
the nose for structural equality.
"""

from dataclasses import dataclass, field

from .qalg import LaurentFraction, LaurentPoly, qfact

UP = "u"
DN = "d"

SYMMETRIC = "symmetric"
EXTERIOR = "exterior"

# generator kinds
ID = "id"
MU, SU, MD, SD = "mU", "sU", "mD", "sD"
CAPL, CUPL, CAPR, CUPR = "capL", "cupL", "capR", "cupR"
XUO, XUU, XDO, XDU = "xUo", "xUu", "xDo", "xDu"
XL, XR = "xL", "xR"

_CROSSINGS = {XUO, XUU, XDO, XDU, XL, XR}


@dataclass(frozen=True)
class Gen:
    kind: str
    k: int
    l: int = 0
    orient: str = UP  # only for ID
    flavor: str = SYMMETRIC  # only read by crossings

    def __post_init__(self):
        if self.k <= 0 or (self.kind in {MU, SU, MD, SD} | _CROSSINGS and self.l <= 0):
            raise ValueError(f"nonpositive label in stored generator {self}")


def gen_dom(g):
    k, l = g.k, g.l
    return {
        ID: ((k, g.orient),),
        MU: ((k, UP), (l, UP)),
        SU: ((k + l, UP),),
        MD: ((k, DN), (l, DN)),
        SD: ((k + l, DN),),
        CAPL: ((k, DN), (k, UP)),
        CUPL: (),
        CAPR: ((k, UP), (k, DN)),
        CUPR: (),
        XUO: ((k, UP), (l, UP)),
        XUU: ((k, UP), (l, UP)),
        XDO: ((k, DN), (l, DN)),
        XDU: ((k, DN), (l, DN)),
        XL: ((k, DN), (l, UP)),
        XR: ((k, UP), (l, DN)),
    }[g.kind]


def gen_cod(g):
    k, l = g.k, g.l
    return {
        ID: ((k, g.orient),),
        MU: ((k + l, UP),),
        SU: ((k, UP), (l, UP)),
        MD: ((k + l, DN),),
        SD: ((k, DN), (l, DN)),
        CAPL: (),
        CUPL: ((k, UP), (k, DN)),
        CAPR: (),
        CUPR: ((k, DN), (k, UP)),
        XUO: ((l, UP), (k, UP)),
        XUU: ((l, UP), (k, UP)),
        XDO: ((l, DN), (k, DN)),
        XDU: ((l, DN), (k, DN)),
        XL: ((l, UP), (k, DN)),
        XR: ((l, DN), (k, UP)),
    }[g.kind]


def dual_word(word):
    return tuple((k, DN if o == UP else UP) for k, o in reversed(word))


def pointwise_dual(word):
    return tuple((k, DN if o == UP else UP) for k, o in word)


_FLIP = {
    ID: lambda g: Gen(ID, g.k, orient=DN if g.orient == UP else UP),
    MU: lambda g: Gen(SD, g.k, g.l),
    SU: lambda g: Gen(MD, g.k, g.l),
    MD: lambda g: Gen(SU, g.k, g.l),
    SD: lambda g: Gen(MU, g.k, g.l),
    CAPL: lambda g: Gen(CUPL, g.k),
    CUPL: lambda g: Gen(CAPL, g.k),
    CAPR: lambda g: Gen(CUPR, g.k),
    CUPR: lambda g: Gen(CAPR, g.k),
    XUO: lambda g: Gen(XDU, g.l, g.k, flavor=g.flavor),
    XUU: lambda g: Gen(XDO, g.l, g.k, flavor=g.flavor),
    XDO: lambda g: Gen(XUU, g.l, g.k, flavor=g.flavor),
    XDU: lambda g: Gen(XUO, g.l, g.k, flavor=g.flavor),
    XL: lambda g: Gen(XL, g.l, g.k, flavor=g.flavor),
    XR: lambda g: Gen(XR, g.l, g.k, flavor=g.flavor),
}


class Diagram:
    """Layered diagram over a domain word.  layers: tuple of layers,
    each a tuple of (position, Gen) sorted by position; strands not
    covered by any generator in a layer pass through."""

    __slots__ = ("dom", "layers", "_words")

    def __init__(self, dom, layers, _normalized=False):
        self.dom = tuple(dom)
        if not _normalized:
            layers = _normalize(self.dom, layers)
        self.layers = layers
        self._words = None

    @classmethod
    def identity(cls, word):
        return cls(word, (), _normalized=True)

    @classmethod
    def single(cls, gen):
        return cls(gen_dom(gen), (((0, gen),),), _normalized=True)

    @property
    def words(self):
        """Boundary words between layers; words[0]=dom, words[-1]=cod."""
        if self._words is None:
            ws = [self.dom]
            for layer in self.layers:
                ws.append(_apply_layer(ws[-1], layer))
            self._words = ws
        return self._words

    @property
    def cod(self):
        return self.words[-1]

    def is_closed(self):
        return not self.dom and not self.cod

    def n_gens(self):
        return sum(len(layer) for layer in self.layers)

    def all_gens(self):
        for layer in self.layers:
            for _, g in layer:
                yield g

    def tensor(self, other):
        la, lb = list(self.layers), list(other.layers)
        h = max(len(la), len(lb))
        la += [()] * (h - len(la))
        lb += [()] * (h - len(lb))
        wa = self.words
        merged = []
        for i in range(h):
            off = len(wa[min(i, len(wa) - 1)])
            merged.append(tuple(la[i]) + tuple((p + off, g) for p, g in lb[i]))
        return Diagram(self.dom + other.dom, merged)

    def compose(self, other):
        """self on top of other (self . other)."""
        if other.cod != self.dom:
            raise BoundaryError(
                f"compose mismatch: lower codomain {other.cod} vs upper domain {self.dom}"
            )
        return Diagram(other.dom, other.layers + self.layers)

    def flip(self):
        """Reflection across a horizontal axis: layer order reverses,
        orientations dualize in place, horizontal positions stay."""
        new_dom = pointwise_dual(self.cod)
        out_layers = []
        for i in range(len(self.layers) - 1, -1, -1):
            layer = []
            delta = 0  # position shift in the layer's output word
            for p, g in self.layers[i]:
                layer.append((p + delta, _FLIP[g.kind](g)))
                delta += len(gen_cod(g)) - len(gen_dom(g))
            out_layers.append(tuple(layer))
        return Diagram(new_dom, tuple(out_layers))

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.dom == other.dom and self.layers == other.layers

    def __hash__(self):
        return hash((self.dom, self.layers))

    def __repr__(self):
        gens = ["|".join(f"{g.kind}({g.k}{',' + str(g.l) if g.l else ''})@{p}"
                         for p, g in layer) for layer in self.layers]
        return f"Diagram({self.dom} -> {self.cod}; {' ; '.join(gens) or 'id'})"


class BoundaryError(ValueError):
    pass


def _apply_layer(word, layer):
    out = []
    i = 0
    for p, g in layer:
        if p < i or word[p : p + len(gen_dom(g))] != gen_dom(g):
            raise BoundaryError(f"generator {g} does not fit word {word} at {p}")
        out.extend(word[i:p])
        out.extend(gen_cod(g))
        i = p + len(gen_dom(g))
    out.extend(word[i:])
    return tuple(out)


def _normalize(dom, layers):
    """Sink every generator as low as possible; canonical layering."""
    ids = list(range(len(dom)))
    labels = dict(enumerate(dom))
    nid = len(dom)
    bw = [list(ids)]  # bw[j] = input id-word of new layer j; bw[-1] = top
    new_layers = []  # list of lists of (ids consumed, left neighbor id, Gen)
    for layer in layers:
        delta = 0  # position shift from gens of this layer already spliced in
        for p, g in sorted(layer, key=lambda t: t[0]):
            d, c = gen_dom(g), gen_cod(g)
            p += delta
            delta += len(c) - len(d)
            top = bw[-1]
            S = top[p : p + len(d)]
            if tuple(labels[s] for s in S) != d:
                raise BoundaryError(f"generator {g} does not fit at position {p}")
            lneigh = top[p - 1] if p > 0 else None
            rneigh = top[p + len(d)] if p + len(d) < len(top) else None
            j = len(new_layers)
            while j > 0 and _fits(bw[j - 1], S, lneigh, rneigh):
                j -= 1
            out = list(range(nid, nid + len(c)))
            nid += len(c)
            for s, lab in zip(out, c):
                labels[s] = lab
            if j == len(new_layers):
                new_layers.append([])
                bw.append(list(bw[-1]))
            new_layers[j].append((tuple(S), lneigh, g))
            for m in range(j + 1, len(bw)):
                bw[m] = _splice(bw[m], S, lneigh, out)
    # convert to positional canonical form
    out_layers = []
    for j, layer in enumerate(new_layers):
        word = bw[j]
        pos_layer = []
        for S, lneigh, g in layer:
            if S:
                pos = word.index(S[0])
            else:
                pos = word.index(lneigh) + 1 if lneigh is not None else 0
            pos_layer.append((pos, g))
        out_layers.append(tuple(sorted(pos_layer, key=lambda t: t[0])))
    return tuple(out_layers)


def _fits(word, S, lneigh, rneigh):
    if S:
        try:
            i = word.index(S[0])
        except ValueError:
            return False
        return tuple(word[i : i + len(S)]) == tuple(S)
    # empty domain (cup): both neighbors must be adjacent in this word
    if lneigh is None and rneigh is None:
        return not word
    if lneigh is None:
        return word and word[0] == rneigh
    if rneigh is None:
        return word and word[-1] == lneigh
    try:
        i = word.index(lneigh)
    except ValueError:
        return False
    return i + 1 < len(word) and word[i + 1] == rneigh


def _splice(word, S, lneigh, out):
    if S:
        i = word.index(S[0])
        return word[:i] + out + word[i + len(S) :]
    i = word.index(lneigh) + 1 if lneigh is not None else 0
    return word[:i] + out + word[i:]


# -- linear combinations --------------------------------------------------


class WebExpr:
    """Formal k(q^{1/n})-linear combination of diagrams with a shared
    boundary."""

    __slots__ = ("n", "dom", "cod", "terms")

    def __init__(self, n, dom, cod, terms):
        self.n = n
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        combined = {}
        for coeff, diag in terms:
            if diag.dom != self.dom or diag.cod != self.cod:
                raise BoundaryError("term boundary differs from expression boundary")
            cur = combined.get(diag)
            combined[diag] = coeff if cur is None else cur + coeff
        self.terms = tuple(
            (c, d) for d, c in combined.items() if not c.is_zero()
        )

    @classmethod
    def from_diagram(cls, n, diag, coeff=None):
        if coeff is None:
            coeff = LaurentFraction.one(n)
        return cls(n, diag.dom, diag.cod, [(coeff, diag)])

    @classmethod
    def zero(cls, n, dom, cod):
        return cls(n, dom, cod, [])

    def is_zero(self):
        return not self.terms

    def scale(self, coeff):
        return WebExpr(self.n, self.dom, self.cod, [(coeff * c, d) for c, d in self.terms])

    def __add__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise BoundaryError("adding expressions with different boundaries")
        return WebExpr(self.n, self.dom, self.cod, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + other.scale(LaurentFraction.from_poly(LaurentPoly.const(-1, self.n)))

    def compose(self, other):
        """self . other = self stacked on top of other."""
        if other.cod != self.dom:
            raise BoundaryError(
                f"compose mismatch: {other.cod} vs {self.dom}"
            )
        terms = [
            (c1 * c2, d1.compose(d2))
            for c1, d1 in self.terms
            for c2, d2 in other.terms
        ]
        return WebExpr(self.n, other.dom, self.cod, terms)

    def tensor(self, other):
        terms = [
            (c1 * c2, d1.tensor(d2))
            for c1, d1 in self.terms
            for c2, d2 in other.terms
        ]
        return WebExpr(self.n, self.dom + other.dom, self.cod + other.cod, terms)

    def flip(self):
        return WebExpr(
            self.n,
            pointwise_dual(self.cod),
            pointwise_dual(self.dom),
            [(c, d.flip()) for c, d in self.terms],
        )

    def __repr__(self):
        return f"WebExpr({len(self.terms)} terms, {self.dom} -> {self.cod})"


# -- scalar helpers --------------------------------------------------------


def qpow(n, a, b=0):
    """q^a * q^{b/n} as a LaurentFraction with root order n."""
    return LaurentFraction.from_poly(LaurentPoly.u_power(a * n + b, n))


def frac_of(n, poly_like):
    if isinstance(poly_like, LaurentFraction):
        return poly_like
    return LaurentFraction.from_poly(poly_like)


def inv_qfact(n, *ts):
    p = LaurentPoly.one(n)
    for t in ts:
        p = p * qfact(t, n)
    return LaurentFraction(LaurentPoly.one(n), p)


# -- builders ---------------------------------------------------------------


def wid(n, word):
    return WebExpr.from_diagram(n, Diagram.identity(tuple(word)))


def up(k):
    return (k, UP)


def dn(k):
    return (k, DN)


def _zero_like(n, dom, cod):
    return WebExpr.zero(n, tuple(w for w in dom if w[0]), tuple(w for w in cod if w[0]))


def merge_up(n, k, l):
    if k < 0 or l < 0:
        return _zero_like(n, (up(max(k, 0)), up(max(l, 0))), (up(k + l),))
    if k == 0 or l == 0:
        return wid(n, (up(k + l),) if k + l else ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(MU, k, l)))


def split_up(n, k, l):
    if k < 0 or l < 0:
        return _zero_like(n, (up(k + l),), (up(max(k, 0)), up(max(l, 0))))
    if k == 0 or l == 0:
        return wid(n, (up(k + l),) if k + l else ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(SU, k, l)))


def merge_down(n, k, l):
    if k < 0 or l < 0:
        return _zero_like(n, (dn(max(k, 0)), dn(max(l, 0))), (dn(k + l),))
    if k == 0 or l == 0:
        return wid(n, (dn(k + l),) if k + l else ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(MD, k, l)))


def split_down(n, k, l):
    if k < 0 or l < 0:
        return _zero_like(n, (dn(k + l),), (dn(max(k, 0)), dn(max(l, 0))))
    if k == 0 or l == 0:
        return wid(n, (dn(k + l),) if k + l else ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(SD, k, l)))


def cap(n, k, side="left"):
    if k == 0:
        return wid(n, ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(CAPL if side == "left" else CAPR, k)))


def cup(n, k, side="left"):
    if k == 0:
        return wid(n, ())
    return WebExpr.from_diagram(n, Diagram.single(Gen(CUPL if side == "left" else CUPR, k)))


def cross(n, k, l, sense="over", orient="up", flavor=SYMMETRIC):
    """Atomic crossing generator as a one-term expression."""
    if k == 0 or l == 0:
        word = {
            "up": (up(k + l),),
            "down": (dn(k + l),),
            "left": (dn(k), up(l)) if k else (up(l),),
            "right": (up(k), dn(l)) if k else (dn(l),),
        }[orient]
        return wid(n, tuple(w for w in word if w[0]))
    kind = {
        ("up", "over"): XUO,
        ("up", "under"): XUU,
        ("down", "over"): XDO,
        ("down", "under"): XDU,
        ("left", "over"): XL,
        ("right", "over"): XR,
    }[(orient, "over" if orient in ("left", "right") else sense)]
    return WebExpr.from_diagram(n, Diagram.single(Gen(kind, k, l, flavor=flavor)))


def dumbbell(n, k=1, l=1, orient="up"):
    """split . merge: the (k,l)-dumbbell endomorphism of k x l."""
    if orient == "up":
        return split_up(n, k, l).compose(merge_up(n, k, l))
    return split_down(n, k, l).compose(merge_down(n, k, l))


def thin_cross(n, sense="over", flavor=SYMMETRIC):
    """The defining two-term expansion of the thin (1,1) crossing."""
    i = wid(n, (up(1), up(1)))
    d = dumbbell(n)
    if flavor == SYMMETRIC:
        if sense == "over":
            # -q^{-1-1/n} (id - q D)
            return i.scale(qpow(n, -1, -1)).scale(
                frac_of(n, LaurentPoly.const(-1, n))
            ) + d.scale(qpow(n, 0, -1))
        return i.scale(qpow(n, 1, 1)).scale(
            frac_of(n, LaurentPoly.const(-1, n))
        ) + d.scale(qpow(n, 0, 1))
    if sense == "over":
        # q^{1-1/n} (id - q^{-1} D)
        return i.scale(qpow(n, 1, -1)) - d.scale(qpow(n, 0, -1))
    return i.scale(qpow(n, -1, 1)) - d.scale(qpow(n, 0, 1))


# -- explosion shapes -------------------------------------------------------


def split_tree_up(n, k):
    """k_| -> (1_|)^{x k}, splitting off the rightmost thin strand first."""
    out = wid(n, (up(k),) if k else ())
    for j in range(k - 1, 0, -1):
        step = split_up(n, j, 1)
        for _ in range(k - 1 - j):
            step = step.tensor(wid(n, (up(1),)))
        out = step.compose(out)
    return out


def merge_tree_up(n, k):
    """(1_|)^{x k} -> k_|, merging from the left."""
    out = wid(n, (up(1),) * k if k else ())
    for j in range(1, k):
        step = merge_up(n, j, 1)
        for _ in range(k - 1 - j):
            step = step.tensor(wid(n, (up(1),)))
        out = step.compose(out)
    return out


def split_tree_down(n, k):
    out = wid(n, (dn(k),) if k else ())
    for j in range(k - 1, 0, -1):
        step = split_down(n, j, 1)
        for _ in range(k - 1 - j):
            step = step.tensor(wid(n, (dn(1),)))
        out = step.compose(out)
    return out


def merge_tree_down(n, k):
    out = wid(n, (dn(1),) * k if k else ())
    for j in range(1, k):
        step = merge_down(n, j, 1)
        for _ in range(k - 1 - j):
            step = step.tensor(wid(n, (dn(1),)))
        out = step.compose(out)
    return out


def thick_merge(n, k, l):
    """Exploded thick merge (k,l) -> k+l: 1/[l]! times exploding the l
    strand and absorbing its thin strands into k from the left."""
    if k < 0 or l < 0:
        return merge_up(n, k, l)
    if k == 0 or l == 0 or l == 1:
        return merge_up(n, k, l)
    w = wid(n, (up(k),)).tensor(split_tree_up(n, l))
    for j in range(l):
        step = merge_up(n, k + j, 1)
        for _ in range(l - 1 - j):
            step = step.tensor(wid(n, (up(1),)))
        w = step.compose(w)
    return w.scale(inv_qfact(n, l))


def thick_split(n, k, l):
    """Exploded thick split (k+l) -> (k,l): 1/[l]! times peeling l thin
    strands off the right and re-merging them."""
    if k < 0 or l < 0:
        return split_up(n, k, l)
    if k == 0 or l == 0 or l == 1:
        return split_up(n, k, l)
    w = wid(n, (up(k + l),))
    for j in range(l):
        step = split_up(n, k + l - 1 - j, 1)
        for _ in range(j):
            step = step.tensor(wid(n, (up(1),)))
        w = step.compose(w)
    w = wid(n, (up(k),)).tensor(merge_tree_up(n, l)).compose(w)
    return w.scale(inv_qfact(n, l))


def thick_merge_down(n, k, l):
    if k < 0 or l < 0 or k == 0 or l == 0 or l == 1:
        return merge_down(n, k, l)
    w = wid(n, (dn(k),)).tensor(split_tree_down(n, l))
    for j in range(l):
        step = merge_down(n, k + j, 1)
        for _ in range(l - 1 - j):
            step = step.tensor(wid(n, (dn(1),)))
        w = step.compose(w)
    return w.scale(inv_qfact(n, l))


def thick_split_down(n, k, l):
    if k < 0 or l < 0 or k == 0 or l == 0 or l == 1:
        return split_down(n, k, l)
    w = wid(n, (dn(k + l),))
    for j in range(l):
        step = split_down(n, k + l - 1 - j, 1)
        for _ in range(j):
            step = step.tensor(wid(n, (dn(1),)))
        w = step.compose(w)
    w = wid(n, (dn(k),)).tensor(merge_tree_down(n, l)).compose(w)
    return w.scale(inv_qfact(n, l))


def exploded_cross(n, k, l, sense="over", flavor=SYMMETRIC):
    """Thick upward crossing by explosion: 1/([k]![l]!) times the thin
    crossing grid between fully exploded strands."""
    if k == 0 or l == 0:
        return cross(n, k, l, sense, "up", flavor)
    w = split_tree_up(n, k).tensor(split_tree_up(n, l))
    # move each left-block strand to the right, rightmost first
    strand1 = wid(n, (up(1),))
    x = cross(n, 1, 1, sense, "up", flavor)
    for a in range(k):
        for b in range(l):
            pos = (k - 1 - a) + b
            step = x
            for _ in range(pos):
                step = strand1.tensor(step)
            for _ in range(k + l - pos - 2):
                step = step.tensor(strand1)
            w = step.compose(w)
    w = merge_tree_up(n, l).tensor(merge_tree_up(n, k)).compose(w)
    return w.scale(inv_qfact(n, k, l))


def exploded_cap(n, k, side="left"):
    """Thick cap by explosion: 1/[k]! times nested thin caps."""
    if k <= 1:
        return cap(n, k, side)
    if side == "left":
        w = split_tree_down(n, k).tensor(split_tree_up(n, k))
        lw, rw = dn(1), up(1)
    else:
        w = split_tree_up(n, k).tensor(split_tree_down(n, k))
        lw, rw = up(1), dn(1)
    # nested caps: innermost pair first
    for j in range(k):
        mid = wid(n, (lw,) * (k - 1 - j)).tensor(cap(n, 1, side)).tensor(
            wid(n, (rw,) * (k - 1 - j))
        )
        w = mid.compose(w)
    return w.scale(inv_qfact(n, k))


def exploded_cup(n, k, side="left"):
    if k <= 1:
        return cup(n, k, side)
    w = _nested_cups(n, k, side)
    if side == "left":
        w = merge_tree_up(n, k).tensor(merge_tree_down(n, k)).compose(w)
    else:
        w = merge_tree_down(n, k).tensor(merge_tree_up(n, k)).compose(w)
    return w.scale(inv_qfact(n, k))


def _nested_cups(n, k, side):
    w = cup(n, 1, side)
    for j in range(1, k):
        left = (up(1),) * j if side == "left" else (dn(1),) * j
        right = (dn(1),) * j if side == "left" else (up(1),) * j
        w = wid(n, left).tensor(cup(n, 1, side)).tensor(wid(n, right)).compose(w)
    return w


def caps_cups(n, k, side, which):
    """which in {"cap","cup"}; k=1 returns generators, k>1 exploded."""
    if which == "cap":
        return cap(n, k, side) if k <= 1 else exploded_cap(n, k, side)
    return cup(n, k, side) if k <= 1 else exploded_cup(n, k, side)


def merge_1k(n, k, flavor=SYMMETRIC):
    """The (1,k)-merge: q^{k/n - k} ((k,1)-merge . (1 over k crossing))."""
    if k == 0:
        return wid(n, (up(1),))
    w = merge_up(n, k, 1).compose(cross(n, 1, k, "over", "up", flavor))
    return w.scale(qpow(n, -k, k))


def split_1k(n, k, flavor=SYMMETRIC):
    """The (1,k)-split: mirror of merge_1k."""
    if k == 0:
        return wid(n, (up(1),))
    w = cross(n, k, 1, "under", "up", flavor).compose(split_up(n, k, 1))
    return w.scale(qpow(n, -k, k))


def ladder_F(n, j, k, l, down=False):
    """F^{(j)}-ladder on (k,l): split j off the right of the k strand and
    merge it into l from the left."""
    if j == 0:
        word = ((k, DN if down else UP), (l, DN if down else UP))
        return wid(n, tuple(w for w in word if w[0]))
    if k - j < 0:
        o = DN if down else UP
        return _zero_like(n, ((k, o), (l, o)), ((max(k - j, 0), o), (l + j, o)))
    sp = thick_split_down if down else thick_split
    idw = (dn if down else up)
    lower = sp(n, k - j, j).tensor(wid(n, (idw(l),) if l else ()))
    upper_m = _merge_from_left(n, j, l, down)
    upper = wid(n, (idw(k - j),) if k - j else ()).tensor(upper_m)
    return upper.compose(lower)


def _merge_from_left(n, j, l, down=False):
    """Merge (j,l) -> j+l."""
    return (thick_merge_down if down else thick_merge)(n, j, l)


def ladder_E(n, j, k, l, down=False):
    """E^{(j)}-ladder on (k,l): mirror image of the F-ladder."""
    if j == 0:
        word = ((k, DN if down else UP), (l, DN if down else UP))
        return wid(n, tuple(w for w in word if w[0]))
    if l - j < 0:
        o = DN if down else UP
        return _zero_like(n, ((k, o), (l, o)), ((k + j, o), (max(l - j, 0), o)))
    sp = thick_split_down if down else thick_split
    mg = thick_merge_down if down else thick_merge
    idw = (dn if down else up)
    lower = wid(n, (idw(k),) if k else ()).tensor(sp(n, j, l - j))
    upper = mg(n, k, j).tensor(wid(n, (idw(l - j),) if l - j else ()))
    return upper.compose(lower)


def projector(n, k):
    """Symmetric projector e_k on (1_|)^{x k}: 1/[k]! split tree after
    merge tree."""
    if k < 1:
        raise ValueError("projector needs k >= 1")
    w = split_tree_up(n, k).compose(merge_tree_up(n, k))
    return w.scale(inv_qfact(n, k))


# -- bending ---------------------------------------------------------------


def bend(w):
    """Rotate all bottom boundary points to the top, rightmost first.
    Result: () -> cod(w) + dual_word(dom(w))."""
    n = w.n
    out = w
    while out.dom:
        k, o = out.dom[-1]
        c = cup(n, k, "left" if o == UP else "right")
        lower = wid(n, out.dom[:-1]).tensor(c)
        dual = (k, DN if o == UP else UP)
        out = out.tensor(wid(n, (dual,))).compose(lower)
    return out


def unbend(w, orig_dom):
    """Inverse of bend: pull len(orig_dom) strands back down, leftmost of
    the original domain last."""
    n = w.n
    out = w
    for k, o in orig_dom:
        out = out.tensor(wid(n, ((k, o),)))
        top = cap(n, k, "left" if o == UP else "right")
        upper = wid(n, out.cod[:-2]).tensor(top)
        out = upper.compose(out)
    return out
