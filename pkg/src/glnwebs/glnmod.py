"""The quantum group U_q(gl_n): standard module, symmetric powers and their
duals, tensor-product actions via the coproduct, and intertwiner/commutant
oracles.

Module bases: Sym^k has basis y_M for weakly increasing tuples
M = (j_1 <= ... <= j_k) in {1..n}^k, ordered lexicographically; DualSym^k
uses the dual basis in the same order.  In tensor spaces the leftmost
factor is the slowest-varying index.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from ._poly import add_terms, mul_terms
from .qalg import LaurentFraction, LaurentPoly, UnluckySpecialization
from .report import Report

SYM = "sym"
DUAL = "dual"


def sym_basis(n, k):
    return list(combinations_with_replacement(range(1, n + 1), k))


class TensorSpace:
    """Ordered tensor product of symmetric powers and their duals."""

    __slots__ = ("n", "factors", "basis", "index", "_factor_bases")

    def __init__(self, n, factors):
        self.n = n
        self.factors = tuple((kind, k) for kind, k in factors)
        for kind, k in self.factors:
            if kind not in (SYM, DUAL) or k < 0:
                raise ValueError(f"bad factor {(kind, k)}")
        self._factor_bases = [sym_basis(n, k) for _, k in self.factors]
        self.basis = list(product(*self._factor_bases)) if self.factors else [()]
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, TensorSpace)
            and self.n == other.n
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.n, self.factors))

    def __repr__(self):
        return f"TensorSpace(n={self.n}, {list(self.factors)})"

    def descriptor(self):
        return [{"kind": kind, "degree": k} for kind, k in self.factors]


class Matrix:
    """Sparse exact matrix between two TensorSpaces.

    rows: dict row -> dict col -> LaurentFraction (no stored zeros).
    """

    __slots__ = ("domain", "codomain", "rows")

    def __init__(self, domain, codomain, rows=None):
        self.domain = domain
        self.codomain = codomain
        self.rows = rows if rows is not None else {}

    @classmethod
    def identity(cls, space):
        one = LaurentFraction.one(space.n)
        return cls(space, space, {i: {i: one} for i in range(space.dim)})

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, {})

    def set(self, r, c, val):
        if val.is_zero():
            self.rows.get(r, {}).pop(c, None)
        else:
            self.rows.setdefault(r, {})[c] = val

    def get(self, r, c):
        row = self.rows.get(r)
        if row is None:
            return LaurentFraction.zero(self.domain.n)
        return row.get(c, LaurentFraction.zero(self.domain.n))

    def add_to(self, r, c, val):
        if val.is_zero():
            return
        row = self.rows.setdefault(r, {})
        cur = row.get(c)
        new = val if cur is None else cur + val
        if new.is_zero():
            del row[c]
            if not row:
                del self.rows[r]
        else:
            row[c] = new

    def is_zero(self):
        return not any(self.rows.values())

    def __add__(self, other):
        out = Matrix(self.domain, self.codomain, {r: dict(cs) for r, cs in self.rows.items()})
        for r, cs in other.rows.items():
            for c, v in cs.items():
                out.add_to(r, c, v)
        return out

    def __sub__(self, other):
        return self + other.scale_int(-1)

    def scale(self, coeff):
        if coeff.is_zero():
            return Matrix.zero(self.domain, self.codomain)
        return Matrix(
            self.domain,
            self.codomain,
            {r: {c: coeff * v for c, v in cs.items()} for r, cs in self.rows.items()},
        )

    def scale_int(self, m):
        return self.scale(LaurentFraction.from_poly(LaurentPoly.const(m, self.domain.n)))

    def _all_integral(self):
        return all(
            v.den.is_one() for cs in self.rows.values() for v in cs.values()
        )

    def __matmul__(self, other):
        """self @ other = self after other (matrix product)."""
        if other.codomain.dim != self.domain.dim:
            raise ValueError("composition dimension mismatch")
        out = Matrix(other.domain, self.codomain)
        if self._all_integral() and other._all_integral():
            # accumulate raw term dicts, skipping fraction canonicalization
            N = self.domain.n
            for r, ks in self.rows.items():
                acc = {}
                for k, a in ks.items():
                    row_b = other.rows.get(k)
                    if not row_b:
                        continue
                    at = a.num.terms
                    for c, b in row_b.items():
                        t = mul_terms(at, b.num.terms)
                        cur = acc.get(c)
                        acc[c] = t if cur is None else add_terms(cur, t)
                accf = {
                    c: LaurentFraction.from_poly(LaurentPoly(N, t, _clean=False))
                    for c, t in acc.items()
                    if t
                }
                if accf:
                    out.rows[r] = accf
            return out
        # (self*other)[r][c] = sum_k self[r][k] other[k][c]
        for r, ks in self.rows.items():
            acc = {}
            for k, a in ks.items():
                row_b = other.rows.get(k)
                if not row_b:
                    continue
                for c, b in row_b.items():
                    cur = acc.get(c)
                    prod = a * b
                    acc[c] = prod if cur is None else cur + prod
            acc = {c: v for c, v in acc.items() if not v.is_zero()}
            if acc:
                out.rows[r] = acc
        return out

    def kron(self, other, domain, codomain):
        """Kronecker product, self the leftmost (slowest) factor."""
        db_r, db_c = other.codomain.dim, other.domain.dim
        out = Matrix(domain, codomain)
        for ra, csa in self.rows.items():
            for ca, va in csa.items():
                for rb, csb in other.rows.items():
                    base_r = ra * db_r + rb
                    base_c = ca * db_c
                    orow = out.rows.setdefault(base_r, {})
                    for cb, vb in csb.items():
                        orow[base_c + cb] = va * vb
        return out

    def transpose(self, domain, codomain):
        out = Matrix(domain, codomain)
        for r, cs in self.rows.items():
            for c, v in cs.items():
                out.rows.setdefault(c, {})[r] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.domain.dim != other.domain.dim or self.codomain.dim != other.codomain.dim:
            return False
        return _clean_rows(self.rows) == _clean_rows(other.rows)

    def diff_witness(self, other):
        """First differing entry, as a dict, or None."""
        keys = set()
        for rows in (self.rows, other.rows):
            for r, cs in rows.items():
                keys.update((r, c) for c in cs)
        for r, c in sorted(keys):
            a, b = self.get(r, c), other.get(r, c)
            if a != b:
                return {"row": r, "col": c, "lhs": str(a), "rhs": str(b)}
        return None

    def specialize(self, u0):
        """Dense list-of-lists of Fractions at u = u0."""
        m = [[Fraction(0)] * self.domain.dim for _ in range(self.codomain.dim)]
        for r, cs in self.rows.items():
            for c, v in cs.items():
                m[r][c] = v.specialize(u0)
        return m

    def entries(self):
        for r, cs in sorted(self.rows.items()):
            for c, v in sorted(cs.items()):
                yield r, c, v

    def digest(self):
        n_ent = sum(len(cs) for cs in self.rows.values())
        return f"{self.codomain.dim}x{self.domain.dim}:{n_ent} entries"

    def __repr__(self):
        return f"Matrix({self.digest()})"


def _clean_rows(rows):
    return {r: cs for r, cs in rows.items() if cs}


# -- q-sorting ----------------------------------------------------------


def q_sort(word):
    """Inversion count and sorted tuple for the q-sorting surjection
    b_{i_1} x ... x b_{i_k} -> q^{inv} y_{sorted}."""
    word = tuple(word)
    inv = sum(
        1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b]
    )
    return inv, tuple(sorted(word))


# -- standard module and factor actions ----------------------------------


def act_standard(gen, j, n):
    """Action of a generator on b_j in the standard module; returns a dict
    {target index: LaurentPoly coefficient}.  gen is ('E', i), ('F', i),
    ('L', i, e) or ('K', i, e)."""
    N = n
    kind = gen[0]
    i = gen[1]
    if kind == "E":
        return {i: LaurentPoly.one(N)} if j == i + 1 else {}
    if kind == "F":
        return {i + 1: LaurentPoly.one(N)} if j == i else {}
    if kind == "L":
        e = gen[2]
        return {j: LaurentPoly.q_power(e if j == i else 0, N)}
    if kind == "K":
        # K_i = L_i L_{i+1}^{-1}
        e = gen[2]
        w = (1 if j == i else 0) - (1 if j == i + 1 else 0)
        return {j: LaurentPoly.q_power(e * w, N)}
    raise ValueError(f"unknown generator {gen}")


def _tensor_act_terms(gen, word, n):
    """Iterated-coproduct action of gen on a tensor word of standard basis
    vectors; returns dict {word': LaurentPoly}."""
    N = n
    kind = gen[0]
    out = {}
    if kind in ("L", "K"):
        coeff = LaurentPoly.one(N)
        for j in word:
            (coeff,) = [coeff * c for c in act_standard(gen, j, n).values()]
        if word or kind in ("L", "K"):
            out[tuple(word)] = coeff
        return out
    # E: sum_t 1 x..x E(t) x K x..x K ;  F: sum_t K^-1 x..x F(t) x 1 x..x 1
    for t, j in enumerate(word):
        hit = act_standard(gen, j, n)
        if not hit:
            continue
        ((tgt, c),) = hit.items()
        coeff = c
        if kind == "E":
            for s in range(t + 1, len(word)):
                (kc,) = act_standard(("K", gen[1], 1), word[s], n).values()
                coeff = coeff * kc
        else:
            for s in range(t):
                (kc,) = act_standard(("K", gen[1], -1), word[s], n).values()
                coeff = coeff * kc
        w2 = tuple(word[:t]) + (tgt,) + tuple(word[t + 1 :])
        if w2 in out:
            out[w2] = out[w2] + coeff
        else:
            out[w2] = coeff
    return {w: c for w, c in out.items() if not c.is_zero()}


def act_sym_terms(gen, M, n):
    """Transported action on y_M in Sym^k: push the representative tensor
    through the coproduct action and q-sort each term."""
    terms = _tensor_act_terms(gen, M, n)
    out = {}
    for w, c in terms.items():
        inv, srt = q_sort(w)
        c = c * LaurentPoly.q_power(inv, n)
        if srt in out:
            out[srt] = out[srt] + c
        else:
            out[srt] = c
    return {m: c for m, c in out.items() if not c.is_zero()}


@lru_cache(maxsize=None)
def _sym_matrix(gen, n, k):
    """Matrix of gen on Sym^k (single-factor TensorSpace)."""
    sp = TensorSpace(n, [(SYM, k)])
    m = Matrix(sp, sp)
    for ci, M in enumerate(sym_basis(n, k)):
        for tgt, c in act_sym_terms(gen, M, n).items():
            m.add_to(sp.index[(tgt,)], ci, LaurentFraction.from_poly(c))
    return m


def _antipode_matrix(gen, n, k):
    """Matrix of S(gen) on Sym^k."""
    kind = gen[0]
    i = gen[1]
    if kind == "E":
        # S(E_i) = -E_i K_i^{-1}
        return (
            _sym_matrix(("E", i), n, k) @ _sym_matrix(("K", i, -1), n, k)
        ).scale_int(-1)
    if kind == "F":
        # S(F_i) = -K_i F_i
        return (
            _sym_matrix(("K", i, 1), n, k) @ _sym_matrix(("F", i), n, k)
        ).scale_int(-1)
    if kind in ("L", "K"):
        return _sym_matrix((kind, i, -gen[2]), n, k)
    raise ValueError(f"unknown generator {gen}")


@lru_cache(maxsize=None)
def _dual_matrix(gen, n, k):
    """Matrix of gen on DualSym^k: (g.f)(v) = f(S(g).v) on the dual basis,
    i.e. the transpose of the antipode matrix."""
    sp = TensorSpace(n, [(DUAL, k)])
    return _antipode_matrix(gen, n, k).transpose(sp, sp)


def factor_matrix(gen, factor, n):
    kind, k = factor
    return _sym_matrix(gen, n, k) if kind == SYM else _dual_matrix(gen, n, k)


def act_matrix(gen, space):
    """Matrix of a generator on a TensorSpace via the iterated coproduct."""
    n = space.n
    kind = gen[0]
    if not space.factors:
        # counit: 1 on grouplikes, 0 on E, F
        m = Matrix(space, space)
        if kind in ("L", "K"):
            m.set(0, 0, LaurentFraction.one(n))
        return m
    if kind in ("L", "K"):
        mats = [factor_matrix(gen, f, n) for f in space.factors]
        return _kron_all(mats, space)
    total = Matrix.zero(space, space)
    for t in range(len(space.factors)):
        mats = []
        for s, f in enumerate(space.factors):
            if s == t:
                mats.append(factor_matrix(gen, f, n))
            elif kind == "E" and s > t:
                mats.append(factor_matrix(("K", gen[1], 1), f, n))
            elif kind == "F" and s < t:
                mats.append(factor_matrix(("K", gen[1], -1), f, n))
            else:
                mats.append(Matrix.identity(TensorSpace(n, [f])))
        total = total + _kron_all(mats, space)
    return total


def _kron_all(mats, space):
    out = mats[0]
    n = space.n
    for i, m in enumerate(mats[1:], start=2):
        dom = TensorSpace(n, space.factors[:i])
        out = out.kron(m, dom, dom)
    # fix domain/codomain to the actual space
    return Matrix(space, space, out.rows)


def all_generators(n):
    gens = []
    for i in range(1, n):
        gens.append(("E", i))
        gens.append(("F", i))
    for i in range(1, n + 1):
        gens.append(("L", i, 1))
        gens.append(("L", i, -1))
    return gens


def intertwiner_check(mat):
    """Does mat commute with the U_q(gl_n) action on both sides?"""
    n = mat.domain.n
    if mat.codomain.n != n:
        return Report("intertwiner", "fail", witness={"reason": "rank mismatch"})
    for gen in all_generators(n):
        lhs = act_matrix(gen, mat.codomain) @ mat
        rhs = mat @ act_matrix(gen, mat.domain)
        if lhs != rhs:
            w = lhs.diff_witness(rhs)
            w["generator"] = str(gen)
            return Report("intertwiner", "fail", lhs.digest(), rhs.digest(), w)
    return Report("intertwiner", "pass")


def s2_pivotal_check(n):
    """S^2(g) = K_2rho g K_2rho^{-1} on the standard module, with
    K_2rho = K_1^{n-1} K_2^{n-2} ... K_{n-1}."""
    sp = TensorSpace(n, [(SYM, 1)])
    k2rho = Matrix.identity(sp)
    k2rho_inv = Matrix.identity(sp)
    for i in range(1, n):
        for _ in range(i * (n - i)):
            k2rho = k2rho @ _sym_matrix(("K", i, 1), n, 1)
            k2rho_inv = k2rho_inv @ _sym_matrix(("K", i, -1), n, 1)
    for gen in all_generators(n):
        if gen[0] == "E":
            # S^2(E_i) = K_i E_i K_i^{-1}
            s2 = (
                _sym_matrix(("K", gen[1], 1), n, 1)
                @ _sym_matrix(gen, n, 1)
                @ _sym_matrix(("K", gen[1], -1), n, 1)
            )
        elif gen[0] == "F":
            # S^2(F_i) = S(-K_i F_i) = -S(F_i) S(K_i) = K_i F_i K_i^{-1}
            s2 = (
                _sym_matrix(("K", gen[1], 1), n, 1)
                @ _sym_matrix(gen, n, 1)
                @ _sym_matrix(("K", gen[1], -1), n, 1)
            )
        else:
            s2 = _sym_matrix(gen, n, 1)
        conj = k2rho @ _sym_matrix(gen, n, 1) @ k2rho_inv
        if s2 != conj:
            return Report("s2-pivotal", "fail", witness={"generator": str(gen)})
    return Report("s2-pivotal", "pass")


# -- commutant oracle -----------------------------------------------------


def commutant_dim(space, u0):
    """dim of {X : X A = A X for all specialized generator actions A},
    by exact rational nullspace."""
    d = space.dim
    gens = all_generators(space.n)
    mats = [act_matrix(g, space).specialize(Fraction(u0)) for g in gens]
    rows = []
    for A in mats:
        # (XA - AX)[r][c] = sum_k X[r][k] A[k][c] - A[r][k] X[k][c]
        for r in range(d):
            for c in range(d):
                row = {}
                for k in range(d):
                    if A[k][c]:
                        row[r * d + k] = row.get(r * d + k, Fraction(0)) + A[k][c]
                    if A[r][k]:
                        row[k * d + c] = row.get(k * d + c, Fraction(0)) - A[r][k]
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
    rank = _sparse_rank(rows, d * d)
    return d * d - rank


def _sparse_rank(rows, ncols):
    """Row-echelon rank of sparse rational rows."""
    pivots = {}  # col -> row dict
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                piv = pivots[col]
                f = row[col] / piv[col]
                for j, v in piv.items():
                    nv = row.get(j, Fraction(0)) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


def matrix_rank(mat_dense):
    rows = [
        {j: v for j, v in enumerate(r) if v}
        for r in mat_dense
    ]
    ncols = len(mat_dense[0]) if mat_dense else 0
    return _sparse_rank([r for r in rows if r], ncols)
