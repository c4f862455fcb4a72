"""Command-line front end: a small expression DSL plus the check suite.

Grammar (EBNF):

    program := expr ;
    expr    := tens { "." tens } ;          -- "g . f" = g glued on top of f
    tens    := atom { "*" atom } ;
    atom    := gen | "(" expr ")" | scalar atom ;
    scalar  := "[" laurent "]" ;            -- integer combination of q-powers
    gen     := "id(" INT dir ")" | "m(" INT "," INT dir ")"
             | "s(" INT "," INT dir ")"
             | "cupL" ["(" INT ")"] | "capL" ["(" INT ")"]
             | "cupR" ["(" INT ")"] | "capR" ["(" INT ")"]
             | "xo(" INT "," INT ")" | "xu(" INT "," INT ")"
             | "xl(" INT "," INT ")" | "xr(" INT "," INT ")"
             | "ek(" INT ")"
             | "Fl(" INT "," INT ")@" weight | "El(" INT "," INT ")@" weight ;
    dir     := "^" | "v" ;  weight := "[" INT { "," INT } "]" ;

Note the gluing order: in ``g . f`` the right operand ``f`` is applied
first (bottom), ``g`` second (top) -- diagram order, not function order.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import dotu
from . import verify
from . import webcat as W
from .functor import GammaContext, gamma, gamma_scalar, FIELD, INTEGRAL
from .glnmod import commutant_dim
from .qalg import LaurentFraction, LaurentPoly, UnluckySpecialization
from .webcat import DN, SYMMETRIC, EXTERIOR, UP, BoundaryError


class DslError(ValueError):
    def __init__(self, msg, pos=None, text=None):
        loc = ""
        if pos is not None and text is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            loc = f" at line {line}, column {col}"
        super().__init__(f"{msg}{loc}")


# -- tokenizer ----------------------------------------------------------------

_PUNCT = (".", "*", "(", ")", "[", "]", ",", "^", "v", "@", "+", "-", "/")


def _tokenize(text):
    toks = []
    i, m = 0, len(text)
    while i < m:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < m and text[j].isdigit():
                j += 1
            toks.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < m and text[j].isalnum():
                j += 1
            word = text[i:j]
            # a bare trailing "v" is a direction mark, not a name
            toks.append(("NAME", word, i))
            i = j
            continue
        if ch in _PUNCT:
            toks.append((ch, ch, i))
            i += 1
            continue
        raise DslError(f"unexpected character {ch!r}", i, text)
    toks.append(("EOF", None, m))
    return toks


# -- parser -------------------------------------------------------------------

_GEN_NAMES = {
    "id", "m", "s", "cupL", "capL", "cupR", "capR",
    "xo", "xu", "xl", "xr", "ek", "Fl", "El",
}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise DslError(f"expected {kind!r}, found {t[1]!r}", t[2], self.text)
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "EOF":
            raise DslError(f"trailing input {t[1]!r}", t[2], self.text)
        return node

    def expr(self):
        parts = [self.tens()]
        while self.peek()[0] == ".":
            self.next()
            parts.append(self.tens())
        return parts[0] if len(parts) == 1 else ("compose", parts)

    def tens(self):
        parts = [self.atom()]
        while self.peek()[0] == "*":
            self.next()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else ("tensor", parts)

    def atom(self):
        t = self.peek()
        if t[0] == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "[":
            terms = self.scalar()
            return ("scale", terms, self.atom())
        if t[0] == "NAME":
            return self.gen()
        raise DslError(f"expected an expression, found {t[1]!r}", t[2], self.text)

    def scalar(self):
        """[ laurent ] -> tuple of (coeff, Fraction exponent of q)."""
        self.expect("[")
        terms = []
        sign = 1
        t = self.peek()
        if t[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        while True:
            terms.append(self.laurent_term(sign))
            t = self.peek()
            if t[0] == "]":
                self.next()
                return tuple(terms)
            if t[0] in ("+", "-"):
                sign = -1 if self.next()[0] == "-" else 1
                continue
            raise DslError(f"expected '+', '-' or ']', found {t[1]!r}", t[2], self.text)

    def laurent_term(self, sign):
        coeff = 1
        saw_int = False
        t = self.peek()
        if t[0] == "INT":
            coeff = self.next()[1]
            saw_int = True
            if self.peek()[0] == "*":
                self.next()
        t = self.peek()
        exp = Fraction(0)
        if t[0] == "NAME" and t[1] == "q":
            self.next()
            if self.peek()[0] == "^":
                self.next()
                exp = self.exponent()
            else:
                exp = Fraction(1)
        elif not saw_int:
            raise DslError(f"expected a scalar term, found {t[1]!r}", t[2], self.text)
        return (sign * coeff, exp)

    def exponent(self):
        t = self.peek()
        neg = False
        if t[0] == "-":
            self.next()
            neg = True
        t = self.peek()
        if t[0] == "INT":
            v = Fraction(self.next()[1])
            return -v if neg else v
        if t[0] == "(":
            self.next()
            nneg = self.peek()[0] == "-"
            if nneg:
                self.next()
            a = self.expect("INT")[1]
            self.expect("/")
            b = self.expect("INT")[1]
            self.expect(")")
            v = Fraction(-a if nneg else a, b)
            return -v if neg else v
        raise DslError(f"expected an exponent, found {t[1]!r}", t[2], self.text)

    def gen(self):
        t = self.next()
        name = t[1]
        if name not in _GEN_NAMES:
            raise DslError(f"unknown generator {name!r}", t[2], self.text)
        if name in ("cupL", "capL", "cupR", "capR"):
            k = 1
            if self.peek()[0] == "(":
                self.next()
                k = self.expect("INT")[1]
                self.expect(")")
            return ("gen", name, k)
        if name == "id":
            self.expect("(")
            k = self.expect("INT")[1]
            d = self.direction()
            self.expect(")")
            return ("gen", "id", k, d)
        if name in ("m", "s"):
            self.expect("(")
            k = self.expect("INT")[1]
            self.expect(",")
            l = self.expect("INT")[1]
            d = self.direction()
            self.expect(")")
            return ("gen", name, k, l, d)
        if name in ("xo", "xu", "xl", "xr"):
            self.expect("(")
            k = self.expect("INT")[1]
            self.expect(",")
            l = self.expect("INT")[1]
            self.expect(")")
            return ("gen", name, k, l)
        if name == "ek":
            self.expect("(")
            k = self.expect("INT")[1]
            self.expect(")")
            return ("gen", "ek", k)
        # Fl / El ladder letters
        self.expect("(")
        i = self.expect("INT")[1]
        self.expect(",")
        j = self.expect("INT")[1]
        self.expect(")")
        self.expect("@")
        self.expect("[")
        weight = [self.expect("INT")[1]]
        while self.peek()[0] == ",":
            self.next()
            weight.append(self.expect("INT")[1])
        self.expect("]")
        return ("gen", name, i, j, tuple(weight))

    def direction(self):
        t = self.next()
        if t[0] == "^":
            return UP
        if t[0] == "v" or (t[0] == "NAME" and t[1] == "v"):
            return DN
        raise DslError(f"expected '^' or 'v', found {t[1]!r}", t[2], self.text)


def parse(text):
    return _Parser(text).parse()


# -- elaboration --------------------------------------------------------------


def _laurent_fraction(terms, n):
    poly = LaurentPoly.zero(n)
    for coeff, exp in terms:
        ue = exp * n
        if ue.denominator != 1:
            raise DslError(f"exponent {exp} is not a multiple of 1/{n}")
        poly = poly + LaurentPoly.u_power(int(ue), n, coeff)
    return LaurentFraction.from_poly(poly)


def elaborate(node, n, flavor=SYMMETRIC):
    kind = node[0]
    if kind == "compose":
        out = elaborate(node[1][-1], n, flavor)
        for sub in reversed(node[1][:-1]):
            out = elaborate(sub, n, flavor).compose(out)
        return out
    if kind == "tensor":
        out = elaborate(node[1][0], n, flavor)
        for sub in node[1][1:]:
            out = out.tensor(elaborate(sub, n, flavor))
        return out
    if kind == "scale":
        return elaborate(node[2], n, flavor).scale(_laurent_fraction(node[1], n))
    name = node[1]
    if name == "id":
        return W.wid(n, ((node[2], node[3]),))
    if name == "m":
        k, l, d = node[2], node[3], node[4]
        return W.merge_up(n, k, l) if d == UP else W.merge_down(n, k, l)
    if name == "s":
        k, l, d = node[2], node[3], node[4]
        return W.split_up(n, k, l) if d == UP else W.split_down(n, k, l)
    if name in ("cupL", "cupR"):
        # named for the cap they close against: cupL's arc meets capL
        return W.cup(n, node[2], "right" if name == "cupL" else "left")
    if name in ("capL", "capR"):
        return W.cap(n, node[2], "left" if name == "capL" else "right")
    if name == "xo":
        return W.cross(n, node[2], node[3], "over", "up", flavor)
    if name == "xu":
        return W.cross(n, node[2], node[3], "under", "up", flavor)
    if name == "xl":
        return W.cross(n, node[2], node[3], "over", "left", flavor)
    if name == "xr":
        return W.cross(n, node[2], node[3], "over", "right", flavor)
    if name == "ek":
        return W.projector(n, node[2])
    if name in ("Fl", "El"):
        let = dotu.letter("F" if name == "Fl" else "E", node[2], node[3])
        return dotu.a_mn((let,), node[4], n)
    raise DslError(f"unknown generator {name!r}")


def parse_expr(text, n, flavor=SYMMETRIC):
    return elaborate(parse(text), n, flavor)


# -- rendering ----------------------------------------------------------------


def render(node):
    kind = node[0]
    if kind == "compose":
        return " . ".join(
            f"({render(s)})" if s[0] == "compose" else render(s) for s in node[1]
        )
    if kind == "tensor":
        return " * ".join(
            f"({render(s)})" if s[0] in ("compose", "tensor") else render(s)
            for s in node[1]
        )
    if kind == "scale":
        inner = node[2]
        body = render(inner)
        if inner[0] in ("compose", "tensor"):
            body = f"({body})"
        return f"[{_render_laurent(node[1])}] {body}"
    name = node[1]
    if name == "id":
        return f"id({node[2]}{'^' if node[3] == UP else 'v'})"
    if name in ("m", "s"):
        return f"{name}({node[2]},{node[3]}{'^' if node[4] == UP else 'v'})"
    if name in ("cupL", "capL", "cupR", "capR"):
        return name if node[2] == 1 else f"{name}({node[2]})"
    if name in ("xo", "xu", "xl", "xr"):
        return f"{name}({node[2]},{node[3]})"
    if name == "ek":
        return f"ek({node[2]})"
    if name in ("Fl", "El"):
        w = ",".join(str(x) for x in node[4])
        return f"{name}({node[2]},{node[3]})@[{w}]"
    raise ValueError(f"cannot render {node!r}")


def _render_laurent(terms):
    parts = []
    for coeff, exp in terms:
        sign = "-" if coeff < 0 else "+"
        c = abs(coeff)
        if exp == 0:
            body = str(c)
        else:
            if exp == 1:
                qs = "q"
            elif exp.denominator == 1:
                qs = f"q^{exp}" if exp > 0 else f"q^-{-exp}"
            else:
                qs = f"q^({exp})"
            body = qs if c == 1 else f"{c}*{qs}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


# -- object words (for homdim) --------------------------------------------------


def parse_object(text):
    toks = _tokenize(text)
    word = []
    i = 0
    while True:
        if toks[i][0] != "INT":
            raise DslError("expected a strand label", toks[i][2], text)
        k = toks[i][1]
        i += 1
        if toks[i][0] == "^":
            o = UP
        elif toks[i][0] == "v" or (toks[i][0] == "NAME" and toks[i][1] == "v"):
            o = DN
        else:
            raise DslError("expected '^' or 'v'", toks[i][2], text)
        i += 1
        word.append((k, o))
        if toks[i][0] == "EOF":
            return tuple(word)
        if toks[i][0] != "*":
            raise DslError("expected '*'", toks[i][2], text)
        i += 1


# -- acceptance suite -----------------------------------------------------------


def suite_items(n_filter=None):
    """(item id, params, runner key) for the full acceptance suite."""
    items = []

    def add(iid, fn, **params):
        if n_filter is None or params.get("n", n_filter) == n_filter:
            items.append((iid, params, fn))

    for n in (2, 3, 4, 5):
        add(f"circle-1/n={n}", lambda n=n: verify.check("circle-1", n), n=n)
        add(f"circle-1-rev/n={n}", lambda n=n: verify.check("circle-1-rev", n), n=n)
    for n in (2, 3):
        add(f"circle-k/n={n}", lambda n=n: verify.check("circle-k", n, ks=(1, 2, 3)), n=n)
        add(f"dumbbell-side/n={n}", lambda n=n: verify.check("dumbbell-side", n), n=n)
        add(f"dumbbell-kl/n={n}", lambda n=n: verify.check("dumbbell-kl", n), n=n)
        for rid in verify.relation_ids():
            add(
                f"rel:{rid}/n={n}",
                lambda rid=rid, n=n: verify.check(rid, n, labels=verify.suite_labels(rid)),
                n=n,
            )
    for kk, ll, mm in ((2, 1, 1), (2, 1, 2)):
        add(
            f"serre-web/n=2/({kk},{ll},{mm})",
            lambda kk=kk, ll=ll, mm=mm: verify.check("serre-web", 2, k=kk, l=ll, m=mm),
            n=2,
        )
    for n in (2, 3, 4):
        add(f"minimality/n={n}", lambda n=n: verify.minimality_report(n), n=n)
    for n in (2, 3):
        for k in (1, 2, 3, 4):
            add(
                f"projector/n={n}/k={k}",
                lambda n=n, k=k: verify.projector_rank_report(n, k),
                n=n,
            )
        add(
            f"jw-recursion/n={n}/k=3,4",
            lambda n=n: verify.check("jw-recursion", n, ks=(3, 4)),
            n=n,
        )
        add(f"dot-sweep/n={n}", lambda n=n: _merge(verify.dot_suite(n)), n=n)
        add(f"integral/n={n}", lambda n=n: _merge(verify.int_suite(n)), n=n)
        add(
            f"closed-corpus/n={n}",
            lambda n=n: verify.closed_corpus_report(n, count=200, seed=0),
            n=n,
        )
    for k in (2, 3):
        add(f"homdim/n=2/k={k}", lambda k=k: verify.homdim_report(2, k), n=2)
    add("bend-roundtrip/n=2", lambda: verify.bend_roundtrip_report(2, count=50, seed=0), n=2)
    return items


def _merge(reports):
    from .report import Report

    bad = [r for r in reports if not r.ok]
    if bad:
        return bad[0]
    return Report(reports[0].name if reports else "empty", "pass")


def run_suite(n=None, jobs=1, out=None):
    if out is None:
        out = sys.stdout
    items = suite_items(n)
    results = []
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(lambda it: it[2](), items))
    else:
        reports = [fn() for _, _, fn in items]
    ok = True
    for (iid, params, _), rep in zip(items, reports):
        d = rep.as_dict()
        results.append(
            {
                "id": iid,
                "params": {k: v for k, v in params.items()},
                "status": d["status"],
                "lhs": d["lhs"],
                "rhs": d["rhs"],
            }
        )
        if not rep.ok:
            ok = False
    json.dump({"ok": ok, "results": results}, out, indent=1)
    out.write("\n")
    return 0 if ok else 1


# -- commands -------------------------------------------------------------------


def _read_expr_arg(arg):
    if arg == "-":
        return sys.stdin.read()
    try:
        with open(arg) as fh:
            return fh.read()
    except FileNotFoundError:
        return arg


def main(argv=None):
    ap = argparse.ArgumentParser(prog="glnwebs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", help="evaluate a closed expression to a scalar")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("symmetric", "exterior"), default="symmetric")
    p.add_argument("--mode", choices=("field", "integral"), default="field")
    p.add_argument("expr")

    p = sub.add_parser("matrix", help="functor image of an expression as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("symmetric", "exterior"), default="symmetric")
    p.add_argument("expr")

    p = sub.add_parser("check", help="run one relation check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", default="")
    p.add_argument("relation")

    p = sub.add_parser("suite", help="run the full acceptance suite")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("rank", help="rank of the span of expressions at u0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--at", required=True)
    p.add_argument("exprs")

    p = sub.add_parser("homdim", help="endomorphism space dimension of an object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--at", default="7/2")
    p.add_argument("object")

    args = ap.parse_args(argv)
    flavor = SYMMETRIC if getattr(args, "flavor", "symmetric") == "symmetric" else EXTERIOR

    try:
        if args.cmd == "eval":
            expr = parse_expr(_read_expr_arg(args.expr), args.n, flavor)
            if expr.dom or expr.cod:
                print("error: expression is not closed", file=sys.stderr)
                return 1
            mode = FIELD if args.mode == "field" else INTEGRAL
            val = gamma_scalar(expr, GammaContext(args.n, mode))
            print(val)
            return 0
        if args.cmd == "matrix":
            expr = parse_expr(_read_expr_arg(args.expr), args.n, flavor)
            mat = gamma(expr, GammaContext(args.n))
            entries = [
                [r, c, str(v)]
                for r, cs in sorted(mat.rows.items())
                for c, v in sorted(cs.items())
            ]
            json.dump(
                {
                    "domain": [[k, o] for k, o in expr.dom],
                    "codomain": [[k, o] for k, o in expr.cod],
                    "shape": [mat.codomain.dim, mat.domain.dim],
                    "entries": entries,
                },
                sys.stdout,
            )
            print()
            return 0
        if args.cmd == "check":
            params = {}
            if args.params:
                for part in args.params.split(","):
                    key, _, val = part.partition("=")
                    params[key.strip()] = int(val)
            try:
                rep = verify.check(args.relation, args.n, **params)
            except KeyError:
                print(f"error: unknown relation id {args.relation!r}", file=sys.stderr)
                print("known:", ", ".join(verify.relation_ids()), file=sys.stderr)
                return 1
            json.dump(rep.as_dict(), sys.stdout)
            print()
            return 0 if rep.ok else 1
        if args.cmd == "suite":
            return run_suite(args.n, args.jobs)
        if args.cmd == "rank":
            text = _read_expr_arg(args.exprs)
            exprs = [
                parse_expr(line, args.n, flavor)
                for line in text.splitlines()
                if line.strip()
            ]
            try:
                print(verify.rank_of_span(exprs, args.n, Fraction(args.at)))
            except UnluckySpecialization:
                print(
                    "error: denominator vanished at this point; retry with a different --at",
                    file=sys.stderr,
                )
                return 1
            return 0
        if args.cmd == "homdim":
            from .functor import space_of

            word = parse_object(args.object)
            try:
                print(commutant_dim(space_of(word, args.n), Fraction(args.at)))
            except UnluckySpecialization:
                print(
                    "error: denominator vanished at this point; retry with a different --at",
                    file=sys.stderr,
                )
                return 1
            return 0
    except DslError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 1
    except BoundaryError as exc:
        print(f"boundary mismatch: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
