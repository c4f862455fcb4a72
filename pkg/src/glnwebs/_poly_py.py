"""Pure-Python term-dict kernel for Laurent arithmetic.

Terms are dicts mapping integer exponents (in units of 1/N) to nonzero
integer coefficients.  A compiled drop-in replacement lives in
``_poly_c``; ``_poly`` picks whichever is available.
"""

IMPL = "python"


def add_terms(a, b):
    r = dict(a)
    for e, c in b.items():
        s = r.get(e, 0) + c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def sub_terms(a, b):
    r = dict(a)
    for e, c in b.items():
        s = r.get(e, 0) - c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def mul_terms(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    r = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = r.get(e, 0) + c1 * c2
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def scale_shift_terms(a, c, e):
    """c * u^e * a, with c a nonzero integer."""
    return {ea + e: ca * c for ea, ca in a.items()}
