# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dict kernel for Laurent arithmetic.

Drop-in replacement for ``_poly_py``; exponents are Python ints (units of
1/N), coefficients arbitrary-precision Python ints.
"""

IMPL = "cython"


def add_terms(dict a, dict b):
    cdef dict r = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = r.get(e)
        if s is None:
            r[e] = c
        else:
            s = s + c
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def sub_terms(dict a, dict b):
    cdef dict r = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = r.get(e)
        if s is None:
            r[e] = -c
        else:
            s = s - c
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict r = {}
    cdef object e1, c1, e2, c2, e, s
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = r.get(e)
            if s is None:
                r[e] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    r[e] = s
                else:
                    del r[e]
    return r


def scale_shift_terms(dict a, object c, object e):
    """c * u^e * a, with c a nonzero integer."""
    cdef dict r = {}
    cdef object ea, ca
    for ea, ca in a.items():
        r[ea + e] = ca * c
    return r
