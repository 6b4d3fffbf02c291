# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for sparse polynomial term arithmetic.

Mirrors `_poly_py` exactly: dict[tuple[int,...] -> Fraction] term maps,
zero polynomial = empty dict.  Coefficients stay Python Fractions (exact);
the win over the pure lane is C-level dict/tuple loop handling in the
convolution and division inner loops.
"""

from fractions import Fraction

ZERO = Fraction(0)

KERNEL_NAME = "cython"


def grlex_key(exp):
    cdef long total = 0
    cdef long e
    for e in exp:
        total += e
    return (total, exp)


cdef inline tuple _exp_add(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object>ea[i] + <object>eb[i]
    return tuple(out)


cdef inline tuple _exp_sub_or_none(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef Py_ssize_t i
    cdef long d
    cdef list out = [0] * n
    for i in range(n):
        d = <long>ea[i] - <long>eb[i]
        if d < 0:
            return None
        out[i] = d
    return tuple(out)


def add_terms(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object exp, c, s
    for exp, c in b.items():
        s = out.get(exp)
        if s is None:
            out[exp] = c
        else:
            s = s + c
            if s:
                out[exp] = s
            else:
                del out[exp]
    return out


def sub_terms(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object exp, c, s
    for exp, c in b.items():
        s = out.get(exp)
        if s is None:
            out[exp] = -c
        else:
            s = s - c
            if s:
                out[exp] = s
            else:
                del out[exp]
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef object exp, c
    for exp, c in a.items():
        out[exp] = -c
    return out


def scale_terms(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object exp, cf
    for exp, cf in a.items():
        out[exp] = cf * c
    return out


def mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef object ea, ca, eb, cb, s
    cdef tuple exp
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = _exp_add(<tuple>ea, <tuple>eb)
            s = out.get(exp)
            if s is None:
                out[exp] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[exp] = s
                else:
                    del out[exp]
    return out


def mul_term(dict a, tuple exp, c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object e, cf
    for e, cf in a.items():
        out[_exp_add(<tuple>e, exp)] = cf * c
    return out


def leading(dict a):
    cdef object best = None
    cdef object bestkey = None
    cdef object exp, key
    for exp in a:
        key = grlex_key(exp)
        if bestkey is None or key > bestkey:
            bestkey = key
            best = exp
    return best, a[best]


def div_exact(dict a, dict b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    eb_cb = leading(b)
    cdef tuple eb = <tuple>eb_cb[0]
    cdef object cb = eb_cb[1]
    cdef dict rem = dict(a)
    cdef dict quo = {}
    cdef object er, cr, qc
    cdef tuple qe
    while rem:
        er_cr = leading(rem)
        er = er_cr[0]
        cr = er_cr[1]
        qe = _exp_sub_or_none(<tuple>er, eb)
        if qe is None:
            return None
        qc = cr / cb
        quo[qe] = qc
        rem = sub_terms(rem, mul_term(b, qe, qc))
        if rem and grlex_key(leading(rem)[0]) >= grlex_key(er):
            return None
    return quo


def eval_terms(dict a, vals):
    cdef object total = ZERO
    cdef object exp, c, v, x
    cdef long e
    cdef Py_ssize_t i
    cdef tuple tvals = tuple(vals)
    for exp, c in a.items():
        v = c
        for i in range(len(<tuple>exp)):
            e = <long>(<tuple>exp)[i]
            if e:
                x = tvals[i]
                v = v * x ** e
        total = total + v
    return total


def subst_partial(dict a, Py_ssize_t idx, val):
    cdef dict out = {}
    cdef object exp, c, nc, s
    cdef long e
    cdef tuple nexp
    for exp, c in a.items():
        e = <long>(<tuple>exp)[idx]
        nc = c * val ** e if e else c
        nexp = (<tuple>exp)[:idx] + (0,) + (<tuple>exp)[idx + 1:]
        s = out.get(nexp)
        if s is None:
            s = nc
        else:
            s = s + nc
        if s:
            out[nexp] = s
        elif nexp in out:
            del out[nexp]
    return out
