"""Pure-Python kernel for sparse polynomial term arithmetic.

A term map is a dict mapping exponent tuples to nonzero Fraction
coefficients; the zero polynomial is the empty dict.  All functions here
are free functions over term maps so that the compiled twin
(`_poly_cy.pyx`) can implement the identical interface.  Nothing in this
module knows about variable names: alignment of exponent tuples is the
caller's job.

Exponent tuples compare in graded lexicographic order via `grlex_key`.
"""

from fractions import Fraction

ZERO = Fraction(0)


def grlex_key(exp):
    """Sort key for graded lex order (total degree first, then lex)."""
    return (sum(exp), exp)


def add_terms(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for exp, c in b.items():
        s = out.get(exp, ZERO) + c
        if s:
            out[exp] = s
        else:
            del out[exp]
    return out


def sub_terms(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for exp, c in b.items():
        s = out.get(exp, ZERO) - c
        if s:
            out[exp] = s
        else:
            del out[exp]
    return out


def neg_terms(a):
    return {exp: -c for exp, c in a.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {exp: cf * c for exp, cf in a.items()}


def mul_terms(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(i + j for i, j in zip(ea, eb))
            s = out.get(exp, ZERO) + ca * cb
            if s:
                out[exp] = s
            elif exp in out:
                del out[exp]
    return out


def mul_term(a, exp, c):
    """Multiply by a single monomial c * x^exp."""
    if not c:
        return {}
    return {tuple(i + j for i, j in zip(e, exp)): cf * c for e, cf in a.items()}


def leading(a):
    """(exponent, coefficient) of the graded-lex leading term; a nonzero."""
    exp = max(a, key=grlex_key)
    return exp, a[exp]


def div_exact(a, b):
    """Exact division a / b, or None when b does not divide a.

    Standard monomial-order long division; since only exact quotients are
    wanted, any nonzero remainder step aborts early.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    eb, cb = leading(b)
    rem = dict(a)
    quo = {}
    while rem:
        er, cr = leading(rem)
        qe = tuple(i - j for i, j in zip(er, eb))
        if any(e < 0 for e in qe):
            return None
        qc = cr / cb
        quo[qe] = qc
        rem = sub_terms(rem, mul_term(b, qe, qc))
        if rem and grlex_key(leading(rem)[0]) >= grlex_key(er):
            return None
    return quo


def eval_terms(a, vals):
    """Evaluate at a full point `vals` (sequence of Fractions)."""
    total = ZERO
    for exp, c in a.items():
        v = c
        for x, e in zip(vals, exp):
            if e:
                v *= x ** e
        total += v
    return total


def subst_partial(a, idx, val):
    """Substitute vals[idx] = val (Fraction), returning a term map with the
    same arity (exponent slot idx collapses to 0)."""
    out = {}
    for exp, c in a.items():
        e = exp[idx]
        nc = c * val ** e if e else c
        nexp = exp[:idx] + (0,) + exp[idx + 1:]
        s = out.get(nexp, ZERO) + nc
        if s:
            out[nexp] = s
        elif nexp in out:
            del out[nexp]
    return out


KERNEL_NAME = "python"
