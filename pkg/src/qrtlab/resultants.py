"""Resultants via Sylvester matrices with fraction-free (Bareiss) elimination.

Entries are MPoly; Bareiss keeps every intermediate division exact, which is
what makes determinant computation over a polynomial ring practical.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EliminationCollapse
from .poly import MPoly


def _coeff_list(p: MPoly, var):
    cs = p.coeffs_in(var)
    d = max(cs) if cs else 0
    zero = MPoly.const(0, p.vars)
    return [cs.get(i, zero) for i in range(d + 1)]


def sylvester(f: MPoly, g: MPoly, var):
    """Sylvester matrix of f, g with respect to `var` (rows of g-coeffs
    first is immaterial for our use up to sign)."""
    fc = _coeff_list(f, var)
    gc = _coeff_list(g, var)
    m, n = len(fc) - 1, len(gc) - 1
    if m < 0 or n < 0:
        raise ValueError("resultant of zero polynomial")
    size = m + n
    zero = MPoly.const(0, f.vars)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_det(matrix):
    """Fraction-free determinant of a square MPoly matrix."""
    n = len(matrix)
    if n == 0:
        return MPoly.const(1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = MPoly.const(1, m[0][0].vars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.const(0, m[0][0].vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = num.divmod_exact(prev)
                if q is None:
                    raise ArithmeticError("Bareiss division not exact")
                m[i][j] = q
            m[i][k] = MPoly.const(0, m[0][0].vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(f: MPoly, g: MPoly, var) -> MPoly:
    """Resultant of f and g with respect to `var`.

    Fast paths for degree-0/1 factors; Sylvester/Bareiss in general.
    """
    f2, g2 = f.align(g)
    df, dg = f2.degree_in(var), g2.degree_in(var)
    if df == 0 and dg == 0:
        raise ValueError(f"neither argument involves {var}")
    if df == 0:
        return f2 ** dg
    if dg == 0:
        return g2 ** df
    if dg == 1:
        gc = _coeff_list(g2, var)
        g0, g1 = gc[0], gc[1]
        fc = _coeff_list(f2, var)
        # Res = g1^deg(f) * f(-g0/g1)
        acc = MPoly.const(0, f2.vars)
        for i, c in enumerate(fc):
            acc = acc + c * ((-g0) ** i) * (g1 ** (df - i))
        return acc
    if df == 1:
        sign = -1 if (df * dg) % 2 else 1
        r = resultant(g2, f2, var)
        return r if sign > 0 else -r
    return bareiss_det(sylvester(f2, g2, var))


def eliminate_linear(f: MPoly, g: MPoly, var) -> MPoly:
    """Resultant specialized to our elimination pipeline; raises
    EliminationCollapse when the resultant vanishes identically."""
    r = resultant(f, g, var)
    if r.is_zero():
        raise EliminationCollapse(f"resultant in {var} vanished identically")
    return r


def poly_sqrt(p: MPoly):
    """Exact square root of a polynomial, or None.

    Leading-term iteration under graded lex: the root's leading term is the
    square root of p's; successive correction terms are lt(r)/(2*lt(q)) and
    must strictly decrease, otherwise p is not a square.
    """
    if p.is_zero():
        return MPoly.const(0, p.vars)
    import math

    from ._kernel import grlex_key
    exp, c = p.leading()
    if any(e % 2 for e in exp) or c < 0:
        return None
    cn, cd = c.numerator, c.denominator
    rn, rd = math.isqrt(cn), math.isqrt(cd)
    if rn * rn != cn or rd * rd != cd:
        return None
    root_exp = tuple(e // 2 for e in exp)
    root_c = Fraction(rn, rd)
    q = MPoly(p.vars, {root_exp: root_c}, _checked=True)
    r = p - q * q
    last_key = None
    while not r.is_zero():
        re, rc = r.leading()
        key = grlex_key(re)
        if last_key is not None and key >= last_key:
            return None
        last_key = key
        de = tuple(a - b for a, b in zip(re, root_exp))
        if any(e < 0 for e in de):
            return None
        t = MPoly(p.vars, {de: rc / (2 * root_c)}, _checked=True)
        q = q + t
        r = p - q * q
    return q
