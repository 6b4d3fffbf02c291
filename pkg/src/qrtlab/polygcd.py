"""Multivariate polynomial gcd over Q.

Strategy: clear to Z, pull out the common monomial and integer content,
then try the heuristic gcd (evaluate at a large integer, take the integer /
lower-variate gcd, reconstruct by balanced radix digits, verify by exact
trial division).  The verification step makes the heuristic safe; on repeated
failure we fall back to a primitive subresultant PRS.  Polynomials here are
small enough (a handful of variables, modest degrees) that this combination
is fast and never wrong.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .poly import MPoly


def _to_integer(p: MPoly):
    """Scale p by a positive rational so coefficients are coprime integers.
    Returns (scaled poly, applied scale)."""
    if not p.terms:
        return p, Fraction(1)
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // igcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = igcd(num, (c * den).numerator)
    scale = Fraction(den, num)
    return p * scale, scale


def _monomial_gcd(p: MPoly):
    mins = None
    for exp in p.terms:
        if mins is None:
            mins = list(exp)
        else:
            mins = [min(a, b) for a, b in zip(mins, exp)]
    return tuple(mins)


def _shift_down(p: MPoly, exp):
    terms = {tuple(e - m for e, m in zip(ee, exp)): c for ee, c in p.terms.items()}
    return MPoly(p.vars, terms, _checked=True)


def _height(p: MPoly):
    return max(abs(c.numerator) for c in p.terms.values()) if p.terms else 0


def _eval_last(p: MPoly, name, xi):
    return p.subs_values({name: xi})


def _balanced_digit(p: MPoly, xi):
    """Split p = digit + xi * rest with digit coefficients in (-xi/2, xi/2]."""
    dig = {}
    rest = {}
    half = xi // 2
    for exp, c in p.terms.items():
        n = c.numerator  # integer coefficients assumed
        d = (n + half) % xi - half
        r = (n - d) // xi
        if d:
            dig[exp] = Fraction(d)
        if r:
            rest[exp] = Fraction(r)
    return (MPoly(p.vars, dig, _checked=True),
            MPoly(p.vars, rest, _checked=True))


def _gcdheu(f: MPoly, g: MPoly, names):
    """Heuristic gcd of integer-coefficient f, g in the variables `names`
    (innermost recursion on the last name).  Returns primitive gcd or None."""
    if not names:
        a = f.const_value().numerator
        b = g.const_value().numerator
        return MPoly.const(abs(igcd(a, b)), f.vars)
    name = names[-1]
    if f.degree_in(name) == 0 and g.degree_in(name) == 0:
        return _gcdheu(f, g, names[:-1])
    xi = 2 * min(_height(f), _height(g)) + 2
    if xi < 4:
        xi = 4
    for _ in range(6):
        fe = _eval_last(f, name, xi)
        ge = _eval_last(g, name, xi)
        if fe.is_zero() or ge.is_zero():
            xi = xi * 73794 // 27011 + 1
            continue
        gamma = _gcdheu(fe, ge, names[:-1])
        if gamma is None:
            xi = xi * 73794 // 27011 + 1
            continue
        # reconstruct candidate along `name` by balanced xi-adic digits; do
        # NOT strip content here: factors of the true gcd that are constants
        # at inner levels live in that content
        cand = MPoly.const(0)
        xvar = MPoly.var(name)
        power = MPoly.const(1)
        k = 0
        while not gamma.is_zero():
            dig, gamma = _balanced_digit(gamma, xi)
            if not dig.is_zero():
                cand = cand + dig * power
            power = power * xvar
            k += 1
            if k > 600:
                break
        if not cand.is_zero():
            if cand.leading_coeff() < 0:
                cand = -cand
            if f.divmod_exact(cand) is not None and g.divmod_exact(cand) is not None:
                return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _poly_in(p: MPoly, name):
    """Coefficient list (low to high) of p viewed in `name`."""
    cs = p.coeffs_in(name)
    d = max(cs) if cs else 0
    zero = MPoly.const(0, p.vars)
    return [cs.get(i, zero) for i in range(d + 1)]


def _from_coeffs(coeffs, name, vars):
    x = MPoly.var(name).embed(vars)
    out = MPoly.const(0, vars)
    power = MPoly.const(1, vars)
    for c in coeffs:
        if not c.is_zero():
            out = out + c * power
        power = power * x
    return out


def _prs_gcd(f: MPoly, g: MPoly, names):
    """Primitive PRS gcd (fallback).  Recursive content removal."""
    if not names:
        a = f.const_value().numerator
        b = g.const_value().numerator
        return MPoly.const(abs(igcd(a, b)), f.vars)
    name = names[-1]
    rest = names[:-1]
    if f.degree_in(name) == 0 and g.degree_in(name) == 0:
        return _prs_gcd(f, g, rest)

    def content_in(p):
        cs = [c for c in _poly_in(p, name) if not c.is_zero()]
        acc = cs[0]
        for c in cs[1:]:
            acc = _gcd_int(acc, c, rest)
        return acc

    cf, cg = content_in(f), content_in(g)
    fp = f.divmod_exact(cf)
    gp = g.divmod_exact(cg)
    a, b = fp, gp
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while not b.is_zero() and b.degree_in(name) > 0:
        r = _prem(a, b, name)
        if r.is_zero():
            a, b = b, r
            break
        _, r = r.primitive()
        rc = content_in(r)
        r = r.divmod_exact(rc)
        a, b = b, r
    if b.is_zero():
        _, ap = a.primitive()
        res = ap.divmod_exact(content_in(ap))
    else:
        res = MPoly.const(1, f.vars)
    cc = _gcd_int(cf, cg, rest)
    out = res * cc
    _, out = out.primitive()
    return out


def _prem(f: MPoly, g: MPoly, name):
    """Pseudo-remainder of f by g with respect to `name`."""
    df, dg = f.degree_in(name), g.degree_in(name)
    if df < dg:
        return f
    fc = _poly_in(f, name)
    gc = _poly_in(g, name)
    lg = gc[-1]
    x = MPoly.var(name).embed(f.vars)
    r = f
    while True:
        dr = r.degree_in(name)
        if r.is_zero() or dr < dg:
            return r
        rc = _poly_in(r, name)
        lead = rc[-1]
        r = r * lg - g * lead * x ** (dr - dg)


def _gcd_int(f: MPoly, g: MPoly, names):
    """gcd of integer-coefficient polys: heuristic, then PRS."""
    h = _gcdheu(f, g, names)
    if h is not None:
        return h
    return _prs_gcd(f, g, names)


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Primitive gcd over Q with positive leading coefficient.  gcd(0, g) is
    the primitive part of g; gcd of constants is 1 (or 0 for two zeros)."""
    f2, g2 = f.align(g)
    if f2.is_zero() and g2.is_zero():
        return MPoly.const(0, f2.vars)
    if f2.is_zero():
        return g2.primitive()[1]
    if g2.is_zero():
        return f2.primitive()[1]
    if f2.is_const() or g2.is_const():
        return MPoly.const(1, f2.vars)
    fi, _ = _to_integer(f2)
    gi, _ = _to_integer(g2)
    mf = _monomial_gcd(fi)
    mg = _monomial_gcd(gi)
    common = tuple(min(a, b) for a, b in zip(mf, mg))
    fi = _shift_down(fi, mf)
    gi = _shift_down(gi, mg)
    names = [v for v in fi.vars
             if fi.degree_in(v) > 0 or gi.degree_in(v) > 0]
    h = _gcd_int(fi, gi, names)
    if any(common):
        mono = MPoly(fi.vars, {common: Fraction(1)}, _checked=True)
        h = h * mono
    _, h = h.primitive()
    return h


def divides(f: MPoly, g: MPoly) -> bool:
    """True iff f divides g exactly."""
    return g.divmod_exact(f) is not None
