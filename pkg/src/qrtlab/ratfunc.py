"""Rational functions in normal form.

Normal form: gcd(num, den) constant, den primitive with positive graded-lex
leading coefficient.  This triple makes the representation unique, so
`__eq__` on the pair is semantic equality (rf_equal is the cross-multiplied
variant that tolerates un-normalized inputs).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DegeneratePoints, Indeterminate, PoleAtPoint, ZeroDenominator
from .poly import MPoly
from .polygcd import poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        num = _as_poly(num)
        den = _as_poly(den) if den is not None else MPoly.const(1)
        if _normalized:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        num, den = num.align(den)
        if num.is_zero():
            self.num = MPoly.const(0, num.vars)
            self.den = MPoly.const(1, num.vars)
            return
        g = poly_gcd(num, den)
        if not g.is_const():
            num = num.divmod_exact(g)
            den = den.divmod_exact(g)
        c, den = den.primitive()
        num = num * (1 / c)
        # drop variables used by neither side so eval() needs only real ones
        used = [i for i in range(len(num.vars))
                if any(e[i] for e in num.terms) or any(e[i] for e in den.terms)]
        if len(used) != len(num.vars):
            nv = tuple(num.vars[i] for i in used)
            num = MPoly(nv, {tuple(e[i] for i in used): c2
                             for e, c2 in num.terms.items()}, _checked=True)
            den = MPoly(nv, {tuple(e[i] for i in used): c2
                             for e, c2 in den.terms.items()}, _checked=True)
        self.num, self.den = num, den

    # ---- constructors ----
    @staticmethod
    def const(c):
        return RatFunc(MPoly.const(c))

    @staticmethod
    def var(name):
        return RatFunc(MPoly.var(name))

    @staticmethod
    def from_fraction(fr):
        return RatFunc.const(Fraction(fr))

    # ---- predicates ----
    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def free_of(self, names):
        s = set(names)
        return all(self.num.degree_in(v) == 0 and self.den.degree_in(v) == 0
                   for v in s)

    # ---- arithmetic ----
    def __add__(self, other):
        other = _as_rf(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = _as_rf(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RatFunc(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return rf_equal(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    # ---- substitution / evaluation ----
    def subs(self, mapping):
        """Substitute variables by RatFunc/MPoly/Fraction values, exactly."""
        rf_map = {k: _as_rf(v) for k, v in mapping.items()}
        return _subs_poly(self.num, rf_map) / _subs_poly(self.den, rf_map)

    def subs_values(self, assignment):
        """Substitute plain rational values for some variables."""
        num = self.num.subs_values(assignment)
        den = self.den.subs_values(assignment)
        if den.is_zero():
            if num.is_zero():
                raise Indeterminate("0/0 after substitution")
            raise PoleAtPoint("denominator vanished identically after substitution")
        return RatFunc(num, den)

    def eval(self, assignment):
        """Exact evaluation at a full rational point.  Raises PoleAtPoint or
        Indeterminate as confinement-probe signals."""
        dv = self.den.eval(assignment)
        nv = self.num.eval(assignment)
        if dv == 0:
            if nv == 0:
                raise Indeterminate(f"0/0 at {assignment}")
            raise PoleAtPoint(f"pole at {assignment}")
        return nv / dv

    def rename(self, mapping):
        return RatFunc(self.num.rename(mapping), self.den.rename(mapping),
                       _normalized=True)

    def text(self):
        if self.den == MPoly.const(1, self.den.vars):
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    def __repr__(self):
        return f"RatFunc({self.text()})"


def _as_poly(x):
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    raise TypeError(f"cannot use {type(x)} as polynomial")


def _as_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    if isinstance(x, MPoly):
        return RatFunc(x)
    raise TypeError(f"cannot coerce {type(x)} to RatFunc")


def _subs_poly(p: MPoly, rf_map) -> RatFunc:
    """Substitute RatFuncs into an MPoly by Horner evaluation, one variable
    at a time.  Exact; returns normalized RatFunc."""
    todo = [v for v in p.vars if v in rf_map and p.degree_in(v) > 0]
    if not todo:
        return RatFunc(p)
    name = todo[0]
    coeffs = p.coeffs_in(name)
    d = max(coeffs)
    val = rf_map[name]
    # Horner over the substituted variable; coefficients recurse
    acc = _subs_poly(coeffs.get(d, MPoly.const(0)), rf_map)
    for i in range(d - 1, -1, -1):
        acc = acc * val + _subs_poly(coeffs.get(i, MPoly.const(0)), rf_map)
    return acc


def rf_normalize(num, den) -> RatFunc:
    """Spec operation: normal form of num/den."""
    return RatFunc(num, den)


def rf_equal(f: RatFunc, g: RatFunc) -> bool:
    """Exact equality: f.num*g.den == g.num*f.den as polynomials."""
    return f.num * g.den == g.num * f.den


def rf_eval(f: RatFunc, point) -> Fraction:
    return f.eval(point)


def rf_random_identity_check(f: RatFunc, g: RatFunc, trials=20, coeff_bound=50,
                             seed=0) -> bool:
    """Probabilistic equality: agreeing values at `trials` random rational
    points (Schwartz-Zippel style confidence; poles skipped)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    names = sorted(set(f.num.vars) | set(f.den.vars) | set(g.num.vars) | set(g.den.vars))
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 10 * trials:
            raise DegeneratePoints(
                f"{attempts} samples hit poles before {trials} clean evaluations")
        point = {v: Fraction(rng.randint(-coeff_bound, coeff_bound),
                             rng.randint(1, coeff_bound)) for v in names}
        try:
            fv = f.eval(point)
            gv = g.eval(point)
        except (PoleAtPoint, Indeterminate):
            continue
        if fv != gv:
            return False
        done += 1
    return True


def invariants_projectively_equal(k1: RatFunc, k2: RatFunc, dyn_vars):
    """Two invariants are equivalent if one is a constant (in the dynamical
    variables) multiple of the other or of its reciprocal.  Returns
    (True, scale RatFunc, inverted?) or (False, None, None)."""
    for inverted, cand in ((False, k2), (True, k2.inverse() if not k2.is_zero() else None)):
        if cand is None:
            continue
        s_num = k1.num * cand.den
        s_den = k1.den * cand.num
        if s_den.is_zero():
            continue
        ratio = RatFunc(s_num, s_den)
        if ratio.free_of(dyn_vars):
            return True, ratio, inverted
    return False, None, None
