"""Sparse multivariate polynomials over the rationals.

Coefficients are `fractions.Fraction`; symbolic parameters (A, gamma, z, ...)
are ordinary variables.  A global registry fixes the relative order of all
variable names ever seen, so graded-lex normal forms are reproducible within
a process and across runs that register variables in the same order (the
catalogue registers its variables eagerly at import).

The term-level arithmetic lives in `_kernel` (compiled lane when available).
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernel as K
from .errors import ResourceLimit

MAX_TOTAL_DEGREE = 512
MAX_TERMS = 2_000_000

# name -> registration index; insertion order defines the global variable order
_REGISTRY: dict[str, int] = {}


def register_vars(names):
    """Register variable names; returns their indices."""
    out = []
    for n in names:
        if n not in _REGISTRY:
            _REGISTRY[n] = len(_REGISTRY)
        out.append(_REGISTRY[n])
    return out


def registry_order(name):
    if name not in _REGISTRY:
        register_vars([name])
    return _REGISTRY[name]


def sort_vars(names):
    """Canonical tuple of variable names (registry order)."""
    uniq = []
    for n in names:
        if n not in uniq:
            uniq.append(n)
    for n in uniq:
        registry_order(n)
    return tuple(sorted(uniq, key=lambda n: _REGISTRY[n]))


def _guard(terms):
    if len(terms) > MAX_TERMS:
        raise ResourceLimit(f"term count {len(terms)} exceeds {MAX_TERMS}")
    if terms:
        d = max(sum(e) for e in terms)
        if d > MAX_TOTAL_DEGREE:
            raise ResourceLimit(f"total degree {d} exceeds {MAX_TOTAL_DEGREE}")
    return terms


class MPoly:
    """Immutable sparse polynomial.  `vars` is a tuple of names in registry
    order; `terms` maps exponent tuples (len == len(vars)) to nonzero
    Fractions.  The zero polynomial has an empty term map."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars=(), terms=None, _checked=False):
        if _checked:
            self.vars = vars
            self.terms = terms if terms is not None else {}
        else:
            self.vars = sort_vars(vars)
            remap = {v: i for i, v in enumerate(self.vars)}
            src = {v: i for i, v in enumerate(vars)}
            self.terms = {}
            if terms:
                for exp, c in terms.items():
                    c = Fraction(c)
                    if not c:
                        continue
                    nexp = [0] * len(self.vars)
                    for v, i in src.items():
                        nexp[remap[v]] = exp[i]
                    nexp = tuple(nexp)
                    s = self.terms.get(nexp, Fraction(0)) + c
                    if s:
                        self.terms[nexp] = s
                    elif nexp in self.terms:
                        del self.terms[nexp]
        self._hash = None

    # ---- constructors ----
    @staticmethod
    def const(c, vars=()):
        c = Fraction(c)
        vars = sort_vars(vars)
        if not c:
            return MPoly(vars, {}, _checked=True)
        return MPoly(vars, {(0,) * len(vars): c}, _checked=True)

    @staticmethod
    def var(name):
        vars = sort_vars([name])
        return MPoly(vars, {(1,): Fraction(1)}, _checked=True)

    # ---- alignment ----
    def align(self, other: "MPoly"):
        """Return (a, b) over the union variable set."""
        if self.vars == other.vars:
            return self, other
        allv = sort_vars(self.vars + other.vars)
        return self.embed(allv), other.embed(allv)

    def embed(self, allv):
        """Re-express over a superset variable tuple (registry order)."""
        allv = tuple(allv)
        if self.vars == allv:
            return self
        pos = [allv.index(v) for v in self.vars]
        n = len(allv)
        terms = {}
        for exp, c in self.terms.items():
            nexp = [0] * n
            for p, e in zip(pos, exp):
                nexp[p] = e
            terms[tuple(nexp)] = c
        return MPoly(allv, terms, _checked=True)

    def drop_unused(self):
        """Remove variables that appear in no term."""
        used = [i for i in range(len(self.vars))
                if any(exp[i] for exp in self.terms)]
        if len(used) == len(self.vars):
            return self
        nv = tuple(self.vars[i] for i in used)
        terms = {tuple(exp[i] for i in used): c for exp, c in self.terms.items()}
        return MPoly(nv, terms, _checked=True)

    # ---- arithmetic ----
    def __add__(self, other):
        other = _coerce(other)
        a, b = self.align(other)
        return MPoly(a.vars, _guard(K.add_terms(a.terms, b.terms)), _checked=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        a, b = self.align(other)
        return MPoly(a.vars, _guard(K.sub_terms(a.terms, b.terms)), _checked=True)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return MPoly(self.vars, K.neg_terms(self.terms), _checked=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.vars, K.scale_terms(self.terms, Fraction(other)), _checked=True)
        other = _coerce(other)
        a, b = self.align(other)
        return MPoly(a.vars, _guard(K.mul_terms(a.terms, b.terms)), _checked=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of MPoly")
        result = MPoly.const(1, self.vars)
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self.align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            s = self.drop_unused()
            self._hash = hash((s.vars, frozenset(s.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # ---- queries ----
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        [(exp, c)] = self.terms.items()
        if any(exp):
            raise ValueError("not a constant polynomial")
        return c

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.vars or not self.terms:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading(self):
        """(exponent, coeff) under graded lex; raises on zero."""
        return K.leading(self.terms)

    def leading_coeff(self):
        return self.leading()[1] if self.terms else Fraction(0)

    def content(self):
        """Positive rational content (gcd of coefficients), 0 for zero."""
        if not self.terms:
            return Fraction(0)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """(content*sign, primitive part with positive leading coeff)."""
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        if self.leading_coeff() < 0:
            c = -c
        return c, self * (1 / c)

    # ---- variable manipulation ----
    def coeffs_in(self, name):
        """Dict degree -> MPoly coefficient, viewing self in `name`."""
        if name not in self.vars:
            return {0: self}
        i = self.vars.index(name)
        out: dict[int, dict] = {}
        for exp, c in self.terms.items():
            d = exp[i]
            nexp = exp[:i] + (0,) + exp[i + 1:]
            bucket = out.setdefault(d, {})
            s = bucket.get(nexp, Fraction(0)) + c
            if s:
                bucket[nexp] = s
            elif nexp in bucket:
                del bucket[nexp]
        return {d: MPoly(self.vars, t, _checked=True) for d, t in out.items() if t}

    def subs_values(self, assignment):
        """Substitute Fractions for some variables; returns MPoly."""
        cur = self
        for name, val in assignment.items():
            if name not in cur.vars:
                continue
            i = cur.vars.index(name)
            cur = MPoly(cur.vars, K.subst_partial(cur.terms, i, Fraction(val)), _checked=True)
        return cur.drop_unused()

    def eval(self, assignment):
        """Full evaluation; assignment must cover all variables that occur."""
        try:
            vals = [Fraction(assignment[v]) for v in self.vars]
        except KeyError:
            p = self.drop_unused()
            vals = [Fraction(assignment[v]) for v in p.vars]
            return K.eval_terms(p.terms, vals)
        return K.eval_terms(self.terms, vals)

    def rename(self, mapping):
        """Rename variables (bijectively) per mapping name->name."""
        nv = [mapping.get(v, v) for v in self.vars]
        if len(set(nv)) != len(nv):
            raise ValueError("rename collision")
        return MPoly(tuple(nv), dict(self.terms))

    def divmod_exact(self, other):
        """Exact quotient self/other, or None."""
        other = _coerce(other)
        a, b = self.align(other)
        q = K.div_exact(a.terms, b.terms)
        if q is None:
            return None
        return MPoly(a.vars, q, _checked=True)

    # ---- text form ----
    def text(self):
        """Canonical serialization: terms in descending graded-lex order,
        `c*x^a*y^b` factors, exponent 1 elided, unit coefficients elided."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: K.grlex_key(kv[0]), reverse=True)
        parts = []
        for exp, c in items:
            facs = []
            for v, e in zip(self.vars, exp):
                if e == 1:
                    facs.append(v)
                elif e:
                    facs.append(f"{v}^{e}")
            coeff = str(c)
            if facs and abs(c) == 1:
                body = "*".join(facs)
                if c < 0:
                    body = "-" + body
            elif facs:
                body = coeff + "*" + "*".join(facs)
            else:
                body = coeff
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MPoly({self.text()})"


def _coerce(x):
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    raise TypeError(f"cannot coerce {type(x)} to MPoly")
