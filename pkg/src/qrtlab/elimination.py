"""Variable elimination for asymmetric systems, and equality of three-point
equations up to normalization.

The eliminations are two-stage resultants over the cleared relations.  The
raw resultant routinely carries extraneous content: numeric factors,
parameter-only factors, and factors free of the outer (next/prev) variables;
all of these are removed by the joint-content normalization below, and the
final relation is validated against an exact orbit of the parent system (a
factor that survives normalization but fails the orbit test would indicate a
genuinely spurious branch, which the two-stage linear eliminations here do
not produce).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EliminationCollapse, NotEliminable
from .mappings import XC, XM, XP, YC, YM, YP, AsymSystem, OrbitState, SymmetricMap, orbit
from .poly import MPoly
from .polygcd import poly_gcd
from .ratfunc import RatFunc


@dataclass
class ThreePointEquation:
    """Cleared relation P(Xp, Xc, Xm) = 0 (parameters as extra variables).
    `closed` is the SymmetricMap form when the relation is linear in Xp/Xm.
    Reducible content that was split off during normalization is recorded in
    `removed_factors` (irreducibility of the remainder is validated by the
    orbit test, not by a full factorization)."""
    relation: MPoly
    closed: SymmetricMap | None = None
    source_var: str = "x"
    removed_factors: list = field(default_factory=list)

    @staticmethod
    def from_relation(relation: MPoly, source_var="x"):
        rel, removed = normalize_relation(relation)
        closed = None
        try:
            closed = SymmetricMap(rel, params=[v for v in rel.vars
                                               if v not in (XP, XC, XM)])
        except NotEliminable:
            pass
        return ThreePointEquation(rel, closed, source_var, removed)

    def text(self):
        return self.relation.text() + " = 0"


def normalize_relation(p: MPoly):
    """Canonical form of a cleared equation: strip numeric content/sign,
    monomial factors, and any content free of the outer variables (Xp, Xm)
    jointly.  Returns (normalized, removed_factors)."""
    removed = []
    if p.is_zero():
        return p, removed
    # monomial factor
    mins = None
    for exp in p.terms:
        mins = list(exp) if mins is None else [min(a, b) for a, b in zip(mins, exp)]
    if any(mins):
        mono = MPoly(p.vars, {tuple(mins): Fraction(1)}, _checked=True)
        p = p.divmod_exact(mono)
        removed.append(mono)
    # content free of outer variables
    outer = [v for v in (XP, XM, YP, YM) if v in p.vars and p.degree_in(v) > 0]
    if outer:
        cont = _outer_content(p, outer)
        if not cont.is_const():
            p = p.divmod_exact(cont)
            removed.append(cont)
    c, p = p.primitive()
    return p, removed


def _outer_content(p: MPoly, outer):
    """gcd of the coefficients of p viewed as a polynomial in `outer`."""
    buckets: dict[tuple, dict] = {}
    idx = [p.vars.index(v) for v in outer]
    for exp, c in p.terms.items():
        key = tuple(exp[i] for i in idx)
        nexp = list(exp)
        for i in idx:
            nexp[i] = 0
        buckets.setdefault(key, {})[tuple(nexp)] = c
    polys = [MPoly(p.vars, t, _checked=True) for t in buckets.values()]
    g = polys[0]
    for q in polys[1:]:
        if g.is_const():
            break
        g = poly_gcd(g, q)
    return g


def _resultant2(f: MPoly, g: MPoly, var):
    from .resultants import resultant
    r = resultant(f, g, var)
    if r.is_zero():
        raise EliminationCollapse(f"resultant in {var} vanished identically")
    return r


def eliminate(system: AsymSystem, keep: str, sample_params=None,
              validate_steps=12) -> ThreePointEquation:
    """Produce the three-point equation for the kept variable ('x' or 'y').

    keep='y': eliminate x_{n+1} between rel_b@(n+1) and rel_a, then x_n with
    rel_b.  keep='x': eliminate y_n between rel_a and rel_b, then y_{n-1}
    with rel_a@(n-1).
    """
    if keep not in ("x", "y"):
        raise ValueError("keep must be 'x' or 'y'")
    if keep == "y":
        rb_up = system.rel_b.rename({YC: YP, YM: YC, XC: XP})
        t1 = _resultant2(rb_up, system.rel_a, XP)
        t2 = _resultant2(t1, system.rel_b, XC)
        t2 = t2.drop_unused().rename({YP: XP, YC: XC, YM: XM})
    else:
        ra_dn = system.rel_a.rename({XP: XC, XC: XM, YC: YM})
        t1 = _resultant2(system.rel_a, system.rel_b, YC)
        t2 = _resultant2(t1, ra_dn, YM)
    eq = ThreePointEquation.from_relation(t2.drop_unused(), source_var=keep)
    _validate_on_orbit(eq, system, keep, sample_params, validate_steps)
    return eq


def _validate_on_orbit(eq, system, keep, sample_params, steps):
    pv = dict(sample_params or {})
    sysn = system.subs_params(pv) if pv else system
    for start in (OrbitState(0, Fraction(3), Fraction(5)),
                  OrbitState(0, Fraction(7, 2), Fraction(9, 4))):
        states = orbit(sysn, start, steps + 2)
        if any(s.at_singularity for s in states):
            continue
        xs = [s.a for s in states]
        ys = [s.b for s in states[1:]]   # y_n appears as next state's b
        seq = xs if keep == "x" else ys
        if len(seq) < 4:
            continue
        checked = 0
        for i in range(1, len(seq) - 1):
            val = eq.relation.eval({XP: seq[i + 1], XC: seq[i], XM: seq[i - 1], **pv})
            if val != 0:
                raise EliminationCollapse(
                    f"eliminated equation fails on parent orbit at index {i}")
            checked += 1
        if checked >= min(steps, 8):
            return
    raise EliminationCollapse("could not validate elimination on a generic orbit")


def equations_equal(e1, e2, allow=None) -> bool:
    """Exact equality of three-point equations after normalization.

    `allow`: optional Homography applied uniformly to every variable slot
    (both orientations are tried, since a declared link like x -> 1/x can be
    stated in either direction)."""
    r1 = e1.relation if isinstance(e1, ThreePointEquation) else e1
    r2 = e2.relation if isinstance(e2, ThreePointEquation) else e2
    n1, _ = normalize_relation(r1)
    if allow is None:
        n2, _ = normalize_relation(r2)
        return n1 == n2
    for h in (allow, allow.inverse()):
        sub = {v: h.act(RatFunc.var(v)) for v in (XP, XC, XM) if r2.degree_in(v) > 0}
        transformed = RatFunc(r2).subs(sub)
        n2, _ = normalize_relation(transformed.num)
        if n1 == n2:
            return True
    return False
