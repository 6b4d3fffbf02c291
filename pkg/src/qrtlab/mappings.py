"""Birational systems: symmetric three-point maps and asymmetric two-relation
systems, exact orbit iteration, and conservation checks.

Canonical slot names used throughout the package:
  symmetric maps:  Xp (x_{n+1}), Xc (x_n), Xm (x_{n-1})
  asymmetric:      rel_a in (Xp, Xc, Yc) gives x_{n+1};
                   rel_b in (Yc, Ym, Xc) gives y_n from (y_{n-1}, x_n)
Parameters (A, B, gamma, ...) are additional variables of the relations.
Deautonomised iteration substitutes per-step rational values for declared
parameter slots (see deauto.ParamSeq).

Singularities are values, not exceptions: `step` returns an OrbitState with
the `singular` diagnostic set when a relation fires a pole or 0/0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import Indeterminate, NotEliminable, PoleAtPoint
from .poly import MPoly
from .ratfunc import RatFunc
from .resultants import poly_sqrt, resultant

XP, XC, XM = "Xp", "Xc", "Xm"
YP, YC, YM = "Yp", "Yc", "Ym"


def solve_linear_in(p: MPoly, var) -> RatFunc:
    """Solve P = 0 for `var`, requiring degree exactly 1."""
    cs = p.coeffs_in(var)
    d = max(cs) if cs else 0
    if d != 1:
        raise NotEliminable(f"relation has degree {d} in {var}")
    c1 = cs[1]
    c0 = cs.get(0, MPoly.const(0, p.vars))
    return RatFunc(-c0, c1)


@dataclass(frozen=True)
class OrbitState:
    """Symmetric maps: (a, b) = (x_n, x_{n-1}); asymmetric: (a, b) = (x_n, y_{n-1})."""
    n: int
    a: Fraction | None
    b: Fraction | None
    singular: str | None = None

    @property
    def at_singularity(self):
        return self.singular is not None


def _law_value(law, n):
    if callable(law):
        return Fraction(law(n))
    return Fraction(law)


class SymmetricMap:
    """Three-point map given by a cleared polynomial relation in (Xp, Xc, Xm)."""

    def __init__(self, relation: MPoly, params=(), laws=None):
        _, relation = relation.primitive()
        self.relation = relation
        self.params = tuple(params)
        self.laws = dict(laws or {})
        self.update = solve_linear_in(relation, XP)
        self.back_update = solve_linear_in(relation, XM)

    def with_laws(self, laws):
        m = SymmetricMap.__new__(SymmetricMap)
        m.relation = self.relation
        m.params = self.params
        m.update = self.update
        m.back_update = self.back_update
        m.laws = dict(laws)
        return m

    def param_values(self, n):
        return {p: _law_value(self.laws[p], n) for p in self.params if p in self.laws}

    def step(self, state: OrbitState) -> OrbitState:
        assert not state.at_singularity
        point = {XC: state.a, XM: state.b}
        point.update(self.param_values(state.n))
        try:
            xnext = self.update.eval(point)
        except (PoleAtPoint, Indeterminate) as e:
            return OrbitState(state.n + 1, None, None,
                              singular=f"update: {type(e).__name__}")
        return OrbitState(state.n + 1, xnext, state.a)

    def step_back(self, state: OrbitState) -> OrbitState:
        point = {XC: state.b, XP: state.a}
        point.update(self.param_values(state.n - 1))
        try:
            xprev = self.back_update.eval(point)
        except (PoleAtPoint, Indeterminate) as e:
            return OrbitState(state.n - 1, None, None,
                              singular=f"back_update: {type(e).__name__}")
        return OrbitState(state.n - 1, state.b, xprev)

    def subs_params(self, assignment):
        return SymmetricMap(self.relation.subs_values(assignment),
                            params=[p for p in self.params if p not in assignment],
                            laws=self.laws)

    def __repr__(self):
        return f"SymmetricMap({self.relation.text()} = 0)"


class AsymSystem:
    """Two-relation system; update order is rel_b then rel_a: from
    (x_n, y_{n-1}) compute y_n, then x_{n+1}."""

    def __init__(self, rel_a: MPoly, rel_b: MPoly, params=(), laws=None,
                 parity_flip=None):
        _, rel_a = rel_a.primitive()
        _, rel_b = rel_b.primitive()
        self.rel_a = rel_a
        self.rel_b = rel_b
        self.params = tuple(params)
        self.laws = dict(laws or {})
        self.parity_flip = parity_flip
        self.update_a = solve_linear_in(rel_a, XP)   # x_{n+1}(Xc, Yc)
        self.update_b = solve_linear_in(rel_b, YC)   # y_n(Ym, Xc)
        self.back_a = solve_linear_in(rel_a, XC)     # x_n(Xp, Yc)
        self.back_b = solve_linear_in(rel_b, YM)     # y_{n-1}(Yc, Xc)

    def with_laws(self, laws):
        s = AsymSystem.__new__(AsymSystem)
        for f in ("rel_a", "rel_b", "params", "parity_flip",
                  "update_a", "update_b", "back_a", "back_b"):
            setattr(s, f, getattr(self, f))
        s.laws = dict(laws)
        return s

    def param_values(self, n):
        return {p: _law_value(self.laws[p], n) for p in self.params if p in self.laws}

    def step(self, state: OrbitState) -> OrbitState:
        assert not state.at_singularity
        vals = self.param_values(state.n)
        try:
            y = self.update_b.eval({YM: state.b, XC: state.a, **vals})
        except (PoleAtPoint, Indeterminate) as e:
            return OrbitState(state.n + 1, None, None,
                              singular=f"rel_b: {type(e).__name__}")
        try:
            x = self.update_a.eval({XC: state.a, YC: y, **vals})
        except (PoleAtPoint, Indeterminate) as e:
            return OrbitState(state.n + 1, None, None,
                              singular=f"rel_a: {type(e).__name__}")
        return OrbitState(state.n + 1, x, y)

    def step_with_mid(self, state):
        """Like step, but also returns y_n (needed by conservation chains)."""
        vals = self.param_values(state.n)
        y = self.update_b.eval({YM: state.b, XC: state.a, **vals})
        x = self.update_a.eval({XC: state.a, YC: y, **vals})
        return OrbitState(state.n + 1, x, y), y

    def step_back(self, state: OrbitState) -> OrbitState:
        vals = self.param_values(state.n - 1)
        try:
            xprev = self.back_a.eval({XP: state.a, YC: state.b, **vals})
            yprev = self.back_b.eval({YC: state.b, XC: xprev, **vals})
        except (PoleAtPoint, Indeterminate) as e:
            return OrbitState(state.n - 1, None, None,
                              singular=f"back: {type(e).__name__}")
        return OrbitState(state.n - 1, xprev, yprev)

    def subs_params(self, assignment):
        return AsymSystem(self.rel_a.subs_values(assignment),
                          self.rel_b.subs_values(assignment),
                          params=[p for p in self.params if p not in assignment],
                          laws=self.laws, parity_flip=self.parity_flip)

    def __repr__(self):
        return f"AsymSystem({self.rel_a.text()} = 0; {self.rel_b.text()} = 0)"


def orbit(system, start: OrbitState, steps: int):
    """Exact orbit; stops after the first singular state (which is included)."""
    out = [start]
    state = start
    for _ in range(steps):
        if state.at_singularity:
            break
        state = system.step(state)
        out.append(state)
    return out


@dataclass
class BiquadInvariant:
    """Conserved quantity K(var_a, var_b); mu is the shift in (K+mu)^(-1)."""
    K: RatFunc
    var_a: str = XC
    var_b: str = XM
    mu: RatFunc | None = None
    parity_param: str | None = None
    non_qrt: bool = False

    def value(self, a, b, params=None):
        point = {self.var_a: a, self.var_b: b}
        if params:
            point.update(params)
        return self.K.eval(point)

    def flipped(self):
        """Sign-flip the parity parameter (gamma -> -gamma)."""
        if not self.parity_param:
            return self
        gp = self.parity_param
        neg = RatFunc(-MPoly.var(gp))
        K2 = self.K.subs({gp: neg})
        return replace(self, K=K2)

    def subs_params(self, assignment):
        return replace(self, K=RatFunc(self.K.num.subs_values(assignment),
                                       self.K.den.subs_values(assignment)))

    def bidegree(self):
        da = max(self.K.num.degree_in(self.var_a), self.K.den.degree_in(self.var_a))
        db = max(self.K.num.degree_in(self.var_b), self.K.den.degree_in(self.var_b))
        return da, db

    def pullback(self, sub_a: RatFunc, sub_b: RatFunc):
        """K(sub_a, sub_b) without mu/inversion (plain transport)."""
        return replace(self, K=self.K.subs({self.var_a: sub_a, self.var_b: sub_b}))


def check_conservation(system, K: BiquadInvariant, start: OrbitState, steps: int,
                       params=None):
    """QRT chain check.  For asymmetric systems this is
    K(x_n, y_{n-1}) = K(x_n, y_n) = K(x_{n+1}, y_n) at every step; symmetric
    maps check K(x_{n+1}, x_n) = K(x_n, x_{n-1})."""
    report = {"passed": True, "first_violation": None, "steps_checked": 0,
              "truncated": False, "value": None}
    state = start
    params = dict(params or {})
    for i in range(steps):
        pv = {**params, **system.param_values(state.n)}
        try:
            if isinstance(system, AsymSystem):
                k_back = K.value(state.a, state.b, pv)
                nxt, y = system.step_with_mid(state)
                k_mid = K.value(state.a, y, pv)
                k_fwd = K.value(nxt.a, y, pv)
                ok = k_back == k_mid == k_fwd
                kval = k_mid
            else:
                nxt = system.step(state)
                if nxt.at_singularity:
                    raise PoleAtPoint("orbit hit singularity")
                k_back = K.value(state.a, state.b, pv)
                k_fwd = K.value(nxt.a, nxt.b, pv)
                ok = k_back == k_fwd
                kval = k_back
        except (PoleAtPoint, Indeterminate):
            report["truncated"] = True
            break
        if report["value"] is None:
            report["value"] = kval
        if not ok or kval != report["value"]:
            report["passed"] = False
            report["first_violation"] = i
            return report
        report["steps_checked"] = i + 1
        state = nxt
    return report


def check_alternating_conservation(system: AsymSystem, K: BiquadInvariant,
                                   start: OrbitState, steps: int, params=None):
    """Sign-alternating chain K(x_n, y_{n-1}; -g) = K(x_n, y_n; +g)
    = K(x_{n+1}, y_n; -g), exact over `steps` steps."""
    if not K.parity_param:
        return check_conservation(system, K, start, steps, params)
    Kp, Km = K, K.flipped()
    report = {"passed": True, "first_violation": None, "steps_checked": 0,
              "truncated": False, "value": None}
    state = start
    params = dict(params or {})
    for i in range(steps):
        pv = {**params, **system.param_values(state.n)}
        try:
            k_back = Km.value(state.a, state.b, pv)
            nxt, y = system.step_with_mid(state)
            k_mid = Kp.value(state.a, y, pv)
            k_fwd = Km.value(nxt.a, y, pv)
        except (PoleAtPoint, Indeterminate):
            report["truncated"] = True
            break
        if report["value"] is None:
            report["value"] = k_mid
        if not (k_back == k_mid == k_fwd == report["value"]):
            report["passed"] = False
            report["first_violation"] = i
            return report
        report["steps_checked"] = i + 1
        state = nxt
    return report


def invariant_in_shifted_vars(map_: SymmetricMap, K: BiquadInvariant,
                              sample_params=None) -> BiquadInvariant:
    """Express K in (x_{n+1}, x_{n-1}) by eliminating the middle variable
    through the map relation.

    The resultant of num(K - k) with the relation is linear in k when the
    relation is linear in the middle variable; otherwise it is a quadratic
    whose branches correspond to the two middle roots, and the branch agreeing
    with K's value along a generic orbit is returned.
    """
    kname = "_k"
    kvar = MPoly.var(kname)
    N = K.K.num.rename({K.var_a: XC, K.var_b: XM})
    D = K.K.den.rename({K.var_a: XC, K.var_b: XM})
    f = N - kvar * D
    res = resultant(f, map_.relation, XC)
    _, res = res.primitive()
    cs = res.coeffs_in(kname)
    deg = max(cs) if cs else 0
    if deg == 0 or res.is_zero():
        raise NotEliminable("middle variable could not be eliminated")
    if deg == 1:
        shifted = RatFunc(-cs.get(0, MPoly.const(0)), cs[1])
        return BiquadInvariant(shifted, var_a=XP, var_b=XM, mu=K.mu)
    if deg != 2:
        raise NotEliminable(f"resultant has degree {deg} in the invariant value")
    c2, c1, c0 = cs[2], cs.get(1, MPoly.const(0)), cs.get(0, MPoly.const(0))
    disc = c1 * c1 - 4 * c2 * c0
    cont, pp = disc.primitive()
    root_pp = poly_sqrt(pp)
    if root_pp is None:
        raise NotEliminable("irrational branch: discriminant is not a square")
    import math
    cn, cd = cont.numerator, cont.denominator
    rn, rd = math.isqrt(cn), math.isqrt(cd)
    if cont < 0 or rn * rn != cn or rd * rd != cd:
        raise NotEliminable("irrational branch: discriminant content not a square")
    root = root_pp * Fraction(rn, rd)
    branches = [RatFunc(-c1 + root, 2 * c2), RatFunc(-c1 - root, 2 * c2)]
    # pick the branch matching K's value along a generic orbit
    pv = dict(sample_params or {})
    sysn = map_.subs_params(pv) if pv else map_
    state = OrbitState(0, Fraction(5, 2), Fraction(7, 3))
    pts = orbit(sysn, state, 6)
    if any(s.at_singularity for s in pts):
        state = OrbitState(0, Fraction(11, 7), Fraction(3, 5))
        pts = orbit(sysn, state, 6)
    kval = K.value(pts[1].a, pts[1].b, pv)
    for br in branches:
        try:
            v = br.eval({XP: pts[2].a, XM: pts[0].a, **pv})
        except (PoleAtPoint, Indeterminate):
            continue
        if v == kval:
            return BiquadInvariant(br, var_a=XP, var_b=XM, mu=K.mu)
    raise NotEliminable("no branch matches the invariant value along the orbit")
