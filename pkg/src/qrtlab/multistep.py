"""Multistep evolutions: symbolic double-step construction and exact orbit
verification of catalogued triple/quintuple-step relations.

Double-step route: the shifted invariant Kt(x_{n+1}, x_{n-1}) is an invariant
of the spacing-2 subsequences, so the double-step relation is the cleared
Kt(x_{n+2}, x_n) = Kt(x_n, x_{n-2}) with the trivial branch x_{n+2} = x_{n-2}
divided out.

Higher multistep relations are verified numerically-exactly on deautonomised
orbits; `shift_search` probes ±1 index offsets per dynamical-variable slot,
since printed index conventions are the usual failure mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .elimination import ThreePointEquation, normalize_relation
from .errors import Indeterminate, NotEliminable, PoleAtPoint
from .mappings import (XC, XM, XP, AsymSystem, BiquadInvariant, OrbitState,
                       SymmetricMap, invariant_in_shifted_vars, orbit)
from .poly import MPoly
from .ratfunc import RatFunc

X2P, X2M = "X2p", "X2m"   # x_{n+2}, x_{n-2} slots of the double-step relation


def double_step(map_: SymmetricMap, K: BiquadInvariant,
                sample_params=None) -> ThreePointEquation:
    """Construct the relation between x_{n+2}, x_n, x_{n-2}."""
    Kt = invariant_in_shifted_vars(map_, K, sample_params=sample_params)
    N = Kt.K.num
    D = Kt.K.den
    N_ab = N.rename({XP: X2P, XM: XC})
    D_ab = D.rename({XP: X2P, XM: XC})
    N_bc = N.rename({XP: XC, XM: X2M})
    D_bc = D.rename({XP: XC, XM: X2M})
    P = N_ab * D_bc - N_bc * D_ab
    if P.is_zero():
        raise NotEliminable("shifted invariant is degenerate for double step")
    triv = MPoly.var(X2P) - MPoly.var(X2M)
    q = P.divmod_exact(triv)
    if q is None:
        raise NotEliminable("trivial branch does not divide; "
                            "shifted invariant is not symmetric")
    rel = q.rename({X2P: XP, X2M: XM})
    eq = ThreePointEquation.from_relation(rel)
    _validate_even_subsequence(eq, map_, sample_params)
    return eq


def _validate_even_subsequence(eq, map_, sample_params, steps=16):
    pv = dict(sample_params or {})
    sysn = map_.subs_params(pv) if pv else map_
    for start in (OrbitState(0, Fraction(5, 2), Fraction(7, 3)),
                  OrbitState(0, Fraction(13, 5), Fraction(3, 7))):
        states = orbit(sysn, start, steps)
        if any(s.at_singularity for s in states) or len(states) < 9:
            continue
        xs = [s.b for s in states] + [states[-1].a]   # x_{-1}, x_0, x_1, ...
        ok = 0
        for i in range(2, len(xs) - 2):
            val = eq.relation.eval({XP: xs[i + 2], XC: xs[i], XM: xs[i - 2], **pv})
            if val != 0:
                raise NotEliminable(f"double-step relation fails on orbit at {i}")
            ok += 1
        if ok >= 4:
            return
    raise NotEliminable("could not validate double step on a generic orbit")


@dataclass
class MultistepRelation:
    """A relation between orbit entries at declared index offsets.

    `expr` is a RatFunc over slot variables; `slots` maps each slot variable
    name to (kind, letter, offset) with kind 'var' (dynamical) or 'param'.
    Example slot table for a triple-step relation:
      {"X0": ("var", "x", 0), "X3": ("var", "x", 3), "Y1": ("var", "y", 1),
       "A0": ("param", "A", 0), "A2": ("param", "A", 2), "A1": ("param", "A", 1)}
    """
    expr: RatFunc
    slots: dict

    def dynamical_slots(self):
        return [s for s, (kind, _, _) in self.slots.items() if kind == "var"]


def verify_multistep(relation: MultistepRelation, parent, orbit_len=30,
                     shift_search=False, start=None, n0=0):
    """Substitute exact parent-orbit subsequences into the relation.

    Returns a report with the residual table at the declared offsets and,
    when `shift_search` is on, every offset vector in the ±1 window that
    annihilates all residuals."""
    if start is None:
        start = OrbitState(n0, Fraction(3), Fraction(5))
    states = orbit(parent, start, orbit_len)
    if any(s.at_singularity for s in states):
        raise PoleAtPoint("parent orbit hit a singularity; choose another start")
    xs = {}
    ys = {}
    for s in states:
        xs[s.n] = s.a
        ys[s.n - 1] = s.b
    laws = parent.laws

    def residuals(offsets):
        table = []
        for n in sorted(xs):
            point = {}
            ok = True
            for slot, (kind, letter, off) in relation.slots.items():
                shift = offsets.get(slot, 0)
                idx = n + off + shift
                if kind == "param":
                    point[slot] = Fraction(laws[letter](idx)) if callable(laws[letter]) \
                        else Fraction(laws[letter])
                elif letter == "x":
                    if idx not in xs:
                        ok = False
                        break
                    point[slot] = xs[idx]
                else:
                    if idx not in ys:
                        ok = False
                        break
                    point[slot] = ys[idx]
            if not ok:
                continue
            try:
                table.append((n, relation.expr.eval(point)))
            except (PoleAtPoint, Indeterminate):
                continue
        return table

    base = residuals({})
    report = {
        "declared_offsets_pass": bool(base) and all(v == 0 for _, v in base),
        "residuals": base,
        "indices_checked": len(base),
        "offsets_found": [],
    }
    if shift_search:
        dyn = relation.dynamical_slots()
        for combo in product((-1, 0, 1), repeat=len(dyn)):
            offs = dict(zip(dyn, combo))
            tab = residuals(offs)
            if tab and all(v == 0 for _, v in tab):
                report["offsets_found"].append(offs)
    elif report["declared_offsets_pass"]:
        report["offsets_found"].append({s: 0 for s in relation.dynamical_slots()})
    return report
