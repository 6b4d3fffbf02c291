"""Deautonomisation machinery: parameter laws, singularity-confinement probes
over an exact deformation parameter, and degree-growth classification.

A ParamSeq is t_n = alpha*n + beta plus zero-mean period-m parts and
anti-periodic (chi(n+m) = -chi(n)) parts, all rational.  Periodic parts are
stored as real zero-mean rational sequences (equivalent in span to the
root-of-unity combinations, and they keep every orbit in Q).

The confinement probe iterates the map on RatFunc values in the two symbols
(eps, w): w is the generic pre-singularity datum, eps steers the orbit into
the singular value.  An entry's eps->0 limit either exists (denominator
nonzero at eps=0 after normal-form cancellation) or the entry is 'infinite'
at this step.  CONFINED means the orbit exits the singular pattern with a
finite state that still depends on w; exiting with all w-dependence lost, or
not exiting within the horizon, is NOT_CONFINED.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import LawSyntaxError, NonIntegerExponent, ResourceLimit
from .mappings import XC, XM, AsymSystem, SymmetricMap, YC, YM
from .poly import MPoly
from .ratfunc import RatFunc

EPS, W = "eps", "w"


@dataclass
class ParamSeq:
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    periodic_parts: list = field(default_factory=list)   # (m, tuple of m Fractions, zero mean)
    anti_parts: list = field(default_factory=list)       # (m, tuple of m Fractions)
    power_terms: list = field(default_factory=list)      # (base Fraction, coeff Fraction): c*b^n
    poly_terms: list = field(default_factory=list)       # (k >= 2, coeff): c*n^k
    multiplicative: bool = False

    def __post_init__(self):
        for m, seq in self.periodic_parts:
            if len(seq) != m:
                raise ValueError(f"period-{m} part needs {m} values")
            if sum(seq, Fraction(0)) != 0:
                raise ValueError("periodic part must be zero-mean "
                                 "(the constant mode belongs to beta)")
        for m, seq in self.anti_parts:
            if len(seq) != m:
                raise ValueError(f"half-period-{m} anti part needs {m} values")

    def __call__(self, n: int) -> Fraction:
        return self.value(n)

    def value(self, n: int) -> Fraction:
        """alpha*n + beta plus periodic/anti-periodic contributions (this is
        the log-value when `multiplicative` is set)."""
        v = self.alpha * n + self.beta
        for m, seq in self.periodic_parts:
            v += seq[n % m]
        for m, seq in self.anti_parts:
            v += seq[n % m] * (-1) ** (n // m)
        for k, c in self.poly_terms:
            v += c * Fraction(n) ** k
        for b, c in self.power_terms:
            if n >= 0:
                v += c * b ** n
            else:
                v += c / b ** (-n)
        return v

    def multiplicative_value(self, n: int, base="q") -> RatFunc:
        """q^(log-law value); the exponent must be an integer at each n."""
        e = self.value(n)
        if e.denominator != 1:
            raise NonIntegerExponent(f"exponent {e} at n={n} is not an integer")
        e = e.numerator
        q = MPoly.var(base)
        if e >= 0:
            return RatFunc(q ** e)
        return RatFunc(MPoly.const(1), q ** (-e))


def param_eval(p: ParamSeq, n: int) -> Fraction:
    return p.value(n)


# ---------------- law mini-language ----------------
#   law   := term (('+'|'-') term)*
#   term  := RAT | RAT '*' core | core | RAT '^' 'n'
#   core  := 'n' ('^' INT)? | 'per'M '(' rats ')' | 'chi'M '(' rats ')'
#   q^( law )  -> multiplicative law (value is the exponent law)

_LAW_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^(),]))")


def _law_tokens(s):
    pos, out = 0, []
    while pos < len(s):
        m = _LAW_TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip():
                raise LawSyntaxError(f"bad law syntax near {s[pos:]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _LawParser:
    def __init__(self, s):
        self.toks = _law_tokens(s)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def rational(self):
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        kind, val = self.take()
        if kind != "int":
            raise LawSyntaxError("expected a number")
        num = val
        den = 1
        if self.peek() == ("op", "/"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise LawSyntaxError("expected denominator")
            den = val
        return Fraction(sign * num, den)

    def rat_list(self):
        self.expect("(")
        vals = [self.rational()]
        while self.peek() == ("op", ","):
            self.take()
            vals.append(self.rational())
        self.expect(")")
        return vals

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise LawSyntaxError(f"expected {op!r}")

    def parse(self) -> ParamSeq:
        if self.peek() == ("name", "q"):
            save = self.i
            self.take()
            if self.peek() == ("op", "^"):
                self.take()
                self.expect("(")
                inner = self.law()
                self.expect(")")
                if self.peek() != ("end", None):
                    raise LawSyntaxError("trailing input after q^(...)")
                inner.multiplicative = True
                return inner
            self.i = save
        law = self.law()
        if self.peek() != ("end", None):
            raise LawSyntaxError(f"trailing input near {self.peek()!r}")
        return law

    def law(self) -> ParamSeq:
        seq = ParamSeq()
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -1
        self.term(seq, sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            self.term(seq, sign)
        return seq

    def term(self, seq: ParamSeq, sign):
        kind, val = self.peek()
        if kind == "int":
            r = self.rational()
            if self.peek() == ("op", "*"):
                self.take()
                self.core(seq, r * sign)
            elif self.peek() == ("op", "^"):
                self.take()
                kind, val = self.take()
                if (kind, val) != ("name", "n"):
                    raise LawSyntaxError("only c^n exponentials are supported")
                if r <= 0:
                    raise LawSyntaxError("exponential base must be positive")
                seq.power_terms.append((r, Fraction(sign)))
            else:
                seq.beta += r * sign
            return
        self.core(seq, Fraction(sign))

    def core(self, seq: ParamSeq, coeff):
        kind, val = self.take()
        if kind != "name":
            raise LawSyntaxError(f"unexpected {val!r} in law")
        if val == "n":
            k = 1
            if self.peek() == ("op", "^"):
                self.take()
                kind2, v2 = self.take()
                if kind2 != "int":
                    raise LawSyntaxError("n^k needs integer k")
                k = v2
            if k == 1:
                seq.alpha += coeff
            else:
                seq.poly_terms.append((k, coeff))
            return
        m = re.fullmatch(r"(per|chi)(\d+)", val)
        if not m:
            raise LawSyntaxError(f"unknown law construct {val!r}")
        kindname, period = m.group(1), int(m.group(2))
        vals = [v * coeff for v in self.rat_list()]
        if kindname == "per":
            seq.periodic_parts.append((period, tuple(vals)))
            if sum(vals, Fraction(0)) != 0:
                raise LawSyntaxError("per part must be zero-mean")
        else:
            seq.anti_parts.append((period, tuple(vals)))


def parse_law(s: str) -> ParamSeq:
    return _LawParser(s).parse()


# ---------------- confinement probe ----------------

@dataclass
class ConfinementProbe:
    """Steer the orbit into a singular value at a chosen state component.

    component: 'a' puts (singular_value + eps) in the state's first slot with
    the second slot generic (= w); 'b' the reverse.
    """
    singular_value: Fraction
    component: str = "a"
    eps_sign: int = 1


INF = "INF"


def _limit(rf: RatFunc):
    """eps->0 limit of a normalized RatFunc in (eps, w): a RatFunc in w, or INF."""
    den0 = rf.den.subs_values({EPS: 0})
    if den0.is_zero():
        return INF
    num0 = rf.num.subs_values({EPS: 0})
    return RatFunc(num0, den0)


def _w_dependent(lim):
    return lim is not INF and not lim.free_of([W])


def confinement_check(system, probe: ConfinementProbe, horizon=30, n0=0):
    """Run the eps-deformed orbit through the singularity.

    Returns a report dict: verdict CONFINED / NOT_CONFINED / RESOURCE_LIMIT,
    the entry pattern (which steps were infinite at eps=0), the exit step and
    recovered state when confined."""
    if horizon > 30:
        raise ValueError("horizon must be <= 30")
    eps = RatFunc.var(EPS) * probe.eps_sign
    wv = RatFunc.var(W)
    sing = RatFunc.const(probe.singular_value) + eps
    if probe.component == "a":
        cur, prev = sing, wv
    else:
        cur, prev = wv, sing
    pattern = []
    report = {"verdict": None, "pattern": pattern, "exit_step": None,
              "entry_state": None, "steps_run": 0}
    entered = False
    n = n0
    for k in range(1, horizon + 1):
        vals = system.param_values(n)
        try:
            if isinstance(system, AsymSystem):
                y = system.update_b.subs_values(vals) if vals else system.update_b
                y = y.subs({YM: prev, XC: cur})
                xn = system.update_a.subs_values(vals) if vals else system.update_a
                nxt = xn.subs({XC: cur, YC: y})
                prev_next = y
            else:
                u = system.update.subs_values(vals) if vals else system.update
                nxt = u.subs({XC: cur, XM: prev})
                prev_next = cur
        except ResourceLimit:
            report["verdict"] = "RESOURCE_LIMIT"
            report["steps_run"] = k - 1
            return report
        la, lb = _limit(nxt), _limit(prev_next)
        if la is INF or lb is INF:
            entered = True
            pattern.append(k)
        elif entered:
            dep = _w_dependent(la) or _w_dependent(lb)
            report["exit_step"] = k
            report["steps_run"] = k
            report["entry_state"] = (la.text(), lb.text())
            report["verdict"] = "CONFINED" if dep else "NOT_CONFINED"
            report["memory"] = bool(dep)
            return report
        prev, cur = prev_next, nxt
        n += 1
        report["steps_run"] = k
    report["verdict"] = "NOT_CONFINED"
    report["reason"] = "no exit within horizon" if entered else "never entered singularity"
    return report


# ---------------- degree growth ----------------

def degree_growth(system: SymmetricMap, N=15, x0=Fraction(2, 3)):
    """Iterate symbolically on (x_0, x_1) = (x0, w); record deg_w of each
    iterate and classify growth."""
    if N > 25:
        raise ValueError("N must be <= 25")
    prev = RatFunc.const(x0)
    cur = RatFunc.var(W)
    degs = [0, 1]
    truncated = False
    n = 1
    for _ in range(N - 1):
        vals = system.param_values(n)
        try:
            u = system.update.subs_values(vals) if vals else system.update
            nxt = u.subs({XC: cur, XM: prev})
        except ResourceLimit:
            truncated = True
            break
        degs.append(max(nxt.num.degree_in(W), nxt.den.degree_in(W)))
        prev, cur = cur, nxt
        n += 1
    cls = classify_growth(degs)
    return {"degrees": degs, "classification": cls, "truncated": truncated}


def classify_growth(degs):
    if len(degs) < 5:
        return "undetermined"
    tail = degs[-5:]
    d1 = [b - a for a, b in zip(tail, tail[1:])]
    if all(d == 0 for d in d1):
        return "bounded"
    window = degs[-7:] if len(degs) >= 7 else degs
    d1 = [b - a for a, b in zip(window, window[1:])]
    d2 = [b - a for a, b in zip(d1, d1[1:])]
    if len(set(d2)) == 1:
        return "bounded" if d2[0] == 0 and d1[-1] == 0 else "polynomial"
    k = min(6, len(degs) - 1)
    if degs[-1 - k] > 0:
        ratio = (degs[-1] / degs[-1 - k]) ** (1 / k)
        if ratio > 1.2:
            return "exponential"
    return "undetermined"
