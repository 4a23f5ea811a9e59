"""Differential rings with jet families.

A :class:`DiffRing` knows, for each named derivation, the derivative of every
variable it may meet.  Variables are either declared base symbols (constants
unless a rule says otherwise), the derivation variable itself, or members of a
jet family ``U_0, U_1, ...`` that shift under a chosen derivation.
"""

import re

from ..errors import UnderivableSymbolError
from .parsing import parse
from .ratfunc import ONE, ZERO, RatFunc

_JET = re.compile(r"^([A-Za-z][A-Za-z0-9]*)_(\d+)$")


def jet(family, k):
    return f"{family}_{k}"


class DiffRing:
    def __init__(self, base=(), jets=None, rules=None):
        self.base = tuple(base)
        # family -> derivation under which it shifts
        self.jets = dict(jets or {})
        # derivation -> {variable: RatFunc}
        self.rules = {d: {v: parse(e) for v, e in r.items()} for d, r in (rules or {}).items()}

    def with_rules(self, derivation, extra):
        rules = {d: dict(r) for d, r in self.rules.items()}
        rules.setdefault(derivation, {}).update({v: parse(e) for v, e in extra.items()})
        out = DiffRing(self.base, self.jets)
        out.rules = rules
        return out

    def jet_var(self, family, k):
        return RatFunc.var(jet(family, k))

    def derivative_of_var(self, v, d):
        rule = self.rules.get(d, {})
        if v in rule:
            return rule[v]
        if v == d:
            return ONE
        m = _JET.match(v)
        if m and m.group(1) in self.jets:
            fam, k = m.group(1), int(m.group(2))
            if self.jets[fam] == d:
                return RatFunc.var(jet(fam, k + 1))
            return ZERO
        if v in self.base:
            return ZERO
        raise UnderivableSymbolError(v, d)

    def derive(self, e, d):
        """Total derivative of a RatFunc (or matrix entrywise) along derivation d."""
        if hasattr(e, "map"):
            return e.map(lambda a: self.derive(a, d))
        e = RatFunc.coerce(e)
        if e.is_zero():
            return e
        out = ZERO
        dn = None
        for v in e.free_vars():
            dv = self.derivative_of_var(v, d)
            if dv.is_zero():
                continue
            part = e.num.derivative(v)
            if not e.den.is_one():
                part = part * e.den - e.num * e.den.derivative(v)
            term = RatFunc.coerce(part) * dv
            dn = term if dn is None else dn + term
        if dn is None:
            return out
        if e.den.is_one():
            return dn
        return dn / RatFunc(e.den * e.den)

