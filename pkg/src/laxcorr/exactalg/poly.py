"""Multivariate polynomials over the rationals.

Thin wrapper around ``flint.fmpq_mpoly``.  Each polynomial carries the tuple of
variable names it lives over; binary operations lift both operands to the
union of their variables.  Monomials are ordered graded-lexicographically with
the first variable most significant; the variable order is global and given by
:func:`var_key`.
"""

import re
from fractions import Fraction

import flint

from ..errors import AlgebraError

_X_NAME = re.compile(r"^x(\d*)$")
_CHUNK = re.compile(r"(\d+)")


def var_key(name):
    """Sort key: x, x1, x2, ... first, then the rest in natural order."""
    m = _X_NAME.match(name)
    if m:
        return (0, int(m.group(1) or -1), "")
    parts = tuple(int(c) if c.isdigit() else c.lower() for c in _CHUNK.split(name) if c)
    return (1, 0, tuple(str(p).zfill(12) if isinstance(p, int) else p for p in parts), name)


def sort_vars(names):
    return tuple(sorted(set(names), key=var_key))


def ctx_for(names):
    return flint.fmpq_mpoly_ctx.get(tuple(names), "deglex")


def to_fraction(c):
    return Fraction(int(c.p), int(c.q))


def to_fmpq(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


class MPoly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("vars", "p")

    def __init__(self, vars, p):
        self.vars = vars
        self.p = p

    @classmethod
    def const(cls, c):
        return cls((), ctx_for(()).from_dict({(): to_fmpq(c)}) if c else ctx_for(()).from_dict({}))

    @classmethod
    def var(cls, name):
        return cls((name,), ctx_for((name,)).gens()[0])

    @classmethod
    def from_terms(cls, vars, terms):
        vars = tuple(vars)
        order = sort_vars(vars)
        perm = [vars.index(v) for v in order]
        d = {}
        for mon, c in terms.items():
            key = tuple(mon[i] for i in perm)
            d[key] = d.get(key, 0) + Fraction(c)
        d = {k: to_fmpq(v) for k, v in d.items() if v}
        return cls(order, ctx_for(order).from_dict(d))

    # lifting

    def lift(self, vars):
        if vars == self.vars:
            return self.p
        return self.p.project_to_context(ctx_for(vars))

    def _pair(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        if self.vars == other.vars:
            return self.vars, self.p, other.p
        vars = sort_vars(self.vars + other.vars)
        return vars, self.lift(vars), other.lift(vars)

    def trimmed(self):
        """Drop variables that do not occur."""
        if not self.vars:
            return self
        unused = set(self.p.unused_gens())
        if not unused:
            return self
        vars = tuple(v for v in self.vars if v not in unused)
        return MPoly(vars, self.p.project_to_context(ctx_for(vars)))

    # arithmetic

    def __add__(self, other):
        vars, a, b = self._pair(other)
        return MPoly(vars, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        vars, a, b = self._pair(other)
        return MPoly(vars, a - b)

    def __rsub__(self, other):
        vars, a, b = self._pair(other)
        return MPoly(vars, b - a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.vars, self.p * to_fmpq(other))
        vars, a, b = self._pair(other)
        return MPoly(vars, a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(self.vars, -self.p)

    def __pow__(self, k):
        return MPoly(self.vars, self.p ** k)

    def exact_div(self, other):
        vars, a, b = self._pair(other)
        if b.is_zero():
            raise AlgebraError("division by zero polynomial")
        try:
            return MPoly(vars, a / b)
        except Exception as exc:
            raise AlgebraError("inexact polynomial division") from exc

    def gcd(self, other):
        vars, a, b = self._pair(other)
        return MPoly(vars, a.gcd(b))

    def scale(self, c):
        return MPoly(self.vars, self.p * to_fmpq(c))

    # queries

    def is_zero(self):
        return self.p.is_zero()

    def is_constant(self):
        return self.p.is_constant()

    def is_one(self):
        return self.p.is_one()

    def __bool__(self):
        return not self.p.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        _, a, b = self._pair(other)
        return a == b

    def __hash__(self):
        t = self.trimmed()
        return hash((t.vars, tuple(sorted((k, str(v)) for k, v in t.p.to_dict().items()))))

    def total_degree(self):
        """Total degree; -1 stands in for the degree of zero."""
        if self.p.is_zero():
            return -1
        return int(self.p.total_degree())

    def degree(self, name):
        if self.p.is_zero():
            return -1
        if name not in self.vars:
            return 0
        return int(self.p.degrees()[self.vars.index(name)])

    def free_vars(self):
        return self.trimmed().vars

    def terms(self):
        """List of (exponent tuple, Fraction) in descending graded-lex order."""
        return [(tuple(int(e) for e in m), to_fraction(c)) for m, c in self.p.terms()]

    def nterms(self):
        return len(self.p)

    def leading_term(self):
        t = self.terms()
        return t[0] if t else None

    def leading_coefficient(self):
        if self.p.is_zero():
            return Fraction(0)
        return to_fraction(self.p.leading_coefficient())

    def constant_value(self):
        if not self.p.is_constant():
            raise AlgebraError("polynomial is not constant")
        if self.p.is_zero():
            return Fraction(0)
        return to_fraction(self.p.leading_coefficient())

    def content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        from math import gcd, lcm

        cs = [to_fraction(c) for c in self.p.coeffs()]
        if not cs:
            return Fraction(1)
        num = 0
        den = 1
        for c in cs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """Integer-primitive part with positive leading coefficient."""
        if self.p.is_zero():
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    # calculus and substitution

    def derivative(self, name):
        if name not in self.vars:
            return MPoly((), ctx_for(()).from_dict({}))
        return MPoly(self.vars, self.p.derivative(name))

    def subs(self, mapping):
        """Substitute variables by rationals or polynomials."""
        mapping = {k: v for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        if all(isinstance(v, (int, Fraction)) for v in mapping.values()):
            return MPoly(self.vars, self.p.subs({k: to_fmpq(v) for k, v in mapping.items()}))
        images = {k: (v if isinstance(v, MPoly) else MPoly.const(v)) for k, v in mapping.items()}
        vars = sort_vars([v for v in self.vars if v not in mapping]
                         + [w for img in images.values() for w in img.vars])
        ctx = ctx_for(vars)
        gens = []
        for v in self.vars:
            if v in images:
                gens.append(images[v].lift(vars))
            else:
                gens.append(ctx.gens()[vars.index(v)])
        return MPoly(vars, self.p.compose(*gens, ctx=ctx))

    def rename(self, mapping):
        return self.subs({k: MPoly.var(v) for k, v in mapping.items()})

    def evaluate(self, values, zero=0):
        """Evaluate at arbitrary ring values (floats, mpmath numbers, ...)."""
        total = zero
        for mon, c in self.terms():
            # exact coefficient, or a value in the type of ``zero`` (e.g. mpf)
            term = c if isinstance(zero, Fraction) else (zero + c.numerator) / c.denominator
            for name, e in zip(self.vars, mon):
                if e:
                    term = term * values[name] ** e
            total = total + term
        return total

    # printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r})"


def format_poly(f):
    """Text in the input grammar; parses back to the same polynomial."""
    if f.p.is_zero():
        return "0"
    out = []
    for mon, c in f.terms():
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(f.vars, mon) if e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = str(a) + "*" + "*".join(factors)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def pretty_poly(f):
    """Compact human-readable text: implicit products, superscripts, U+2212 minus."""
    if f.p.is_zero():
        return "0"
    parts = []
    for mon, c in f.terms():
        factors = "".join(
            (v if e == 1 else v + str(e).translate(_SUP)) for v, e in zip(f.vars, mon) if e
        )
        a = abs(c)
        if not factors:
            body = str(a)
        elif a == 1:
            body = factors
        elif a.denominator == 1:
            body = f"{a}{factors}"
        else:
            body = f"({a}){factors}"
        parts.append(("−" if c < 0 else "+", body))
    s = ("−" if parts[0][0] == "−" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s
