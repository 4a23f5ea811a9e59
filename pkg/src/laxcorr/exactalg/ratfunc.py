"""Reduced quotients of rational multivariate polynomials."""

from fractions import Fraction

from ..errors import AlgebraError
from .poly import MPoly, format_poly, pretty_poly


def _norm_den(num, den):
    # make den integer-primitive with positive leading coefficient
    c = den.content()
    if den.leading_coefficient() < 0:
        c = -c
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num, den


class RatFunc:
    """num/den with gcd(num, den) = 1 and den primitive, positive leading term."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.const(1)
        elif not isinstance(den, MPoly):
            den = MPoly.const(den)
        if not _reduced:
            if den.is_zero():
                raise AlgebraError("division by zero polynomial")
            if num.is_zero():
                num, den = MPoly.const(0), MPoly.const(1)
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                num, den = _norm_den(num, den)
            else:
                num = num.scale(1 / den.constant_value())
                den = MPoly.const(1)
        self.num = num
        self.den = den

    @classmethod
    def var(cls, name):
        return cls(MPoly.var(name), MPoly.const(1), _reduced=True)

    @classmethod
    def const(cls, c):
        return cls(MPoly.const(c), MPoly.const(1), _reduced=True)

    @staticmethod
    def coerce(v):
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, MPoly):
            return RatFunc(v, MPoly.const(1), _reduced=True)
        return RatFunc.const(Fraction(v))

    # arithmetic

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, _reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, _reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise AlgebraError("division by zero polynomial")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    # queries

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise AlgebraError("not a constant")
        return self.num.constant_value()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def free_vars(self):
        from .poly import sort_vars

        return sort_vars(self.num.free_vars() + self.den.free_vars())

    def normalized(self):
        return RatFunc(self.num, self.den)

    # calculus and substitution

    def derivative(self, name):
        dn = self.num.derivative(name)
        if self.den.is_one():
            return RatFunc(dn, self.den, _reduced=True)
        dd = self.den.derivative(name)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, mapping):
        """Substitute variables by rationals, polynomials or rational functions."""
        if any(isinstance(v, RatFunc) and not v.den.is_one() for v in mapping.values()):
            # homogenize through a common substitution one variable at a time
            out = self
            for k, v in mapping.items():
                out = out._subs_one(k, RatFunc.coerce(v))
            return out
        m = {k: (v.num if isinstance(v, RatFunc) else v) for k, v in mapping.items()}
        return RatFunc(self.num.subs(m), self.den.subs(m))

    def _subs_one(self, name, v):
        if v.den.is_one():
            return RatFunc(self.num.subs({name: v.num}), self.den.subs({name: v.num}))
        # p(a/b) = P(a, b)/b^deg p
        dn = self.num.degree(name)
        dd = self.den.degree(name)
        d = max(dn, dd, 0)
        return RatFunc(_homog(self.num, name, v, d), _homog(self.den, name, v, d))

    def evaluate(self, values, zero=0):
        return self.num.evaluate(values, zero) / self.den.evaluate(values, zero)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def pretty(self):
        if self.den.is_one():
            return pretty_poly(self.num)
        return f"({pretty_poly(self.num)})/({pretty_poly(self.den)})"


def _homog(p, name, v, d):
    # sum_k c_k(rest) a^k b^(d-k)
    out = MPoly.const(0)
    x = MPoly.var(name)
    rest = p
    k = 0
    # peel coefficients of successive powers of `name`
    coeffs = []
    while not rest.is_zero():
        c0 = rest.subs({name: 0})
        coeffs.append(c0)
        rest = (rest - c0).exact_div(x)
        k += 1
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * v.num ** k * v.den ** (d - k)
    return out


ZERO = RatFunc.const(0)
ONE = RatFunc.const(1)
