"""Derived linear relations and their text/JSON renderings."""

from dataclasses import dataclass, field

from .exactalg import MPoly, format_poly, parse, pretty_poly

_PRIMES = {0: "", 1: "′", 2: "″", 3: "‴"}
_DOTS = {0: "", 1: "̇", 2: "̈", 3: "⃛"}
_SUP = str.maketrans("0123456789+-N()", "⁰¹²³⁴⁵⁶⁷⁸⁹⁺⁻ᴺ⁽⁾")

KINDS = ("ode-x", "ode-t", "rec-N", "pde-t")


@dataclass(frozen=True)
class Relation:
    """sum_k coefficients[k] * (k-th derivative or shift of W_n) = 0."""

    kind: str
    var: str
    coefficients: tuple
    certificate: bool
    n: int = 1
    mode: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def order(self):
        return len(self.coefficients) - 1

    def symbol(self, k):
        w = "W" if self.n == 1 else f"W{self.n}"
        if self.kind == "rec-N":
            return w + ("(N)" if k == 0 else f"(N+{k})").translate(_SUP)
        if self.kind in ("ode-t", "pde-t"):
            if k <= 3:
                return w + _DOTS[k]
            return w + f"({k})".translate(_SUP)
        if k <= 3:
            return w + _PRIMES[k]
        return w + f"({k})".translate(_SUP)

    def to_text(self):
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                parts.append("0")
                continue
            s = pretty_poly(c)
            if c.nterms() > 1 or s.startswith("−"):
                s = f"({s})"
            parts.append(f"{s}·{self.symbol(k)}")
        return " + ".join(parts) + " = 0"

    def to_latex(self):
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            body = format_poly(c).replace("*", " ")
            if self.kind == "rec-N":
                sym = "W^{(N)}" if k == 0 else f"W^{{(N+{k})}}"
            elif k == 0:
                sym = "W"
            else:
                sym = f"\\partial_{{{self.var}}}^{{{k}}} W"
            parts.append(f"\\left({body}\\right) {sym}")
        return " + ".join(parts) + " = 0"

    def coefficient_strings(self):
        return [format_poly(c) for c in self.coefficients]

    def proportional_to(self, other):
        """True when the coefficient vectors agree up to one nonzero rational factor."""
        other = [c if isinstance(c, MPoly) else parse(c).num for c in other]
        return proportional(self.coefficients, other)


def proportional(a, b):
    from .exactalg import RatFunc

    a = [c if isinstance(c, MPoly) else parse(c).num for c in a]
    b = [c if isinstance(c, MPoly) else parse(c).num for c in b]
    if len(a) != len(b):
        return False
    ratio = None
    for x, y in zip(a, b):
        if x.is_zero() != y.is_zero():
            return False
        if x.is_zero():
            continue
        r = RatFunc(x, y)
        if ratio is None:
            ratio = r
            if not r.is_constant():
                return False
        elif r != ratio:
            return False
    return ratio is not None


def proportional_up_to_function(a, b):
    """Agreement up to an overall nonzero rational function factor."""
    from .exactalg import RatFunc

    a = [c if isinstance(c, MPoly) else parse(c).num for c in a]
    b = [c if isinstance(c, MPoly) else parse(c).num for c in b]
    if len(a) != len(b):
        return False
    ratio = None
    for x, y in zip(a, b):
        if x.is_zero() != y.is_zero():
            return False
        if x.is_zero():
            continue
        r = RatFunc(x, y)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is not None
