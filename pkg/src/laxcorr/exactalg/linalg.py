"""Fraction-free linear dependence over multivariate polynomial rings.

Items are vectors over the rational-function field.  Each item is scaled by the
lcm of its denominators, then rows are added one at a time to an incremental
Bareiss elimination that also carries the identity block, so the first row that
reduces to zero yields the combination coefficients directly.  Every pivot
division is checked for exactness.

The kernel at the first dependency is one-dimensional, so after removing the
polynomial gcd, the integer content and the sign the result is canonical and
independent of the pivot choices.
"""

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import AlgebraError, ResourceLimitError
from .poly import MPoly, ctx_for, sort_vars, to_fmpq
from .ratfunc import RatFunc


@dataclass(frozen=True)
class DependencyResult:
    order: int
    coefficients: tuple
    certificate: bool
    pivots: tuple = field(default=(), compare=False)

    def __iter__(self):
        return iter(self.coefficients)


def _lcm(a, b):
    return a.exact_div(a.gcd(b)) * b


def clear_denominators(vec):
    """Scale a vector of RatFunc to polynomials: jointly primitive, sign-normalized."""
    vec = [RatFunc.coerce(v) for v in vec]
    d = MPoly.const(1)
    for v in vec:
        if not v.den.is_one():
            d = _lcm(d, v.den)
    polys = [v.num * d.exact_div(v.den) for v in vec]
    return normalize_vector(polys)


def normalize_vector(polys):
    """Divide by the polynomial gcd and integer content; last nonzero entry positive-led."""
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        return list(polys)
    g = nz[0]
    for p in nz[1:]:
        if g.is_constant():
            break
        g = g.gcd(p)
    if not g.is_constant():
        polys = [p.exact_div(g) for p in polys]
    num = 0
    den = 1
    from math import gcd, lcm

    for p in polys:
        for _, c in p.terms():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
    scale = Fraction(den, num)
    last = next(p for p in reversed(polys) if not p.is_zero())
    if last.leading_coefficient() < 0:
        scale = -scale
    return [p.scale(scale).trimmed() for p in polys]


def _mem_cap_bytes():
    v = os.environ.get("LAXCORR_MAX_MB")
    if not v:
        return None
    return float(v) * 1024 * 1024


def _deglex_key(p):
    # smaller is preferred
    mon = next(iter(p.monoms()))
    return (int(p.total_degree()), tuple(int(e) for e in mon))


class Elimination:
    """Incremental fraction-free elimination; feed items with :meth:`add`."""

    def __init__(self, forced_pivots=None):
        self.vars = ()
        self.ctx = ctx_for(())
        self.rows = []  # (col, pivot, reduced row, tracking row)
        self.dens = []
        self.items = []
        self.forced = list(forced_pivots) if forced_pivots is not None else None
        self.cap = _mem_cap_bytes()

    def _relift(self, vars):
        ctx = ctx_for(vars)
        self.rows = [
            (c, p.project_to_context(ctx), [a.project_to_context(ctx) for a in r],
             [a.project_to_context(ctx) for a in t])
            for c, p, r, t in self.rows
        ]
        self.dens = [d.project_to_context(ctx) for d in self.dens]
        self.vars, self.ctx = vars, ctx

    def _estimate_bytes(self):
        terms = sum(len(a) for _, _, r, t in self.rows for a in r + t)
        return terms * (8 * (len(self.vars) + 1) + 48)

    def add(self, vec):
        """Append one item; return a DependencyResult at the first dependency, else None."""
        vec = [RatFunc.coerce(v) for v in vec]
        if self.items and len(vec) != len(self.items[0]):
            raise AlgebraError("items must have equal length")
        self.items.append(vec)
        names = set(self.vars)
        for v in vec:
            names.update(v.num.vars)
            names.update(v.den.vars)
        vars = sort_vars(names)
        if vars != self.vars:
            self._relift(vars)
        ctx = self.ctx
        d = MPoly.const(1)
        for v in vec:
            if not v.den.is_one():
                d = _lcm(d, v.den)
        w = [(v.num * d.exact_div(v.den)).lift(vars) for v in vec]
        dk = d.lift(vars)
        self.dens.append(dk)
        k = len(self.items) - 1
        zero = ctx.from_dict({})
        one = ctx.from_dict({(0,) * len(vars): to_fmpq(1)})
        t = [zero] * k + [one]
        prev = one
        for col, piv, r, tr in self.rows:
            a = w[col]
            try:
                if a.is_zero():
                    w = [x * piv / prev for x in w]
                    t = [x * piv / prev for x in t]
                else:
                    w = [(x * piv - a * y) / prev for x, y in zip(w, r)]
                    tr = tr + [zero] * (len(t) - len(tr))
                    t = [(x * piv - a * y) / prev for x, y in zip(t, tr)]
            except Exception as exc:
                raise AlgebraError("non-exact division in fraction-free elimination") from exc
            prev = piv
        if all(x.is_zero() for x in w):
            return self._finish(t)
        if self.forced is not None:
            col = self.forced[len(self.rows)]
            if w[col].is_zero():
                raise AlgebraError("unlucky evaluation point: forced pivot vanished")
        else:
            cands = [(_deglex_key(x), j) for j, x in enumerate(w) if not x.is_zero()]
            col = min(cands)[1]
        self.rows.append((col, w[col], w, t))
        if self.cap is not None and self._estimate_bytes() > self.cap:
            raise ResourceLimitError(
                f"elimination state exceeds LAXCORR_MAX_MB={os.environ.get('LAXCORR_MAX_MB')}; "
                "try evaluation-interpolation mode (--interp-degree)"
            )
        return None

    def raw_cofactors(self, t):
        return [MPoly(self.vars, x) for x in t]

    def _finish(self, t):
        self.last_cofactors = self.raw_cofactors(t)
        alpha = [MPoly(self.vars, x * dk) for x, dk in zip(t, self.dens)]
        alpha = normalize_vector(alpha)
        ok = recombine_is_zero(alpha, self.items)
        if not ok:
            raise AlgebraError("certificate check failed")
        return DependencyResult(len(alpha) - 1, tuple(alpha), True,
                                tuple(c for c, _, _, _ in self.rows))


def recombine_is_zero(alpha, items):
    """Exact check that sum_k alpha_k * items[k] is the zero vector."""
    m = len(items[0])
    for j in range(m):
        acc = RatFunc.const(0)
        for a, it in zip(alpha, items):
            if not a.is_zero() and not it[j].is_zero():
                acc = acc + RatFunc.coerce(a) * it[j]
        if not acc.is_zero():
            return False
    return True


def linear_dependence(items):
    """Minimal-order dependency among the items, or None when independent."""
    if not items:
        raise AlgebraError("linear_dependence needs a nonempty list")
    el = Elimination()
    for vec in items:
        res = el.add(vec)
        if res is not None:
            return res
    return None


def linear_dependence_interp(items, spectators, degree, seed=0, attempts=3):
    """Evaluation-interpolation variant.

    Spectator variables are specialized on a tensor grid of ``degree + 1``
    rationals each; the elimination cofactors (whose per-variable degree must
    not exceed ``degree``) are Newton-interpolated and the final relation is
    re-verified symbolically.
    """
    items = [[RatFunc.coerce(v) for v in vec] for vec in items]
    spectators = list(spectators)
    polys = []
    dens = []
    for vec in items:
        d = MPoly.const(1)
        for v in vec:
            if not v.den.is_one():
                d = _lcm(d, v.den)
        polys.append([v.num * d.exact_div(v.den) for v in vec])
        dens.append(d)
    rng = random.Random(seed)
    for _ in range(attempts):
        pts = {s: rng.sample(range(-10 ** 6, 10 ** 6), degree + 1) for s in spectators}
        generic = {s: Fraction(rng.randrange(1, 10 ** 9), rng.randrange(1, 997)) for s in spectators}
        el = Elimination()
        probe = None
        for vec in polys:
            probe = el.add([RatFunc.coerce(p.subs(generic)) for p in vec])
            if probe is not None:
                break
        if probe is None:
            return None
        K = probe.order
        pivots = list(probe.pivots)
        try:
            table = {}
            for idx in _grid(len(spectators), degree + 1):
                at = {s: Fraction(pts[s][i]) for s, i in zip(spectators, idx)}
                fel = Elimination(forced_pivots=pivots)
                res = None
                for vec in polys[:K + 1]:
                    res = _add_raw(fel, [RatFunc.coerce(p.subs(at)) for p in vec])
                    if res is not None:
                        break
                if res is None or len(res) != K + 1:
                    raise AlgebraError("unlucky evaluation point")
                table[idx] = res
        except AlgebraError as exc:
            if "unlucky" in str(exc):
                continue
            raise
        cof = []
        for j in range(K + 1):
            cof.append(_newton(spectators, pts, {i: v[j] for i, v in table.items()}))
        alpha = normalize_vector([c * d for c, d in zip(cof, dens[:K + 1])])
        if all(a.is_zero() for a in alpha) or not recombine_is_zero(alpha, items[:K + 1]):
            raise AlgebraError(
                f"interpolated relation fails verification; degree bound {degree} is too low"
            )
        return DependencyResult(K, tuple(alpha), True, tuple(pivots))
    raise AlgebraError("no lucky evaluation points found")


def _add_raw(el, vec):
    # like Elimination.add but returns raw cofactors of the dependent row
    res = el.add(vec)
    if res is None:
        return None
    return el.last_cofactors


def _grid(m, n):
    if m == 0:
        yield ()
        return
    for i in range(n):
        for rest in _grid(m - 1, n):
            yield (i,) + rest


def _newton(spectators, pts, values):
    if not spectators:
        return values[()]
    s, rest = spectators[0], spectators[1:]
    xs = pts[s]
    col = [_newton(rest, pts, {k[1:]: v for k, v in values.items() if k[0] == i})
           for i in range(len(xs))]
    # divided differences
    dd = list(col)
    n = len(xs)
    for lvl in range(1, n):
        for i in range(n - 1, lvl - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]).scale(Fraction(1, xs[i] - xs[i - lvl]))
    x = MPoly.var(s)
    out = dd[-1]
    for i in range(n - 2, -1, -1):
        out = out * (x - xs[i]) + dd[i]
    return out
