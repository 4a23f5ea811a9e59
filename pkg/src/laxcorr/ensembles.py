"""One-matrix models: Jacobi data, the balanced-gauge Lax pair, and moments.

Everything is expressed in the monic ("balanced") gauge, in which the shift
operator is ``[[0, 1], [-u_N, x - S_N]]`` and only ``u_N = h_N / h_{N-1}``
appears, so no square roots enter the coefficient field.  Trace correlators
are unchanged by this constant conjugation.

The one-point function is expanded as ``W1 = -V'(x)/2 + sum_k t_k x^(-k-1)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import connection as conn_mod
from .connection import Connection, DiscreteSystem, check_discrete_lax
from .errors import AlgebraError, IncompatibleSystemError, ModelError
from .exactalg import MPoly, MatR, RatFunc, parse
from .exactalg.ratfunc import ONE, ZERO
from .relation import Relation


@dataclass(frozen=True)
class Potential:
    Vprime: RatFunc
    x: str = "x"

    def __post_init__(self):
        if self.Vprime.is_zero():
            raise ModelError("V' must be nonzero")

    @property
    def degree(self):
        return self.Vprime.num.degree(self.x)

    def coefficients(self):
        """v_0..v_d with V'(y) = sum v_k y^k (coefficients may carry parameters)."""
        if not self.Vprime.is_polynomial():
            raise ModelError("only polynomial V' is supported")
        p = self.Vprime.num
        d = self.degree
        out = []
        rest = p
        xv = MPoly.var(self.x)
        for _ in range(d + 1):
            c0 = rest.subs({self.x: 0})
            out.append(RatFunc.coerce(c0))
            rest = (rest - c0).exact_div(xv) if not (rest - c0).is_zero() else MPoly.const(0)
        return out


@dataclass(frozen=True)
class JacobiData:
    S: RatFunc
    u: RatFunc
    N: str = "N"

    def __post_init__(self):
        if self.u.is_zero():
            raise ModelError("u_N must not vanish identically")

    def S_at(self, k):
        return self.S.subs({self.N: RatFunc.var(self.N) + k}) if k else self.S

    def u_at(self, k):
        return self.u.subs({self.N: RatFunc.var(self.N) + k}) if k else self.u


def jacobi_gue(N="N"):
    return JacobiData(ZERO, RatFunc.var(N), N)


def gue_potential():
    return Potential(RatFunc.var("x"))


def shift_operator(jd, x="x"):
    """R^(N)(x) = [[0, 1], [-u_N, x - S_N]]."""
    return MatR([[ZERO, ONE], [-jd.u, RatFunc.var(x) - jd.S]])


def _jacobi_window(jd, half):
    # monic Jacobi matrix on indices N-1-half .. N+half
    lo = -1 - half
    idx = list(range(lo, half + 1))
    n = len(idx)
    rows = [[ZERO] * n for _ in range(n)]
    for a, k in enumerate(idx):
        rows[a][a] = jd.S_at(k)
        if a + 1 < n:
            rows[a][a + 1] = ONE
        if a > 0:
            rows[a][a - 1] = jd.u_at(k)
    return MatR(rows), idx.index(-1)


def w_window(pot, jd, half=None):
    """2x2 block (N-1, N) of (V'(x) - V'(Q)) / (x - Q) by Horner on a truncated band."""
    v = pot.coefficients()
    d = len(v) - 1
    half = d if half is None else half
    Q, a = _jacobi_window(jd, half)
    n = Q.size
    x = RatFunc.var(pot.x)
    # (V'(x) - V'(y))/(x - y) = sum_j c_j(x) y^j with c_j = sum_{k>j} v_k x^(k-1-j)
    c = []
    for j in range(d):
        acc = ZERO
        for k in range(j + 1, d + 1):
            acc = acc + v[k] * x ** (k - 1 - j)
        c.append(acc)
    W = MatR.zero(n)
    I = MatR.identity(n)
    for j in reversed(range(d)):
        W = W * Q + I * c[j]
    return MatR([[W[a, a], W[a, a + 1]], [W[a + 1, a], W[a + 1, a + 1]]])


def dmatrix(pot, jd):
    """D^(N)(x) = diag(V'/2, -V'/2) + w [[0, -1], [u_N, 0]] in the balanced gauge."""
    w = w_window(pot, jd)
    if w_window(pot, jd, len(pot.coefficients())) != w:
        raise AlgebraError("banded matrix function window is too small")
    half = pot.Vprime * Fraction(1, 2)
    J = MatR([[ZERO, -ONE], [jd.u, ZERO]])
    D = MatR([[half, ZERO], [ZERO, -half]]) + w * J
    if not D.trace().is_zero():
        raise AlgebraError("trace of D^(N) must vanish")
    return D


@dataclass(frozen=True)
class EnsembleSystem:
    potential: Potential
    jacobi: JacobiData
    D: MatR = field(compare=False)
    R: MatR = field(compare=False)

    @property
    def discrete(self):
        return DiscreteSystem(self.D, self.R, self.jacobi.N, self.potential.x)

    @property
    def connection(self):
        return Connection(self.D, "sl", self.potential.x, (self.jacobi.N,))


def ensemble_system(pot, jd):
    D = dmatrix(pot, jd)
    R = shift_operator(jd, pot.x)
    es = EnsembleSystem(pot, jd, D, R)
    if not check_discrete_lax(es.discrete).is_zero():
        raise IncompatibleSystemError("discrete Lax residual is nonzero for this potential and Jacobi data")
    return es


def gue_system(N="N"):
    return ensemble_system(gue_potential(), jacobi_gue(N))


def derive_all_w1(es):
    """x-ODE and N-recursion for W1 (gl pairing: E = diag(1, 0) is not traceless)."""
    ode = conn_mod.ode_w1(es.connection, algebra="gl")
    rec = conn_mod.rec_w1(es.discrete)
    return {"ode": ode, "rec": rec}


def normalized_gue_ode(g="g"):
    """GUE x-ODE in the normalized gauge with gamma_N = g, mapped back through N = g^2.

    Used as a cross-check of the balanced gauge: the result must coincide with
    the balanced-gauge ODE after substituting N = g^2.
    """
    x = RatFunc.var("x")
    gv = RatFunc.var(g)
    D = MatR([[x * Fraction(1, 2), -gv], [gv, -x * Fraction(1, 2)]])
    return conn_mod.ode_w1(Connection(D, "sl"), algebra="gl")


def derive_w2_wn(es, n, path="tensor", N_value=None, interp=None):
    """W_n ODE (x1) and N-recursion for the ensemble, E = diag(1, 0)."""
    from . import tensors

    out = {}
    if path == "tensor":
        out["ode"] = tensors.ode_wn_tensor(es.connection, n, interp=interp)
    else:
        out["ode"] = tensors.ode_wn_formal(es.connection, n)
    out["rec"] = tensors.rec_wn_tensor(es.discrete, n, N_value=N_value, interp=interp)
    return out


# moments


@dataclass(frozen=True)
class MomentRecursion:
    """sum_s c[s](K) t_{K-s} = rhs(K) for K >= 0."""

    c: dict  # s -> RatFunc in K (and parameters)
    rhs: dict  # K -> RatFunc
    K: str = "K"

    def coefficient(self, s, K):
        return self.c[s].subs({self.K: K}) if s in self.c else ZERO

    def moments(self, kmax, subs=None):
        """t_0..t_kmax, exact; ``subs`` specializes parameters (e.g. {'N': 2})."""
        t = []
        for K in range(kmax + 1):
            c0 = self.coefficient(0, K)
            acc = self.rhs.get(K, ZERO)
            for s in self.c:
                if s == 0 or K - s < 0:
                    continue
                acc = acc - self.coefficient(s, K) * t[K - s]
            if subs:
                c0 = c0.subs(subs)
                acc = acc.subs(subs)
            if c0.is_zero():
                raise AlgebraError(f"moment t_{K} is not determined by the recursion")
            t.append(acc / c0)
        return t


def _rising(a, j):
    out = ONE
    for i in range(j):
        out = out * (a + i)
    return out


def moment_recursion_from_ode(ode, pot):
    """Substitute W1 = -V'/2 + sum t_k x^(-k-1) into the ODE and collect powers of x."""
    x = pot.x
    P = pot.Vprime * Fraction(-1, 2)
    F = ZERO
    dP = P
    for a in ode.coefficients:
        F = F - RatFunc.coerce(a) * dP
        dP = dP.derivative(x)
    if not F.is_polynomial():
        raise AlgebraError("polynomial part is not polynomial")
    # a_{j,d}: coefficient of x^d in alpha_j, as RatFunc in parameters
    table = []
    for j, a in enumerate(ode.coefficients):
        for d, c in _x_coeffs(a, x).items():
            table.append((j, d, c))
    if not table:
        raise AlgebraError("empty ODE")
    e_max = max(d - 1 - j for j, d, _ in table)
    K = RatFunc.var("K")
    cs = {}
    for j, d, a in table:
        s = e_max - (d - 1 - j)
        term = a * (-1) ** j * _rising(K - s + 1, j)
        cs[s] = cs.get(s, ZERO) + term
    cs = {s: v for s, v in cs.items() if not v.is_zero()}
    Fc = _x_coeffs(F.num, x)
    for p, v in Fc.items():
        if p > e_max:
            raise AlgebraError("large-x expansion is inconsistent with the ODE")
    rhs = {e_max - p: v for p, v in Fc.items()}
    return MomentRecursion(cs, rhs)


def _x_coeffs(p, x):
    p = p.num if isinstance(p, RatFunc) else p
    out = {}
    xv = MPoly.var(x)
    rest = p
    d = 0
    while not rest.is_zero():
        c0 = rest.subs({x: 0})
        if not c0.is_zero():
            out[d] = RatFunc.coerce(c0)
        rest = (rest - c0).exact_div(xv)
        d += 1
    return out


@dataclass(frozen=True)
class CrossNIdentity:
    """sum_{k,d} c[(k, d)](N) t^(N+k)_{K+d} = 0 for every K >= 0."""

    c: dict
    N: str = "N"

    def residual(self, moments, N0, K):
        """moments(N, m) returns t_m^(N) exactly."""
        acc = Fraction(0)
        for (k, d), v in self.c.items():
            acc += v.subs({self.N: N0}).constant_value() * moments(N0 + k, K + d)
        return acc


def moment_recursion_in_N(rec, x="x"):
    if rec.kind != "rec-N":
        raise ValueError("expected an N-recursion")
    c = {}
    for k, a in enumerate(rec.coefficients):
        for d, v in _x_coeffs(a, x).items():
            c[(k, d)] = v
    return CrossNIdentity(c, rec.var)


def two_mm_derive(D, R, N="N", x="x", algebra="gl"):
    """Size-generic wrapper: x-ODE and N-recursion from user-supplied D^(N), R^(N)."""
    ds = DiscreteSystem(MatR(D.rows) if isinstance(D, MatR) else MatR(D),
                        MatR(R.rows) if isinstance(R, MatR) else MatR(R), N, x)
    ds.R.inverse()
    if not check_discrete_lax(ds).is_zero():
        raise IncompatibleSystemError("supplied pair is not compatible")
    ode = conn_mod.ode_w1(Connection(ds.D, "gl", x), algebra=algebra)
    rec = conn_mod.rec_w1(ds, algebra=algebra)
    return {"ode": ode, "rec": rec}


def relation_from_strings(kind, var, coeffs):
    return Relation(kind, var, tuple(parse(c).num for c in coeffs), True)
