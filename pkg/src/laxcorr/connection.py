"""Derivation engine for one-point correlators.

``W1(x.E) = Tr D(x) M(x.E)`` with ``M' = [D, M]``, so the k-th x-derivative of
W1 is ``Tr D_k M`` where ``D_{k+1} = D_k' + [D_k, D]``.  A linear dependency
among the D_k over the rational functions in x gives an ODE for W1 that holds
for every choice of E.  The same idea runs along a time flow and along a
discrete shift in N.
"""

from dataclasses import dataclass, field

from .errors import AlgebraError, IncompatibleSystemError
from .exactalg import DiffRing, Elimination, MatR, RatFunc, linear_dependence_interp
from .relation import Relation


@dataclass(frozen=True)
class Connection:
    D: MatR
    algebra: str = "gl"
    x: str = "x"
    params: tuple = ()

    def __post_init__(self):
        if self.algebra not in ("gl", "sl"):
            raise ValueError(f"unknown algebra tag {self.algebra!r}")
        if self.algebra == "sl" and not self.D.trace().is_zero():
            raise ValueError("sl connection must be traceless")

    @property
    def size(self):
        return self.D.size

    @property
    def dim(self):
        r = self.size
        return r * r - (1 if self.algebra == "sl" else 0)


@dataclass(frozen=True)
class TimeSystem:
    """x-connection plus time flows; ``scale`` multiplies each t-derivation (e.g. hbar)."""

    base: Connection
    flows: tuple  # ((t_name, R_j), ...)
    ring: DiffRing = field(default_factory=DiffRing)
    scale: object = None

    def flow(self, j):
        if isinstance(j, str):
            for name, R in self.flows:
                if name == j:
                    return name, R
            raise KeyError(j)
        return self.flows[j]

    def derive(self, M, t):
        # x and the connection parameters are constants unless a rule says otherwise
        out = self.ring.derive(M, t)
        return out if self.scale is None else out * self.scale

    def lax_first(self, j):
        # first chain step on solutions of the Lax equation: scale * dR_j/dx
        _, Rj = self.flow(j)
        d = Rj.derivative(self.base.x)
        return d if self.scale is None else d * self.scale


@dataclass(frozen=True)
class DiscreteSystem:
    D: MatR
    R: MatR
    N: str = "N"
    x: str = "x"

    def shift(self, M, k=1):
        return M.subs({self.N: RatFunc.var(self.N) + k})


def pairing_vector(M, algebra="gl"):
    """Coordinates of M seen by Tr(. E): all entries for gl, traceless part for sl."""
    if algebra == "gl":
        return M.flatten()
    r = M.size
    v = [M[i, j] for i in range(r) for j in range(r) if i != j]
    v += [M[i, i] - M[i + 1, i + 1] for i in range(r - 1)]
    return v


def derived_sequence(conn, kmax):
    """D_0 = D, D_{k+1} = D_k' + [D_k, D]."""
    out = [conn.D]
    for _ in range(kmax):
        Dk = out[-1]
        out.append(Dk.derivative(conn.x) + Dk.commutator(conn.D))
    check_trace_telescoping(out, conn.x)
    return out


def check_trace_telescoping(seq, x="x", derive=None):
    derive = derive or (lambda a: a.derivative(x))
    for a, b in zip(seq, seq[1:]):
        if b.trace() != derive(a.trace()):
            raise AlgebraError("trace telescoping violated")


def _dependence(mats, algebra, bound, interp=None):
    if interp is not None:
        spectators, degree = interp
        items = [pairing_vector(M, algebra) for M in mats]
        res = linear_dependence_interp(items, spectators, degree)
    else:
        el = Elimination()
        res = None
        for M in mats:
            res = el.add(pairing_vector(M, algebra))
            if res is not None:
                break
    if res is None:
        raise AlgebraError(f"no dependency found within the bound {bound}")
    return res


def _lazy(first, step, count):
    M = first
    yield M
    for _ in range(count - 1):
        M = step(M)
        yield M


def ode_w1(conn, interp=None, algebra=None):
    """Minimal-order linear ODE in x satisfied by W1(x.E) for every E."""
    algebra = algebra or conn.algebra
    bound = conn.dim
    seq = []

    def step(M):
        return M.derivative(conn.x) + M.commutator(conn.D)

    if interp is None:
        el = Elimination()
        res = None
        for M in _lazy(conn.D, step, bound + 1):
            seq.append(M)
            res = el.add(pairing_vector(M, algebra))
            if res is not None:
                break
        if res is None:
            raise AlgebraError(f"no dependency found within dim g = {bound}")
    else:
        seq = derived_sequence(conn, bound)
        res = _dependence(seq, algebra, bound, interp)
    check_trace_telescoping(seq, conn.x)
    return Relation("ode-x", conn.x, res.coefficients, res.certificate)


def time_sequence(ts, j, kmax, lax_first=False):
    """R_{j,0} = D, R_{j,k+1} = d/dt_j R_{j,k} + [R_{j,k}, R_j].

    With ``lax_first`` the first step is replaced by its value modulo the Lax
    equation, which keeps the jets free afterwards.
    """
    t, Rj = ts.flow(j)
    out = [ts.base.D]
    for k in range(kmax):
        Rk = out[-1]
        if k == 0 and lax_first:
            out.append(ts.lax_first(j))
        else:
            out.append(ts.derive(Rk, t) + Rk.commutator(Rj))
    return out


def time_ode_w1(ts, j=0, algebra=None, lax_first=False):
    """Minimal-order linear ODE in t_j for W1."""
    algebra = algebra or ts.base.algebra
    t, Rj = ts.flow(j)
    bound = ts.base.dim
    el = Elimination()
    seq = [ts.base.D]
    for k in range(bound + 1):
        if k == 1 and lax_first:
            seq.append(ts.lax_first(j))
        elif k:
            seq.append(ts.derive(seq[-1], t) + seq[-1].commutator(Rj))
        res = el.add(pairing_vector(seq[-1], algebra))
        if res is not None:
            if not lax_first:
                check_trace_telescoping(seq, derive=lambda a: ts.derive(a, t))
            return Relation("ode-t", t, res.coefficients, res.certificate,
                            extra={"form": "lax" if lax_first else "raw"})
    raise AlgebraError(f"no dependency found within dim g = {bound}")


def check_discrete_lax(ds):
    """D^(N+1) R - R D - R'; zero iff the ODE and the recursion are compatible."""
    return ds.shift(ds.D) * ds.R - ds.R * ds.D - ds.R.derivative(ds.x)


def discrete_sequence(ds, kmax):
    """D_k^(N) = (R^(N,k))^-1 D^(N+k) R^(N,k) via D_{k+1} = R^-1 shift(D_k) R."""
    Rinv = ds.R.inverse()
    out = [ds.D]
    for _ in range(kmax):
        out.append(Rinv * ds.shift(out[-1]) * ds.R)
    return out


def rec_w1(ds, override=False, N_value=None, algebra="gl"):
    """Minimal-order linear recursion in N for W1^(N)."""
    res = check_discrete_lax(ds)
    if not res.is_zero() and not override:
        raise IncompatibleSystemError("discrete Lax residual is nonzero")
    if N_value is not None:
        return _rec_fixed_N(ds, N_value, algebra)
    Rinv = ds.R.inverse()
    bound = ds.D.size ** 2
    el = Elimination()
    M = ds.D
    for k in range(bound + 1):
        if k:
            M = Rinv * ds.shift(M) * ds.R
        out = el.add(pairing_vector(M, algebra))
        if out is not None:
            return Relation("rec-N", ds.N, out.coefficients, out.certificate)
    raise AlgebraError(f"no recursion found within order {bound}")


def _rec_fixed_N(ds, N0, algebra):
    # D^(N0+k) and R^(N0+k) are specialized one by one; no symbolic N survives
    bound = ds.D.size ** 2
    el = Elimination()
    Rk = MatR.identity(ds.D.size)
    for k in range(bound + 1):
        Dk = ds.D.subs({ds.N: N0 + k})
        M = Rk.inverse() * Dk * Rk
        out = el.add(pairing_vector(M, algebra))
        if out is not None:
            return Relation("rec-N", ds.N, out.coefficients, out.certificate, extra={"N": N0})
        Rk = ds.R.subs({ds.N: N0 + k}) * Rk
    raise AlgebraError(f"no recursion found within order {bound}")
