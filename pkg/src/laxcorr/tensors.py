"""n-point correlators through multilinear forms on gl(r).

``W_n(X_1..X_n) = Q_{0,n}(M(X_1), ..., M(X_n))`` where ``Q_{0,n}`` is the
signed sum over cyclic permutations.  Derivatives in x_1 act on the first slot
only, shifts in N act on every slot by the adjoint action of the shift
operator, and time flows act on every slot through R_j(t; x_i).

A :class:`TensorW` is a sparse map from n-tuples of index pairs to RatFunc.
"""

from itertools import permutations, product
from math import prod

from .connection import Connection, TimeSystem, check_discrete_lax, pairing_vector
from .errors import AlgebraError, IncompatibleSystemError
from .exactalg import Elimination, MatR, RatFunc, linear_dependence_interp
from .exactalg.ratfunc import ONE, ZERO
from .relation import Relation


def xvar(i):
    return f"x{i}"


class TensorW:
    __slots__ = ("n", "r", "entries")

    def __init__(self, n, r, entries=None):
        self.n = n
        self.r = r
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def __eq__(self, other):
        return isinstance(other, TensorW) and (self.n, self.r, self.entries) == (other.n, other.r, other.entries)

    def __hash__(self):
        return hash((self.n, self.r, frozenset(self.entries.items())))

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return TensorW(self.n, self.r, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = RatFunc.coerce(c)
        return TensorW(self.n, self.r, {k: v * c for k, v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def map(self, f):
        return TensorW(self.n, self.r, {k: f(v) for k, v in self.entries.items()})

    def derivative(self, name):
        return self.map(lambda v: v.derivative(name))

    def subs(self, mapping):
        return self.map(lambda v: v.subs(mapping))

    def __repr__(self):
        return f"TensorW(n={self.n}, r={self.r}, nnz={len(self.entries)})"


def build_q0n(n, r, xs=None):
    """Sum over one-cycle permutations sigma of sign(sigma) prod_i e_{l_i l_sigma(i)} / prod_i (x_i - x_sigma(i))."""
    if n < 1:
        raise ValueError("n must be positive")
    xs = list(xs or [xvar(i + 1) for i in range(n)])
    X = [RatFunc.var(v) for v in xs]
    out = {}
    sign = -1 if (n - 1) % 2 else 1
    for rest in permutations(range(1, n)):
        if n == 1:
            break
        cyc = (0,) + rest
        sigma = [0] * n
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            sigma[a] = b
        den = ONE
        for i in range(n):
            den = den * (X[i] - X[sigma[i]])
        c = RatFunc.const(sign) / den
        for ls in product(range(r), repeat=n):
            key = tuple((ls[i], ls[sigma[i]]) for i in range(n))
            out[key] = out.get(key, ZERO) + c
    return TensorW(n, r, out)


def contract(Q, mats):
    """Q(M_1, ..., M_n) as a ring element."""
    if len(mats) != Q.n or any(M.size != Q.r for M in mats):
        raise ValueError("contraction needs n matrices of size r")
    acc = ZERO
    for key, v in Q.entries.items():
        term = v
        for M, (i, j) in zip(mats, key):
            m = M[i, j]
            if m.is_zero():
                term = None
                break
            term = term * m
        if term is not None:
            acc = acc + term
    return acc


def partial_contract(Q, mats, keep=0):
    """Contract every slot except ``keep``; returns the matrix D with Tr(D M) = Q(.., M, ..)."""
    r = Q.r
    rows = [[ZERO] * r for _ in range(r)]
    for key, v in Q.entries.items():
        term = v
        for s, (M, (i, j)) in enumerate(zip(mats, key)):
            if s == keep:
                continue
            term = term * M[i, j]
        i, j = key[keep]
        rows[j][i] = rows[j][i] + term
    return MatR(rows)


def _slot_update(Q, slot, f):
    # f(i, j) -> list of ((i', j'), coeff): new[.., (i',j'), ..] += coeff * old[.., (i,j), ..]
    out = {}
    for key, v in Q.entries.items():
        for ij, c in f(*key[slot]):
            if c.is_zero():
                continue
            k2 = key[:slot] + (ij,) + key[slot + 1:]
            out[k2] = out.get(k2, ZERO) + v * c
    return TensorW(Q.n, Q.r, out)


def slot_commutator(Q, A, slot):
    """[Q, A]_slot: the functional M -> Q(.., [A, M], ..) in that slot."""
    r = Q.r

    def f(i, j):
        # Q[i,j] contributes to new[l,j] with A[i,l] and to new[i,l] with -A[l,j]
        out = [((l, j), A[i, l]) for l in range(r)]
        out += [((i, l), -A[l, j]) for l in range(r)]
        return out

    return _slot_update(Q, slot, f)


def slot_pullback(Q, A, slot, Ainv=None):
    """The functional M -> Q(.., A M A^-1, ..) in that slot."""
    B = Ainv if Ainv is not None else A.inverse()
    r = Q.r

    def f(i, j):
        return [((a, b), A[i, a] * B[b, j]) for a in range(r) for b in range(r)]

    return _slot_update(Q, slot, f)


def tensor_step(Q, conn, slot=0, xs=None):
    """Q -> d/dx_slot Q + [Q, D(x_slot)]_slot."""
    xs = xs or [xvar(i + 1) for i in range(Q.n)]
    x = xs[slot]
    D = conn.D.subs({conn.x: RatFunc.var(x)}) if conn.x != x else conn.D
    return Q.derivative(x) + slot_commutator(Q, D, slot)


def tensor_vector(Q, algebra="gl"):
    """Coordinates of Q restricted to g^n (all slots)."""
    r = Q.r
    if algebra == "gl":
        basis = [((i, j), 1) for i in range(r) for j in range(r)]
        basis = [[b] for b in basis]
    else:
        basis = [[((i, j), 1)] for i in range(r) for j in range(r) if i != j]
        basis += [[((i, i), 1), ((i + 1, i + 1), -1)] for i in range(r - 1)]
    out = []
    for combo in product(basis, repeat=Q.n):
        acc = ZERO
        for parts in product(*combo):
            key = tuple(p[0] for p in parts)
            v = Q.entries.get(key)
            if v is not None:
                s = prod(p[1] for p in parts)
                acc = acc + (v if s == 1 else v * s)
        out.append(acc)
    return out


def _dim(r, algebra):
    return r * r - (1 if algebra == "sl" else 0)


def _solve(tensors_iter, algebra, bound, interp, what):
    if interp is not None:
        spectators, degree = interp
        items = []
        for Q in tensors_iter:
            items.append(tensor_vector(Q, algebra))
            if len(items) > bound:
                break
        res = linear_dependence_interp(items, spectators, degree)
        if res is None:
            raise AlgebraError(f"no {what} found within order {bound}")
        return res
    el = Elimination()
    for k, Q in enumerate(tensors_iter):
        res = el.add(tensor_vector(Q, algebra))
        if res is not None:
            return res
        if k >= bound:
            break
    raise AlgebraError(f"no {what} found within order {bound}")


def q_sequence(conn, n, kmax):
    """Q_{0,n}, ..., Q_{kmax,n} for x_1-derivatives."""
    Q = build_q0n(n, conn.size)
    out = [Q]
    for _ in range(kmax):
        Q = tensor_step(Q, conn, 0)
        out.append(Q)
    return out


def _x1_connection(conn):
    if conn.x == "x1":
        return conn
    return Connection(conn.D.subs({conn.x: RatFunc.var("x1")}), conn.algebra, "x1", conn.params)


def ode_wn_tensor(conn, n, interp=None, algebra=None):
    """x_1-ODE for W_n with coefficients polynomial in x_1..x_n (and parameters)."""
    algebra = algebra or conn.algebra
    bound = _dim(conn.size, algebra) ** n

    def gen():
        Q = build_q0n(n, conn.size)
        while True:
            yield Q
            Q = tensor_step(Q, conn, 0)

    res = _solve(gen(), algebra, bound, interp, "x1-ODE")
    return Relation("ode-x", "x1", res.coefficients, res.certificate, n=n, mode="tensor")


def spectator_matrix(s, r, name="m"):
    return MatR([[RatFunc.var(f"{name}{s}_{i + 1}{j + 1}") for j in range(r)] for i in range(r)])


def formal_d0(conn, n, spectators=None):
    """D_{0,n}(x_1; X_2..X_n) from spectator matrices (symbolic by default)."""
    r = conn.size
    mats = [None] + [spectators[s - 2] if spectators else spectator_matrix(s, r) for s in range(2, n + 1)]
    return partial_contract(build_q0n(n, r), mats, keep=0)


def ode_wn_formal(conn, n, spectators=None, relations=None, algebra=None):
    """x_1-ODE of order <= dim g with spectator-dependent coefficients.

    ``spectators`` replaces the generic symbols m{s}_{ij} by given matrices
    (entries may be fresh symbols such as Ai(x_2) and Ai'(x_2)).
    ``relations`` is an optional mapping applied to the final coefficients.
    """
    algebra = algebra or conn.algebra
    c1 = _x1_connection(conn)
    D1 = c1.D
    Dk = formal_d0(c1, n, spectators)
    el = Elimination()
    bound = _dim(conn.size, algebra)
    for k in range(bound + 1):
        if k:
            Dk = Dk.derivative("x1") + Dk.commutator(D1)
        res = el.add(pairing_vector(Dk, algebra))
        if res is not None:
            coeffs = res.coefficients
            extra = {}
            if relations:
                reduced = tuple(RatFunc.coerce(c).subs(relations) for c in coeffs)
                extra["reduced"] = reduced
            return Relation("ode-x", "x1", coeffs, res.certificate, n=n, mode="formal", extra=extra)
    raise AlgebraError(f"no x1-ODE found within order {bound}")


# recursion in N


def _rec_tensors(ds, n, N_value=None):
    # Q~_{k+1} = pullback by R^(N)(x_i) of shift(Q~_k); at fixed N the cumulative
    # products R^(N0+k-1)..R^(N0) are applied to Q_{0,n} directly
    xs = [xvar(i + 1) for i in range(n)]
    Rx = [ds.R.subs({ds.x: RatFunc.var(x)}) for x in xs]
    Q0 = build_q0n(n, ds.R.size, xs)
    if N_value is None:
        inv = [R.inverse() for R in Rx]
        Q = Q0
        while True:
            yield Q
            Q = Q.subs({ds.N: RatFunc.var(ds.N) + 1})
            for s, (R, Ri) in enumerate(zip(Rx, inv)):
                Q = slot_pullback(Q, R, s, Ri)
    P = [MatR.identity(ds.R.size) for _ in xs]
    k = 0
    while True:
        Q = Q0
        for s, p in enumerate(P):
            Q = slot_pullback(Q, p, s)
        yield Q
        P = [R.subs({ds.N: N_value + k}) * p for R, p in zip(Rx, P)]
        k += 1


def rec_sequence(ds, n, kmax, N_value=None):
    """Q~_0..Q~_kmax with Q~_k(M_i) = Q_{0,n}(Ad_{R^(N,k)(x_i)} M_i)."""
    gen = _rec_tensors(ds, n, N_value)
    return [next(gen) for _ in range(kmax + 1)]


def rec_wn_tensor(ds, n, N_value=None, interp=None, algebra="gl"):
    """Recursion in N for W_n^(N); coefficients polynomial in x_1..x_n and N."""
    if not check_discrete_lax(ds).is_zero():
        raise IncompatibleSystemError("discrete Lax residual is nonzero")
    bound = _dim(ds.R.size, algebra) ** n
    res = _solve(_rec_tensors(ds, n, N_value), algebra, bound, interp, "recursion")
    extra = {} if N_value is None else {"N": N_value}
    return Relation("rec-N", ds.N, res.coefficients, res.certificate, n=n, mode="tensor", extra=extra)


# time flows


def _flow_at(ts, j, x):
    t, R = ts.flow(j)
    return R.subs({ts.base.x: RatFunc.var(x)})


def time_pde_wn(ts, j, n, mode="tensor", algebra=None):
    """d/dt_j relation for W_n.

    tensor: Q~_{k+1} = d/dt Q~_k + sum_i [Q~_k, R_j(x_i)]_i, coefficients in x_1..x_n.
    formal: D_{k+1,n} = d/dt D_{k,n} + [D_{k,n}, R_j(x_1)], spectators evolve by
    d/dt m{s} = [R_j(x_s), m{s}].
    """
    algebra = algebra or ts.base.algebra
    t, _ = ts.flow(j)
    r = ts.base.size
    xs = [xvar(i + 1) for i in range(n)]
    Rs = [_flow_at(ts, j, x) for x in xs]
    # the points x_i are constants along the flow
    ts = TimeSystem(ts.base, ts.flows, ts.ring.with_rules(t, {x: "0" for x in xs}), ts.scale)
    if mode == "tensor":
        bound = _dim(r, algebra) ** n

        def gen():
            Q = build_q0n(n, r, xs)
            while True:
                yield Q
                nxt = Q.map(lambda v: ts.derive(v, t))
                for s, R in enumerate(Rs):
                    nxt = nxt + slot_commutator(Q, R, s)
                Q = nxt

        res = _solve(gen(), algebra, bound, None, "time relation")
        return Relation("pde-t", t, res.coefficients, res.certificate, n=n, mode="tensor")
    if mode != "formal":
        raise ValueError(f"unknown mode {mode!r}")
    mats = [spectator_matrix(s, r) for s in range(2, n + 1)]
    rules = {}
    for s, m in zip(range(2, n + 1), mats):
        rhs = Rs[s - 1].commutator(m)
        for a in range(r):
            for b in range(r):
                rules[f"m{s}_{a + 1}{b + 1}"] = rhs[a, b]
    ts2 = TimeSystem(ts.base, ts.flows, ts.ring.with_rules(t, rules), ts.scale)
    Dk = partial_contract(build_q0n(n, r, xs), [None] + mats, keep=0)
    el = Elimination()
    bound = _dim(r, algebra)
    for k in range(bound + 1):
        if k:
            Dk = ts2.derive(Dk, t) + Dk.commutator(Rs[0])
        res = el.add(pairing_vector(Dk, algebra))
        if res is not None:
            return Relation("pde-t", t, res.coefficients, res.certificate, n=n, mode="formal")
    raise AlgebraError(f"no time relation found within order {bound}")
