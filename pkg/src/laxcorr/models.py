"""Built-in models and the registry used by the command line."""

from dataclasses import dataclass

from .connection import Connection
from .errors import ModelError
from .exactalg import MatR, RatFunc

def airy():
    """Psi' = [[0, 1], [x, 0]] Psi, solved by (Ai, Ai') and (Bi, Bi')."""
    return Connection(MatR([["0", "1"], ["x", "0"]]), "sl")


def hermite(N="N"):
    return Connection(MatR([["x", "-1"], [N, "0"]]), "gl", params=(N,))


def gue_balanced(N="N"):
    from .ensembles import gue_system

    return gue_system(N)


@dataclass(frozen=True)
class SchlesingerModel:
    poles: tuple
    residues: tuple  # A_i at the finite poles
    thetas: tuple  # theta_i for the finite poles, then theta_infinity
    x: str = "x"

    @property
    def A_inf(self):
        acc = MatR.zero(self.residues[0].size)
        for A in self.residues:
            acc = acc - A
        return acc

    def connection(self):
        x = RatFunc.var(self.x)
        D = MatR.zero(self.residues[0].size)
        for z, A in zip(self.poles, self.residues):
            D = D + A * (RatFunc.coerce(1) / (x - z))
        return Connection(D, "sl", self.x, tuple(sorted(set().union(*(a.free_vars() for a in self.residues)))))

    def check_invariants(self):
        """trace 0 and char poly y^2 - theta^2 for every residue including infinity."""
        y = RatFunc.var("y")
        for A, th in zip(self.residues + (self.A_inf,), self.thetas):
            th = RatFunc.coerce(th)
            if not A.trace().is_zero():
                return False
            if A.charpoly("y") != y * y - th * th:
                return False
        return True


def schlesinger_sl2_3pt(theta0="theta0", theta1="theta1", thetainf="thetainf"):
    """Poles 0, 1, infinity with A_0 = diag(theta0, -theta0)."""
    t0, t1, ti = (RatFunc.coerce(RatFunc.var(t) if isinstance(t, str) else t) for t in (theta0, theta1, thetainf))
    if t0.is_zero():
        raise ModelError("theta0 must be nonzero")
    X = ti * ti - t1 * t1 - t0 * t0
    c = RatFunc.coerce(1) / (t0 * 2)
    zero = RatFunc.coerce(0)
    A0 = MatR([[t0, zero], [zero, -t0]])
    A1 = MatR([[X * c, (t0 * t1 * 2 + X) * c], [(t0 * t1 * 2 - X) * c, -X * c]])
    model = SchlesingerModel((0, 1), (A0, A1), (t0, t1, ti))
    if not model.check_invariants():
        raise ModelError("residue invariants fail")
    return model


def schlesinger_flow_rhs(model, i, j):
    """dA_i/dz_j = [A_j, A_i]."""
    A = model.residues
    return A[j].commutator(A[i])


# registry

MODELS = {
    "airy": ("Airy system, D = [[0, 1], [x, 0]]", "connection"),
    "hermite": ("Hermite system, D = [[x, -1], [N, 0]], N symbolic", "connection"),
    "gue": ("Gaussian unitary ensemble in the balanced gauge, u_N = N", "ensemble"),
    "schlesinger-sl2-3pt": ("sl2 Schlesinger system with poles 0, 1, infinity", "connection"),
    "airy-flow": ("q=2 minimal model with t = (1): Airy flow", "time-system"),
    "p1": ("q=2 minimal model with t = (0, 1): Painleve 1", "time-system"),
    "ising-43": ("(4,3) minimal model with hbar", "time-system"),
}


def list_models():
    return [{"name": k, "description": d, "kind": kind} for k, (d, kind) in MODELS.items()]


def builtin(name):
    """Return the object behind a registry name."""
    from . import minimal

    if name == "airy":
        return airy()
    if name == "hermite":
        return hermite()
    if name == "gue":
        return gue_balanced()
    if name == "schlesinger-sl2-3pt":
        return schlesinger_sl2_3pt().connection()
    if name == "airy-flow":
        return minimal.q2_time_system([1])
    if name == "p1":
        return minimal.q2_time_system([0, 1])
    if name == "ising-43":
        return minimal.ising_time_system("lax")
    raise ModelError(f"unknown model {name!r}")
