"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid model or input,
3 incompatible discrete system, 4 resource limit.
"""

import argparse
import json
import sys

from . import __version__
from .errors import (
    AlgebraError,
    IncompatibleSystemError,
    LaxCorrError,
    ModelError,
    ParseError,
    ResourceLimitError,
)
from .modelfile import model_hash, parse_record, read_model, relation_record

EXIT_FAIL, EXIT_MODEL, EXIT_INCOMPATIBLE, EXIT_RESOURCE = 1, 2, 3, 4


def _resolve(name):
    """(model spec for hashing, model object) for a builtin name or a JSON file path."""
    from .models import MODELS, builtin

    if name in MODELS:
        return {"builtin": name}, builtin(name)
    if name.endswith(".json"):
        return read_model(name)
    raise ModelError(f"unknown model {name!r}; see 'laxcorr models list'")


def _parts(model):
    from .connection import Connection, DiscreteSystem, TimeSystem
    from .ensembles import EnsembleSystem

    if isinstance(model, EnsembleSystem):
        return Connection(model.D, "gl", model.potential.x, (model.jacobi.N,)), model.discrete, None
    if isinstance(model, Connection):
        return model, None, None
    if isinstance(model, DiscreteSystem):
        from .connection import Connection as C

        return C(model.D, "gl", model.x, (model.N,)), model, None
    if isinstance(model, TimeSystem):
        return model.base, None, model
    raise ModelError("unsupported model object")


def _interp(args, spectators):
    if args.interp_degree is None:
        return None
    return (spectators, args.interp_degree)


def derive(args):
    from . import connection as conn_mod
    from . import tensors
    from .minimal import ising_time_ode

    spec, model = _resolve(args.model)
    conn, ds, ts = _parts(model)
    what = args.what
    N_value = args.N
    if what == "ode-w1":
        rel = conn_mod.ode_w1(conn, interp=_interp(args, list(conn.params)))
    elif what == "ode-wn":
        if args.path == "formal":
            rel = tensors.ode_wn_formal(conn, args.n)
        else:
            specs = [f"x{i}" for i in range(2, args.n + 1)]
            rel = tensors.ode_wn_tensor(conn, args.n, interp=_interp(args, specs))
    elif what in ("rec-w1", "rec-wn"):
        if ds is None:
            raise ModelError("model has no discrete shift operator")
        if what == "rec-w1":
            rel = conn_mod.rec_w1(ds, N_value=N_value)
        else:
            rel = tensors.rec_wn_tensor(ds, args.n, N_value=N_value, interp=_interp(args, [ds.N]))
    elif what in ("time-ode", "time-pde"):
        if ts is None:
            raise ModelError("model has no time flow")
        if what == "time-ode":
            if args.model == "ising-43":
                rel = ising_time_ode(args.form or "lax")
            else:
                lax_first = (args.form or "raw") == "lax"
                rel = conn_mod.time_ode_w1(ts, args.flow, lax_first=lax_first)
        else:
            rel = tensors.time_pde_wn(ts, args.flow, args.n, mode=args.path)
    else:  # pragma: no cover - argparse restricts choices
        raise ModelError(what)
    record = relation_record(rel, model_hash(spec))
    if args.format == "json":
        print(json.dumps(record, indent=2))
    elif args.format == "latex":
        print(rel.to_latex())
    else:
        print(rel.to_text())
    return 0


def _recheck(rel, conn, ds, ts):
    """Exact certificate: recombine the model's own sequence with the stored coefficients."""
    from . import connection as conn_mod
    from . import tensors
    from .exactalg.linalg import recombine_is_zero

    K = rel.order
    if rel.n == 1:
        if rel.kind == "ode-x":
            items = [conn_mod.pairing_vector(M, "gl") for M in conn_mod.derived_sequence(conn, K)]
        elif rel.kind == "rec-N":
            if "N" in rel.extra:
                return None
            items = [conn_mod.pairing_vector(M, "gl") for M in conn_mod.discrete_sequence(ds, K)]
        elif rel.kind == "ode-t":
            lax = rel.extra.get("form") == "lax"
            seq = conn_mod.time_sequence(ts, 0, K, lax_first=lax)
            items = [conn_mod.pairing_vector(M, "gl") for M in seq]
        else:
            return None
    elif rel.mode == "tensor" and rel.kind == "ode-x":
        items = [tensors.tensor_vector(Q) for Q in tensors.q_sequence(conn, rel.n, K)]
    elif rel.mode == "tensor" and rel.kind == "rec-N":
        seq = tensors.rec_sequence(ds, rel.n, K, N_value=rel.extra.get("N"))
        items = [tensors.tensor_vector(Q) for Q in seq]
    else:
        return None
    return recombine_is_zero(rel.coefficients, items)


def _numeric(name, rel, points, prec):
    """Residuals at sample points for models with a numeric oracle."""
    import mpmath

    from .verify import (
        adjoint_section,
        airy_eval,
        gue_psi,
        gue_w1_shifted,
        ode_residual,
        rec_residual,
        wn_numeric,
    )

    out = []
    with mpmath.workprec(prec):
        if name == "airy" and rel.kind == "ode-x" and rel.n == 1:
            for p in points:
                x = mpmath.mpmathify(p)
                ai, aip, _, _ = airy_eval(x, prec)
                # W1(x.e12) = x Ai^2 - Ai'^2 and its derivatives from Ai'' = x Ai
                w = [x * ai ** 2 - aip ** 2, ai ** 2, 2 * ai * aip, 2 * aip ** 2 + 2 * x * ai ** 2]
                w.append(6 * x * ai * aip + 2 * ai ** 2)
                res, scale = ode_residual(rel, w[:rel.order + 1], {"x": x})
                out.append((str(p), res, scale))
            return out
        if name == "gue" and rel.kind == "rec-N" and rel.n == 1:
            N0s = [rel.extra["N"]] if "N" in rel.extra else [1, 2, 3]
            for p in points:
                x = mpmath.mpmathify(p)
                for N in N0s:
                    vals = [gue_w1_shifted(N + k, x, prec) for k in range(rel.order + 1)]
                    res, scale = rec_residual(rel, vals, {"x": x, "N": N})
                    out.append((f"{p}@N={N}", res, scale))
            return out
        if name == "gue" and rel.kind == "ode-x" and rel.n == 1:
            for p in points:
                x = mpmath.mpmathify(p)
                for N in (1, 2, 3):
                    ds = [mpmath.diff(lambda z: gue_w1_shifted(N, z, prec), x, k) for k in range(rel.order + 1)]
                    res, scale = ode_residual(rel, ds, {"x": x, "N": N})
                    out.append((f"{p}@N={N}", res, scale))
            return out
        if name == "gue" and rel.kind == "rec-N" and rel.n == 2 and "N" in rel.extra:
            N0 = rel.extra["N"]
            E = [[1, 0], [0, 0]]
            for i in range(0, len(points) - 1, 2):
                x1, x2 = mpmath.mpmathify(points[i]), mpmath.mpmathify(points[i + 1])
                vals = []
                for k in range(rel.order + 1):
                    M1 = adjoint_section(gue_psi(N0 + k, x1, prec), E)
                    M2 = adjoint_section(gue_psi(N0 + k, x2, prec), E)
                    vals.append(wn_numeric([M1, M2], [x1, x2]))
                res, scale = rec_residual(rel, vals, {"x1": x1, "x2": x2})
                out.append((f"({points[i]},{points[i + 1]})", res, scale))
            return out
    return None


def _points(text):
    out = []
    for s in text.split(","):
        s = s.strip().replace(" ", "")
        if s:
            out.append(complex(s.replace("i", "j")) if ("i" in s or "j" in s) else float(s))
    return out


def verify(args):
    if args.target == "moments":
        return verify_moments(args)
    if not args.relation:
        raise ModelError("verify needs --relation FILE")
    spec, model = _resolve(args.model)
    conn, ds, ts = _parts(model)
    try:
        with open(args.relation) as fh:
            rec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError(f"cannot read relation file: {exc}") from exc
    rel = parse_record(rec)
    exact = _recheck(rel, conn, ds, ts)
    points = _points(args.points) if args.points else []
    numeric = _numeric(args.model, rel, points, args.prec) if points else None
    tol = args.tol
    rows = []
    ok = exact is not False
    if numeric:
        for label, res, scale in numeric:
            rel_res = float(res / scale) if scale else float(res)
            passed = rel_res < tol
            ok = ok and passed
            rows.append({"sample": label, "residual": float(res), "relative": rel_res, "pass": passed})
    report = {
        "relation": rec.get("kind", "") + ":" + rec.get("variable", ""),
        "model": args.model,
        "certificate": exact,
        "samples": rows,
        "tolerance": tol,
        "pass": ok,
    }
    print(json.dumps(report, indent=2))
    return 0 if ok else EXIT_FAIL


def verify_moments(args):
    from .ensembles import derive_all_w1, moment_recursion_from_ode, moment_recursion_in_N
    from .verify import gue_moment_oracle

    if args.model != "gue":
        raise ModelError("moment verification is available for the gue model")
    _, es = _resolve("gue")
    rels = derive_all_w1(es)
    mrec = moment_recursion_from_ode(rels["ode"], es.potential)
    cross = moment_recursion_in_N(rels["rec"])
    rows = []
    ok = True
    table = {}
    for N in range(1, args.Nmax + 1 + 3):
        table[N] = mrec.moments(2 * args.kmax + 6, {"N": N})
    for N in range(1, args.Nmax + 1):
        for k in range(0, args.kmax + 1):
            got = table[N][2 * k].constant_value()
            want = gue_moment_oracle(N, 2 * k)
            rows.append({"N": N, "moment": 2 * k, "recursion": str(got), "oracle": str(want), "pass": got == want})
            ok = ok and got == want

    def mom(N, m):
        return table[N][m].constant_value() if m >= 0 else 0

    cross_ok = all(cross.residual(mom, N, K) == 0 for N in range(1, args.Nmax + 1) for K in range(0, 2 * args.kmax + 1))
    report = {"model": "gue", "moments": rows, "cross_N": cross_ok, "tolerance": 0, "pass": ok and cross_ok}
    print(json.dumps(report, indent=2))
    return 0 if report["pass"] else EXIT_FAIL


def models_list(args):
    from .models import list_models

    rows = list_models()
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['name']:22s} {r['kind']:12s} {r['description']}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="laxcorr", description="Linear relations for determinantal correlators.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("derive", help="derive an ODE, PDE or recursion")
    d.add_argument("what", choices=["ode-w1", "ode-wn", "rec-w1", "rec-wn", "time-ode", "time-pde"])
    d.add_argument("--model", required=True, help="builtin name or model JSON file")
    d.add_argument("--n", type=int, default=2)
    d.add_argument("--path", choices=["tensor", "formal"], default="tensor")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--N-symbolic", dest="N", action="store_const", const=None)
    g.add_argument("--N", dest="N", type=int)
    d.add_argument("--format", choices=["json", "text", "latex"], default="json")
    d.add_argument("--interp-degree", type=int)
    d.add_argument("--flow", type=int, default=0)
    d.add_argument("--form", choices=["raw", "lax", "reduced"])
    d.set_defaults(func=derive)

    v = sub.add_parser("verify", help="check a relation or the GUE moments")
    v.add_argument("target", nargs="?", choices=["relation", "moments"], default="relation")
    v.add_argument("--model", required=True)
    v.add_argument("--relation")
    v.add_argument("--points")
    v.add_argument("--prec", type=int, default=128)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--kmax", type=int, default=6)
    v.add_argument("--Nmax", type=int, default=3)
    v.set_defaults(func=verify)

    m = sub.add_parser("models", help="builtin models")
    m.add_argument("action", choices=["list"])
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=models_list)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except IncompatibleSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (AlgebraError, LaxCorrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
