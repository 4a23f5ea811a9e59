"""JSON model files and relation records."""

import hashlib
import json

from . import __version__
from .connection import Connection, DiscreteSystem, TimeSystem
from .errors import LaxCorrError, ModelError
from .exactalg import DiffRing, MatR, parse
from .relation import KINDS, Relation

NORMALIZATION = "primitive-poslead"
MODEL_KINDS = ("connection", "ensemble", "discrete", "time-system")


def model_hash(spec):
    blob = json.dumps(spec, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _matrix(rows, size=None):
    if not isinstance(rows, list) or not rows or any(len(r) != len(rows) for r in rows):
        raise ModelError("matrix must be a nonempty square array")
    if size is not None and len(rows) != size:
        raise ModelError(f"matrix size {len(rows)} does not match declared size {size}")
    try:
        return MatR([[parse(str(e)) for e in r] for r in rows])
    except LaxCorrError as exc:
        raise ModelError(f"cannot parse matrix entry: {exc}") from exc


def load_model(spec):
    """Build a Connection, DiscreteSystem, TimeSystem or EnsembleSystem from a dict."""
    from .ensembles import JacobiData, Potential, ensemble_system, gue_system

    if not isinstance(spec, dict):
        raise ModelError("model file must hold a JSON object")
    kind = spec.get("kind")
    if kind not in MODEL_KINDS:
        raise ModelError(f"unknown model kind {kind!r}")
    x = spec.get("x", "x")
    size = spec.get("size")
    algebra = spec.get("algebra", "gl")
    if kind == "ensemble":
        if spec.get("builtin") == "gue":
            return gue_system(spec.get("N", "N"))
        try:
            pot = Potential(parse(spec["potential"]["Vprime"]), x)
            jac = spec["jacobi"]
            jd = JacobiData(parse(jac["S_N"]), parse(jac["u_N"]), spec.get("N", "N"))
        except KeyError as exc:
            raise ModelError(f"ensemble model misses {exc}") from exc
        return ensemble_system(pot, jd)
    D = _matrix(spec.get("matrix"), size)
    try:
        conn = Connection(D, algebra, x, tuple(spec.get("variables", ())))
    except ValueError as exc:
        raise ModelError(str(exc)) from exc
    if kind == "connection":
        return conn
    if kind == "discrete":
        R = _matrix(spec.get("shift"), D.size)
        return DiscreteSystem(D, R, spec.get("N", "N"), x)
    ring = DiffRing(base=tuple(spec.get("variables", ())) + (x,), jets=spec.get("jets", {}),
                    rules=spec.get("rules", {}))
    flows = []
    for f in spec.get("flows", []):
        flows.append((f["t"], _matrix(f["matrix"], D.size)))
    if not flows:
        raise ModelError("time-system needs at least one flow")
    scale = parse(spec["scale"]) if "scale" in spec else None
    return TimeSystem(conn, tuple(flows), ring, scale)


def read_model(path):
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError(f"cannot read model file {path}: {exc}") from exc
    return spec, load_model(spec)


def relation_record(rel, mhash, variables=None):
    names = set()
    for c in rel.coefficients:
        names.update(c.vars)
    return {
        "model_hash": mhash,
        "kind": rel.kind,
        "variable": rel.var,
        "n": rel.n,
        "mode": rel.mode,
        "order": rel.order,
        "coefficients": rel.coefficient_strings(),
        "variables": sorted(names) if variables is None else list(variables),
        "normalization": NORMALIZATION,
        "certificate": bool(rel.certificate),
        "engine_version": __version__,
        **({"form": rel.extra["form"]} if "form" in rel.extra else {}),
        **({"N": rel.extra["N"]} if "N" in rel.extra else {}),
    }


def parse_record(rec):
    """RelationRecord dict -> Relation (certificate as stored; re-verify separately)."""
    try:
        kind = rec["kind"]
        if kind not in KINDS:
            raise ModelError(f"unknown relation kind {kind!r}")
        coeffs = []
        for c in rec["coefficients"]:
            q = parse(c)
            if not q.is_polynomial():
                raise ModelError("relation coefficients must be polynomials")
            coeffs.append(q.num)
        extra = {k: rec[k] for k in ("form", "N") if k in rec}
        return Relation(kind, rec["variable"], tuple(coeffs), bool(rec.get("certificate")),
                        rec.get("n", 1), rec.get("mode", ""), extra)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed relation record: {exc}") from exc
