"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 mathematical rejection
(boundedness screen, non-quadratic or indefinite evaluator), 3 non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import geometry, patch, scalars, wire
from .complex_structure import derive_j
from .errors import (
    IncompleteClosure,
    InputError,
    IrrationalNormalizer,
    NoConvergence,
    NotPositiveDefinite,
    NotQuadratic,
    PlaneformError,
    ScreenFailed,
)
from .groups import boundedness_screen, close_group, is_irreducible
from .synthesis import (
    QuadraticForm,
    invariance_residual,
    is_positive_definite,
    proportionality,
    synth_algebraic,
    synth_averaging,
    synth_contraction,
)

EXIT_OK, EXIT_INPUT, EXIT_REJECT, EXIT_NOCONV = 0, 1, 2, 3
METHODS = ("averaging", "contraction", "algebraic")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    method: str | None = None
    tol: float | None = None
    seed: int = 0
    closure_limit: int | None = None
    dim: int | None = None
    builtin: str | None = None
    form: str | None = None
    trials: int = 64


def _emit(cfg: RunConfig, report: dict) -> None:
    text = wire.canonical_json(report)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _say(cfg: RunConfig, msg: str) -> None:
    # keep stdout clean for the JSON report when no output file is given
    print(msg, file=sys.stdout if cfg.output else sys.stderr)


def _complex_structure_entry(q: QuadraticForm) -> dict:
    try:
        cs = derive_j(q)
    except IrrationalNormalizer:
        cs = derive_j(q.to_kind(scalars.FLOAT))
    return {
        "j": wire.dump_matrix(cs.j),
        "orientation": cs.orientation,
        "wedge": wire.dump_scalar(cs.wedge.c),
        "scalar": cs.j.kind,
    }


def _certificate(q: QuadraticForm, report, spec_hash: str) -> dict:
    cert = {
        "method": report.method,
        "gram": wire.dump_matrix(q.gram),
        "residual": wire.dump_scalar(report.residual),
        "iterations": report.iterations,
        "positive_definite": is_positive_definite(q),
        "spec_hash": spec_hash,
        "complex_structure": _complex_structure_entry(q),
    }
    if report.method == "contraction":
        cert["contraction_ratio"] = report.contraction_ratio
        cert["extrapolated"] = report.extrapolated
    if report.method == "algebraic":
        cert["path"] = report.path
        cert["pivot"] = wire.dump_matrix(report.pivot) if report.pivot is not None else None
    return cert


def run_synth(cfg: RunConfig) -> int:
    raw = wire.read_json(cfg.input)
    spec = wire.parse_group_spec(raw, cfg.closure_limit)
    spec_hash = wire.digest(wire.dump_group_spec(spec))
    method = cfg.method or "all"
    if method not in METHODS + ("all",):
        raise InputError("--method", f"unknown method {method!r}")
    tol = 1e-10 if cfg.tol is None else cfg.tol
    closure = close_group(spec)
    screen = boundedness_screen(closure)
    base = {
        "spec_hash": spec_hash,
        "scalar": spec.scalar,
        "closure": {"size": len(closure), "complete": closure.complete},
    }
    if not screen:
        base["screen"] = {"passed": False, "reason": screen.reason, "witness": wire.dump_matrix(screen.witness)}
        _emit(cfg, base)
        _say(cfg, f"rejected: {screen.reason}")
        return EXIT_REJECT
    base["screen"] = {"passed": True}

    # deliberately non-invariant start so averaging and contraction have work to do
    q0 = QuadraticForm.of(1, 0, 2) if spec.scalar == scalars.RATIONAL else QuadraticForm.of(1.0, 0.0, 2.0)
    chosen = METHODS if method == "all" else (method,)
    results, skipped = {}, {}
    for name in chosen:
        try:
            if name == "averaging":
                results[name] = synth_averaging(closure, q0)
            elif name == "algebraic":
                results[name] = synth_algebraic(closure)
            else:
                ctol = Fraction(0) if spec.scalar == scalars.RATIONAL and tol == 0 else tol
                results[name] = synth_contraction(spec, q0, tol=ctol)
        except IncompleteClosure as exc:
            if method != "all":
                raise
            skipped[name] = str(exc)
        except NoConvergence as exc:
            base["error"] = str(exc)
            _emit(cfg, base)
            _say(cfg, f"no convergence: {exc}")
            return EXIT_NOCONV

    if method != "all":
        q, report = results[method]
        cert = dict(base, **_certificate(q, report, spec_hash))
        _emit(cfg, cert)
        _say(cfg, f"{method}: gram {cert['gram']} residual {cert['residual']}")
        return EXIT_OK

    base["certificates"] = [_certificate(q, r, spec_hash) for q, r in results.values()]
    if skipped:
        base["skipped"] = skipped
    irreducible = closure.complete and is_irreducible(closure)
    pairs = []
    names = list(results)
    for i in range(len(names)):
        for k in range(i + 1, len(names)):
            p = proportionality(results[names[i]][0], results[names[k]][0])
            pairs.append({
                "a": names[i],
                "b": names[k],
                "proportional": p.proportional,
                "ratio": wire.dump_scalar(p.ratio),
                "deviation": wire.dump_scalar(p.deviation),
            })
    verdict = "not applicable (reducible or sampled group)"
    if irreducible:
        verdict = "agree" if all(p["proportional"] for p in pairs) else "disagree"
    base["agreement"] = {"irreducible": irreducible, "pairs": pairs, "verdict": verdict}
    _emit(cfg, base)
    for c in base["certificates"]:
        _say(cfg, f"{c['method']}: gram {c['gram']} residual {c['residual']}")
    _say(cfg, f"cross-method agreement: {verdict}")
    return EXIT_OK if verdict != "disagree" else EXIT_REJECT


def run_check(cfg: RunConfig) -> int:
    raw = wire.read_json(cfg.input)
    spec = wire.parse_group_spec(raw, cfg.closure_limit)
    if not cfg.form:
        raise InputError("--form", "check needs a form (certificate or Gram file)")
    form_obj = wire.read_json(cfg.form)
    entries = form_obj.get("certificates", [form_obj])
    spec_hash = wire.digest(wire.dump_group_spec(spec))
    closure = close_group(spec)
    out = {"spec_hash": spec_hash, "closure": {"size": len(closure), "complete": closure.complete}, "checks": []}
    for i, entry in enumerate(entries):
        if "gram" not in entry:
            raise InputError(f"certificates[{i}].gram", "missing")
        if "spec_hash" in entry and entry["spec_hash"] != spec_hash:
            raise InputError(f"certificates[{i}].spec_hash", "certificate was produced for a different group spec")
        kind = entry.get("scalar", form_obj.get("scalar")) or wire.guess_kind(entry["gram"])
        q = QuadraticForm(wire.parse_gram(entry["gram"], kind, f"certificates[{i}].gram"))
        if q.kind != spec.scalar:
            q = q.to_kind(spec.scalar)
        resid = invariance_residual(q, closure)
        pd = is_positive_definite(q)
        out["checks"].append({
            "method": entry.get("method"),
            "residual": wire.dump_scalar(resid),
            "positive_definite": pd,
            "invariant": resid == 0 if q.kind == scalars.RATIONAL else resid <= (cfg.tol or 1e-10),
        })
    _emit(cfg, out)
    ok = all(c["invariant"] and c["positive_definite"] for c in out["checks"])
    for c in out["checks"]:
        _say(cfg, f"{c['method'] or 'form'}: residual {c['residual']} positive-definite {c['positive_definite']}")
    return EXIT_OK if ok else EXIT_REJECT


def _point(obj, kind, field) -> geometry.Point:
    return geometry.Point(wire.parse_vec(obj, kind, field))


def _geom_op(op: dict, idx: int) -> dict:
    name = op.get("op")
    kind = wire.guess_kind([v for k, v in op.items() if k in ("a", "b", "points")])
    where = f"ops[{idx}]"
    if name == "ruler":
        for key in ("a", "b", "k", "l", "n"):
            if key not in op:
                raise InputError(f"{where}.{key}", "missing")
        a, b = _point(op["a"], kind, f"{where}.a"), _point(op["b"], kind, f"{where}.b")
        ruler = geometry.ruler_between(a, b, op["k"], op["l"], op["n"])
        return {"op": "ruler", "points": [wire.dump_vec(p) for p in ruler.points], "is_ruler": geometry.is_ruler(ruler.points)}
    if name == "line":
        a, b = _point(op["a"], kind, f"{where}.a"), _point(op["b"], kind, f"{where}.b")
        pts = geometry.rational_line(a, b, op.get("num_bound", 1), op.get("den_bound", 1))
        pts = sorted(pts, key=lambda p: tuple(Fraction(x) for x in p))
        return {"op": "line", "points": [wire.dump_vec(p) for p in pts]}
    if name == "parallelogram":
        pts = op.get("points")
        if not (isinstance(pts, list) and len(pts) == 4):
            raise InputError(f"{where}.points", "expected 4 points")
        quad = [_point(p, kind, f"{where}.points[{i}]") for i, p in enumerate(pts)]
        return {"op": "parallelogram", "result": geometry.is_parallelogram(*quad)}
    if name == "middle":
        a, b = _point(op["a"], kind, f"{where}.a"), _point(op["b"], kind, f"{where}.b")
        return {"op": "middle", "point": wire.dump_vec(geometry.middle(a, b))}
    raise InputError(f"{where}.op", f"unknown operation {name!r}")


def run_geom(cfg: RunConfig) -> int:
    raw = wire.read_json(cfg.input)
    ops = raw.get("ops", [raw])
    if not isinstance(ops, list):
        raise InputError("ops", "must be an array")
    results = [_geom_op(op, i) for i, op in enumerate(ops)]
    _emit(cfg, {"results": results})
    for r in results:
        body = r.get("points", r.get("result", r.get("point")))
        _say(cfg, f"{r['op']}: {body}")
    return EXIT_OK


def _dump_nvec(v) -> list:
    return [scalars.dump(x) for x in v]


def run_patch(cfg: RunConfig) -> int:
    if cfg.builtin:
        if cfg.dim is None:
            raise InputError("--dim", "required with --builtin")
        maker = {"quartic": patch.quartic, "sphere": patch.sphere}[cfg.builtin]
        q = maker(cfg.dim)
    elif cfg.input:
        raw = wire.read_json(cfg.input)
        kind = raw.get("scalar") or wire.guess_kind(raw.get("gram"))
        q = patch.gram_evaluator(wire.parse_gram_n(raw.get("gram"), kind), name=str(cfg.input))
    else:
        raise InputError("--input", "patch needs --input GRAM_FILE or --builtin")
    out = {"evaluator": q.name, "dim": q.n, "scalar": q.scalar, "seed": cfg.seed, "trials": cfg.trials}
    try:
        gram = patch.patch_form(q, trials=cfg.trials, tol=cfg.tol, seed=cfg.seed)
    except NotQuadratic as exc:
        w = exc.witness
        out["status"] = "not_quadratic"
        out["witness"] = {
            "kind": w.kind,
            "vectors": [_dump_nvec(v) for v in w.vectors],
            "residual": scalars.dump(w.residual),
            "lambda": scalars.dump(w.lam) if w.lam is not None else None,
        }
        _emit(cfg, out)
        _say(cfg, f"not quadratic: {w.kind} witness {out['witness']['vectors']} residual {out['witness']['residual']}")
        return EXIT_REJECT
    except NotPositiveDefinite as exc:
        out["status"] = "not_positive_definite"
        out["error"] = str(exc)
        _emit(cfg, out)
        _say(cfg, str(exc))
        return EXIT_REJECT
    out["status"] = "quadratic"
    out["gram"] = [_dump_nvec(r) for r in gram.rows]
    _emit(cfg, out)
    _say(cfg, f"gram {out['gram']}")
    return EXIT_OK


COMMANDS = {"synth": run_synth, "check": run_check, "geom": run_geom, "patch": run_patch}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planeform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i")
        p.add_argument("--output", "-o")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("synth", help="synthesize an invariant form for a group spec")
    common(p)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    p.add_argument("--closure-limit", type=int)

    p = sub.add_parser("check", help="recheck a (form, group) pair")
    common(p)
    p.add_argument("--form", required=True)
    p.add_argument("--closure-limit", type=int)

    p = sub.add_parser("geom", help="ruler / line / parallelogram constructions from a points file")
    common(p)

    p = sub.add_parser("patch", help="assemble a global Gram matrix from a planar-quadratic evaluator")
    common(p)
    p.add_argument("--builtin", choices=("quartic", "sphere"))
    p.add_argument("--dim", type=int)
    p.add_argument("--trials", type=int, default=64)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScreenFailed as exc:
        print(f"rejected: {exc.report.reason}", file=sys.stderr)
        return EXIT_REJECT
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except (PlaneformError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
