"""Command-line front end.

    quasicob validate MODEL.json
    quasicob decompose MODEL.json [--lambda0 1,2] [--no-verify]
    quasicob relation ISOTROPY.json [--no-verify]
    quasicob vertexcut POLYTOPE_WITH_LABELS.json [--no-verify]
    quasicob chern MODEL.json
    quasicob equiv A.json B.json [--bound N]

Exit codes: 0 pass, 1 validation failure, 2 malformed input, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .charmodel import (IsotropyModel, delta_equivalent, is_smooth, local_orders,
                        restrict_to_exceptional, validate_characteristic, validate_isotropy,
                        vertex_sign)
from .chern import chern_numbers, generic_points, verify_relation, weight_system
from .cobordism import CobordismRelation, comcob_relation, qbd_decompose, vertex_cut_relation
from .documents import (dumps, parse_characteristic, parse_isotropy, parse_model,
                        parse_vertexcut, read_document)
from .errors import DocumentError, InvariantViolation, LatticeError, ModelError

EXIT_PASS, EXIT_FAIL, EXIT_MALFORMED, EXIT_INTERNAL = 0, 1, 2, 3


def _partition_key(omega) -> str:
    return " ".join(map(str, omega))


def _relation_body(rel: CobordismRelation, verify: bool) -> tuple[dict, int]:
    body = {"relation": rel.to_json()}
    code = EXIT_PASS
    if not verify:
        body["verification"] = {"status": "skipped"}
    elif not rel.all_smooth:
        body["verification"] = {"status": "unverifiable (orbifold)"}
    else:
        check = verify_relation(rel)
        body["verification"] = check.to_json()
        if not check.ok:
            code = EXIT_INTERNAL
    return body, code


def cmd_validate(args) -> tuple[dict, int]:
    doc, _ = args.loaded[0]
    m = parse_model(doc)
    if isinstance(m, IsotropyModel):
        report = validate_isotropy(m)
        body = {"kind": "isotropy", "valid": report.ok,
                "failures": [f.to_json() for f in report.failures]}
        if report.ok:
            body["boundary"] = []
            for f in m.marking.exceptional:
                piece = restrict_to_exceptional(m, f)
                body["boundary"].append({"facet": f, "smooth": is_smooth(piece),
                                         "local_orders": local_orders(piece)})
        return body, EXIT_PASS if report.ok else EXIT_FAIL
    model = m.effective_model()
    report = validate_characteristic(model)
    p = model.polytope
    body = {
        "kind": "characteristic",
        "valid": report.ok,
        "failures": [f.to_json() for f in report.failures],
        "smooth": report.ok and is_smooth(model),
        "vertex_determinants": [{"vertex": list(p.ordered(v)), "det": model.vertex_det(v)}
                                for v in p.vertices],
        "local_orders": local_orders(model),
    }
    if report.ok:
        body["vertex_signs"] = [vertex_sign(m, v) for v in p.vertices]
    return body, EXIT_PASS if report.ok else EXIT_FAIL


def _parse_lambda0(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise DocumentError(f"--lambda0 must be comma-separated integers, got {text!r}") from exc


def cmd_decompose(args) -> tuple[dict, int]:
    doc, _ = args.loaded[0]
    m = parse_characteristic(doc)
    rel = qbd_decompose(m, _parse_lambda0(args.lambda0))
    body, code = _relation_body(rel, args.verify)
    body["lambda0"] = rel.details["lambda0"]
    return body, code


def cmd_relation(args) -> tuple[dict, int]:
    doc, _ = args.loaded[0]
    return _relation_body(comcob_relation(parse_isotropy(doc)), args.verify)


def cmd_vertexcut(args) -> tuple[dict, int]:
    doc, _ = args.loaded[0]
    p, labels = parse_vertexcut(doc)
    rel = vertex_cut_relation(p, labels)
    return _relation_body(rel, args.verify)


def cmd_chern(args) -> tuple[dict, int]:
    doc, _ = args.loaded[0]
    m = parse_characteristic(doc)
    if not validate_characteristic(m.effective_model()).ok or not is_smooth(m.effective_model()):
        return {"smooth": False, "error": "Chern numbers need a smooth model"}, EXIT_FAIL
    ws = weight_system(m)
    return {
        "smooth": True,
        "chern_numbers": {_partition_key(k): v for k, v in chern_numbers(m).items()},
        "evaluation_points": [list(t) for t in generic_points(ws, m.dim)],
        "fixed_points": [{"vertex": list(v), "sign": s, "weights": [list(w) for w in ws_v]}
                         for v, s, ws_v in zip(ws.vertices, ws.signs, ws.weights)],
    }, EXIT_PASS


def cmd_equiv(args) -> tuple[dict, int]:
    (d1, _), (d2, _) = args.loaded
    m1, m2 = parse_characteristic(d1), parse_characteristic(d2)
    mat = delta_equivalent(m1.effective_model(), m2.effective_model(), args.bound)
    if mat is None:
        return {"result": "not found (bounded)", "bound": args.bound, "matrix": None}, EXIT_FAIL
    return {"result": "found", "bound": args.bound, "matrix": [list(r) for r in mat]}, EXIT_PASS


COMMANDS: dict[str, tuple[Callable, int]] = {
    "validate": (cmd_validate, 1),
    "decompose": (cmd_decompose, 1),
    "relation": (cmd_relation, 1),
    "vertexcut": (cmd_vertexcut, 1),
    "chern": (cmd_chern, 1),
    "equiv": (cmd_equiv, 2),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quasicob", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, nin) in COMMANDS.items():
        sp = sub.add_parser(name)
        sp.add_argument("inputs", nargs=nin, metavar="INPUT")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--out", help="write the report here instead of stdout")
        if name == "decompose":
            sp.add_argument("--lambda0", help='override lambda0, e.g. "1,2"')
        if name in ("decompose", "relation", "vertexcut"):
            sp.add_argument("--no-verify", dest="verify", action="store_false",
                            help="skip the Chern-number check of smooth relations")
        if name == "equiv":
            sp.add_argument("--bound", type=int, default=1,
                            help="max absolute matrix entry searched (default 1)")
    return ap


def render_text(report: dict) -> str:
    lines = []

    def walk(prefix: str, value: Any) -> None:
        if isinstance(value, dict) and value:
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, list) and value and any(isinstance(x, (dict, list)) for x in value):
            for i, x in enumerate(value):
                walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {value}")

    walk("", report)
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> tuple[str, int, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    func, _ = COMMANDS[args.command]
    header: dict[str, Any] = {"tool": "quasicob", "version": __version__, "command": args.command}
    try:
        args.loaded = [read_document(p) for p in args.inputs]
        header["input_sha256"] = [digest for _, digest in args.loaded]
        if args.command == "equiv" and args.bound < 1:
            raise DocumentError("--bound must be >= 1")
        body, code = func(args)
    except DocumentError as exc:
        body, code = {"error": str(exc)}, EXIT_MALFORMED
    except (ModelError, LatticeError) as exc:
        body = {"error": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            body["witness"] = list(witness) if isinstance(witness, (tuple, list)) else witness
        code = EXIT_FAIL
    except InvariantViolation as exc:
        body, code = {"error": f"internal invariant violated: {exc}"}, EXIT_INTERNAL
    status = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_MALFORMED: "malformed",
              EXIT_INTERNAL: "internal-error"}[code]
    report = dict(header, status=status, **body)
    text = dumps(report) if args.format == "json" else render_text(report)
    return text, code, args


def main(argv: list[str] | None = None) -> int:
    text, code, args = run(argv)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
