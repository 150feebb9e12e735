"""Command-line front end.

Every subcommand reads JSON inputs (path or "-" for stdin), runs one
pipeline, and prints a JSON result with sorted keys, so outputs are
deterministic and diffable.  Exit codes: 0 success, 1 malformed input
(with the JSON path of the problem), 2 violated algebraic precondition
(with the precondition's name).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import serialize
from .companions import (
    companion_membership_oracle,
    companion_table,
    contains,
    diagonal_membership_oracle,
    equality_witness,
    functionally_equal,
    is_quasilinear,
    is_rigid,
)
from .decomposition import quasilinear_part, rig_extrema
from .errors import PreconditionError
from .forms import eval_quadratic
from .matrices import invert, monomial_decomposition
from .semiring import Element, Semifield, format_element
from .serialize import SchemaError
from .stropicalize import (
    balanced_companion_of_strop,
    ring_companion_matrix,
    square_class_sequence,
    stropicalize_bilinear,
    stropicalize_form,
)
from .probes import boundary_probe_elements


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}", "$") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", f"$ (line {exc.lineno}, column {exc.colno})") from exc


def _semifield_override(args) -> Optional[Semifield]:
    if not getattr(args, "semifield", None):
        return None
    try:
        obj = json.loads(args.semifield)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in --semifield: {exc.msg}", "$.semifield") from exc
    return serialize.semifield_from_json(obj, "$.semifield")


def _emit(args, payload: dict, pretty_lines: Optional[list[str]] = None) -> int:
    if args.pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(payload, sort_keys=True))
    return 0


def _show(args, a: Element) -> str:
    if args.min_plus and not a.is_zero:
        flipped = Element(a.tag, -a.exp, a.fiber)
        return format_element(flipped)
    return format_element(a)


# -- subcommands ---------------------------------------------------------------


def _cmd_eval(args) -> int:
    q = serialize.form_from_json(_read_json(args.form), _semifield_override(args))
    x = serialize.vector_from_text(q.sf, args.vector)
    value = eval_quadratic(q, x)
    return _emit(args, {"value": format_element(value)}, [f"value: {_show(args, value)}"])


def _cmd_companions(args) -> int:
    q = serialize.form_from_json(_read_json(args.form), _semifield_override(args))
    table = companion_table(q)
    payload = serialize.table_to_json(table)
    payload["rigid"] = is_rigid(q)
    payload["quasilinear"] = is_quasilinear(q)
    lines = [f"companion table ({q.n} x {q.n}):"]
    for row in table.cells:
        lines.append("  " + " | ".join(serialize.cell_display(q.sf, c) for c in row))
    lines.append(f"rigid: {is_rigid(q)}   quasilinear: {is_quasilinear(q)}")
    return _emit(args, payload, lines)


def _cmd_decompose(args) -> int:
    q = serialize.form_from_json(_read_json(args.form), _semifield_override(args))
    ext = rig_extrema(q)
    payload = {
        "ql": serialize.form_to_json(quasilinear_part(q)),
        "rigid_min": serialize.form_to_json(ext.minimum),
        "rigid_max": serialize.form_to_json(ext.maximum) if ext.maximum is not None else None,
        "table": serialize.table_to_json(ext.table),
    }
    lines = [
        f"quasilinear part: {quasilinear_part(q)!r}",
        f"minimal rigid complement: {ext.minimum!r}",
        "maximal rigid complement: "
        + (repr(ext.maximum) if ext.maximum is not None else "none"),
    ]
    if ext.no_max_cell is not None:
        i, j = ext.no_max_cell
        payload["no_max_cell"] = f"{i + 1},{j + 1}"
        lines.append(f"no maximum because cell ({i + 1},{j + 1}) is half-open")
    return _emit(args, payload, lines)


def _cmd_rigid_extrema(args) -> int:
    q = serialize.form_from_json(_read_json(args.form), _semifield_override(args))
    ext = rig_extrema(q)
    payload = {
        "min": serialize.form_to_json(ext.minimum),
        "max": serialize.form_to_json(ext.maximum) if ext.maximum is not None else None,
        "no_max_cell": f"{ext.no_max_cell[0] + 1},{ext.no_max_cell[1] + 1}" if ext.no_max_cell else None,
    }
    lines = [
        f"min: {ext.minimum!r}",
        "max: " + (repr(ext.maximum) if ext.maximum is not None else "none"),
    ]
    return _emit(args, payload, lines)


def _cmd_equal(args) -> int:
    override = _semifield_override(args)
    q1 = serialize.form_from_json(_read_json(args.form1), override)
    q2 = serialize.form_from_json(_read_json(args.form2), override)
    equal = functionally_equal(q1, q2)
    witness = None if equal else equality_witness(q1, q2)
    payload = {
        "equal": equal,
        "witness": serialize.vector_to_json(witness) if witness is not None else None,
    }
    lines = [f"equal: {equal}"]
    if witness is not None:
        lines.append("witness vector: " + ", ".join(_show(args, v) for v in witness))
    return _emit(args, payload, lines)


def _cell_invariant_violations(cell, probes) -> list[str]:
    """Convexity, ghost stability, and sum rules over the probe battery."""
    from tropquad.semiring import ZERO, leq_minimal

    problems = []
    members = [b for b in probes if contains(cell, b)]
    for b1 in members:
        for b2 in members:
            for mid in probes:
                if leq_minimal(b1, mid) and leq_minimal(mid, b2) and not contains(cell, mid):
                    problems.append(f"convexity fails between {b1} and {b2} at {mid}")
    if any(m.is_ghost or m.is_zero for m in members):
        for b1 in members:
            for b2 in members:
                if not contains(cell, b1 + b2):
                    problems.append(f"not closed under addition: {b1} + {b2}")
    if contains(cell, ZERO):
        for b in probes:
            if contains(cell, b) != contains(cell, b.nu()):
                problems.append(f"ghost stability fails at {b}")
    return problems


def _cmd_check(args) -> int:
    q = serialize.form_from_json(_read_json(args.form), _semifield_override(args))
    table = companion_table(q)
    report = {"cells": [], "mismatches": []}
    for i in range(q.n):
        for j in range(i, q.n):
            cell = table.cell(i, j)
            probes = boundary_probe_elements(q.sf, q.diag[i], q.diag[j], q.beta(i, j) if i != j else None, cell)
            bad = []
            for beta in probes:
                closed = contains(cell, beta)
                if i == j:
                    by_oracle = diagonal_membership_oracle(q.sf, q.diag[i], beta)
                else:
                    by_oracle = companion_membership_oracle(q.sf, q.diag[i], q.diag[j], q.beta(i, j), beta)
                if closed != by_oracle:
                    bad.append(f"oracle disagrees at {format_element(beta)}")
            bad.extend(_cell_invariant_violations(cell, probes))
            entry = {"i": i + 1, "j": j + 1, "probes": len(probes), "ok": not bad}
            report["cells"].append(entry)
            if bad:
                report["mismatches"].append({"i": i + 1, "j": j + 1, "problems": bad})
    if args.table:
        given = serialize.table_from_json(_read_json(args.table), override_sf=q.sf)
        if given.n != table.n:
            report["mismatches"].append({"table": "dimension mismatch"})
        elif given.cells != table.cells:
            diff = [
                {"i": i + 1, "j": j + 1,
                 "computed": serialize.cell_to_json(q.sf, table.cell(i, j)),
                 "given": serialize.cell_to_json(q.sf, given.cell(i, j))}
                for i in range(q.n)
                for j in range(q.n)
                if given.cell(i, j) != table.cell(i, j)
            ]
            report["mismatches"].append({"table": diff})
    report["ok"] = not report["mismatches"]
    lines = [f"cells checked: {len(report['cells'])}", f"ok: {report['ok']}"]
    if not report["ok"]:
        lines.append("MISMATCHES: " + json.dumps(report["mismatches"], sort_keys=True))
    _emit(args, report, lines)
    return 0 if report["ok"] else 2


def _cmd_invert(args) -> int:
    m = serialize.matrix_from_json(_read_json(args.matrix), _semifield_override(args))
    mono = monomial_decomposition(m)
    inv = invert(mono).to_general()
    payload = {"inverse": serialize.matrix_to_json(inv)}
    return _emit(args, payload, [f"inverse: {inv!r}"])


def _cmd_stropicalize(args) -> int:
    ratform = serialize.ratform_from_json(_read_json(args.ratform))
    spec = serialize.supervaluation_from_args(args.prime, args.mode)
    qphi = stropicalize_form(spec, ratform)
    balanced = balanced_companion_of_strop(spec, ratform)
    b_phi = stropicalize_bilinear(spec, ring_companion_matrix(ratform))
    classes = square_class_sequence(spec, ratform)
    payload = {
        "form": serialize.form_to_json(qphi),
        "balanced": serialize.bilinear_to_json(balanced),
        "b_phi": serialize.bilinear_to_json(b_phi),
        "square_classes": [serialize.class_tag_to_json(t) for t in classes],
        "quasilinear": is_quasilinear(qphi),
    }
    lines = [
        f"image form: {qphi!r}",
        f"balanced companion: {balanced!r}",
        f"companion image: {b_phi!r}",
        f"quasilinear: {is_quasilinear(qphi)}",
    ]
    if args.min_plus:
        lines[0] = "image form (min-plus display): [" + "; ".join(
            " ".join(
                _show(args, qphi.diag[i]) if j == i else _show(args, qphi.beta(i, j))
                for j in range(i, qphi.n)
            )
            for i in range(qphi.n)
        ) + "]"
    return _emit(args, payload, lines)


def _cmd_classes(args) -> int:
    ratform = serialize.ratform_from_json(_read_json(args.ratform))
    spec = serialize.supervaluation_from_args(args.prime, args.mode)
    classes = square_class_sequence(spec, ratform)
    payload = {"square_classes": [serialize.class_tag_to_json(t) for t in classes]}
    return _emit(args, payload, ["square classes: " + json.dumps(payload["square_classes"], sort_keys=True)])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropquad",
        description="Exact quadratic forms over supertropical semifields",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    parser.add_argument("--min-plus", action="store_true", help="negate exponents in pretty output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("eval", _cmd_eval, "evaluate a form at a vector")
    p.add_argument("form")
    p.add_argument("--vector", required=True, help="comma-separated elements, e.g. 't:1,t:0'")
    p.add_argument("--semifield")

    p = add("companions", _cmd_companions, "compute the companion table")
    p.add_argument("form")
    p.add_argument("--semifield")

    p = add("decompose", _cmd_decompose, "quasilinear part plus rigid extrema and table")
    p.add_argument("form")
    p.add_argument("--semifield")

    p = add("rigid-extrema", _cmd_rigid_extrema, "extreme rigid complements")
    p.add_argument("form")
    p.add_argument("--semifield")

    p = add("equal", _cmd_equal, "decide functional equality of two schemes")
    p.add_argument("form1")
    p.add_argument("form2")
    p.add_argument("--semifield")

    p = add("check", _cmd_check, "cross-validate the closed-form table against the oracle")
    p.add_argument("form")
    p.add_argument("--table", help="also compare against a previously saved table JSON")
    p.add_argument("--semifield")

    p = add("invert", _cmd_invert, "invert a monomial matrix")
    p.add_argument("matrix")
    p.add_argument("--semifield")

    p = add("stropicalize", _cmd_stropicalize, "image of a rational form under a supervaluation")
    p.add_argument("ratform")
    p.add_argument("--prime", required=True, help="a prime number, or 'trivial'")
    p.add_argument("--mode", default="tangible", choices=["tangible", "ghost", "signed"])

    p = add("classes", _cmd_classes, "square-class sequence of a rational form's image")
    p.add_argument("ratform")
    p.add_argument("--prime", required=True)
    p.add_argument("--mode", default="tangible", choices=["tangible", "ghost", "signed"])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(json.dumps({"error": exc.reason, "path": exc.path}, sort_keys=True), file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(
            json.dumps({"error": str(exc), "precondition": exc.precondition}, sort_keys=True),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
