"""Command-line front end.

Every command reads a matrix from --input (a path or ``-`` for stdin,
plain text or JSON, sniffed automatically) and accepts --json for
machine-readable output.  Exit codes: 0 on success, 1 when the input
violates a standing assumption (non-surjective matrix, zero kernel row,
malformed or mismatched dimensions, enumeration over budget), 2 when an
internal mathematical self-check fails.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import __version__
from . import analysis
from .errors import EnumerationTooLarge, InternalVerificationFailure, InvalidInput, ParseError
from .formats import matrix_to_json, parse_document, render_matrix_text
from .gale import gale_dual
from .intlinalg import IntMatrix, hnf, kernel_basis, snf
from .terminalize import (
    DIRECT,
    ITERATED,
    expansion_normal_form,
    primitivize_rows,
    step_expand,
    terminalize,
)

REPORT_SCHEMA = "hypertoric-report/1"
DEFAULT_MAX_ENUMERATION = analysis.DEFAULT_MAX_ENUMERATION


def _read_matrix(args) -> IntMatrix:
    if args.input == "-":
        text = sys.stdin.read()
        source = "-"
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc}") from None
        source = args.input
    return parse_document(text, source).matrix


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(human, end="" if human.endswith("\n") else "\n")


def _matrix_block(label: str, M: IntMatrix) -> str:
    body = render_matrix_text(M) if M.rows and M.cols else f"<empty {M.rows}x{M.cols}>\n"
    return f"{label}:\n{body}"


def _guard_minors(M: IntMatrix, budget: int) -> None:
    count = math.comb(max(M.rows, M.cols), min(M.rows, M.cols))
    if count > budget:
        raise EnumerationTooLarge(
            f"unimodularity needs {count} maximal minors, over the budget of "
            f"{budget}; raise --max-enumeration to proceed")


def _cmd_snf(args):
    dec = snf(_read_matrix(args))
    human = ("invariant factors: "
             + (" ".join(str(f) for f in dec.invariant_factors) or "(none)")
             + "\n" + _matrix_block("U", dec.U) + _matrix_block("V", dec.V))
    _emit(args, human, {"invariant_factors": list(dec.invariant_factors),
                        "U": matrix_to_json(dec.U), "V": matrix_to_json(dec.V)})


def _cmd_hnf(args):
    res = hnf(_read_matrix(args))
    _emit(args, _matrix_block("H", res.H) + _matrix_block("U", res.U),
          {"H": matrix_to_json(res.H), "U": matrix_to_json(res.U)})


def _cmd_kernel(args):
    K = kernel_basis(_read_matrix(args))
    _emit(args, _matrix_block("kernel basis", K), {"kernel": matrix_to_json(K)})


def _cert_json(cert) -> dict:
    return {"product_is_zero": cert.product_is_zero,
            "a_surjective": cert.a_surjective,
            "b_saturated": cert.b_saturated,
            "ranks_complementary": cert.ranks_complementary,
            "exact": cert.holds()}


def _cmd_gale(args):
    pair = gale_dual(_read_matrix(args))
    human = _matrix_block("B", pair.B) + f"exact: {str(pair.certificate.holds()).lower()}\n"
    _emit(args, human, {"B": matrix_to_json(pair.B),
                        "certificate": _cert_json(pair.certificate)})


def _classes_json(classes) -> list:
    return [{"direction": list(c.direction),
             "multiplicities": list(c.multiplicities),
             "source_rows": list(c.source_rows)} for c in classes]


def _cmd_primitivize(args):
    pair = gale_dual(_read_matrix(args))
    prim = primitivize_rows(pair.B)
    lines = [f"class {list(c.direction)}: multiplicities {list(c.multiplicities)}"
             f" from rows {list(c.source_rows)}" for c in prim.classes]
    human = _matrix_block("B", pair.B) + "".join(s + "\n" for s in lines) \
        + _matrix_block("primitivized", prim.matrix)
    _emit(args, human, {"B": matrix_to_json(pair.B),
                        "classes": _classes_json(prim.classes),
                        "primitivized": matrix_to_json(prim.matrix),
                        "row_source": list(prim.row_source)})


def _cmd_expand_step(args):
    A = _read_matrix(args)
    pair = gale_dual(A)
    j0 = next((j for j in range(A.cols) if analysis.is_codim2_witness(A, j)), None)
    if j0 is None:
        raise InvalidInput("no column qualifies: every kernel row is already "
                           "primitive, nothing to expand")
    form = expansion_normal_form(A, j0)
    step = step_expand(form, pair.B)
    human = (f"witness column: {j0}\nmultiplicity: {form.m}\n"
             + _matrix_block("normal form", form.matrix)
             + _matrix_block("expanded A", step.A_next)
             + _matrix_block("expanded B", step.B_next))
    _emit(args, human, {"witness_column": j0, "m": form.m,
                        "column_order": list(form.column_order),
                        "P": matrix_to_json(form.P),
                        "normal_form": matrix_to_json(form.matrix),
                        "A_next": matrix_to_json(step.A_next),
                        "B_next": matrix_to_json(step.B_next)})


def _cmd_terminalize(args):
    path = ITERATED if args.path == "iterated" else DIRECT
    want_steps = args.show_steps
    if want_steps and path == DIRECT:
        path = ITERATED  # steps only exist on the iterated path
    res = terminalize(_read_matrix(args), path)
    parts = [f"path: {res.path}\nn: {res.n}\nd: {res.d}\n",
             _matrix_block("A", res.A), _matrix_block("B", res.B)]
    if want_steps and res.steps is not None:
        for i, st in enumerate(res.steps):
            parts.append(f"step {i}: witness column {st.form.column_order[0]}, "
                         f"multiplicity {st.form.m}\n")
            parts.append(_matrix_block("  normal form", st.form.matrix))
            parts.append(_matrix_block("  expanded A", st.A_next))
    payload = {"path": res.path, "n": res.n, "d": res.d,
               "A": matrix_to_json(res.A), "B": matrix_to_json(res.B)}
    if res.steps is not None:
        payload["steps"] = [{"witness_column": st.form.column_order[0],
                             "m": st.form.m,
                             "normal_form": matrix_to_json(st.form.matrix),
                             "A_next": matrix_to_json(st.A_next),
                             "B_next": matrix_to_json(st.B_next)}
                            for st in res.steps]
    _emit(args, "".join(parts), payload)


def _cmd_classify(args):
    c = analysis.classify(_read_matrix(args))
    human = (f"verdict: {c.verdict}\n"
             f"witness columns: {' '.join(map(str, c.codim2_witnesses)) or '(none)'}\n"
             "non-primitive kernel rows: "
             + (" ".join(f"(row {i}, gcd {g})" for i, g in c.nonprimitive_rows) or "(none)"))
    _emit(args, human, {"verdict": c.verdict,
                        "codim2_witnesses": list(c.codim2_witnesses),
                        "nonprimitive_rows": [list(p) for p in c.nonprimitive_rows]})


def _cmd_crepant(args):
    A = _read_matrix(args)
    prim = primitivize_rows(gale_dual(A).B).matrix
    _guard_minors(prim, args.max_enumeration)
    dec = analysis.crepant_resolution_exists(A)
    human = f"crepant resolution exists: {str(dec.exists).lower()}"
    if dec.witness is not None:
        human += (f"\nwitness minor: rows {list(dec.witness.indices)} "
                  f"value {dec.witness.value}")
    witness = None if dec.witness is None else {
        "indices": list(dec.witness.indices), "value": dec.witness.value}
    _emit(args, human, {"exists": dec.exists, "witness": witness})


def _cmd_weyl(args):
    w = analysis.weyl_group(_read_matrix(args))
    human = (f"factors: {' '.join(map(str, w.factors)) or '(none)'}\n"
             f"order: {w.order}")
    _emit(args, human, {"factors": list(w.factors), "order": w.order})


def _parse_alpha(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise InvalidInput(f"--alpha must be integers, got {text!r}") from None


def _cmd_generic_check(args):
    A = _read_matrix(args)
    alpha = _parse_alpha(args.alpha)
    ok = analysis.is_generic(A, alpha)
    _emit(args, f"generic: {str(ok).lower()}",
          {"alpha": list(alpha), "generic": ok})


def _cmd_generic_sample(args):
    vec = analysis.sample_generic(_read_matrix(args))
    _emit(args, " ".join(map(str, vec)), {"alpha": list(vec)})


def _cmd_stratify(args):
    rep = analysis.stratify(_read_matrix(args), maximal_only=args.maximal_only,
                            max_enumeration=args.max_enumeration)
    lines = [f"columns {list(s.columns)}: stratum dim {s.stratum_dim}, "
             f"ambient dim {s.ambient_dim}, codim {s.codim}" for s in rep.strata]
    human = ("dimensions are conditional on stratum non-emptiness\n"
             + (("\n".join(lines)) if lines else "(no strata)"))
    _emit(args, human, {"maximal_only": rep.maximal_only,
                        "dimensions_conditional": True,
                        "strata": [{"columns": list(s.columns),
                                    "stratum_dim": s.stratum_dim,
                                    "ambient_dim": s.ambient_dim,
                                    "codim": s.codim} for s in rep.strata]})


def build_report(A: IntMatrix, max_enumeration: int = DEFAULT_MAX_ENUMERATION) -> dict:
    """Full analysis as one deterministic JSON-ready document.

    Field order is fixed and the document is byte-stable for a given
    input and package version (timing is deliberately not part of it).
    """
    pair = gale_dual(A)
    prim = primitivize_rows(pair.B)
    res = terminalize(A, DIRECT)
    classification = analysis.classify(A)
    _guard_minors(prim.matrix, max_enumeration)
    crepant = analysis.crepant_resolution_exists(A)
    weyl = analysis.weyl_group(A)
    strata = analysis.stratify(A, maximal_only=True, max_enumeration=max_enumeration)
    report = {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "input": matrix_to_json(A),
        "n": A.cols,
        "d": A.rows,
        "kernel_matrix": matrix_to_json(pair.B),
        "kernel_row_classes": _classes_json(prim.classes),
        "primitivized_kernel": matrix_to_json(prim.matrix),
        "terminal_presentation": matrix_to_json(res.A),
        "n_terminal": res.n,
        "d_terminal": res.d,
        "verdict": classification.verdict,
        "codim2_witnesses": list(classification.codim2_witnesses),
        "nonprimitive_rows": [list(p) for p in classification.nonprimitive_rows],
        "crepant": crepant.exists,
        "crepant_witness": None if crepant.witness is None else {
            "indices": list(crepant.witness.indices),
            "value": crepant.witness.value},
        "weyl_factors": list(weyl.factors),
        "weyl_order": weyl.order,
    }
    if A.rows >= 1:
        report["hyperplane_count"] = len(analysis.hyperplane_normals(A).normals)
        report["sample_generic"] = list(analysis.sample_generic(A))
    else:
        report["hyperplane_count"] = None
        report["sample_generic"] = None
    report["strata"] = {
        "maximal_only": True,
        "dimensions_conditional": True,
        "count": len(strata.strata),
        "items": [{"columns": list(s.columns), "stratum_dim": s.stratum_dim,
                   "ambient_dim": s.ambient_dim, "codim": s.codim}
                  for s in strata.strata],
    }
    return report


def _cmd_report(args):
    started = time.monotonic()
    report = build_report(_read_matrix(args), args.max_enumeration)
    print(json.dumps(report))
    elapsed_ms = (time.monotonic() - started) * 1000.0
    print(f"elapsed: {elapsed_ms:.1f} ms", file=sys.stderr)


_COMMANDS = {
    "snf": (_cmd_snf, "Smith normal form with both transforms"),
    "hnf": (_cmd_hnf, "row Hermite normal form with its transform"),
    "kernel": (_cmd_kernel, "canonical kernel basis"),
    "gale": (_cmd_gale, "kernel matrix with exactness certificate"),
    "primitivize": (_cmd_primitivize, "primitivized kernel matrix and classes"),
    "expand-step": (_cmd_expand_step, "one expansion at the first witness column"),
    "terminalize": (_cmd_terminalize, "presentation with primitive kernel rows"),
    "classify": (_cmd_classify, "singularity classification of the generic quotient"),
    "crepant": (_cmd_crepant, "projective crepant resolution decision"),
    "weyl": (_cmd_weyl, "Weyl group factors and order"),
    "generic-check": (_cmd_generic_check, "test a character for genericity"),
    "generic-sample": (_cmd_generic_sample, "first generic character in the fixed scan"),
    "stratify": (_cmd_stratify, "column-subset strata with dimension formulas"),
    "report": (_cmd_report, "full JSON analysis report"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypertoric",
        description="Exact lattice analysis of torus-quotient presentations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", "-i", default="-",
                       help="matrix file (plain text or JSON), '-' for stdin")
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        p.set_defaults(func=func)
        if name == "terminalize":
            p.add_argument("--path", choices=["direct", "iterated"],
                           default="direct")
            p.add_argument("--show-steps", action="store_true",
                           help="print every expansion step (implies the "
                                "iterated path)")
        if name == "generic-check":
            p.add_argument("--alpha", required=True,
                           help="character vector, e.g. '1 1' or '1,-2'")
        if name == "stratify":
            p.add_argument("--maximal-only", action="store_true")
        if name in ("stratify", "crepant", "report"):
            p.add_argument("--max-enumeration", type=int,
                           default=DEFAULT_MAX_ENUMERATION,
                           help="refuse enumerations larger than this "
                                f"(default {DEFAULT_MAX_ENUMERATION})")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalVerificationFailure as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
