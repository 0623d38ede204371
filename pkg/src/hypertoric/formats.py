"""Matrix input/output formats for the command line.

Plain text: whitespace-separated integers, one row per line, blank lines
ignored, dimensions inferred.  JSON: {"rows": d, "cols": n, "entries":
[[...], ...]}.  Parsing the rendered form of a document gives the
document back; matrices with zero columns are only representable in
JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParseError
from .intlinalg import IntMatrix

__all__ = [
    "PLAIN_TEXT",
    "JSON_FORMAT",
    "MatrixDocument",
    "parse_matrix_text",
    "render_matrix_text",
    "matrix_from_json",
    "matrix_to_json",
    "parse_document",
    "render_document",
]

PLAIN_TEXT = "plain-text"
JSON_FORMAT = "json"


@dataclass(frozen=True)
class MatrixDocument:
    matrix: IntMatrix
    source: str
    format: str


def parse_matrix_text(text: str) -> IntMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"line {lineno}: expected whitespace-separated "
                             f"integers, got {line.strip()!r}") from None
    if rows:
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise ParseError(f"row {i} has {len(r)} entries, expected {width}")
    return IntMatrix.from_rows(rows)


def render_matrix_text(M: IntMatrix) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in M.entries)


def matrix_from_json(obj) -> IntMatrix:
    if not isinstance(obj, dict):
        raise ParseError("JSON matrix must be an object")
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except KeyError as missing:
        raise ParseError(f"JSON matrix is missing the {missing} field") from None
    if not (isinstance(rows, int) and isinstance(cols, int)):
        raise ParseError("rows and cols must be integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ParseError(f"entries must be a list of {rows} rows")
    for i, r in enumerate(entries):
        if not isinstance(r, list) or len(r) != cols:
            raise ParseError(f"entries row {i} must be a list of {cols} integers")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ParseError(f"entries row {i} contains a non-integer")
    return IntMatrix.from_rows(entries, cols=cols)


def matrix_to_json(M: IntMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": M.to_rows()}


def parse_document(text: str, source: str = "-") -> MatrixDocument:
    """Parse matrix input, sniffing JSON by a leading '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return MatrixDocument(matrix_from_json(obj), source, JSON_FORMAT)
    return MatrixDocument(parse_matrix_text(text), source, PLAIN_TEXT)


def render_document(doc: MatrixDocument) -> str:
    if doc.format == JSON_FORMAT:
        return json.dumps(matrix_to_json(doc.matrix)) + "\n"
    return render_matrix_text(doc.matrix)
