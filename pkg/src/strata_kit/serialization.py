"""Job files and reports.

A job file is JSON::

    {"group": {"kind": "SL", "n": 3},
     "connection": [{"power": -1, "matrix": [["0", "1", "0"], ...]}, ...],
     "params": {"e": 2}}

The connection list encodes ``A = sum_k M_k z^k`` where ``nabla = d + A dz/z``.
Rationals are strings ``"p/q"`` (or integers written as ``"p"``); JSON
numbers are refused for matrix entries so nothing passes through a float.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import DimensionError, ParseError
from .exact import Laurent, LaurentMatrix
from .filtration import Connection
from .roots import KINDS, ApartmentPoint, build_group

Term = tuple[int, tuple[tuple[Fraction, ...], ...]]


@dataclass(frozen=True)
class JobSpec:
    kind: str
    n: int
    terms: tuple[Term, ...]
    params: dict[str, Any] = field(default_factory=dict, compare=True, hash=False)

    def connection(self) -> Connection:
        G = build_group(self.kind, self.n)
        acc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for power, mat in self.terms:
            for i, row in enumerate(mat):
                for j, c in enumerate(row):
                    if c:
                        slot = acc.setdefault((i, j), {})
                        slot[power] = slot.get(power, Fraction(0)) + c
        rows = [[Laurent(acc.get((i, j), {})) for j in range(self.n)] for i in range(self.n)]
        return Connection(G, LaurentMatrix(rows))

    @classmethod
    def from_connection(cls, A: Connection, params: dict | None = None) -> "JobSpec":
        return cls(A.group.kind, A.n, matrix_terms(A.matrix), dict(params or {}))


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: expected a rational string like \"p/q\", got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse {text!r} as a rational") from None


def render_rational(x) -> str:
    return str(Fraction(x))


def matrix_terms(M: LaurentMatrix) -> tuple[Term, ...]:
    """Split ``M`` into ``(power, constant matrix)`` terms, sorted by power."""
    out = []
    for m in M.powers():
        coeff = M.coefficient(m)
        out.append((m, tuple(tuple(Fraction(c) for c in row) for row in coeff)))
    return tuple(out)


def terms_json(terms) -> list[dict]:
    return [{"power": p, "matrix": [[render_rational(c) for c in row] for row in mat]} for p, mat in terms]


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def parse_input(text: str) -> JobSpec:
    """Parse and validate a job file (sizes checked here, membership on use)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    group = _require(doc, "group", "top level")
    kind = _require(group, "kind", "group")
    n = _require(group, "n", "group")
    if kind not in KINDS:
        raise ParseError(f"group.kind: expected one of {list(KINDS)}, got {kind!r}")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"group.n: expected an integer, got {n!r}")
    build_group(kind, n)
    conn = _require(doc, "connection", "top level")
    if not isinstance(conn, list):
        raise ParseError("connection: expected a list of terms")
    terms = []
    for k, term in enumerate(conn):
        where = f"connection[{k}]"
        power = _require(term, "power", where)
        if isinstance(power, bool) or not isinstance(power, int):
            raise ParseError(f"{where}.power: expected an integer, got {power!r}")
        mat = _require(term, "matrix", where)
        if not isinstance(mat, list) or len(mat) != n:
            raise DimensionError(f"{where}.matrix: expected {n} rows for {kind}_{n}")
        rows = []
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise DimensionError(f"{where}.matrix[{i}]: expected {n} entries")
            rows.append(tuple(parse_rational(c, f"{where}.matrix[{i}][{j}]") for j, c in enumerate(row)))
        terms.append((power, tuple(rows)))
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("params: expected an object")
    return JobSpec(kind, n, tuple(terms), params)


def spec_json(spec: JobSpec) -> dict:
    return {"group": {"kind": spec.kind, "n": spec.n},
            "connection": terms_json(spec.terms),
            "params": spec.params}


_FLAT_ROW = re.compile(r'\[\s+((?:"[^"\n]*",?\s*)+)\]')


def dumps(doc) -> str:
    """Indented JSON with each row of strings kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_ROW.sub(lambda m: "[" + ", ".join(re.findall(r'"[^"\n]*"', m.group(1))) + "]", text)


def render_spec(spec: JobSpec) -> str:
    return dumps(spec_json(spec))


def parse_point(text: str, rank: int | None = None) -> ApartmentPoint:
    parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p.strip()]
    coords = [parse_rational(p, "--point") for p in parts]
    if rank is not None and len(coords) != rank:
        raise DimensionError(f"--point: expected {rank} coordinates, got {len(coords)}")
    return ApartmentPoint(tuple(coords))


def point_json(x: ApartmentPoint) -> list[str]:
    return [render_rational(c) for c in x.coords]
