"""Session and graph input files.

A session is JSON with an optional number-field minpoly (coefficient
strings, lowest degree first) and named det-1 generator matrices; entries
are exact scalar strings "p/q" over Q, or coordinate arrays in the power
basis over Q(alpha).  Matrices over a number field are folded into plain
rational matrices by the regular representation at load time, so every
downstream computation sees rational matrices only.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DeterminantNotOne, DimensionMismatch, ParseError
from .exact.numberfield import NumberField, make_field
from .exact.poly import Poly
from .linalg import SqMatrix, embed_regular
from .manifold import GluingSpec, GraphRep, TorusRep
from .places import PlaceSet, discover_places

__all__ = [
    "SessionSpec",
    "parse_session",
    "parse_graph",
    "parse_scalar",
    "parse_matrix",
    "fraction_str",
]

NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_scalar(value, field: NumberField | None):
    """One matrix entry: "p/q" string (or int) over Q, coordinate list over
    Q(alpha)."""
    if isinstance(value, bool):
        raise ParseError(0, "a scalar string", value)
    if isinstance(value, (str, int)):
        q = Fraction(value)
        return q if field is None else field.from_rational(q)
    if isinstance(value, list):
        if field is None:
            raise ParseError(0, "a rational string (no number field declared)", value)
        return field.element([Fraction(c) for c in value])
    raise ParseError(0, "a scalar string or coordinate array", value)


def parse_matrix(rows, field: NumberField | None) -> SqMatrix:
    if not isinstance(rows, list) or not rows:
        raise ParseError(0, "a nonempty array of matrix rows", rows)
    parsed = [[parse_scalar(x, field) for x in row] for row in rows]
    return SqMatrix(parsed, field)


@dataclass(frozen=True)
class SessionSpec:
    """Validated session: original generators, their rational embeddings,
    and the discovered places of the embedded family."""

    field: NumberField | None
    generators: dict[str, SqMatrix]
    embedded: dict[str, SqMatrix]
    places: PlaceSet


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.pos, "valid JSON", e.msg, line=e.lineno, column=e.colno) from None


def _parse_field(doc) -> NumberField | None:
    coeffs = doc.get("field")
    if coeffs is None:
        return None
    return make_field(Poly([Fraction(c) for c in coeffs]))


def parse_session(text: str) -> SessionSpec:
    """Parse and validate a session document; determinants checked exactly."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError(0, "a JSON object", type(doc).__name__)
    field = _parse_field(doc)
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, dict) or not gens_doc:
        raise ParseError(0, 'a nonempty "generators" object', gens_doc)
    generators: dict[str, SqMatrix] = {}
    dim = None
    for name in sorted(gens_doc):
        if not NAME_RE.match(name):
            raise ParseError(0, "a generator name matching [a-z][a-z0-9_]*", name)
        m = parse_matrix(gens_doc[name], field)
        if dim is None:
            dim = m.n
        elif m.n != dim:
            raise DimensionMismatch(
                f"generator {name!r} is {m.n}x{m.n}, expected {dim}x{dim}"
            )
        generators[name] = m
    # embed_regular enforces det = 1 (exactly) for each generator
    embedded = {}
    for name, m in generators.items():
        try:
            embedded[name] = embed_regular(m)
        except DeterminantNotOne as e:
            raise DeterminantNotOne(name=name, det=e.det) from None
    places = discover_places(list(embedded.values()))
    return SessionSpec(field=field, generators=generators, embedded=embedded, places=places)


def parse_graph(text: str) -> GraphRep:
    """Parse a graph-representation document into embedded rational form."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError(0, "a JSON object", type(doc).__name__)
    field = _parse_field(doc)
    tori_doc = doc.get("tori")
    if not isinstance(tori_doc, list) or not tori_doc:
        raise ParseError(0, 'a nonempty "tori" array', tori_doc)
    tori = []
    for t in tori_doc:
        a = embed_regular(parse_matrix(t["A"], field))
        b = embed_regular(parse_matrix(t["B"], field))
        if a.n != b.n:
            raise DimensionMismatch(f"torus {t['id']!r} basis image dimensions differ")
        tori.append(TorusRep(id=str(t["id"]), a=a, b=b))
    gluings = []
    for g in doc.get("gluings", []):
        u = g["U"]
        if (
            not isinstance(u, list)
            or len(u) != 2
            or any(len(row) != 2 for row in u)
            or any(not isinstance(x, int) or isinstance(x, bool) for row in u for x in row)
        ):
            raise ParseError(0, "a 2x2 integer gluing matrix U", u)
        words = g.get("secondBasisWords")
        if not isinstance(words, list) or len(words) != 2:
            raise ParseError(0, "two second-basis words", words)
        gluings.append(
            GluingSpec(
                torus=str(g["torus"]),
                u=((u[0][0], u[0][1]), (u[1][0], u[1][1])),
                second_basis_words=(str(words[0]), str(words[1])),
            )
        )
    return GraphRep.build(tori, gluings)
