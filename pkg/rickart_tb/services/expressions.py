"""Construction and element expressions.

Construction grammar::

    expr  := CATALOG '(' INT ')' | 'GR' '(' expr ',' group ')' | 'XGR' '(' expr ',' group ')'
           | 'U' '(' expr ')' | 'T' '(' expr ',' INT ')' | 'CT' '(' expr ',' INT ')'
           | 'PQ' '(' expr ',' INT ')'
    group := 'C' INT | 'V4' | '@' PATH

Element expressions are signed sums of ``INT``, ``INT*LABEL``, ``LABEL`` and raw
coordinate lists ``[c1,...,ck]``.
"""
from __future__ import annotations

import json
import logging
import pathlib
import re
from dataclasses import dataclass
from typing import Optional, Union

from rickart_tb.domain.errors import IllegalIntegerCoefficientError, ParseError, UnknownLabelError
from rickart_tb.domain.group import FiniteGroup, group_from_cayley
from rickart_tb.domain.ring import FiniteRing, RingElement
from rickart_tb.services import catalog, constructions

LOGGER = logging.getLogger(__name__)

CATALOG_NAMES = ("A", "B", "C", "D", "Dalt", "Z", "N")
UNARY_OPS = ("U",)
GROUP_OPS = ("GR", "XGR")
INTEGER_OPS = ("T", "CT", "PQ")
GROUP_SCHEMA = "rickart-tb/group/v1"

_CONSTRUCTION_TOKEN = re.compile(
    r"\s*(?:(?P<path>@[^,()\s]+)|(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<punct>[(),]))"
)
_ELEMENT_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<coords>\[\s*-?\d+(?:\s*,\s*-?\d+)*\s*\]|\[\s*\])"
    r"|(?P<int>\d+)"
    r"|(?P<label>[A-Za-z][A-Za-z0-9_^']*(?:\[\d+,\d+\])?(?:\*[A-Za-z][A-Za-z0-9_^']*(?:\[\d+,\d+\])?)*)"
    r"|(?P<punct>[+*-])"
    r")"
)


@dataclass(frozen=True)
class GroupRef:
    name: Optional[str] = None
    order: Optional[int] = None
    path: Optional[str] = None


@dataclass(frozen=True)
class CatalogExpr:
    kind: str
    parameter: int


@dataclass(frozen=True)
class ConstructExpr:
    op: str
    operand: "Expr"
    group: Optional[GroupRef] = None
    n: Optional[int] = None


Expr = Union[CatalogExpr, ConstructExpr]


# -- construction expressions ------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _CONSTRUCTION_TOKEN.match(stripped, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character {stripped[pos]!r}", 1, pos + 1)
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    tokens.append(("end", "", len(stripped) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str, value: Optional[str] = None) -> str:
        tok_kind, tok_value, col = self.peek()
        if tok_kind != kind or (value is not None and tok_value != value):
            wanted = value or kind
            shown = tok_value or "end of input"
            raise ParseError(f"expected {wanted!r}, found {shown!r}", 1, col)
        self.pos += 1
        return tok_value

    def integer(self) -> int:
        return int(self.take("int"))

    def expr(self) -> Expr:
        _, name, col = self.peek()
        self.take("name")
        self.take("punct", "(")
        if name in CATALOG_NAMES:
            node: Expr = CatalogExpr(name, self.integer())
        elif name in UNARY_OPS:
            node = ConstructExpr(name, self.expr())
        elif name in GROUP_OPS:
            operand = self.expr()
            self.take("punct", ",")
            node = ConstructExpr(name, operand, group=self.group())
        elif name in INTEGER_OPS:
            operand = self.expr()
            self.take("punct", ",")
            node = ConstructExpr(name, operand, n=self.integer())
        else:
            raise ParseError(f"unknown constructor {name!r}", 1, col)
        self.take("punct", ")")
        return node

    def group(self) -> GroupRef:
        kind, value, col = self.peek()
        if kind == "path":
            self.pos += 1
            return GroupRef(path=value[1:])
        name = self.take("name")
        if name not in ("C", "V"):
            raise ParseError(f"unknown group {name!r}", 1, col)
        order = self.integer()
        if name == "V" and order != 4:
            raise ParseError("only the Klein four-group V4 is built in", 1, col)
        return GroupRef(name=name, order=order)


def parse_construction(text: str) -> Expr:
    parser = _Parser(text)
    node = parser.expr()
    parser.take("end")
    return node


def print_expr(node: Expr) -> str:
    """Normalized text of an expression; ``parse_construction`` inverts it."""
    if isinstance(node, CatalogExpr):
        return f"{node.kind}({node.parameter})"
    inner = print_expr(node.operand)
    if node.group is not None:
        return f"{node.op}({inner},{_print_group(node.group)})"
    if node.n is not None:
        return f"{node.op}({inner},{node.n})"
    return f"{node.op}({inner})"


def _print_group(ref: GroupRef) -> str:
    return f"@{ref.path}" if ref.path is not None else f"{ref.name}{ref.order}"


def load_group(path: str | pathlib.Path) -> FiniteGroup:
    """Read a Cayley-table group document (JSON)."""
    path_obj = pathlib.Path(path)
    try:
        payload = json.loads(path_obj.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read group file {path_obj}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"group file {path_obj}: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(payload, dict) or payload.get("schema", GROUP_SCHEMA) != GROUP_SCHEMA:
        raise ParseError(f"group file {path_obj} is not a {GROUP_SCHEMA} document")
    if "cayley" not in payload:
        raise ParseError(f"group file {path_obj} has no 'cayley' table")
    return group_from_cayley(payload["cayley"], labels=payload.get("labels"), name=f"@{path}")


def resolve_group(ref: GroupRef) -> FiniteGroup:
    if ref.path is not None:
        return load_group(ref.path)
    return catalog.catalog_group(f"{ref.name}{ref.order}")


def evaluate(node: Expr | str) -> FiniteRing:
    """Build the ring an expression denotes; XGR yields U(R)G with its ideal embedding."""
    if isinstance(node, str):
        node = parse_construction(node)
    if isinstance(node, CatalogExpr):
        if node.kind == "Z":
            return catalog.integers_mod(node.parameter)
        if node.kind == "N":
            return catalog.null_ring(node.parameter)
        return catalog.fine_ring(node.kind, node.parameter)

    operand = evaluate(node.operand)
    if node.op == "U":
        ring, _ = constructions.unitization(operand)
        return ring
    if node.op in GROUP_OPS:
        assert node.group is not None
        group = resolve_group(node.group)
        if node.op == "GR":
            return constructions.group_ring(operand, group)
        ring, _ = constructions.extension_group_ring(operand, group)
        return ring
    assert node.n is not None
    builders = {
        "T": constructions.triangular_ring,
        "CT": constructions.const_diag_tri,
        "PQ": constructions.poly_quotient,
    }
    return builders[node.op](operand, node.n)


# -- element expressions -------------------------------------------------------------


def parse_element(ring: FiniteRing, text: str) -> RingElement:
    """Read an element of ``ring`` from a signed sum of terms."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty element expression", 1, 1)
    total = [0] * ring.rank
    pos = 0
    sign = 1
    expect_term = True
    while pos < len(stripped):
        match = _ELEMENT_TOKEN.match(stripped, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character {stripped[pos]!r}", 1, pos + 1)
        kind = match.lastgroup
        col = match.start(kind) + 1
        value = match.group(kind)
        pos = match.end()

        if kind == "punct" and value in "+-":
            if not expect_term and value == "-":
                sign = -1
            elif not expect_term:
                sign = 1
            else:
                sign = -sign if value == "-" else sign
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(f"expected '+' or '-' before {value!r}", 1, col)

        if kind == "coords":
            coords = [int(c) for c in value.strip("[]").split(",") if c.strip()]
            if len(coords) != ring.rank:
                raise ParseError(f"{ring.provenance} needs {ring.rank} coordinates, got {len(coords)}", 1, col)
            term = coords
        elif kind == "int":
            coefficient = int(value)
            follow = _ELEMENT_TOKEN.match(stripped, pos)
            if follow is not None and follow.lastgroup == "punct" and follow.group("punct") == "*":
                label_match = _ELEMENT_TOKEN.match(stripped, follow.end())
                if label_match is None or label_match.lastgroup != "label":
                    raise ParseError("expected a label after '*'", 1, follow.end() + 1)
                pos = label_match.end()
                term = _label_term(ring, label_match.group("label"), label_match.start("label") + 1, coefficient)
            elif follow is not None and follow.lastgroup == "label":
                pos = follow.end()
                term = _label_term(ring, follow.group("label"), follow.start("label") + 1, coefficient)
            else:
                term = _integer_term(ring, coefficient, col)
        elif kind == "label":
            term = _label_term(ring, value, col, 1)
        else:
            raise ParseError(f"unexpected {value!r}", 1, col)

        total = [a + sign * b for a, b in zip(total, term)]
        sign = 1
        expect_term = False

    if expect_term:
        raise ParseError("expression ends with an operator", 1, len(stripped) + 1)
    return ring.element(total)


def _label_term(ring: FiniteRing, label: str, col: int, coefficient: int) -> list[int]:
    pos = ring.label_index.get(label)
    if pos is not None:
        term = [0] * ring.rank
        term[pos] = coefficient
        return term
    if label in ring.unit_aliases:
        raise IllegalIntegerCoefficientError(
            f"{label!r} is a group element, but {ring.provenance} has no unity to carry it; "
            "build the extension ring with XGR(...) to use group elements as ring elements",
            1,
            col,
        )
    raise UnknownLabelError(f"unknown label {label!r}; {ring.provenance} has {', '.join(ring.labels) or 'no basis'}", 1, col)


def _integer_term(ring: FiniteRing, value: int, col: int) -> list[int]:
    if ring.unity is None:
        raise IllegalIntegerCoefficientError(
            f"integer term {value} needs a unity, and {ring.provenance} has none", 1, col
        )
    return [value * u for u in ring.unity]
