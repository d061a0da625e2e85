"""Text formats: attribute headers, rule/vector lines and whole KB files.

Attribute lines::

    name : nominal(a,b,c)
    name : linear(0.0,10.0) delta=0.05

Rule lines are whitespace-separated cell tokens -- a nominal value name, a
real literal, ``*`` (don't-care) or ``?`` (don't-know) -- with exactly one
cell suffixed ``_T`` marking the target. Optional trailing annotations:
``p=<int>`` static priority, ``def`` definition flag, and for stored rules
``dp=<int>``, ``c=<int>``, ``counters=[value:count,...]``. Cell tokens may
carry value disjunctions (``a|b``) where the caller allows expansion. Value
names must not contain whitespace or end in ``_T``; ``*``, ``?`` and ``def``
are reserved.
"""

from __future__ import annotations

import itertools
import re

from .errors import DomainError, ParseError
from .model import AttributeDef, KnowledgeBase, Schema, Vector

_ATTR_RE = re.compile(
    r"^(?P<name>\S+)\s*:\s*(?:nominal\((?P<values>[^)]*)\)"
    r"|linear\((?P<lo>[^,)]+),(?P<hi>[^)]+)\))\s*(?:delta=(?P<delta>\S+))?\s*$"
)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_attribute_line(line: str, line_no: int | None = None) -> AttributeDef:
    m = _ATTR_RE.match(line)
    if not m:
        raise ParseError(f"bad attribute line: {line!r}", line=line_no)
    name = m.group("name")
    delta = float(m.group("delta")) if m.group("delta") else 0.05
    try:
        if m.group("values") is not None:
            values = tuple(v.strip() for v in m.group("values").split(","))
            return AttributeDef(name, values=values, delta_fraction=delta)
        bounds = (float(m.group("lo")), float(m.group("hi")))
        return AttributeDef(name, bounds=bounds, delta_fraction=delta)
    except ValueError as e:
        raise ParseError(str(e), line=line_no)


def format_attribute(attr: AttributeDef) -> str:
    if attr.is_linear:
        spec = f"linear({attr.bounds[0]:g},{attr.bounds[1]:g})"
    else:
        spec = f"nominal({','.join(attr.values)})"
    suffix = "" if attr.delta_fraction == 0.05 else f" delta={attr.delta_fraction:g}"
    return f"{attr.name} : {spec}{suffix}"


def parse_schema(text: str) -> tuple[Schema, int | None]:
    """Parse attribute lines plus an optional ``target: <name>`` line."""
    attrs = []
    target_name = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("target:"):
            target_name = line.split(":", 1)[1].strip()
            continue
        attrs.append(parse_attribute_line(line, no))
    try:
        schema = Schema(tuple(attrs))
    except ValueError as e:
        raise ParseError(str(e))
    target_index = schema.index_of(target_name) if target_name else None
    return schema, target_index


_ANNOTATION_RE = re.compile(r"^(p|dp|c)=(-?\d+)$")
_COUNTERS_RE = re.compile(r"^counters=\[(.*)\]$")


class ParsedRuleLine:
    """Cells (each a list of alternative tokens), target index, annotations."""

    def __init__(self, cell_options, target_index, annotations):
        self.cell_options = cell_options
        self.target_index = target_index
        self.annotations = annotations


def parse_rule_line(schema: Schema, line: str, line_no: int | None = None) -> ParsedRuleLine:
    tokens = line.split()
    if len(tokens) < schema.arity:
        raise ParseError(
            f"expected {schema.arity} cells, got {len(tokens)}", line=line_no
        )
    cell_tokens, rest = tokens[: schema.arity], tokens[schema.arity :]

    target_index = None
    cell_options = []
    for i, tok in enumerate(cell_tokens):
        if tok.endswith("_T"):
            if target_index is not None:
                raise ParseError("more than one _T cell", line=line_no)
            target_index = i
            tok = tok[: -len("_T")]
        cell_options.append(tok.split("|"))
    if target_index is None:
        raise ParseError("no _T cell", line=line_no)
    if len(cell_options[target_index]) > 1:
        raise ParseError("target cell cannot be disjunctive", line=line_no)

    annotations = {"p": 0, "dp": 0, "c": 0, "def": False, "counters": None}
    for tok in rest:
        if tok == "def":
            annotations["def"] = True
            continue
        m = _ANNOTATION_RE.match(tok)
        if m:
            annotations[m.group(1)] = int(m.group(2))
            continue
        m = _COUNTERS_RE.match(tok)
        if m:
            counters = {}
            body = m.group(1)
            for part in body.split(",") if body else []:
                name, _, count = part.rpartition(":")
                counters[name] = int(count)
            annotations["counters"] = counters
            continue
        raise ParseError(f"unknown annotation {tok!r}", line=line_no)
    return ParsedRuleLine(cell_options, target_index, annotations)


def _encode_cell(schema: Schema, index: int, token: str, line_no) -> float:
    try:
        return schema.attributes[index].encode(token)
    except ValueError as e:
        raise DomainError(str(e), line=line_no)


def build_vectors(schema: Schema, parsed: ParsedRuleLine, line_no: int | None = None) -> list[Vector]:
    """Expand a parsed line into vectors (cross product over disjunctions)."""
    option_cells = [
        [_encode_cell(schema, i, tok, line_no) for tok in opts]
        for i, opts in enumerate(parsed.cell_options)
    ]
    vectors = []
    for combo in itertools.product(*option_cells):
        vectors.append(
            Vector(
                cells=tuple(combo),
                target_index=parsed.target_index,
                is_definition=parsed.annotations["def"],
                static_priority=parsed.annotations["p"],
            )
        )
    return vectors


def parse_vector_line(
    schema: Schema, line: str, line_no: int | None = None, allow_disjunction: bool = False
) -> list[Vector]:
    parsed = parse_rule_line(schema, line, line_no)
    if not allow_disjunction and any(len(o) > 1 for o in parsed.cell_options):
        raise ParseError("value disjunction not allowed here", line=line_no)
    return build_vectors(schema, parsed, line_no)


def _decode_counters(schema: Schema, target_index: int, named: dict[str, int]):
    attr = schema.attributes[target_index]
    counters = {float(i): 0 for i in range(len(attr.values))}
    for name, count in named.items():
        counters[attr.encode(name)] = count
    return counters


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a KB file: attribute header, then one rule per line."""
    attr_lines = []
    rule_lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if _ATTR_RE.match(line):
            if rule_lines:
                raise ParseError("attribute line after rules", line=no)
            attr_lines.append((no, line))
        else:
            rule_lines.append((no, line))
    if not attr_lines:
        raise ParseError("no attribute header")
    try:
        schema = Schema(tuple(parse_attribute_line(l, n) for n, l in attr_lines))
    except ValueError as e:
        raise ParseError(str(e))
    kb = KnowledgeBase(schema)
    for no, line in rule_lines:
        parsed = parse_rule_line(schema, line, no)
        (vector,) = build_vectors(schema, parsed, no)
        counters = parsed.annotations["counters"]
        if counters is not None:
            counters = _decode_counters(schema, parsed.target_index, counters)
        try:
            kb.add(
                vector,
                dynamic_priority=parsed.annotations["dp"],
                num_covers=parsed.annotations["c"],
                counters=counters,
            )
        except Exception as e:
            raise ParseError(str(e), line=no)
    return kb


def format_cells(schema: Schema, v: Vector) -> str:
    tokens = []
    for i, cell in enumerate(v.cells):
        tok = schema.decode_cell(i, cell)
        if i == v.target_index:
            tok += "_T"
        tokens.append(tok)
    return " ".join(tokens)


def _counters_trivial(rule) -> bool:
    return all(
        count == (1 if value == rule.vector.target_value else 0)
        for value, count in rule.counters.items()
    )


def format_rule(schema: Schema, rule) -> str:
    parts = [format_cells(schema, rule.vector)]
    v = rule.vector
    if v.static_priority:
        parts.append(f"p={v.static_priority}")
    if v.is_definition:
        parts.append("def")
    if rule.dynamic_priority:
        parts.append(f"dp={rule.dynamic_priority}")
    if rule.num_covers:
        parts.append(f"c={rule.num_covers}")
    if not _counters_trivial(rule):
        attr = schema.attributes[v.target_index]
        body = ",".join(
            f"{attr.values[int(value)]}:{count}"
            for value, count in sorted(rule.counters.items())
            if count
        )
        parts.append(f"counters=[{body}]")
    return " ".join(parts)


def format_vector(schema: Schema, v: Vector) -> str:
    parts = [format_cells(schema, v)]
    if v.static_priority:
        parts.append(f"p={v.static_priority}")
    if v.is_definition:
        parts.append("def")
    return " ".join(parts)


def serialize_kb(kb: KnowledgeBase) -> str:
    lines = [format_attribute(a) for a in kb.schema.attributes]
    lines.append("")
    lines.extend(format_rule(kb.schema, r) for r in kb.rules)
    return "\n".join(lines) + "\n"
