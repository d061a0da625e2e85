"""Restricted first-order clause language and its attribute-value translation.

Supported clauses, one per line (``#`` starts a comment)::

    block(A)                          ground fact
    ~on_table(A)                      negated ground fact
    block(x) & heavy(x) => on_table(x)      simple implication
    tpr(x,low) => eye(x,dry)                value-qualified predicates

All literals share at most one universally quantified variable. Variables are
single lowercase letters (optionally digit-suffixed); anything else in an
argument position is a constant. Each 1-ary predicate becomes a Boolean
attribute, each 2-ary predicate family a multi-valued attribute, and ground
facts introduce a trailing multi-valued ``label`` attribute whose values are
the instance constants. Attribute order is first appearance in the file,
``label`` last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ClauseSyntaxError, InconsistentArity, UnsupportedClause
from .model import DONT_CARE, AttributeDef, Schema, Vector

GROUND_FACT = "ground_fact"
IMPLICATION = "implication"

_VARIABLE_RE = re.compile(r"^[a-z][0-9]*$")
_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")
_LITERAL_RE = re.compile(r"^(~?)\s*([A-Za-z_][A-Za-z0-9_\-]*)\s*\(([^()]*)\)$")

LABEL = "label"


def _is_variable(token: str) -> bool:
    return bool(_VARIABLE_RE.match(token))


@dataclass(frozen=True)
class Literal:
    predicate: str
    negated: bool = False
    value: str | None = None  # second argument, when present
    subject: str = "x"  # variable or instance constant

    @property
    def arity(self) -> int:
        return 1 if self.value is None else 2


@dataclass(frozen=True)
class Clause:
    kind: str  # GROUND_FACT or IMPLICATION
    premise: tuple[Literal, ...]
    conclusion: Literal
    constant: str | None  # instance constant of a ground fact
    line_no: int = 0


def _parse_literal(text: str, line_no: int) -> Literal:
    m = _LITERAL_RE.match(text.strip())
    if not m:
        raise ClauseSyntaxError(f"malformed literal: {text.strip()!r}", line=line_no)
    negated = m.group(1) == "~"
    predicate = m.group(2)
    args = [a.strip() for a in m.group(3).split(",")] if m.group(3).strip() else []
    if not 1 <= len(args) <= 2 or not all(_IDENT_RE.match(a) or _num(a) for a in args):
        raise ClauseSyntaxError(f"bad argument list in {text.strip()!r}", line=line_no)
    if len(args) == 1:
        return Literal(predicate, negated, None, args[0])
    if _is_variable(args[1]):
        raise UnsupportedClause(
            f"second variable {args[1]!r} in {text.strip()!r}", line=line_no
        )
    return Literal(predicate, negated, args[1], args[0])


def _num(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def parse_clauses(text: str) -> list[Clause]:
    """Parse clause lines; raises with line position on errors."""
    clauses = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=>" in line:
            lhs, _, rhs = line.partition("=>")
            premise = tuple(
                _parse_literal(part, no) for part in lhs.split("&") if part.strip()
            )
            if not premise:
                raise ClauseSyntaxError("implication needs a premise", line=no)
            conclusion = _parse_literal(rhs, no)
            variables = {
                lit.subject
                for lit in premise + (conclusion,)
                if _is_variable(lit.subject)
            }
            if len(variables) > 1:
                raise UnsupportedClause(
                    f"clauses may use at most one variable, found {sorted(variables)}",
                    line=no,
                )
            if not variables:
                raise UnsupportedClause("implication without a variable", line=no)
            subjects = {lit.subject for lit in premise + (conclusion,)}
            if subjects - variables:
                raise UnsupportedClause(
                    "implications over explicit instances are not supported", line=no
                )
            if conclusion.negated and conclusion.arity == 2:
                raise UnsupportedClause(
                    "negated value-qualified conclusion", line=no
                )
            for lit in premise:
                if lit.negated and lit.arity == 2:
                    raise UnsupportedClause(
                        "negated value-qualified premise literal", line=no
                    )
            if any(
                lit.predicate == conclusion.predicate for lit in premise
            ):
                raise UnsupportedClause(
                    "recursion through the conclusion predicate", line=no
                )
            clauses.append(Clause(IMPLICATION, premise, conclusion, None, no))
        else:
            lit = _parse_literal(line, no)
            if lit.arity != 1:
                raise ClauseSyntaxError(
                    "ground facts take a single constant", line=no
                )
            if _is_variable(lit.subject):
                raise UnsupportedClause(
                    f"ground fact over variable {lit.subject!r}", line=no
                )
            clauses.append(Clause(GROUND_FACT, (), lit, lit.subject, no))
    return clauses


def _collect_attributes(clauses) -> tuple[list[str], dict[str, list[str] | None], list[str]]:
    """Predicate order of first appearance, predicate value lists, label values."""
    order: list[str] = []
    values: dict[str, list[str] | None] = {}
    label_values: list[str] = []

    def see(lit: Literal):
        if lit.predicate == LABEL:
            raise UnsupportedClause(f"predicate name {LABEL!r} is reserved", line=0)
        if lit.predicate not in values:
            order.append(lit.predicate)
            values[lit.predicate] = None if lit.arity == 1 else []
        expected = values[lit.predicate]
        if (expected is None) != (lit.arity == 1):
            raise InconsistentArity(
                f"predicate {lit.predicate!r} used with both one and two arguments"
            )
        if lit.value is not None and lit.value not in expected:
            expected.append(lit.value)

    for clause in clauses:
        for lit in clause.premise:
            see(lit)
        see(clause.conclusion)
        if clause.constant is not None and clause.constant not in label_values:
            label_values.append(clause.constant)
    return order, values, label_values


def translate(
    clauses: list[Clause],
    *,
    instance_priority: bool = False,
    facts_as_definitions: bool = False,
) -> tuple[Schema, list[Vector]]:
    """Build the schema and one vector per clause.

    ``instance_priority`` raises the static priority of vectors naming an
    explicit instance to 1. ``facts_as_definitions`` instead encodes each
    ground fact as a definition whose target is the label value.
    """
    order, values, label_values = _collect_attributes(clauses)
    attrs = []
    for name in order:
        if values[name] is None:
            attrs.append(AttributeDef(name, values=("0", "1")))
        else:
            vals = values[name]
            if len(vals) == 1:
                vals = vals + ["~" + vals[0]]  # nominal domains need 2+ values
            attrs.append(AttributeDef(name, values=tuple(vals)))
    if label_values:
        if len(label_values) == 1:
            label_values = label_values + ["~" + label_values[0]]
        attrs.append(AttributeDef(LABEL, values=tuple(label_values)))
    schema = Schema(tuple(attrs))

    def cell_value(lit: Literal) -> float:
        attr = schema.attributes[schema.index_of(lit.predicate)]
        if lit.arity == 1:
            return attr.encode("0" if lit.negated else "1")
        return attr.encode(lit.value)

    vectors = []
    for clause in clauses:
        cells = [DONT_CARE] * schema.arity
        if clause.kind == IMPLICATION:
            for lit in clause.premise:
                cells[schema.index_of(lit.predicate)] = cell_value(lit)
            target = schema.index_of(clause.conclusion.predicate)
            cells[target] = cell_value(clause.conclusion)
            vectors.append(Vector(tuple(cells), target))
        else:
            label_index = schema.index_of(LABEL)
            pred_index = schema.index_of(clause.conclusion.predicate)
            cells[label_index] = schema.attributes[label_index].encode(clause.constant)
            cells[pred_index] = cell_value(clause.conclusion)
            if facts_as_definitions:
                vectors.append(
                    Vector(tuple(cells), label_index, is_definition=True)
                )
            else:
                vectors.append(
                    Vector(
                        tuple(cells),
                        pred_index,
                        static_priority=1 if instance_priority else 0,
                    )
                )
    return schema, vectors


def expand_internal_disjunction(schema: Schema, rule_line: str) -> list[Vector]:
    """Expand per-attribute value lists (``a|b|c`` cells) into vectors."""
    from .kbtext import parse_vector_line

    return parse_vector_line(schema, rule_line, allow_disjunction=True)


def render_clause(schema: Schema, v: Vector) -> str:
    """Pretty-print a vector back to clause text (inverse of translate for
    vectors that kept their premise/conclusion shape)."""
    has_label = schema.attributes[-1].name == LABEL
    label_index = schema.arity - 1 if has_label else None

    def literal(i: int, cell: float, subject: str) -> str:
        attr = schema.attributes[i]
        if attr.values == ("0", "1"):
            neg = "~" if cell == attr.encode("0") else ""
            return f"{neg}{attr.name}({subject})"
        return f"{attr.name}({subject},{attr.decode(cell)})"

    if has_label and v.cells[label_index] != DONT_CARE and v.target_index != label_index:
        constant = schema.attributes[label_index].decode(v.cells[label_index])
        return literal(v.target_index, v.target_value, constant)

    premise = [
        literal(i, c, "x")
        for i, c in enumerate(v.cells)
        if i != v.target_index and c != DONT_CARE and i != label_index
    ]
    conclusion = literal(v.target_index, v.target_value, "x")
    if not premise:
        return conclusion
    return " & ".join(premise) + " => " + conclusion
