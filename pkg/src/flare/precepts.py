"""Deduce domain-specific precepts from general rules plus known facts.

General rules are learned into a scratch knowledge base, then a facts vector
is reasoned about. When the designated target comes out asserted, the derived
value together with the original facts forms one precept; cells asserted along
the inference chain are reset to don't-care unless explicitly kept.
"""

from __future__ import annotations

from typing import Iterable

from .errors import SchemaMismatch
from .model import DONT_CARE, DONT_KNOW, KnowledgeBase, Schema, Vector, is_asserted
from .learner import learn
from .reasoner import ReasonConfig, ReasonOutcome, reason


def _derive(
    schema: Schema,
    general_rules: Iterable[Vector],
    facts: Vector,
    target_index: int,
    cfg: ReasonConfig,
) -> tuple[KnowledgeBase, ReasonOutcome]:
    scratch = KnowledgeBase(schema)
    for rule in general_rules:
        if not is_asserted(rule.target_value):
            raise SchemaMismatch("general rules need asserted target values")
        learn(scratch, rule, rule.target_value, cfg)
    # facts arrive don't-care-padded; completion only fills don't-know cells,
    # so open them up for the internal query
    cells = [DONT_KNOW if c == DONT_CARE else c for c in facts.cells]
    cells[target_index] = DONT_KNOW
    query = Vector(tuple(cells), target_index)
    return scratch, reason(scratch, query, cfg)


def generate_precepts(
    schema: Schema,
    general_rules: Iterable[Vector],
    facts: Vector,
    target_index: int,
    cfg: ReasonConfig | None = None,
    *,
    keep_intermediates: bool = False,
    static_priority: int = 0,
) -> list[Vector]:
    """Return the precepts deducible from the facts (empty when the target
    stays unknown). The scratch knowledge base never leaks to the caller."""
    vectors, _ = generate_precepts_detailed(
        schema,
        general_rules,
        facts,
        target_index,
        cfg,
        keep_intermediates=keep_intermediates,
        static_priority=static_priority,
    )
    return vectors


def generate_precepts_detailed(
    schema: Schema,
    general_rules: Iterable[Vector],
    facts: Vector,
    target_index: int,
    cfg: ReasonConfig | None = None,
    *,
    keep_intermediates: bool = False,
    static_priority: int = 0,
) -> tuple[list[Vector], ReasonOutcome]:
    """Like generate_precepts but also returns the reasoning outcome, so
    callers can report how the conclusion was reached (e.g. its distance when
    similarity produced it)."""
    cfg = cfg or ReasonConfig()
    _, outcome = _derive(schema, general_rules, facts, target_index, cfg)
    if not is_asserted(outcome.derived_target):
        return [], outcome
    if keep_intermediates:
        cells = list(outcome.completed.cells)
        cells = [DONT_CARE if c == DONT_KNOW else c for c in cells]
    else:
        cells = [DONT_CARE] * schema.arity
        for i, c in enumerate(facts.cells):
            if i != target_index and is_asserted(c):
                cells[i] = c
    cells[target_index] = outcome.derived_target
    precept = Vector(
        tuple(cells),
        target_index,
        is_definition=False,
        static_priority=static_priority,
    )
    return [precept], outcome
