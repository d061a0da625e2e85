"""Incremental adaptation: nearest-match classification of each new vector.

Learning presents one vector at a time: reason first (which may fill missing
cells and update dynamic priorities), then adapt the knowledge base according
to the relationship between the completed vector and its closest match --
duplicate, subsumed, subsuming, generalizable by dropping one nominal
condition, or none of those (in which case the vector is stored, possibly as
an exception to the match).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import metrics
from .errors import SchemaMismatch, WouldCoverEverything
from .model import (
    DONT_CARE,
    DONT_KNOW,
    KnowledgeBase,
    Schema,
    StoredRule,
    Vector,
    is_asserted,
    num_asserted,
)
from .reasoner import ReasonConfig, ReasonOutcome, reason, resolve

STORED_FIRST = "stored_first"
COUNTER_UPDATE = "counter_update"
COVERED_BY_MATCH = "covered_by_match"
REPLACED_MATCH = "replaced_match"
GENERALIZED_MATCH = "generalized_match"
GENERALIZED_INPUT = "generalized_input"
STORED_EXCEPTION = "stored_exception"
STORED_DEFAULT = "stored_default"

ACTIONS = (
    STORED_FIRST,
    COUNTER_UPDATE,
    COVERED_BY_MATCH,
    REPLACED_MATCH,
    GENERALIZED_MATCH,
    GENERALIZED_INPUT,
    STORED_EXCEPTION,
    STORED_DEFAULT,
)


@dataclass
class AdaptReport:
    action: str
    match: StoredRule | None = None
    stored: StoredRule | None = None
    removed: StoredRule | None = None
    dropped_attr: int | None = None
    predicted_target: float = DONT_KNOW
    actual_target: float = DONT_KNOW


def closest_match(kb: KnowledgeBase, v_plus: Vector) -> StoredRule | None:
    """The distance-minimizing stored rule sharing v+'s target attribute."""
    dists, indices = metrics.rule_distances(kb, v_plus.cells, v_plus.target_index)
    if not indices:
        return None
    winners = [kb.rules[i] for i in metrics.minimizing_indices(dists, indices)]
    return winners[0] if len(winners) == 1 else resolve(winners, kb)


def vectors_equal(a: Vector, b: Vector, schema: Schema) -> bool:
    """Cellwise equality over non-target cells (delta-equal on linear)."""
    if a.target_index != b.target_index:
        return False
    return all(
        metrics.cells_equal(a.cells[i], b.cells[i], schema.attributes[i])
        for i in range(schema.arity)
        if i != a.target_index
    )


def can_generalize(a: Vector, b: Vector, schema: Schema) -> int | None:
    """Index of the single differing attribute when all five generalization
    conditions hold, else None."""
    if a.target_index != b.target_index:
        return None
    differing = [
        i
        for i in range(schema.arity)
        if i != a.target_index
        and not metrics.cells_equal(a.cells[i], b.cells[i], schema.attributes[i])
    ]
    if len(differing) != 1:
        return None
    attr = differing[0]
    if schema.attributes[attr].is_linear:
        return None
    if not (is_asserted(a.target_value) and is_asserted(b.target_value)):
        return None
    if not metrics.concordant(a, b):
        return None
    na, nb = num_asserted(a), num_asserted(b)
    if abs(na - nb) > 1:
        return None
    if max(na, nb) <= 1:
        return None
    return attr


def drop_condition(v: Vector, attr_index: int) -> Vector:
    """Set the given premise cell to don't-care."""
    if v.cells[attr_index] == DONT_CARE:
        raise ValueError("cell is already don't-care")
    if num_asserted(v) <= 1:
        raise WouldCoverEverything("dropping the last premise cell")
    return v.with_cell(attr_index, DONT_CARE)


def adapt(
    kb: KnowledgeBase,
    v_plus: Vector,
    actual_target: float,
    predicted_target: float = DONT_KNOW,
) -> AdaptReport:
    """Apply exactly one adaptation branch for the completed vector v+."""
    if v_plus.target_value != actual_target:
        raise SchemaMismatch("v+ must carry the actual target value")
    schema = kb.schema
    report = AdaptReport(
        action=STORED_DEFAULT,
        predicted_target=predicted_target,
        actual_target=actual_target,
    )

    m = closest_match(kb, v_plus)
    report.match = m
    if m is None:
        report.stored = kb.add(v_plus)
        return report

    mv = m.vector
    if vectors_equal(mv, v_plus, schema):
        kb.observe_target(m, actual_target)
        report.action = COUNTER_UPDATE
        return report

    m_covers = metrics.covers(mv, v_plus, schema)
    concordant = mv.target_value == actual_target
    if m_covers and concordant:
        m.num_covers += 1
        report.action = COVERED_BY_MATCH
        return report

    if metrics.covers(v_plus, mv, schema) and concordant:
        report.stored = kb.add(v_plus, num_covers=m.num_covers + 1)
        kb.remove(m)
        report.removed = m
        report.action = REPLACED_MATCH
        return report

    drop_at = can_generalize(v_plus, mv, schema)
    if drop_at is not None:
        both_definitions = v_plus.is_definition and mv.is_definition
        top_priority = max(mv.static_priority, v_plus.static_priority)
        if metrics.specificity(v_plus) > metrics.specificity(mv) and num_asserted(mv) > 1:
            kb.set_vector(
                m,
                drop_condition(mv, drop_at).replace(
                    static_priority=top_priority, is_definition=both_definitions
                ),
            )
            report.action = GENERALIZED_MATCH
            report.dropped_attr = drop_at
            return report
        if num_asserted(v_plus) > 1:
            generalized = drop_condition(v_plus, drop_at).replace(
                static_priority=top_priority, is_definition=both_definitions
            )
            report.stored = kb.add(generalized, num_covers=m.num_covers)
            kb.remove(m)
            report.removed = m
            report.action = GENERALIZED_INPUT
            report.dropped_attr = drop_at
            return report
        report.stored = kb.add(v_plus)
        return report

    report.stored = kb.add(v_plus)
    if m_covers and not concordant:
        report.action = STORED_EXCEPTION
    return report


def learn(
    kb: KnowledgeBase,
    v: Vector,
    actual_target: float,
    cfg: ReasonConfig | None = None,
) -> tuple[ReasonOutcome, AdaptReport]:
    """Reason about v, then adapt the knowledge base to its actual target.

    Adaptation happens regardless of whether the prediction was correct. An
    empty knowledge base stores the first vector directly.
    """
    cfg = cfg or ReasonConfig()
    if not is_asserted(actual_target):
        raise SchemaMismatch("learning needs an asserted target value")
    stored_input = v.with_cell(v.target_index, actual_target)
    if not kb.rules:
        rule = kb.add(stored_input)
        outcome = ReasonOutcome(
            completed=stored_input,
            derived_target=DONT_KNOW,
            winner=None,
            winner_distance=None,
        )
        return outcome, AdaptReport(
            action=STORED_FIRST, stored=rule, actual_target=actual_target
        )
    query = v.with_cell(v.target_index, DONT_KNOW)
    outcome = reason(kb, query, cfg, actual_target=actual_target)
    v_plus = outcome.completed.with_cell(v.target_index, actual_target)
    report = adapt(kb, v_plus, actual_target, predicted_target=outcome.derived_target)
    return outcome, report


def render_adapt_report(report: AdaptReport, schema: Schema) -> str:
    """One log line per adaptation, used by the golden-trace tests."""
    rid = lambda r: r.rule_id if r is not None else "-"
    parts = [
        f"action={report.action}",
        f"match={rid(report.match)}",
        f"stored={rid(report.stored)}",
    ]
    if report.removed is not None:
        parts.append(f"removed={rid(report.removed)}")
    if report.dropped_attr is not None:
        parts.append(f"dropped={schema.attributes[report.dropped_attr].name}")
    if report.action == COVERED_BY_MATCH:
        parts.append(f"nc[{rid(report.match)}]={report.match.num_covers}")
    if report.action == COUNTER_UPDATE:
        value = schema.decode_cell(report.match.vector.target_index, report.actual_target)
        parts.append(f"counter[{rid(report.match)}][{value}]={report.match.counters[report.actual_target]}")
    return " ".join(parts)
