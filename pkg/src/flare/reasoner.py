"""Forward reasoning: completion, chaining over subgoals, target assertion.

A query vector carries asserted facts plus don't-know / don't-care cells and a
designated target attribute whose cell must be don't-know. Reasoning first
applies completion (definitions read backwards), then repeatedly asserts
subgoal attributes from covering rules until a fixed point, and finally
asserts the target by rule application or, failing that, by similarity to the
nearest stored rule. Assertions are write-once: an asserted cell is never
overwritten.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import metrics
from .errors import NonMonotonicAssertion, SchemaMismatch
from .model import (
    DONT_CARE,
    DONT_KNOW,
    KnowledgeBase,
    StoredRule,
    Vector,
    effective_target_value,
    is_asserted,
    validate_vector,
)

COMPLETION = "completion"
RULE = "rule"
SIMILARITY = "similarity"


@dataclass(frozen=True)
class ReasonConfig:
    td_threshold: float = 0.0
    allow_dynamic_priority_update: bool = True
    rng_seed: int = 0

    def __post_init__(self):
        if self.td_threshold < 0:
            raise ValueError("td_threshold must be >= 0")


@dataclass(frozen=True)
class TraceEntry:
    depth: int
    attr_index: int
    rule: StoredRule
    mechanism: str


@dataclass
class ReasonOutcome:
    completed: Vector
    derived_target: float
    winner: StoredRule | None
    winner_distance: float | None
    trace: list[TraceEntry] = field(default_factory=list)
    conflicts: list[tuple[StoredRule, StoredRule]] = field(default_factory=list)
    iterations: int = 0


def resolve(candidates: list[StoredRule], kb: KnowledgeBase) -> StoredRule:
    """Break a tie between equally applicable rules.

    Filters by maximum specificity, then static priority, then dynamic
    priority, then cover count; a residual tie goes to the earliest-inserted
    rule.
    """
    if not candidates:
        raise ValueError("resolve needs at least one candidate")
    best = list(candidates)
    for key in (
        lambda r: metrics.specificity(r.vector),
        lambda r: r.vector.static_priority,
        lambda r: r.dynamic_priority,
        lambda r: r.num_covers,
    ):
        top = max(key(r) for r in best)
        best = [r for r in best if key(r) == top]
        if len(best) == 1:
            return best[0]
    return min(best, key=kb.index_of)


def applicable_rules(kb: KnowledgeBase, v: Vector, attr_index: int) -> list[StoredRule]:
    """Rules concluding on ``attr_index`` whose premises v satisfies."""
    idx = metrics.covering_rule_indices(kb, v.cells, attr_index)
    return [kb.rules[i] for i in idx]


def conflicting_defaults(r: StoredRule, s: StoredRule, v: Vector, kb: KnowledgeBase) -> bool:
    """True iff r and s are conflicting defaults over v.

    Five conditions: both cover v, equal specificity, equal static priority,
    different effective target values, and overlapping cover sets.
    """
    schema = kb.schema
    if r is s or r.vector.target_index != s.vector.target_index:
        return False
    return (
        metrics._covers_cells(r.vector.cells, v.cells, r.vector.target_index, schema)
        and metrics._covers_cells(s.vector.cells, v.cells, s.vector.target_index, schema)
        and metrics.specificity(r.vector) == metrics.specificity(s.vector)
        and r.vector.static_priority == s.vector.static_priority
        and effective_target_value(r) != effective_target_value(s)
        and metrics.overlaps(r.vector, s.vector, schema)
    )


def check_iteration_bound(productive_iterations: int, arity: int):
    """Guard the chaining loop: every productive iteration asserts at least
    one of the arity - 1 non-target attributes, so their count can never
    exceed arity - 1."""
    if productive_iterations > arity - 1:
        raise NonMonotonicAssertion(
            f"{productive_iterations} productive iterations on arity {arity}"
        )


def _definitions_for(kb: KnowledgeBase, attr_index: int, value: float) -> list[StoredRule]:
    return [
        r
        for r in kb.rules
        if r.vector.is_definition
        and r.vector.target_index == attr_index
        and effective_target_value(r) == value
    ]


def _complete_cells(kb, cells, target_index, rng, trace):
    """Figure-style completion pass, mutating ``cells`` in place.

    Asserted attributes are visited in schema order; the first copy into a
    cell wins because completion only ever writes into don't-know cells.
    """
    for a in range(kb.schema.arity):
        if a == target_index or not is_asserted(cells[a]):
            continue
        defs = _definitions_for(kb, a, cells[a])
        if not defs:
            continue
        chosen = defs[0] if len(defs) == 1 else rng.choice(defs)
        for b, cell in enumerate(chosen.vector.cells):
            if b == a or not is_asserted(cell):
                continue
            if cells[b] == DONT_KNOW:
                cells[b] = cell
                trace.append(TraceEntry(0, b, chosen, COMPLETION))


def complete(kb: KnowledgeBase, v: Vector, cfg: ReasonConfig | None = None) -> Vector:
    """Copy the premises of matching definitions into v's don't-know cells."""
    cfg = cfg or ReasonConfig()
    cells = list(v.cells)
    _complete_cells(kb, cells, v.target_index, random.Random(cfg.rng_seed), [])
    return v.replace(cells=tuple(cells))


def _assert_once(cells, index, value):
    if is_asserted(cells[index]):
        raise NonMonotonicAssertion(f"cell {index} already asserted")
    cells[index] = value


def _nearest(kb, cells, attr_index):
    """(distance, minimizing rules) among rules concluding on attr_index."""
    dists, indices = metrics.rule_distances(kb, cells, attr_index)
    if not indices:
        return None, []
    winners = metrics.minimizing_indices(dists, indices)
    return float(dists.min()), [kb.rules[i] for i in winners]


def reason(
    kb: KnowledgeBase,
    v: Vector,
    cfg: ReasonConfig | None = None,
    actual_target: float | None = None,
) -> ReasonOutcome:
    """Derive a value for v's target attribute plus any reachable subgoals.

    With ``actual_target`` given and dynamic updates enabled, every pair of
    conflicting defaults met at target assertion has its concordant member's
    dynamic priority incremented before the winner is chosen.
    """
    cfg = cfg or ReasonConfig()
    schema = kb.schema
    problems = validate_vector(schema, v)
    if problems:
        raise SchemaMismatch("; ".join(problems))
    if is_asserted(v.target_value):
        raise SchemaMismatch("query target cell must be don't-know")

    target = v.target_index
    cells = list(v.cells)
    trace: list[TraceEntry] = []
    conflicts: list[tuple[StoredRule, StoredRule]] = []
    rng = random.Random(cfg.rng_seed)
    winner: StoredRule | None = None
    winner_distance: float | None = None
    iterations = 0

    _complete_cells(kb, cells, target, rng, trace)

    if not is_asserted(cells[target]):
        productive = 0
        while True:
            iterations += 1
            snapshot = tuple(cells)
            pending = []
            for a in range(schema.arity):
                if a == target or is_asserted(snapshot[a]):
                    continue
                covering = metrics.covering_rule_indices(kb, snapshot, a)
                if covering:
                    chosen = resolve([kb.rules[i] for i in covering], kb)
                    pending.append((a, effective_target_value(chosen), chosen, RULE))
                elif cfg.td_threshold > 0:
                    dist, nearest = _nearest(kb, snapshot, a)
                    if nearest and dist <= cfg.td_threshold:
                        chosen = resolve(nearest, kb)
                        pending.append((a, effective_target_value(chosen), chosen, SIMILARITY))
            for a, value, chosen, mech in pending:
                _assert_once(cells, a, value)
                trace.append(TraceEntry(iterations, a, chosen, mech))
            if not pending:
                break
            productive += 1
            check_iteration_bound(productive, schema.arity)

        candidates = applicable_rules(kb, Vector(tuple(cells), target), target)
        if candidates:
            probe = Vector(tuple(cells), target)
            for i, r in enumerate(candidates):
                for s in candidates[i + 1 :]:
                    if conflicting_defaults(r, s, probe, kb):
                        conflicts.append((r, s))
            if actual_target is not None and cfg.allow_dynamic_priority_update:
                for r, s in conflicts:
                    for member in (r, s):
                        if effective_target_value(member) == actual_target:
                            member.dynamic_priority += 1
            winner = resolve(candidates, kb)
            winner_distance = metrics._distance_cells(
                winner.vector.cells, cells, target, schema
            )
            _assert_once(cells, target, effective_target_value(winner))
            trace.append(TraceEntry(max(iterations, 1), target, winner, RULE))
        else:
            dist, nearest = _nearest(kb, cells, target)
            if nearest:
                winner = resolve(nearest, kb)
                winner_distance = dist
                _assert_once(cells, target, effective_target_value(winner))
                trace.append(TraceEntry(max(iterations, 1), target, winner, SIMILARITY))
    else:
        # target supplied by completion; locate the responsible entry
        entry = next(t for t in trace if t.attr_index == target)
        winner = entry.rule
        winner_distance = 0.0

    return ReasonOutcome(
        completed=v.replace(cells=tuple(cells)),
        derived_target=cells[target],
        winner=winner,
        winner_distance=winner_distance,
        trace=trace,
        conflicts=conflicts,
        iterations=iterations,
    )


def render_trace(outcome: ReasonOutcome, schema) -> list[str]:
    """One line per derived cell: depth, attribute, value, rule, mechanism."""
    lines = []
    for t in outcome.trace:
        value = schema.decode_cell(t.attr_index, outcome.completed.cells[t.attr_index])
        lines.append(
            f"depth={t.depth} attr={schema.attributes[t.attr_index].name} "
            f"value={value} via={t.rule.rule_id} mech={t.mechanism}"
        )
    return lines
