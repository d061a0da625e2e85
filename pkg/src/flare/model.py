"""Attribute-value data model: schema, vectors, stored rules and the knowledge base.

Cells are plain floats. Nominal values are stored as their index in the
attribute's value list, linear values as themselves. Two sentinels encode the
special symbols: ``DONT_CARE`` (+inf, the attribute is irrelevant here) and
``DONT_KNOW`` (-inf, relevant but unobserved). Linear domains are bounded, so
neither sentinel can collide with data.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaMismatch

DONT_CARE = float("inf")
DONT_KNOW = float("-inf")


def is_asserted(cell: float) -> bool:
    return cell != DONT_CARE and cell != DONT_KNOW


@dataclass(frozen=True)
class AttributeDef:
    """One attribute: nominal with named values, or bounded linear.

    For linear attributes the equality tolerance is
    ``delta_fraction * (max - min)``.
    """

    name: str
    values: tuple[str, ...] | None = None
    bounds: tuple[float, float] | None = None
    delta_fraction: float = 0.05

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be non-empty")
        if (self.values is None) == (self.bounds is None):
            raise ValueError(f"{self.name}: exactly one of values/bounds required")
        if self.values is not None:
            if len(self.values) < 2:
                raise ValueError(f"{self.name}: nominal domain needs >= 2 values")
            if len(set(self.values)) != len(self.values) or any(not v for v in self.values):
                raise ValueError(f"{self.name}: value names must be unique and non-empty")
        else:
            lo, hi = self.bounds
            if not lo < hi:
                raise ValueError(f"{self.name}: linear domain needs min < max")
        if not 0 < self.delta_fraction <= 1:
            raise ValueError(f"{self.name}: delta_fraction must be in (0, 1]")

    @property
    def is_linear(self) -> bool:
        return self.bounds is not None

    @property
    def value_range(self) -> float:
        if self.is_linear:
            return self.bounds[1] - self.bounds[0]
        return float(len(self.values))

    @property
    def delta(self) -> float:
        """Absolute equality tolerance (linear attributes only)."""
        return self.delta_fraction * (self.bounds[1] - self.bounds[0])

    def in_domain(self, cell: float) -> bool:
        if not is_asserted(cell):
            return True
        if self.is_linear:
            return self.bounds[0] <= cell <= self.bounds[1]
        return cell == int(cell) and 0 <= cell < len(self.values)

    def encode(self, token: str) -> float:
        if token == "*":
            return DONT_CARE
        if token == "?":
            return DONT_KNOW
        if self.is_linear:
            try:
                v = float(token)
            except ValueError:
                raise ValueError(f"{self.name}: not a number: {token!r}")
            if not self.in_domain(v):
                raise ValueError(f"{self.name}: {v} outside [{self.bounds[0]}, {self.bounds[1]}]")
            return v
        try:
            return float(self.values.index(token))
        except ValueError:
            raise ValueError(f"{self.name}: unknown value {token!r}")

    def decode(self, cell: float) -> str:
        if cell == DONT_CARE:
            return "*"
        if cell == DONT_KNOW:
            return "?"
        if self.is_linear:
            return repr(cell)
        return self.values[int(cell)]


@dataclass(frozen=True)
class Schema:
    """Ordered attribute universe all vectors of one knowledge base share."""

    attributes: tuple[AttributeDef, ...]

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        if len(names) < 2:
            raise ValueError("schema needs at least two attributes")

    @property
    def arity(self) -> int:
        return len(self.attributes)

    def index_of(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)

    def decode_cell(self, index: int, cell: float) -> str:
        return self.attributes[index].decode(cell)


@dataclass(frozen=True)
class Vector:
    """A fixed-arity row of cells with one designated target attribute."""

    cells: tuple[float, ...]
    target_index: int
    is_definition: bool = False
    static_priority: int = 0

    @property
    def target_value(self) -> float:
        return self.cells[self.target_index]

    def with_cell(self, index: int, value: float) -> Vector:
        cells = list(self.cells)
        cells[index] = value
        return dataclasses.replace(self, cells=tuple(cells))

    def replace(self, **kw) -> Vector:
        return dataclasses.replace(self, **kw)


def num_asserted(v: Vector) -> int:
    """Count of non-don't-care cells, the target excluded."""
    return sum(
        1 for i, c in enumerate(v.cells) if i != v.target_index and c != DONT_CARE
    )


def validate_vector(schema: Schema, v: Vector) -> list[str]:
    """Return every invariant violation (empty list when the vector is valid)."""
    problems = []
    if len(v.cells) != schema.arity:
        problems.append(f"arity {len(v.cells)} != schema arity {schema.arity}")
        return problems
    if not 0 <= v.target_index < schema.arity:
        problems.append(f"target index {v.target_index} out of range")
        return problems
    for i, cell in enumerate(v.cells):
        attr = schema.attributes[i]
        if not attr.in_domain(cell):
            problems.append(f"{attr.name}: value {cell!r} out of domain")
    if v.target_value == DONT_CARE:
        problems.append("target cell must not be don't-care")
    if all(c == DONT_CARE for i, c in enumerate(v.cells) if i != v.target_index):
        problems.append("all-don't-care premise covers every vector")
    if v.static_priority < 0:
        problems.append("static priority must be >= 0")
    return problems


@dataclass
class StoredRule:
    """A vector plus the learning metadata the engine accumulates for it.

    The vector's target cell always holds the effective target value, i.e. a
    value with maximal count in ``counters``. Ties keep the incumbent.
    """

    vector: Vector
    dynamic_priority: int = 0
    num_covers: int = 0
    counters: dict[float, int] = field(default_factory=dict)
    rule_id: str = ""

    def __eq__(self, other):
        if not isinstance(other, StoredRule):
            return NotImplemented
        return (
            self.vector == other.vector
            and self.dynamic_priority == other.dynamic_priority
            and self.num_covers == other.num_covers
            and self.counters == other.counters
        )


def effective_target_value(rule: StoredRule) -> float:
    """The rule's current conclusion: an argmax of its counters."""
    if not rule.counters:
        raise ValueError("rule has no counters")
    return rule.vector.target_value


class KnowledgeBase:
    """Ordered, mutable collection of stored rules over one schema.

    Insertion order is preserved and observable: residual conflict-resolution
    ties fall back to it. A single KB must not be mutated concurrently;
    independent instances are safe to use in parallel.
    """

    def __init__(self, schema: Schema):
        self.schema = schema
        self.rules: list[StoredRule] = []
        self._seq = 0
        self._arrays = None

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return self.schema == other.schema and self.rules == other.rules

    def _invalidate(self):
        self._arrays = None

    def _check_storable(self, v: Vector):
        problems = validate_vector(self.schema, v)
        if problems:
            raise SchemaMismatch("; ".join(problems))
        if not is_asserted(v.target_value):
            raise SchemaMismatch("stored rules need an asserted target value")
        if self.schema.attributes[v.target_index].is_linear:
            raise SchemaMismatch("stored rules need a nominal target attribute")

    def add(
        self,
        v: Vector,
        *,
        dynamic_priority: int = 0,
        num_covers: int = 0,
        counters: dict[float, int] | None = None,
    ) -> StoredRule:
        self._check_storable(v)
        if counters is None:
            domain = self.schema.attributes[v.target_index].values
            counters = {float(i): 0 for i in range(len(domain))}
            counters[v.target_value] = 1
        else:
            counters = dict(counters)
            if counters.get(v.target_value, 0) < max(counters.values(), default=0):
                raise SchemaMismatch("target value is not an argmax of counters")
        self._seq += 1
        rule = StoredRule(
            vector=v,
            dynamic_priority=dynamic_priority,
            num_covers=num_covers,
            counters=counters,
            rule_id=f"r{self._seq}",
        )
        self.rules.append(rule)
        self._invalidate()
        return rule

    def remove(self, rule: StoredRule):
        self.rules.remove(rule)
        self._invalidate()

    def set_vector(self, rule: StoredRule, v: Vector):
        self._check_storable(v)
        rule.vector = v
        self._invalidate()

    def observe_target(self, rule: StoredRule, value: float):
        """Record one more observation of ``value`` for this rule's target.

        Switches the effective value only when the new count strictly exceeds
        the incumbent's, so ties never cause oscillation.
        """
        rule.counters[value] = rule.counters.get(value, 0) + 1
        if rule.counters[value] > rule.counters[rule.vector.target_value]:
            self.set_vector(rule, rule.vector.with_cell(rule.vector.target_index, value))

    def index_of(self, rule: StoredRule) -> int:
        return next(i for i, r in enumerate(self.rules) if r is rule)

    def rules_for_target(self, target_index: int) -> list[StoredRule]:
        return [r for r in self.rules if r.vector.target_index == target_index]

    # Cached per-rule arrays for the vectorized candidate scans in metrics.
    def arrays(self):
        if self._arrays is None:
            n, a = len(self.rules), self.schema.arity
            m = np.empty((n, a), dtype=np.float64)
            targets = np.empty(n, dtype=np.int64)
            asserted = np.empty(n, dtype=np.float64)
            for i, r in enumerate(self.rules):
                m[i] = r.vector.cells
                targets[i] = r.vector.target_index
                asserted[i] = num_asserted(r.vector)
            self._arrays = (m, targets, asserted)
        return self._arrays
