"""Distance, cover, specificity, concordance and overlap over vectors.

The distance is non-symmetric: D(x, y) sums per-attribute distances from a
stored vector x to a presented vector y, normalized by the number of asserted
(non-don't-care) premise cells of x. Rule applicability everywhere uses the
cover relation, which honors the per-attribute delta tolerance on linear
values; for linear attributes covers and D == 0 deliberately diverge.
"""

from __future__ import annotations

import numpy as np

from .errors import MismatchedTarget, TargetUnasserted, UndefinedDistance
from .model import (
    DONT_CARE,
    DONT_KNOW,
    AttributeDef,
    KnowledgeBase,
    Schema,
    Vector,
    is_asserted,
)

#: tolerance used when comparing floating-point distances for ties
TIE_EPS = 1e-9


def attr_distance(x_cell: float, y_cell: float, attr: AttributeDef) -> float:
    """Per-attribute distance d(x, y), always in [0, 1]."""
    if x_cell == DONT_CARE:
        return 0.0
    if x_cell == DONT_KNOW:
        return 0.5
    if y_cell == DONT_KNOW or y_cell == DONT_CARE:
        return 0.5
    if attr.is_linear:
        return abs(x_cell - y_cell) / attr.value_range
    return 0.0 if x_cell == y_cell else 1.0


def cells_equal(a: float, b: float, attr: AttributeDef) -> bool:
    """Cellwise equality: * matches *, ? matches ?, linear values within delta."""
    if a == DONT_CARE or b == DONT_CARE:
        return a == b
    if a == DONT_KNOW or b == DONT_KNOW:
        return a == b
    if attr.is_linear:
        return abs(a - b) <= attr.delta
    return a == b


def _distance_cells(x_cells, y_cells, skip: int, schema: Schema) -> float:
    total = 0.0
    asserted = 0
    for i, attr in enumerate(schema.attributes):
        if i == skip:
            continue
        if x_cells[i] != DONT_CARE:
            asserted += 1
        total += attr_distance(x_cells[i], y_cells[i], attr)
    if asserted == 0:
        raise UndefinedDistance("no asserted premise cell in the stored vector")
    return total / asserted


def distance(x: Vector, y: Vector, schema: Schema) -> float:
    """Non-symmetric distance D(x, y); the target attribute is left out."""
    if x.target_index != y.target_index:
        raise MismatchedTarget(
            f"target {x.target_index} vs {y.target_index}: distance undefined"
        )
    return _distance_cells(x.cells, y.cells, x.target_index, schema)


def _covers_cells(x_cells, y_cells, skip: int, schema: Schema) -> bool:
    for i, attr in enumerate(schema.attributes):
        if i == skip:
            continue
        xc = x_cells[i]
        if xc == DONT_CARE:
            continue
        if not cells_equal(xc, y_cells[i], attr):
            return False
    return True


def covers(x: Vector, y: Vector, schema: Schema) -> bool:
    """True iff y satisfies every premise of x (same target attribute)."""
    if x.target_index != y.target_index:
        return False
    return _covers_cells(x.cells, y.cells, x.target_index, schema)


def specificity(x: Vector) -> int:
    """Number of non-don't-care cells other than the target."""
    return sum(
        1 for i, c in enumerate(x.cells) if i != x.target_index and c != DONT_CARE
    )


def concordant(x: Vector, y: Vector) -> bool:
    """Same target attribute and same asserted target value."""
    if not is_asserted(x.target_value) or not is_asserted(y.target_value):
        raise TargetUnasserted("concordance needs asserted targets")
    return x.target_index == y.target_index and x.target_value == y.target_value


def overlaps(x: Vector, y: Vector, schema: Schema) -> bool:
    """True iff the sets of vectors the two rules can cover intersect.

    Don't-know cells cover nothing on their own, so they are treated like
    don't-care for intersection purposes.
    """
    if x.target_index != y.target_index:
        return False
    for i, attr in enumerate(schema.attributes):
        if i == x.target_index:
            continue
        a, b = x.cells[i], y.cells[i]
        if not is_asserted(a) or not is_asserted(b):
            continue
        if attr.is_linear:
            if abs(a - b) > attr.delta:
                return False
        elif a != b:
            return False
    return True


# ---------------------------------------------------------------------------
# Vectorized candidate scans over a knowledge base. These reproduce the scalar
# functions above over every rule sharing a target attribute; the test suite
# checks both paths against each other exhaustively on small schemas.
# ---------------------------------------------------------------------------


def _schema_arrays(schema: Schema):
    linear = np.array([a.is_linear for a in schema.attributes])
    ranges = np.array([a.value_range if a.is_linear else 1.0 for a in schema.attributes])
    deltas = np.array([a.delta if a.is_linear else 0.0 for a in schema.attributes])
    return linear, ranges, deltas


def candidate_indices(kb: KnowledgeBase, target_index: int) -> np.ndarray:
    _, targets, _ = kb.arrays()
    return np.nonzero(targets == target_index)[0]


def covering_rule_indices(kb: KnowledgeBase, cells, target_index: int) -> list[int]:
    """Indices (into kb.rules) of rules with this target that cover ``cells``."""
    cand = candidate_indices(kb, target_index)
    if len(cand) == 0:
        return []
    matrix, _, _ = kb.arrays()
    linear, _, deltas = _schema_arrays(kb.schema)
    x = matrix[cand]
    y = np.asarray(cells, dtype=np.float64)[None, :]
    star_x = x == DONT_CARE
    known_x = ~star_x & (x != DONT_KNOW)
    known_y = (y != DONT_CARE) & (y != DONT_KNOW)
    both = known_x & known_y
    xa = np.where(both, x, 0.0)
    ya = np.where(both, y, 0.0)
    eq = np.where(linear[None, :], np.abs(xa - ya) <= deltas[None, :], xa == ya)
    ok = star_x | (both & eq) | (~star_x & ~known_x & (y == DONT_KNOW))
    ok[:, target_index] = True
    return [int(i) for i in cand[ok.all(axis=1)]]


def rule_distances(kb: KnowledgeBase, cells, target_index: int):
    """Distances from every rule with this target to ``cells``.

    Returns (distances, indices); both empty when no rule shares the target.
    """
    cand = candidate_indices(kb, target_index)
    if len(cand) == 0:
        return np.empty(0), []
    matrix, _, asserted = kb.arrays()
    linear, ranges, _ = _schema_arrays(kb.schema)
    x = matrix[cand]
    y = np.asarray(cells, dtype=np.float64)[None, :]
    star_x = x == DONT_CARE
    qm_x = x == DONT_KNOW
    known_x = ~star_x & ~qm_x
    known_y = (y != DONT_CARE) & (y != DONT_KNOW)
    both = known_x & known_y
    xa = np.where(both, x, 0.0)
    ya = np.where(both, y, 0.0)
    val = np.where(linear[None, :], np.abs(xa - ya) / ranges[None, :], (xa != ya) * 1.0)
    d = np.where(star_x, 0.0, np.where(qm_x | ~known_y, 0.5, val))
    d[:, target_index] = 0.0
    # num_asserted already excludes each rule's own target column, which for
    # every candidate here is exactly ``target_index``
    num = np.maximum(asserted[cand], 1)
    return d.sum(axis=1) / num, [int(i) for i in cand]


def minimizing_indices(dists: np.ndarray, indices: list[int]) -> list[int]:
    """Rule indices whose distance ties the minimum within TIE_EPS."""
    if len(indices) == 0:
        return []
    dmin = dists.min()
    return [idx for d, idx in zip(dists, indices) if d <= dmin + TIE_EPS]
