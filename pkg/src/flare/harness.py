"""Batch front end: dataset loading, cross-validation, scenario execution.

Scenario files drive the reasoning protocols. Sections may repeat and run in
file order::

    [schema]   attribute lines
    [insert]   rule lines inserted verbatim into the knowledge base
    [train]    vectors learned one at a time (target value from the _T cell)
    [query]    a query line (?_T at the target) followed by expect lines:
                   expect target=<value>
                   expect <attr>=<value>
"""

from __future__ import annotations

import csv
import io
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from . import kbtext
from .errors import DomainError, ParseError
from .model import (
    DONT_KNOW,
    KnowledgeBase,
    Schema,
    Vector,
    is_asserted,
    validate_vector,
)
from .learner import learn
from .reasoner import ReasonConfig, render_trace, reason


@dataclass
class EvalConfig:
    folds: int = 10
    orderings_per_fold: int = 10
    rng_seed: int = 0
    td_threshold: float = 0.0
    delta_fraction: float | None = None
    precepts_path: str | None = None

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.orderings_per_fold < 1:
            raise ValueError("orderings_per_fold must be >= 1")


@dataclass
class EvalResult:
    predictive_accuracy: float  # percent
    inductive_ratio: float
    fold_accuracies: list[float]
    fold_ratios: list[float]
    kb_sizes: list[int]
    n_instances: int


def load_schema_file(path) -> tuple[Schema, int]:
    schema, target = kbtext.parse_schema(Path(path).read_text())
    if target is None:
        raise ParseError(f"{path}: schema file must name its target attribute")
    return schema, target


def apply_delta_override(schema: Schema, delta_fraction: float) -> Schema:
    """Rebuild the schema with one delta fraction on every linear attribute."""
    import dataclasses

    return Schema(
        tuple(
            dataclasses.replace(a, delta_fraction=delta_fraction) if a.is_linear else a
            for a in schema.attributes
        )
    )


def load_dataset(schema_path, data_path) -> tuple[Schema, int, list[Vector]]:
    """Read a schema file plus CSV rows of examples ('?' = missing value)."""
    schema, target = load_schema_file(schema_path)
    vectors = []
    with open(data_path, newline="") as fh:
        for row_no, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != schema.arity:
                raise ParseError(
                    f"expected {schema.arity} columns, got {len(row)}", line=row_no
                )
            cells = []
            for col, token in enumerate(row):
                token = token.strip()
                if token == "*":
                    raise ParseError("don't-care not allowed in examples", line=row_no, column=col + 1)
                try:
                    cells.append(schema.attributes[col].encode(token))
                except ValueError as e:
                    raise DomainError(str(e), line=row_no, column=col + 1)
            v = Vector(tuple(cells), target)
            problems = validate_vector(schema, v)
            if problems:
                raise ParseError("; ".join(problems), line=row_no)
            vectors.append(v)
    return schema, target, vectors


def load_precepts(schema: Schema, path) -> list[Vector]:
    """Vector lines (KB rule-line format) over an existing schema."""
    vectors = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        vectors.extend(kbtext.parse_vector_line(schema, line, no, allow_disjunction=True))
    return vectors


def _ordering_seed(base: int, fold: int, repeat: int) -> int:
    return base * 1_000_003 + fold * 1_009 + repeat


def cross_validate(
    schema: Schema,
    target: int,
    data: list[Vector],
    cfg: EvalConfig,
    precepts: list[Vector] = (),
) -> EvalResult:
    """Seeded k-fold cross-validation with repeated random training orders.

    Every example lands in the test fold exactly once per pass. Precepts are
    learned before the training examples of each trial and are not counted in
    the inductive-ratio denominator. A don't-know prediction scores as wrong.
    """
    if not data:
        raise ValueError("empty dataset")
    indices = list(range(len(data)))
    random.Random(cfg.rng_seed).shuffle(indices)
    folds = [indices[f :: cfg.folds] for f in range(cfg.folds)]
    rcfg = ReasonConfig(td_threshold=cfg.td_threshold, rng_seed=cfg.rng_seed)

    fold_accuracies = []
    fold_ratios = []
    kb_sizes = []
    for f, test_idx in enumerate(folds):
        if not test_idx:
            raise ValueError("more folds than examples")
        train_idx = [i for g, fold in enumerate(folds) if g != f for i in fold]
        accs, ratios = [], []
        for rep in range(cfg.orderings_per_fold):
            order = list(train_idx)
            random.Random(_ordering_seed(cfg.rng_seed, f, rep)).shuffle(order)
            kb = KnowledgeBase(schema)
            for p in precepts:
                learn(kb, p, p.target_value, rcfg)
            for i in order:
                v = data[i]
                learn(kb, v, v.target_value, rcfg)
            correct = 0
            for i in test_idx:
                query = data[i].with_cell(target, DONT_KNOW)
                outcome = reason(kb, query, rcfg)
                if outcome.derived_target == data[i].target_value:
                    correct += 1
            accs.append(100.0 * correct / len(test_idx))
            ratios.append(len(kb.rules) / len(train_idx))
            kb_sizes.append(len(kb.rules))
        fold_accuracies.append(statistics.mean(accs))
        fold_ratios.append(statistics.mean(ratios))
    return EvalResult(
        predictive_accuracy=statistics.mean(fold_accuracies),
        inductive_ratio=statistics.mean(fold_ratios),
        fold_accuracies=fold_accuracies,
        fold_ratios=fold_ratios,
        kb_sizes=kb_sizes,
        n_instances=len(data),
    )


def render_eval(result: EvalResult) -> str:
    lines = [
        f"pa={result.predictive_accuracy:.2f}",
        f"ir={result.inductive_ratio:.4f}",
        f"instances={result.n_instances}",
    ]
    for f, (acc, ratio) in enumerate(zip(result.fold_accuracies, result.fold_ratios)):
        lines.append(f"fold={f} pa={acc:.2f} ir={ratio:.4f}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------


@dataclass
class Query:
    vector: Vector
    expected: dict[int, float]  # attribute index -> expected cell value
    line_no: int = 0


@dataclass
class Scenario:
    schema: Schema
    steps: list[tuple[str, object]] = field(default_factory=list)  # (kind, payload)


@dataclass
class QueryResult:
    query: Query
    derived: dict[int, float]
    passed: bool
    trace_lines: list[str]


@dataclass
class ScenarioReport:
    results: list[QueryResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


def parse_scenario(text: str) -> Scenario:
    section = None
    schema_lines: list[tuple[int, str]] = []
    raw_steps: list[tuple[str, int, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("schema", "insert", "train", "query"):
                raise ParseError(f"unknown section [{section}]", line=no)
            continue
        if section is None:
            raise ParseError("content before any section", line=no)
        if section == "schema":
            schema_lines.append((no, line))
        else:
            raw_steps.append((section, no, line))
    if not schema_lines:
        raise ParseError("scenario has no [schema] section")
    schema = Schema(
        tuple(kbtext.parse_attribute_line(l, n) for n, l in schema_lines)
    )

    scenario = Scenario(schema=schema)
    pending_query: Query | None = None
    for section, no, line in raw_steps:
        if section == "query" and line.startswith("expect"):
            if pending_query is None:
                raise ParseError("expect line before a query line", line=no)
            body = line[len("expect") :].strip()
            name, _, value = body.partition("=")
            name, value = name.strip(), value.strip()
            if not value:
                raise ParseError("expect needs <attr>=<value>", line=no)
            if name == "target":
                index = pending_query.vector.target_index
            else:
                try:
                    index = schema.index_of(name)
                except KeyError:
                    raise ParseError(f"unknown attribute {name!r}", line=no)
            try:
                pending_query.expected[index] = schema.attributes[index].encode(value)
            except ValueError as e:
                raise DomainError(str(e), line=no)
            continue
        if section == "query":
            vectors = kbtext.parse_vector_line(schema, line, no)
            (vector,) = vectors
            if is_asserted(vector.target_value):
                raise ParseError("query target cell must be ?", line=no)
            pending_query = Query(vector=vector, expected={}, line_no=no)
            scenario.steps.append(("query", pending_query))
            continue
        for vector in kbtext.parse_vector_line(schema, line, no, allow_disjunction=True):
            scenario.steps.append((section, vector))
    return scenario


def run_scenario(scenario: Scenario, cfg: ReasonConfig | None = None) -> ScenarioReport:
    """Execute steps in order: insert/learn vectors, evaluate queries."""
    cfg = cfg or ReasonConfig()
    kb = KnowledgeBase(scenario.schema)
    results = []
    for kind, payload in scenario.steps:
        if kind == "insert":
            kb.add(payload)
        elif kind == "train":
            learn(kb, payload, payload.target_value, cfg)
        else:
            query: Query = payload
            outcome = reason(kb, query.vector, cfg)
            derived = {
                i: outcome.completed.cells[i] for i in query.expected
            }
            passed = all(
                derived[i] == expected for i, expected in query.expected.items()
            )
            results.append(
                QueryResult(
                    query=query,
                    derived=derived,
                    passed=passed,
                    trace_lines=render_trace(outcome, scenario.schema),
                )
            )
    return ScenarioReport(results=results)


def render_scenario_report(report: ScenarioReport, schema: Schema, name="scenario") -> str:
    out = io.StringIO()
    for r in report.results:
        expected = " ".join(
            f"{schema.attributes[i].name}={schema.decode_cell(i, v)}"
            for i, v in sorted(r.query.expected.items())
        )
        derived = " ".join(
            f"{schema.attributes[i].name}={schema.decode_cell(i, v)}"
            for i, v in sorted(r.derived.items())
        )
        status = "PASS" if r.passed else "FAIL"
        out.write(
            f"{name} query line {r.query.line_no}: {status} expected[{expected}] derived[{derived}]\n"
        )
    out.write(f"{name}: {'PASS' if report.all_passed else 'FAIL'}\n")
    return out.getvalue()


def load_kb(path) -> KnowledgeBase:
    return kbtext.parse_kb(Path(path).read_text())


def save_kb(kb: KnowledgeBase, path):
    Path(path).write_text(kbtext.serialize_kb(kb))
