"""Command line interface.

Exit codes: 0 on success / all scenarios passing, 1 when a scenario query
fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import clauses, harness, kbtext, precepts
from .errors import FlareError
from .model import DONT_KNOW, KnowledgeBase, is_asserted
from .learner import learn, render_adapt_report
from .reasoner import ReasonConfig, reason, render_trace


def _reason_config(args) -> ReasonConfig:
    return ReasonConfig(
        td_threshold=getattr(args, "td", 0.0) or 0.0,
        rng_seed=getattr(args, "seed", 0) or 0,
    )


def _load_schema(args):
    schema, target = harness.load_schema_file(args.schema)
    if getattr(args, "delta_fraction", None):
        schema = harness.apply_delta_override(schema, args.delta_fraction)
    return schema, target


def cmd_learn(args) -> int:
    if args.kb:
        kb = harness.load_kb(args.kb)
        schema = kb.schema
        target = None
    else:
        schema, target = _load_schema(args)
        kb = KnowledgeBase(schema)
    cfg = _reason_config(args)
    if args.data:
        if target is None:
            raise FlareError("--data needs --schema with a target attribute")
        _, _, vectors = harness.load_dataset(args.schema, args.data)
    else:
        vectors = harness.load_precepts(schema, args.vectors)
    if args.precepts:
        for p in harness.load_precepts(schema, args.precepts):
            learn(kb, p, p.target_value, cfg)
    for v in vectors:
        _, report = learn(kb, v, v.target_value, cfg)
        if args.trace:
            print(render_adapt_report(report, schema))
    harness.save_kb(kb, args.out)
    print(f"learned {len(vectors)} vectors -> {len(kb.rules)} rules in {args.out}")
    return 0


def cmd_reason(args) -> int:
    kb = harness.load_kb(args.kb)
    cfg = _reason_config(args)
    lines = (
        [args.query]
        if args.query
        else [
            l.split("#", 1)[0].strip()
            for l in Path(args.queries).read_text().splitlines()
            if l.split("#", 1)[0].strip()
        ]
    )
    for line in lines:
        (vector,) = kbtext.parse_vector_line(kb.schema, line)
        if is_asserted(vector.target_value):
            vector = vector.with_cell(vector.target_index, DONT_KNOW)
        outcome = reason(kb, vector, cfg)
        target = kb.schema.attributes[vector.target_index].name
        value = kb.schema.decode_cell(vector.target_index, outcome.derived_target)
        via = outcome.winner.rule_id if outcome.winner else "-"
        dist = f"{outcome.winner_distance:.6g}" if outcome.winner_distance is not None else "-"
        print(f"target={target} value={value} via={via} d={dist}")
        if args.trace:
            for t in render_trace(outcome, kb.schema):
                print(t)
    return 0


def cmd_eval(args) -> int:
    schema, target, data = harness.load_dataset(args.schema, args.data)
    if args.delta_fraction:
        schema = harness.apply_delta_override(schema, args.delta_fraction)
    cfg = harness.EvalConfig(
        folds=args.folds,
        orderings_per_fold=args.repeats,
        rng_seed=args.seed,
        td_threshold=args.td,
        precepts_path=args.precepts,
    )
    precept_vectors = (
        harness.load_precepts(schema, args.precepts) if args.precepts else []
    )
    result = harness.cross_validate(schema, target, data, cfg, precept_vectors)
    print(harness.render_eval(result))
    return 0


def cmd_scenario(args) -> int:
    cfg = _reason_config(args)
    all_ok = True
    for path in args.files:
        scenario = harness.parse_scenario(Path(path).read_text())
        report = harness.run_scenario(scenario, cfg)
        sys.stdout.write(
            harness.render_scenario_report(report, scenario.schema, name=Path(path).stem)
        )
        if args.trace:
            for r in report.results:
                for line in r.trace_lines:
                    print(f"  {line}")
        all_ok = all_ok and report.all_passed
    return 0 if all_ok else 1


def cmd_translate(args) -> int:
    parsed = clauses.parse_clauses(Path(args.clauses).read_text())
    schema, vectors = clauses.translate(
        parsed,
        instance_priority=args.instance_priority,
        facts_as_definitions=args.facts_as_definitions,
    )
    lines = [kbtext.format_attribute(a) for a in schema.attributes]
    lines.append("")
    lines.extend(kbtext.format_vector(schema, v) for v in vectors)
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_precepts(args) -> int:
    kb = harness.load_kb(args.rules)
    schema = kb.schema
    general = [r.vector for r in kb.rules]
    (facts,) = kbtext.parse_vector_line(schema, args.facts)
    target = schema.index_of(args.target)
    cfg = _reason_config(args)
    vectors, outcome = precepts.generate_precepts_detailed(
        schema,
        general,
        facts.with_cell(facts.target_index, facts.target_value),
        target,
        cfg,
        keep_intermediates=args.keep_intermediates,
    )
    for v in vectors:
        line = kbtext.format_vector(schema, v)
        if outcome.winner_distance:
            line += f"  # D={outcome.winner_distance:.6g}"
        print(line)
    if not vectors:
        print("# no precept: target could not be derived")
    return 0


def cmd_kb(args) -> int:
    kb = harness.load_kb(args.file)
    text = kbtext.serialize_kb(kb)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{len(kb.rules)} rules -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flare",
        description="Incremental rule learning and reasoning over attribute-value vectors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, td=True):
        p.add_argument("--seed", type=int, default=0)
        if td:
            p.add_argument("--td", type=float, default=0.0, help="similarity threshold for subgoals")

    p = sub.add_parser("learn", help="learn vectors into a knowledge base")
    p.add_argument("--schema", help="schema file naming the target attribute")
    p.add_argument("--data", help="CSV of examples")
    p.add_argument("--vectors", help="rule-line file (alternative to --data)")
    p.add_argument("--kb", help="existing knowledge base to extend")
    p.add_argument("--precepts", help="precept lines learned first")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", action="store_true")
    common(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("reason", help="answer queries against a knowledge base")
    p.add_argument("--kb", required=True)
    p.add_argument("--query", help="one query line")
    p.add_argument("--queries", help="file of query lines")
    p.add_argument("--trace", action="store_true")
    common(p)
    p.set_defaults(func=cmd_reason)

    p = sub.add_parser("eval", help="cross-validated accuracy on a dataset")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--precepts")
    p.add_argument("--delta-fraction", dest="delta_fraction", type=float)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scenario", help="run scenario files")
    p.add_argument("files", nargs="+")
    p.add_argument("--trace", action="store_true")
    common(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("translate", help="clause file to attribute-value vectors")
    p.add_argument("clauses")
    p.add_argument("--out")
    p.add_argument("--instance-priority", action="store_true")
    p.add_argument("--facts-as-definitions", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("precepts", help="deduce precepts from general rules")
    p.add_argument("--rules", required=True, help="knowledge base of general rules")
    p.add_argument("--facts", required=True, help="facts vector line")
    p.add_argument("--target", required=True, help="target attribute name")
    p.add_argument("--keep-intermediates", action="store_true")
    common(p)
    p.set_defaults(func=cmd_precepts)

    p = sub.add_parser("kb", help="validate and canonicalize a knowledge base file")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_kb)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FlareError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
