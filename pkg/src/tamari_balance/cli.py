"""Command-line front end for the library.

Four subcommands:

``enum``
    Recompute a counting sequence and compare it against the embedded
    reference values, row by row.
``series``
    Render the truncated generating series of a builtin or user grammar,
    optionally with variables assigned integer values.
``check``
    Run a structural sweep (closure of a family under the rotation
    order, or the hypercube shape of balanced intervals) and report
    PASS or FAIL with a machine-readable witness.
``hasse``
    Export a Hasse diagram (whole rotation order, balanced subposet, or
    a single interval) in DOT format.

Every command accepts ``--json`` for scripting.  Exit codes: 0 for
success or PASS, 1 for a mismatch or FAIL, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import fixtures
from .balance import balanced_trees, is_balanced
from .families import (
    ClosureCounterexample,
    ImbalanceSet,
    closure_check,
    imbalance_family,
    imbalances_within,
    narayana_row,
    weight_balanced_count,
)
from .grammars import GrammarError, builtin_grammar, builtin_names, parse_grammar, series
from .intervals import (
    balanced_subposet,
    count_balanced_intervals,
    count_maximal_balanced_intervals,
    verify_hypercube,
)
from .patterns import BalanceFlag, classify_balanced, interior_count
from .polynomials import Polynomial
from .tamari import hasse_dot, tamari_poset
from .trees import parse, serialize


class UsageError(ValueError):
    """Bad command-line input (unknown id, bound exceeded, parse error)."""


# ---------------------------------------------------------------------------
# Sequence regression


@dataclass(frozen=True)
class SequenceReport:
    """Computed-versus-reference table for one counting sequence."""

    family: str
    label: str
    indices: tuple[int, ...]
    computed: tuple[int, ...]
    expected: tuple[int, ...]

    @property
    def matches(self) -> tuple[bool, ...]:
        return tuple(c == e for c, e in zip(self.computed, self.expected))

    @property
    def ok(self) -> bool:
        return all(self.matches)

    def lines(self) -> list[str]:
        width = max(
            len(str(v)) for v in (*self.computed, *self.expected, *self.indices)
        )
        out = [f"{self.family}"]
        head = f"  {self.label:>{width}}  {'computed':>{width + 8}}  {'expected':>{width + 8}}"
        out.append(head)
        for idx, comp, exp, match in zip(
            self.indices, self.computed, self.expected, self.matches
        ):
            mark = "" if match else "  MISMATCH"
            out.append(f"  {idx:>{width}}  {comp:>{width + 8}}  {exp:>{width + 8}}{mark}")
        good = sum(self.matches)
        verdict = "PASS" if self.ok else "FAIL"
        out.append(f"{verdict} ({good}/{len(self.indices)} match)")
        return out

    def payload(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "rows": [
                {self.label: idx, "computed": comp, "expected": exp, "match": match}
                for idx, comp, exp, match in zip(
                    self.indices, self.computed, self.expected, self.matches
                )
            ],
            "ok": self.ok,
        }


_ENUM_CROSS_CHECK_MAX = 10


def _balanced_counts(max_n: int) -> tuple[int, ...]:
    poly = series(builtin_grammar("bal"), max_n + 1).specialize({"y": 0})
    out = []
    for n in range(max_n + 1):
        count = poly.coefficient({"x": n + 1})
        if n <= _ENUM_CROSS_CHECK_MAX:
            enumerated = len(balanced_trees(n))
            assert enumerated == count, (
                f"balanced routes disagree at n={n}: {enumerated} vs {count}"
            )
        out.append(count)
    return tuple(out)


def _maximal_balanced_counts(max_n: int) -> tuple[int, ...]:
    poly = series(builtin_grammar("max"), max_n + 1).specialize({"y": 0, "z": 0})
    out = []
    for n in range(max_n + 1):
        count = poly.coefficient({"x": n + 1})
        if n <= _ENUM_CROSS_CHECK_MAX:
            brute = sum(
                1
                for t in balanced_trees(n)
                if BalanceFlag.MAXIMAL_RIGHT in classify_balanced(t)
            )
            assert brute == count, (
                f"maximal routes disagree at n={n}: {brute} vs {count}"
            )
        out.append(count)
    return tuple(out)


def _interval_counts(max_n: int) -> tuple[int, ...]:
    return tuple(count_balanced_intervals(n) for n in range(max_n + 1))


def _maximal_interval_counts(max_n: int) -> tuple[int, ...]:
    return tuple(count_maximal_balanced_intervals(n) for n in range(max_n + 1))


def _interior_counts(max_h: int) -> tuple[int, ...]:
    return tuple(interior_count(h) for h in range(max_h + 1))


def _weight_balanced_counts(max_n: int) -> tuple[int, ...]:
    return tuple(weight_balanced_count(n) for n in range(max_n + 1))


def _zero_one_counts(max_n: int) -> tuple[int, ...]:
    allowed = ImbalanceSet.of(0, 1)
    return tuple(len(imbalance_family(n, allowed)) for n in range(max_n + 1))


@dataclass(frozen=True)
class _Family:
    label: str
    expected: tuple[int, ...]
    default_max: int
    compute: Callable[[int], tuple[int, ...]]

    @property
    def max_index(self) -> int:
        return len(self.expected) - 1


_FAMILIES: dict[str, _Family] = {
    "balanced": _Family("n", tuple(fixtures.BALANCED_COUNTS), 19, _balanced_counts),
    "maximal-balanced": _Family(
        "n", tuple(fixtures.MAXIMAL_BALANCED_COUNTS), 13, _maximal_balanced_counts
    ),
    "balanced-intervals": _Family(
        "n", tuple(fixtures.BALANCED_INTERVAL_COUNTS[:12]), 11, _interval_counts
    ),
    "maximal-intervals": _Family(
        "n", tuple(fixtures.MAXIMAL_INTERVAL_COUNTS[:12]), 11, _maximal_interval_counts
    ),
    "interior-by-height": _Family(
        "h", tuple(fixtures.INTERIOR_BY_HEIGHT), 12, _interior_counts
    ),
    "weight-balanced": _Family(
        "n", tuple(fixtures.WEIGHT_BALANCED_COUNTS), 21, _weight_balanced_counts
    ),
    "zero-one-balanced": _Family(
        "n", tuple(fixtures.ZERO_ONE_BALANCED_COUNTS), 26, _zero_one_counts
    ),
}


def run_enum(family: str, max_n: int | None = None, n: int | None = None) -> SequenceReport:
    """Recompute a family's counting sequence next to its reference values."""
    if family == "narayana":
        if n is None:
            raise UsageError("family narayana needs --n (a row index)")
        if max_n is not None:
            raise UsageError("family narayana takes --n, not --max-n")
        if n not in fixtures.NARAYANA_ROWS:
            known = ", ".join(str(k) for k in sorted(fixtures.NARAYANA_ROWS))
            raise UsageError(f"no reference row for n={n}; rows on file: {known}")
        expected = tuple(fixtures.NARAYANA_ROWS[n])
        computed = narayana_row(n)
        return SequenceReport(
            family="narayana",
            label="k",
            indices=tuple(range(len(expected))),
            computed=computed,
            expected=expected,
        )
    if family not in _FAMILIES:
        known = ", ".join((*sorted(_FAMILIES), "narayana"))
        raise UsageError(f"unknown family {family!r}; choose from {known}")
    if n is not None:
        raise UsageError(f"family {family} takes --max-n, not --n")
    spec = _FAMILIES[family]
    limit = spec.default_max if max_n is None else max_n
    if limit < 0:
        raise UsageError(f"--max-n must be nonnegative, got {limit}")
    if limit > spec.max_index:
        raise UsageError(
            f"no reference values for {family} beyond "
            f"{spec.label}={spec.max_index}, got {limit}"
        )
    computed = spec.compute(limit)
    return SequenceReport(
        family=family,
        label=spec.label,
        indices=tuple(range(limit + 1)),
        computed=computed,
        expected=spec.expected[: limit + 1],
    )


def cmd_enum(args: argparse.Namespace) -> int:
    report = run_enum(args.family, max_n=args.max_n, n=args.n)
    if args.json:
        print(json.dumps({"command": "enum", **report.payload()}, indent=2))
    else:
        print("\n".join(report.lines()))
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Series rendering


_ASSIGNMENT_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)=(-?\d+)$")


def _parse_assignments(items: Sequence[str]) -> dict[str, int]:
    values: dict[str, int] = {}
    for item in items:
        m = _ASSIGNMENT_RE.match(item)
        if m is None:
            raise UsageError(f"bad --set argument {item!r}; expected var=integer")
        values[m.group(1)] = int(m.group(2))
    return values


def _polynomial_payload(poly: Polynomial) -> list[dict]:
    return [
        {"coefficient": coeff, "monomial": dict(mono.pairs)}
        for mono, coeff in poly.sorted_terms()
    ]


def cmd_series(args: argparse.Namespace) -> int:
    if args.builtin is not None:
        grammar = builtin_grammar(args.builtin)
        source = args.builtin
    else:
        try:
            with open(args.file, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise UsageError(f"cannot read grammar file: {exc}") from exc
        grammar = parse_grammar(text)
        source = args.file
    assignments = _parse_assignments(args.set)
    poly = series(grammar, args.degree)
    if assignments:
        poly = poly.specialize(assignments)
    if args.json:
        print(
            json.dumps(
                {
                    "command": "series",
                    "grammar": source,
                    "degree": args.degree,
                    "assignments": assignments,
                    "polynomial": str(poly),
                    "terms": _polynomial_payload(poly),
                },
                indent=2,
            )
        )
    else:
        print(poly)
    return 0


# ---------------------------------------------------------------------------
# Structural checks


def _counterexample_payload(found: ClosureCounterexample) -> dict:
    return {
        "chain": [serialize(t) for t in found.chain],
        "failing_index": found.failing_index,
        "lower": serialize(found.lower),
        "middle": serialize(found.middle),
        "upper": serialize(found.upper),
    }


def _closure_balanced_at(n: int) -> dict | None:
    found = closure_check(is_balanced, n)
    return None if found is None else _counterexample_payload(found)


def _closure_family_at(task: tuple[int, str]) -> dict | None:
    n, text = task
    allowed = ImbalanceSet.parse(text)
    found = closure_check(lambda t: imbalances_within(t, allowed), n)
    return None if found is None else _counterexample_payload(found)


def _hypercube_at(n: int) -> dict:
    poset = tamari_poset(n)
    trees = balanced_trees(n)
    indices = [poset.index(t) for t in trees]
    histogram: dict[int, int] = {}
    failing: list[str] | None = None
    for j, upper in zip(indices, trees):
        down = poset.down_mask(j)
        for i, lower in zip(indices, trees):
            if not down >> i & 1:
                continue
            k, ok = verify_hypercube(lower, upper, poset)
            if not ok and failing is None:
                failing = [serialize(lower), serialize(upper)]
            histogram[k] = histogram.get(k, 0) + 1
    return {
        "trees": len(trees),
        "intervals": sum(histogram.values()),
        "dimensions": [
            {"dimension": k, "count": v} for k, v in sorted(histogram.items())
        ],
        "failing": failing,
    }


def _run_over_sizes(worker: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


_CHECK_PROPERTIES = ("closure-balanced", "closure-vbalanced", "hypercube")
_CHECK_DEFAULT_MAX = {"closure-balanced": 11, "closure-vbalanced": 8, "hypercube": 11}
_CHECK_MAX = 12


def _check_closure(args: argparse.Namespace, text: str | None) -> tuple[int, dict]:
    sizes = list(range(args.max_n + 1))
    if text is None:
        family = "balanced"
        outcomes = _run_over_sizes(_closure_balanced_at, sizes, args.jobs)
    else:
        family = str(ImbalanceSet.parse(text))
        outcomes = _run_over_sizes(
            _closure_family_at, [(n, text) for n in sizes], args.jobs
        )
    results = []
    lines = []
    verdict = "PASS"
    for n, outcome in zip(sizes, outcomes):
        results.append({"n": n, "counterexample": outcome})
        if outcome is None:
            lines.append(f"n={n}: closed")
            continue
        chain = " -> ".join(outcome["chain"])
        lines.append(
            f"n={n}: counterexample {chain}; "
            f"outside the family at step {outcome['failing_index']}"
        )
        verdict = "FAIL"
        break
    if verdict == "PASS":
        lines.append(
            f"PASS: family {family} is closed under the rotation order "
            f"up to n={args.max_n}"
        )
    else:
        lines.append(f"FAIL: family {family} is not closed; first break at n={n}")
    payload = {
        "command": "check",
        "property": args.property,
        "family": family,
        "max_n": args.max_n,
        "results": results,
        "verdict": verdict,
    }
    code = 0 if verdict == "PASS" else 1
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return code, payload


def _check_hypercube(args: argparse.Namespace) -> tuple[int, dict]:
    sizes = list(range(args.max_n + 1))
    outcomes = _run_over_sizes(_hypercube_at, sizes, args.jobs)
    results = []
    lines = []
    verdict = "PASS"
    for n, outcome in zip(sizes, outcomes):
        results.append({"n": n, **outcome})
        dims = ", ".join(
            f"{row['dimension']}:{row['count']}" for row in outcome["dimensions"]
        )
        lines.append(
            f"n={n}: {outcome['trees']} trees, {outcome['intervals']} intervals, "
            f"dimensions {dims or '-'}"
        )
        if outcome["failing"] is not None:
            lower, upper = outcome["failing"]
            lines.append(f"  not a hypercube: [{lower}, {upper}]")
            verdict = "FAIL"
    if verdict == "PASS":
        lines.append(
            f"PASS: every balanced interval is a hypercube up to n={args.max_n}"
        )
    else:
        lines.append("FAIL: some balanced interval is not a hypercube")
    payload = {
        "command": "check",
        "property": args.property,
        "max_n": args.max_n,
        "results": results,
        "verdict": verdict,
    }
    code = 0 if verdict == "PASS" else 1
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return code, payload


def cmd_check(args: argparse.Namespace) -> int:
    if args.property not in _CHECK_PROPERTIES:
        known = ", ".join(_CHECK_PROPERTIES)
        raise UsageError(f"unknown property {args.property!r}; choose from {known}")
    if args.max_n is None:
        args.max_n = _CHECK_DEFAULT_MAX[args.property]
    if not 0 <= args.max_n <= _CHECK_MAX:
        raise UsageError(f"--max-n must lie in 0..{_CHECK_MAX}, got {args.max_n}")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be positive, got {args.jobs}")
    if args.property == "closure-vbalanced":
        if args.v is None:
            raise UsageError("closure-vbalanced needs --v, an imbalance set")
        ImbalanceSet.parse(args.v)
        code, _ = _check_closure(args, args.v)
        return code
    if args.v is not None:
        raise UsageError(f"--v only applies to closure-vbalanced, not {args.property}")
    if args.property == "closure-balanced":
        code, _ = _check_closure(args, None)
        return code
    code, _ = _check_hypercube(args)
    return code


# ---------------------------------------------------------------------------
# Hasse diagram export


_HASSE_MAX_TAMARI = 10
_HASSE_MAX_BALANCED = 15
_HASSE_MAX_INTERVAL = 12


def _hasse_graph(args: argparse.Namespace) -> tuple[str, int, int]:
    if args.target == "tamari":
        if not 0 <= args.n <= _HASSE_MAX_TAMARI:
            raise UsageError(
                f"hasse tamari is capped at n={_HASSE_MAX_TAMARI}, got {args.n}"
            )
        poset = tamari_poset(args.n)
        edge_count = sum(len(outs) for outs in poset.cover_edges)
        return poset.to_dot(), len(poset), edge_count
    if args.target == "balanced":
        if not 0 <= args.n <= _HASSE_MAX_BALANCED:
            raise UsageError(
                f"hasse balanced is capped at n={_HASSE_MAX_BALANCED}, got {args.n}"
            )
        subposet = balanced_subposet(args.n)
        return subposet.to_dot(), len(subposet.trees), len(subposet.edges)
    lower = parse(args.lower)
    upper = parse(args.upper)
    if lower.node_count != upper.node_count:
        raise UsageError(
            f"interval endpoints need equal sizes, got "
            f"{lower.node_count} and {upper.node_count} nodes"
        )
    if lower.node_count > _HASSE_MAX_INTERVAL:
        raise UsageError(
            f"hasse interval is capped at n={_HASSE_MAX_INTERVAL}, "
            f"got {lower.node_count}"
        )
    poset = tamari_poset(lower.node_count)
    i0 = poset.index(lower)
    i1 = poset.index(upper)
    members = poset.interval_indices(i0, i1)
    if not members:
        raise UsageError(
            f"empty interval: {args.lower} does not precede {args.upper}"
        )
    member_set = set(members)
    trees = [poset.elements[i] for i in members]
    edges = [
        (poset.elements[i], poset.elements[j])
        for i in members
        for j in poset.cover_edges[i]
        if j in member_set
    ]
    dot = hasse_dot(
        trees, edges, highlight=frozenset({lower, upper}), graph_name="interval"
    )
    return dot, len(trees), len(edges)


def cmd_hasse(args: argparse.Namespace) -> int:
    dot, nodes, edges = _hasse_graph(args)
    if args.json:
        rendered = json.dumps(
            {
                "command": "hasse",
                "target": args.target,
                "nodes": nodes,
                "edges": edges,
                "dot": dot,
            },
            indent=2,
        )
    else:
        rendered = dot
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered + "\n")
        if not args.json:
            print(f"wrote {nodes} nodes, {edges} edges to {args.out}")
    else:
        print(rendered)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamari-balance",
        description="Balanced binary trees in the rotation order: "
        "sequence regression, grammar series, structural checks, "
        "and Hasse diagram export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enum_families = (*sorted(_FAMILIES), "narayana")
    p_enum = sub.add_parser(
        "enum",
        help="recompute a counting sequence against the embedded references",
        description="Families: " + ", ".join(enum_families),
    )
    p_enum.add_argument("family", help="family id, e.g. balanced")
    p_enum.add_argument(
        "--max-n", type=int, default=None, help="last index to compute"
    )
    p_enum.add_argument(
        "--n", type=int, default=None, help="row index (narayana only)"
    )
    p_enum.add_argument("--json", action="store_true", help="emit JSON")
    p_enum.set_defaults(handler=cmd_enum)

    p_series = sub.add_parser(
        "series",
        help="render a grammar's truncated generating series",
        description="Builtin grammars: " + ", ".join(builtin_names()),
    )
    source = p_series.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", help="builtin grammar id")
    source.add_argument("--file", help="grammar file path")
    p_series.add_argument(
        "--degree", type=int, required=True, help="truncation degree"
    )
    p_series.add_argument(
        "--set",
        nargs="+",
        action="extend",
        default=[],
        metavar="VAR=INT",
        help="assign integers to variables after summing",
    )
    p_series.add_argument("--json", action="store_true", help="emit JSON")
    p_series.set_defaults(handler=cmd_series)

    p_check = sub.add_parser(
        "check",
        help="run a structural sweep and report PASS or FAIL",
        description="Properties: " + ", ".join(_CHECK_PROPERTIES),
    )
    p_check.add_argument("property", help="property id, e.g. closure-balanced")
    p_check.add_argument(
        "--max-n", type=int, default=None, help="largest size to sweep"
    )
    p_check.add_argument(
        "--v", help="imbalance set for closure-vbalanced, e.g. -2..0 or 0,1"
    )
    p_check.add_argument(
        "--jobs", type=int, default=1, help="worker processes for the sweep"
    )
    p_check.add_argument("--json", action="store_true", help="emit JSON")
    p_check.set_defaults(handler=cmd_check)

    p_hasse = sub.add_parser(
        "hasse", help="export a Hasse diagram in DOT format"
    )
    hasse_sub = p_hasse.add_subparsers(dest="target", required=True)
    p_tamari = hasse_sub.add_parser("tamari", help="whole rotation order on n nodes")
    p_tamari.add_argument("n", type=int)
    p_balanced = hasse_sub.add_parser(
        "balanced", help="balanced subposet on n nodes"
    )
    p_balanced.add_argument("n", type=int)
    p_interval = hasse_sub.add_parser(
        "interval", help="one interval given by two tree strings"
    )
    p_interval.add_argument("lower", help="lower endpoint tree string")
    p_interval.add_argument("upper", help="upper endpoint tree string")
    for p_target in (p_tamari, p_balanced, p_interval):
        p_target.add_argument("--out", default=None, help="write to file")
        p_target.add_argument("--json", action="store_true", help="emit JSON")
        p_target.set_defaults(handler=cmd_hasse)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GrammarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
