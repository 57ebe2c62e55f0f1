"""Synchronous grammars over bud trees and their counting series.

A grammar rewrites every frontier bud of a tree simultaneously, one rule
choice per bud occurrence.  The evaluation of a tree is the product of
its frontier bud variables; summing evaluations over all trees derivable
in exactly ``k`` steps gives the k-th iterate of the grammar's
substitution polynomials.  When the grammar carries a strictness
certificate, iterating the substitution with truncation computes the
generating series of the produced tree family up to any degree.

Rules may tag internal nodes with integer labels and a marked flag, and
may attach a marker variable that multiplies into the series without
counting toward truncation degrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Union

from .polynomials import Monomial, Polynomial


class GrammarError(ValueError):
    """Malformed grammar or grammar text."""


class CertificateError(GrammarError):
    """A required grammar certificate does not hold."""


class GenerationLimitError(RuntimeError):
    """Generation exceeded the configured result budget."""


@dataclass(frozen=True)
class Bud:
    """A frontier leaf awaiting substitution."""

    name: str

    def __str__(self) -> str:
        return f"<{self.name}>"


@dataclass(frozen=True)
class BudNode:
    """A node with an optional integer label and a mark flag.

    Children may be empty: a childless node is a finished leaf that
    contributes nothing to the frontier.
    """

    label: int | None
    children: tuple["BudTree", ...]
    marked: bool = False

    def __str__(self) -> str:
        head = "" if self.label is None else str(self.label)
        if self.marked:
            head += "*"
        parts = ([head] if head else []) + [str(c) for c in self.children]
        return "[" + " ".join(parts) + "]"


BudTree = Union[Bud, BudNode]


def frontier(tree: BudTree) -> tuple[str, ...]:
    """Bud names on the frontier, left to right."""
    if isinstance(tree, Bud):
        return (tree.name,)
    out: list[str] = []
    for child in tree.children:
        out.extend(frontier(child))
    return tuple(out)


def evaluation(tree: BudTree) -> Monomial:
    """Product of the frontier bud variables."""
    exps: dict[str, int] = {}
    for name in frontier(tree):
        exps[name] = exps.get(name, 0) + 1
    return Monomial(exps)


def marked_count(tree: BudTree) -> int:
    """Number of marked internal nodes."""
    if isinstance(tree, Bud):
        return 0
    return int(tree.marked) + sum(marked_count(c) for c in tree.children)


def tree_size(tree: BudTree) -> int:
    """Total number of nodes, buds included."""
    if isinstance(tree, Bud):
        return 1
    return 1 + sum(tree_size(c) for c in tree.children)


@dataclass(frozen=True)
class Rule:
    """One substitution alternative for a bud."""

    bud: str
    tree: BudTree
    marker: str | None = None


@dataclass(frozen=True)
class SynchronousGrammar:
    """Bud alphabet, axiom, rules, markers, and presentation renames.

    ``merges`` lists ``(old, new)`` variable renames applied to displayed
    series (the derivation semantics always uses the bud names).
    """

    buds: tuple[str, ...]
    axiom: str
    rules: tuple[Rule, ...]
    markers: tuple[str, ...] = ()
    merges: tuple[tuple[str, str], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.buds)) != len(self.buds):
            raise GrammarError("duplicate bud names")
        if self.axiom not in self.buds:
            raise GrammarError(f"axiom {self.axiom!r} is not a bud")
        bud_set = set(self.buds)
        if bud_set & set(self.markers):
            raise GrammarError("markers must be distinct from buds")
        ruled = set()
        for rule in self.rules:
            if rule.bud not in bud_set:
                raise GrammarError(f"rule for unknown bud {rule.bud!r}")
            if rule.marker is not None and rule.marker not in self.markers:
                raise GrammarError(f"unknown marker {rule.marker!r}")
            stray = set(frontier(rule.tree)) - bud_set
            if stray:
                raise GrammarError(f"rule uses unknown buds {sorted(stray)}")
            ruled.add(rule.bud)
        missing = bud_set - ruled
        if missing:
            raise GrammarError(f"buds without rules: {sorted(missing)}")
        for old, new in self.merges:
            if old not in bud_set:
                raise GrammarError(f"merge source {old!r} is not a bud")
            if new in bud_set:
                raise GrammarError(f"merge target {new!r} collides with a bud")

    def rules_for(self, bud: str) -> tuple[Rule, ...]:
        return _rules_by_bud(self)[bud]


@lru_cache(maxsize=None)
def _rules_by_bud(g: SynchronousGrammar) -> dict[str, tuple[Rule, ...]]:
    table: dict[str, list[Rule]] = {b: [] for b in g.buds}
    for rule in g.rules:
        table[rule.bud].append(rule)
    return {b: tuple(rs) for b, rs in table.items()}


def derive_all(g: SynchronousGrammar, tree: BudTree) -> list[BudTree]:
    """Every one-step derivation: substitute all frontier buds at once.

    Choices are enumerated in frontier order with rule order within each
    position, so the output order is deterministic.  A tree with an empty
    frontier has no derivations.
    """
    names = frontier(tree)
    if not names:
        return []
    choice_lists = [g.rules_for(name) for name in names]
    results: list[BudTree] = []
    for combo in product(*choice_lists):
        chosen = iter(combo)

        def build(t: BudTree) -> BudTree:
            if isinstance(t, Bud):
                return next(chosen).tree
            return BudNode(t.label, tuple(build(c) for c in t.children), t.marked)

        results.append(build(tree))
    return results


def generate(
    g: SynchronousGrammar, steps: int, max_results: int = 10**6
) -> tuple[BudTree, ...]:
    """Trees derivable from the axiom in exactly ``steps`` steps.

    Duplicates are removed (first occurrence kept).  Raises
    :class:`GenerationLimitError` if any level would exceed
    ``max_results`` trees.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    level: list[BudTree] = [Bud(g.axiom)]
    for _ in range(steps):
        nxt: list[BudTree] = []
        seen: set[BudTree] = set()
        for tree in level:
            for derived in derive_all(g, tree):
                if derived not in seen:
                    seen.add(derived)
                    nxt.append(derived)
                    if len(nxt) > max_results:
                        raise GenerationLimitError(
                            f"more than {max_results} trees at one level"
                        )
        level = nxt
    return tuple(level)


def substitution_polynomial(g: SynchronousGrammar, bud: str) -> Polynomial:
    """Sum of rule evaluations for a bud, markers multiplied in."""
    if bud not in g.buds:
        raise GrammarError(f"unknown bud {bud!r}")
    total = Polynomial.zero(g.markers)
    for rule in g.rules_for(bud):
        mono = evaluation(rule.tree)
        if rule.marker is not None:
            mono = mono * Monomial({rule.marker: 1})
        total = total + Polynomial({mono: 1}, g.markers)
    return total


def check_strict(g: SynchronousGrammar) -> bool:
    """Whether a strictness certificate exists.

    Every rule must keep at least one bud on its frontier, and the
    single-bud rules must admit a bud order that strictly increases
    along them (no cycles among ``b -> c`` replacements).
    """
    constraints: set[tuple[str, str]] = set()
    for rule in g.rules:
        names = frontier(rule.tree)
        if not names:
            return False
        if len(names) == 1:
            if names[0] == rule.bud:
                return False
            constraints.add((rule.bud, names[0]))
    adjacency: dict[str, set[str]] = {b: set() for b in g.buds}
    for a, b in constraints:
        adjacency[a].add(b)
    state: dict[str, int] = {}

    def has_cycle(n: str) -> bool:
        state[n] = 1
        for m in adjacency[n]:
            mark = state.get(m, 0)
            if mark == 1 or (mark == 0 and has_cycle(m)):
                return True
        state[n] = 2
        return False

    return not any(state.get(b, 0) == 0 and has_cycle(b) for b in g.buds)


def _shapes_differ(t0: BudTree, t1: BudTree) -> bool:
    """Whether some common internal position distinguishes the trees."""
    if isinstance(t0, Bud) or isinstance(t1, Bud):
        return False
    if (
        t0.label != t1.label
        or len(t0.children) != len(t1.children)
        or t0.marked != t1.marked
    ):
        return True
    return any(_shapes_differ(a, b) for a, b in zip(t0.children, t1.children))


def check_unambiguous(g: SynchronousGrammar) -> bool:
    """Whether distinct rules of each bud differ at a common internal
    position (label, arity, or mark), so derivations never collide."""
    for bud in g.buds:
        rules = g.rules_for(bud)
        for i in range(len(rules)):
            for j in range(i + 1, len(rules)):
                if not _shapes_differ(rules[i].tree, rules[j].tree):
                    return False
    return True


def _merge_assignment(g: SynchronousGrammar) -> dict[str, Polynomial] | None:
    if not g.merges:
        return None
    renames = dict(g.merges)
    assignment: dict[str, Polynomial] = {}
    for var in (*g.buds, *g.markers):
        assignment[var] = Polynomial.variable(renames.get(var, var), g.markers)
    return assignment


def _present(g: SynchronousGrammar, p: Polynomial) -> Polynomial:
    assignment = _merge_assignment(g)
    return p if assignment is None else p.substitute(assignment)


def iterates(g: SynchronousGrammar, count: int) -> list[Polynomial]:
    """Exact substitution iterates ``S^(0) .. S^(count)``.

    ``S^(0)`` is the axiom variable and each step substitutes every bud
    by its rule-evaluation sum.  Presentation renames are applied to the
    returned polynomials.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    subs: dict[str, Polynomial | int] = {
        b: substitution_polynomial(g, b) for b in g.buds
    }
    for m in g.markers:
        subs[m] = Polynomial.variable(m, g.markers)
    current = Polynomial.variable(g.axiom, g.markers)
    out = [current]
    for _ in range(count):
        current = current.substitute(subs)
        out.append(current)
    return [_present(g, p) for p in out]


def iterate_sum(g: SynchronousGrammar, count: int) -> Polynomial:
    """Sum of the exact iterates ``S^(0) + ... + S^(count)``."""
    total = Polynomial.zero(g.markers)
    for p in iterates(g, count):
        total = total + p
    return total


def series(g: SynchronousGrammar, max_degree: int) -> Polynomial:
    """Generating series of the grammar, truncated at ``max_degree``.

    Sums truncated substitution iterates until one vanishes.  Requires a
    strictness certificate: without it the iteration need not terminate,
    and :class:`CertificateError` is raised up front.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    if not check_strict(g):
        raise CertificateError("grammar carries no strictness certificate")
    subs: dict[str, Polynomial | int] = {
        b: substitution_polynomial(g, b) for b in g.buds
    }
    for m in g.markers:
        subs[m] = Polynomial.variable(m, g.markers)
    current = Polynomial.variable(g.axiom, g.markers).truncate(max_degree)
    total = Polynomial.zero(g.markers)
    limit = (max_degree + 2) * (len(g.buds) + 1)
    for _ in range(limit):
        if current.is_zero:
            return _present(g, total)
        total = total + current
        current = current.substitute(subs).truncate(max_degree)
    raise AssertionError("certified series iteration failed to terminate")


def _node(label, *children, marked=False) -> BudNode:
    return BudNode(label, tuple(children), marked)


def _builtins() -> dict[str, SynchronousGrammar]:
    x, y, z, u, v = Bud("x"), Bud("y"), Bud("z"), Bud("u"), Bud("v")
    table: dict[str, SynchronousGrammar] = {}

    table["epl"] = SynchronousGrammar(
        buds=("x", "y"),
        axiom="x",
        rules=(
            Rule("x", _node(2, x, y)),
            Rule("x", _node(3, x, y, x)),
            Rule("y", x),
        ),
        name="epl",
    )
    table["perf"] = SynchronousGrammar(
        buds=("x",),
        axiom="x",
        rules=(Rule("x", _node(None, x, x)),),
        name="perf",
    )
    table["bal23"] = SynchronousGrammar(
        buds=("x",),
        axiom="x",
        rules=(
            Rule("x", _node(2, x, x)),
            Rule("x", _node(3, x, x, x)),
        ),
        name="bal23",
    )
    table["bal"] = SynchronousGrammar(
        buds=("x", "y"),
        axiom="x",
        rules=(
            Rule("x", _node(-1, x, y)),
            Rule("x", _node(0, x, x)),
            Rule("x", _node(1, y, x)),
            Rule("y", x),
        ),
        name="bal",
    )
    table["max"] = SynchronousGrammar(
        buds=("x", "y", "z"),
        axiom="x",
        rules=(
            Rule("x", _node(0, x, x)),
            Rule("x", _node(1, y, x)),
            Rule("x", _node(-1, z, y)),
            Rule("y", x),
            Rule("z", _node(1, y, x)),
        ),
        name="max",
    )
    table["bi"] = SynchronousGrammar(
        buds=("x", "y", "z"),
        axiom="x",
        rules=(
            Rule("x", _node(-1, x, y)),
            Rule("x", _node(0, x, x)),
            Rule("x", _node(1, y, x)),
            Rule("x", _node(-1, z, y, marked=True)),
            Rule("y", x),
            Rule("z", _node(0, x, x)),
            Rule("z", _node(-1, x, y)),
        ),
        name="bi",
    )
    mbi_rules = (
        Rule("x", _node(-1, v, y)),
        Rule("x", _node(0, x, x)),
        Rule("x", _node(1, y, u)),
        Rule("x", _node(-1, z, y, marked=True)),
        Rule("y", x),
        Rule("z", _node(-1, x, y)),
        Rule("z", _node(0, x, x)),
        Rule("u", _node(-1, v, y)),
        Rule("u", _node(-1, z, y, marked=True)),
        Rule("v", _node(1, y, u)),
        Rule("v", _node(-1, z, y, marked=True)),
    )
    table["mbi"] = SynchronousGrammar(
        buds=("x", "y", "z", "u", "v"),
        axiom="x",
        rules=mbi_rules,
        merges=(("u", "t"), ("v", "t")),
        name="mbi",
    )
    table["mbi_xi"] = SynchronousGrammar(
        buds=("x", "y", "z", "u", "v"),
        axiom="x",
        rules=tuple(
            Rule(r.bud, r.tree, "xi" if _is_marked_root(r.tree) else None)
            for r in mbi_rules
        ),
        markers=("xi",),
        merges=(("u", "t"), ("v", "t")),
        name="mbi_xi",
    )
    table["bal01"] = SynchronousGrammar(
        buds=("x", "y"),
        axiom="x",
        rules=(
            Rule("x", _node(0, x, x)),
            Rule("x", _node(1, y, x)),
            Rule("y", x),
        ),
        name="bal01",
    )
    return table


def _is_marked_root(tree: BudTree) -> bool:
    return isinstance(tree, BudNode) and tree.marked


_BUILTIN_TABLE: dict[str, SynchronousGrammar] | None = None


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_builtin_table()))


def _builtin_table() -> dict[str, SynchronousGrammar]:
    global _BUILTIN_TABLE
    if _BUILTIN_TABLE is None:
        _BUILTIN_TABLE = _builtins()
    return _BUILTIN_TABLE


def builtin_grammar(name: str) -> SynchronousGrammar:
    """Look up a packaged grammar by id.

    Available ids: epl, perf, bal23, bal, max, bi, mbi, mbi_xi, bal01.
    """
    table = _builtin_table()
    if name not in table:
        raise GrammarError(
            f"unknown builtin {name!r}; choose from {', '.join(sorted(table))}"
        )
    return table[name]


_LABEL_RE = re.compile(r"-?\d+\*?$")


def _parse_bud_tree(tokens: list[str], pos: int, where: str) -> tuple[BudTree, int]:
    if pos >= len(tokens):
        raise GrammarError(f"unexpected end of rule in {where}")
    tok = tokens[pos]
    if tok.startswith("<") and tok.endswith(">") and len(tok) > 2:
        return Bud(tok[1:-1]), pos + 1
    if tok != "[":
        raise GrammarError(f"unexpected token {tok!r} in {where}")
    pos += 1
    label: int | None = None
    marked = False
    if pos < len(tokens) and (tokens[pos] == "*" or _LABEL_RE.match(tokens[pos])):
        head = tokens[pos]
        marked = head.endswith("*")
        if head != "*":
            label = int(head.rstrip("*"))
        pos += 1
    children: list[BudTree] = []
    while pos < len(tokens) and tokens[pos] != "]":
        child, pos = _parse_bud_tree(tokens, pos, where)
        children.append(child)
    if pos >= len(tokens):
        raise GrammarError(f"missing ']' in {where}")
    return BudNode(label, tuple(children), marked), pos + 1


def parse_bud_tree(text: str) -> BudTree:
    """Parse one bud-tree literal, e.g. ``[0 <x> [1* <y> <x>]]``."""
    tokens = text.replace("[", " [ ").replace("]", " ] ").split()
    tree, pos = _parse_bud_tree(tokens, 0, repr(text))
    if pos != len(tokens):
        raise GrammarError(f"trailing tokens in {text!r}")
    return tree


def parse_grammar(text: str) -> SynchronousGrammar:
    """Parse the grammar file format.

    Header lines ``buds:``, ``axiom:``, then optional ``counting:``,
    ``markers:`` and ``merge:`` lines, then rule lines like
    ``x -> [0 <x> <x>] | [1 <y> <x>] @xi``.  Blank lines and ``#``
    comments are ignored.
    """
    buds: tuple[str, ...] | None = None
    axiom: str | None = None
    counting: tuple[str, ...] | None = None
    markers: tuple[str, ...] = ()
    merges: list[tuple[str, str]] = []
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.startswith("buds:"):
            buds = tuple(line[len("buds:"):].split())
        elif line.startswith("axiom:"):
            parts = line[len("axiom:"):].split()
            if len(parts) != 1:
                raise GrammarError(f"axiom needs one bud ({where})")
            axiom = parts[0]
        elif line.startswith("counting:"):
            counting = tuple(line[len("counting:"):].split())
        elif line.startswith("markers:"):
            markers = tuple(line[len("markers:"):].split())
        elif line.startswith("merge:"):
            parts = line[len("merge:"):].split()
            if len(parts) != 2:
                raise GrammarError(f"merge needs two names ({where})")
            merges.append((parts[0], parts[1]))
        elif "->" in line:
            head, _, body = line.partition("->")
            bud = head.strip()
            if not bud:
                raise GrammarError(f"rule without a bud ({where})")
            for alt in body.split("|"):
                alt = alt.strip()
                marker = None
                if "@" in alt:
                    alt, _, marker_text = alt.partition("@")
                    alt = alt.strip()
                    marker = marker_text.strip()
                    if not marker:
                        raise GrammarError(f"empty marker name ({where})")
                if not alt:
                    raise GrammarError(f"empty rule alternative ({where})")
                rules.append(Rule(bud, parse_bud_tree(alt), marker))
        else:
            raise GrammarError(f"unrecognized line {line!r} ({where})")
    if buds is None:
        raise GrammarError("missing buds: header")
    if axiom is None:
        raise GrammarError("missing axiom: header")
    if counting is not None and set(counting) != set(buds):
        raise GrammarError("counting: must list exactly the buds")
    return SynchronousGrammar(
        buds=buds,
        axiom=axiom,
        rules=tuple(rules),
        markers=markers,
        merges=tuple(merges),
    )


def render_grammar(g: SynchronousGrammar) -> str:
    """Canonical grammar file text; ``parse_grammar`` inverts it."""
    lines = [
        "buds: " + " ".join(g.buds),
        "axiom: " + g.axiom,
        "counting: " + " ".join(g.buds),
    ]
    if g.markers:
        lines.append("markers: " + " ".join(g.markers))
    for old, new in g.merges:
        lines.append(f"merge: {old} {new}")
    for bud in g.buds:
        alts = []
        for rule in g.rules_for(bud):
            alt = str(rule.tree)
            if rule.marker is not None:
                alt += f" @{rule.marker}"
            alts.append(alt)
        lines.append(f"{bud} -> " + " | ".join(alts))
    return "\n".join(lines) + "\n"
