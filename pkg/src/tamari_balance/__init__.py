"""Balanced binary trees in the rotation (Tamari) order.

The package provides immutable binary trees with infix-rank addressing,
the rotation order with materialized posets and Hasse export, the
height-word calculus behind balance preservation, synchronous grammars
with truncated generating series, imbalance-pattern classification,
hypercube interval analysis, and the derived tree families (weight
balance, canopy classes, Narayana classes, general imbalance sets).

The most used names are re-exported here; each module remains the
authoritative home of its API.
"""

from .balance import (
    RotationClassification,
    RotationKind,
    balanced_trees,
    classify_rotation,
    height_word,
    is_admissible,
    is_balanced,
    rewrite_closure,
    rewrite_stages,
    rewrite_step,
)
from .families import (
    CanopyClass,
    ClosureCounterexample,
    ClosureVerdict,
    ImbalanceSet,
    canopy_class,
    classify_interval_closure,
    closure_check,
    imbalance_family,
    imbalances_within,
    is_weight_balanced,
    narayana_class,
    narayana_row,
    weight_balanced_count,
    weight_balanced_trees,
    weight_imbalance,
    weight_rank,
)
from .grammars import (
    Bud,
    BudNode,
    SynchronousGrammar,
    builtin_grammar,
    builtin_names,
    check_strict,
    check_unambiguous,
    generate,
    iterate_sum,
    iterates,
    parse_grammar,
    render_grammar,
    series,
)
from .intervals import (
    BalancedSubposet,
    RotationRootSet,
    balanced_subposet,
    count_balanced_intervals,
    count_maximal_balanced_intervals,
    hypercube_histogram,
    rotation_root_set,
    verify_hypercube,
)
from .patterns import (
    BalanceFlag,
    ImbalancePattern,
    classify_balanced,
    fibonacci_tree,
    interior_count,
    interior_trees,
    matches_at,
    occurs,
    parse_pattern,
    pattern_set,
)
from .polynomials import Monomial, Polynomial
from .tamari import (
    IncomparableError,
    RotationError,
    TamariPoset,
    covers,
    hasse_dot,
    interval,
    left_rotation,
    phi,
    right_rotation,
    rotation_ranks,
    tamari_leq,
    tamari_poset,
)
from .trees import (
    LEAF,
    BinaryTree,
    TreeParseError,
    all_trees,
    canopy,
    child_ranks,
    imbalance,
    leaf_count,
    mirror,
    nar,
    node,
    parse,
    serialize,
    subtree_at,
)

__version__ = "0.1.0"

__all__ = [
    "BalanceFlag",
    "BalancedSubposet",
    "BinaryTree",
    "Bud",
    "BudNode",
    "CanopyClass",
    "ClosureCounterexample",
    "ClosureVerdict",
    "ImbalancePattern",
    "ImbalanceSet",
    "IncomparableError",
    "LEAF",
    "Monomial",
    "Polynomial",
    "RotationClassification",
    "RotationError",
    "RotationKind",
    "RotationRootSet",
    "SynchronousGrammar",
    "TamariPoset",
    "TreeParseError",
    "all_trees",
    "balanced_subposet",
    "balanced_trees",
    "builtin_grammar",
    "builtin_names",
    "canopy",
    "canopy_class",
    "check_strict",
    "check_unambiguous",
    "child_ranks",
    "classify_balanced",
    "classify_interval_closure",
    "classify_rotation",
    "closure_check",
    "count_balanced_intervals",
    "count_maximal_balanced_intervals",
    "covers",
    "fibonacci_tree",
    "generate",
    "hasse_dot",
    "height_word",
    "hypercube_histogram",
    "imbalance",
    "imbalance_family",
    "imbalances_within",
    "interior_count",
    "interior_trees",
    "interval",
    "is_admissible",
    "is_balanced",
    "is_weight_balanced",
    "iterate_sum",
    "iterates",
    "leaf_count",
    "left_rotation",
    "matches_at",
    "mirror",
    "nar",
    "narayana_class",
    "narayana_row",
    "node",
    "occurs",
    "parse",
    "parse_grammar",
    "parse_pattern",
    "pattern_set",
    "phi",
    "render_grammar",
    "rewrite_closure",
    "rewrite_stages",
    "rewrite_step",
    "right_rotation",
    "rotation_ranks",
    "rotation_root_set",
    "serialize",
    "series",
    "subtree_at",
    "tamari_leq",
    "tamari_poset",
    "verify_hypercube",
    "weight_balanced_count",
    "weight_balanced_trees",
    "weight_imbalance",
    "weight_rank",
]
