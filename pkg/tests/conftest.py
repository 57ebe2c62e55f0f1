"""Shared strategies and helpers for the test suite."""

from hypothesis import strategies as st

from tamari_balance.trees import all_trees


def trees_with_up_to(max_nodes: int):
    """Strategy drawing a tree with at most ``max_nodes`` nodes."""
    return st.integers(0, max_nodes).flatmap(
        lambda n: st.sampled_from(all_trees(n))
    )


small_trees = trees_with_up_to(9)
tiny_trees = trees_with_up_to(6)
