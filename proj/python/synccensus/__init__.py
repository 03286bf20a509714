"""Exhaustive census of synchronizing two-letter automata.

Tables are 0-based, ``delta[q][a]`` is the target of state ``q`` under
letter ``a``. Counts are plain Python ints.
"""

from ._core import (
    TransitionTable,
    automorphism_order,
    build_family,
    canonical_form,
    census,
    count_classes,
    enumerate,
    expected_length,
    find_gaps,
    is_irreducible,
    is_strongly_connected,
    is_synchronizing,
    island,
    shard_space,
    shortest_reset,
    verify_cerny,
    verify_family,
)

FAMILIES = ("cerny", "w-prime", "b-dot", "w-double-prime", "w-dot-double-prime")

__all__ = [
    "FAMILIES",
    "TransitionTable",
    "automorphism_order",
    "build_family",
    "canonical_form",
    "census",
    "count_classes",
    "enumerate",
    "expected_length",
    "find_gaps",
    "is_irreducible",
    "is_strongly_connected",
    "is_synchronizing",
    "island",
    "shard_space",
    "shortest_reset",
    "verify_cerny",
    "verify_family",
]
