"""Brute-force oracles for validating the matcher and the genie.

These enumerate every action tuple and score it with the collision-aware
objective (a colliding player's term is zeroed), independently of the
greedy/matching code paths they check. Test support only; instances are
guarded against combinatorial blowup.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np

from .errors import GuardError

TUPLE_GUARD = 10**6


def _guard_size(arm_sets, guard):
    size = 1
    for s in arm_sets:
        size *= max(len(s), 1)
    if size > guard:
        raise GuardError(f"{size} tuples exceed the oracle guard of {guard}")
    return size


def collision_aware_value(tup, weights) -> float:
    """Sum of weights over uniquely pulled arms in the tuple."""
    counts = Counter(tup)
    return math.fsum(weights[a - 1] for a in tup if counts[a] == 1)


def finite_indices(indices) -> np.ndarray:
    """Replace +inf index entries by a finite surrogate above every real
    index (2 + arm_id * 1e-6), preserving the tie-break order for
    brute-force comparisons that need arithmetic."""
    idx = np.array(indices, dtype=float)
    for col in np.flatnonzero(np.isinf(idx)):
        idx[col] = 2.0 + (col + 1) * 1e-6
    return idx


def brute_force_match(indices, arm_sets, guard=TUPLE_GUARD):
    """Exhaustive maximum of the collision-aware index sum over all tuples.

    Returns ``(max_value, argmax_tuples)`` with the full set of maximizing
    tuples. Indices must be finite (see ``finite_indices``).
    """
    _guard_size(arm_sets, guard)
    weights = np.asarray(indices, dtype=float)
    best, argmax = -math.inf, []
    for tup in itertools.product(*[sorted(s) for s in arm_sets]):
        val = collision_aware_value(tup, weights)
        if val > best + 1e-12:
            best, argmax = val, [tup]
        elif abs(val - best) <= 1e-12:
            argmax.append(tup)
    return best, set(argmax)


def brute_force_genie(arm_sets, true_means, guard=TUPLE_GUARD):
    """Exhaustive version of the genie assignment: ``(value, assignment)``."""
    _guard_size(arm_sets, guard)
    weights = np.asarray(true_means, dtype=float)
    best, pick = -math.inf, None
    for tup in itertools.product(*[sorted(s) for s in arm_sets]):
        val = collision_aware_value(tup, weights)
        if val > best:
            best, pick = val, tup
    return best, pick


def optimal_tuples(match, indices):
    """All maximizers of the collision-aware index sum over the reduced sets.

    Enumerates the match result's reduced sets (infinite indices allowed;
    they are replaced by the finite surrogate first).
    """
    weights = finite_indices(indices)
    best, argmax = -math.inf, []
    for tup in itertools.product(*match.reduced_sets):
        val = collision_aware_value(tup, weights)
        if val > best + 1e-12:
            best, argmax = val, [tup]
        elif abs(val - best) <= 1e-12:
            argmax.append(tup)
    return set(argmax)
