"""Greedy feasible-arm selection shared by the policy and the genie.

Scans arms in decreasing weight order and admits an arm iff the admitted
set stays jointly assignable to pairwise-distinct players (checked with
an incremental augmenting-path matching, i.e. transversal-matroid
independence). Greedy over a matroid maximizes total weight, so when the
admitted set reaches one arm per player its weight equals the best
achievable sum over any collision-free assignment.
"""

from __future__ import annotations


def holder_map(arm_sets) -> dict:
    """arm -> sorted tuple of the 1-based players whose set contains it."""
    holders = {}
    for i, s in enumerate(arm_sets, start=1):
        for k in s:
            holders.setdefault(k, []).append(i)
    return {k: tuple(sorted(v)) for k, v in holders.items()}


def _augment(arm, holders, matched, visited) -> bool:
    # Kuhn's algorithm step: try to give `arm` a player, rematching
    # previously matched arms along an alternating path.
    for p in holders[arm]:
        if p in visited:
            continue
        visited.add(p)
        current = matched.get(p)
        if current is None or _augment(current, holders, matched, visited):
            matched[p] = arm
            return True
    return False


def greedy_feasible_arms(ordered_arms, holders, n_slots):
    """Admit arms from ``ordered_arms`` while they stay jointly assignable.

    Returns ``(admitted, matched)``: the admitted arms in scan order and a
    dict player -> arm realizing one distinct-arm assignment of them.
    Stops after ``n_slots`` admissions or when the arms run out.
    """
    matched = {}
    admitted = []
    for arm in ordered_arms:
        if len(admitted) == n_slots:
            break
        if arm not in holders:
            continue
        if _augment(arm, holders, matched, set()):
            admitted.append(arm)
    return admitted, matched


def option_arms(player, reduced_sets, matched) -> tuple:
    """Arms the player can receive in some optimal distinct-arm assignment.

    ``matched`` must assign every player with a non-empty reduced set. An
    arm k is an option for the player iff the exchange graph (matched arm
    of j -> other arms of j) has a path from k back to the player's matched
    arm; rotating along it yields another assignment of the same arms.
    """
    own = matched.get(player)
    if own is None:
        return tuple(reduced_sets[player - 1])
    # reverse adjacency: predecessors of arm x are the matched arms of
    # players whose reduced set contains x
    pred = {}
    for j, s in enumerate(reduced_sets, start=1):
        a = matched.get(j)
        if a is None:
            continue
        for k in s:
            if k != a:
                pred.setdefault(k, []).append(a)
    reachable = {own}
    frontier = [own]
    while frontier:
        nxt = []
        for x in frontier:
            for a in pred.get(x, ()):
                if a not in reachable:
                    reachable.add(a)
                    nxt.append(a)
        frontier = nxt
    return tuple(k for k in reduced_sets[player - 1] if k in reachable)
