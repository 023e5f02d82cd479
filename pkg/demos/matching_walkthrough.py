"""Step through the feasible-arm matching and the id-rank tie-break.

Three players with overlapping arm sets all run the same decentralized
procedure on the same shared information; the printout shows why the
scan discards an arm that cannot be assigned to a distinct player, how
every player ends up with the same reduced sets, and how the id ranking
splits the tied players across the tied arms without any messages.

Run: python demos/matching_walkthrough.py
"""

import numpy as np

from walkbandits import genie_assignment, match_arms, optimal_tuples, rank_and_pick

SETS = (frozenset({1, 2, 3}), frozenset({1, 2, 5}), frozenset({4, 5}))
INDICES = np.array([0.9, 0.8, 0.7, 0.6, 0.5])


def show(label, value):
    print(f"  {label:<22s} {value}")


def main():
    print("arm sets:")
    for i, s in enumerate(SETS, start=1):
        show(f"player {i}", sorted(s))
    print("indices (shared ordering):",
          {k: float(v) for k, v in enumerate(INDICES, start=1)})

    print("\nmatching from player 2's perspective:")
    match = match_arms(INDICES, SETS, self_id=2)
    show("feasible arms", match.feasible_arms)
    show("reduced sets", match.reduced_sets)
    show("own options", match.own_options)
    show("optimal assignments", sorted(optimal_tuples(match, INDICES)))
    print("  (arm 3 was scanned and discarded: only player 1 holds arms")
    print("   {1,2,3}, so a third distinct player cannot be served)")

    print("\nindependent ranked picks:")
    for i in (1, 2, 3):
        arm, _ = rank_and_pick(match_arms(INDICES, SETS, self_id=i))
        show(f"player {i} pulls", arm)

    print("\ngenie on a disjoint-optimum instance:")
    sets = (frozenset({1, 3}), frozenset({1, 2, 4}), frozenset({2, 5}))
    assignment, value = genie_assignment(sets, INDICES)
    show("sets", [sorted(s) for s in sets])
    show("assignment", assignment)
    show("value", f"{value:.2f}  (greedy per-player picks would collide on arm 1)")


if __name__ == "__main__":
    main()
