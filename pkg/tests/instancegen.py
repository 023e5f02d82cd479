"""Random instance generators shared by the policy tests and acceptance suite.

Two families:

- ``free_form``: connected graph + clique-held arm sets (arbitrary overlap
  patterns). Used where only the matching value matters; optionally
  filtered to instances where every player can receive a distinct arm.
- ``clique_block``: players partitioned into graph cliques, each clique
  sharing one identical arm pool, pools disjoint across cliques and at
  least as large as the clique. This is the family on which independent
  ranked picks are provably collision-free (the "indistinguishable
  players" premise holds), mirroring the shared-pool experiment setup.
"""

import numpy as np

from walkbandits import build_topology
from walkbandits.matching import greedy_feasible_arms, holder_map


def distinct_uniform(rng, k, low=0.05, high=0.95):
    while True:
        values = rng.uniform(low, high, size=k)
        if len(np.unique(values)) == k:
            return values


def free_form(rng, n_max=4, k_max=6, require_perfect=False):
    """Connected graph + arm sets held by random neighbor cliques."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        k = int(rng.integers(n, k_max + 1))
        graph = build_topology(("random", 0.6, int(rng.integers(1 << 30))), n)
        sets = [set() for _ in range(n)]
        for arm in range(1, k + 1):
            owner = int(rng.integers(1, n + 1))
            sets[owner - 1].add(arm)
            clique = [owner]
            for j in rng.permutation(n) + 1:
                j = int(j)
                if j == owner or rng.random() > 0.4:
                    continue
                if all(graph.are_neighbors(j, h) for h in clique):
                    sets[j - 1].add(arm)
                    clique.append(j)
        if any(not s for s in sets):
            continue
        sets = tuple(frozenset(s) for s in sets)
        if require_perfect:
            admitted, _ = greedy_feasible_arms(
                sorted(range(1, k + 1)), holder_map(sets), n
            )
            if len(admitted) < n:
                continue
        return graph, sets, distinct_uniform(rng, k)


def clique_block(rng, n_max=6, k_max=12):
    """Players grouped into graph cliques sharing identical disjoint pools."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        k = int(rng.integers(n, k_max + 1))
        graph = build_topology(("random", 0.65, int(rng.integers(1 << 30))), n)

        # greedy clique cover of the players
        unassigned = list(rng.permutation(n) + 1)
        cliques = []
        while unassigned:
            seed = int(unassigned.pop(0))
            clique = [seed]
            for j in list(unassigned):
                j = int(j)
                if all(graph.are_neighbors(j, h) for h in clique) and rng.random() < 0.7:
                    clique.append(j)
                    unassigned.remove(j)
            cliques.append(clique)

        # pools: each clique needs at least |clique| arms
        needed = sum(len(c) for c in cliques)
        if k < needed:
            continue
        spare = k - needed
        sizes = [len(c) for c in cliques]
        for _ in range(spare):
            sizes[int(rng.integers(len(sizes)))] += 1
        arm_ids = list(rng.permutation(k) + 1)
        sets = [None] * n
        start = 0
        for clique, size in zip(cliques, sizes):
            pool = frozenset(int(a) for a in arm_ids[start:start + size])
            start += size
            for member in clique:
                sets[member - 1] = pool
        return graph, tuple(sets), distinct_uniform(rng, k)
