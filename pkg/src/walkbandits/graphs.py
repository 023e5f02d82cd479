"""Communication graphs and the Metropolis consensus matrix.

Players are vertices of a connected undirected graph; each player's
neighborhood is self-inclusive (a player always hears itself). The
Metropolis rule turns the graph into a symmetric doubly stochastic
mixing matrix whose powers converge geometrically to the uniform
matrix; ``mixing_deviation`` measures that convergence for tests and
diagnostics.

Player ids are 1-based everywhere; matrix row/column ``i - 1``
corresponds to player ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

_MAX_RANDOM_GRAPH_ATTEMPTS = 1000


@dataclass(frozen=True)
class CommGraph:
    """Connected player topology with self-inclusive neighbor sets."""

    n_players: int
    edges: frozenset  # frozenset of frozenset({i, j}) pairs, 1-based ids
    neighbor_sets: tuple  # neighbor_sets[i-1] = frozenset, includes i

    def neighbors(self, player: int) -> frozenset:
        """N_i, including the player itself."""
        return self.neighbor_sets[player - 1]

    def degree(self, player: int) -> int:
        """Number of graph neighbors, excluding the player itself."""
        return len(self.neighbor_sets[player - 1]) - 1

    def are_neighbors(self, i: int, j: int) -> bool:
        return j in self.neighbor_sets[i - 1]


@dataclass(frozen=True)
class ConsensusMatrix:
    """Symmetric doubly stochastic mixing weights on a CommGraph."""

    weights: np.ndarray = field(repr=False)  # (N, N), row i-1 = player i
    beta: float  # smallest strictly positive entry

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def row(self, player: int) -> np.ndarray:
        return self.weights[player - 1]


def _connected(n: int, adjacency: list) -> bool:
    # breadth-first search from player 1
    if n == 0:
        return False
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adjacency[u - 1]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen) == n


def _graph_from_edges(n_players: int, edge_pairs) -> CommGraph:
    adjacency = [set() for _ in range(n_players)]
    edges = set()
    for i, j in edge_pairs:
        if not (1 <= i <= n_players and 1 <= j <= n_players):
            raise ConfigError(
                f"graph.edges: edge ({i},{j}) references a player outside 1..{n_players}"
            )
        if i == j:
            continue  # self-loops are implicit
        edges.add(frozenset((i, j)))
        adjacency[i - 1].add(j)
        adjacency[j - 1].add(i)
    if not _connected(n_players, adjacency):
        raise ConfigError("graph.edges: graph is not connected")
    neighbor_sets = tuple(
        frozenset(adjacency[i] | {i + 1}) for i in range(n_players)
    )
    return CommGraph(n_players, frozenset(edges), neighbor_sets)


def build_topology(spec, n_players: int) -> CommGraph:
    """Build a connected CommGraph from a topology descriptor.

    ``spec`` is one of:

    - ``"ring"``: cycle 1-2-...-N-1 (a path for N = 2, single node for N = 1)
    - ``"complete"``: all pairs connected
    - ``("random", edge_prob, seed)``: Erdos-Renyi, resampled until connected
    - ``("explicit", edge_list)``: explicit 1-based edge pairs
    """
    if n_players < 1:
        raise ConfigError(f"n_players must be >= 1, got {n_players}")

    if spec == "ring":
        if n_players == 1:
            return _graph_from_edges(1, [])
        if n_players == 2:
            return _graph_from_edges(2, [(1, 2)])
        edge_pairs = [(i, i % n_players + 1) for i in range(1, n_players + 1)]
        return _graph_from_edges(n_players, edge_pairs)

    if spec == "complete":
        edge_pairs = [
            (i, j) for i in range(1, n_players + 1) for j in range(i + 1, n_players + 1)
        ]
        return _graph_from_edges(n_players, edge_pairs)

    if isinstance(spec, tuple) and spec and spec[0] == "random":
        _, edge_prob, seed = spec
        if not 0.0 <= edge_prob <= 1.0:
            raise ConfigError(f"graph.edge_prob must be in [0,1], got {edge_prob}")
        rng = np.random.default_rng(seed)
        for _ in range(_MAX_RANDOM_GRAPH_ATTEMPTS):
            draws = rng.random((n_players, n_players))
            edge_pairs = [
                (i, j)
                for i in range(1, n_players + 1)
                for j in range(i + 1, n_players + 1)
                if draws[i - 1, j - 1] < edge_prob
            ]
            try:
                return _graph_from_edges(n_players, edge_pairs)
            except ConfigError:
                continue
        raise ConfigError(
            f"could not sample a connected graph in {_MAX_RANDOM_GRAPH_ATTEMPTS} attempts "
            f"(n_players={n_players}, edge_prob={edge_prob})"
        )

    if isinstance(spec, tuple) and spec and spec[0] == "explicit":
        return _graph_from_edges(n_players, spec[1])

    raise ConfigError(f"unknown topology descriptor: {spec!r}")


def metropolis_weights(graph: CommGraph) -> ConsensusMatrix:
    """Metropolis mixing matrix: P_ij = 1/max(|N_i|, |N_j|) for graph
    neighbors, zero for non-neighbors, diagonal set so rows sum to 1.

    The neighborhood sizes are self-inclusive. The result is symmetric and
    doubly stochastic for any connected graph.
    """
    n = graph.n_players
    sizes = [len(graph.neighbor_sets[i]) for i in range(n)]
    weights = np.zeros((n, n))
    for edge in graph.edges:
        i, j = sorted(edge)
        w = 1.0 / max(sizes[i - 1], sizes[j - 1])
        weights[i - 1, j - 1] = w
        weights[j - 1, i - 1] = w
    for i in range(n):
        weights[i, i] = 1.0 - weights[i].sum()
    positive = weights[weights > 0.0]
    return ConsensusMatrix(weights=weights, beta=float(positive.min()))


def mixing_deviation(matrix: ConsensusMatrix, t: int) -> float:
    """Max entrywise deviation of P^t from the uniform matrix 1/N.

    Decays geometrically: it never exceeds
    ``2 (1 + beta^-N) (1 - beta^N)^(t/N - 1)`` and is non-increasing in t.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    n = matrix.n
    power = np.linalg.matrix_power(matrix.weights, t)
    return float(np.abs(power - 1.0 / n).max())


def mixing_bound(matrix: ConsensusMatrix, t: int) -> float:
    """Geometric upper bound for ``mixing_deviation`` at round t."""
    n = matrix.n
    beta = matrix.beta
    decay = 1.0 - beta**n
    exponent = t / n - 1.0
    if decay <= 0.0:
        # beta == 1 only for the single-node graph; deviation is exactly 0
        geom = 1.0 if exponent == 0.0 else (np.inf if exponent < 0.0 else 0.0)
    else:
        geom = decay**exponent
    return float(2.0 * (1.0 + beta**-n) * geom)
