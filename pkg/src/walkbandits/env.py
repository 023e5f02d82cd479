"""World model: arms, walking arm sets, collision resolution, genie assignment.

Ground truth lives here. Each round every player holds a local set of
available arms; the union of the sets covers all arms, only neighbor
players may share an arm, and no set is ever empty. Simultaneous pulls
of the same arm collide and pay zero; a solo pull draws from the arm's
reward distribution, whose support is (0, 1] so that a zero reward is an
unambiguous collision signal.

Arm ids and player ids are 1-based; ``means[k - 1]`` is arm k's true mean.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ContractError, GuardError
from .graphs import CommGraph
from .matching import greedy_feasible_arms, holder_map

REWARD_FLOOR = 1e-6  # smallest non-collision reward; keeps P(X = 0) = 0


# ---------------------------------------------------------------------------
# Arms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArmSpec:
    """One arm's reward distribution. ``kind`` is 'bernoulli' or 'gaussian'."""

    id: int
    kind: str
    mean: float
    std: float = 0.0

    def __post_init__(self):
        if self.kind not in ("bernoulli", "gaussian"):
            raise ConfigError(f"arms.kind: unknown distribution {self.kind!r}")
        if not 0.0 < self.mean <= 1.0:
            raise ConfigError(
                f"arms.means: arm {self.id} mean must be in (0,1], got {self.mean}"
            )
        if self.kind == "gaussian" and self.std < 0.0:
            raise ConfigError(f"arms.stds: arm {self.id} std must be >= 0, got {self.std}")

    def sample(self, rng: np.random.Generator) -> float:
        """Draw one non-collision reward; always in [REWARD_FLOOR, 1]."""
        if self.kind == "bernoulli":
            # support lifted from {0,1} to {floor,1}: zero stays collision-only
            return 1.0 if rng.random() < self.mean else REWARD_FLOOR
        value = rng.normal(self.mean, self.std)
        return float(min(max(value, REWARD_FLOOR), 1.0))


def bernoulli_arms(means) -> tuple:
    return tuple(ArmSpec(k + 1, "bernoulli", float(m)) for k, m in enumerate(means))


def gaussian_arms(means, stds) -> tuple:
    if len(means) != len(stds):
        raise ConfigError("arms: means and stds must have equal length")
    return tuple(
        ArmSpec(k + 1, "gaussian", float(m), float(s))
        for k, (m, s) in enumerate(zip(means, stds))
    )


# ---------------------------------------------------------------------------
# Walk models
# ---------------------------------------------------------------------------

def _check_sets(arm_sets, graph: CommGraph, n_arms: int) -> None:
    """Raise ConfigError unless the sets satisfy every world invariant."""
    covered = set()
    for i, s in enumerate(arm_sets, start=1):
        if not s:
            raise ConfigError(f"walk.sets: player {i} has an empty arm set")
        bad = [k for k in s if not 1 <= k <= n_arms]
        if bad:
            raise ConfigError(f"walk.sets: player {i} references unknown arms {bad}")
        covered |= set(s)
    if covered != set(range(1, n_arms + 1)):
        missing = sorted(set(range(1, n_arms + 1)) - covered)
        raise ConfigError(f"walk.sets: arms {missing} are in no player's set")
    for i in range(1, len(arm_sets) + 1):
        for j in range(i + 1, len(arm_sets) + 1):
            if not graph.are_neighbors(i, j) and arm_sets[i - 1] & arm_sets[j - 1]:
                shared = sorted(arm_sets[i - 1] & arm_sets[j - 1])
                raise ConfigError(
                    f"walk.sets: non-neighbor players {i},{j} share arms {shared}"
                )


def _fix_empty_sets(sets, graph: CommGraph, rng, prefer_extension: bool):
    """Grant arms to players left with empty sets, preserving invariants.

    Either extend an arm whose current holders are all neighbors of the
    player, or move an arm (whose holders can all spare it) to the player
    alone.
    """
    n = graph.n_players
    holders = {}
    for i in range(n):
        for k in sets[i]:
            holders.setdefault(k, set()).add(i + 1)

    for i in range(1, n + 1):
        if sets[i - 1]:
            continue
        extendable = sorted(
            k for k, hs in holders.items()
            if all(graph.are_neighbors(i, h) for h in hs)
        )
        movable = sorted(
            k for k, hs in holders.items()
            if all(len(sets[h - 1]) >= 2 for h in hs)
        )
        if prefer_extension and extendable:
            k = extendable[int(rng.integers(len(extendable)))]
            sets[i - 1].add(k)
            holders[k].add(i)
        elif movable:
            k = movable[int(rng.integers(len(movable)))]
            for h in holders[k]:
                sets[h - 1].discard(k)
            holders[k] = {i}
            sets[i - 1].add(k)
        elif extendable:
            k = extendable[int(rng.integers(len(extendable)))]
            sets[i - 1].add(k)
            holders[k].add(i)
        else:
            raise ConfigError(
                "cannot keep every arm set non-empty; need n_arms >= n_players"
            )
    return sets


@dataclass(frozen=True)
class StaticWalk:
    """Arm sets fixed for the whole horizon."""

    sets: tuple  # tuple of frozensets, validated against the graph at setup

    def validate(self, graph: CommGraph, n_arms: int) -> None:
        if len(self.sets) != graph.n_players:
            raise ConfigError(
                f"walk.sets: expected {graph.n_players} sets, got {len(self.sets)}"
            )
        _check_sets(self.sets, graph, n_arms)

    def sample(self, graph: CommGraph, n_arms: int, rng) -> tuple:
        return self.sets


@dataclass(frozen=True)
class CliqueShareWalk:
    """Each arm gets an owner; neighbor players may join the holder clique.

    ``max_set_size`` caps each player's set size; an arm is shared only
    among players forming a clique, which guarantees non-neighbor
    disjointness by construction.
    """

    share_prob: float
    max_set_size: int

    def validate(self, graph: CommGraph, n_arms: int) -> None:
        if not 0.0 <= self.share_prob <= 1.0:
            raise ConfigError(f"walk.share_prob must be in [0,1], got {self.share_prob}")
        if self.max_set_size < 1:
            raise ConfigError(f"walk.max_set_size must be >= 1, got {self.max_set_size}")
        if self.max_set_size * graph.n_players < n_arms:
            raise ConfigError(
                f"walk.max_set_size: {self.max_set_size} slots x {graph.n_players} players "
                f"cannot cover {n_arms} arms"
            )

    def sample(self, graph: CommGraph, n_arms: int, rng) -> tuple:
        n = graph.n_players
        sets = [set() for _ in range(n)]
        free = self.max_set_size * n  # unfilled slots across all players
        for k in range(1, n_arms + 1):
            eligible = [i for i in range(1, n + 1) if len(sets[i - 1]) < self.max_set_size]
            owner = eligible[int(rng.integers(len(eligible)))]
            sets[owner - 1].add(k)
            free -= 1
            clique = [owner]
            order = rng.permutation(n) + 1
            draws = rng.random(n)
            for j, u in zip(order, draws):
                if j == owner or u >= self.share_prob:
                    continue
                # keep one slot in reserve for every arm still unowned
                if free - 1 < n_arms - k:
                    break
                if len(sets[j - 1]) >= self.max_set_size:
                    continue
                if all(graph.are_neighbors(j, h) for h in clique):
                    sets[j - 1].add(k)
                    free -= 1
                    clique.append(j)
        _fix_empty_sets(sets, graph, rng, prefer_extension=True)
        return tuple(frozenset(s) for s in sets)


@dataclass(frozen=True)
class DownlinkWalk:
    """Each arm (user) lands in one uniformly chosen region per round; with
    probability ``overlap_prob`` it is also visible to one uniformly chosen
    graph-adjacent region."""

    overlap_prob: float

    def validate(self, graph: CommGraph, n_arms: int) -> None:
        if not 0.0 <= self.overlap_prob <= 1.0:
            raise ConfigError(
                f"walk.overlap_prob must be in [0,1], got {self.overlap_prob}"
            )

    def sample(self, graph: CommGraph, n_arms: int, rng) -> tuple:
        n = graph.n_players
        owners = rng.integers(0, n, size=n_arms)
        overlap = rng.random(n_arms)
        picks = rng.random(n_arms)
        sets = [set() for _ in range(n)]
        for k in range(n_arms):
            owner = int(owners[k]) + 1
            sets[owner - 1].add(k + 1)
            if n > 1 and overlap[k] < self.overlap_prob:
                others = sorted(graph.neighbors(owner) - {owner})
                if others:
                    extra = others[int(picks[k] * len(others))]
                    sets[extra - 1].add(k + 1)
        # moved-user fix keeps disjoint regions a partition when overlap = 0
        _fix_empty_sets(sets, graph, rng, prefer_extension=False)
        return tuple(frozenset(s) for s in sets)


# ---------------------------------------------------------------------------
# World state and round resolution
# ---------------------------------------------------------------------------

@dataclass
class WorldState:
    """Mutable per-run world: current round, arm sets, and the RNG stream."""

    graph: CommGraph
    arm_specs: tuple
    walk: object
    rng: np.random.Generator
    round: int = 1
    arm_sets: tuple = ()
    means: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.means = np.array([a.mean for a in self.arm_specs])
        self.walk.validate(self.graph, len(self.arm_specs))
        if not self.arm_sets:
            self.arm_sets = self.walk.sample(self.graph, len(self.arm_specs), self.rng)

    @property
    def n_arms(self) -> int:
        return len(self.arm_specs)


def advance_walk(world: WorldState) -> tuple:
    """Redraw the arm sets for the next round; returns the new sets."""
    world.arm_sets = world.walk.sample(world.graph, world.n_arms, world.rng)
    world.round += 1
    return world.arm_sets


@dataclass(frozen=True)
class RoundOutcome:
    """Per-player pull results for one round (index p-1 = player p)."""

    pulled: tuple
    rewards: tuple
    collided: tuple


def resolve_round(world: WorldState, actions) -> RoundOutcome:
    """Sample rewards for simultaneous pulls; colliding players get 0."""
    n = world.graph.n_players
    if len(actions) != n:
        raise ContractError(f"expected {n} actions, got {len(actions)}")
    counts = {}
    for i, arm in enumerate(actions, start=1):
        if arm not in world.arm_sets[i - 1]:
            raise ContractError(
                f"player {i} pulled arm {arm} outside its set "
                f"{sorted(world.arm_sets[i - 1])} at round {world.round}"
            )
        counts[arm] = counts.get(arm, 0) + 1
    rewards, collided = [], []
    for i, arm in enumerate(actions, start=1):
        if counts[arm] > 1:
            rewards.append(0.0)
            collided.append(True)
        else:
            rewards.append(world.arm_specs[arm - 1].sample(world.rng))
            collided.append(False)
    return RoundOutcome(tuple(actions), tuple(rewards), tuple(collided))


# ---------------------------------------------------------------------------
# Genie assignment (exact optimum of the collision-aware objective)
# ---------------------------------------------------------------------------

def _enumerate_best(arm_sets, weights, guard=10**6):
    """Exhaustive optimum of the collision-aware objective over all tuples."""
    size = 1
    for s in arm_sets:
        size *= len(s)
        if size > guard:
            raise GuardError(
                f"instance too large for exhaustive search ({size} > {guard} tuples)"
            )
    best_val, best_tuple = -math.inf, None
    for tup in itertools.product(*[sorted(s) for s in arm_sets]):
        counts = {}
        for a in tup:
            counts[a] = counts.get(a, 0) + 1
        val = math.fsum(weights[a - 1] for a in tup if counts[a] == 1)
        if val > best_val:
            best_val, best_tuple = val, tup
    return float(best_val), best_tuple


def mean_order(true_means) -> tuple:
    """All arm ids sorted by decreasing mean, arm id breaking ties."""
    means = np.asarray(true_means, dtype=float)
    return tuple(sorted(range(1, len(means) + 1), key=lambda k: (-means[k - 1], k)))


def genie_assignment(arm_sets, true_means, order=None):
    """Optimal collision-aware assignment under known means.

    Returns ``(assignment, value)`` where assignment[i-1] is player i's arm
    and value is the exact maximum of the sum of means over uniquely pulled
    arms. Greedy-by-mean with a joint-assignability test finds the
    max-weight set of one-arm-per-player (optimal by the matroid property);
    when no collision-free assignment of all players exists, a plain
    matching value would overstate the optimum (someone is forced to
    collide), so the exact value is recovered by exhaustive enumeration.

    ``order`` may carry a precomputed ``mean_order(true_means)`` to avoid
    re-sorting in per-round loops.
    """
    for i, s in enumerate(arm_sets, start=1):
        if not s:
            raise ContractError(f"player {i} has an empty arm set")
    weights = np.asarray(true_means, dtype=float)
    if order is None:
        order = mean_order(weights)
    n = len(arm_sets)
    holders = holder_map(arm_sets)
    admitted, matched = greedy_feasible_arms(order, holders, n)
    if len(admitted) == n:
        assignment = tuple(matched[i] for i in range(1, n + 1))
        return assignment, math.fsum(weights[k - 1] for k in admitted)
    value, assignment = _enumerate_best(arm_sets, weights)
    return assignment, value
