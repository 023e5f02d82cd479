"""Per-player decision logic: estimation, UCB indices, matching, ranking.

Every operation here sees only one player's own counters and estimates
plus the globally shared arm sets: decisions are decentralized. The
pipeline for the UCB variants is

    ucb_indices -> match_arms -> rank_and_pick

which mirrors the decentralized algorithm's per-round exploitation step:
pick the best jointly-assignable arms, then break the tie among
indistinguishable players by their id rank so that independent decisions
stay collision-free once the indices are accurate.

Index variants: ``consensus`` ranks by the gossip estimate with bonus
sqrt(3 ln t / (2 N V)); ``nr`` ranks by the local empirical mean with
bonus sqrt(3 ln t / (2 V)). V counts solo (collision-free) pulls and an
unexplored arm has an infinite index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .matching import greedy_feasible_arms, holder_map, option_arms

VARIANTS = ("consensus", "nr")


# ---------------------------------------------------------------------------
# Player state and estimate updates
# ---------------------------------------------------------------------------

@dataclass
class PlayerState:
    """One player's counters and estimates (column k-1 = arm k)."""

    id: int
    n_arms: int
    pulls: np.ndarray = field(repr=False)        # I: total pulls per arm
    collisions: np.ndarray = field(repr=False)   # C: collided pulls per arm
    solo: np.ndarray = field(repr=False)         # V = I - C
    reward_sum: np.ndarray = field(repr=False)   # sum of solo rewards
    mean_local: np.ndarray = field(repr=False)   # empirical mean of solo rewards
    mean_shared: np.ndarray = field(repr=False)  # gossip estimate
    index: np.ndarray = field(repr=False)        # decision index, +inf if V = 0
    known_sets: tuple = ()                       # snapshot of all arm sets

    @classmethod
    def fresh(cls, player_id: int, n_arms: int) -> "PlayerState":
        zeros = lambda: np.zeros(n_arms)
        return cls(
            id=player_id,
            n_arms=n_arms,
            pulls=np.zeros(n_arms, dtype=np.int64),
            collisions=np.zeros(n_arms, dtype=np.int64),
            solo=np.zeros(n_arms, dtype=np.int64),
            reward_sum=zeros(),
            mean_local=zeros(),
            mean_shared=zeros(),
            index=np.full(n_arms, np.inf),
        )


def record_outcome(state: PlayerState, pulled: int, reward: float, collided: bool):
    """Fold one round's pull into the counters and the empirical mean."""
    if collided != (reward == 0.0):
        raise ContractError(
            f"player {state.id}: collided={collided} but reward={reward}"
        )
    col = pulled - 1
    state.pulls[col] += 1
    if collided:
        state.collisions[col] += 1
    else:
        state.solo[col] += 1
        state.reward_sum[col] += reward
        state.mean_local[col] = state.reward_sum[col] / state.solo[col]
    return state


def consensus_update(state: PlayerState, neighbor_estimates: dict,
                     p_row: np.ndarray, mean_new: np.ndarray,
                     mean_old: np.ndarray) -> np.ndarray:
    """One synchronous gossip step for a single player.

    ``neighbor_estimates`` maps every member of the player's self-inclusive
    neighborhood to its previous-round shared-estimate vector; the new
    estimate is the P-weighted neighborhood average corrected by the
    player's own empirical-mean innovation.
    """
    expected = {j + 1 for j in range(len(p_row)) if p_row[j] > 0.0}
    missing = expected - set(neighbor_estimates)
    if missing:
        raise ContractError(
            f"player {state.id}: missing neighbor estimates for {sorted(missing)}"
        )
    new = mean_new - mean_old
    for j, est in neighbor_estimates.items():
        w = p_row[j - 1]
        if w > 0.0:
            new = new + w * np.asarray(est)
    state.mean_shared = new
    return new


def consensus_update_all(shared: np.ndarray, weights: np.ndarray,
                         mean_new: np.ndarray, mean_old: np.ndarray) -> np.ndarray:
    """Stacked form of ``consensus_update`` for all players at once.

    ``shared`` and the mean matrices are (N, K) with row i-1 = player i.
    Equivalent to applying consensus_update player by player because P has
    zero weight outside each neighborhood.
    """
    return weights @ shared + (mean_new - mean_old)


def ucb_indices(state: PlayerState, t: int, n_players: int, variant: str) -> np.ndarray:
    """Per-arm decision index at round t; +inf wherever V = 0."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown index variant {variant!r}")
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    base = state.mean_shared if variant == "consensus" else state.mean_local
    scale = 2.0 * n_players if variant == "consensus" else 2.0
    bonus = np.full(state.n_arms, np.inf)
    explored = state.solo > 0
    np.divide(3.0 * math.log(t), scale * state.solo, out=bonus, where=explored)
    np.sqrt(bonus, out=bonus, where=explored)
    return base + bonus


# ---------------------------------------------------------------------------
# Matching and ranking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchResult:
    """Output of the feasible-arm matching from one player's perspective."""

    self_id: int
    feasible_arms: tuple   # admitted arms, in decreasing-index scan order
    reduced_sets: tuple    # reduced_sets[m-1]: player m's in-set admitted arms
    own_options: tuple     # arms self may pull in some optimal assignment
    assignment: tuple      # one optimal assignment (0 = player unmatched)


def index_order(indices: np.ndarray) -> tuple:
    """All arms sorted by decreasing index, arm id breaking ties."""
    idx = np.asarray(indices, dtype=float)
    ids = np.arange(1, len(idx) + 1)
    return tuple(int(k) for k in ids[np.lexsort((ids, -idx))])


def match_arms(indices, arm_sets, self_id: int, holders=None, order=None) -> MatchResult:
    """Select the best jointly-assignable arms and reduce everyone's set.

    Arms are scanned in decreasing index order; an arm is admitted iff the
    admitted set can still be assigned to pairwise-distinct players, until
    one arm per player is found (or the arms run out). Reduced sets are the
    intersections of the input sets with the admitted arms; any
    distinct-arm assignment from them attains the maximum collision-free
    index sum.

    ``holders``/``order`` accept precomputed ``holder_map(arm_sets)`` /
    ``index_order(indices)`` for per-round loops.
    """
    n = len(arm_sets)
    if holders is None:
        holders = holder_map(arm_sets)
    if order is None:
        order = index_order(indices)
    admitted, matched = greedy_feasible_arms(order, holders, n)
    reduced = tuple(tuple(k for k in admitted if k in s) for s in arm_sets)
    options = option_arms(self_id, reduced, matched)
    assignment = tuple(matched.get(i, 0) for i in range(1, n + 1))
    return MatchResult(self_id, tuple(admitted), reduced, options, assignment)


def rank_and_pick(match: MatchResult):
    """Rank the players indistinguishable from self and pick by position.

    Returns ``(arm, wrapped)``. Players whose reduced set contains all of
    self's options are sorted by decreasing id; self's 1-based position in
    that order indexes into the options. A position past the last option
    can only happen with noisy statistics; it wraps around and is flagged.
    """
    options = match.own_options
    if not options:
        raise ContractError(f"player {match.self_id} has no feasible options")
    opt_set = set(options)
    tied = [
        j
        for j in range(len(match.reduced_sets), 0, -1)
        if opt_set <= set(match.reduced_sets[j - 1])
    ]
    rank = tied.index(match.self_id) + 1
    if rank <= len(options):
        return options[rank - 1], False
    return options[(rank - 1) % len(options)], True


def greedy_select(state: PlayerState, own_set, t: int):
    """Local-only baseline: the best arm of the own set by the nr index."""
    idx = ucb_indices(state, t, 1, "nr")
    return min(own_set, key=lambda k: (-idx[k - 1], k))


def select_action(state: PlayerState, all_sets, t: int, n_players: int,
                  variant: str, indices=None, holders=None):
    """Full decentralized selection for one player at round t.

    Composes the index computation, the feasible-arm matching, and the
    ranked pick. Returns ``(arm, flagged)`` where the flag marks fallback
    rounds (empty reduced set -> greedy on the own set) and wrapped ranks.
    The chosen arm is always inside the player's current set.
    """
    if indices is None:
        indices = ucb_indices(state, t, n_players, variant)
    match = match_arms(indices, all_sets, state.id, holders=holders)
    if not match.own_options:
        return greedy_select(state, all_sets[state.id - 1], t), True
    arm, wrapped = rank_and_pick(match)
    return arm, wrapped
