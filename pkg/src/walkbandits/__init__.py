"""Decentralized multi-player walking-bandit simulation library.

Players on a communication graph repeatedly pull arms from local,
time-varying arm sets; simultaneous pulls collide and pay nothing.
The library provides the consensus-UCB policy with feasible-arm matching
and id-rank tie-breaking, its no-reward-sharing variant, a local greedy
baseline, an exact genie oracle, and a seeded experiment harness with
CSV output.
"""

from .env import (
    ArmSpec,
    CliqueShareWalk,
    DownlinkWalk,
    RoundOutcome,
    StaticWalk,
    WorldState,
    advance_walk,
    bernoulli_arms,
    gaussian_arms,
    genie_assignment,
    resolve_round,
)
from .errors import ConfigError, ContractError, GuardError
from .graphs import (
    CommGraph,
    ConsensusMatrix,
    build_topology,
    metropolis_weights,
    mixing_bound,
    mixing_deviation,
)
from .oracle import brute_force_genie, brute_force_match, finite_indices, optimal_tuples
from .policy import (
    MatchResult,
    PlayerState,
    consensus_update,
    consensus_update_all,
    greedy_select,
    match_arms,
    rank_and_pick,
    record_outcome,
    select_action,
    ucb_indices,
)
from .sim import (
    ExperimentConfig,
    MetricsTrace,
    aggregate_runs,
    mse_snapshot,
    run_experiment,
    run_many,
    run_round,
    write_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
