"""Round loop, metrics, multi-run aggregation, and CSV output.

A run is a single seeded trajectory: every round the players share their
arm sets, pick arms via the configured policy, the world resolves
collisions and rewards, counters and gossip estimates are updated, and
the regret anchor is the genie's exact per-round optimum. Runs are
independent (seed = base_seed + run index) so aggregation is order- and
scheduling-invariant.

Default regret is the pseudo-regret (true means of solo pulls), equal in
expectation to the realized-reward regret but with far less variance;
``realized_regret`` switches to the literal realized-reward estimator
(whose per-round increments may be negative).
"""

from __future__ import annotations

import math
import multiprocessing
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .env import WorldState, advance_walk, genie_assignment, mean_order, resolve_round
from .errors import ConfigError
from .graphs import build_topology, metropolis_weights
from .matching import holder_map
from .policy import (
    PlayerState,
    consensus_update_all,
    greedy_select,
    record_outcome,
    select_action,
    ucb_indices,
)

ALGOS = ("ucb", "ucb-nr", "greedy", "genie")
_ALGO_VARIANT = {"ucb": "consensus", "ucb-nr": "nr", "greedy": "nr"}

CSV_HEADER = "run_id,t,cum_regret,mse,cum_collisions,fallbacks,messages,algo"
MEAN_RUN_ID = -1
STD_RUN_ID = -2


@dataclass
class ExperimentConfig:
    """Everything one experiment needs; built by the CLI or by tests."""

    n_players: int
    n_arms: int
    horizon: int
    topology: object           # descriptor accepted by build_topology
    arms: tuple                # ArmSpec per arm
    walk: object               # Static / CliqueShare / Downlink walk model
    algo: str = "ucb"
    n_runs: int = 1
    base_seed: int = 0
    out_path: str = "results.csv"
    realized_regret: bool = False

    def validate(self) -> "ExperimentConfig":
        if self.horizon < 1:
            raise ConfigError(f"experiment.horizon must be >= 1, got {self.horizon}")
        if self.n_runs < 1:
            raise ConfigError(f"experiment.runs must be >= 1, got {self.n_runs}")
        if self.algo not in ALGOS:
            raise ConfigError(f"experiment.algo must be one of {ALGOS}, got {self.algo!r}")
        if len(self.arms) != self.n_arms:
            raise ConfigError(
                f"arms: expected {self.n_arms} entries, got {len(self.arms)}"
            )
        if self.n_arms < self.n_players:
            warnings.warn(
                f"n_arms={self.n_arms} < n_players={self.n_players}: "
                "collision-free rounds are impossible",
                stacklevel=2,
            )
        return self


@dataclass
class MetricsTrace:
    """Per-round metrics of one run (or of an aggregation of runs)."""

    run_id: int
    algo: str
    cum_regret: np.ndarray = field(repr=False)
    mse: np.ndarray = field(repr=False)
    cum_collisions: np.ndarray = field(repr=False)
    fallbacks: np.ndarray = field(repr=False)
    messages: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.cum_regret)


def mse_snapshot(players, true_means, variant: str) -> float:
    """Mean squared error of the decision estimates against the true means."""
    estimates = np.stack(
        [p.mean_shared if variant == "consensus" else p.mean_local for p in players]
    )
    return float(np.mean((estimates - np.asarray(true_means)) ** 2))


def run_round(world, players, matrix, t, algo, realized_regret=False,
              order_cache=None, deg_sum=None):
    """Execute one synchronous round; returns (outcome, metrics row).

    Order: share arm sets, select actions (from the indices standing at
    the start of the round), resolve pulls, update counters and empirical
    means, gossip synchronously, refresh indices for t+1.
    """
    n = world.graph.n_players
    n_arms = world.n_arms
    snapshot = world.arm_sets
    if deg_sum is None:
        deg_sum = sum(world.graph.degree(i) for i in range(1, n + 1))

    for p in players:
        p.known_sets = snapshot
    genie_actions, genie_value = genie_assignment(snapshot, world.means, order=order_cache)

    variant = _ALGO_VARIANT.get(algo)
    any_flag = False
    if algo == "genie":
        actions = genie_actions
    elif algo == "greedy":
        actions = tuple(greedy_select(p, snapshot[p.id - 1], t) for p in players)
    else:
        holders = holder_map(snapshot)
        chosen = []
        for p in players:
            arm, flag = select_action(
                p, snapshot, t, n, variant, indices=p.index, holders=holders
            )
            any_flag |= flag
            chosen.append(arm)
        actions = tuple(chosen)

    outcome = resolve_round(world, actions)

    if variant == "consensus":
        mean_old = np.stack([p.mean_local for p in players])
        shared_old = np.stack([p.mean_shared for p in players])
    for p, arm, reward, col in zip(players, actions, outcome.rewards, outcome.collided):
        record_outcome(p, arm, reward, col)
    if variant == "consensus":
        mean_new = np.stack([p.mean_local for p in players])
        shared_new = consensus_update_all(shared_old, matrix.weights, mean_new, mean_old)
        for i, p in enumerate(players):
            p.mean_shared = shared_new[i]
    if variant is not None:
        for p in players:
            p.index = ucb_indices(p, t + 1, n, variant)

    if realized_regret:
        gained = math.fsum(outcome.rewards)
    else:
        gained = math.fsum(
            world.means[a - 1]
            for a, col in zip(actions, outcome.collided)
            if not col
        )
    if algo == "ucb":
        messages = deg_sum * (1 + n_arms)
    elif algo == "ucb-nr":
        messages = deg_sum
    else:
        messages = 0
    row = {
        "regret_inc": genie_value - gained,
        "collisions_inc": sum(outcome.collided),
        "fallback": 1 if any_flag else 0,
        "messages_inc": messages,
        "mse": mse_snapshot(players, world.means, variant or "nr"),
    }
    return outcome, row


def run_experiment(config: ExperimentConfig, seed: int,
                   pre_round_hook=None, post_round_hook=None) -> MetricsTrace:
    """One full seeded trajectory of ``config.horizon`` rounds.

    The hooks are test instrumentation: ``pre_round_hook(t, world,
    players)`` runs after the arm sets for round t are in place and may
    overwrite indices; ``post_round_hook(t, world, players, row)`` runs
    after the round's updates.
    """
    config.validate()
    graph = build_topology(config.topology, config.n_players)
    matrix = metropolis_weights(graph)
    rng = np.random.default_rng(seed)
    world = WorldState(graph, config.arms, config.walk, rng)
    players = [PlayerState.fresh(i, config.n_arms) for i in range(1, config.n_players + 1)]
    deg_sum = sum(graph.degree(i) for i in range(1, config.n_players + 1))
    order_cache = mean_order(world.means)

    T = config.horizon
    cum_regret = np.zeros(T)
    mse = np.zeros(T)
    cum_collisions = np.zeros(T, dtype=np.int64)
    fallbacks = np.zeros(T, dtype=np.int64)
    messages = np.zeros(T, dtype=np.int64)

    regret = 0.0
    collisions = 0
    nfall = 0
    msgs = 0
    for t in range(1, T + 1):
        if pre_round_hook is not None:
            pre_round_hook(t, world, players)
        _, row = run_round(
            world, players, matrix, t, config.algo,
            realized_regret=config.realized_regret,
            order_cache=order_cache, deg_sum=deg_sum,
        )
        regret += row["regret_inc"]
        collisions += row["collisions_inc"]
        nfall += row["fallback"]
        msgs += row["messages_inc"]
        cum_regret[t - 1] = regret
        mse[t - 1] = row["mse"]
        cum_collisions[t - 1] = collisions
        fallbacks[t - 1] = nfall
        messages[t - 1] = msgs
        if post_round_hook is not None:
            post_round_hook(t, world, players, row)
        advance_walk(world)
    return MetricsTrace(
        run_id=0, algo=config.algo, cum_regret=cum_regret, mse=mse,
        cum_collisions=cum_collisions, fallbacks=fallbacks, messages=messages,
    )


def aggregate_runs(traces):
    """Per-round mean and population stddev across runs.

    Returns ``(mean_trace, std_trace)`` tagged with the reserved run ids.
    """
    if not traces:
        raise ValueError("no traces to aggregate")
    length = len(traces[0])
    if any(len(tr) != length for tr in traces):
        raise ValueError("traces have mismatched lengths")
    algo = traces[0].algo

    def agg(attr, fn):
        stack = np.stack([getattr(tr, attr) for tr in traces]).astype(float)
        return fn(stack, axis=0)

    fields = ("cum_regret", "mse", "cum_collisions", "fallbacks", "messages")
    mean_trace = MetricsTrace(
        MEAN_RUN_ID, algo, *(agg(f, np.mean) for f in fields)
    )
    std_trace = MetricsTrace(
        STD_RUN_ID, algo, *(agg(f, np.std) for f in fields)
    )
    return mean_trace, std_trace


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.9g}"


def write_csv(path, traces, mean_trace=None, std_trace=None) -> None:
    """Write per-run rows plus aggregated mean (run_id -1) and stddev
    (run_id -2) rows in the fixed schema, 9 significant digits."""
    ordered = list(traces)
    if mean_trace is not None:
        ordered.append(mean_trace)
    if std_trace is not None:
        ordered.append(std_trace)
    lines = [CSV_HEADER]
    for tr in ordered:
        for t in range(1, len(tr) + 1):
            lines.append(
                ",".join(
                    (
                        str(tr.run_id),
                        str(t),
                        _fmt(tr.cum_regret[t - 1]),
                        _fmt(tr.mse[t - 1]),
                        _fmt(tr.cum_collisions[t - 1]),
                        _fmt(tr.fallbacks[t - 1]),
                        _fmt(tr.messages[t - 1]),
                        tr.algo,
                    )
                )
            )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _run_indexed(args):
    config, run_id, seed = args
    trace = run_experiment(config, seed)
    trace.run_id = run_id
    return trace


def max_workers(n_runs: int) -> int:
    cap = os.environ.get("MPMAB_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(limit, n_runs))


def run_many(config: ExperimentConfig):
    """All runs of an experiment; parallel when allowed, same results
    regardless (runs are keyed by seed = base_seed + run index)."""
    config.validate()
    jobs = [
        (config, run_id, config.base_seed + run_id)
        for run_id in range(config.n_runs)
    ]
    workers = max_workers(config.n_runs)
    if workers <= 1 or config.n_runs == 1:
        traces = [_run_indexed(job) for job in jobs]
    else:
        with multiprocessing.Pool(workers) as pool:
            traces = pool.map(_run_indexed, jobs)
    mean_trace, std_trace = aggregate_runs(traces)
    return traces, mean_trace, std_trace


def run_and_write(config: ExperimentConfig):
    """run_many + CSV emission; returns the aggregated mean trace."""
    traces, mean_trace, std_trace = run_many(config)
    write_csv(config.out_path, traces, mean_trace, std_trace)
    return traces, mean_trace, std_trace
