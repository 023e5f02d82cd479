"""Command-line entry point: config parsing, orchestration, fixtures.

Subcommands:

- ``run``       execute an experiment (config file + overrides), write CSV
- ``validate``  parse a config and print the resolved experiment
- ``fixtures``  run the worked matching/ranking/genie examples, print PASS/FAIL

Exit codes: 0 success, 1 configuration error, 2 runtime contract
violation, 3 fixture failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

import numpy as np

from . import oracle, policy
from .env import (
    CliqueShareWalk,
    DownlinkWalk,
    StaticWalk,
    bernoulli_arms,
    gaussian_arms,
    genie_assignment,
)
from .errors import ConfigError, ContractError, GuardError
from .sim import ALGOS, ExperimentConfig, run_and_write

_CONFIG_DIR = Path(__file__).parent / "configs"


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors (exit 1, not argparse's 2)
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _section(data: dict, name: str) -> dict:
    value = data.get(name, {})
    if not isinstance(value, dict):
        raise ConfigError(f"[{name}] must be a table")
    return value


def _require(section: dict, section_name: str, key: str):
    if key not in section:
        raise ConfigError(f"{section_name}.{key} is required")
    return section[key]


def _linear_profile(spec, n_arms: int, field: str):
    try:
        coef, base = spec
    except (TypeError, ValueError):
        raise ConfigError(f"{field} must be [coefficient, base]") from None
    return [coef * (base - k) for k in range(1, n_arms + 1)]


def _parse_arms(section: dict, n_arms: int):
    kind = _require(section, "arms", "kind")
    if "means" in section:
        means = list(section["means"])
    elif "mean_linear" in section:
        means = _linear_profile(section["mean_linear"], n_arms, "arms.mean_linear")
    else:
        raise ConfigError("arms.means or arms.mean_linear is required")
    scale = section.get("mean_scale", 1.0)
    means = [m * scale for m in means]
    if len(means) != n_arms:
        raise ConfigError(f"arms.means: expected {n_arms} entries, got {len(means)}")
    if kind == "bernoulli":
        return bernoulli_arms(means)
    if kind == "gaussian":
        if "stds" in section:
            stds = list(section["stds"])
        elif "std_linear" in section:
            stds = _linear_profile(section["std_linear"], n_arms, "arms.std_linear")
        else:
            raise ConfigError("arms.stds or arms.std_linear is required for gaussian")
        stds = [s * scale for s in stds]
        return gaussian_arms(means, stds)
    raise ConfigError(f"arms.kind must be 'bernoulli' or 'gaussian', got {kind!r}")


def _parse_topology(section: dict):
    topology = section.get("topology", "ring")
    if topology in ("ring", "complete"):
        return topology
    if topology == "random":
        return ("random", _require(section, "graph", "edge_prob"),
                section.get("graph_seed", 0))
    if topology == "explicit":
        edges = _require(section, "graph", "edges")
        return ("explicit", [tuple(e) for e in edges])
    raise ConfigError(f"graph.topology must be ring|complete|random|explicit, got {topology!r}")


def _parse_walk(section: dict):
    variant = _require(section, "walk", "variant")
    if variant == "static":
        sets = _require(section, "walk", "sets")
        return StaticWalk(tuple(frozenset(s) for s in sets))
    if variant == "clique":
        return CliqueShareWalk(
            share_prob=_require(section, "walk", "share_prob"),
            max_set_size=_require(section, "walk", "max_set_size"),
        )
    if variant == "downlink":
        return DownlinkWalk(overlap_prob=section.get("overlap_prob", 0.3))
    raise ConfigError(f"walk.variant must be static|clique|downlink, got {variant!r}")


def resolve_config_path(path: str) -> Path:
    """Use the path as given, falling back to the bundled config directory."""
    given = Path(path)
    if given.exists():
        return given
    bundled = _CONFIG_DIR / given.name
    if bundled.exists():
        return bundled
    raise ConfigError(f"config file not found: {path}")


def load_config(path: str, overrides=None) -> ExperimentConfig:
    """Parse a TOML experiment file into an ExperimentConfig."""
    resolved = resolve_config_path(path)
    try:
        with open(resolved, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{resolved}: {exc}") from None

    experiment = _section(data, "experiment")
    n_players = _require(experiment, "experiment", "players")
    n_arms = _require(experiment, "experiment", "arms")
    config = ExperimentConfig(
        n_players=n_players,
        n_arms=n_arms,
        horizon=_require(experiment, "experiment", "horizon"),
        topology=_parse_topology(_section(data, "graph")),
        arms=_parse_arms(_section(data, "arms"), n_arms),
        walk=_parse_walk(_section(data, "walk")),
        algo=experiment.get("algo", "ucb"),
        n_runs=experiment.get("runs", 1),
        base_seed=experiment.get("seed", 0),
        out_path=_section(data, "output").get("path", "results.csv"),
        realized_regret=experiment.get("realized_regret", False),
    )
    for key, value in (overrides or {}).items():
        if value is not None:
            setattr(config, key, value)
    return config.validate()


def _overrides(args) -> dict:
    return {
        "algo": args.algo,
        "n_runs": args.runs,
        "base_seed": args.seed,
        "horizon": args.horizon,
        "out_path": args.out,
        "realized_regret": True if args.realized_regret else None,
    }


def cmd_run(args) -> int:
    config = load_config(args.config, _overrides(args))
    _, mean_trace, _ = run_and_write(config)
    print(
        f"wrote {config.out_path}: algo={config.algo} runs={config.n_runs} "
        f"T={config.horizon} final mean regret={mean_trace.cum_regret[-1]:.9g}"
    )
    return 0


def cmd_validate(args) -> int:
    config = load_config(args.config, _overrides(args))
    kinds = {a.kind for a in config.arms}
    print("resolved experiment:")
    print(f"  players          {config.n_players}")
    print(f"  arms             {config.n_arms} ({', '.join(sorted(kinds))})")
    print(f"  means            {config.arms[0].mean:.6g} .. {config.arms[-1].mean:.6g}")
    print(f"  topology         {config.topology}")
    print(f"  walk             {config.walk}")
    print(f"  algo             {config.algo}")
    print(f"  horizon          {config.horizon}")
    print(f"  runs             {config.n_runs} (base seed {config.base_seed})")
    print(f"  regret estimator {'realized' if config.realized_regret else 'pseudo'}")
    print(f"  output           {config.out_path}")
    return 0


def _check(name: str, got, expected, failures: list) -> None:
    ok = got == expected
    if not ok:
        failures.append(name)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}: {got!r}" +
          ("" if ok else f" (expected {expected!r})"))


def cmd_fixtures(_args) -> int:
    failures = []

    # Worked matching/ranking example: 3 players, 5 arms, shared top arms.
    sets = (frozenset({1, 2, 3}), frozenset({1, 2, 5}), frozenset({4, 5}))
    indices = np.array([0.9, 0.8, 0.7, 0.6, 0.5])
    print("matching/ranking walkthrough (3 players, 5 arms):")
    match = policy.match_arms(indices, sets, self_id=2)
    _check("feasible arms", tuple(match.feasible_arms), (1, 2, 4), failures)
    _check("reduced sets", match.reduced_sets, ((1, 2), (1, 2), (4,)), failures)
    _check(
        "optimal assignments",
        oracle.optimal_tuples(match, indices),
        {(1, 2, 4), (2, 1, 4)},
        failures,
    )
    picks = tuple(
        policy.rank_and_pick(policy.match_arms(indices, sets, self_id=i))[0]
        for i in (1, 2, 3)
    )
    _check("ranked pulls", picks, (2, 1, 4), failures)

    # Genie example: disjoint-optimum instance where the greedy-by-mean
    # pull would collide but the optimal assignment is collision-free.
    sets1 = (frozenset({1, 3}), frozenset({1, 2, 4}), frozenset({2, 5}))
    means = np.array([0.9, 0.8, 0.7, 0.6, 0.5])
    print("genie assignment walkthrough (3 players, 5 arms):")
    assignment, value = genie_assignment(sets1, means)
    _check("genie assignment", assignment, (3, 1, 2), failures)
    _check("genie value", round(value, 12), round(0.9 + 0.8 + 0.7, 12), failures)
    picks1 = tuple(
        policy.rank_and_pick(policy.match_arms(means, sets1, self_id=i))[0]
        for i in (1, 2, 3)
    )
    _check("accurate-index pulls", picks1, (3, 1, 2), failures)

    if failures:
        print(f"{len(failures)} fixture(s) failed")
        return 3
    print("all fixtures passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walkbandits", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="TOML experiment file")
        p.add_argument("--algo", choices=ALGOS, help="override the policy variant")
        p.add_argument("--runs", type=int, help="override the number of runs")
        p.add_argument("--seed", type=int, help="override the base seed")
        p.add_argument("--horizon", type=int, help="override the horizon")
        p.add_argument("--out", help="override the CSV output path")
        p.add_argument("--realized-regret", action="store_true",
                       help="record realized-reward regret instead of pseudo-regret")

    run_p = sub.add_parser("run", help="run an experiment and write CSV")
    add_common(run_p)
    run_p.set_defaults(func=cmd_run)

    val_p = sub.add_parser("validate", help="check a config and print it resolved")
    add_common(val_p)
    val_p.set_defaults(func=cmd_validate)

    fix_p = sub.add_parser("fixtures", help="run the worked examples")
    fix_p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (ContractError, GuardError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
