"""Desk-scale downlink scheduling benchmark: all four policies side by side.

Six base stations on a ring serve ten walking users with Bernoulli
rewards. Reward sharing (ucb) beats set-sharing only (ucb-nr), both
flatten out, the no-sharing greedy baseline keeps colliding and pays
linear regret, and the genie anchors regret at zero. Writes one CSV per
policy next to this script unless --no-csv is given.

Run: python demos/downlink_benchmark.py [--horizon 2000] [--runs 3]
"""

import argparse
from pathlib import Path

from walkbandits.cli import load_config
from walkbandits.sim import run_and_write, run_many


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--horizon", type=int, default=2000)
    parser.add_argument("--runs", type=int, default=3)
    parser.add_argument("--no-csv", action="store_true")
    args = parser.parse_args()

    out_dir = Path(__file__).parent
    print(f"downlink: N=6 ring, K=10, T={args.horizon}, {args.runs} runs per policy\n")
    print(f"{'policy':8s} {'regret(T/2)':>12s} {'regret(T)':>12s} "
          f"{'collisions':>11s} {'mse(T)':>10s} {'messages':>10s}")
    for algo in ("ucb", "ucb-nr", "greedy", "genie"):
        config = load_config("downlink.toml", {
            "algo": algo,
            "horizon": args.horizon,
            "n_runs": args.runs,
            "out_path": str(out_dir / f"downlink_{algo}.csv"),
        })
        if args.no_csv:
            _, mean, _ = run_many(config)
        else:
            _, mean, _ = run_and_write(config)
        half = args.horizon // 2 - 1
        print(f"{algo:8s} {mean.cum_regret[half]:12.1f} {mean.cum_regret[-1]:12.1f} "
              f"{mean.cum_collisions[-1]:11.1f} {mean.mse[-1]:10.2e} "
              f"{mean.messages[-1]:10.0f}")
    if not args.no_csv:
        print(f"\nCSVs written next to this script: {out_dir}/downlink_*.csv")
        print("render them with the plot tool, e.g.")
        print("  node plotcli/dist/cli.js --metric regret --out regret.svg "
              "demos/downlink_ucb.csv demos/downlink_ucb-nr.csv demos/downlink_greedy.csv")


if __name__ == "__main__":
    main()
