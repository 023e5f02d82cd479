"""How fast do gossip estimates mix on different topologies?

Builds the Metropolis consensus matrix for a few graphs and tracks the
worst entrywise deviation of P^t from the uniform matrix against the
geometric bound 2 (1 + beta^-N)(1 - beta^N)^(t/N - 1). Denser graphs mix
faster (larger beta).

Run: python demos/consensus_mixing.py
"""

import numpy as np

from walkbandits import build_topology, metropolis_weights, mixing_bound, mixing_deviation

TOPOLOGIES = {
    "ring (N=6)": ("ring", 6),
    "ring+chords (N=6)": (("explicit", [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
                                        (6, 1), (1, 4), (2, 5), (3, 6)]), 6),
    "complete (N=6)": ("complete", 6),
    "random p=0.4 (N=12)": (("random", 0.4, 3), 12),
}


def main():
    for name, (spec, n) in TOPOLOGIES.items():
        matrix = metropolis_weights(build_topology(spec, n))
        print(f"\n{name}: beta = {matrix.beta:.4f}")
        print(f"  {'t':>4s} {'max |P^t - 1/N|':>16s} {'bound':>12s}")
        for t in (1, 5, 10, 25, 50, 100):
            dev = mixing_deviation(matrix, t)
            bound = mixing_bound(matrix, t)
            bar = "#" * max(1, int(40 * dev / max(mixing_deviation(matrix, 1), 1e-12)))
            print(f"  {t:4d} {dev:16.3e} {bound:12.3e}  {bar}")

    print("\nMetropolis weights for the 3-player path 1-2-3:")
    path = metropolis_weights(build_topology(("explicit", [(1, 2), (2, 3)]), 3))
    print(np.array2string(path.weights, formatter={"float_kind": lambda v: f"{v:.4f}"}))


if __name__ == "__main__":
    main()
