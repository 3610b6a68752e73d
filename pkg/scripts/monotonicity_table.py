"""Print the radius grid over (k, s) for a few small graphs and the check summary."""
import argparse

from hyperspec import Graph, SolverConfig, verify_monotonicity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=10)
    ap.add_argument("--s-max", type=int, default=5)
    args = ap.parse_args()

    graphs = {"K2": Graph.complete(2), "K3": Graph.complete(3), "P4": Graph.path(4),
              "C5": Graph.cycle(5), "K4": Graph.complete(4)}
    cfg = SolverConfig(tol=1e-12)
    for name, G in graphs.items():
        report = verify_monotonicity(G, range(3, args.k_max + 1), range(1, args.s_max + 1), cfg)
        print(f"# {name}: {len(report.checks)} checks, {len(report.failures)} failed")
        print(report.table())
        for c in report.failures:
            print(f"# FAIL {c.name} ({c.detail})")
        print()


if __name__ == "__main__":
    main()
