"""NOT counts of lazy tracking against per-gate Hadamard isolation on the random corpus."""
import argparse
import csv

from isingc.experiments import baseline_comparison, hadamard_nots_per_period
from isingc.fixtures import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--csv", help="write per-instance rows here")
    args = ap.parse_args()
    rows = baseline_comparison(corpus(seed=args.seed, size=args.size))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "n", "p", "couplings", "lazy", "lazy_flushed", "baseline"])
            for r in rows:
                w.writerow([r.index, r.n, r.p, r.couplings, r.lazy_nots,
                            r.lazy_flushed_nots, r.baseline_nots])
    for n in sorted({r.n for r in rows}):
        sub = [r for r in rows if r.n == n]
        mean = lambda xs: sum(xs) / len(xs)  # noqa: E731
        print(f"n={n}  instances {len(sub):3d}  lazy {mean([r.lazy_nots for r in sub]):6.2f}  "
              f"lazy+flush {mean([r.lazy_flushed_nots for r in sub]):6.2f}  "
              f"baseline {mean([r.baseline_nots for r in sub]):6.2f}")
    print("NOTs per isolation period:")
    for n, c in hadamard_nots_per_period().items():
        print(f"  n={n}: {c:g}  ({c / n**2:.2f} n^2)")


if __name__ == "__main__":
    main()
