"""Synthetic discovery benchmark.

Random additive- and multiplicative-noise models with ground truth x -> y are
fed through the discovery pipeline; the table counts correct, wrong, and
undecided verdicts per range configuration. Increase --models for smoother
percentages (the acceptance suite uses 200).
"""

import argparse

from causalapprox import run_benchmark

parser = argparse.ArgumentParser()
parser.add_argument("--models", type=int, default=50)
parser.add_argument("--samples", type=int, default=1000)
parser.add_argument("--seed", type=int, default=2024)
args = parser.parse_args()

for noise in ("additive", "multiplicative"):
    report = run_benchmark(
        [(2, 2), (3, 3)],
        n_models=args.models,
        n_samples=args.samples,
        noise_kind=noise,
        seed=args.seed,
    )
    print(report.to_table())
    print()
