#!/usr/bin/env python3
"""Writes data/sushi_synthetic.soc, the offline stand-in for the Sushi set.

Rankings over the ten Sushi items are drawn from a three-component Mallows
mixture (repeated insertion model) with a fixed seed, then aggregated into
SOC lines. Rerunning the script reproduces the file byte for byte.
"""

import argparse
from collections import Counter

import numpy as np

ITEMS = ["ebi", "anago", "maguro", "ika", "uni", "ikura", "tamago", "toro", "tekka-maki", "kappa-maki"]

# (weight, dispersion phi, central ranking as 1-based labels)
COMPONENTS = [
    (0.5, 0.80, [8, 3, 5, 6, 1, 2, 9, 4, 7, 10]),
    (0.3, 0.85, [8, 6, 1, 3, 2, 4, 9, 7, 5, 10]),
    (0.2, 0.90, [3, 8, 9, 1, 7, 4, 2, 6, 10, 5]),
]


def mallows(center, phi, rng):
    order = []
    for i, item in enumerate(center):
        # Insert at position j (0 = top) with weight phi^(i - j).
        weights = phi ** np.arange(i, -1, -1, dtype=float)
        j = rng.choice(i + 1, p=weights / weights.sum())
        order.insert(j, item)
    return order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/sushi_synthetic.soc")
    ap.add_argument("--voters", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20050801)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    weights = np.array([c[0] for c in COMPONENTS])
    counts = Counter()
    for _ in range(args.voters):
        _, phi, center = COMPONENTS[rng.choice(len(COMPONENTS), p=weights)]
        counts[tuple(mallows(center, phi, rng))] += 1

    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# FILE NAME: sushi_synthetic.soc\n")
        f.write("# TITLE: Synthetic Sushi-like rankings (Mallows mixture)\n")
        f.write("# DATA TYPE: soc\n")
        f.write("# NUMBER ALTERNATIVES: %d\n" % len(ITEMS))
        f.write("# NUMBER VOTERS: %d\n" % args.voters)
        f.write("# NUMBER UNIQUE ORDERS: %d\n" % len(counts))
        for i, name in enumerate(ITEMS, start=1):
            f.write("# ALTERNATIVE NAME %d: %s\n" % (i, name))
        for order, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
            f.write("%d: %s\n" % (n, ",".join(map(str, order))))


if __name__ == "__main__":
    main()
