#!/usr/bin/env python
"""Scan random one-parameter families: gauge-dependent information before and
after phase minimization, against the invariant lower bound."""

import argparse
import os

import numpy as np

from qmetrics import (
    PhaseAssignment,
    apply_gauge,
    c_l_information,
    c_upsilon_states,
    minimizing_gauge_1p,
    random_full_rank,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--families", type=int, default=5)
    parser.add_argument("--seed", type=int, default=int(os.environ.get("QML_SEED", "42")))
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'dim':>4} {'before':>12} {'minimized':>12} {'lower bound':>12} {'gap':>10}")
    for i in range(args.families):
        d = 2 + i % 3
        fam = random_full_rank(d=d, nparams=1, seed=args.seed * 1_000 + i)
        a = rng.uniform(-1.0, 1.0, size=d)
        b = rng.uniform(0.5, 2.0, size=d)
        c = rng.uniform(0.0, 2.0 * np.pi, size=d)
        perturbed = apply_gauge(
            fam, PhaseAssignment.from_callable(lambda th, a=a, b=b, c=c: a * np.sin(b * th[0] + c))
        )
        pa = minimizing_gauge_1p(perturbed, -0.5, 0.5, steps=512)
        t = np.array([0.0])
        before = c_upsilon_states(perturbed, t)[0, 0]
        after = c_upsilon_states(apply_gauge(perturbed, pa), t)[0, 0]
        lower = c_l_information(fam, t)[0, 0]
        print(f"{d:4d} {before:12.8f} {after:12.8f} {lower:12.8f} {after - lower:10.2e}")


if __name__ == "__main__":
    main()
