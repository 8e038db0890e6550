"""Scan xi PR + gamma P_L + (1 - xi - gamma) uniform over a grid and test two copies against
the bundled four-party inequalities.  Prints CSV: xi,gamma,five_event,ten_event,violated.

The NPA and information-causality boundaries are not computed here.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from localortho.boxes import fig4_family, power
from localortho.inequalities import bundled_inequality, evaluate


@dataclass
class Config:
    steps: int = 20


def main(cfg: Config) -> None:
    ineqs = [bundled_inequality("five_event"), bundled_inequality("ten_event")]
    w = csv.writer(sys.stdout)
    w.writerow(["xi", "gamma", "five_event", "ten_event", "violated"])
    for i in range(cfg.steps + 1):
        for j in range(cfg.steps + 1 - i):
            xi, gamma = Fraction(i, cfg.steps), Fraction(j, cfg.steps)
            box = power(fig4_family(xi, gamma), 2)
            vals = [evaluate(q, box) for q in ineqs]
            w.writerow([f"{float(xi):.4f}", f"{float(gamma):.4f}", *(f"{float(v):.6f}" for v in vals), int(max(vals) > 1)])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=20)
    main(Config(ap.parse_args().steps))
