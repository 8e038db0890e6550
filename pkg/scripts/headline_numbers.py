"""Recompute the headline numbers: NS maxima, PR^2 violations, noisy thresholds, GYNI game value."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from localortho.boxes import lo_threshold, noisy_pr_family, power, pr_box
from localortho.classify import class_counts, classify
from localortho.cliques import enumerate_maximal_cliques
from localortho.dgp import classical_value, gyni_instance
from localortho.graph import build_graph
from localortho.inequalities import bundled_inequality, evaluate, gyni
from localortho.nspolytope import ns_max
from localortho.scenario import Scenario


@dataclass
class Config:
    copies: int = 2
    skip_classification: bool = False


def main(cfg: Config) -> None:
    t0 = time.perf_counter()
    print(f"ns_max GYNI(3)            = {ns_max(gyni(3))}")
    pr2 = power(pr_box(), cfg.copies)
    for name in ("five_event", "ten_event"):
        ineq = bundled_inequality(name)
        print(f"{name:10s} on PR^{cfg.copies}       = {evaluate(ineq, pr2)}   (ns_max {ns_max(ineq)})")
        iv = lo_threshold(noisy_pr_family(), ineq, cfg.copies)
        print(f"{name:10s} threshold    q* in [{float(iv.lo):.6f}, {float(iv.hi):.6f}]")
    print(f"GYNI(3) classical value   = {classical_value(gyni_instance(3))}")
    if not cfg.skip_classification:
        s = Scenario(3, 2, 2)
        cliques = [c.vertices for c in enumerate_maximal_cliques(build_graph(s))]
        print(f"(3,2,2): {len(cliques)} maximal cliques, classes {class_counts(classify(cliques, s))}")
    print(f"done in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-classification", action="store_true")
    args = ap.parse_args()
    main(Config(skip_classification=args.skip_classification))
