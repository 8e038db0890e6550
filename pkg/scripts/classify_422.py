"""Classify all maximal cliques of the (4,2,2) orthogonality graph.

Takes roughly ten minutes on one core.  Writes one JSON line per class.
"""
from __future__ import annotations

import argparse
import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path

from localortho.classify import class_counts, classify_scenario
from localortho.scenario import Scenario


@dataclass
class Config:
    scenario: Scenario = Scenario(4, 2, 2)
    out: Path = Path("classes_422.jsonl")
    progress_every: int = 50_000


def main(cfg: Config) -> None:
    t0 = time.perf_counter()
    clf = classify_scenario(cfg.scenario, progress_every=cfg.progress_every)
    logging.info("enumeration: %d anchored cliques, %d orbits, %.0f s", clf.inputs, len(clf.orbits), time.perf_counter() - t0)
    classes = clf.classes()
    with cfg.out.open("w") as fh:
        for c in classes:
            fh.write(json.dumps(c.summary()) + "\n")
    counts = class_counts(classes)
    total = sum(c.orbit_size for c in classes)
    print(f"{cfg.scenario}: {total} maximal cliques, {counts} ({time.perf_counter() - t0:.0f} s)")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scenario", type=Scenario.parse, default=Scenario(4, 2, 2))
    ap.add_argument("--out", type=Path, default=Path("classes_422.jsonl"))
    args = ap.parse_args()
    main(Config(args.scenario, args.out))
