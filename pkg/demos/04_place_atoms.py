"""Turn a trained QUBO into a constrained atom layout.

Strong couplings Q_ij get high softmax edge weights, and pairs closer than
4 um repel with a force proportional to that weight. Atoms start on a circle
filling 90 percent of the 75 x 76 um working area, move synchronously, and
candidate positions outside the area are rejected. Afterwards near-equal y
coordinates are pinned to a shared row value, then the four hardware rules
are checked (x extent, y extent, pairwise distance, row separation).

Two layouts are rendered side by side as SVG files:
  - a 12-atom layout, where the initial circle is already sparse enough
  - a 60-atom layout, where the circle packs atoms 3.5 um apart and the
    repulsion has real work to do

Run:  python demos/04_place_atoms.py
"""
from __future__ import annotations

import os

import numpy as np

from passqubo import (
    Placement,
    QuboModel,
    blockade_graph,
    force_placement,
    pin_y_coordinates,
    render_svg,
    save_placement,
    validate_constraints,
)

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def report(tag: str, placement) -> None:
    record = placement.record or validate_constraints(placement)
    status = "all constraints hold" if record.all_ok else "violations present"
    print(f"  {tag}: extents {record.x_extent:.1f} x {record.y_extent:.1f} um, "
          f"min pair distance {record.min_pair_distance:.2f} um, {status}")
    for label, pairs in (("too-close", record.distance_violations),
                         ("row-rule", record.y_rule_violations)):
        if pairs:
            head = ", ".join(map(str, pairs[:5]))
            more = f" and {len(pairs) - 5} more" if len(pairs) > 5 else ""
            print(f"    {label} pairs ({len(pairs)}): {head}{more}")


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    rng = np.random.default_rng(3)

    print("12 atoms (sparse circle, forces quiescent):")
    small = QuboModel(np.triu(rng.uniform(-1.0, 1.0, (12, 12))))
    placed = pin_y_coordinates(force_placement(small, iterations=10_000,
                                               step_size=1e-10))
    placed = Placement(placed.coordinates, validate_constraints(placed))
    report("final", placed)
    save_placement(placed, os.path.join(OUT_DIR, "placement_12.json"))

    print("\n60 atoms (crowded circle, repulsion active):")
    big = QuboModel(np.triu(rng.uniform(-1.0, 1.0, (60, 60))))
    start = force_placement(big, iterations=0)
    report("start", start)
    spread = pin_y_coordinates(force_placement(big, iterations=10_000,
                                               step_size=1e-10))
    spread = Placement(spread.coordinates, validate_constraints(spread))
    report("final", spread)
    save_placement(spread, os.path.join(OUT_DIR, "placement_60.json"))

    for tag, placement in (("12", placed), ("60", spread)):
        graph = blockade_graph(placement, radius=4.0)
        svg = render_svg(placement, graph=graph,
                         title=f"{tag}-atom layout")
        path = os.path.join(OUT_DIR, f"placement_{tag}.svg")
        with open(path, "w") as fh:
            fh.write(svg)
        print(f"\n{tag}-atom SVG -> {path}")


if __name__ == "__main__":
    main()
