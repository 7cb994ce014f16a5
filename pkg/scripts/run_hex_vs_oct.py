#!/usr/bin/env python3
"""Run matched hexagonal and octahedral greedy sweeps and report every n where
one family, or a bundled literature bound, beats the other."""

import argparse
import os
import time

from hexcontact.bounds import (
    compare_tables,
    literature_wins,
    oct_wins,
    render_comparison,
    write_comparison_csv,
)
from hexcontact.lattice import OCT, Hexagonal, enumerate_grids
from hexcontact.search import greedy_sweep, write_sweep_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200)
    parser.add_argument("--restarts", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=0, help="0 = all cores")
    parser.add_argument("--out", default="runs/hex_vs_oct")
    args = parser.parse_args()

    grids = [Hexagonal(s) for s in enumerate_grids(-4, 4, normalize=True)]
    os.makedirs(args.out, exist_ok=True)

    t0 = time.monotonic()
    hex_records = greedy_sweep(args.n, grids, restarts=args.restarts,
                               base_seed=args.seed, workers=args.workers)
    hex_ms = int((time.monotonic() - t0) * 1000)
    write_sweep_csv(os.path.join(args.out, "sweep_hex.csv"), hex_records, hex_ms)
    print(f"hexagonal sweep: {hex_ms / 1000:.1f}s")

    t0 = time.monotonic()
    oct_records = greedy_sweep(args.n, [OCT], restarts=args.restarts, base_seed=args.seed)
    oct_ms = int((time.monotonic() - t0) * 1000)
    write_sweep_csv(os.path.join(args.out, "sweep_oct.csv"), oct_records, oct_ms)
    print(f"octahedral sweep: {oct_ms / 1000:.1f}s")

    rows = compare_tables(hex_records, oct_records)
    write_comparison_csv(os.path.join(args.out, "comparison.csv"), rows)
    print(render_comparison([r for r in rows if r.winner != "tie" or r.literature_beats_both]))
    print(f"\noctahedral better at n = {sorted(r.n for r in oct_wins(rows))}")
    print(f"literature beats both at n = {sorted(r.n for r in literature_wins(rows))}")
    print(f"files in {args.out}/")


if __name__ == "__main__":
    main()
