"""Greedy packing search, multi-grid sweeps, and exact window search.

The greedy algorithm grows a configuration one ball at a time, always adding
a frontier point that touches the most already-placed balls.  Ties are broken
either lexicographically (orientation-adjusted, see below) or by a seeded
random choice among the tied candidates; both rules make runs fully
deterministic and give the prefix property: the first n balls of a long run
are exactly the run of length n.

Lexicographic keys use orientation-adjusted coordinates (k, s*i, s*j) where s
is the grid's mirror orientation.  A grid and its sign-flipped twin therefore
produce mirror-image runs with identical contact counts, so sweeping only the
grids normalized to a +1 first upward sign loses nothing.

The exact search enumerates n-subsets of a finite coordinate window depth
first in (k, i, j) point order, pruning a branch when its contact count plus
an optimistic bound on the remaining additions cannot beat the best subset
found so far.
"""

from __future__ import annotations

import csv
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .contact import Configuration
from .lattice import (
    OCT_OFFSETS,
    Hexagonal,
    Lattice,
    Octahedral,
    Point,
    contact_threshold,
    descriptor,
    grid_id,
    hex_layer_offsets,
    orientation,
    parse_descriptor,
    scaled_sq_dist,
)


class FrontierExhaustedError(RuntimeError):
    """Greedy ran out of candidate points before reaching the requested size."""

    def __init__(self, placed: int, wanted: int):
        super().__init__(f"frontier empty after {placed} of {wanted} balls (bounds too tight)")
        self.placed = placed


@dataclass(frozen=True)
class Lexicographic:
    """Deterministic tie rule: smallest orientation-adjusted (k, i, j) wins."""


@dataclass(frozen=True)
class SeededRandom:
    """Tie rule: uniform choice among tied candidates, driven by a fixed seed."""

    seed: int


TieRule = Lexicographic | SeededRandom
LEX = Lexicographic()


@dataclass(frozen=True)
class GreedyParams:
    """Complete description of one greedy run."""

    lattice: Lattice
    n_max: int
    tie_rule: TieRule = LEX
    start: Point = (0, 0, 0)
    horizontal_bound: int = 0

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.horizontal_bound < 0:
            raise ValueError("horizontal_bound must be 0 (unbounded) or positive")
        if isinstance(self.lattice, Hexagonal):
            seq = self.lattice.seq
            if not seq.t1 <= self.start[2] <= seq.t2:
                raise ValueError(f"start layer {self.start[2]} outside {seq.t1}..{seq.t2}")
        if self.horizontal_bound and (
            abs(self.start[0]) > self.horizontal_bound or abs(self.start[1]) > self.horizontal_bound
        ):
            raise ValueError("start violates horizontal bound")


def _offsets_by_layer(lattice: Lattice) -> tuple[Sequence[tuple[Point, ...]], int]:
    """Per-layer neighbor offsets plus the layer index of the first entry."""
    if isinstance(lattice, Hexagonal):
        seq = lattice.seq
        return [hex_layer_offsets(seq, k) for k in seq.layers], seq.t1
    return [OCT_OFFSETS], 0


def _greedy_run(
    lattice: Lattice,
    n_max: int,
    rng: random.Random | None,
    start: Point,
    bound: int,
) -> tuple[list[Point], list[int]]:
    """Core greedy loop.  Returns the placed balls and the running contact
    totals (``curve[m]`` is the contact count of the first m balls)."""
    offsets, t_low = _offsets_by_layer(lattice)
    single_layer_table = isinstance(lattice, Octahedral)
    sign = 1 if single_layer_table else orientation(lattice.seq)

    if sign == 1:
        tie_key = lambda p: (p[2], p[0], p[1])
    else:
        tie_key = lambda p: (p[2], -p[0], -p[1])

    chosen = [start]
    chosen_set = {start}
    cand: dict[Point, int] = {}
    curve = [0, 0]
    total = 0

    def absorb(p: Point) -> None:
        i, j, k = p
        offs = offsets[0] if single_layer_table else offsets[k - t_low]
        for di, dj, dk in offs:
            q = (i + di, j + dj, k + dk)
            if q in chosen_set:
                continue
            if bound and (abs(q[0]) > bound or abs(q[1]) > bound):
                continue
            cand[q] = cand.get(q, 0) + 1

    absorb(start)
    while len(chosen) < n_max:
        if not cand:
            raise FrontierExhaustedError(len(chosen), n_max)
        best_delta = max(cand.values())
        tied = [p for p, d in cand.items() if d == best_delta]
        if len(tied) == 1:
            pick = tied[0]
        elif rng is None:
            pick = min(tied, key=tie_key)
        else:
            tied.sort(key=tie_key)
            pick = tied[rng.randrange(len(tied))]
        del cand[pick]
        chosen.append(pick)
        chosen_set.add(pick)
        total += best_delta
        curve.append(total)
        absorb(pick)
    return chosen, curve[: n_max + 1]


def greedy(params: GreedyParams) -> Configuration:
    """Run the greedy algorithm described by ``params``."""
    if isinstance(params.tie_rule, SeededRandom):
        rng = random.Random(params.tie_rule.seed)
        tag = f"seed={params.tie_rule.seed}"
    else:
        rng = None
        tag = "lex"
    balls, _ = _greedy_run(
        params.lattice, params.n_max, rng, params.start, params.horizontal_bound
    )
    provenance = f"greedy:{tag}:grid={descriptor(params.lattice)}"
    return Configuration(params.lattice, tuple(balls), provenance)


@dataclass(frozen=True)
class SweepRecord:
    """Best result for one configuration size across a sweep."""

    n: int
    best_contacts: int
    best_grid_id: int
    configuration: Configuration | None
    algorithm: str
    restarts_used: int


def _sweep_task(args: tuple[Lattice, int, int, int, int]) -> list[tuple[int, list[int], list[Point]]]:
    """Worker for one grid: the deterministic run plus every seeded restart."""
    lattice, n_max, restarts, base_seed, bound = args
    out = []
    for r in range(restarts + 1):
        rng = None if r == 0 else random.Random(base_seed + r)
        balls, curve = _greedy_run(lattice, n_max, rng, (0, 0, 0), bound)
        out.append((r, curve, balls))
    return out


def _lattice_id(lattice: Lattice) -> int:
    """Sweep tie-break id: the grid id for hexagonal grids, -1 for octahedral."""
    return grid_id(lattice.seq) if isinstance(lattice, Hexagonal) else -1


def greedy_sweep(
    n_max: int,
    grids: Sequence[Lattice],
    restarts: int = 0,
    base_seed: int = 0,
    horizontal_bound: int = 0,
    workers: int = 1,
) -> list[SweepRecord]:
    """Best greedy result per configuration size over grids and restarts.

    Restart 0 is the lexicographic run; restart r >= 1 uses seed
    ``base_seed + r``.  Per-size results are read off the full runs through
    the prefix property.  Winners are reduced by contacts descending, then
    grid id ascending, then restart index ascending, independent of execution
    order, so results are reproducible with any worker count.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not grids:
        raise ValueError("grids must be nonempty")
    tasks = [(g, n_max, restarts, base_seed, horizontal_bound) for g in grids]
    if workers is None or workers < 1:
        import os

        workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=max(1, len(tasks) // (workers * 4))))
    else:
        results = [_sweep_task(t) for t in tasks]

    # winner per n: (contacts, grid id, restart, balls, lattice)
    best: list[tuple[int, int, int, list[Point], Lattice] | None] = [None] * (n_max + 1)
    for lattice, runs in zip(grids, results):
        gid = _lattice_id(lattice)
        for r, curve, balls in runs:
            for n in range(1, n_max + 1):
                c = curve[n]
                cur = best[n]
                if cur is None or c > cur[0] or (c == cur[0] and (gid, r) < (cur[1], cur[2])):
                    best[n] = (c, gid, r, balls, lattice)

    records = []
    for n in range(1, n_max + 1):
        c, gid, r, balls, lattice = best[n]  # type: ignore[misc]
        tag = "lex" if r == 0 else f"seed={base_seed + r}"
        config = Configuration(
            lattice,
            tuple(balls[:n]),
            f"greedy:{tag}:grid={descriptor(lattice)}",
        )
        records.append(SweepRecord(n, c, gid, config, "greedy", r))
    return records


@dataclass(frozen=True)
class Window:
    """Inclusive coordinate box of grid points: i, j and layer ranges."""

    i_range: tuple[int, int]
    j_range: tuple[int, int]
    k_range: tuple[int, int]

    def __post_init__(self) -> None:
        for lo, hi in (self.i_range, self.j_range, self.k_range):
            if lo > hi:
                raise ValueError(f"empty interval {lo}..{hi}")

    @property
    def point_count(self) -> int:
        return (
            (self.i_range[1] - self.i_range[0] + 1)
            * (self.j_range[1] - self.j_range[0] + 1)
            * (self.k_range[1] - self.k_range[0] + 1)
        )

    def points(self) -> list[Point]:
        """Window points sorted by (k, i, j), the exhaustive search order."""
        return [
            (i, j, k)
            for k in range(self.k_range[0], self.k_range[1] + 1)
            for i in range(self.i_range[0], self.i_range[1] + 1)
            for j in range(self.j_range[0], self.j_range[1] + 1)
        ]

    def subset_count(self, n: int) -> int:
        return math.comb(self.point_count, n)


# progress callback arguments: nodes explored, incumbent best, branches pruned
ProgressFn = Callable[[int, int, int], None]


def exhaustive(
    lattice: Lattice,
    window: Window,
    n: int,
    all_max: bool = False,
    progress: ProgressFn | None = None,
    progress_interval: int = 1 << 21,
) -> tuple[int, list[Configuration]]:
    """Exact maximum contact count over all n-subsets of a window.

    Depth-first subset enumeration in (k, i, j) point order with
    branch-and-bound pruning: a branch dies when its count plus
    (balls still to place) * (best possible per-ball gain) cannot improve on
    the incumbent.  Returns the optimum and one maximizing configuration, or
    all of them when ``all_max`` is set.
    """
    if isinstance(lattice, Hexagonal):
        seq = lattice.seq
        if window.k_range[0] < seq.t1 or window.k_range[1] > seq.t2:
            raise ValueError(
                f"window layers {window.k_range} outside grid layers {seq.t1}..{seq.t2}"
            )
    pts = window.points()
    count = len(pts)
    if n > count:
        raise ValueError(f"cannot place {n} balls on {count} window points")
    if n == 0:
        return 0, [Configuration(lattice, (), "exhaustive")]

    threshold = contact_threshold(lattice)
    adj = [0] * count
    for a in range(count):
        for b in range(a + 1, count):
            if scaled_sq_dist(lattice, pts[a], pts[b]) == threshold:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    cap = min(12, max((m.bit_count() for m in adj), default=0))

    best = -1
    best_masks: list[int] = []
    nodes = 0
    pruned = 0

    def dfs(start: int, left: int, contacts: int, mask: int) -> None:
        nonlocal best, best_masks, nodes, pruned
        if left == 0:
            if contacts > best:
                best = contacts
                best_masks = [mask]
            elif all_max and contacts == best:
                best_masks.append(mask)
            return
        tail_cap = (left - 1) * cap
        for idx in range(start, count - left + 1):
            nodes += 1
            if progress is not None and nodes % progress_interval == 0:
                progress(nodes, best, pruned)
            nc = contacts + (adj[idx] & mask).bit_count()
            reachable = nc + tail_cap
            if reachable < best or (not all_max and reachable == best):
                pruned += 1
                continue
            dfs(idx + 1, left - 1, nc, mask | (1 << idx))

    dfs(0, n, 0, 0)

    configs = []
    for mask in best_masks:
        balls = tuple(pts[i] for i in range(count) if mask >> i & 1)
        configs.append(Configuration(lattice, balls, f"exhaustive:grid={descriptor(lattice)}"))
    return best, configs


def _window_signature(lattice: Lattice, window: Window) -> object:
    """What a window actually sees of a grid: the layer-step shift changes.

    Two grids whose shift changes agree across the window's layers produce
    congruent point sets there, so only one needs searching.
    """
    if isinstance(lattice, Octahedral):
        return "oct"
    seq = lattice.seq
    a, b = window.k_range
    return tuple(seq.shift(k + 1) - seq.shift(k) for k in range(a, b))


def unique_window_grids(grids: Sequence[Lattice], window: Window) -> list[Lattice]:
    """First representative of each distinct window restriction, in input order."""
    seen = set()
    out = []
    for g in grids:
        sig = _window_signature(g, window)
        if sig not in seen:
            seen.add(sig)
            out.append(g)
    return out


def exhaustive_sweep(
    window: Window,
    n: int,
    grids: Sequence[Lattice],
    all_max: bool = False,
    progress: ProgressFn | None = None,
) -> SweepRecord:
    """Exact optimum over the distinct window restrictions of ``grids``."""
    if not grids:
        raise ValueError("grids must be nonempty")
    reps = unique_window_grids(grids, window)
    best: tuple[int, int, list[Configuration]] | None = None
    for lattice in reps:
        value, configs = exhaustive(lattice, window, n, all_max=all_max, progress=progress)
        gid = _lattice_id(lattice)
        if best is None or value > best[0] or (value == best[0] and gid < best[1]):
            best = (value, gid, configs)
    value, gid, configs = best  # type: ignore[misc]
    return SweepRecord(n, value, gid, configs[0] if configs else None, "exhaustive", 0)


SWEEP_CSV_COLUMNS = ("n", "best_contacts", "grid", "algorithm", "restarts", "runtime_ms")


def write_sweep_csv(path: str, records: Iterable[SweepRecord], runtime_ms: int) -> None:
    """Write sweep records in the standard CSV layout."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_COLUMNS)
        for rec in records:
            grid = descriptor(rec.configuration.lattice) if rec.configuration else ""
            writer.writerow(
                [rec.n, rec.best_contacts, grid, rec.algorithm, rec.restarts_used, runtime_ms]
            )


def read_sweep_csv(path: str) -> list[SweepRecord]:
    """Read a sweep CSV back into records (without configurations)."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(SWEEP_CSV_COLUMNS[:5]) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                n = int(row["n"])
                contacts = int(row["best_contacts"])
                restarts = int(row["restarts"])
            except (TypeError, ValueError):
                raise ValueError(f"{path}: line {lineno}: non-integer field") from None
            gid = _lattice_id(parse_descriptor(row["grid"])) if row["grid"] else -1
            records.append(SweepRecord(n, contacts, gid, None, row["algorithm"], restarts))
    return records
