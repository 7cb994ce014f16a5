"""Ball configurations on a lattice: contact counting, verification, file I/O.

The pairwise integer-metric count in :func:`contact_count` is the canonical
oracle; the incremental count used by the search code must agree with it
exactly, which the test suite enforces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO

from .lattice import (
    Hexagonal,
    Lattice,
    Point,
    contact_threshold,
    descriptor,
    parse_descriptor,
    to_cartesian,
)


class DuplicateBallError(ValueError):
    """Two balls of a configuration share a center."""

    def __init__(self, first: int, second: int):
        super().__init__(f"balls {first} and {second} have the same center")
        self.indices = (first, second)


class LayerOutOfRangeError(ValueError):
    """A ball's layer index falls outside the grid's layer range."""

    def __init__(self, index: int, layer: int, t1: int, t2: int):
        super().__init__(f"ball {index} sits in layer {layer}, outside {t1}..{t2}")
        self.index = index


@dataclass(frozen=True)
class Configuration:
    """An ordered set of distinct unit-ball centers on one lattice."""

    lattice: Lattice
    balls: tuple[Point, ...]
    provenance: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "balls", tuple(tuple(b) for b in self.balls))

    def __len__(self) -> int:
        return len(self.balls)


@dataclass(frozen=True)
class ContactReport:
    """Verification summary of a configuration."""

    n: int
    contacts: int
    degree_sequence: tuple[int, ...]
    min_scaled_dist: int | None


def _check_duplicates(balls: tuple[Point, ...]) -> None:
    seen: dict[Point, int] = {}
    for idx, b in enumerate(balls):
        if b in seen:
            raise DuplicateBallError(seen[b], idx)
        seen[b] = idx


def _check_layers(lattice: Lattice, balls: tuple[Point, ...]) -> None:
    if not isinstance(lattice, Hexagonal):
        return
    t1, t2 = lattice.seq.t1, lattice.seq.t2
    for idx, b in enumerate(balls):
        if not t1 <= b[2] <= t2:
            raise LayerOutOfRangeError(idx, b[2], t1, t2)


def contact_count(config: Configuration) -> int:
    """Number of touching pairs, by exhaustive pairwise integer distances."""
    _check_duplicates(config.balls)
    _check_layers(config.lattice, config.balls)
    threshold = contact_threshold(config.lattice)
    balls = config.balls
    lattice = config.lattice
    count = 0
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if _scaled(lattice, balls[i], balls[j]) == threshold:
                count += 1
    return count


def _scaled(lattice: Lattice, p: Point, q: Point) -> int:
    # local copy of lattice.scaled_sq_dist, kept monomorphic for the O(n^2) loops
    if isinstance(lattice, Hexagonal):
        shifts = lattice.seq.prefix_sums
        t1 = lattice.seq.t1
        di = p[0] - q[0]
        dj = p[1] - q[1]
        dk = p[2] - q[2]
        ds = shifts[p[2] - t1] - shifts[q[2] - t1]
        a = 2 * di + dj + ds
        b = 3 * dj + ds
        return 3 * a * a + b * b + 8 * dk * dk
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    dz = p[2] - q[2]
    a = 2 * dx + dz
    b = 2 * dy + dz
    return a * a + b * b + 2 * dz * dz


def verify(config: Configuration) -> ContactReport:
    """Full check of a configuration: distinctness, layer range, metric floor.

    Raises DuplicateBallError or LayerOutOfRangeError on invalid input and
    RuntimeError if any pair sits closer than the contact distance, which no
    genuine lattice configuration can do.
    """
    _check_duplicates(config.balls)
    _check_layers(config.lattice, config.balls)
    threshold = contact_threshold(config.lattice)
    balls = config.balls
    lattice = config.lattice
    n = len(balls)
    degrees = [0] * n
    contacts = 0
    min_dist: int | None = None
    for i in range(n):
        for j in range(i + 1, n):
            d = _scaled(lattice, balls[i], balls[j])
            if min_dist is None or d < min_dist:
                min_dist = d
            if d == threshold:
                contacts += 1
                degrees[i] += 1
                degrees[j] += 1
    if min_dist is not None and min_dist < threshold:
        raise RuntimeError(
            f"scaled squared distance {min_dist} below contact threshold {threshold}; "
            "points do not form a packing"
        )
    return ContactReport(n, contacts, tuple(degrees), min_dist)


def prefix(config: Configuration, n: int) -> Configuration:
    """The first n balls, in original order, on the same lattice."""
    if not 0 <= n <= len(config.balls):
        raise ValueError(f"prefix length {n} out of range 0..{len(config.balls)}")
    return Configuration(config.lattice, config.balls[:n], config.provenance)


def incremental_delta(config: Configuration, p: Point) -> int:
    """Contacts a new ball at ``p`` would add to the configuration."""
    if p in config.balls:
        raise DuplicateBallError(config.balls.index(p), len(config.balls))
    threshold = contact_threshold(config.lattice)
    return sum(1 for b in config.balls if _scaled(config.lattice, p, b) == threshold)


def reflect_configuration(config: Configuration) -> Configuration:
    """Mirror image of a hexagonal-grid configuration on the flipped grid."""
    if not isinstance(config.lattice, Hexagonal):
        raise ValueError("reflection helper applies to hexagonal grids only")
    mirrored = Hexagonal(config.lattice.seq.flipped())
    balls = tuple((-i, -j, k) for i, j, k in config.balls)
    return Configuration(mirrored, balls, config.provenance)


def write_jsonl(config: Configuration, target: str | IO[str]) -> None:
    """Write a configuration as JSON lines: a header record, then one record
    per ball carrying both integer lattice coordinates and Cartesian
    coordinates rounded to 12 decimal digits."""
    if isinstance(target, str):
        with open(target, "w") as fh:
            write_jsonl(config, fh)
        return
    header = {
        "lattice": descriptor(config.lattice),
        "n": len(config.balls),
        "provenance": config.provenance,
    }
    target.write(json.dumps(header) + "\n")
    for idx, ball in enumerate(config.balls):
        x, y, z = to_cartesian(config.lattice, ball)
        record = {
            "index": idx,
            "i": ball[0],
            "j": ball[1],
            "k": ball[2],
            "x": round(x, 12),
            "y": round(y, 12),
            "z": round(z, 12),
        }
        target.write(json.dumps(record) + "\n")


def read_jsonl(source: str | IO[str]) -> Configuration:
    """Read a configuration written by :func:`write_jsonl`.

    The integer lattice coordinates are authoritative; Cartesian fields are
    ignored.  Raises ValueError with a line number on malformed input.
    """
    if isinstance(source, str):
        with open(source) as fh:
            return read_jsonl(fh)
    lines = [ln for ln in (raw.strip() for raw in source) if ln]
    if not lines:
        raise ValueError("line 1: empty configuration file")

    def load(lineno: int, text: str) -> dict:
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if not isinstance(rec, dict):
            raise ValueError(f"line {lineno}: expected a JSON object")
        return rec

    header = load(1, lines[0])
    for key in ("lattice", "n"):
        if key not in header:
            raise ValueError(f"line 1: header missing {key!r}")
    try:
        lattice = parse_descriptor(header["lattice"])
    except ValueError as exc:
        raise ValueError(f"line 1: {exc}") from None
    n = header["n"]
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"line 1: bad ball count {n!r}")
    if len(lines) - 1 != n:
        raise ValueError(f"line 1: header says {n} balls, file has {len(lines) - 1}")
    balls = []
    for lineno, text in enumerate(lines[1:], start=2):
        rec = load(lineno, text)
        try:
            balls.append((int(rec["i"]), int(rec["j"]), int(rec["k"])))
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"line {lineno}: ball record needs integer i, j, k") from None
    return Configuration(lattice, tuple(balls), str(header.get("provenance", "")))
