"""Finite quivers, paths, cycles and their rotation orbits.

Paths compose left to right: ``a1 a2`` traverses ``a1`` first.  Vertices and
arrows are 0-based here; the JSON form and all printed labels are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("a quiver needs at least one vertex")
        object.__setattr__(self, "arrows", tuple((int(a), int(b)) for a, b in self.arrows))
        for src, tgt in self.arrows:
            if not (0 <= src < self.vertex_count and 0 <= tgt < self.vertex_count):
                raise ValueError(f"arrow ({src}, {tgt}) has an endpoint out of range")

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def source(self, arrow: int) -> int:
        return self.arrows[arrow][0]

    def target(self, arrow: int) -> int:
        return self.arrows[arrow][1]

    def out_arrows(self, vertex: int) -> List[int]:
        return [a for a, (src, _) in enumerate(self.arrows) if src == vertex]

    def path(self, arrows: Sequence[int], source: int | None = None) -> "Path":
        """Build a path from an arrow sequence, checking composability."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise ValueError("a trivial path needs its vertex")
            return Path.trivial(source)
        for a, b in zip(arrows, arrows[1:]):
            if self.target(a) != self.source(b):
                raise ValueError(f"arrows {a} and {b} do not compose")
        return Path(self.source(arrows[0]), self.target(arrows[-1]), arrows)

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": self.vertex_count, "arrows": [[s + 1, t + 1] for s, t in self.arrows]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        data = json.loads(text)
        return cls(int(data["vertices"]), tuple((s - 1, t - 1) for s, t in data["arrows"]))


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: Tuple[int, ...]

    @classmethod
    def trivial(cls, vertex: int) -> "Path":
        return cls(vertex, vertex, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return bool(self.arrows) and self.source == self.target

    def sort_key(self) -> Tuple[int, Tuple[int, ...], int]:
        return (len(self.arrows), self.arrows, self.source)

    def concat(self, other: "Path") -> "Path | None":
        """Concatenation in the path algebra, or None when not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def label(self, symbol: str = "x") -> str:
        if not self.arrows:
            return f"e{self.source + 1}"
        return "".join(f"{symbol}{a + 1}" for a in self.arrows)


@dataclass(frozen=True)
class CycleOrbit:
    representative: Path
    members: Tuple[Path, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def cyclic_quiver(s: int) -> Quiver:
    """Oriented cycle with ``s`` vertices; arrow ``i`` runs from vertex ``i`` to ``i+1 mod s``."""
    if s < 1:
        raise ValueError("the cyclic quiver needs s >= 1")
    return Quiver(s, tuple((i, (i + 1) % s) for i in range(s)))


def paths_of_length(q: Quiver, length: int) -> List[Path]:
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return [Path.trivial(v) for v in range(q.vertex_count)]
    out_by_vertex: Dict[int, List[int]] = {v: q.out_arrows(v) for v in range(q.vertex_count)}
    frontier = [((a,), q.target(a)) for a in range(q.arrow_count)]
    for _ in range(length - 1):
        frontier = [(word + (b,), q.target(b)) for word, end in frontier for b in out_by_vertex[end]]
    paths = [Path(q.source(word[0]), end, word) for word, end in frontier]
    paths.sort(key=Path.sort_key)
    return paths


def cycles(q: Quiver, length: int) -> List[Path]:
    if length < 1:
        raise ValueError("cycles have positive length")
    return [p for p in paths_of_length(q, length) if p.source == p.target]


def rotate(q: Quiver, cycle: Path) -> Path:
    """The generator of C_q: ``a1 ... aq -> aq a1 ... a(q-1)``."""
    if not cycle.is_cycle:
        raise ValueError(f"{cycle} is not a cycle")
    last = cycle.arrows[-1]
    v = q.source(last)
    return Path(v, v, (last,) + cycle.arrows[:-1])


def rotations(q: Quiver, cycle: Path) -> List[Path]:
    out = [cycle]
    cur = rotate(q, cycle)
    while cur != cycle:
        out.append(cur)
        cur = rotate(q, cur)
    return out


def orbit_decomposition(q: Quiver, cycle_list: Iterable[Path]) -> List[CycleOrbit]:
    """Partition equal-length cycles into rotation orbits, ordered by representative."""
    cycle_list = list(cycle_list)
    lengths = {c.length for c in cycle_list}
    if len(lengths) > 1:
        raise ValueError("all cycles must have the same length")
    seen = set()
    orbits = []
    for c in cycle_list:
        if not c.is_cycle:
            raise ValueError(f"{c} is not a cycle")
        if c in seen:
            continue
        members = rotations(q, c)
        seen.update(members)
        rep = min(members, key=lambda p: p.arrows)
        orbits.append(CycleOrbit(rep, tuple(sorted(members, key=Path.sort_key))))
    orbits.sort(key=lambda o: o.representative.arrows)
    return orbits


def is_basic(cycle: Path) -> bool:
    """True unless the cycle is a proper power of a shorter cycle."""
    if not cycle.is_cycle:
        raise ValueError(f"{cycle} is not a cycle")
    word = cycle.arrows
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word[:d] * (n // d) == word:
            return False
    return True


def orbit_count(q: Quiver, length: int) -> int:
    return len(orbit_decomposition(q, cycles(q, length)))


def basic_orbit_count(q: Quiver, length: int) -> int:
    return len(orbit_decomposition(q, [c for c in cycles(q, length) if is_basic(c)]))


__all__ = [
    "CycleOrbit",
    "Path",
    "Quiver",
    "basic_orbit_count",
    "cycles",
    "cyclic_quiver",
    "is_basic",
    "orbit_count",
    "orbit_decomposition",
    "paths_of_length",
    "rotate",
    "rotations",
]
