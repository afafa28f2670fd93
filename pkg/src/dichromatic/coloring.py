"""Acyclic colorings: validation, greedy colorers, peeling and bound reports."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .digraph import (
    CycleWitness,
    Digraph,
    degree_profile,
    find_digons,
    induced_subdigraph,
    is_acyclic_subset,
    weak_components,
)

DEFAULT_DELTA1 = 10**10
# 1 - e^-13
LLL_FACTOR = 1.0 - math.exp(-13)


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class PartialColoring:
    """``colors[v]`` is a color in ``0..palette_size-1`` or None."""

    colors: tuple[int | None, ...]
    palette_size: int

    def __post_init__(self):
        for v, c in enumerate(self.colors):
            if c is not None and not 0 <= c < self.palette_size:
                raise ColoringError(f"vertex {v} has color {c} outside palette {self.palette_size}")

    @classmethod
    def empty(cls, n: int, palette_size: int) -> "PartialColoring":
        return cls((None,) * n, palette_size)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c is None]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            if c is not None:
                out.setdefault(c, []).append(v)
        return out

    def num_colors_used(self) -> int:
        return len({c for c in self.colors if c is not None})

    def with_color(self, v: int, c: int | None) -> "PartialColoring":
        cols = list(self.colors)
        cols[v] = c
        return PartialColoring(tuple(cols), self.palette_size)


@dataclass(frozen=True)
class Violation:
    color: int
    cycle: tuple[int, ...]


def validate_coloring(D: Digraph, col: PartialColoring) -> Violation | None:
    """None when every color class is acyclic; else the smallest bad color."""
    if col.n != D.n:
        raise ColoringError(f"coloring has {col.n} entries, digraph has {D.n} vertices")
    for c, members in sorted(col.classes().items()):
        w = is_acyclic_subset(D, members)
        if w is not None:
            return Violation(c, w.cycle)
    return None


def is_valid(D: Digraph, col: PartialColoring) -> bool:
    return validate_coloring(D, col) is None


def _smallest_absent(used: set[int], palette: int | None = None) -> int | None:
    c = 0
    while c in used:
        c += 1
    if palette is not None and c >= palette:
        return None
    return c


def greedy_color(D: Digraph, order: Sequence[int] | None = None, side: str = "out") -> PartialColoring:
    """Give each vertex the smallest color missing from its already-colored
    out-neighbours (``side="out"``) or in-neighbours (``side="in"``).

    A monochromatic cycle is impossible: its last-colored vertex would have
    avoided the color of its successor (resp. predecessor) on the cycle.
    """
    if order is None:
        order = range(D.n)
    order = list(order)
    if sorted(order) != list(range(D.n)):
        raise ColoringError("order is not a permutation of the vertices")
    if side not in ("out", "in"):
        raise ColoringError(f"side must be 'out' or 'in', got {side!r}")
    adj = D.out_adj if side == "out" else D.in_adj
    colors: list[int | None] = [None] * D.n
    for v in order:
        used = {colors[w] for w in adj[v] if colors[w] is not None}
        colors[v] = _smallest_absent(used)
    k = max((c for c in colors if c is not None), default=-1) + 1
    return PartialColoring(tuple(colors), max(k, 1))


def greedy_best(D: Digraph, order: Sequence[int] | None = None) -> PartialColoring:
    """Run both sides and keep the one using fewer colors (out wins ties)."""
    a = greedy_color(D, order, "out")
    b = greedy_color(D, order, "in")
    return b if b.num_colors_used() < a.num_colors_used() else a


class ExtensionFailure(ColoringError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"every palette color appears on an out-neighbour of vertex {vertex}")


def extend_partial(
    D: Digraph, partial: PartialColoring, order: Sequence[int] | None = None
) -> PartialColoring:
    """Complete ``partial`` greedily against colored out-neighbours.

    Already-colored vertices keep their color. If every uncolored vertex sees
    at least r colors repeated on its out-neighbourhood, a palette of
    ``Delta_o + 1 - r`` colors is enough. Raises ExtensionFailure otherwise.
    """
    uncolored = partial.uncolored()
    if order is None:
        order = uncolored
    order = list(order)
    if sorted(order) != uncolored:
        raise ColoringError("order must list exactly the uncolored vertices")
    colors = list(partial.colors)
    for v in order:
        used = {colors[w] for w in D.out_adj[v] if colors[w] is not None}
        c = _smallest_absent(used, partial.palette_size)
        if c is None:
            raise ExtensionFailure(v)
        colors[v] = c
    return PartialColoring(tuple(colors), partial.palette_size)


def repeated_colors(D: Digraph, col: PartialColoring, v: int) -> int:
    """Number of colors appearing at least twice on the out-neighbourhood of v."""
    counts: dict[int, int] = {}
    for w in D.out_adj[v]:
        c = col.colors[w]
        if c is not None:
            counts[c] = counts.get(c, 0) + 1
    return sum(1 for k in counts.values() if k >= 2)


def maximal_acyclic_set(D: Digraph, vertices: Iterable[int] | None = None) -> list[int]:
    """Scan ascending and keep each vertex that leaves the set acyclic."""
    if vertices is None:
        vertices = range(D.n)
    chosen: list[int] = []
    for v in sorted(vertices):
        if is_acyclic_subset(D, chosen + [v]) is None:
            chosen.append(v)
    return chosen


@dataclass(frozen=True)
class PeelRound:
    ceil_delta_tilde: int
    removed: tuple[int, ...]


def peel_color(D: Digraph) -> tuple[PartialColoring, list[PeelRound]]:
    """Strip off greedy maximal acyclic sets, one color each.

    Each surviving vertex has an out- and an in-neighbour in the stripped
    set, so ceil(Delta~) of the residual drops by at least one per round.
    The trace records ceil(Delta~) of the digraph each round starts from.
    """
    colors: list[int | None] = [None] * D.n
    remaining = list(range(D.n))
    trace: list[PeelRound] = []
    color = 0
    while remaining:
        sub, old = induced_subdigraph(D, remaining)
        ceil_dt = degree_profile(sub).ceil_delta_tilde
        U = [old[i] for i in maximal_acyclic_set(sub)]
        for v in U:
            colors[v] = color
        trace.append(PeelRound(ceil_dt, tuple(U)))
        taken = set(U)
        remaining = [v for v in remaining if v not in taken]
        color += 1
    return PartialColoring(tuple(colors), max(color, 1)), trace


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundReport:
    nl_bound: int
    delta_tilde: float
    ceil_delta_tilde: int
    digon_free: bool
    connected: bool
    brooks_list_bound: int
    brooks_list_applicable: bool
    lll_bound: int
    lll_applicable: bool
    alpha: float
    alpha_bound: int
    alpha_applicable: bool
    delta1: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_lines(self) -> str:
        return "".join(f"{k}={_fmt(v)}\n" for k, v in self.as_dict().items())

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def bound_report(D: Digraph, delta1: float = DEFAULT_DELTA1) -> BoundReport:
    prof = degree_profile(D)
    digon_free = not find_digons(D)
    connected = len(weak_components(D)) <= 1

    # Per component the list bound is that component's ceil(Delta~); a
    # component with Delta~ <= 1 is at most 2-chromatic. With Delta~(D) > 1
    # the maximum over components is ceil(Delta~(D)) either way.
    brooks_ok = digon_free and prof.delta_tilde_exceeds(1)
    brooks_bound = max(prof.ceil_delta_tilde, 1)

    dt = prof.delta_tilde
    lll_ok = digon_free and dt >= delta1
    lll_bound = math.floor(LLL_FACTOR * dt)
    alpha = max(delta1 / (delta1 + 1), LLL_FACTOR)
    alpha_ok = digon_free and prof.delta_tilde_exceeds(1)
    return BoundReport(
        nl_bound=min(prof.delta_o, prof.delta_i) + 1,
        delta_tilde=dt,
        ceil_delta_tilde=prof.ceil_delta_tilde,
        digon_free=digon_free,
        connected=connected,
        brooks_list_bound=brooks_bound,
        brooks_list_applicable=brooks_ok,
        lll_bound=lll_bound,
        lll_applicable=lll_ok,
        alpha=alpha,
        alpha_bound=math.floor(alpha * (dt + 1)),
        alpha_applicable=alpha_ok,
        delta1=delta1,
    )


# ---------------------------------------------------------------------------
# coloring file format


def format_coloring(col: PartialColoring) -> str:
    return "".join(
        f"{v} {'-' if c is None else c}\n" for v, c in enumerate(col.colors)
    )


def parse_coloring(text: str, n: int, palette_size: int | None = None) -> PartialColoring:
    colors: list[int | None] = [None] * n
    seen = set()
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise ColoringError(f"line {lineno}: malformed coloring line {line!r}")
        v = int(parts[0])
        if not 0 <= v < n:
            raise ColoringError(f"line {lineno}: vertex {v} out of range")
        if v in seen:
            raise ColoringError(f"line {lineno}: vertex {v} listed twice")
        seen.add(v)
        if parts[1] == "-":
            continue
        if not parts[1].isdigit():
            raise ColoringError(f"line {lineno}: malformed color {parts[1]!r}")
        colors[v] = int(parts[1])
    if len(seen) != n:
        raise ColoringError(f"coloring lists {len(seen)} vertices, expected {n}")
    used = [c for c in colors if c is not None]
    if palette_size is None:
        palette_size = max(used, default=-1) + 1
    return PartialColoring(tuple(colors), max(palette_size, 1))


__all__ = [
    "BoundReport",
    "ColoringError",
    "CycleWitness",
    "ExtensionFailure",
    "PartialColoring",
    "PeelRound",
    "Violation",
    "bound_report",
    "extend_partial",
    "format_coloring",
    "greedy_best",
    "greedy_color",
    "is_valid",
    "maximal_acyclic_set",
    "parse_coloring",
    "peel_color",
    "repeated_colors",
    "validate_coloring",
]
