"""Exact dichromatic number and list-colorability by backtracking.

Color classes are kept as vertex bitmasks. Adding v to a class S closes a
cycle iff some out-neighbour of v in S reaches some in-neighbour of v inside
S, which is a short bitmask BFS on the (small) class.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Mapping, Sequence

from .coloring import PartialColoring
from .digraph import Digraph, is_acyclic, is_acyclic_subset


class ResourceLimit(RuntimeError):
    """A search budget ran out before the question was decided."""


class GuardExceeded(ValueError):
    """Input is larger than a brute-force or enumeration guard allows."""


@dataclass(frozen=True)
class SolveLimits:
    max_nodes: int = 50_000_000
    max_seconds: float = 600.0
    brute_force_max_n: int = 8

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0 or self.brute_force_max_n <= 0:
            raise ValueError("solve limits must be positive")


DEFAULT_LIMITS = SolveLimits()


class _Budget:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, limits: SolveLimits):
        self.nodes = 0
        self.max_nodes = limits.max_nodes
        self.deadline = time.monotonic() + limits.max_seconds

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceLimit(f"node budget {self.max_nodes} exhausted")
        if (self.nodes & 0x3FF) == 0 and time.monotonic() > self.deadline:
            raise ResourceLimit("time budget exhausted")


def closes_cycle(D: Digraph, v: int, cls: int) -> bool:
    """Would adding v to the vertex set ``cls`` (bitmask, acyclic) create a cycle?"""
    target = D.in_mask[v] & cls
    if not target:
        return False
    frontier = D.out_mask[v] & cls
    seen = frontier
    out_mask = D.out_mask
    while frontier:
        if frontier & target:
            return True
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= out_mask[low.bit_length() - 1]
            m ^= low
        frontier = nxt & cls & ~seen
        seen |= frontier
    return False


def search_order(D: Digraph) -> list[int]:
    """Total degree descending, ascending id on ties."""
    return sorted(range(D.n), key=lambda v: (-(len(D.out_adj[v]) + len(D.in_adj[v])), v))


def is_k_colorable(
    D: Digraph, k: int, limits: SolveLimits = DEFAULT_LIMITS
) -> PartialColoring | None:
    """A k-coloring of D, or None if none exists. Raises ResourceLimit."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if D.n == 0:
        return PartialColoring((), k)
    order = search_order(D)
    budget = _Budget(limits)
    classes = [0] * k
    colors: list[int | None] = [None] * D.n

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        budget.tick()
        v = order[i]
        bit = 1 << v
        # color c is only tried if c <= (highest color used so far) + 1
        for c in range(min(used + 1, k)):
            if closes_cycle(D, v, classes[c]):
                continue
            classes[c] |= bit
            colors[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
            classes[c] ^= bit
            colors[v] = None
        return False

    if rec(0, 0):
        return PartialColoring(tuple(colors), k)
    return None


def chromatic_number(
    D: Digraph, limits: SolveLimits = DEFAULT_LIMITS
) -> tuple[int, PartialColoring]:
    if D.n == 0:
        return 0, PartialColoring((), 1)
    k = 1 if is_acyclic(D) else 2
    while True:
        col = is_k_colorable(D, k, limits)
        if col is not None:
            return k, col
        k += 1


@dataclass(frozen=True)
class ListAssignment:
    """``lists[v]`` is the set of admissible colors of v, drawn from 0..universe-1."""

    lists: tuple[frozenset[int], ...]
    universe: int

    def __post_init__(self):
        for v, L in enumerate(self.lists):
            if not L:
                raise ValueError(f"empty list at vertex {v}")
            if any(not 0 <= c < self.universe for c in L):
                raise ValueError(f"list of vertex {v} leaves universe 0..{self.universe - 1}")

    @classmethod
    def of(cls, lists: Sequence[Sequence[int]], universe: int | None = None) -> "ListAssignment":
        fl = tuple(frozenset(L) for L in lists)
        if universe is None:
            universe = max((max(L) for L in fl if L), default=-1) + 1
        return cls(fl, universe)

    @classmethod
    def uniform(cls, n: int, k: int) -> "ListAssignment":
        return cls(tuple(frozenset(range(k)) for _ in range(n)), k)


def list_colorable(
    D: Digraph, L: ListAssignment, limits: SolveLimits = DEFAULT_LIMITS
) -> PartialColoring | None:
    """An L-coloring of D, or None. Vertices with short lists go first."""
    if len(L.lists) != D.n:
        raise ValueError("list assignment does not match the vertex count")
    if D.n == 0:
        return PartialColoring((), max(L.universe, 1))
    deg = [len(D.out_adj[v]) + len(D.in_adj[v]) for v in range(D.n)]
    order = sorted(range(D.n), key=lambda v: (len(L.lists[v]), -deg[v], v))
    lists = [sorted(L.lists[v]) for v in range(D.n)]
    budget = _Budget(limits)
    classes: dict[int, int] = {}
    colors: list[int | None] = [None] * D.n

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        budget.tick()
        v = order[i]
        bit = 1 << v
        for c in lists[v]:
            cls = classes.get(c, 0)
            if closes_cycle(D, v, cls):
                continue
            classes[c] = cls | bit
            colors[v] = c
            if rec(i + 1):
                return True
            classes[c] = cls
            colors[v] = None
        return False

    if rec(0):
        return PartialColoring(tuple(colors), L.universe)
    return None


def brute_force_chi(D: Digraph, limits: SolveLimits = DEFAULT_LIMITS) -> int:
    """Try every map V -> {0..k-1} for k = 1, 2, ... (test oracle)."""
    if D.n > limits.brute_force_max_n:
        raise GuardExceeded(f"n={D.n} exceeds brute-force guard {limits.brute_force_max_n}")
    if D.n == 0:
        return 0
    for k in range(1, D.n + 1):
        for assignment in itertools.product(range(k), repeat=D.n):
            if all(
                is_acyclic_subset(D, [v for v in range(D.n) if assignment[v] == c]) is None
                for c in range(k)
            ):
                return k
    raise AssertionError("unreachable: n colors always suffice")


def brute_force_list_colorable(D: Digraph, L: ListAssignment) -> bool:
    for choice in itertools.product(*[sorted(x) for x in L.lists]):
        classes: Mapping[int, list[int]] = {}
        for v, c in enumerate(choice):
            classes.setdefault(c, []).append(v)
        if all(is_acyclic_subset(D, S) is None for S in classes.values()):
            return True
    return False
