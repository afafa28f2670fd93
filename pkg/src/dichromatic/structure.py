"""Brooks-type structure: block types, critical obstructions, list colorings."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .digraph import Block, Digraph, blocks, degree_profile, is_eulerian, is_weakly_connected
from .exact import DEFAULT_LIMITS, GuardExceeded, ListAssignment, ResourceLimit, SolveLimits, list_colorable

DIGON = "digon"
DIRECTED_CYCLE = "directed_cycle"
ODD_BIDIRECTED_CYCLE = "odd_bidirected_cycle"
BIDIRECTED_COMPLETE = "bidirected_complete"
OTHER = "other"


@dataclass(frozen=True)
class BlockClass:
    kind: str
    order: int

    def __str__(self) -> str:
        return f"{self.kind}({self.order})"


def _is_directed_cycle(D: Digraph) -> bool:
    return (
        D.n >= 2
        and all(len(o) == 1 and len(i) == 1 for o, i in zip(D.out_adj, D.in_adj))
        and is_weakly_connected(D)
    )


def _is_bidirected(D: Digraph) -> bool:
    return all((v, u) in D.arcs for u, v in D.arcs)


def _is_odd_bidirected_cycle(D: Digraph) -> bool:
    return (
        D.n >= 3
        and D.n % 2 == 1
        and _is_bidirected(D)
        and all(len(o) == 2 for o in D.out_adj)
        and is_weakly_connected(D)
    )


def _is_bidirected_complete(D: Digraph) -> bool:
    return len(D.arcs) == D.n * (D.n - 1)


def classify_digraph(D: Digraph) -> BlockClass:
    """Block type of a digraph that is itself a single block.

    The digon is reported as such. The bidirected triangle is reported as an
    odd bidirected cycle; complete digraphs are reported from order 4 up.
    """
    if D.n == 2 and len(D.arcs) == 2:
        return BlockClass(DIGON, 2)
    if _is_directed_cycle(D):
        return BlockClass(DIRECTED_CYCLE, D.n)
    if _is_odd_bidirected_cycle(D):
        return BlockClass(ODD_BIDIRECTED_CYCLE, D.n)
    if D.n >= 4 and _is_bidirected_complete(D):
        return BlockClass(BIDIRECTED_COMPLETE, D.n)
    return BlockClass(OTHER, D.n)


def classify_block(D: Digraph, b: Block) -> BlockClass:
    if b.parent is not D and not set(b.arcs) <= D.arcs:
        raise ValueError("block does not belong to this digraph")
    sub, _ = b.subdigraph()
    return classify_digraph(sub)


def brooks_obstruction(D: Digraph, k: int) -> bool:
    """Is D one of the k-critical shapes with d+ = d- = k-1 everywhere?"""
    if k < 2:
        raise ValueError("k must be at least 2")
    if D.n == 0 or any(len(o) != k - 1 or len(i) != k - 1 for o, i in zip(D.out_adj, D.in_adj)):
        return False
    if k == 2:
        return _is_directed_cycle(D)
    if k == 3:
        return _is_odd_bidirected_cycle(D)
    return D.n == k and _is_bidirected_complete(D)


# ---------------------------------------------------------------------------
# list colorings


def required_list_sizes(D: Digraph) -> list[int]:
    """d+(v) at Eulerian vertices, min(d+, d-) + 1 elsewhere."""
    sizes = []
    for o, i in zip(D.out_adj, D.in_adj):
        sizes.append(len(o) if len(o) == len(i) else min(len(o), len(i)) + 1)
    return sizes


@dataclass(frozen=True)
class GallaiReport:
    hypothesis_ok: bool
    eulerian: bool
    lists_tight: bool
    blocks_ok: bool
    candidate: bool
    block_classes: tuple[BlockClass, ...] = ()


def gallai_candidate(D: Digraph, L: ListAssignment) -> GallaiReport:
    """Check whether (D, L) has the shape every non-L-colorable instance
    with Brooks-sized lists must have.

    ``candidate`` False together with ``hypothesis_ok`` True means D is
    L-colorable. ``candidate`` True decides nothing by itself.
    """
    if len(L.lists) != D.n:
        raise ValueError("list assignment does not match the vertex count")
    need, eul, classes = _gallai_structure(D)
    hyp = all(len(L.lists[v]) >= need[v] for v in range(D.n))
    tight = all(len(L.lists[v]) == len(D.out_adj[v]) for v in range(D.n))
    blocks_ok = all(c.kind != OTHER for c in classes)
    return GallaiReport(hyp, eul, tight, blocks_ok, eul and tight and blocks_ok, classes)


@lru_cache(maxsize=4096)
def _gallai_structure(D: Digraph) -> tuple[list[int], bool, tuple[BlockClass, ...]]:
    if not is_weakly_connected(D):
        raise ValueError("digraph must be weakly connected")
    classes = tuple(classify_block(D, b) for b in blocks(D))
    return required_list_sizes(D), is_eulerian(D)[0], classes


def canonical_list_assignments(sizes: Sequence[int], universe: int) -> Iterator[ListAssignment]:
    """List assignments with |L(v)| = sizes[v], one or more per orbit of
    color renaming: colors are introduced in increasing order of first use.
    """
    n = len(sizes)
    lists: list[frozenset[int]] = [frozenset()] * n

    def rec(v: int, used: int) -> Iterator[ListAssignment]:
        if v == n:
            yield ListAssignment(tuple(lists), universe)
            return
        s = sizes[v]
        for fresh in range(0, s + 1):
            old = s - fresh
            if old > used or used + fresh > universe:
                continue
            new_colors = tuple(range(used, used + fresh))
            for olds in itertools.combinations(range(used), old):
                lists[v] = frozenset(olds + new_colors)
                yield from rec(v + 1, used + fresh)

    if any(s < 1 or s > universe for s in sizes):
        return
    yield from rec(0, 0)


@dataclass(frozen=True)
class ChoosabilityVerdict:
    choosable: bool
    counterexample: ListAssignment | None = None
    checked: int = 0


def choosable_bound_check(
    D: Digraph,
    k: int,
    universe: int | None = None,
    limits: SolveLimits = DEFAULT_LIMITS,
    max_n: int = 6,
) -> ChoosabilityVerdict:
    """Is D L-colorable for every assignment of k-lists from the universe?

    The default universe of n*k colors covers every possible overlap
    pattern, so a "choosable" verdict then means genuinely k-choosable.
    """
    if D.n > max_n:
        raise GuardExceeded(f"n={D.n} exceeds choosability guard {max_n}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if universe is None:
        universe = max(D.n * k, 1)
    if universe < k:
        raise ValueError("universe must hold at least k colors")
    deadline = time.monotonic() + limits.max_seconds
    checked = 0
    for L in canonical_list_assignments([k] * D.n, universe):
        checked += 1
        if time.monotonic() > deadline:
            raise ResourceLimit("time budget exhausted during list enumeration")
        if list_colorable(D, L, limits) is None:
            return ChoosabilityVerdict(False, L, checked)
    return ChoosabilityVerdict(True, None, checked)


def list_brooks_bound(D: Digraph) -> int | None:
    """ceil(Delta~) when the list bound applies (digon-free, connected, Delta~ > 1)."""
    prof = degree_profile(D)
    if any((v, u) in D.arcs for u, v in D.arcs):
        return None
    if not is_weakly_connected(D) or not prof.delta_tilde_exceeds(1):
        return None
    return prof.ceil_delta_tilde


# ---------------------------------------------------------------------------
# list file format: one line "v: c1 c2 ..." per vertex


def parse_lists(text: str, n: int) -> ListAssignment:
    lists: list[frozenset[int] | None] = [None] * n
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise ValueError(f"line {lineno}: expected 'v: c1 c2 ...', got {line!r}")
        v = int(head)
        if not 0 <= v < n:
            raise ValueError(f"line {lineno}: vertex {v} out of range")
        if lists[v] is not None:
            raise ValueError(f"line {lineno}: vertex {v} listed twice")
        try:
            lists[v] = frozenset(int(c) for c in tail.split())
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer color in {line!r}") from None
    missing = [v for v, L in enumerate(lists) if L is None]
    if missing:
        raise ValueError(f"no list for vertices {missing}")
    return ListAssignment.of([sorted(L) for L in lists])


def format_lists(L: ListAssignment) -> str:
    return "".join(f"{v}: {' '.join(map(str, sorted(lst)))}\n" for v, lst in enumerate(L.lists))
