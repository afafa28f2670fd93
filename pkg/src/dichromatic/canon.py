"""Canonical labelling and isomorphism-free enumeration of small digraphs.

The canonical code of a digraph is the row-major adjacency matrix, read as a
binary number, minimised over every vertex ordering that an
individualisation/refinement search can reach. The refinement only uses
label-free information (degree counts into ordered cells), so isomorphic
digraphs reach the same set of codes and get the same minimum.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .digraph import Digraph, is_weakly_connected, relabel
from .exact import GuardExceeded

FILTERS = ("all-digraphs", "digon-free", "tournaments", "regular-tournaments")
GUARDS = {"all-digraphs": 5, "digon-free": 5, "tournaments": 7, "regular-tournaments": 9}


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(cells: list[list[int]], out_mask, in_mask) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {
                v: tuple((_popcount(out_mask[v] & m), _popcount(in_mask[v] & m)) for m in masks)
                for v in cell
            }
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _code(order: list[int], out_mask) -> int:
    code = 0
    for u in order:
        m = out_mask[u]
        for w in order:
            code = (code << 1) | ((m >> w) & 1)
    return code


@lru_cache(maxsize=200_000)
def _canon(n: int, arcs: frozenset) -> tuple[int, tuple[int, ...]]:
    D = Digraph(n, arcs)
    out_mask, in_mask = D.out_mask, D.in_mask
    best: list = [None, None]

    def search(cells: list[list[int]]):
        cells = _refine(cells, out_mask, in_mask)
        if len(cells) == n:
            order = [c[0] for c in cells]
            code = _code(order, out_mask)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    if n == 0:
        return 0, ()
    search([list(range(n))])
    return best[0], tuple(best[1])


def canonical_code(D: Digraph) -> int:
    return _canon(D.n, D.arcs)[0]


def canonical_form(D: Digraph) -> Digraph:
    """The representative of D's isomorphism class (vertex i = i-th in the best order)."""
    _, order = _canon(D.n, D.arcs)
    perm = [0] * D.n
    for new, old in enumerate(order):
        perm[old] = new
    return relabel(D, perm)


def is_isomorphic(D: Digraph, E: Digraph) -> bool:
    return D.n == E.n and len(D.arcs) == len(E.arcs) and canonical_code(D) == canonical_code(E)


def bruteforce_code(D: Digraph) -> int:
    """Minimum code over all n! orderings (oracle for small n)."""
    return min(_code(list(p), D.out_mask) for p in itertools.permutations(range(D.n)))


def automorphism_count(D: Digraph) -> int:
    """|Aut(D)| by checking every permutation (small n only)."""
    arcs = D.arcs
    return sum(
        1
        for p in itertools.permutations(range(D.n))
        if all((p[u], p[v]) in arcs for u, v in arcs)
    )


# ---------------------------------------------------------------------------
# enumeration


def _states(filt: str) -> tuple[tuple[bool, bool], ...]:
    # (arc new->old, arc old->new)
    if filt == "all-digraphs":
        return ((False, False), (True, False), (False, True), (True, True))
    if filt == "digon-free":
        return ((False, False), (True, False), (False, True))
    return ((True, False), (False, True))


def _extensions(D: Digraph, filt: str, cap: int | None) -> Iterator[Digraph]:
    k = D.n
    states = _states(filt)
    outd = [len(x) for x in D.out_adj]
    ind = [len(x) for x in D.in_adj]
    for pattern in itertools.product(states, repeat=k):
        arcs = set(D.arcs)
        if cap is not None:
            new_out = sum(1 for a, _ in pattern if a)
            new_in = sum(1 for _, b in pattern if b)
            if new_out > cap or new_in > cap:
                continue
            ok = True
            for u, (a, b) in enumerate(pattern):
                if ind[u] + a > cap or outd[u] + b > cap:
                    ok = False
                    break
            if not ok:
                continue
        for u, (a, b) in enumerate(pattern):
            if a:
                arcs.add((k, u))
            if b:
                arcs.add((u, k))
        yield Digraph(k + 1, frozenset(arcs))


def enumerate_small(n: int, filt: str = "all-digraphs", max_n: int | None = None) -> list[Digraph]:
    """One canonical representative per isomorphism class, sorted by code.

    Classes on k vertices are grown from the classes on k-1 vertices by
    adding a vertex in every admissible way; the filters are hereditary, so
    nothing is missed. Regular tournaments cap in- and out-degree at
    (n-1)/2 along the way.
    """
    if filt not in FILTERS:
        raise ValueError(f"unknown filter {filt!r}; choose from {FILTERS}")
    guard = GUARDS[filt] if max_n is None else max_n
    if n > guard:
        raise GuardExceeded(f"n={n} exceeds the {filt} guard {guard}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [Digraph(0, frozenset())]
    cap = None
    if filt == "regular-tournaments":
        if n % 2 == 0:
            return []
        cap = (n - 1) // 2
    level = {0: Digraph(1, frozenset())}
    for _ in range(1, n):
        nxt: dict[int, Digraph] = {}
        for D in level.values():
            for E in _extensions(D, filt, cap):
                code = canonical_code(E)
                if code not in nxt:
                    nxt[code] = E
        level = nxt
    reps = [(code, canonical_form(D)) for code, D in level.items()]
    if filt == "regular-tournaments":
        reps = [(c, D) for c, D in reps if all(len(x) == cap for x in D.out_adj)]
    reps.sort(key=lambda t: t[0])
    return [D for _, D in reps]


def enumerate_connected(n: int, filt: str = "all-digraphs") -> list[Digraph]:
    return [D for D in enumerate_small(n, filt) if is_weakly_connected(D)]


def count_labeled_regular_tournaments(n: int) -> int:
    """Number of labelled regular tournaments on n vertices, by backtracking."""
    if n % 2 == 0:
        return 0
    half = (n - 1) // 2
    pairs = list(itertools.combinations(range(n), 2))
    outd = [0] * n
    ind = [0] * n
    def rec(i: int) -> int:
        if i == len(pairs):
            return 1
        u, v = pairs[i]
        total = 0
        for a, b in ((u, v), (v, u)):
            if outd[a] < half and ind[b] < half:
                outd[a] += 1
                ind[b] += 1
                total += rec(i + 1)
                outd[a] -= 1
                ind[b] -= 1
        return total

    return rec(0)
