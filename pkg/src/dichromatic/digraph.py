"""Simple loopless digraphs on vertices 0..n-1 and their basic structure."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Arc = tuple[int, int]


class DigraphError(ValueError):
    """Invalid digraph data (loop, duplicate arc, bad vertex id)."""


class ParseError(DigraphError):
    """Malformed digraph text. ``kind`` tells which rule was broken."""

    def __init__(self, kind: str, lineno: int | None, message: str):
        self.kind = kind
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[Arc]

    def __post_init__(self):
        if self.n < 0:
            raise DigraphError("negative vertex count")
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DigraphError(f"arc ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> "Digraph":
        arcs = [(int(u), int(v)) for u, v in arcs]
        s = frozenset(arcs)
        if len(s) != len(arcs):
            raise DigraphError("duplicate arc")
        return cls(n, s)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return tuple(tuple(sorted(x)) for x in inn)

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.out_adj)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.in_adj)

    @cached_property
    def sorted_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.arcs))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def neighbors(self, v: int) -> set[int]:
        return set(self.out_adj[v]) | set(self.in_adj[v])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.sorted_arcs)})"


# ---------------------------------------------------------------------------
# text format


def parse_digraph(text: str | bytes) -> Digraph:
    """Parse the ``n m`` / ``u v`` text format.

    Lines starting with ``#`` are comments. Raises ParseError whose ``kind``
    is one of ``header``, ``arc``, ``count``, ``range``, ``loop``, ``duplicate``.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.split("\n"))
        if line.strip() and not line.startswith("#")
    ]
    if not lines:
        raise ParseError("header", None, "missing header line 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError("header", lineno, f"malformed header {header!r}")
    n, m = int(parts[0]), int(parts[1])
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else lineno
        raise ParseError("count", where, f"header declares {m} arcs, found {len(body)}")
    seen: set[Arc] = set()
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise ParseError("arc", lineno, f"malformed arc line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError("range", lineno, f"vertex out of range in {line!r} (n={n})")
        if u == v:
            raise ParseError("loop", lineno, f"loop arc {line!r}")
        if (u, v) in seen:
            raise ParseError("duplicate", lineno, f"duplicate arc {line!r}")
        seen.add((u, v))
    return Digraph(n, frozenset(seen))


def format_digraph(D: Digraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{D.n} {len(D.arcs)}")
    out.extend(f"{u} {v}" for u, v in D.sorted_arcs)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# degrees


def ceil_sqrt_product(a: int, b: int) -> int:
    """Exact ceil(sqrt(a*b)) for nonnegative integers."""
    p = a * b
    r = math.isqrt(p)
    return r if r * r == p else r + 1


@dataclass(frozen=True)
class DegreeProfile:
    out_deg: tuple[int, ...]
    in_deg: tuple[int, ...]
    delta_o: int
    delta_i: int
    # max over vertices of d+ * d-; delta_tilde is its square root
    max_product: int

    @property
    def delta_tilde(self) -> float:
        return math.sqrt(self.max_product)

    @property
    def ceil_delta_tilde(self) -> int:
        r = math.isqrt(self.max_product)
        return r if r * r == self.max_product else r + 1

    def delta_tilde_exceeds(self, k: int) -> bool:
        """Exact test delta_tilde > k."""
        return self.max_product > k * k


def degree_profile(D: Digraph) -> DegreeProfile:
    out_deg = tuple(len(x) for x in D.out_adj)
    in_deg = tuple(len(x) for x in D.in_adj)
    return DegreeProfile(
        out_deg=out_deg,
        in_deg=in_deg,
        delta_o=max(out_deg, default=0),
        delta_i=max(in_deg, default=0),
        max_product=max((a * b for a, b in zip(out_deg, in_deg)), default=0),
    )


def is_eulerian(D: Digraph) -> tuple[bool, tuple[bool, ...]]:
    flags = tuple(len(o) == len(i) for o, i in zip(D.out_adj, D.in_adj))
    return all(flags), flags


def find_digons(D: Digraph) -> set[frozenset[int]]:
    return {frozenset((u, v)) for u, v in D.arcs if u < v and (v, u) in D.arcs}


# ---------------------------------------------------------------------------
# acyclicity


@dataclass(frozen=True)
class CycleWitness:
    cycle: tuple[int, ...]


def _check_subset(D: Digraph, S: Iterable[int]) -> list[int]:
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < D.n:
            raise DigraphError(f"vertex {v} out of range for n={D.n}")
    return verts


def is_acyclic_subset(D: Digraph, S: Iterable[int]) -> CycleWitness | None:
    """None if D[S] is acyclic, else a witness directed cycle.

    Vertices of in-degree 0 in D[S] are peeled off repeatedly; whatever
    survives contains a cycle, which is traced by walking backwards.
    """
    verts = _check_subset(D, S)
    inside = set(verts)
    indeg = {v: sum(1 for u in D.in_adj[v] if u in inside) for v in verts}
    queue = deque(v for v in verts if indeg[v] == 0)
    alive = set(verts)
    while queue:
        v = queue.popleft()
        alive.discard(v)
        for w in D.out_adj[v]:
            if w in alive:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
    if not alive:
        return None
    # every survivor has an in-neighbour among the survivors
    v = min(alive)
    pos: dict[int, int] = {}
    walk: list[int] = []
    while v not in pos:
        pos[v] = len(walk)
        walk.append(v)
        v = next(u for u in D.in_adj[v] if u in alive)
    cyc = walk[pos[v]:]
    cyc.reverse()
    # rotate so the smallest vertex leads
    i = cyc.index(min(cyc))
    return CycleWitness(tuple(cyc[i:] + cyc[:i]))


def is_acyclic(D: Digraph) -> bool:
    return is_acyclic_subset(D, range(D.n)) is None


def mask_is_acyclic(D: Digraph, mask: int) -> bool:
    """Bitmask version of the in-degree peeling test, for small solvers."""
    alive = mask
    out_mask = D.out_mask
    in_mask = D.in_mask
    changed = True
    while alive and changed:
        changed = False
        m = alive
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if not (in_mask[v] & alive) or not (out_mask[v] & alive):
                alive ^= low
                changed = True
    return alive == 0


# ---------------------------------------------------------------------------
# subdigraphs and connectivity


def induced_subdigraph(D: Digraph, S: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """D[S] relabelled to 0..|S|-1 (ascending order), with new->old table."""
    verts = _check_subset(D, S)
    new_id = {v: i for i, v in enumerate(verts)}
    arcs = frozenset(
        (new_id[u], new_id[v]) for u, v in D.arcs if u in new_id and v in new_id
    )
    return Digraph(len(verts), arcs), tuple(verts)


def weak_components(D: Digraph) -> list[list[int]]:
    seen = [False] * D.n
    comps = []
    for s in range(D.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in D.out_adj[v] + D.in_adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_weakly_connected(D: Digraph) -> bool:
    return D.n <= 1 or len(weak_components(D)) == 1


def undirected_distances(D: Digraph, source: int, radius: int | None = None) -> dict[int, int]:
    """BFS distances from ``source`` in the underlying undirected graph."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if radius is not None and d >= radius:
            continue
        for w in D.out_adj[v] + D.in_adj[v]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]
    parent: Digraph = field(repr=False, compare=False)

    def subdigraph(self) -> tuple[Digraph, tuple[int, ...]]:
        """The block as its own digraph (induced on its vertices)."""
        verts = self.vertices
        new_id = {v: i for i, v in enumerate(verts)}
        sub = Digraph(len(verts), frozenset((new_id[u], new_id[v]) for u, v in self.arcs))
        return sub, verts


def blocks(D: Digraph) -> list[Block]:
    """Blocks of the underlying multigraph, one edge per arc.

    A digon contributes two parallel edges and therefore forms (or lies
    inside) a 2-connected block. Isolated vertices are not blocks. Output
    is ordered by smallest vertex, then by arc list.
    """
    arcs = D.sorted_arcs
    incident: list[list[tuple[int, int]]] = [[] for _ in range(D.n)]
    for eid, (u, v) in enumerate(arcs):
        incident[u].append((v, eid))
        incident[v].append((u, eid))

    disc = [-1] * D.n
    low = [0] * D.n
    timer = 0
    edge_stack: list[int] = []
    found: list[list[int]] = []

    for root in range(D.n):
        if disc[root] != -1 or not incident[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, edge id used to enter, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, via, i = stack[-1]
            if i < len(incident[v]):
                stack[-1] = (v, via, i + 1)
                w, eid = incident[v][i]
                if eid == via:
                    continue
                if disc[w] == -1:
                    edge_stack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(eid)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == via:
                            break
                    found.append(comp)

    result = []
    for comp in found:
        barcs = tuple(sorted(arcs[e] for e in comp))
        verts = tuple(sorted({x for a in barcs for x in a}))
        result.append(Block(verts, barcs, D))
    result.sort(key=lambda b: (b.vertices, b.arcs))
    return result


def cut_vertices(D: Digraph) -> set[int]:
    count: dict[int, int] = {}
    for b in blocks(D):
        for v in b.vertices:
            count[v] = count.get(v, 0) + 1
    return {v for v, c in count.items() if c > 1}


def bidirected(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    """D(G): each undirected edge becomes a digon."""
    arcs = set()
    for u, v in edges:
        arcs.add((u, v))
        arcs.add((v, u))
    return Digraph(n, frozenset(arcs))


def reverse(D: Digraph) -> Digraph:
    return Digraph(D.n, frozenset((v, u) for u, v in D.arcs))


def relabel(D: Digraph, perm: Sequence[int]) -> Digraph:
    """Vertex v becomes perm[v]."""
    return Digraph(D.n, frozenset((perm[u], perm[v]) for u, v in D.arcs))
