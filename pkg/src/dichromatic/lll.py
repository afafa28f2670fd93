"""Randomized coloring of digon-free digraphs with resampling of bad events.

Pipeline: trim vertices outside the degree window, color the core uniformly
at random, uncolor every vertex on a monochromatic 2-arc path, measure how
many colors are repeated-and-retained on each out-neighbourhood, resample
around vertices where that count is too small, then finish greedily and put
the trimmed vertices back.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .coloring import (
    ExtensionFailure,
    PartialColoring,
    extend_partial,
    greedy_best,
)
from .digraph import Digraph, degree_profile, find_digons, induced_subdigraph

E11 = math.exp(-11)


class LLLError(ValueError):
    pass


@dataclass(frozen=True)
class LLLParams:
    """Pipeline constants; ``None`` means "derive from Delta~ of the input"."""

    c1: float = 1.0 - E11 / 3
    c2: float = 1.0 + E11 / 3
    palette: int | None = None  # C, default floor(Delta~/2)
    retention: float | None = None  # r, default e^-11 Delta~/2 + 1
    target: int | None = None  # final palette, default floor((1-e^-13) Delta~)
    max_rounds: int = 100
    seed: int = 1

    def __post_init__(self):
        if not 0 < self.c1 <= 1 <= self.c2:
            raise LLLError("need 0 < c1 <= 1 <= c2")
        if self.palette is not None and self.palette < 1:
            raise LLLError("palette must be at least 1")
        if self.retention is not None and self.retention < 0:
            raise LLLError("retention threshold must be nonnegative")
        if self.max_rounds < 1:
            raise LLLError("max_rounds must be at least 1")

    def resolve(self, max_product: int) -> "ResolvedParams":
        dt = math.sqrt(max_product)
        palette = self.palette if self.palette is not None else max(math.floor(dt / 2), 1)
        retention = self.retention if self.retention is not None else E11 * dt / 2 + 1
        target = self.target if self.target is not None else math.floor((1 - math.exp(-13)) * dt)
        return ResolvedParams(self.c1, self.c2, dt, palette, retention, target, self.max_rounds, self.seed)


@dataclass(frozen=True)
class ResolvedParams:
    c1: float
    c2: float
    delta_tilde: float
    palette: int
    retention: float
    target: int
    max_rounds: int
    seed: int


# ---------------------------------------------------------------------------
# trimming


def trim_degree_window(D: Digraph, params: LLLParams = LLLParams()) -> tuple[Digraph, tuple[int, ...], tuple[int, ...]]:
    """Iteratively drop vertices whose residual degrees leave the window
    (c1 Delta~, c2 Delta~), Delta~ taken from D itself.

    Returns (core, core->original id table, removed vertices in removal order).
    """
    dt = degree_profile(D).delta_tilde
    lo, hi = params.c1 * dt, params.c2 * dt
    alive = [True] * D.n
    outd = [len(x) for x in D.out_adj]
    ind = [len(x) for x in D.in_adj]
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in range(D.n):
            if alive[v] and not (lo < outd[v] < hi and lo < ind[v] < hi):
                alive[v] = False
                removed.append(v)
                changed = True
                for w in D.out_adj[v]:
                    ind[w] -= 1
                for w in D.in_adj[v]:
                    outd[w] -= 1
    core, old = induced_subdigraph(D, [v for v in range(D.n) if alive[v]])
    return core, old, tuple(removed)


# ---------------------------------------------------------------------------
# random phase and uncoloring


def random_phase(D: Digraph, C: int, seed: int | np.random.Generator) -> np.ndarray:
    """Independent uniform colors 0..C-1, one draw per vertex in id order."""
    if C < 1:
        raise LLLError("need at least one color")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return rng.integers(0, C, size=D.n)


def mono_degrees(D: Digraph, assignment) -> tuple[list[int], list[int]]:
    """Out- and in-degree in the subdigraph of monochromatic arcs."""
    mout = [0] * D.n
    min_ = [0] * D.n
    a = assignment
    for u, v in D.arcs:
        if a[u] == a[v]:
            mout[u] += 1
            min_[v] += 1
    return mout, min_


def on_mono_two_path(D: Digraph, assignment, v: int, mout=None, min_=None) -> bool:
    if mout is None:
        mout, min_ = mono_degrees(D, assignment)
    c = assignment[v]
    if mout[v] and min_[v]:
        return True
    if any(assignment[w] == c and mout[w] for w in D.out_adj[v]):
        return True
    return any(assignment[w] == c and min_[w] for w in D.in_adj[v])


def uncolor_phase(D: Digraph, assignment) -> PartialColoring:
    """Uncolor exactly the vertices lying on a monochromatic directed path
    with two arcs (as its start, middle or end)."""
    a = [int(x) for x in assignment]
    if len(a) != D.n:
        raise LLLError("assignment must color every vertex")
    mout, min_ = mono_degrees(D, a)
    colors = [None if on_mono_two_path(D, a, v, mout, min_) else a[v] for v in range(D.n)]
    palette = max(a, default=-1) + 1
    return PartialColoring(tuple(colors), max(palette, 1))


# ---------------------------------------------------------------------------
# statistics


@dataclass
class PhaseStats:
    AT: list[int]
    Del: list[int]
    X: list[int]
    # multiplicity[v]: color -> |O_i| for colors present on N+(v)
    multiplicity: list[dict[int, int]] = field(repr=False)
    retention: float = 0.0

    @property
    def min_X(self) -> int:
        return min(self.X, default=0)

    @property
    def mean_X(self) -> float:
        return sum(self.X) / len(self.X) if self.X else 0.0

    def failed(self, threshold: float | None = None) -> list[int]:
        t = self.retention if threshold is None else threshold
        return [v for v, x in enumerate(self.X) if x < t]


def compute_stats(D: Digraph, assignment, partial: PartialColoring, retention: float = 0.0) -> PhaseStats:
    AT, Del, X, mult = [], [], [], []
    colors = partial.colors
    for v in range(D.n):
        groups: dict[int, list[int]] = {}
        for w in D.out_adj[v]:
            groups.setdefault(int(assignment[w]), []).append(w)
        at = dl = x = 0
        for members in groups.values():
            if len(members) >= 2:
                at += 1
                if all(colors[w] is not None for w in members):
                    x += 1
                else:
                    dl += 1
        assert x == at - dl
        AT.append(at)
        Del.append(dl)
        X.append(x)
        mult.append({c: len(m) for c, m in groups.items()})
    return PhaseStats(AT, Del, X, mult, retention)


# ---------------------------------------------------------------------------
# full pipeline


@dataclass
class RoundTrace:
    round: int
    failed: int
    min_X: int
    mean_X: float

    def line(self) -> str:
        return f"round {self.round} failed={self.failed} minX={self.min_X} meanX={self.mean_X:.4f}"


@dataclass
class LLLResult:
    coloring: PartialColoring
    rounds: list[RoundTrace]
    params: ResolvedParams
    trimmed: tuple[int, ...]
    fallback: bool
    fallback_reason: str | None = None
    uncolored_after_phase: int = 0

    def trace_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.rounds)

    def trace_json(self) -> str:
        return json.dumps(
            {
                "params": asdict(self.params),
                "rounds": [asdict(r) for r in self.rounds],
                "trimmed": list(self.trimmed),
                "fallback": self.fallback,
                "fallback_reason": self.fallback_reason,
                "uncolored_after_phase": self.uncolored_after_phase,
                "colors_used": self.coloring.num_colors_used(),
            },
            sort_keys=True,
        )


def resample_scope(D: Digraph, failed: list[int], radius: int = 3) -> list[int]:
    """Vertices within undirected distance ``radius`` of some failed vertex."""
    seen = set(failed)
    frontier = list(failed)
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for w in D.out_adj[v] + D.in_adj[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _reinsert(D: Digraph, colors: list[int | None], removed, palette: int) -> int | None:
    """Put trimmed vertices back, last removed first. Returns a stuck vertex or None."""
    for v in reversed(removed):
        out_used = {colors[w] for w in D.out_adj[v] if colors[w] is not None}
        c = next((i for i in range(palette) if i not in out_used), None)
        if c is None:
            in_used = {colors[w] for w in D.in_adj[v] if colors[w] is not None}
            c = next((i for i in range(palette) if i not in in_used), None)
        if c is None:
            return v
        colors[v] = c
    return None


def lll_color(D: Digraph, params: LLLParams = LLLParams()) -> LLLResult:
    if find_digons(D):
        raise LLLError("the randomized pipeline needs a digon-free digraph")
    prof = degree_profile(D)
    rp = params.resolve(prof.max_product)
    if rp.target < 1:
        raise LLLError(f"palette target {rp.target} < 1 (Delta~ = {rp.delta_tilde:.3f})")

    def fallback(reason: str, rounds, trimmed, uncolored=0) -> LLLResult:
        col = greedy_best(D)
        return LLLResult(col, rounds, rp, trimmed, True, reason, uncolored)

    core, old, removed = trim_degree_window(D, params)
    rng = np.random.default_rng(rp.seed)
    assignment = random_phase(core, rp.palette, rng)
    rounds: list[RoundTrace] = []
    ok = False
    for k in range(1, rp.max_rounds + 1):
        partial = uncolor_phase(core, assignment)
        stats = compute_stats(core, assignment, partial, rp.retention)
        failed = stats.failed()
        rounds.append(RoundTrace(k, len(failed), stats.min_X, stats.mean_X))
        if not failed:
            ok = True
            break
        scope = resample_scope(core, failed)
        fresh = rng.integers(0, rp.palette, size=len(scope))
        for v, c in zip(scope, fresh):
            assignment[v] = c
    uncolored = len(partial.uncolored())
    if not ok:
        return fallback("round cap reached with failing vertices", rounds, removed, uncolored)

    palette = max(rp.target, rp.palette)
    core_partial = PartialColoring(partial.colors, palette)
    try:
        core_col = extend_partial(core, core_partial)
    except ExtensionFailure as exc:
        return fallback(f"extension stuck at core vertex {old[exc.vertex]}", rounds, removed, uncolored)

    colors: list[int | None] = [None] * D.n
    for i, c in enumerate(core_col.colors):
        colors[old[i]] = c
    stuck = _reinsert(D, colors, removed, palette)
    if stuck is not None:
        return fallback(f"reinsertion stuck at vertex {stuck}", rounds, removed, uncolored)
    return LLLResult(PartialColoring(tuple(colors), palette), rounds, rp, removed, False, None, uncolored)
