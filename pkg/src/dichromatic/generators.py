"""Named constructions and seeded random instances."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .digraph import Digraph, bidirected

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


class GeneratorError(ValueError):
    pass


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise GeneratorError("directed cycle needs n >= 2")
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def directed_path(n: int) -> Digraph:
    if n < 1:
        raise GeneratorError("path needs n >= 1")
    return Digraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def bidirected_cycle(n: int) -> Digraph:
    if n < 3:
        raise GeneratorError("bidirected cycle needs n >= 3")
    return bidirected(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected_complete(k: int) -> Digraph:
    if k < 1:
        raise GeneratorError("bidirected complete digraph needs k >= 1")
    return bidirected(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def chorded_cycle(n: int = 4) -> Digraph:
    """Directed C_n plus the chord 0 -> 2."""
    if n < 4:
        raise GeneratorError("chorded cycle needs n >= 4")
    arcs = {(i, (i + 1) % n) for i in range(n)}
    arcs.add((0, 2))
    return Digraph(n, frozenset(arcs))


def shared_triangles() -> Digraph:
    """Directed triangles (0,1,2) and (0,3,4) sharing vertex 0."""
    return Digraph(5, frozenset([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]))


BASIC_FAMILIES = {
    "directed_cycle": directed_cycle,
    "bidirected_cycle": bidirected_cycle,
    "bidirected_complete": bidirected_complete,
    "chorded_cycle": chorded_cycle,
    "shared_triangles": shared_triangles,
}


def gen_basic(family: str, *params: int) -> Digraph:
    try:
        fn = BASIC_FAMILIES[family]
    except KeyError:
        raise GeneratorError(f"unknown family {family!r}") from None
    return fn(*params)


def gen_fano(orientation: Sequence[int] | int = 0) -> Digraph:
    """Orient every Fano line as a directed triangle.

    Bit i (or ``orientation[i]``) set reverses line i, so (a, b, c) becomes
    a->c->b->a instead of a->b->c->a.
    """
    if isinstance(orientation, int):
        if not 0 <= orientation < 128:
            raise GeneratorError("orientation mask must be in 0..127")
        bits = [(orientation >> i) & 1 for i in range(7)]
    else:
        bits = list(orientation)
        if len(bits) != 7:
            raise GeneratorError("need one orientation bit per line")
    arcs = set()
    for (a, b, c), flip in zip(FANO_LINES, bits):
        if flip:
            b, c = c, b
        arcs.update([(a, b), (b, c), (c, a)])
    return Digraph(7, frozenset(arcs))


def gen_random_tournament(n: int, seed: int) -> Digraph:
    """Orient each pair (i < j), in lexicographic order, by a fair coin."""
    if n < 1:
        raise GeneratorError("n must be positive")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    coins = rng.integers(0, 2, size=len(pairs))
    return Digraph(n, frozenset((i, j) if c else (j, i) for (i, j), c in zip(pairs, coins)))


def gen_random_digraph(n: int, p: float, seed: int, digon_free: bool = False) -> Digraph:
    """Each ordered pair independently an arc with probability p.

    With ``digon_free`` each unordered pair gets at most one arc: present
    with probability p, then a fair coin picks the direction.
    """
    rng = np.random.default_rng(seed)
    arcs = set()
    if digon_free:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    arcs.add((i, j) if rng.random() < 0.5 else (j, i))
    else:
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < p:
                    arcs.add((i, j))
    return Digraph(n, frozenset(arcs))


class RetryBudgetExhausted(GeneratorError):
    pass


def _place_layer(n: int, forbidden: list[set[int]], rng, max_steps: int) -> list[int] | None:
    """A permutation avoiding ``forbidden`` and with no 2-cycles, or None.

    Min-conflicts local search over transpositions of images, starting
    from a uniform random permutation.
    """
    sigma = [int(x) for x in rng.permutation(n)]
    inv = [0] * n
    for v, w in enumerate(sigma):
        inv[w] = v

    def bad(v: int) -> bool:
        w = sigma[v]
        return w in forbidden[v] or sigma[w] == v

    conflicts = {v for v in range(n) if bad(v)}
    steps = 0
    while conflicts:
        steps += 1
        if steps > max_steps:
            return None
        i = min(conflicts) if steps % 7 else int(rng.choice(sorted(conflicts)))
        j = int(rng.integers(n))
        if j == i:
            continue
        touched = {i, j, inv[i], inv[j]}
        before = sum(bad(x) for x in touched)
        a, b = sigma[i], sigma[j]
        sigma[i], sigma[j] = b, a
        inv[a], inv[b] = j, i
        touched |= {inv[i], inv[j]}
        after = sum(bad(x) for x in touched)
        if after > before and rng.random() > 0.05:
            sigma[i], sigma[j] = a, b
            inv[a], inv[b] = i, j
            continue
        for x in touched:
            if bad(x):
                conflicts.add(x)
            else:
                conflicts.discard(x)
    return sigma


def gen_random_regular_digonfree(n: int, delta: int, seed: int, max_retries: int = 50) -> Digraph:
    """Superpose ``delta`` random permutation digraphs v -> sigma(v).

    A permutation that would add a loop, a repeated arc or a digon is
    resampled locally (transpositions of images) until it fits; a layer
    that cannot be placed restarts the whole construction, at most
    ``max_retries`` times.
    """
    if delta < 0:
        raise GeneratorError("delta must be nonnegative")
    if not 2 * delta < n:
        raise GeneratorError(f"need delta < n/2, got n={n}, delta={delta}")
    rng = np.random.default_rng(seed)
    for _attempt in range(max_retries):
        # forbidden[v]: heads v may not point to (itself, current neighbours)
        forbidden = [{v} for v in range(n)]
        arcs: set[tuple[int, int]] = set()
        for _ in range(delta):
            sigma = _place_layer(n, forbidden, rng, max_steps=200 * n)
            if sigma is None:
                break
            for v, w in enumerate(sigma):
                arcs.add((v, w))
                forbidden[v].add(w)
                forbidden[w].add(v)
        else:
            return Digraph(n, frozenset(arcs))
    raise RetryBudgetExhausted(f"no digon-free {delta}-regular digraph on {n} vertices after {max_retries} restarts")


def gen_rotational_tournament(n: int, residues) -> Digraph:
    """Arc i -> j iff (j - i) mod n lies in ``residues``."""
    res = set(residues)
    if n < 1 or n % 2 == 0:
        raise GeneratorError("rotational tournaments need odd n")
    if len(res) != (n - 1) // 2 or any(not 1 <= r < n for r in res):
        raise GeneratorError(f"need (n-1)/2 residues in 1..n-1, got {sorted(res)}")
    for r in res:
        if (n - r) in res:
            raise GeneratorError(f"residues {r} and {n - r} both present")
    return Digraph(n, frozenset((i, (i + r) % n) for i in range(n) for r in res))


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: tuple[int, ...] = ()
    seed: int = 1
    extra: dict = field(default_factory=dict, compare=False)

    def build(self) -> Digraph:
        f = self.family
        if f in BASIC_FAMILIES:
            return gen_basic(f, *self.params)
        if f == "fano":
            return gen_fano(self.params[0] if self.params else 0)
        if f == "tournament":
            return gen_random_tournament(self.params[0], self.seed)
        if f == "regular":
            n, delta = self.params
            return gen_random_regular_digonfree(n, delta, self.seed)
        if f == "rotational":
            n, *res = self.params
            return gen_rotational_tournament(n, res)
        raise GeneratorError(f"unknown family {f!r}")
