"""Shared hypothesis strategies and brute-force helpers."""
import itertools

from hypothesis import strategies as st

from dichromatic.digraph import Digraph

@st.composite
def digraphs(draw, min_n=0, max_n=7, digon_free=False):
    n = draw(st.integers(min_n, max_n))
    arcs = set()
    for u, v in itertools.combinations(range(n), 2):
        if digon_free:
            choice = draw(st.sampled_from(["none", "fwd", "back"]))
            if choice == "fwd":
                arcs.add((u, v))
            elif choice == "back":
                arcs.add((v, u))
        else:
            if draw(st.booleans()):
                arcs.add((u, v))
            if draw(st.booleans()):
                arcs.add((v, u))
    return Digraph(n, frozenset(arcs))


def has_cycle_bruteforce(D: Digraph, S) -> bool:
    """Brute force: does D[S] contain a directed cycle? Tries every cyclic sequence."""
    S = sorted(S)
    for k in range(2, len(S) + 1):
        for combo in itertools.combinations(S, k):
            first = combo[0]
            for rest in itertools.permutations(combo[1:]):
                seq = (first,) + rest
                if all((seq[i], seq[(i + 1) % k]) in D.arcs for i in range(k)):
                    return True
    return False
