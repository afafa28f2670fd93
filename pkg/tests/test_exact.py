import pytest
from hypothesis import given, strategies as st

from dichromatic.coloring import is_valid
from dichromatic.digraph import Digraph, bidirected, mask_is_acyclic
from dichromatic.exact import (
    GuardExceeded,
    ListAssignment,
    ResourceLimit,
    SolveLimits,
    brute_force_chi,
    brute_force_list_colorable,
    chromatic_number,
    closes_cycle,
    is_k_colorable,
    list_colorable,
)
from dichromatic.generators import (
    bidirected_complete,
    bidirected_cycle,
    directed_cycle,
    directed_path,
    gen_fano,
    gen_random_digraph,
)
from strategies import digraphs

K3 = bidirected(3, [(0, 1), (1, 2), (0, 2)])


def test_k4_not_3_colorable():
    assert is_k_colorable(bidirected_complete(4), 3) is None


def test_c9_two_colorable():
    col = is_k_colorable(directed_cycle(9), 2)
    assert col is not None and is_valid(directed_cycle(9), col)


def test_fano_not_2_colorable():
    assert is_k_colorable(gen_fano(), 2) is None


@pytest.mark.parametrize(
    "D, chi",
    [
        (bidirected_cycle(7), 3),
        (directed_cycle(2), 2),
        (gen_fano(), 3),
        (directed_path(5), 1),
        (Digraph(0, frozenset()), 0),
    ],
)
def test_chromatic_number_examples(D, chi):
    k, col = chromatic_number(D)
    assert k == chi
    assert is_valid(D, col) and col.num_colors_used() == chi


@pytest.mark.parametrize("D, chi", [(directed_cycle(4), 2), (bidirected_complete(5), 5), (directed_path(4), 1)])
def test_brute_force_examples(D, chi):
    assert brute_force_chi(D) == chi


def test_brute_force_guard():
    with pytest.raises(GuardExceeded):
        brute_force_chi(directed_cycle(9))


@given(digraphs(max_n=6))
def test_oracle_equivalence(D):
    k, col = chromatic_number(D)
    assert k == brute_force_chi(D)
    assert is_valid(D, col)


@given(digraphs(max_n=7))
def test_monotone_in_k(D):
    k, _ = chromatic_number(D)
    if k >= 2:
        assert is_k_colorable(D, k - 1) is None
    assert is_k_colorable(D, k + 1) is not None


@given(digraphs(min_n=1, max_n=7), st.data())
def test_closes_cycle_matches_definition(D, data):
    members = data.draw(st.sets(st.integers(0, D.n - 1)))
    cls = sum(1 << u for u in members)
    outside = sorted(set(range(D.n)) - members)
    if not outside or not mask_is_acyclic(D, cls):
        return
    v = data.draw(st.sampled_from(outside))
    assert closes_cycle(D, v, cls) == (not mask_is_acyclic(D, cls | 1 << v))


def test_node_budget_is_reported():
    D = gen_random_digraph(12, 0.5, 3)
    with pytest.raises(ResourceLimit):
        chromatic_number(D, SolveLimits(max_nodes=5))


def test_limits_must_be_positive():
    with pytest.raises(ValueError):
        SolveLimits(max_nodes=0)


# --- lists -----------------------------------------------------------------


def test_list_c3_all_zero():
    assert list_colorable(directed_cycle(3), ListAssignment.of([[0], [0], [0]])) is None


def test_list_c3_forced():
    col = list_colorable(directed_cycle(3), ListAssignment.of([[0], [0], [1]]))
    assert col.colors == (0, 0, 1)


def test_list_k3_two_colors():
    L = ListAssignment.uniform(3, 2)
    assert list_colorable(K3, L) is None
    assert not brute_force_list_colorable(K3, L)


def test_list_assignment_invariants():
    with pytest.raises(ValueError):
        ListAssignment.of([[0], []])
    with pytest.raises(ValueError):
        ListAssignment.of([[0, 5]], universe=3)


@st.composite
def digraph_with_lists(draw):
    D = draw(digraphs(min_n=1, max_n=5))
    universe = draw(st.integers(1, 4))
    lists = [
        draw(st.lists(st.integers(0, universe - 1), min_size=1, max_size=universe, unique=True))
        for _ in range(D.n)
    ]
    return D, ListAssignment.of(lists, universe)


@given(digraph_with_lists())
def test_list_colorable_matches_brute_force(pair):
    D, L = pair
    col = list_colorable(D, L)
    assert (col is not None) == brute_force_list_colorable(D, L)
    if col is not None:
        assert is_valid(D, col)
        assert all(c in L.lists[v] for v, c in enumerate(col.colors))
