import itertools

import pytest
from hypothesis import given, strategies as st

from dichromatic.digraph import Digraph, bidirected, blocks, relabel
from dichromatic.exact import GuardExceeded, ListAssignment, brute_force_list_colorable, list_colorable
from dichromatic.generators import (
    bidirected_complete,
    bidirected_cycle,
    chorded_cycle,
    directed_cycle,
    gen_fano,
    shared_triangles,
)
from dichromatic.structure import (
    BIDIRECTED_COMPLETE,
    DIGON,
    DIRECTED_CYCLE,
    ODD_BIDIRECTED_CYCLE,
    OTHER,
    BlockClass,
    brooks_obstruction,
    canonical_list_assignments,
    choosable_bound_check,
    classify_block,
    classify_digraph,
    format_lists,
    gallai_candidate,
    list_brooks_bound,
    parse_lists,
    required_list_sizes,
)
from strategies import digraphs


def _only_block(D):
    (b,) = blocks(D)
    return classify_block(D, b)


@pytest.mark.parametrize(
    "D, expected",
    [
        (directed_cycle(5), BlockClass(DIRECTED_CYCLE, 5)),
        (bidirected_cycle(5), BlockClass(ODD_BIDIRECTED_CYCLE, 5)),
        (bidirected_cycle(4), BlockClass(OTHER, 4)),
        (bidirected_complete(4), BlockClass(BIDIRECTED_COMPLETE, 4)),
        (directed_cycle(2), BlockClass(DIGON, 2)),
        (bidirected_complete(3), BlockClass(ODD_BIDIRECTED_CYCLE, 3)),
        (gen_fano(), BlockClass(OTHER, 7)),
    ],
)
def test_classify_examples(D, expected):
    assert _only_block(D) == expected


def test_bridge_is_other():
    D = Digraph(2, frozenset([(0, 1)]))
    assert _only_block(D).kind == OTHER


def test_shared_triangles_blocks():
    D = shared_triangles()
    assert [classify_block(D, b) for b in blocks(D)] == [BlockClass(DIRECTED_CYCLE, 3)] * 2


def test_classify_rejects_foreign_block():
    (b,) = blocks(directed_cycle(3))
    with pytest.raises(ValueError):
        classify_block(bidirected_cycle(5), b)


@given(digraphs(min_n=1, max_n=6), st.permutations(range(6)))
def test_classification_is_isomorphism_invariant(D, perm):
    p = [x for x in perm if x < D.n]
    assert classify_digraph(D) == classify_digraph(relabel(D, p))


# --- critical obstructions -------------------------------------------------


def test_obstruction_examples():
    assert brooks_obstruction(directed_cycle(6), 2)
    assert brooks_obstruction(bidirected_cycle(5), 3)
    assert brooks_obstruction(bidirected_complete(5), 5)
    assert not brooks_obstruction(gen_fano(), 3)
    assert not brooks_obstruction(bidirected_cycle(4), 3)
    with pytest.raises(ValueError):
        brooks_obstruction(directed_cycle(3), 1)


# --- list structure --------------------------------------------------------


def test_required_sizes_chorded_cycle():
    # vertex 0: out 2, in 1; vertex 2: out 1, in 2
    assert required_list_sizes(chorded_cycle(4)) == [2, 1, 2, 1]


def test_gallai_directed_cycle_singletons():
    rep = gallai_candidate(directed_cycle(5), ListAssignment.of([[0]] * 5))
    assert rep.hypothesis_ok and rep.eulerian and rep.lists_tight and rep.candidate


def test_gallai_chorded_cycle_singletons_fail_hypothesis():
    rep = gallai_candidate(chorded_cycle(4), ListAssignment.of([[0]] * 4))
    assert not rep.hypothesis_ok


def test_gallai_k4_equal_lists():
    D = bidirected_complete(4)
    L = ListAssignment.uniform(4, 3)
    rep = gallai_candidate(D, L)
    assert rep.candidate
    assert list_colorable(D, L) is None and not brute_force_list_colorable(D, L)


def test_gallai_requires_connected():
    with pytest.raises(ValueError):
        gallai_candidate(Digraph(2, frozenset()), ListAssignment.of([[0], [0]]))


def test_gallai_fano_not_candidate():
    rep = gallai_candidate(gen_fano(), ListAssignment.uniform(7, 3))
    assert rep.hypothesis_ok and not rep.candidate
    assert list_colorable(gen_fano(), ListAssignment.uniform(7, 3)) is not None


# --- choosability ----------------------------------------------------------


def test_canonical_lists_cover_all_patterns_up_to_renaming():
    # two vertices with 1-lists from 3 colors: same color or different
    got = [L.lists for L in canonical_list_assignments([1, 1], 3)]
    assert got == [(frozenset({0}), frozenset({0})), (frozenset({0}), frozenset({1}))]


def _orbit_key(lists, universe):
    return min(
        tuple(tuple(sorted(perm[c] for c in L)) for L in lists)
        for perm in itertools.permutations(range(universe))
    )


@pytest.mark.parametrize("sizes, universe", [([2, 2], 4), ([2, 1, 2], 3), ([1, 2, 2], 4)])
def test_canonical_lists_meet_every_renaming_orbit(sizes, universe):
    produced = {_orbit_key(L.lists, universe) for L in canonical_list_assignments(sizes, universe)}
    every = {
        _orbit_key(lists, universe)
        for lists in itertools.product(*(itertools.combinations(range(universe), s) for s in sizes))
    }
    assert produced == every


def test_shared_triangles_two_choosable():
    assert choosable_bound_check(shared_triangles(), 2).choosable


def test_chorded_cycle_two_choosable():
    assert choosable_bound_check(chorded_cycle(4), 2).choosable


def test_triangle_not_one_choosable():
    v = choosable_bound_check(directed_cycle(3), 1)
    assert not v.choosable
    assert v.counterexample.lists == (frozenset({0}),) * 3


def test_choosable_guard():
    with pytest.raises(GuardExceeded):
        choosable_bound_check(directed_cycle(7), 2)


def test_list_brooks_bound():
    assert list_brooks_bound(shared_triangles()) == 2
    assert list_brooks_bound(directed_cycle(4)) is None
    assert list_brooks_bound(bidirected_cycle(5)) is None
    assert list_brooks_bound(gen_fano()) == 3


# --- list file format ------------------------------------------------------


def test_lists_roundtrip():
    L = ListAssignment.of([[0, 2], [1], [0, 1, 2]])
    assert parse_lists(format_lists(L), 3).lists == L.lists


@pytest.mark.parametrize("text", ["0 1 2\n1: 0\n", "0: 1\n0: 2\n", "0: 1\n5: 2\n", "0: x\n1: 0\n", "0: 1\n"])
def test_lists_errors(text):
    with pytest.raises(ValueError):
        parse_lists(text, 2)


def test_bidirected_helper_symmetry():
    D = bidirected(3, [(0, 1)])
    assert D.arcs == {(0, 1), (1, 0)}
