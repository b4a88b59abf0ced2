import random

import pytest
from hypothesis import given

from blockset import oracle
from blockset.core import Graph, to_mask
from blockset.generators import random_graph
from blockset.search import BranchStats, SearchTimeout, deadline_after
from blockset.treewidth import (FORGET, INTRODUCE, LEAF, BagLimitExceeded, Criticality,
                                PiInstance, TreeDecomposition, alpha_xz, bag_limit_from_env,
                                check_instance, classify_criticality, compute_td_small,
                                elimination_ordering, is_xz_blocking, make_nice, mmbs_tw,
                                solve_pi, tchack_check, treewidth, validate_nice, validate_td)
from blockset.treewidth import dp as dpmod
from helpers import BruteNode, join_witness_pairs, nice_of, node_lemma_trials, random_state
from strategies import graphs

K2 = Graph(2, [(0, 1)])
K3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
K4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
P3 = Graph(3, [(0, 1), (1, 2)])
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


# ---------------------------------------------------------------- decompositions

def test_validate_td_examples():
    path = TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)])
    assert validate_td(P3, path)
    assert not validate_td(K3, path)
    assert not validate_td(P3, TreeDecomposition([{0, 1}, {1, 2}], []))


def test_validate_td_checks_connectivity_and_width():
    broken = TreeDecomposition([{0, 1}, {1, 2}, {0}], [(0, 1), (1, 2)])
    assert not validate_td(P3, broken)
    assert not validate_td(P3, TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)], declared_width=0))
    with pytest.raises(ValueError):
        validate_td(P3, TreeDecomposition([{0, 5}], []))


def test_make_nice_single_bag():
    G = Graph(1)
    nice = make_nice(G, TreeDecomposition([{0}], []))
    kinds = [nice.nodes[i].kind for i in nice.postorder()]
    assert kinds == [LEAF, INTRODUCE, FORGET]
    assert nice.nodes[nice.root].bag == 0
    assert validate_nice(G, nice)


def test_make_nice_path():
    nice = make_nice(P3, TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)]))
    assert nice.width == 1 and validate_nice(P3, nice)
    with pytest.raises(ValueError):
        make_nice(K3, TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)]))


@given(graphs(max_n=9))
def test_compute_td_small_is_exact_and_nice(G):
    w = treewidth(G)
    D = compute_td_small(G, G.n)
    assert validate_td(G, D) and D.width == w
    assert compute_td_small(G, w - 1) is None if w > 0 else True
    for root in range(len(D.bags)):
        assert validate_nice(G, make_nice(G, D, root))


def test_compute_td_small_examples():
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    D = compute_td_small(tree, 1)
    assert D is not None and D.width == 1 and validate_td(tree, D)
    assert compute_td_small(K4, 2) is None
    D = compute_td_small(C4, 2)
    assert validate_td(C4, D) and D.width == 2
    assert elimination_ordering(K4, 3) is not None


def test_compute_td_small_capacity():
    from blockset.core import CapacityError
    with pytest.raises(CapacityError):
        compute_td_small(Graph(17), 3)


# ---------------------------------------------------------------- (X,Z) arithmetic

def test_alpha_xz_examples():
    assert alpha_xz(P3, {0}, {0}) == 2
    assert alpha_xz(P3, {0}, set()) == 1
    for G in (P3, C4, K3):
        assert alpha_xz(G, set(), set()) == oracle.enumerate_max_independent_sets(G).alpha
    assert alpha_xz(P3, {0}, {0}, avoid={0}) == dpmod.NEG_INF
    with pytest.raises(ValueError):
        alpha_xz(P3, {0}, {1})


def test_is_xz_blocking_examples():
    assert is_xz_blocking(P3, set(), set(), {0})
    assert is_xz_blocking(P3, {0, 1}, {0}, {0, 2})
    assert not is_xz_blocking(C4, set(), set(), {0})


def test_criticality_examples():
    assert classify_criticality(P3, set(), set(), 1) is Criticality.V_BAR_CRITICAL
    assert classify_criticality(P3, set(), set(), 0) is Criticality.V_CRITICAL
    assert classify_criticality(C4, set(), set(), 0) is Criticality.V_MIXED


# ---------------------------------------------------------------- states and the DP

def test_tchack_root_examples():
    nice = nice_of(K2)
    root = PiInstance.root(nice)
    assert tchack_check(K2, nice, root, {0, 1})
    assert not tchack_check(K2, nice, root, {0})


def test_tchack_requires_bag_trace():
    nice = nice_of(C4)
    node = next(i for i, nd in enumerate(nice.nodes) if nd.bag.bit_count() >= 2)
    bag = nice.nodes[node].bag
    v = (bag & -bag).bit_length() - 1
    inst = PiInstance.make(node, y0=[v], l2=[[v]], f={v: [v]})
    assert not tchack_check(C4, nice, inst, set())


def test_state_round_trip_and_validation():
    nice = nice_of(C4)
    inst = PiInstance.root(nice)
    assert PiInstance.from_key(inst.key()) == inst
    assert inst.to_dict()["l1"] == [[]]
    node = next(i for i, nd in enumerate(nice.nodes) if nd.bag)
    with pytest.raises(ValueError):
        check_instance(C4, nice, PiInstance.make(node, y0=[v for v in range(4)
                                                           if nice.nodes[node].bag >> v & 1]))


def test_solve_pi_single_vertex():
    G = Graph(1)
    nice = make_nice(G, TreeDecomposition([{0}], []))
    assert solve_pi(G, nice, PiInstance.root(nice)) == {0}
    assert mmbs_tw(G, nice) == (1, frozenset({0}))


@pytest.mark.parametrize("G,value", [(K2, 2), (P3, 1), (C4, 2), (K3, 3)])
def test_mmbs_tw_examples(G, value):
    v, cert = mmbs_tw(G, nice_of(G))
    assert v == value and oracle.is_minimal_blocking_set(G, cert)


def test_join_enumeration_count():
    key = (0, 0, frozenset({0, 1}), frozenset({2}), (), frozenset())
    assert sum(1 for _ in join_witness_pairs(key, 1, 2)) == 27


def test_bag_limit_guard(monkeypatch):
    nice = nice_of(K4)
    with pytest.raises(BagLimitExceeded) as exc:
        mmbs_tw(K4, nice, bag_limit=3)
    assert "width too large" in str(exc.value)
    monkeypatch.setenv("BLOCKSET_BAG_LIMIT", "2")
    assert bag_limit_from_env() == 2
    with pytest.raises(BagLimitExceeded):
        mmbs_tw(K4, nice)
    monkeypatch.delenv("BLOCKSET_BAG_LIMIT")
    assert mmbs_tw(K4, nice)[0] == 4


def test_dp_timeout_and_stats():
    G = random_graph(8, 0.5, seed=3)
    stats = BranchStats()
    mmbs_tw(G, nice_of(G), stats=stats)
    assert stats.nodes_expanded > 0 and stats.time_ms >= 0
    with pytest.raises(SearchTimeout):
        mmbs_tw(G, nice_of(G), deadline=deadline_after(0))


def _dp(G, nice):
    from blockset.search import SearchContext
    return dpmod._DP(G, nice, SearchContext())


def test_holds_matches_brute_force_predicate():
    rng = random.Random(11)
    checked = 0
    for it in range(60):
        G = random_graph(rng.randint(2, 6), rng.choice((0.3, 0.5, 0.7)), seed=it)
        nice = nice_of(G)
        node = rng.randrange(len(nice.nodes))
        brute = BruteNode(G, nice, node)
        inst = random_state(G, nice, node, rng, brute)
        for y in brute.subsets():
            assert tchack_check(G, nice, inst, y) == brute.holds(inst.key(), y)
            checked += 1
    assert checked > 500


def test_solve_pi_matches_brute_force_maximum():
    rng = random.Random(12)
    feasible = 0
    for it in range(120):
        G = random_graph(rng.randint(2, 7), rng.choice((0.3, 0.5, 0.7)), seed=100 + it)
        nice = nice_of(G)
        node = rng.randrange(len(nice.nodes))
        brute = BruteNode(G, nice, node)
        inst = random_state(G, nice, node, rng, brute)
        sizes = [y.bit_count() for y in brute.subsets() if brute.holds(inst.key(), y)]
        got = solve_pi(G, nice, inst)
        if not sizes:
            assert got is None
            continue
        feasible += 1
        assert got is not None and len(got) == max(sizes)
        assert brute.holds(inst.key(), to_mask(got))
    assert feasible >= 20


def test_exhaustive_introduce_splits_agree():
    rng = random.Random(13)
    for it in range(40):
        G = random_graph(rng.randint(2, 7), 0.5, seed=300 + it)
        nice = nice_of(G)
        node = rng.randrange(len(nice.nodes))
        inst = random_state(G, nice, node, rng, BruteNode(G, nice, node))
        fast, slow = _dp(G, nice), _dp(G, nice)
        slow.exhaustive = True
        assert fast.solve(inst.key()) == slow.solve(inst.key())


def test_node_lemmas_small_sample():
    tally = node_lemma_trials(30, seed=5)
    assert all(t[1] == 0 for t in tally.values()), tally
    assert all(t[2] > 0 for t in tally.values()), tally


@given(graphs(min_n=1, max_n=7))
def test_mmbs_tw_matches_oracle(G):
    value, cert = mmbs_tw(G, nice_of(G))
    assert value == oracle.mmbs_bruteforce(G)[0]
    assert oracle.is_minimal_blocking_set(G, cert)


def test_mmbs_tw_rejects_empty_graph():
    with pytest.raises(ValueError):
        mmbs_tw(Graph(0), make_nice(Graph(0), TreeDecomposition([set()], [])))
