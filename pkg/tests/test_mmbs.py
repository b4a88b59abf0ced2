import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockset import mmbs, oracle
from blockset.alpha import AlphaOracle
from blockset.core import Graph, Hypergraph, complement, to_mask
from strategies import graphs

K2 = Graph(2, [(0, 1)])
K3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
P3 = Graph(3, [(0, 1), (1, 2)])
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_mis_hypergraph_examples():
    assert mmbs.mis_hypergraph(K2) == Hypergraph(2, [{0}, {1}])
    assert mmbs.mis_hypergraph(P3) == Hypergraph(3, [{0, 2}])
    assert mmbs.mis_hypergraph(C4) == Hypergraph(4, [{0, 2}, {1, 3}])


def test_search_exact_examples():
    assert mmbs.mmbs_search_exact(P3, 1, "exactly")
    assert not mmbs.mmbs_search_exact(P3, 2, "exactly")
    assert mmbs.mmbs_search_exact(K2, 2, "exactly")
    # K3: mmbs is 3, yet no minimal blocking set has size 2
    assert not mmbs.mmbs_search_exact(K3, 2, "exactly")
    assert mmbs.mmbs_search_exact(K3, 3, "exactly")
    assert not mmbs.mmbs_search_exact(K3, 2, "at_most")


def test_search_rejects_bad_input():
    with pytest.raises(ValueError):
        mmbs.mmbs_search_exact(P3, 0)
    with pytest.raises(ValueError):
        mmbs.mmbs_search_exact(Graph(0), 1)
    with pytest.raises(ValueError):
        mmbs.mmbs_search_exact(P3, 1, "at_least")


@pytest.mark.parametrize("engine", ["improved_fpt", "alt_branch", "extension_branch"])
def test_at_least_examples(engine):
    assert mmbs.mmbs_at_least_fixed_alpha(C4, 2, engine)
    assert not mmbs.mmbs_at_least_fixed_alpha(P3, 2, engine)
    assert mmbs.mmbs_at_least_fixed_alpha(complement(P3), 2, engine)


def test_unknown_engine():
    with pytest.raises(ValueError):
        mmbs.mmbs_at_least_fixed_alpha(P3, 1, "magic")


def test_alpha_oracle_lex_min_mis():
    al = AlphaOracle(C4)
    assert al(C4.vertex_mask) == 2
    assert al.lex_min_mis(C4.vertex_mask) == to_mask({0, 2})
    assert al.lex_min_mis(to_mask({1, 2, 3})) == to_mask({1, 3})


def test_alpha_oracle_without_table():
    G = Graph(6, [(i, i + 1) for i in range(5)])
    a, b = AlphaOracle(G), AlphaOracle(G, table_limit=0)
    for s in range(1 << 6):
        assert a(s) == b(s)
        assert a.lex_min_mis(s) == b.lex_min_mis(s)


@given(graphs(max_n=8), st.data())
def test_minimality_verifier_matches_oracle(G, data):
    Y = data.draw(st.sets(st.integers(0, G.n - 1)))
    assert mmbs.is_minimal_blocking(G, Y) == oracle.is_minimal_blocking_set(G, Y)


@given(graphs(max_n=8), st.integers(1, 9))
def test_search_matches_enumeration(G, beta):
    sizes = {len(s) for s in oracle.all_minimal_blocking_sets(G)}
    cert = mmbs.search_certificate(G, beta, "exactly")
    assert (cert is not None) == (beta in sizes)
    if cert is not None:
        assert len(cert) == beta and oracle.is_minimal_blocking_set(G, cert)
    assert mmbs.mmbs_search_exact(G, beta, "at_most") == any(s <= beta for s in sizes)


@given(graphs(max_n=8), st.integers(1, 9))
def test_at_least_engines_match_oracle(G, beta):
    truth = oracle.mmbs_bruteforce(G)[0] >= beta
    for engine in ("improved", "extension", "alt"):
        cert = mmbs.at_least_certificate(G, beta, engine)
        assert (cert is not None) == truth
        if cert is not None:
            assert oracle.is_minimal_blocking_set(G, cert)
