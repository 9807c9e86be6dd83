"""Search oracles, generators, reports, and theorem-level verdicts."""

import json

import pytest

from rhomin.exactpoly import Ordering, compare_roots
from rhomin.families import (
    OpenQuipu,
    classify,
    realize,
    spec_literal,
    spider,
    theorem_family,
)
from rhomin.graphs import canonical_code, graph6_decode, path_graph
from rhomin.search import (
    BudgetError,
    brute_force_all_graphs,
    brute_force_sparse,
    counted_free_trees,
    exception_specs,
    free_trees,
    minimize_over_quipus,
    naive_free_tree_count,
    rho_k,
    unicyclic_graphs,
    verify_exceptions,
    verify_theorem,
)


def test_free_tree_counts_match_independent_formula():
    for n in range(1, 11):
        assert len(free_trees(n)) == counted_free_trees(n)
    assert counted_free_trees(10) == 106


def test_free_tree_counts_match_naive_generator():
    for n in range(1, 9):
        assert len(free_trees(n)) == naive_free_tree_count(n)


def test_unicyclic_counts():
    # connected unicyclic graphs per isomorphism class, n = 3..10
    assert [len(unicyclic_graphs(n)) for n in range(3, 11)] == [
        1, 2, 5, 13, 33, 89, 240, 657,
    ]


def test_budget_guards():
    with pytest.raises(BudgetError):
        brute_force_all_graphs(8, 4)
    with pytest.raises(BudgetError):
        brute_force_sparse(15, 5)
    with pytest.raises(BudgetError):
        naive_free_tree_count(9)


def test_brute_force_all_small_paths():
    report = brute_force_all_graphs(5, 4)
    assert len(report.winners) == 1
    assert report.winners[0].code == canonical_code(path_graph(5))
    assert report.candidates_examined == 2 ** 10


def test_brute_force_all_no_match():
    report = brute_force_all_graphs(3, 9)
    assert report.min_rho is None and not report.winners


def test_sparse_known_minimizers():
    # path at diameter n-1
    rep = brute_force_sparse(10, 9)
    assert [w.spec for w in rep.winners] == [OpenQuipu((0, 0), (9,))]
    assert rep.sound
    # one branch vertex at diameter n-2
    rep = brute_force_sparse(10, 8)
    assert [w.spec for w in rep.winners] == [OpenQuipu((1, 1), (7,))]
    # two branch vertices at diameter n-3
    rep = brute_force_sparse(10, 7)
    assert [w.spec for w in rep.winners] == [OpenQuipu((1, 4, 1), (1, 1))]
    # cycle at diameter floor(n/2)
    rep = brute_force_sparse(9, 4)
    assert len(rep.winners) == 1
    assert rep.winners[0].code == canonical_code(realize(classify(rep.winners[0].graph)))
    assert rep.min_rho.contains(2) or rep.min_rho.lo == 2


def test_sparse_theorem_case_k3():
    rep = brute_force_sparse(10, 6)
    expected = {canonical_code(realize(s)) for s in theorem_family(3)}
    assert rep.winner_codes() == expected
    assert rep.sound


def test_quipu_search_agrees_with_sparse():
    for n, d in [(10, 6), (9, 5), (10, 7), (10, 8)]:
        a = brute_force_sparse(n, d)
        b = minimize_over_quipus(n, d)
        if not (a.sound and b.sound):
            continue
        assert a.winner_codes() == b.winner_codes(), (n, d)
        order, _ = compare_roots(a.min_rho, b.min_rho)
        assert order is Ordering.EQUAL


def test_quipu_search_report_shape():
    rep = minimize_over_quipus(10, 6)
    payload = rep.to_json()
    assert payload["n"] == 10 and payload["d"] == 6
    assert payload["sound"] is True
    assert len(payload["winners"]) == 2
    for w in payload["winners"]:
        g = graph6_decode(w["graph6"])
        assert g.n == 10
        assert w["spec"] is not None
    json.dumps(payload)  # serializable end to end


def test_search_determinism():
    a = minimize_over_quipus(10, 6).to_json()
    b = minimize_over_quipus(10, 6).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_verify_theorem_small():
    v = verify_theorem(2)
    assert v.passed, v.failures
    assert len(v.data["report"].winners) == 2
    v = verify_theorem(3)
    assert v.passed, v.failures
    assert len(v.data["report"].winners) == 2


def test_closed_quipu_boundary_competitor():
    # the long-cycle closed quipu appears at (3k+1, 2k) for k=7 but loses
    k = 7
    from rhomin.families import ClosedQuipu, enumerate_quipus
    from rhomin.exactpoly import compare_rho

    target = ClosedQuipu((2 * k + 1,), (k - 1,))
    members = list(enumerate_quipus(3 * k + 1, 2 * k, kinds={"closed"}))
    assert target in members
    assert compare_rho(realize(target), realize(spider(k))) is Ordering.GREATER


def test_exception_specs_shape():
    for k in (7, 9):
        specs = exception_specs(k)
        assert len(specs) == 7
        for s in specs:
            g = realize(s)
            assert g.n == 3 * k + 1
            from rhomin.graphs import diameter

            assert diameter(g) == 2 * k
    with pytest.raises(ValueError):
        exception_specs(6)


def test_verify_exceptions_k7():
    v = verify_exceptions(7)
    assert v.passed, v.failures


def test_rho_k_values():
    r1 = rho_k(1)
    assert r1.lo**2 < 3 < r1.hi**2
    r2 = rho_k(2)
    assert r2.contains(2)
    order, _ = compare_roots(rho_k(5), rho_k(6))
    assert order is Ordering.LESS
