"""Property suites run end to end (small trial counts where configurable)."""

import pytest

from rhomin.suites import (
    ALL_SUITES,
    run_suites,
    suite_composition,
    suite_composition_symmetry,
    suite_edge_transfer,
    suite_equal_radius_family,
    suite_rooted_ratio,
    suite_spider_family,
    suite_subdivision,
    suite_subgraph_monotonicity,
)


def test_suite_registry_complete():
    assert set(ALL_SUITES) == {
        "subgraph-monotonicity", "subdivision", "edge-transfer",
        "diameter-bounds", "rooted-ratio", "equal-radius-family",
        "composition", "composition-symmetry", "spider-family",
    }
    with pytest.raises(ValueError):
        run_suites(["nope"])


def test_subgraph_monotonicity():
    r = suite_subgraph_monotonicity(trials=15)
    assert r.passed, r.failures


def test_subdivision():
    r = suite_subdivision(trials=12)
    assert r.passed, r.failures


def test_edge_transfer_small():
    r = suite_edge_transfer(trials=40)
    assert r.passed, r.failures


def test_rooted_ratio():
    r = suite_rooted_ratio(trials=20)
    assert r.passed, r.failures


def test_equal_radius_family():
    r = suite_equal_radius_family(kmax=5)
    assert r.passed, r.failures


def test_composition():
    r = suite_composition(trials=15)
    assert r.passed, r.failures


def test_composition_symmetry():
    r = suite_composition_symmetry(trials=8)
    assert r.passed, r.failures


def test_spider_family():
    r = suite_spider_family(kmax=8)
    assert r.passed, r.failures


def test_results_are_deterministic():
    a = suite_edge_transfer(trials=15)
    b = suite_edge_transfer(trials=15)
    assert (a.passed, a.checks, a.failures) == (b.passed, b.checks, b.failures)
