"""Integer polynomials, Sturm root certification, and exact comparisons."""

from fractions import Fraction

import pytest

from rhomin.exactpoly import (
    IntPoly,
    Ordering,
    below_3_over_sqrt2,
    below_squared_threshold,
    cauchy_root_bound,
    charpoly,
    charpoly_dense,
    compare_rho,
    count_roots_halfopen,
    equal_rho_certificate,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    rho_certified,
    rho_certified_graph,
    rho_float,
    square_free_part,
    sturm_chain,
)
from rhomin.graphs import (
    build_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
)


def test_poly_arithmetic():
    p = IntPoly((1, 2))       # 1 + 2x
    q = IntPoly((-1, 0, 1))   # x^2 - 1
    assert (p * q).coeffs == (-1, -2, 1, 2)
    assert (p + q).coeffs == (0, 2, 1)
    assert (q - q).is_zero
    assert q.derivative().coeffs == (0, 2)
    assert q.eval_at(Fraction(3, 2)) == Fraction(5, 4)
    assert q.sign_at(Fraction(1, 2)) == -1
    assert q.sign_at(Fraction(1)) == 0
    assert IntPoly(()).is_zero


def test_poly_json_round_trip():
    p = IntPoly((-3, 0, 1))
    assert poly_from_json(poly_to_json(p)).coeffs == p.coeffs
    assert poly_to_json(p) == ["-3", "0", "1"]


def test_gcd_and_square_free():
    # (x-1)^2 (x+2) and (x-1)(x-3) share (x-1)
    a = IntPoly((-1, 1)) * IntPoly((-1, 1)) * IntPoly((2, 1))
    b = IntPoly((-1, 1)) * IntPoly((-3, 1))
    g = poly_gcd(a, b)
    assert g.coeffs == (-1, 1)
    sf = square_free_part(a)
    assert sf.coeffs == IntPoly((-1, 1)).__mul__(IntPoly((2, 1))).coeffs


def test_sturm_counts():
    p = IntPoly((0, -3, 0, 1))  # x(x^2 - 3)
    chain = sturm_chain(square_free_part(p))
    assert count_roots_halfopen(chain, Fraction(-2), Fraction(2)) == 3
    assert count_roots_halfopen(chain, Fraction(1), Fraction(2)) == 1
    assert cauchy_root_bound(p) >= 2


def test_rho_certified_irrational():
    root = rho_certified(IntPoly((-3, 0, 1)))  # sqrt(3)
    assert root.lo * root.lo < 3 < root.hi * root.hi
    assert root.width <= Fraction(1, 10**12)


def test_rho_certified_rational_root_deflation():
    # x(x-2)(x+2): largest root exactly 2, found via a rational bisection hit
    root = rho_certified(IntPoly((0, -4, 0, 1)))
    assert root.exact and root.lo == 2
    # largest root rational but not the bisection midpoint
    root = rho_certified(IntPoly((-6, 11, -6, 1)))  # (x-1)(x-2)(x-3)
    assert root.contains(Fraction(3))


def test_charpoly_known_values():
    assert charpoly(path_graph(4)).coeffs == (1, 0, -3, 0, 1)
    assert charpoly(star_graph(4)).coeffs == (0, 0, -3, 0, 1)
    assert charpoly(cycle_graph(5)).coeffs == (-2, 5, 0, -5, 0, 1)
    assert charpoly(build_graph(1, [])).coeffs == (0, 1)
    assert charpoly(build_graph(0, [])).coeffs == (1,)


def test_charpoly_routes_agree():
    import random

    from rhomin.graphs import add_edge

    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 8)
        g = build_graph(1, [])
        for v in range(1, n):
            g = add_edge(build_graph(v + 1, list(g.edges())), rng.randrange(v), v)
        if n >= 3 and rng.random() < 0.5:
            # close one cycle to get a unicyclic graph
            u, w = rng.sample(range(n), 2)
            if w not in g.adj[u]:
                g = add_edge(g, u, w)
        assert charpoly(g).coeffs == charpoly_dense(g).coeffs


def test_charpoly_disconnected_multiplies():
    g = disjoint_union(path_graph(2), path_graph(3))
    assert charpoly(g).coeffs == (charpoly(path_graph(2)) * charpoly(path_graph(3))).coeffs


def test_rho_float_brackets_truth():
    g = cycle_graph(8)
    lo, hi = rho_float(g)
    assert lo <= 2.0 <= hi and hi - lo < 1e-6


def test_compare_rho_orderings():
    assert compare_rho(path_graph(4), path_graph(5)) is Ordering.LESS
    assert compare_rho(cycle_graph(7), cycle_graph(4)) is Ordering.EQUAL
    assert compare_rho(star_graph(5), path_graph(5)) is Ordering.GREATER


def test_equal_certificate_has_common_factor():
    ok, witness = equal_rho_certificate(cycle_graph(5), cycle_graph(9))
    assert ok
    assert witness.factor.degree >= 1
    assert witness.factor.sign_at(Fraction(2)) == 0  # rho = 2 is the shared root


def test_close_but_unequal_radii_are_separated():
    # P^{(k)}_{(k,k)} radii for consecutive k differ by ~1e-2 at k=8 and shrink
    from rhomin.families import realize, spider

    g1, g2 = realize(spider(9)), realize(spider(10))
    assert compare_rho(g1, g2) is Ordering.LESS


def test_threshold_decisions():
    assert below_3_over_sqrt2(rho_certified_graph(cycle_graph(6)))  # 2 < 2.121
    assert not below_3_over_sqrt2(rho_certified_graph(star_graph(6)))  # sqrt(5)
    root = rho_certified(IntPoly((-3, 0, 1)))
    assert below_squared_threshold(root, 2, 1) is False
    assert below_squared_threshold(root, 4, 1) is True


def test_certified_root_refine_tightens_only():
    root = rho_certified_graph(path_graph(6), Fraction(1, 100))
    lo0, hi0 = root.lo, root.hi
    root.refine(Fraction(1, 10**9))
    assert lo0 <= root.lo <= root.hi <= hi0
    assert root.width <= Fraction(1, 10**9)


def test_rho_certified_rejects_degenerate():
    with pytest.raises(ValueError):
        rho_certified(IntPoly(()))
    with pytest.raises(ValueError):
        rho_certified(IntPoly((5,)))
    with pytest.raises(ValueError):
        rho_certified(IntPoly((1, 0, 1)))  # no real roots
