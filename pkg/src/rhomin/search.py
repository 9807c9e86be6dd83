"""Minimizer searches over graphs of fixed order and diameter.

Three search spaces of increasing restriction, each with an exact final
tournament: all labeled graphs (tiny orders), all trees and unicyclic graphs,
and the quipu/dagger families. The family search is the production path; the
other two are independent oracles against which it is cross-validated. The
module also packages the end-to-end verification that the minimum spectral
radius at order 3k+1 and diameter 2k is attained exactly by the tied family
of open quipus with parameters (i, i+j-1, j) over i+j=k.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exactpoly import (
    CertifiedRoot,
    Ordering,
    Rational,
    DEFAULT_TOL,
    below_3_over_sqrt2,
    compare_rho,
    compare_roots,
    equal_rho_certificate,
    rho_certified_graph,
    rho_float,
)
from .families import (
    OpenQuipu,
    QuipuSpec,
    classify,
    enumerate_quipus,
    realize,
    screen,
    spec_literal,
    spider,
    theorem_family,
)
from .graphs import (
    Graph,
    add_edge,
    build_graph,
    canonical_code,
    cycle_graph,
    diameter,
    graph6_encode,
)

FLOAT_SCREEN_MARGIN = 1e-3
AUDIT_FRACTION = Fraction(1, 100)
AUDIT_CAP = 200
AUDIT_SEED = 0x5EED


@dataclass(frozen=True)
class Winner:
    code: bytes
    graph: Graph
    spec: QuipuSpec | None


@dataclass
class MinimizerReport:
    n: int
    d: int
    min_rho: CertifiedRoot | None
    winners: list[Winner]
    search_space: str
    candidates_examined: int
    sound: bool = True
    stats: dict = field(default_factory=dict)

    def winner_codes(self) -> set[bytes]:
        return {w.code for w in self.winners}

    def to_json(self) -> dict:
        min_rho = None
        if self.min_rho is not None:
            min_rho = self.min_rho.to_json()
        return {
            "n": self.n,
            "d": self.d,
            "min_rho": min_rho,
            "winners": [
                {
                    "graph6": graph6_encode(w.graph),
                    "spec": spec_literal(w.spec) if w.spec is not None else None,
                }
                for w in self.winners
            ],
            "search_space": self.search_space,
            "candidates_examined": self.candidates_examined,
            "sound": self.sound,
            "stats": self.stats,
        }


class BudgetError(ValueError):
    """A search was requested beyond its supported size."""


# ---------------------------------------------------------------------------
# exact confirmation shared by all search paths

def _exact_tournament(graphs: list[Graph], specs, tol) -> tuple[CertifiedRoot, list[Winner]]:
    """Certify the exact minimum and every tie among candidate graphs."""
    roots = [rho_certified_graph(g, tol) for g in graphs]
    best = 0
    for i in range(1, len(roots)):
        order, _ = compare_roots(roots[i], roots[best])
        if order is Ordering.LESS:
            best = i
    winners = []
    for i, g in enumerate(graphs):
        if i == best:
            winners.append(Winner(canonical_code(g), g, specs[i]))
            continue
        order, _ = compare_roots(roots[i], roots[best])
        if order is Ordering.EQUAL:
            ok, _ = equal_rho_certificate(g, graphs[best])
            if not ok:
                raise AssertionError("tie without an equality certificate")
            winners.append(Winner(canonical_code(g), g, specs[i]))
        elif order is Ordering.LESS:
            raise AssertionError("tournament produced a non-minimal best")
    winners.sort(key=lambda w: w.code)
    return roots[best], winners


def _float_screen(graphs: list[Graph]) -> tuple[list[int], list[int]]:
    """Indices of near-minimal graphs by certified float brackets, plus the
    discarded indices. A graph survives when its lower bound is within
    FLOAT_SCREEN_MARGIN of the best upper bound seen."""
    best_hi = float("inf")
    bounds = []
    for g in graphs:
        lo, hi = rho_float(g)
        bounds.append((lo, hi))
        best_hi = min(best_hi, hi)
    kept = [i for i, (lo, _) in enumerate(bounds) if lo <= best_hi + FLOAT_SCREEN_MARGIN]
    dropped = [i for i, (lo, _) in enumerate(bounds) if lo > best_hi + FLOAT_SCREEN_MARGIN]
    return kept, dropped


def _audit_discards(discarded: list[Graph], winner: Graph, seed: int = AUDIT_SEED) -> int:
    """Exactly re-check a deterministic 1% sample of discarded candidates:
    each must compare strictly greater than a winner. Returns sample size."""
    if not discarded:
        return 0
    size = min(max(1, (len(discarded) * AUDIT_FRACTION).__ceil__()), AUDIT_CAP)
    rng = random.Random(seed)
    sample = rng.sample(discarded, size)
    for g in sample:
        if compare_rho(g, winner) is not Ordering.GREATER:
            raise AssertionError("audit found a discarded candidate not above the minimum")
    return size


# ---------------------------------------------------------------------------
# oracle 1: every labeled graph on n <= 7 vertices

def brute_force_all_graphs(n: int, d: int, tol: Rational = DEFAULT_TOL) -> MinimizerReport:
    """Exhaustive minimum over all connected graphs of order n and diameter d,
    iterating all 2^C(n,2) labeled graphs in vectorized batches."""
    if not 1 <= n <= 7:
        raise BudgetError("brute_force_all_graphs supports 1 <= n <= 7")
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    total = 1 << m
    if n == 1:
        g = build_graph(1, [])
        if d != 0:
            return MinimizerReport(n, d, None, [], "all-graphs", total)
        root = rho_certified_graph(g, tol)
        return MinimizerReport(n, d, root, [Winner(canonical_code(g), g, None)],
                               "all-graphs", total)
    chunk = 1 << 17
    best_hi = float("inf")
    pool_masks: list[tuple[int, float]] = []
    matched = 0
    rows = np.array([u for u, _ in pairs])
    cols = np.array([v for _, v in pairs])
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(m)) & 1
        A = np.zeros((len(masks), n, n), dtype=np.uint8)
        A[:, rows, cols] = bits.astype(np.uint8)
        A[:, cols, rows] = bits.astype(np.uint8)
        if d == 0:
            ok = np.zeros(len(masks), dtype=bool)
        else:
            step = A | np.eye(n, dtype=np.uint8)
            reach = np.broadcast_to(np.eye(n, dtype=np.uint8),
                                    (len(masks), n, n)).copy()
            # reach covers pairs at distance <= t after t multiplications
            at_dm1 = np.full(len(masks), n == 1)
            for t in range(1, d + 1):
                reach = ((reach.astype(np.int32) @ step) > 0).astype(np.uint8)
                if t == d - 1:
                    at_dm1 = reach.all(axis=(1, 2))
            ok = reach.all(axis=(1, 2)) & ~at_dm1
        idx = np.nonzero(ok)[0]
        matched += len(idx)
        if len(idx) == 0:
            continue
        vals = np.linalg.eigvalsh(A[idx].astype(np.float64))[:, -1]
        slack = 1e-6 * (1.0 + vals)
        best_hi = min(best_hi, float(vals.min()) + float(slack.max()))
        keep = vals - slack <= best_hi + FLOAT_SCREEN_MARGIN
        for i, v in zip(idx[keep], vals[keep]):
            pool_masks.append((int(masks[i]), float(v)))
    # second pass over the retained pool against the final best estimate
    pool_masks = [(mk, v) for mk, v in pool_masks if v <= best_hi + 2 * FLOAT_SCREEN_MARGIN]
    seen: dict[bytes, Graph] = {}
    for mk, _ in pool_masks:
        edges = [pairs[i] for i in range(m) if mk >> i & 1]
        g = build_graph(n, edges)
        code = canonical_code(g)
        if code not in seen:
            seen[code] = g
    graphs = [seen[c] for c in sorted(seen)]
    if not graphs:
        return MinimizerReport(n, d, None, [], "all-graphs", total,
                               stats={"matched": matched})
    min_rho, winners = _exact_tournament(graphs, [classify(g) for g in graphs], tol)
    non_winning = [g for g in graphs if canonical_code(g) not in {w.code for w in winners}]
    audited = _audit_discards(non_winning, winners[0].graph)
    return MinimizerReport(
        n, d, min_rho, winners, "all-graphs", total,
        stats={"matched": matched, "pool": len(graphs), "audited": audited},
    )


# ---------------------------------------------------------------------------
# oracle 2: all trees and unicyclic graphs up to n = 14

_tree_cache: dict[int, list[Graph]] = {}


def free_trees(n: int) -> list[Graph]:
    """All free trees of order n, one per isomorphism class, generated by
    leaf addition with canonical deduplication."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n in _tree_cache:
        return _tree_cache[n]
    if n == 1:
        out = [build_graph(1, [])]
    else:
        out = []
        seen = set()
        for t in free_trees(n - 1):
            for v in range(t.n):
                g = _append_leaf(t, v)
                code = canonical_code(g)
                if code not in seen:
                    seen.add(code)
                    out.append(g)
        out.sort(key=canonical_code)
    _tree_cache[n] = out
    return out


def _append_leaf(g: Graph, v: int) -> Graph:
    return add_edge(
        build_graph(g.n + 1, list(g.edges())), v, g.n
    )


def naive_free_tree_count(n: int) -> int:
    """Independent free-tree count for small n: iterate labeled trees by
    Pruefer sequence and deduplicate by canonical code."""
    if n > 8:
        raise BudgetError("naive count supported for n <= 8")
    if n == 1 or n == 2:
        return 1
    seen = set()
    for code in range(n ** (n - 2)):
        seq = []
        x = code
        for _ in range(n - 2):
            seq.append(x % n)
            x //= n
        seen.add(canonical_code(_tree_from_pruefer(n, seq)))
    return len(seen)


def _tree_from_pruefer(n: int, seq: list[int]) -> Graph:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return build_graph(n, edges)


def counted_free_trees(n: int) -> int:
    """Free-tree count by the rooted-tree counting recurrence (independent of
    any generator): r(n) via divisor convolution, then free counts by removing
    root symmetries."""
    # rooted trees: r(1)=1, n*r(n+1) = sum_{k=1..n} (sum_{d|k} d*r(d)) r(n-k+1)
    r = [0, 1]
    for size in range(2, n + 1):
        acc = 0
        for k in range(1, size):
            s = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            acc += s * r[size - k]
        r.append(acc // (size - 1))
    # free trees by the dissimilarity identity:
    # t(n) = r(n) - (sum_{i+j=n} r(i)r(j) - [n even] r(n/2)) / 2
    conv = sum(r[i] * r[n - i] for i in range(1, n))
    if n % 2 == 0:
        conv -= r[n // 2]
    return r[n] - conv // 2


_unicyclic_cache: dict[int, list[Graph]] = {}


def unicyclic_graphs(n: int) -> list[Graph]:
    """All connected unicyclic graphs of order n up to isomorphism, by leaf
    addition starting from each cycle length."""
    if n < 3:
        return []
    if n in _unicyclic_cache:
        return _unicyclic_cache[n]
    prev = unicyclic_graphs(n - 1) if n > 3 else []
    out = [cycle_graph(n)]
    seen = {canonical_code(out[0])}
    for g in prev:
        for v in range(g.n):
            h = _append_leaf(g, v)
            code = canonical_code(h)
            if code not in seen:
                seen.add(code)
                out.append(h)
    out.sort(key=canonical_code)
    _unicyclic_cache[n] = out
    return out


def brute_force_sparse(n: int, d: int, tol: Rational = DEFAULT_TOL) -> MinimizerReport:
    """Exact minimum over all trees and unicyclic graphs of order n and
    diameter d. Sound as a minimum over all graphs exactly when the result
    has certified spectral radius below 3/sqrt(2) (the structural reduction
    to sparse graphs needs that bound); the report carries the flag."""
    if not 1 <= n <= 14:
        raise BudgetError("brute_force_sparse supports 1 <= n <= 14")
    cands = list(free_trees(n)) + unicyclic_graphs(n)
    matched = [g for g in cands if diameter(g) == d]
    if not matched:
        return MinimizerReport(n, d, None, [], "sparse", len(cands), sound=False)
    kept, dropped = _float_screen(matched)
    graphs = [matched[i] for i in kept]
    min_rho, winners = _exact_tournament(graphs, [classify(g) for g in graphs], tol)
    sound = below_3_over_sqrt2(min_rho)
    losers = [matched[i] for i in dropped] + [
        g for g in graphs if canonical_code(g) not in {w.code for w in winners}
    ]
    audited = _audit_discards(losers, winners[0].graph)
    return MinimizerReport(
        n, d, min_rho, winners, "sparse", len(cands), sound=sound,
        stats={"matched": len(matched), "screened_out": len(dropped),
               "audited": audited},
    )


# ---------------------------------------------------------------------------
# production path: quipu/dagger family search

def _float_bounds_for(g6: str) -> tuple[float, float]:
    from .graphs import graph6_decode

    return rho_float(graph6_decode(g6))


def minimize_over_quipus(
    n: int,
    d: int,
    tol: Rational = DEFAULT_TOL,
    workers: int = 1,
) -> MinimizerReport:
    """Exact minimum over all open quipus, closed quipus and daggers of order
    n and diameter d.

    Pipeline: enumerate family members; establish soundness by certifying
    some member below 3/sqrt(2); when sound, discard open quipus whose
    structural screening certifies radius above the threshold; float-screen
    the rest; certify the minimum and all ties exactly. A deterministic 1%
    sample of everything discarded is re-checked exactly.
    """
    specs = list(enumerate_quipus(n, d))
    if not specs:
        return MinimizerReport(n, d, None, [], "quipu-family", 0, sound=False)
    graphs = [realize(s) for s in specs]

    if workers > 1:
        g6s = [graph6_encode(g) for g in graphs]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            bounds = list(pool.map(_float_bounds_for, g6s, chunksize=64))
    else:
        bounds = [rho_float(g) for g in graphs]

    # soundness: certify the float-smallest members until one is < 3/sqrt(2)
    threshold_float = 3.0 / 2.0**0.5
    by_float = sorted(range(len(specs)), key=lambda i: bounds[i][1])
    sound = False
    for i in by_float[:10]:
        if bounds[i][0] > threshold_float:
            break
        if below_3_over_sqrt2(rho_certified_graph(graphs[i])):
            sound = True
            break

    screened_out = []
    survivors = []
    for i, s in enumerate(specs):
        if sound and isinstance(s, OpenQuipu):
            rep = screen(s)
            if rep.sufficient_violation:
                screened_out.append(i)
                continue
        survivors.append(i)

    best_hi = min(bounds[i][1] for i in survivors)
    kept = [i for i in survivors if bounds[i][0] <= best_hi + FLOAT_SCREEN_MARGIN]
    dropped = [i for i in survivors if bounds[i][0] > best_hi + FLOAT_SCREEN_MARGIN]
    min_rho, winners = _exact_tournament(
        [graphs[i] for i in kept], [specs[i] for i in kept], tol
    )
    if not below_3_over_sqrt2(min_rho):
        sound = False
    loser_graphs = [graphs[i] for i in screened_out + dropped]
    audited = _audit_discards(loser_graphs, winners[0].graph)
    return MinimizerReport(
        n, d, min_rho, winners, "quipu-family", len(specs), sound=sound,
        stats={
            "screened_out": len(screened_out),
            "float_dropped": len(dropped),
            "exactly_compared": len(kept),
            "audited": audited,
        },
    )


# ---------------------------------------------------------------------------
# theorem-level verdicts

@dataclass
class Verdict:
    passed: bool
    failures: list[str]
    data: dict = field(default_factory=dict)


_rho_k_cache: dict[int, CertifiedRoot] = {}


def rho_k(k: int, tol: Rational = DEFAULT_TOL) -> CertifiedRoot:
    """Certified spectral radius of the three-arm spider with arm length k."""
    if k not in _rho_k_cache:
        _rho_k_cache[k] = rho_certified_graph(realize(spider(k)), tol)
    root = _rho_k_cache[k]
    root.refine(Fraction(tol))
    return root


def verify_theorem(k: int, workers: int = 1) -> Verdict:
    """Check that the minimizers at order 3k+1 and diameter 2k are exactly
    the tied quipu family, that the ties are certified equalities, and that
    the minimum is strictly below the next family's."""
    if k < 2:
        raise ValueError("need k >= 2")
    failures = []
    report = minimize_over_quipus(3 * k + 1, 2 * k, workers=workers)
    if not report.sound:
        failures.append("search is not sound at this (n, d)")
    family = theorem_family(k)
    expected = {canonical_code(realize(s)) for s in family}
    got = report.winner_codes()
    if got != expected:
        failures.append(
            f"winner set mismatch: got {len(got)} winners, expected {len(expected)}"
        )
    base = realize(family[0])
    for s in family[1:]:
        ok, _ = equal_rho_certificate(base, realize(s))
        if not ok:
            failures.append(f"no equality certificate for {spec_literal(s)}")
    order, _ = compare_roots(rho_k(k), rho_k(k + 1))
    if order is not Ordering.LESS:
        failures.append("family minimum does not increase with k")
    return Verdict(not failures, failures, {"report": report, "k": k})


def exception_specs(k: int) -> list[OpenQuipu]:
    """The seven open quipus that survive structural screening at order
    3k+1, diameter 2k but exceed the family minimum (k >= 7)."""
    if k < 7:
        raise ValueError("need k >= 7")
    return [
        OpenQuipu((1, k - 3, k - 1, 1), (1, k - 2, 1)),
        OpenQuipu((1, k - 4, k - 1, 2), (1, k - 3, 2)),
        OpenQuipu((1, 0, k - 1, k - 2), (1, 1, k - 2)),
        OpenQuipu((1, k - 2, k - 2, 1), (1, k - 2, 1)),
        OpenQuipu((1, 1, k - 2, k - 2), (1, 1, k - 2)),
        OpenQuipu((1, 1, k - 2, k - 4, 1), (1, 1, k - 3, 1)),
        OpenQuipu((1, k - 3, k - 2, 0, 1), (1, k - 3, 1, 1)),
    ]


def verify_exceptions(k: int) -> Verdict:
    """Certify that each of the seven exceptional quipus has spectral radius
    strictly above the family minimum, and that the comparator quipu used
    against the last one sits above 3/sqrt(2)."""
    if k < 7:
        raise ValueError("need k >= 7")
    failures = []
    base = realize(spider(k))
    for s in exception_specs(k):
        if compare_rho(realize(s), base) is not Ordering.GREATER:
            failures.append(f"{spec_literal(s)} does not exceed the minimum")
    comparator = OpenQuipu((1, k - 3, k - 2, 2), (1, k - 3, 2))
    if below_3_over_sqrt2(rho_certified_graph(realize(comparator))):
        failures.append("comparator quipu is below the threshold")
    return Verdict(not failures, failures, {"k": k})
