"""Parametric graph families: open quipus, closed quipus, daggers.

An open quipu is a tree of maximum degree 3 whose degree-3 vertices lie on a
path; parameters ks give the segment lengths along the backbone and ms the
pendant path lengths at the branch vertices. A closed quipu is the unicyclic
analogue (branch vertices on the cycle). A dagger is a star of order 4 with a
pendant path attached at its center.

The module realizes parameter tuples as graphs, classifies graphs back to
canonical parameters, enumerates all family members with a given order and
diameter, and evaluates the structural screening predicates used to rule out
large spectral radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor

from .graphs import (
    Graph,
    GraphError,
    build_graph,
    diameter,
    distances,
    is_connected,
    two_core_cycle,
)


@dataclass(frozen=True)
class OpenQuipu:
    """Open quipu with r+2 segment lengths ks and r+1 pendant lengths ms."""

    ks: tuple[int, ...]
    ms: tuple[int, ...]

    def __post_init__(self):
        if len(self.ks) != len(self.ms) + 1:
            raise ValueError("need len(ks) == len(ms) + 1")
        if len(self.ms) < 1:
            raise ValueError("need at least one branch position")
        if any(k < 0 for k in self.ks) or any(m < 0 for m in self.ms):
            raise ValueError("parameters must be nonnegative")

    @property
    def r(self) -> int:
        return len(self.ms) - 1

    @property
    def order(self) -> int:
        return sum(self.ks) + sum(self.ms) + self.r + 1


@dataclass(frozen=True)
class ClosedQuipu:
    """Closed quipu with r cycle gaps ks and r pendant lengths ms."""

    ks: tuple[int, ...]
    ms: tuple[int, ...]

    def __post_init__(self):
        if len(self.ks) != len(self.ms) or not self.ks:
            raise ValueError("need len(ks) == len(ms) >= 1")
        if any(k < 0 for k in self.ks) or any(m < 0 for m in self.ms):
            raise ValueError("parameters must be nonnegative")
        if self.cycle_length < 3:
            raise ValueError("cycle length below 3")

    @property
    def r(self) -> int:
        return len(self.ms)

    @property
    def cycle_length(self) -> int:
        return sum(self.ks) + self.r

    @property
    def order(self) -> int:
        return self.cycle_length + sum(self.ms)


@dataclass(frozen=True)
class Dagger:
    """Star of order 4 with a pendant path of `tail` vertices at the center."""

    tail: int

    def __post_init__(self):
        if self.tail < 0:
            raise ValueError("tail must be nonnegative")

    @property
    def order(self) -> int:
        return self.tail + 4


QuipuSpec = OpenQuipu | ClosedQuipu | Dagger


# ---------------------------------------------------------------------------
# realization

def realize(spec: QuipuSpec) -> Graph:
    """Build the graph of a parameter tuple.

    Backbone (or cycle) vertices are numbered first, left to right, then the
    pendant paths in branch order.
    """
    if isinstance(spec, OpenQuipu):
        return _realize_open(spec)
    if isinstance(spec, ClosedQuipu):
        return _realize_closed(spec)
    if isinstance(spec, Dagger):
        return _realize_dagger(spec)
    raise TypeError(f"not a family spec: {spec!r}")


def _realize_open(q: OpenQuipu) -> Graph:
    edges = []
    branch = []
    v = -1
    for i, k in enumerate(q.ks):
        for _ in range(k):
            v += 1
            if v:
                edges.append((v - 1, v))
        if i < len(q.ms):
            v += 1
            if v:
                edges.append((v - 1, v))
            branch.append(v)
    n = v + 1
    for b, m in zip(branch, q.ms):
        prev = b
        for _ in range(m):
            edges.append((prev, n))
            prev = n
            n += 1
    return build_graph(n, edges)


def _realize_closed(q: ClosedQuipu) -> Graph:
    c = q.cycle_length
    edges = [(i, (i + 1) % c) for i in range(c)]
    branch = []
    pos = 0
    for k in q.ks:
        branch.append(pos)
        pos += k + 1
    n = c
    for b, m in zip(branch, q.ms):
        prev = b
        for _ in range(m):
            edges.append((prev, n))
            prev = n
            n += 1
    return build_graph(n, edges)


def _realize_dagger(d: Dagger) -> Graph:
    edges = [(0, 1), (0, 2), (0, 3)]
    prev = 0
    n = 4
    for _ in range(d.tail):
        edges.append((prev, n))
        prev = n
        n += 1
    return build_graph(n, edges)


def spec_diameter(spec: QuipuSpec) -> int:
    d = diameter(realize(spec))
    assert d is not None
    return d


def _open_param_diameter(ks, ms) -> int:
    """Exact diameter of an open quipu from its parameters (r >= 1): the
    farthest pair is backbone end to end, end to pendant tip, or tip to tip."""
    pos = []
    p = ks[0]
    for k in ks[1:-1]:
        pos.append(p)
        p += k + 1
    pos.append(p)
    length = p + ks[-1]
    best = length
    for i, m in enumerate(ms):
        best = max(best, pos[i] + m, length - pos[i] + m)
        for j in range(i):
            best = max(best, ms[j] + m + pos[i] - pos[j])
    return best


def _closed_param_diameter(ks, ms) -> int:
    """Exact diameter of a closed quipu from its parameters: cycle antipode,
    tip to antipode, or tip to tip through the shorter arc."""
    r = len(ks)
    c = sum(ks) + r
    pos = []
    p = 0
    for k in ks:
        pos.append(p)
        p += k + 1
    half = c // 2
    best = half + max(ms)
    for i in range(r):
        for j in range(i):
            gap = pos[i] - pos[j]
            best = max(best, ms[i] + ms[j] + min(gap, c - gap))
    return max(best, half)


# ---------------------------------------------------------------------------
# classification back to canonical parameters

def _walk_arm(g: Graph, start: int, first: int):
    """Follow the path leaving `start` through `first`; return its vertex
    count, or None if it runs into a vertex of degree >= 3."""
    length = 0
    prev, cur = start, first
    while True:
        length += 1
        deg = g.degree(cur)
        if deg == 1:
            return length
        if deg > 2:
            return None
        nxt = next(w for w in g.adj[cur] if w != prev)
        prev, cur = cur, nxt
    # unreachable


def _open_canonical(ks: tuple[int, ...], ms: tuple[int, ...]) -> OpenQuipu:
    """Least representative under end-arm swaps and reversal."""
    if len(ms) == 1:
        arms = sorted((ks[0], ks[1], ms[0]))
        return OpenQuipu((arms[0], arms[1]), (arms[2],))
    cands = []
    for kr, mr in ((ks, ms), (ks[::-1], ms[::-1])):
        for left in ((kr[0], mr[0]), (mr[0], kr[0])):
            for right in ((kr[-1], mr[-1]), (mr[-1], kr[-1])):
                cand_ks = (left[0],) + tuple(kr[1:-1]) + (right[0],)
                cand_ms = (left[1],) + tuple(mr[1:-1]) + (right[1],)
                cands.append((cand_ks + cand_ms, cand_ks, cand_ms))
    _, bk, bm = min(cands)
    return OpenQuipu(bk, bm)


def _closed_pair_candidates(ks, ms):
    r = len(ks)
    seqs = [list(zip(ms, ks))]
    refl_ms = [ms[0]] + [ms[r - 1 - i] for i in range(r - 1)]
    refl_ks = ks[::-1]
    seqs.append(list(zip(refl_ms, refl_ks)))
    for seq in seqs:
        for s in range(r):
            yield tuple(seq[s:] + seq[:s])


def _closed_canonical(ks: tuple[int, ...], ms: tuple[int, ...]) -> ClosedQuipu:
    """Least representative under rotation and reflection of the cycle."""
    best = min(_closed_pair_candidates(tuple(ks), tuple(ms)))
    bm = tuple(m for m, _ in best)
    bk = tuple(k for _, k in best)
    return ClosedQuipu(bk, bm)


def canonicalize(spec: QuipuSpec) -> QuipuSpec:
    """Canonical parameter tuple of the isomorphism class of realize(spec)."""
    out = classify(realize(spec))
    if out is None:
        raise ValueError(f"realization of {spec!r} did not classify")
    return out


def classify(g: Graph):
    """Parse a connected graph into a canonical family spec, or None.

    The parse is maximal: every reported branch vertex has degree 3, so all
    pendant lengths at branch vertices are >= 1 (degenerate zero parameters
    are accepted by realize() but never produced here). Paths classify as
    open quipus with ks=(0,0); cycles as closed quipus with a zero pendant.
    Daggers are recognized by their degree-4 center (tail >= 1).
    """
    if g.n == 0 or not is_connected(g):
        return None
    degs = [g.degree(v) for v in range(g.n)]
    maxdeg = max(degs)
    m = g.edge_count
    if maxdeg > 4:
        return None
    if maxdeg == 4:
        return _classify_dagger(g, degs)
    if m == g.n - 1:
        return _classify_tree(g, degs)
    if m == g.n:
        return _classify_unicyclic(g, degs)
    return None


def _classify_dagger(g: Graph, degs):
    if g.edge_count != g.n - 1:
        return None
    centers = [v for v in range(g.n) if degs[v] == 4]
    if len(centers) != 1 or any(d > 2 for d in degs if d != 4):
        return None
    c = centers[0]
    arms = [_walk_arm(g, c, w) for w in g.adj[c]]
    if any(a is None for a in arms):
        return None
    arms.sort()
    if arms[:3] != [1, 1, 1]:
        return None
    return Dagger(arms[3])


def _classify_tree(g: Graph, degs):
    branch = [v for v in range(g.n) if degs[v] == 3]
    if not branch:
        return OpenQuipu((0, 0), (g.n - 1,))
    if len(branch) == 1:
        b = branch[0]
        arms = [_walk_arm(g, b, w) for w in g.adj[b]]
        if any(a is None for a in arms):
            return None
        a0, a1, a2 = sorted(arms)
        return OpenQuipu((a0, a1), (a2,))
    # order the branch vertices along their common path
    dist0 = distances(g, branch[0])
    u = max(branch, key=lambda v: (dist0[v], v))
    distu = distances(g, u)
    w = max(branch, key=lambda v: (distu[v], v))
    path = _tree_path(g, u, w)
    if any(b not in set(path) for b in branch):
        return None
    order = [v for v in path if degs[v] == 3]
    gaps = []
    idx = {v: i for i, v in enumerate(path)}
    for a, b in zip(order, order[1:]):
        seg = path[idx[a] + 1 : idx[b]]
        if any(degs[v] != 2 for v in seg):
            return None
        gaps.append(len(seg))
    pend = []
    for i, b in enumerate(order[1:-1], start=1):
        off = [x for x in g.adj[b] if x not in (path[idx[b] - 1], path[idx[b] + 1])]
        arm = _walk_arm(g, b, off[0])
        if arm is None:
            return None
        pend.append(arm)
    end_arms = []
    for b, inward in ((order[0], path[idx[order[0]] + 1]),
                      (order[-1], path[idx[order[-1]] - 1])):
        offs = [x for x in g.adj[b] if x != inward]
        arms = [_walk_arm(g, b, x) for x in offs]
        if any(a is None for a in arms):
            return None
        end_arms.append(sorted(arms))
    ks = (end_arms[0][0],) + tuple(gaps) + (end_arms[1][0],)
    ms = (end_arms[0][1],) + tuple(pend) + (end_arms[1][1],)
    return _open_canonical(ks, ms)


def _tree_path(g: Graph, u: int, w: int) -> list[int]:
    parent = {u: None}
    stack = [u]
    while stack:
        v = stack.pop()
        if v == w:
            break
        for x in g.adj[v]:
            if x not in parent:
                parent[x] = v
                stack.append(x)
    path = [w]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def _classify_unicyclic(g: Graph, degs):
    cycle = two_core_cycle(g)
    cyc_set = set(cycle)
    if any(degs[v] == 3 and v not in cyc_set for v in range(g.n)):
        return None
    branch_pend = {}
    for v in cycle:
        if degs[v] == 3:
            off = next(x for x in g.adj[v] if x not in cyc_set)
            arm = _walk_arm(g, v, off)
            if arm is None:
                return None
            branch_pend[v] = arm
    if not branch_pend:
        return ClosedQuipu((g.n - 1,), (0,))
    order = [v for v in cycle if v in branch_pend]
    idx = {v: i for i, v in enumerate(cycle)}
    c = len(cycle)
    ks = []
    ms = []
    for a, b in zip(order, order[1:] + order[:1]):
        gap = (idx[b] - idx[a]) % c
        ks.append(gap - 1 if len(order) > 1 else c - 1)
        ms.append(branch_pend[a])
    return _closed_canonical(tuple(ks), tuple(ms))


# ---------------------------------------------------------------------------
# the tied family of order 3k+1 and diameter 2k

def theorem_family(k: int) -> list[OpenQuipu]:
    """The floor(k/2)+1 open quipus of order 3k+1 and diameter 2k that share
    the minimum spectral radius: ks=(i, i+j-1, j), ms=(i, j) over i+j=k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    for i in range(k // 2 + 1):
        j = k - i
        out.append(OpenQuipu((i, i + j - 1, j), (i, j)))
    return out


def spider(k: int) -> OpenQuipu:
    """The three-arm spider with arm length k (ks=(k,k), ms=(k,))."""
    return OpenQuipu((k, k), (k,))


# ---------------------------------------------------------------------------
# screening predicates

@dataclass(frozen=True)
class ScreenReport:
    """Structural screening verdicts for an open quipu.

    l_values / necessary_ok / sufficient_violation are only defined for
    specs in normalized form (ks[0] == ms[0], ks[-1] == ms[-1]) with r >= 2;
    otherwise they are None (not applicable). sufficient_violation=True
    certifies spectral radius > 3/sqrt(2); necessary_ok=False likewise.
    spd_ok records whether order n and diameter d satisfy 3d >= 2n-4, the
    bound every open quipu with radius below 3/sqrt(2) obeys for n >= 13.
    """

    l_values: tuple[int, ...] | None
    necessary_ok: bool | None
    sufficient_violation: bool | None
    spd_ok: bool


def _d1(x: int) -> int:
    return 1 if x == 1 else 0


def _necessary_conditions(ks, ms, r) -> bool:
    # interior segments
    for i in range(2, r):
        lhs = ks[i]
        rhs = ms[i - 1] + ms[i] + 1 - ceil((_d1(ms[i - 1]) + _d1(ms[i])) / 2)
        if lhs < rhs:
            return False
    k1 = ks[1]
    if k1 < ms[0] + ms[1] - ceil((3 * _d1(ms[0]) + _d1(ms[1])) / 2) - floor(
        (_d1(ms[0] - 1) + _d1(ms[1] - 1)) / 2
    ):
        return False
    kr = ks[r]
    if kr < ms[r] + ms[r - 1] - ceil((3 * _d1(ms[r]) + _d1(ms[r - 1])) / 2) - floor(
        (_d1(ms[r] - 1) + _d1(ms[r - 1] - 1)) / 2
    ):
        return False
    return True


def _sufficient_conditions(ks, ms, r) -> bool:
    for i in range(2, r):
        if ks[i] > ms[i - 1] + ms[i] + 2 - ceil((_d1(ms[i - 1]) + _d1(ms[i])) / 2):
            return False
    if ks[1] > ms[0] + ms[1] - ceil(
        (3 * _d1(ms[0]) + _d1(ms[1]) + _d1(ms[0] - 1)) / 2
    ):
        return False
    if ks[r] > ms[r - 1] + ms[r] - ceil(
        (3 * _d1(ms[r]) + _d1(ms[r - 1]) + _d1(ms[r] - 1)) / 2
    ):
        return False
    return True


def screen(spec: OpenQuipu) -> ScreenReport:
    """Exact structural screening of an open quipu."""
    g = realize(spec)
    n = g.n
    d = diameter(g)
    spd_ok = 3 * d >= 2 * n - 4
    r = spec.r
    ks, ms = spec.ks, spec.ms
    normalized = r >= 2 and ks[0] == ms[0] and ks[-1] == ms[-1]
    if not normalized:
        return ScreenReport(None, None, None, spd_ok)
    l1 = ks[1] + 2 - ms[0] - ms[1]
    lr = ks[r] + 2 - ms[r - 1] - ms[r]
    lmid = tuple(ks[i] - ms[i - 1] - ms[i] for i in range(2, r))
    l_values = (l1,) + lmid + (lr,)
    return ScreenReport(
        l_values,
        _necessary_conditions(ks, ms, r),
        _sufficient_conditions(ks, ms, r),
        spd_ok,
    )


# ---------------------------------------------------------------------------
# constrained enumeration

ALL_KINDS = frozenset({"open", "closed", "dagger"})


def enumerate_quipus(n: int, d: int, kinds=ALL_KINDS):
    """Yield every canonical family spec of order n and BFS diameter exactly d.

    Branch-and-prune over parameter tuples; diameter is always confirmed by
    BFS on the realization. Each isomorphism class appears exactly once.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    kinds = frozenset(kinds)
    if not kinds <= ALL_KINDS:
        raise ValueError(f"unknown kinds: {kinds - ALL_KINDS}")
    if "open" in kinds:
        yield from _enumerate_open(n, d)
    if "closed" in kinds:
        yield from _enumerate_closed(n, d)
    if "dagger" in kinds:
        yield from _enumerate_dagger(n, d)


def _enumerate_dagger(n: int, d: int):
    if n < 4:
        return
    t = n - 4
    dd = 2 if t == 0 else max(2, t + 1)
    if dd == d:
        yield Dagger(t)


def _enumerate_open(n: int, d: int):
    # degenerate path
    if d == n - 1 and (n >= 2 or d == 0):
        yield OpenQuipu((0, 0), (n - 1,))
    # single branch vertex: spider with arms a <= b <= c, all >= 1
    if n >= 4:
        for a in range(1, (n - 1) // 3 + 1):
            for b in range(a, (n - 1 - a) // 2 + 1):
                c = n - 1 - a - b
                if c < b or b + c != d:
                    continue
                spec = OpenQuipu((a, b), (c,))
                if spec_diameter(spec) == d:
                    yield spec
    # r+1 >= 2 branch vertices
    for r in range(1, (n - 4) // 2 + 1):
        yield from _enumerate_open_r(n, d, r)


def _compositions(total: int, parts: int, minima):
    """All tuples of the given length with prescribed minima summing to total."""
    if parts == 1:
        if total >= minima[0]:
            yield (total,)
        return
    for first in range(minima[0], total - sum(minima[1:]) + 1):
        for rest in _compositions(total - first, parts - 1, minima[1:]):
            yield (first,) + rest


def _enumerate_open_r(n: int, d: int, r: int):
    # segment sum s: backbone length s + r must not exceed the diameter
    budget = n - r - 1  # vertices left for segments + pendants
    for s in range(2, min(d - r, budget - (r + 1)) + 1):
        minima = (1,) + (0,) * r + (1,)
        for ks in _compositions(s, r + 2, minima):
            pos = []
            p = ks[0]
            for k in ks[1:-1]:
                pos.append(p)
                p += k + 1
            pos.append(p)
            backbone = p + ks[-1]
            if backbone != s + r:
                raise AssertionError
            rest = budget - s
            for ms in _pendants_with_diameter_cap(pos, backbone, rest, d):
                if _open_param_diameter(ks, ms) != d:
                    continue
                if (ks + ms) != min(
                    v[0] for v in _open_variants(ks, ms)
                ):
                    continue
                spec = OpenQuipu(ks, ms)
                if spec_diameter(spec) == d:
                    yield spec


def _open_variants(ks, ms):
    for kr, mr in ((ks, ms), (ks[::-1], ms[::-1])):
        for left in ((kr[0], mr[0]), (mr[0], kr[0])):
            for right in ((kr[-1], mr[-1]), (mr[-1], kr[-1])):
                ck = (left[0],) + tuple(kr[1:-1]) + (right[0],)
                cm = (left[1],) + tuple(mr[1:-1]) + (right[1],)
                yield (ck + cm, ck, cm)


def _pendants_with_diameter_cap(pos, backbone, total, d):
    """Pendant length tuples (each >= 1, summing to `total`) whose pairwise
    tip distances and tip-to-end distances stay within d."""
    r1 = len(pos)

    def rec(i, remaining, runmax, acc):
        if i == r1:
            if remaining == 0:
                yield tuple(acc)
            return
        slack = remaining - (r1 - 1 - i)
        cap = min(
            slack,
            d - pos[i],                 # left end to this tip
            d - (backbone - pos[i]),    # this tip to right end
            d - runmax - pos[i],        # farthest earlier tip to this tip
        )
        for m in range(1, cap + 1):
            acc.append(m)
            yield from rec(i + 1, remaining - m, max(runmax, m - pos[i]), acc)
            acc.pop()

    yield from rec(0, total, 0, [])


def _enumerate_closed(n: int, d: int):
    if n >= 3 and d == n // 2:
        yield ClosedQuipu((n - 1,), (0,))
    for c in range(3, n):  # cycle length; at least one pendant vertex remains
        if c // 2 > d:
            continue
        mcap = d - c // 2
        if mcap < 1:
            continue
        for r in range(1, min(c, n - c) + 1):
            for ks in _compositions(c - r, r, (0,) * r):
                pos = []
                p = 0
                for k in ks:
                    pos.append(p)
                    p += k + 1
                for ms in _cycle_pendants(pos, c, n - c, d, mcap):
                    if _closed_param_diameter(ks, ms) != d:
                        continue
                    if tuple(zip(ms, ks)) != min(_closed_pair_candidates(ks, ms)):
                        continue
                    spec = ClosedQuipu(ks, ms)
                    if spec_diameter(spec) == d:
                        yield spec


def _cycle_pendants(pos, c, total, d, mcap):
    r = len(pos)

    def rec(i, remaining, acc):
        if i == r:
            if remaining == 0:
                yield tuple(acc)
            return
        slack = remaining - (r - 1 - i)
        cap = min(slack, mcap)
        for m in range(1, cap + 1):
            ok = True
            for j in range(i):
                gap = abs(pos[i] - pos[j])
                cyc = min(gap, c - gap)
                if acc[j] + m + cyc > d:
                    ok = False
                    break
            if not ok:
                continue
            acc.append(m)
            yield from rec(i + 1, remaining - m, acc)
            acc.pop()

    yield from rec(0, total, [])


# ---------------------------------------------------------------------------
# spec literals

def spec_literal(spec: QuipuSpec) -> str:
    if isinstance(spec, OpenQuipu):
        return "open:ks=%s;ms=%s" % (
            ",".join(map(str, spec.ks)),
            ",".join(map(str, spec.ms)),
        )
    if isinstance(spec, ClosedQuipu):
        return "closed:ks=%s;ms=%s" % (
            ",".join(map(str, spec.ks)),
            ",".join(map(str, spec.ms)),
        )
    if isinstance(spec, Dagger):
        return f"dagger:t={spec.tail}"
    raise TypeError(f"not a family spec: {spec!r}")


def parse_spec_literal(text: str) -> QuipuSpec:
    """Parse `open:ks=...;ms=...`, `closed:ks=...;ms=...` or `dagger:t=...`
    (an optional `spec:` prefix is accepted)."""
    body = text.removeprefix("spec:")
    kind, _, rest = body.partition(":")
    try:
        if kind == "dagger":
            key, _, val = rest.partition("=")
            if key != "t":
                raise ValueError
            return Dagger(int(val))
        fields = dict(item.split("=") for item in rest.split(";"))
        ks = tuple(int(x) for x in fields["ks"].split(","))
        ms = tuple(int(x) for x in fields["ms"].split(","))
        if kind == "open":
            return OpenQuipu(ks, ms)
        if kind == "closed":
            return ClosedQuipu(ks, ms)
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed spec literal: {text!r}") from exc
    raise ValueError(f"unknown spec kind: {kind!r}")


def spec_to_json(spec: QuipuSpec) -> dict:
    if isinstance(spec, Dagger):
        return {"kind": "dagger", "tail": spec.tail}
    kind = "open" if isinstance(spec, OpenQuipu) else "closed"
    return {"kind": kind, "ks": list(spec.ks), "ms": list(spec.ms)}
