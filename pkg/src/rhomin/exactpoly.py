"""Exact characteristic polynomials and certified spectral radii.

All arithmetic is exact: integer polynomials, rational evaluation points,
Sturm-chain root counting. The spectral radius of a graph is delivered as a
shrinking isolating interval with exact sign evidence; comparisons between
two radii are decided by interval refinement plus an integer polynomial gcd
certificate for equality, never by floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import (
    Graph,
    GraphError,
    connected_components,
    delete_edge,
    delete_vertices,
    is_connected,
    two_core_cycle,
)

Rational = Fraction

DEFAULT_TOL = Fraction(1, 10**12)


# ---------------------------------------------------------------------------
# integer polynomials (coefficients lowest degree first)

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first.

    The zero polynomial is the empty coefficient tuple.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if c and c[-1] == 0:
            while c and c[-1] == 0:
                c = c[:-1]
            object.__setattr__(self, "coeffs", c)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(tuple(out))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def scale(self, k: int) -> "IntPoly":
        return IntPoly(tuple(k * c for c in self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def eval_at(self, x: Rational) -> Rational:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Rational) -> int:
        """Exact sign at a rational point, via the homogenized integer value."""
        if self.is_zero:
            return 0
        a, b = x.numerator, x.denominator
        acc = 0
        pw = 1
        for c in reversed(self.coeffs):
            acc = acc * a + c * pw
            pw *= b
        return (acc > 0) - (acc < 0)

    def content(self) -> int:
        return math.gcd(*(abs(c) for c in self.coeffs)) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Divide by the content; sign is preserved."""
        if self.is_zero:
            return self
        c = self.content()
        return IntPoly(tuple(k // c for k in self.coeffs))


ZERO = IntPoly(())
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def poly_to_json(p: IntPoly) -> list[str]:
    """Decimal coefficient strings, lowest degree first."""
    return [str(c) for c in p.coeffs]


def poly_from_json(items) -> IntPoly:
    return IntPoly(tuple(int(s) for s in items))


def _prem_positive(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder of f by g, scaled so it equals a *positive* rational
    multiple of the true remainder, reduced to primitive form."""
    r = list(f.coeffs)
    dg = g.degree
    gl = g.lead
    flips = 0
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        shift = len(r) - 1 - dg
        top = r[-1]
        r = [c * gl for c in r]
        flips += 1
        for i, c in enumerate(g.coeffs):
            r[i + shift] -= top * c
        r.pop()
    p = IntPoly(tuple(r))
    if gl < 0 and flips % 2 == 1:
        p = -p
    return p.primitive() if not p.is_zero else ZERO


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over the integers, positive leading coefficient."""
    a, b = a.primitive() if not a.is_zero else ZERO, b.primitive() if not b.is_zero else ZERO
    while not b.is_zero:
        a, b = b, _prem_positive(a, b)
    if a.is_zero:
        return ZERO
    return a if a.lead > 0 else -a


def poly_div_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a / b; raises if the division is not exact."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * max(1, len(a.coeffs) - len(b.coeffs) + 1)
    dg = b.degree
    bl = Fraction(b.lead)
    while len(rem) - 1 >= dg and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dg:
            break
        shift = len(rem) - 1 - dg
        coef = rem[-1] / bl
        q[shift] = coef
        for i, c in enumerate(b.coeffs):
            rem[i + shift] -= coef * c
        rem.pop()
    if any(rem):
        raise ValueError("inexact polynomial division")
    if any(c.denominator != 1 for c in q):
        raise ValueError("quotient is not an integer polynomial")
    return IntPoly(tuple(int(c) for c in q))


def square_free_part(p: IntPoly) -> IntPoly:
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return ONE
    g = poly_gcd(p, p.derivative())
    sf = poly_div_exact(p.primitive(), g)
    return sf if sf.lead > 0 else -sf


# ---------------------------------------------------------------------------
# Sturm chains

_sturm_cache: dict[tuple[int, ...], tuple[IntPoly, ...]] = {}


def sturm_chain(p: IntPoly) -> tuple[IntPoly, ...]:
    """Sturm chain of a square-free polynomial (positive rescaling allowed)."""
    key = p.coeffs
    hit = _sturm_cache.get(key)
    if hit is not None:
        return hit
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        nxt = -_prem_positive(chain[-2], chain[-1])
        if nxt.is_zero:
            break
        chain.append(nxt)
    result = tuple(chain)
    _sturm_cache[key] = result
    return result


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _var_at(chain, x: Rational) -> int:
    return _variations([q.sign_at(x) for q in chain])


def _var_at_inf(chain, positive: bool) -> int:
    signs = []
    for q in chain:
        if q.is_zero:
            signs.append(0)
        else:
            s = (q.lead > 0) - (q.lead < 0)
            if not positive and q.degree % 2 == 1:
                s = -s
            signs.append(s)
    return _variations(signs)


def count_roots_halfopen(chain, a: Rational, b: Rational) -> int:
    """Number of distinct real roots in (a, b] of the chain's first entry."""
    return _var_at(chain, a) - _var_at(chain, b)


def cauchy_root_bound(p: IntPoly) -> Rational:
    return 1 + max(Fraction(abs(c), abs(p.lead)) for c in p.coeffs)


# ---------------------------------------------------------------------------
# certified roots

class CertifiedRoot:
    """Isolating rational interval for the largest real root of a polynomial.

    Invariants: exactly one root of the square-free part lies in (lo, hi]
    and none lies above hi. `exact` marks a degenerate point interval.
    The interval only ever tightens; refine() mutates in place.
    """

    __slots__ = ("poly", "square_free", "lo", "hi", "exact", "_chain")

    def __init__(self, poly: IntPoly, square_free: IntPoly, lo: Rational,
                 hi: Rational, exact: bool, chain):
        self.poly = poly
        self.square_free = square_free
        self.lo = lo
        self.hi = hi
        self.exact = exact
        self._chain = chain

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def midpoint(self) -> Rational:
        return (self.lo + self.hi) / 2

    def as_float(self) -> float:
        return float(self.midpoint())

    def contains(self, x: Rational) -> bool:
        if self.exact:
            return x == self.lo
        return self.lo < x <= self.hi

    def refine(self, tol: Rational) -> "CertifiedRoot":
        """Shrink the interval to width <= tol (no-op once exact)."""
        if self.exact:
            return self
        sf = self.square_free
        s_lo = sf.sign_at(self.lo)
        while self.hi - self.lo > tol:
            mid = (self.lo + self.hi) / 2
            s = sf.sign_at(mid)
            if s == 0:
                self.lo = self.hi = mid
                self.exact = True
                return self
            if s == s_lo:
                self.lo = mid
            else:
                self.hi = mid
        return self

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "exact": self.exact,
            "poly": poly_to_json(self.poly),
        }


def rho_certified(p: IntPoly, tol: Rational = DEFAULT_TOL) -> CertifiedRoot:
    """Certified isolating interval for the largest real root of p."""
    if p.is_zero:
        raise ValueError("zero polynomial has no roots")
    if p.degree == 0:
        raise ValueError("constant polynomial has no roots")
    sf = square_free_part(p)
    chain = sturm_chain(sf)
    vinf = _var_at_inf(chain, True)
    upper = Fraction(max(1, p.degree))
    if _var_at(chain, upper) != vinf:
        upper = cauchy_root_bound(sf)
    lower = -cauchy_root_bound(sf)
    total = _var_at(chain, lower) - vinf
    if total <= 0:
        raise ValueError("polynomial has no real roots in range")
    lo, hi = lower, upper
    if sf.sign_at(hi) == 0:
        return CertifiedRoot(p, sf, hi, hi, True, chain)
    # bisect until (lo, hi] isolates exactly the largest root
    while count_roots_halfopen(chain, lo, hi) > 1:
        mid = (lo + hi) / 2
        if sf.sign_at(mid) == 0:
            return _largest_given_rational_root(p, sf, chain, mid, tol)
        if _var_at(chain, mid) - _var_at(chain, hi) >= 1:
            lo = mid
        else:
            hi = mid
    root = CertifiedRoot(p, sf, lo, hi, False, chain)
    # Rational roots of a monic integer polynomial are integers; once the
    # interval is narrower than 1 it can hold at most one integer, so a
    # single sign test decides whether the root is exactly rational.
    root.refine(Fraction(1, 2))
    if not root.exact:
        m = Fraction(math.floor(root.hi))
        if root.lo < m <= root.hi and sf.sign_at(m) == 0:
            root.lo = root.hi = m
            root.exact = True
    return root.refine(tol)


def _largest_given_rational_root(p, sf, chain, r: Rational, tol) -> "CertifiedRoot":
    """Finish isolation once a rational root r of sf has been found exactly."""
    q = poly_div_exact(sf, IntPoly((-r.numerator, r.denominator)))
    try:
        sub = rho_certified(q, tol)
    except ValueError:
        return CertifiedRoot(p, sf, r, r, True, chain)
    # the largest root of q is never r (sf is square-free); separate them
    while not sub.exact and sub.lo < r <= sub.hi:
        sub.refine(sub.width / 16)
    if sub.exact and sub.lo == r:  # pragma: no cover - excluded by square-freeness
        raise AssertionError("square-free part has a repeated root")
    if sub.hi < r or (sub.exact and sub.lo < r):
        return CertifiedRoot(p, sf, r, r, True, chain)
    return CertifiedRoot(p, sf, sub.lo, sub.hi, sub.exact, chain)


# ---------------------------------------------------------------------------
# characteristic polynomials

def charpoly_dense(g: Graph) -> IntPoly:
    """det(xI - A) by the exact integer Faddeev-LeVerrier recurrence."""
    n = g.n
    if n == 0:
        return ONE
    A = [[0] * n for _ in range(n)]
    for u, v in g.edges():
        A[u][v] = 1
        A[v][u] = 1
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        AM = [[sum(A[i][t] * M[t][j] for t in range(n) if A[i][t]) for j in range(n)]
              for i in range(n)]
        tr = sum(AM[i][i] for i in range(n))
        ck = -tr // k
        assert ck * k == -tr
        coeffs[n - k] = ck
        M = AM
        for i in range(n):
            M[i][i] += ck
    return IntPoly(tuple(coeffs))


def _forest_phi(g: Graph, verts: frozenset[int], memo: dict) -> IntPoly:
    """Characteristic polynomial of the induced subforest on `verts`."""
    if not verts:
        return ONE
    hit = memo.get(verts)
    if hit is not None:
        return hit
    deg = {v: sum(1 for w in g.adj[v] if w in verts) for v in verts}
    v = min((x for x in verts if deg[x] <= 1), default=None)
    if v is None:
        raise GraphError("induced subgraph is not a forest")
    if deg[v] == 0:
        result = _forest_phi(g, verts - {v}, memo) * X
    else:
        u = next(w for w in g.adj[v] if w in verts)
        result = _forest_phi(g, verts - {v}, memo) * X - _forest_phi(
            g, verts - {v, u}, memo
        )
    memo[verts] = result
    return result


def charpoly_recursive(g: Graph) -> IntPoly:
    """Characteristic polynomial via vertex/edge deletion recursions.

    Applies to graphs whose components are forests or unicyclic; a unicyclic
    component is reduced through an edge of its cycle, picking up the cycle
    correction term.
    """
    result = ONE
    for comp in connected_components(g):
        s = frozenset(comp)
        m = sum(1 for u, v in g.edges() if u in s and v in s)
        if m == len(comp) - 1:
            result = result * _forest_phi(g, s, {})
        elif m == len(comp):
            sub = delete_vertices(g, [v for v in range(g.n) if v not in s])
            result = result * _unicyclic_phi(sub)
        else:
            raise GraphError("component has two or more independent cycles")
    return result


def _unicyclic_phi(g: Graph) -> IntPoly:
    cycle = two_core_cycle(g)
    u, v = cycle[0], cycle[1]
    no_edge = delete_edge(g, u, v)
    phi_tree = _forest_phi(no_edge, frozenset(range(g.n)), {})
    phi_uv = charpoly_recursive(delete_vertices(g, [u, v]))
    phi_rest = charpoly_recursive(delete_vertices(g, cycle))
    return phi_tree - phi_uv - phi_rest.scale(2)


_charpoly_cache: dict[Graph, IntPoly] = {}


def charpoly(g: Graph) -> IntPoly:
    """Exact characteristic polynomial, using the recursion when applicable."""
    hit = _charpoly_cache.get(g)
    if hit is not None:
        return hit
    sparse = all(
        sum(1 for x, y in g.edges() if x in set(c)) <= len(c)
        for c in connected_components(g)
    )
    p = charpoly_recursive(g) if sparse else charpoly_dense(g)
    if len(_charpoly_cache) > 20000:
        _charpoly_cache.clear()
    _charpoly_cache[g] = p
    return p


def eval_at(p: IntPoly, x: Rational) -> Rational:
    return p.eval_at(Fraction(x))


# ---------------------------------------------------------------------------
# floating screen

def rho_float(g: Graph) -> tuple[float, float]:
    """Two-sided bracket for the spectral radius of a connected graph.

    Collatz-Wielandt bounds at the numerically computed principal vector,
    widened by a rounding margin: min_i (Av)_i/v_i <= rho <= max_i (Av)_i/v_i
    for any positive v.
    """
    if g.n == 0 or not is_connected(g):
        raise GraphError("rho_float requires a nonempty connected graph")
    if g.edge_count == 0:
        return (0.0, 0.0)
    A = np.zeros((g.n, g.n))
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1.0
    w, vecs = np.linalg.eigh(A)
    v = np.abs(vecs[:, -1])
    v = np.maximum(v, 1e-13)
    ratios = (A @ v) / v
    eps = 1e-9 * (1.0 + float(w[-1]))
    return (float(ratios.min()) - eps, float(ratios.max()) + eps)


# ---------------------------------------------------------------------------
# exact comparison of spectral radii

class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True)
class EqualityWitness:
    """Common integer factor with a shared isolating interval."""

    factor: IntPoly
    lo: Rational
    hi: Rational


_root_cache: dict[Graph, CertifiedRoot] = {}


def rho_certified_graph(g: Graph, tol: Rational = DEFAULT_TOL) -> CertifiedRoot:
    root = _root_cache.get(g)
    if root is None:
        root = rho_certified(charpoly(g), tol)
        if len(_root_cache) > 20000:
            _root_cache.clear()
        _root_cache[g] = root
    else:
        root.refine(tol)
    return root


_EQUAL_GATE = Fraction(1, 10**4)


def compare_roots(r1: CertifiedRoot, r2: CertifiedRoot):
    """Exact ordering of two certified largest roots.

    Returns (Ordering, EqualityWitness | None). Intervals are refined until
    disjoint; overlap triggers a gcd certificate for provable equality.
    """
    r1.refine(_EQUAL_GATE)
    r2.refine(_EQUAL_GATE)
    gcd = None
    for _ in range(300):
        if r1.hi < r2.lo or (r1.exact and not r2.exact and r1.hi <= r2.lo):
            return Ordering.LESS, None
        if r2.hi < r1.lo or (r2.exact and not r1.exact and r2.hi <= r1.lo):
            return Ordering.GREATER, None
        if r1.exact and r2.exact:
            if r1.lo == r2.lo:
                w = EqualityWitness(poly_gcd(r1.poly, r2.poly), r1.lo, r1.hi)
                return Ordering.EQUAL, w
            return (Ordering.LESS, None) if r1.lo < r2.lo else (Ordering.GREATER, None)
        if r1.exact or r2.exact:
            a, b = (r1, r2) if r1.exact else (r2, r1)
            if b.square_free.sign_at(a.lo) == 0 and b.contains(a.lo):
                w = EqualityWitness(poly_gcd(r1.poly, r2.poly), a.lo, a.lo)
                return Ordering.EQUAL, w
        else:
            if gcd is None:
                gcd = poly_gcd(r1.poly, r2.poly)
            if gcd.degree >= 1:
                lo = max(r1.lo, r2.lo)
                hi = min(r1.hi, r2.hi)
                chain = sturm_chain(square_free_part(gcd))
                if lo < hi and count_roots_halfopen(chain, lo, hi) >= 1:
                    return Ordering.EQUAL, EqualityWitness(gcd, lo, hi)
        r1.refine(r1.width / 256 if not r1.exact else r1.width)
        r2.refine(r2.width / 256 if not r2.exact else r2.width)
    raise RuntimeError("compare_roots failed to separate the intervals")


def compare_rho(g1: Graph, g2: Graph) -> Ordering:
    """Exact ordering of the spectral radii of two connected graphs."""
    order, _ = compare_roots(rho_certified_graph(g1), rho_certified_graph(g2))
    return order


def equal_rho_certificate(g1: Graph, g2: Graph):
    """(equal?, witness): provable equality of two spectral radii.

    The witness is the common integer polynomial factor together with an
    interval in which both certified radii and a root of the factor live.
    """
    order, witness = compare_roots(rho_certified_graph(g1), rho_certified_graph(g2))
    return order is Ordering.EQUAL, witness


def below_squared_threshold(root: CertifiedRoot, num: int, den: int) -> bool:
    """Decide root < sqrt(num/den) exactly for a positive root.

    Terminates whenever root^2 != num/den.
    """
    target = Fraction(num, den)
    for _ in range(300):
        if root.hi >= 0 and root.hi * root.hi < target:
            return True
        if root.lo > 0 and root.lo * root.lo > target:
            return False
        if root.exact:
            return root.lo * root.lo < target
        root.refine(root.width / 16)
    raise RuntimeError("threshold comparison did not converge")


def below_3_over_sqrt2(root: CertifiedRoot) -> bool:
    """Exact decision of root < 3/sqrt(2) (never equal for graph radii)."""
    return below_squared_threshold(root, 9, 2)
