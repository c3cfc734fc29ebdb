"""Quivers, dimension vectors, bilinear forms, reflections, and roots.

Dimension vectors are plain integer tuples; negativity is allowed so that
reflection arithmetic is total.  Vertices are 0-based internally; the JSON
interchange format is 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

DimVector = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph.  Parallel arrows and loops are permitted.

    Arrow order is part of the identity: representations carry one matrix
    per arrow, in this order.
    """

    vertex_count: int
    arrows: tuple  # tuple[tuple[int, int], ...] of (source, target)

    def __post_init__(self):
        if self.vertex_count <= 0:
            raise ValueError("quiver needs at least one vertex")
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for s, t in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError(f"arrow ({s},{t}) out of range")

    # -- basic structure --------------------------------------------------

    def arrows_into(self, a: int):
        return [k for k, (_, t) in enumerate(self.arrows) if t == a]

    def arrows_out_of(self, a: int):
        return [k for k, (s, _) in enumerate(self.arrows) if s == a]

    def has_loop_at(self, a: int) -> bool:
        return any(s == t == a for s, t in self.arrows)

    def is_sink(self, a: int) -> bool:
        return all(s != a for s, _ in self.arrows)

    def is_source(self, a: int) -> bool:
        return all(t != a for _, t in self.arrows)

    def sinks(self):
        return [a for a in range(self.vertex_count) if self.is_sink(a)]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((t, s) for s, t in self.arrows))

    def is_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        adj = {v: set() for v in range(self.vertex_count)}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    # -- JSON interchange (1-based indices) -------------------------------

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertex_count,
                           "arrows": [[s + 1, t + 1] for s, t in self.arrows]})

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(data["vertices"], tuple((s - 1, t - 1) for s, t in data["arrows"]))


# -- common quivers --------------------------------------------------------

def path_quiver(n: int) -> Quiver:
    """A_n with linear orientation 1 -> 2 -> ... -> n (0-based internally)."""
    return Quiver(n, tuple((i, i + 1) for i in range(n - 1)))


def kronecker_quiver() -> Quiver:
    return Quiver(2, ((0, 1), (0, 1)))


def jordan_quiver() -> Quiver:
    return Quiver(1, ((0, 0),))


def cycle_quiver(m: int) -> Quiver:
    """Oriented cycle with m vertices, arrows i -> i+1 mod m."""
    return Quiver(m, tuple((i, (i + 1) % m) for i in range(m)))


# -- dimension vector arithmetic -------------------------------------------

def dv_zero(n: int) -> DimVector:
    return (0,) * n


def dv_unit(n: int, i: int) -> DimVector:
    return tuple(1 if j == i else 0 for j in range(n))


def dv_add(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(a + b for a, b in zip(d, e))


def dv_sub(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(a - b for a, b in zip(d, e))


def dv_scale(k: int, d: Sequence[int]) -> DimVector:
    return tuple(k * a for a in d)


def dv_leq(d: Sequence[int], e: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(d, e))


def dv_nonneg(d: Sequence[int]) -> bool:
    return all(a >= 0 for a in d)


def _check_size(Q: Quiver, d: Sequence[int]):
    if len(d) != Q.vertex_count:
        raise ValueError(f"dimension vector {d} has wrong length for quiver "
                         f"with {Q.vertex_count} vertices")


# -- bilinear forms and reflections ----------------------------------------

def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d,e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j."""
    _check_size(Q, d)
    _check_size(Q, e)
    total = sum(a * b for a, b in zip(d, e))
    for s, t in Q.arrows:
        total -= d[s] * e[t]
    return total


def sym_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """(d,e) = <d,e> + <e,d>."""
    return euler_form(Q, d, e) + euler_form(Q, e, d)


def reflect_dimvec(Q: Quiver, a: int, d: Sequence[int]) -> DimVector:
    """sigma_a d = d - (d, eps_a) eps_a.  Requires no loop at a."""
    _check_size(Q, d)
    if Q.has_loop_at(a):
        raise ValueError(f"cannot reflect at vertex {a}: loop present")
    pairing = sym_form(Q, d, dv_unit(Q.vertex_count, a))
    return tuple(x - pairing if i == a else x for i, x in enumerate(d))


def reflect_quiver(Q: Quiver, a: int) -> Quiver:
    """Reverse all arrows starting or ending at a (involutive)."""
    if not (0 <= a < Q.vertex_count):
        raise ValueError(f"vertex {a} out of range")
    return Quiver(Q.vertex_count,
                  tuple((t, s) if s == a or t == a else (s, t) for s, t in Q.arrows))


# -- classification ---------------------------------------------------------

class QuiverKind(Enum):
    DYNKIN = "Dynkin"
    EXTENDED_DYNKIN = "ExtendedDynkin"
    OTHER = "Other"


@dataclass(frozen=True)
class QuiverClass:
    kind: QuiverKind
    delta: Optional[DimVector]  # present iff extended Dynkin


def _gram_matrix(Q: Quiver):
    n = Q.vertex_count
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for s, t in Q.arrows:
        g[s][t] -= 1
        g[t][s] -= 1
    return g


def _symmetric_psd_analysis(g):
    """Fraction-pivot LDL^T sweep on a symmetric matrix.

    Returns (is_psd, is_pd, kernel_basis).  A symmetric matrix with a zero
    diagonal pivot is psd only if the whole pivot row vanishes.
    """
    n = len(g)
    m = [[Fraction(x) for x in row] for row in g]
    # track row operations to read off the kernel afterwards
    trans = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    pd = True
    for k in range(n):
        if m[k][k] < 0:
            return False, False, []
        if m[k][k] == 0:
            pd = False
            if any(m[k][j] != 0 for j in range(k, n)):
                return False, False, []
            continue
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f == 0:
                continue
            for j in range(n):
                m[i][j] -= f * m[k][j]
                trans[i][j] -= f * trans[k][j]
    kernel = [trans[k] for k in range(n) if all(m[k][j] == 0 for j in range(n))]
    return True, pd, kernel


@lru_cache(maxsize=None)
def classify(Q: Quiver) -> QuiverClass:
    """Dynkin iff the symmetrised form is positive definite; extended Dynkin
    iff positive semi-definite with one-dimensional radical, delta being the
    minimal positive radical generator.
    """
    if not Q.is_connected():
        raise ValueError("classify requires a connected quiver")
    psd, pd, kernel = _symmetric_psd_analysis(_gram_matrix(Q))
    if pd:
        return QuiverClass(QuiverKind.DYNKIN, None)
    if psd and len(kernel) == 1:
        vec = kernel[0]
        denom = 1
        for x in vec:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        ints = [int(x * denom) for x in vec]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        ints = [x // g for x in ints]
        if any(x < 0 for x in ints):
            ints = [-x for x in ints]
        delta = tuple(ints)
        if not all(x > 0 for x in delta):
            raise AssertionError(f"radical generator {delta} is not sincere positive")
        if any(sym_form(Q, delta, dv_unit(Q.vertex_count, i)) != 0
               for i in range(Q.vertex_count)):
            raise AssertionError("radical generator fails (delta, eps_i) = 0")
        return QuiverClass(QuiverKind.EXTENDED_DYNKIN, delta)
    return QuiverClass(QuiverKind.OTHER, None)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def defect(Q: Quiver, d: Sequence[int]) -> int:
    """<delta, d>: negative on preprojective, zero on regular, positive on
    preinjective root classes.  Extended Dynkin acyclic only.
    """
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("defect is defined for extended Dynkin quivers")
    if admissible_ordering(Q) is None:
        raise ValueError("defect requires an acyclic quiver")
    return euler_form(Q, cls.delta, d)


# -- admissible orderings ----------------------------------------------------

@lru_cache(maxsize=None)
def admissible_ordering(Q: Quiver) -> Optional[tuple]:
    """Sink-first ordering (i_1,...,i_n), smallest-index sink chosen at each
    step; None iff Q has an oriented cycle.
    """
    remaining = set(range(Q.vertex_count))
    arrows = [(s, t) for s, t in Q.arrows if s != t]
    if len(arrows) != len(Q.arrows):
        return None  # loops are oriented cycles
    order = []
    while remaining:
        sinks = sorted(v for v in remaining
                       if all(s != v for s, t in arrows if t in remaining))
        if not sinks:
            return None
        v = sinks[0]
        order.append(v)
        remaining.discard(v)
        arrows = [(s, t) for s, t in arrows if s != v and t != v]
    return tuple(order)


# -- roots --------------------------------------------------------------------

def _support_connected(Q: Quiver, d: Sequence[int]) -> bool:
    supp = [i for i, x in enumerate(d) if x != 0]
    if not supp:
        return False
    adj = {v: set() for v in supp}
    for s, t in Q.arrows:
        if s in adj and t in adj:
            adj[s].add(t)
            adj[t].add(s)
    seen = {supp[0]}
    stack = [supp[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(supp)


def _in_fundamental_region(Q: Quiver, d: Sequence[int]) -> bool:
    if not (dv_nonneg(d) and any(d)):
        return False
    n = Q.vertex_count
    for i in range(n):
        if not Q.has_loop_at(i):
            if sym_form(Q, d, dv_unit(n, i)) > 0:
                return False
    return _support_connected(Q, d)


def root_kind(Q: Quiver, d: Sequence[int]) -> Optional[str]:
    """'real' / 'imaginary' if d is a positive root, else None.

    Height reduction: repeatedly reflect at a loop-free vertex with positive
    pairing; a positive real root reaches a simple root, a positive imaginary
    root reaches the fundamental region, anything else leaves the positive
    cone or stalls outside both.
    """
    _check_size(Q, d)
    cur = tuple(d)
    n = Q.vertex_count
    simples = [dv_unit(n, i) for i in range(n) if not Q.has_loop_at(i)]
    while True:
        if not dv_nonneg(cur) or not any(cur):
            return None
        if cur in simples:
            return "real"
        cand = None
        for i in range(n):
            if Q.has_loop_at(i):
                continue
            if sym_form(Q, cur, dv_unit(n, i)) > 0:
                cand = i
                break
        if cand is None:
            return "imaginary" if _in_fundamental_region(Q, cur) else None
        cur = reflect_dimvec(Q, cand, cur)


def positive_roots(Q: Quiver, bound: Sequence[int]):
    """All positive roots <= bound entrywise, as a sorted list of
    (DimVector, kind) pairs with kind in {'real', 'imaginary'}.
    """
    _check_size(Q, bound)
    if not dv_nonneg(bound):
        raise ValueError("bound must be nonnegative")
    out = []
    for d in _box_iter(bound):
        if not any(d):
            continue
        kind = root_kind(Q, d)
        if kind is not None:
            out.append((d, kind))
    return sorted(out)


def _box_iter(bound: Sequence[int]):
    if not bound:
        yield ()
        return
    for rest in _box_iter(bound[1:]):
        for x in range(bound[0] + 1):
            yield (x,) + rest


# -- Coxeter orbits of regular simples ----------------------------------------

def coxeter_dimvec(Q: Quiver, d: Sequence[int]) -> DimVector:
    """Dimension-vector Coxeter transform: sigma along the canonical
    admissible ordering.
    """
    order = admissible_ordering(Q)
    if order is None:
        raise ValueError("Coxeter transform needs an acyclic quiver")
    cur = tuple(d)
    R = Q
    for a in order:
        cur = reflect_dimvec(R, a, cur)
        R = reflect_quiver(R, a)
    return cur


def regular_simple_dims(Q: Quiver):
    """Coxeter orbits of dimension vectors of regular simples in the
    inhomogeneous tubes of an acyclic extended Dynkin quiver.

    Each orbit is listed as (d, C d, C^2 d, ...) starting from its
    lexicographically smallest member; orbits are sorted by that member.
    An orbit of regular simples has period >= 2 and sums to delta.
    """
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("regular simples live on extended Dynkin quivers")
    if admissible_ordering(Q) is None:
        raise ValueError("acyclic quiver required")
    delta = cls.delta
    candidates = {d for d, kind in positive_roots(Q, delta)
                  if kind == "real" and defect(Q, d) == 0 and d != delta}
    orbits = []
    seen = set()
    for d in sorted(candidates):
        if d in seen:
            continue
        orbit = [d]
        cur = coxeter_dimvec(Q, d)
        while cur != d:
            if not dv_nonneg(cur) or len(orbit) > len(candidates):
                orbit = None
                break
            orbit.append(cur)
            cur = coxeter_dimvec(Q, cur)
        if orbit is None:
            continue
        seen.update(orbit)
        total = dv_zero(Q.vertex_count)
        for v in orbit:
            total = dv_add(total, v)
        if total == delta and len(orbit) >= 2:
            base = min(orbit)
            k = orbit.index(base)
            orbits.append(tuple(orbit[k:] + orbit[:k]))
    return sorted(orbits)


# -- total order on preprojective / preinjective Schur roots -------------------

def sigma_counter(Q: Quiver, d: Sequence[int]) -> Optional[int]:
    """Number of sink reflections along the repeated canonical admissible
    ordering until the vector dies (hits eps_a at the reflected-at vertex).
    None if it survives a generous bound (non-preprojective input).
    """
    order = admissible_ordering(Q)
    if order is None:
        raise ValueError("acyclic quiver required")
    cur, R = tuple(d), Q
    steps = 0
    limit = Q.vertex_count * (sum(abs(x) for x in d) + 2) * 4 + 8
    while steps < limit:
        for a in order:
            steps += 1
            if cur == dv_unit(Q.vertex_count, a):
                return steps
            cur = reflect_dimvec(R, a, cur)
            R = reflect_quiver(R, a)
            if not dv_nonneg(cur):
                return None
    return None


def schur_total_order(Q: Quiver, roots: Iterable[DimVector]):
    """Deterministic total order on preprojective and preinjective roots.

    Preprojectives come first, ordered by the sink-reflection counter of the
    canonical admissible ordering; preinjectives follow, ordered by the dual
    counter descending.  Ties broken lexicographically.  For Dynkin quivers
    every root counts as preprojective.  Regular roots are rejected.
    """
    roots = list(roots)
    cls = classify(Q)
    pre, post = [], []
    for d in roots:
        if cls.kind is QuiverKind.DYNKIN:
            pre.append(d)
            continue
        dd = defect(Q, d)
        if dd < 0:
            pre.append(d)
        elif dd > 0:
            post.append(d)
        else:
            raise ValueError(f"regular root {d} has no place in the P/I order")
    pre_keyed = []
    for d in pre:
        s = sigma_counter(Q, d)
        if s is None:
            raise ValueError(f"{d} is not a preprojective root")
        pre_keyed.append((0, s, d))
    post_keyed = []
    Qop = Q.opposite()
    for d in post:
        s = sigma_counter(Qop, d)  # source reflections on Q = sinks on Q^op
        if s is None:
            raise ValueError(f"{d} is not a preinjective root")
        post_keyed.append((1, -s, d))
    return [d for _, _, d in sorted(pre_keyed) + sorted(post_keyed)]


# -- filtrations ----------------------------------------------------------------

def is_filtration(steps: Sequence[DimVector]) -> bool:
    """d^0 = 0 and entrywise monotone."""
    if not steps:
        return False
    if any(steps[0]):
        return False
    return all(dv_leq(steps[i], steps[i + 1]) for i in range(len(steps) - 1))


def is_filtration_of(steps: Sequence[DimVector], dim: DimVector) -> bool:
    return is_filtration(steps) and tuple(steps[-1]) == tuple(dim)
