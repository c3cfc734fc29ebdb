"""Canonical indecomposables and isomorphism-class families for the
representation-finite and tame test quivers.

Preprojective and preinjective indecomposables are built by reflection
functors from simples (walking the root back along the admissible ordering);
small regular rigid ones by exhaustive search; homogeneous regular simples
by scanning Rep(delta)(F_p).  Direct sums of these realise every relevant
isomorphism class at desk scale, which is what the brute-force ext oracle
and the fingerprint classifiers need.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import ffrep
from .quiver import (DimVector, Quiver, QuiverKind, admissible_ordering,
                     classify, defect, dv_add, dv_leq, dv_nonneg, dv_scale,
                     dv_sub, dv_unit, dv_zero, positive_roots, reflect_dimvec,
                     reflect_quiver, regular_simple_dims)

_SEARCH_CAP = 500_000


def _sigma_walk(Q: Quiver, root: DimVector):
    """Sink-reflection walk of a dimension vector along the repeated
    admissible ordering until it hits a simple; returns the list of
    (quiver, vertex) steps taken and the death vertex, or None if the
    vector is not annihilated this way (not preprojective).
    """
    order = admissible_ordering(Q)
    if order is None:
        raise ValueError("acyclic quiver required")
    steps: List[Tuple[Quiver, int]] = []
    cur, R = tuple(root), Q
    limit = Q.vertex_count * (sum(abs(x) for x in root) + 2) * 4 + 8
    while len(steps) < limit:
        for a in order:
            if cur == dv_unit(Q.vertex_count, a):
                return steps, R, a
            nxt = reflect_dimvec(R, a, cur)
            if not dv_nonneg(nxt):
                return None
            steps.append((R, a))
            cur, R = nxt, reflect_quiver(R, a)
    return None


_indec_cache: Dict[tuple, ffrep.FpRep] = {}


def canonical_indec(Q: Quiver, root: DimVector, p: int) -> ffrep.FpRep:
    """A representative of the unique indecomposable with a given real Schur
    root: reflection-built for preprojectives/preinjectives, first rigid
    point of Rep(root)(F_p) in lexicographic order for small regular roots.
    """
    key = (Q, tuple(root), p)
    if key in _indec_cache:
        return _indec_cache[key]
    walk = _sigma_walk(Q, root)
    if walk is not None:
        steps, R_death, a = walk
        M = ffrep.simple_rep(R_death, p, a)
        for R_before, b in reversed(steps):
            # b was a sink of R_before, hence a source of the quiver M lives on
            M = ffrep.reflect_rep_source(b, M)
            if M.quiver != R_before:
                raise AssertionError("reflection walk lost track of the quiver")
        if M.dims != tuple(root):
            raise AssertionError(f"built dims {M.dims}, wanted {root}")
        _indec_cache[key] = M
        return M
    walk_op = _sigma_walk(Q.opposite(), root)
    if walk_op is not None:
        M = ffrep.dualize(canonical_indec(Q.opposite(), root, p))
        _indec_cache[key] = M
        return M
    # regular real Schur root: exhaustive rigidity search
    size = p ** sum(root[s] * root[t] for s, t in Q.arrows)
    if size > _SEARCH_CAP:
        raise ValueError(f"regular root {root} too large for exhaustive search")
    for M in ffrep.all_reps(Q, p, root):
        if ffrep.hom_dim(M, M) == 1:
            _indec_cache[key] = M
            return M
    raise ValueError(f"no rigid representation of dimension {root} over F_{p}")


def rep_of_root_multiset(Q: Quiver, items: Sequence[Tuple[DimVector, int]],
                         p: int) -> ffrep.FpRep:
    """Direct sum of canonical indecomposables with multiplicities."""
    M = ffrep.zero_rep(Q, p)
    for root, mult in items:
        ind = canonical_indec(Q, tuple(root), p)
        for _ in range(mult):
            M = ffrep.direct_sum(M, ind)
    return M


# -- Dynkin classification by fingerprints --------------------------------------

def root_multisets_of_dim(Q: Quiver, d: DimVector) -> List[tuple]:
    """All multisets of positive roots summing to d, each as a sorted tuple
    of (root, multiplicity).
    """
    roots = [r for r, _ in positive_roots(Q, d)]
    out: List[tuple] = []

    def dfs(idx: int, remaining: DimVector, chosen: list):
        if not any(remaining):
            out.append(tuple(chosen))
            return
        if idx == len(roots):
            return
        dfs(idx + 1, remaining, chosen)
        cur = remaining
        mult = 0
        while dv_leq(roots[idx], cur):
            cur = dv_sub(cur, roots[idx])
            mult += 1
            dfs(idx + 1, cur, chosen + [(roots[idx], mult)])

    dfs(0, tuple(d), [])
    return sorted(out)


@lru_cache(maxsize=None)
def _dynkin_tests(Q: Quiver, bound: DimVector, p: int) -> tuple:
    return tuple(canonical_indec(Q, r, p)
                 for r, kind in positive_roots(Q, bound) if kind == "real")


@lru_cache(maxsize=None)
def _dynkin_fingerprint_table(Q: Quiver, dims: DimVector, p: int):
    tests = _dynkin_tests(Q, dims, p)
    table = {}
    for ms in root_multisets_of_dim(Q, dims):
        fp = ffrep.hom_fingerprint(rep_of_root_multiset(Q, ms, p), tests)
        if fp in table:
            raise AssertionError("Hom fingerprints fail to separate classes")
        table[fp] = ms
    return table


def classify_dynkin_rep(M: ffrep.FpRep) -> tuple:
    """Root multiset of a representation of a Dynkin quiver, by Hom
    fingerprints against all indecomposables below its dimension.
    """
    Q = M.quiver
    if classify(Q).kind is not QuiverKind.DYNKIN:
        raise ValueError("classification by root multisets is Dynkin-only")
    tests = _dynkin_tests(Q, M.dims, M.p)
    probe = ffrep.hom_fingerprint(M, tests)
    table = _dynkin_fingerprint_table(Q, M.dims, M.p)
    if probe not in table:
        raise AssertionError("representation matches no root multiset fingerprint")
    return table[probe]


# -- tame structure ---------------------------------------------------------------

@lru_cache(maxsize=None)
def inhomogeneous_tube_orbits(Q: Quiver) -> tuple:
    return tuple(regular_simple_dims(Q))


@lru_cache(maxsize=None)
def homogeneous_simples(Q: Quiver, p: int) -> tuple:
    """Representatives of the homogeneous regular simples (dimension delta)
    over F_p, pairwise non-isomorphic, in deterministic order.
    """
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("homogeneous tubes live on extended Dynkin quivers")
    delta = cls.delta
    inhom_simples = [canonical_indec(Q, r, p)
                     for orbit in inhomogeneous_tube_orbits(Q) for r in orbit]
    found: List[ffrep.FpRep] = []
    for M in ffrep.all_reps(Q, p, delta):
        if ffrep.hom_dim(M, M) != 1:
            continue
        if any(ffrep.hom_dim(M, T) or ffrep.hom_dim(T, M) for T in inhom_simples):
            continue
        if any(ffrep.hom_dim(M, R) for R in found):
            continue
        found.append(M)
    return tuple(found)


def _monic_irreducibles(p: int, degree: int):
    """Monic irreducible polynomials of degree 2 or 3 over F_p (coefficient
    lists, constant first): no roots suffices at these degrees.
    """
    from itertools import product as ip
    if degree not in (2, 3):
        raise ValueError("only degrees 2 and 3 are needed")
    out = []
    for coeffs in ip(range(p), repeat=degree):
        poly = list(coeffs) + [1]
        if all(sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p for x in range(p)):
            out.append(poly)
    return out


def _companion(poly, p: int):
    d = len(poly) - 1
    m = [[0] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = 1
    for i in range(d):
        m[i][d - 1] = (-poly[i]) % p
    return m


@lru_cache(maxsize=None)
def higher_degree_homogeneous(Q: Quiver, p: int, degree: int) -> tuple:
    """Regular simples of the given degree (dimension degree * delta):
    companion-matrix models on the Kronecker quiver, bounded search
    elsewhere.  These make generic sums of delta-multiples visible to the
    brute-force oracle over small prime fields.
    """
    from .quiver import kronecker_quiver
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("extended Dynkin quiver required")
    if Q == kronecker_quiver():
        ident = [[1 if i == j else 0 for j in range(degree)] for i in range(degree)]
        return tuple(ffrep.make_rep(Q, p, (degree, degree), [ident, _companion(f, p)])
                     for f in _monic_irreducibles(p, degree))
    delta = cls.delta
    dims = tuple(degree * x for x in delta)
    size = p ** sum(dims[s] * dims[t] for s, t in Q.arrows)
    if size > _SEARCH_CAP:
        return ()
    inhom = [canonical_indec(Q, r, p)
             for orbit in inhomogeneous_tube_orbits(Q) for r in orbit]
    rational = list(homogeneous_simples(Q, p))
    lower = [R for dd in range(2, degree)
             for R in higher_degree_homogeneous(Q, p, dd)]
    found: List[ffrep.FpRep] = []
    for M in ffrep.all_reps(Q, p, dims):
        if ffrep.hom_dim(M, M) != degree:
            continue
        if any(ffrep.hom_dim(M, T) or ffrep.hom_dim(T, M)
               for T in inhom + rational + lower):
            continue
        if any(ffrep.hom_dim(M, R) for R in found):
            continue
        found.append(M)
    return tuple(found)


def kronecker_regular(p: int, point: int, length: int) -> ffrep.FpRep:
    """R_x[length] on the Kronecker quiver: identity against a Jordan block
    at x; point = p encodes the point at infinity.
    """
    from .quiver import kronecker_quiver
    if not (0 <= point <= p):
        raise ValueError("point index must lie in 0..p (p = infinity)")
    ident = [[1 if i == j else 0 for j in range(length)] for i in range(length)]
    jordan = [[0] * length for _ in range(length)]
    for i in range(length - 1):
        jordan[i][i + 1] = 1
    if point < p:
        for i in range(length):
            jordan[i][i] = point
        mats = [ident, jordan]
    else:
        mats = [jordan, ident]
    return ffrep.make_rep(kronecker_quiver(), p, (length, length), mats)


# -- iso-class families for the oracle --------------------------------------------

def _available_indecomposables(Q: Quiver, bound: DimVector, p: int):
    """(description, FpRep) pairs: rigid indecomposables for every real Schur
    root <= bound, plus one homogeneous regular simple per rational point.
    Covers every summand of a generic representation at desk scale.
    """
    cls = classify(Q)
    out = []
    for r, kind in positive_roots(Q, bound):
        if kind != "real":
            continue
        if cls.kind is QuiverKind.EXTENDED_DYNKIN:
            # regular real roots are Schur only below delta
            if defect(Q, r) == 0 and not (dv_leq(r, cls.delta) and r != cls.delta):
                continue
        out.append((("root", r), canonical_indec(Q, r, p)))
    if cls.kind is QuiverKind.EXTENDED_DYNKIN and dv_leq(cls.delta, bound):
        for idx, R in enumerate(homogeneous_simples(Q, p)):
            out.append((("homog", idx), R))
        for degree in (2, 3):
            if dv_leq(dv_scale(degree, cls.delta), bound):
                for idx, R in enumerate(higher_degree_homogeneous(Q, p, degree)):
                    out.append((("homog", (degree, idx)), R))
    return out


def isoclass_family(Q: Quiver, d: DimVector, p: int,
                    distinct_homog: bool = True) -> List[ffrep.FpRep]:
    """Direct sums of available indecomposables with total dimension d.

    With distinct_homog=True each homogeneous simple appears at most once
    per summand slot (matching generic decompositions); the family then
    contains the generic representation of d whenever enough rational
    points exist.
    """
    avail = _available_indecomposables(Q, tuple(d), p)
    out: List[ffrep.FpRep] = []

    def dfs(idx: int, remaining: DimVector, chosen: list):
        if not any(remaining):
            out.append(ffrep.direct_sum_all(chosen, Q, p))
            return
        if idx == len(avail):
            return
        (tag, _), rep = avail[idx][0], avail[idx][1]
        dfs(idx + 1, remaining, chosen)
        cur = remaining
        mult = 0
        cap = 1 if (tag == "homog" and distinct_homog) else None
        while dv_leq(rep.dims, cur) and (cap is None or mult < cap):
            cur = dv_sub(cur, rep.dims)
            mult += 1
            dfs(idx + 1, cur, chosen + [rep] * mult)

    dfs(0, tuple(d), [])
    return out


def ext_oracle_min(Q: Quiver, d: DimVector, e: DimVector,
                   primes: Sequence[int] = (2, 3)) -> int:
    """Brute-force minimum of [M,N]^1 over the structured iso-class families
    of d and e, over the given prime fields.  Equals ext(d,e) whenever the
    generic pair is realisable over one of the fields.
    """
    if not any(d) or not any(e):
        return 0
    best: Optional[int] = None
    for p in primes:
        fam_d = isoclass_family(Q, tuple(d), p)
        fam_e = isoclass_family(Q, tuple(e), p)
        for M in fam_d:
            for N in fam_e:
                v = ffrep.ext_dim(M, N)
                if best is None or v < best:
                    best = v
                    if best == 0:
                        return 0
    if best is None:
        raise ValueError(f"no representations of {d} or {e} in the family")
    return best
