"""Schur-root words, generic ext, canonical decomposition, rewriting to the
partial normal form, the extended Dynkin normal form, and PBW counting.

ext(d, e) is the generic value of dim Ext(M, N) for M of dimension d and N
of dimension e; a representation of dimension d+e always has a
subrepresentation of dimension d iff ext(d, e) = 0.  The recursion is
Schofield's: ext(d, e) = max(-<d', e>) over generic subvectors d' of d.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from . import cyclic, ffrep, tame
from .quiver import (DimVector, Quiver, QuiverKind, classify, defect,
                     dv_add, dv_leq, dv_nonneg, dv_scale, dv_sub, dv_unit,
                     dv_zero, euler_form, positive_roots, root_kind,
                     schur_total_order)

_ext_cache: Dict[tuple, int] = {}


def _subvectors(d: DimVector):
    return iproduct(*(range(x + 1) for x in d))


def ext_generic(Q: Quiver, d: DimVector, e: DimVector) -> int:
    """Generic ext over an algebraically closed field, by the subvector
    recursion; memoised.  Dynkin/extended Dynkin only (the recursion itself
    is general, the guarantee is not).
    """
    d, e = tuple(d), tuple(e)
    if not (dv_nonneg(d) and dv_nonneg(e)):
        raise ValueError("ext_generic needs nonnegative dimension vectors")
    if classify(Q).kind is QuiverKind.OTHER:
        raise ValueError("ext_generic supports Dynkin and extended Dynkin quivers")
    return _ext_rec(Q, d, e)


def _ext_rec(Q: Quiver, d: DimVector, e: DimVector) -> int:
    if not any(d) or not any(e):
        return 0
    key = (Q, d, e)
    if key in _ext_cache:
        return _ext_cache[key]
    _ext_cache[key] = 0  # cut self-reference on (d, 0) style corners
    best = 0
    for dp in _subvectors(d):
        if not any(dp):
            continue
        if _ext_rec(Q, dp, dv_sub(d, dp)) != 0:
            continue
        best = max(best, -euler_form(Q, dp, e))
    _ext_cache[key] = best
    return best


def can_embed(Q: Quiver, dp: DimVector, d: DimVector) -> bool:
    """Every (equivalently the generic) representation of dimension d has a
    subrepresentation of dimension dp iff ext(dp, d - dp) = 0.
    """
    if not dv_leq(dp, d):
        return False
    return ext_generic(Q, tuple(dp), dv_sub(d, dp)) == 0


def is_schur_root(Q: Quiver, d: DimVector) -> bool:
    """d is Schur iff the generic representation is indecomposable with
    trivial endomorphisms: no proper split d = a + b with ext vanishing in
    both directions, and self-ext zero unless d is the isotropic root.
    """
    d = tuple(d)
    kind = root_kind(Q, d)
    if kind is None:
        return False
    cls = classify(Q)
    if kind == "imaginary":
        return cls.kind is QuiverKind.EXTENDED_DYNKIN and d == cls.delta
    for a in _subvectors(d):
        if not any(a) or a == d:
            continue
        b = dv_sub(d, a)
        if ext_generic(Q, a, b) == 0 and ext_generic(Q, b, a) == 0:
            return False
    return True


def schur_roots_below(Q: Quiver, bound: DimVector) -> List[DimVector]:
    return [r for r, _ in positive_roots(Q, bound) if is_schur_root(Q, r)]


def canonical_decomposition(Q: Quiver, d: DimVector) -> tuple:
    """The unique decomposition of d into Schur roots with pairwise vanishing
    ext (self-ext zero where a multiplicity exceeds one), as a sorted tuple
    of (multiplicity, root).  Exhaustive filtered search; raises if the
    search does not find exactly one decomposition.
    """
    d = tuple(d)
    if not any(d):
        return ()
    roots = schur_roots_below(Q, d)
    found: List[tuple] = []

    def compatible(choice: List[Tuple[int, DimVector]]) -> bool:
        for i, (mi, fi) in enumerate(choice):
            if mi > 1 and ext_generic(Q, fi, fi) != 0:
                return False
            for j, (mj, fj) in enumerate(choice):
                if i != j and ext_generic(Q, fi, fj) != 0:
                    return False
        return True

    def dfs(idx: int, remaining: DimVector, chosen: list):
        if not any(remaining):
            if compatible(chosen):
                found.append(tuple(sorted((m, f) for m, f in chosen)))
            return
        if idx == len(roots):
            return
        dfs(idx + 1, remaining, chosen)
        cur = remaining
        mult = 0
        while dv_leq(roots[idx], cur):
            cur = dv_sub(cur, roots[idx])
            mult += 1
            dfs(idx + 1, cur, chosen + [(mult, roots[idx])])

    dfs(0, d, [])
    if len(found) != 1:
        raise AssertionError(
            f"canonical decomposition of {d}: found {len(found)} candidates {found}")
    return found[0]


# -- Schur words and rewriting ----------------------------------------------------

@dataclass(frozen=True)
class SchurWord:
    """A product of generators <mult * root> of the Schur root monoid."""

    quiver: Quiver
    factors: tuple  # tuple of (mult >= 1, root)

    def __post_init__(self):
        facs = tuple((int(m), tuple(r)) for m, r in self.factors)
        for m, r in facs:
            if m < 1:
                raise ValueError("factor multiplicities must be positive")
            if not is_schur_root(self.quiver, r):
                raise ValueError(f"{r} is not a Schur root")
        object.__setattr__(self, "factors", facs)

    def weight(self) -> DimVector:
        d = dv_zero(self.quiver.vertex_count)
        for m, r in self.factors:
            d = dv_add(d, dv_scale(m, r))
        return d


def word_from_vertices(Q: Quiver, word: Sequence[int]) -> SchurWord:
    return SchurWord(Q, tuple((1, dv_unit(Q.vertex_count, v)) for v in word))


def _root_class(Q: Quiver, r: DimVector) -> str:
    cls = classify(Q)
    if cls.kind is QuiverKind.DYNKIN:
        return "P"
    dd = defect(Q, r)
    return "P" if dd < 0 else ("I" if dd > 0 else "R")


def _forward_bad(Q: Quiver, left, right) -> bool:
    (_, d), (_, e) = left, right
    if _root_class(Q, d) == "R" and _root_class(Q, e) == "R":
        return False
    return ext_generic(Q, d, e) != 0


def _commutes(Q: Quiver, f, g) -> bool:
    (_, d), (_, e) = f, g
    return ext_generic(Q, d, e) == 0 and ext_generic(Q, e, d) == 0


def _apply_rel1(Q: Quiver, left, right) -> Optional[tuple]:
    """Relation (1): <s d> * <t e> = canonical decomposition factors of
    s d + t e, applicable when ext(e, d) = 0 and d or e is real.
    """
    (s, d), (t, e) = left, right
    if ext_generic(Q, e, d) != 0:
        return None
    if root_kind(Q, d) != "real" and root_kind(Q, e) != "real":
        return None
    target = dv_add(dv_scale(s, d), dv_scale(t, e))
    return tuple(canonical_decomposition(Q, target))


def _potential(Q: Quiver, factors) -> int:
    total = 0
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            (si, di), (sj, dj) = factors[i], factors[j]
            total += ext_generic(Q, dv_scale(si, di), dv_scale(sj, dj))
    return total


def _final_sort(Q: Quiver, factors) -> tuple:
    """Sort a bad-pair-free word into P.R.I with ≺_t inside P and I and
    equal adjacent real roots merged (relations (1) and (2) only)."""
    pre = [f for f in factors if _root_class(Q, f[1]) == "P"]
    reg = [f for f in factors if _root_class(Q, f[1]) == "R"]
    post = [f for f in factors if _root_class(Q, f[1]) == "I"]

    def sort_merge(block):
        if not block:
            return []
        order = {r: i for i, r in enumerate(schur_total_order(Q, [f[1] for f in block]))}
        block = sorted(block, key=lambda f: order[f[1]])
        merged: List[tuple] = []
        for m, r in block:
            if merged and merged[-1][1] == r:
                merged[-1] = (merged[-1][0] + m, r)
            else:
                merged.append((m, r))
        return merged

    return tuple(sort_merge(pre) + list(reg) + sort_merge(post))


def rewrite_partial_normal_form(word: SchurWord) -> SchurWord:
    """Rewrite into P.R.I form: innermost eligible bad pair is brought
    adjacent by commutations and resolved by relation (1); the potential
    sum of forward exts strictly decreases, so this terminates.  A small
    breadth-first fallback over commutation-equivalent words covers corner
    cases where the innermost bad pair is not directly transportable.
    """
    Q = word.quiver
    if classify(Q).kind is QuiverKind.OTHER:
        raise ValueError("rewriting supports Dynkin and extended Dynkin quivers")
    factors = tuple(word.factors)
    guard = 0
    while True:
        guard += 1
        if guard > 10_000:
            raise AssertionError("rewriting failed to terminate")
        bad = [(j - i, i, j) for i in range(len(factors))
               for j in range(i + 1, len(factors))
               if _forward_bad(Q, factors[i], factors[j])]
        if not bad:
            return SchurWord(Q, _final_sort(Q, factors))
        resolved = _resolve_one(Q, factors, sorted(bad))
        if resolved is None:
            resolved = _bfs_resolve(Q, factors)
        if resolved is None:
            raise AssertionError(f"no applicable relation on {factors}")
        if _potential(Q, resolved) >= _potential(Q, factors):
            raise AssertionError("rewriting potential failed to decrease")
        factors = resolved


def _resolve_one(Q, factors, bad_sorted):
    for _, i, j in bad_sorted:
        if any(ext_generic(Q, factors[k][1], factors[l][1]) != 0
               for k in range(i, j + 1) for l in range(k + 1, j + 1)
               if (k, l) != (i, j)):
            continue  # interior not clean; transport lemma does not apply as is
        work = list(factors)
        lo, hi = i, j
        while hi > lo + 1:
            moved = False
            for l in range(lo + 1, hi):
                if all(_commutes(Q, work[l], work[k]) for k in range(lo, l)):
                    f = work.pop(l)
                    work.insert(lo, f)
                    lo += 1
                    moved = True
                    break
                if all(_commutes(Q, work[l], work[k]) for k in range(l + 1, hi + 1)):
                    f = work.pop(l)
                    work.insert(hi, f)
                    hi -= 1
                    moved = True
                    break
            if not moved:
                break
        if hi != lo + 1:
            continue
        repl = _apply_rel1(Q, work[lo], work[hi])
        if repl is None:
            continue
        return tuple(work[:lo] + list(repl) + work[hi + 1:])
    return None


def _bfs_resolve(Q, factors):
    """Explore commutation-equivalent words for any adjacent relation-(1)
    application that lowers the potential."""
    from collections import deque
    start = tuple(factors)
    seen = {start}
    queue = deque([start])
    base = _potential(Q, start)
    while queue:
        state = queue.popleft()
        for i in range(len(state) - 1):
            repl = None
            if _forward_bad(Q, state[i], state[i + 1]):
                repl = _apply_rel1(Q, state[i], state[i + 1])
            if repl is not None:
                cand = tuple(state[:i] + repl + state[i + 2:])
                if _potential(Q, cand) < base:
                    return cand
        for i in range(len(state) - 1):
            if _commutes(Q, state[i], state[i + 1]):
                nxt = tuple(state[:i] + (state[i + 1], state[i]) + state[i + 2:])
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return None


# -- tubes in quiver coordinates ---------------------------------------------------

@dataclass(frozen=True)
class TubeData:
    index: int
    rank: int
    simples: tuple  # dim vectors of the regular simples, Coxeter order


def tubes(Q: Quiver) -> tuple:
    orbits = tame.inhomogeneous_tube_orbits(Q)
    out = []
    for idx, orbit in enumerate(orbits):
        rank = len(orbit)
        for j in range(rank):
            # Ext(T_j, T_{j+1}) != 0 <=> <T_j, T_{j+1}> < 0 for distinct
            # regular simples in one tube; the Coxeter order satisfies this.
            if rank > 2 and euler_form(Q, orbit[j], orbit[(j + 1) % rank]) >= 0:
                raise AssertionError("Coxeter orbit order violates tube orientation")
        out.append(TubeData(idx, rank, tuple(orbit)))
    return tuple(out)


def segment_dim(Q: Quiver, tube: TubeData, socle: int, length: int) -> DimVector:
    d = dv_zero(Q.vertex_count)
    for k in range(length):
        d = dv_add(d, tube.simples[(socle - k) % tube.rank])
    return d


def class_dim_in_quiver(Q: Quiver, tube: TubeData, c: cyclic.CyclicClass) -> DimVector:
    d = dv_zero(Q.vertex_count)
    for i, l in c.segments():
        d = dv_add(d, segment_dim(Q, tube, i, l))
    return d


def regular_root_segment(Q: Quiver, r: DimVector):
    """Locate a regular real Schur root inside its tube: (tube, socle, length)."""
    for tube in tubes(Q):
        for socle in range(tube.rank):
            for length in range(1, tube.rank):
                if segment_dim(Q, tube, socle, length) == tuple(r):
                    return tube, socle, length
    raise ValueError(f"{r} is not a regular Schur root of an inhomogeneous tube")


# -- normal forms --------------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """P * C_1 * ... * C_r * delta-part * I.

    `tube_classes` holds one cyclic class per inhomogeneous tube (in tube
    order); `delta` is a weakly decreasing tuple: the monoid form collapses
    it to a single power, the PBW basis keeps the full partition.
    """

    quiver: Quiver
    P: tuple            # ((mult, root), ...) strictly increasing in ≺_t
    tube_classes: tuple  # one CyclicClass per inhomogeneous tube
    delta: tuple        # partition of delta-multiples
    I: tuple            # ((mult, root), ...) strictly increasing in ≺_t

    def weight(self) -> DimVector:
        Q = self.quiver
        d = dv_zero(Q.vertex_count)
        for m, r in self.P + self.I:
            d = dv_add(d, dv_scale(m, r))
        for tube, c in zip(tubes(Q), self.tube_classes):
            d = dv_add(d, class_dim_in_quiver(Q, tube, c))
        cls = classify(Q)
        if sum(self.delta):
            d = dv_add(d, dv_scale(sum(self.delta), cls.delta))
        return d

    def render(self) -> str:
        bits = []
        if self.P:
            bits.append("P[" + " ".join(f"{m}·{r}" for m, r in self.P) + "]")
        for tube, c in zip(tubes(self.quiver), self.tube_classes):
            if not c.is_zero():
                bits.append(f"C{{x{tube.index}:{cyclic.class_to_str(c)}}}")
        if self.delta:
            bits.append("R[" + " ".join(f"δ^{m}" for m in self.delta) + "]")
        if self.I:
            bits.append("I[" + " ".join(f"{m}·{r}" for m, r in self.I) + "]")
        return " ".join(bits) if bits else "1"

    def to_jsonable(self) -> dict:
        return {
            "P": [[m, list(r)] for m, r in self.P],
            "tubes": [cyclic.class_to_str(c) for c in self.tube_classes],
            "delta": list(self.delta),
            "I": [[m, list(r)] for m, r in self.I],
        }


def extdynkin_normal_form(word: SchurWord, collapse_delta: bool = True) -> NormalForm:
    """Unique normal form in the quotient monoid: partial normal form first,
    then tube factors combined by generic extensions (relation (3)) and
    delta powers merged (relation (4)) when collapse_delta is set.
    """
    Q = word.quiver
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("extended Dynkin quiver required")
    pri = rewrite_partial_normal_form(word)
    P = [f for f in pri.factors if _root_class(Q, f[1]) == "P"]
    I = [f for f in pri.factors if _root_class(Q, f[1]) == "I"]
    regs = [f for f in pri.factors if _root_class(Q, f[1]) == "R"]
    tube_list = tubes(Q)
    tube_classes = [cyclic.zero_class(t.rank - 1) for t in tube_list]
    delta_parts: List[int] = []
    for m, r in regs:
        if r == cls.delta:
            delta_parts.append(m)
            continue
        tube, socle, length = regular_root_segment(Q, r)
        factor = cyclic.CyclicClass(tube.rank - 1,
                                    tuple((length,) * m if i == socle else ()
                                          for i in range(tube.rank)))
        tube_classes[tube.index] = cyclic.tube_generic_extension(
            tube_classes[tube.index], factor)
    delta_tuple = tuple(sorted(delta_parts, reverse=True))
    if collapse_delta and delta_parts:
        delta_tuple = (sum(delta_parts),)
    return NormalForm(Q, tuple(P), tuple(tube_classes), delta_tuple, tuple(I))


def normal_form(word: SchurWord) -> "NormalForm | SchurWord":
    """Dispatch: Dynkin words stay partial-normal-form Schur words (which is
    a normal form there); extended Dynkin words get the tube/delta treatment.
    """
    if classify(word.quiver).kind is QuiverKind.DYNKIN:
        return rewrite_partial_normal_form(word)
    return extdynkin_normal_form(word)


# -- graded dimension and PBW enumeration ----------------------------------------------

def graded_dim_c0(Q: Quiver, d: DimVector) -> int:
    """Kostant-style count: multisets of positive roots summing to d, where a
    part m*delta may carry one of (vertex count - 1) colours.
    """
    d = tuple(d)
    cls = classify(Q)
    items: List[DimVector] = [r for r, kind in positive_roots(Q, d) if kind == "real"]
    colours = Q.vertex_count - 1
    if cls.kind is QuiverKind.EXTENDED_DYNKIN:
        m = 1
        while dv_leq(dv_scale(m, cls.delta), d):
            items.extend([dv_scale(m, cls.delta)] * colours)
            m += 1
    count = 0

    def dfs(idx: int, remaining: DimVector):
        nonlocal count
        if not any(remaining):
            count += 1
            return
        if idx == len(items):
            return
        dfs(idx + 1, remaining)
        cur = remaining
        while dv_leq(items[idx], cur):
            cur = dv_sub(cur, items[idx])
            dfs(idx + 1, cur)

    dfs(0, d)
    return count


def _multisets_of_roots(Q: Quiver, roots: List[DimVector], d: DimVector):
    """All sub-multisets of `roots` with total weight <= d, as (choice, rest)."""
    out: List[Tuple[tuple, DimVector]] = []

    def dfs(idx: int, remaining: DimVector, chosen: list):
        if idx == len(roots):
            out.append((tuple(chosen), remaining))
            return
        dfs(idx + 1, remaining, chosen)
        cur = remaining
        mult = 0
        while dv_leq(roots[idx], cur):
            cur = dv_sub(cur, roots[idx])
            mult += 1
            dfs(idx + 1, cur, chosen + [(mult, roots[idx])])

    dfs(0, tuple(d), [])
    return out


def pbw_enumerate(Q: Quiver, d: DimVector) -> List[NormalForm]:
    """All PBW normal forms of total degree d; the count is the graded
    dimension of the composition algebra at q = 0.
    """
    d = tuple(d)
    cls = classify(Q)
    if cls.kind is QuiverKind.OTHER:
        raise ValueError("Dynkin or extended Dynkin required")
    dynkin = cls.kind is QuiverKind.DYNKIN
    roots = [r for r, kind in positive_roots(Q, d) if kind == "real"]
    if dynkin:
        pre = roots
        post: List[DimVector] = []
    else:
        pre = [r for r in roots if defect(Q, r) < 0]
        post = [r for r in roots if defect(Q, r) > 0]
    tube_list = () if dynkin else tubes(Q)
    out: List[NormalForm] = []
    for p_choice, rest_p in _multisets_of_roots(Q, pre, d):
        stack = [((), rest_p)]
        for tube in tube_list:
            new_stack = []
            for chosen_tubes, rest in stack:
                for c in _tube_classes_below(Q, tube, rest):
                    cd = class_dim_in_quiver(Q, tube, c)
                    new_stack.append((chosen_tubes + (c,), dv_sub(rest, cd)))
            stack = new_stack
        for chosen_tubes, rest in stack:
            for lam in _delta_partitions(Q, rest, dynkin):
                rest2 = dv_sub(rest, dv_scale(sum(lam), cls.delta)) if lam else rest
                for i_choice, rest_i in _multisets_of_roots(Q, post, rest2):
                    if any(rest_i):
                        continue
                    out.append(NormalForm(Q, _sorted_factors(Q, p_choice),
                                          chosen_tubes, lam,
                                          _sorted_factors(Q, i_choice)))
    return out


def _sorted_factors(Q: Quiver, choice) -> tuple:
    if not choice:
        return ()
    order = {r: i for i, r in enumerate(schur_total_order(Q, [r for _, r in choice]))}
    return tuple(sorted(choice, key=lambda f: order[f[1]]))


def _tube_classes_below(Q: Quiver, tube: TubeData, bound: DimVector):
    """Separated classes of the tube whose quiver dimension fits below bound
    (including the empty class)."""
    out = [cyclic.zero_class(tube.rank - 1)]
    total_cap = sum(bound)
    seen = set()
    for total in range(1, total_cap + 1):
        for dims in _tube_dinvectors(tube, total):
            for c in cyclic.classes_of_dim(tube.rank - 1, dims):
                if c in seen:
                    continue
                seen.add(c)
                if not cyclic.is_separated(c):
                    continue
                if dv_leq(class_dim_in_quiver(Q, tube, c), bound):
                    out.append(c)
    return out


def _tube_dinvectors(tube: TubeData, total: int):
    from itertools import product as ip
    rank = tube.rank
    for dims in ip(range(total + 1), repeat=rank):
        if sum(dims) == total:
            yield dims


def _delta_partitions(Q: Quiver, bound: DimVector, dynkin: bool):
    if dynkin:
        yield ()
        return
    delta = classify(Q).delta
    mmax = 0
    while dv_leq(dv_scale(mmax + 1, delta), bound):
        mmax += 1

    def parts(limit: int, budget: int):
        yield ()
        for first in range(min(limit, budget), 0, -1):
            for rest in parts(first, budget - first):
                yield (first,) + rest

    yield from parts(mmax, mmax)


# -- the kernel relation witness ---------------------------------------------------------

@dataclass
class KernelReport:
    checks: List[tuple]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self):
        return [desc for desc, ok in self.checks if not ok]


def source_first_ordering(Q: Quiver) -> tuple:
    """Vertex ordering with Ext(S_i, S_j) = 0 for i >= j: arrows only run
    from earlier to later vertices (reverse of the admissible ordering).
    """
    from .quiver import admissible_ordering
    order = admissible_ordering(Q)
    if order is None:
        raise ValueError("acyclic quiver required")
    order = tuple(reversed(order))
    pos = {v: i for i, v in enumerate(order)}
    for s, t in Q.arrows:
        if pos[s] >= pos[t]:
            raise AssertionError("ordering failed Ext(S_i, S_j) = 0 for i >= j")
    return order


def u_d_word(Q: Quiver, d: DimVector) -> tuple:
    """The vertex word of u_d = u_1^{d_1} ... u_n^{d_n} in the source-first
    ordering; its flag type has the sinks innermost.
    """
    word: List[int] = []
    for v in source_first_ordering(Q):
        word.extend([v] * d[v])
    return tuple(word)


def kernel_relation_check(Q: Quiver, r: int = 2, primes: Sequence[int] = (3, 5, 7)) -> KernelReport:
    """Witness u_delta^r != u_{r delta} in C_0 while Rep(delta)*...*Rep(delta)
    = Rep(r delta) in the monoid: on M = sum of r distinct homogeneous
    simples, the u_delta^r coefficient has constant term r! / ... > 1 (r = 2
    gives 2), the u_{r delta} coefficient has constant term 1.
    """
    from .flags import word_filtration
    from .qpoly import constant_term, qfact
    from . import qpoly
    cls = classify(Q)
    if cls.kind is not QuiverKind.EXTENDED_DYNKIN:
        raise ValueError("extended Dynkin quiver required")
    delta = cls.delta
    checks: List[tuple] = []
    # monoid side: ext(delta, delta) = 0, hence Rep(delta)*Rep(delta) = Rep(2 delta)
    checks.append(("ext_generic(delta, delta) = 0", ext_generic(Q, delta, delta) == 0))

    def M_of(p: int) -> ffrep.FpRep:
        hs = tame.homogeneous_simples(Q, p)
        if len(hs) < r:
            raise ValueError(f"not enough rational homogeneous points over F_{p}")
        return ffrep.direct_sum_all(list(hs[:r]), Q, p)

    # u_delta^r coefficient: iterated Grassmannian count of delta-steps
    steps = [dv_zero(Q.vertex_count)]
    for k in range(1, r + 1):
        steps.append(dv_scale(k, delta))
    bound = ffrep.flag_variety_dim_bound(Q, steps)
    plist = ffrep.primes_for_degree(bound, primes)
    poly = ffrep.counting_polynomial(M_of, steps, plist, bound)
    c1 = constant_term(poly)
    checks.append((f"u_delta^{r} coefficient on M has constant term {c1} = {r}",
                   c1 == r))
    mres = qpoly.mod_q_constant(poly, primes)
    checks.append((f"mod-q residues consistent for u_delta^{r}", mres == r))
    # u_{r delta} coefficient: flag count of the vertex word, divided by the
    # quantum factorials; its constant term must be 1
    word = u_d_word(Q, dv_scale(r, delta))
    wsteps = word_filtration(Q, word)
    bound2 = ffrep.flag_variety_dim_bound(Q, wsteps)
    plist2 = ffrep.primes_for_degree(bound2, primes)
    raw = ffrep.counting_polynomial(M_of, wsteps, plist2, bound2)
    denom = qpoly.ONE
    for x in dv_scale(r, delta):
        denom = denom * qfact(x)
    coeff = raw.divide_exact(denom)
    c2 = constant_term(coeff)
    checks.append((f"u_{r}delta coefficient on M has constant term {c2} = 1", c2 == 1))
    return KernelReport(checks)
