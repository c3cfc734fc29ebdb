"""Reflections on filtrations and flag counts.

The machinery: the lower-bound sequence r_plus, the product-of-Gaussians
fibre formula, the reflected filtration, and the mod-q reduction that walks
a flag-counting problem down to the zero module (count one), an impossible
filtration (count zero), or a purely regular residual (delegated).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from . import ffrep, tame
from .qpoly import ONE, QPolynomial, ZERO, qbinom
from .quiver import (DimVector, Quiver, QuiverKind, admissible_ordering,
                     classify, defect, dv_add, dv_leq, dv_nonneg, dv_scale,
                     dv_sub, dv_unit, dv_zero, euler_form, is_filtration_of,
                     positive_roots, reflect_dimvec, reflect_quiver)


# -- fibre formula ------------------------------------------------------------

def _is_filtration_seq(e: Sequence[int]) -> bool:
    return e[0] >= 0 and all(e[i] <= e[i + 1] for i in range(len(e) - 1))


def grass_count_chain(r: Sequence[int], e: Sequence[int]) -> QPolynomial:
    """Number of subrepresentations of dimension r of the injective chain
    X^{r,e} over A_{nu+1}, as a polynomial in the field size:

        prod_i qbinom(e^{nu-i} - e^{nu-i-1} + r^i, r^i),  e^{-1} := 0,

    and the zero polynomial when e is not a filtration.  The count is 1 mod q
    exactly when it is nonzero.
    """
    r, e = list(r), list(e)
    if len(r) != len(e):
        raise ValueError("r and e must have equal length")
    if any(x < 0 for x in r) or any(x < 0 for x in e):
        raise ValueError("r and e must be nonnegative")
    combined = [e[i] + r[len(r) - 1 - i] for i in range(len(e))]
    if not _is_filtration_seq(combined):
        raise ValueError("e + reverse(r) must be a filtration")
    if not _is_filtration_seq(e):
        return ZERO
    nu = len(e) - 1
    poly = ONE
    for i in range(nu + 1):
        prev = e[nu - i - 1] if nu - i - 1 >= 0 else 0
        poly = poly * qbinom(e[nu - i] - prev + r[i], r[i])
    return poly


# -- the injective chain X^{r,e} and its brute-force oracle -------------------------

def chain_quiver(nu: int) -> Quiver:
    """A_{nu+1}: vertices 0..nu, arrows k -> k+1."""
    return Quiver(nu + 1, tuple((k, k + 1) for k in range(nu)))


def chain_rep(r: Sequence[int], e: Sequence[int], p: int) -> ffrep.FpRep:
    """X^{r,e} over F_p: canonical surjections K^{e^{nu-k}+r^k} ->> next
    (truncation to the leading coordinates).  Requires e + reverse(r) to be
    a filtration so the dimensions do not increase.
    """
    nu = len(r) - 1
    dims = tuple(e[nu - k] + r[k] for k in range(nu + 1))
    mats = []
    for k in range(nu):
        m = [[0] * dims[k] for _ in range(dims[k + 1])]
        for i in range(dims[k + 1]):
            m[i][i] = 1
        mats.append(m)
    return ffrep.make_rep(chain_quiver(nu), p, dims, mats)


def chain_nonempty(r: Sequence[int], e: Sequence[int]) -> bool:
    """Elementary feasibility: a chain subrep of dimension r exists iff every
    level fits, r^k <= r^{k+1} + (D_k - D_{k+1}) and r^nu <= D_nu; for the
    canonical surjection chain this is equivalent to e being a filtration.
    """
    nu = len(r) - 1
    dims = [e[nu - k] + r[k] for k in range(nu + 1)]
    if r[nu] > dims[nu]:
        return False
    for k in range(nu):
        if r[k] > r[k + 1] + dims[k] - dims[k + 1]:
            return False
    return True


def count_chain_subreps(r: Sequence[int], e: Sequence[int], p: int,
                        cap: int = 200_000):
    """Brute-force count of chain subrepresentations of dimension r in
    X^{r,e}: walk levels from the socle end, each level choosing a subspace
    of the preimage of the previous choice.  Returns None when the estimated
    leaf count exceeds the cap.
    """
    from . import linalg
    nu = len(r) - 1
    dims = [e[nu - k] + r[k] for k in range(nu + 1)]
    estimate = linalg.subspace_count(dims[nu], r[nu], p)
    for k in range(nu):
        pre = r[k + 1] + dims[k] - dims[k + 1]
        estimate *= linalg.subspace_count(pre, r[k], p)
        if estimate > cap:
            return None
    if estimate > cap:
        return None

    def level(k: int, constraint_rows) -> int:
        # constraint_rows: basis of the allowed ambient subspace of X_k
        m = len(constraint_rows)
        total = 0
        for C in linalg.enumerate_subspaces(m, r[k], p):
            U = linalg.mat_mul(C, constraint_rows, p) if C else []
            if k == 0:
                total += 1
                continue
            # preimage under the truncation X_{k-1} ->> X_k
            pre = [row + [0] * (dims[k - 1] - dims[k]) for row in U]
            for j in range(dims[k], dims[k - 1]):
                pre.append([1 if i == j else 0 for i in range(dims[k - 1])])
            total += level(k - 1, pre)
        return total

    return level(nu, linalg.identity(dims[nu]))


# -- r_plus and reflected filtrations -------------------------------------------

def r_plus(Q: Quiver, steps: Sequence[DimVector], a: int, s: int) -> tuple:
    """Componentwise lower bound for the Hom(U^i, S_a) sequence of a flag:
    r^0 = 0, r^i = max(0, (sigma_a(d^{i-1} - d^i))_a + r^{i-1}), r^nu = s.
    """
    if not Q.is_sink(a):
        raise ValueError(f"vertex {a} is not a sink")
    steps = [tuple(x) for x in steps]
    nu = len(steps) - 1
    out = [0] * (nu + 1)
    for i in range(1, nu):
        diff = dv_sub(steps[i - 1], steps[i])
        out[i] = max(0, reflect_dimvec(Q, a, diff)[a] + out[i - 1])
    if nu >= 1:
        out[nu] = s
    return tuple(out)


@dataclass(frozen=True)
class ReflectedFiltration:
    steps: tuple
    r: tuple
    valid: bool  # False signals an empty flag variety downstream


def reflect_filtration(Q: Quiver, steps: Sequence[DimVector], a: int,
                       s: int) -> ReflectedFiltration:
    """Interior steps map by d^i -> sigma_a d^i + r_+^i eps_a; the endpoint
    becomes sigma_a(d^nu) + s eps_a (the reflected module's dimension).
    A monotonicity or positivity failure is reported, not raised.
    """
    steps = [tuple(x) for x in steps]
    rp = r_plus(Q, steps, a, s)
    nu = len(steps) - 1
    new = [dv_zero(Q.vertex_count)]
    for i in range(1, nu):
        new.append(dv_add(reflect_dimvec(Q, a, steps[i]),
                          dv_scale(rp[i], dv_unit(Q.vertex_count, a))))
    if nu >= 1:
        new.append(dv_add(reflect_dimvec(Q, a, steps[nu]),
                          dv_scale(s, dv_unit(Q.vertex_count, a))))
    valid = all(dv_nonneg(v) for v in new) and \
        all(dv_leq(new[i], new[i + 1]) for i in range(len(new) - 1))
    return ReflectedFiltration(tuple(new), rp, valid)


# -- root multisets ---------------------------------------------------------------

@dataclass(frozen=True)
class RootMultiset:
    """A multiset of positive real roots: stands for the isomorphism class
    whose indecomposable summands have these dimension vectors (Gabriel /
    representation-finite regime).
    """

    quiver: Quiver
    items: tuple  # sorted tuple of (root, multiplicity)

    def __post_init__(self):
        items = tuple(sorted((tuple(r), int(m)) for r, m in self.items if m))
        if any(m < 0 for _, m in items):
            raise ValueError("negative multiplicity")
        object.__setattr__(self, "items", items)

    def dim_vector(self) -> DimVector:
        d = dv_zero(self.quiver.vertex_count)
        for root, m in self.items:
            d = dv_add(d, dv_scale(m, root))
        return d

    def is_empty(self) -> bool:
        return not self.items


def reflect_root_multiset(Q: Quiver, a: int, X: RootMultiset):
    """Sink reflection on a multiset: s = multiplicity of eps_a (the summands
    killed), every other root maps by sigma_a.  Returns (multiset on the
    reflected quiver, s).
    """
    if not Q.is_sink(a):
        raise ValueError(f"vertex {a} is not a sink")
    eps = dv_unit(Q.vertex_count, a)
    s = 0
    new_items = []
    for root, m in X.items:
        if root == eps:
            s = m
            continue
        new_items.append((reflect_dimvec(Q, a, root), m))
    return RootMultiset(reflect_quiver(Q, a), tuple(new_items)), s


# -- the reflection-based counting decision ----------------------------------------

@dataclass
class FlagDecision:
    outcome: str  # 'empty' | 'one' | 'unresolved'
    residual: Optional[tuple] = None  # (quiver, module-or-multiset, steps)
    trace: List[dict] = field(default_factory=list)


def _dual_steps(dim: DimVector, steps: Sequence[DimVector]) -> tuple:
    """Complementary filtration e^i = d^nu - d^{nu-i} for the dual module."""
    nu = len(steps) - 1
    return tuple(dv_sub(dim, steps[nu - i]) for i in range(nu + 1))


def _multiset_negative_defect(Q: Quiver, X: RootMultiset) -> bool:
    cls = classify(Q)
    if cls.kind is QuiverKind.DYNKIN:
        return not X.is_empty()
    return any(defect(Q, root) < 0 for root, _ in X.items)


def _preproj_round_bound(Q: Quiver, dims: DimVector) -> int:
    """Number of Coxeter rounds after which no preprojective summand of a
    module with these dimensions can survive: each one dies within its
    sink-reflection counter, and reflections never create new ones.
    """
    from .quiver import sigma_counter
    cls = classify(Q)
    n = Q.vertex_count
    worst = 0
    for r, kind in positive_roots(Q, dims):
        if kind != "real":
            continue
        if cls.kind is QuiverKind.EXTENDED_DYNKIN and defect(Q, r) >= 0:
            continue
        s = sigma_counter(Q, r)
        if s is not None:
            worst = max(worst, -(-s // n))
    return worst + 1


def _sink_phase(Q, item, steps, trace, use_reps: bool):
    """Run rounds of sink reflections along admissible orderings until the
    preprojective content is provably gone.  Returns (Q, item, steps) or
    'empty'.
    """
    dims = item.dims if use_reps else item.dim_vector()
    for _ in range(_preproj_round_bound(Q, dims)):
        if use_reps:
            if item.is_zero():
                break
        elif not _multiset_negative_defect(Q, item):
            break
        for a in admissible_ordering(Q):
            if use_reps:
                s = ffrep.s_value(item, a)
                new_item = ffrep.reflect_rep(a, item)
            else:
                new_item, s = reflect_root_multiset(Q, a, item)
            refl = reflect_filtration(Q, steps, a, s)
            trace.append({"vertex": a, "s": s, "r_plus": refl.r,
                          "steps": refl.steps, "valid": refl.valid})
            if not refl.valid:
                return "empty"
            Q = reflect_quiver(Q, a)
            item, steps = new_item, refl.steps
    return Q, item, steps


def flag_count_mod_q(Q: Quiver, module: Union[RootMultiset, ffrep.FpRep],
                     steps: Sequence[DimVector]) -> FlagDecision:
    """Decide #Fl(steps, M) mod q by sink reflections: 'one' if the chain
    reaches the zero module with the zero filtration (count is 1 mod q and
    the flag is nonempty over every field), 'empty' if a reflected filtration
    leaves the cone or the zero module keeps a nonzero filtration,
    'unresolved' with the purely regular residual otherwise.

    Preinjective content is removed by the dual pass (reflect the dual
    module on the opposite quiver), per the Coxeter strategy.
    """
    if admissible_ordering(Q) is None:
        raise ValueError("reflection counting requires an acyclic quiver")
    use_reps = isinstance(module, ffrep.FpRep)
    dim = module.dims if use_reps else module.dim_vector()
    steps = tuple(tuple(x) for x in steps)
    if not is_filtration_of(steps, dim):
        return FlagDecision("empty", trace=[{"note": "not a filtration of dim M"}])
    trace: List[dict] = []

    state = _sink_phase(Q, module, steps, trace, use_reps)
    if state == "empty":
        return FlagDecision("empty", trace=trace)
    Q, module, steps = state

    def finished(m):
        return m.is_zero() if use_reps else m.is_empty()

    if not finished(module):
        # dual pass kills former preinjectives
        dim = module.dims if use_reps else module.dim_vector()
        dual_item = ffrep.dualize(module) if use_reps else \
            RootMultiset(Q.opposite(), module.items)
        trace.append({"note": "dualize"})
        state = _sink_phase(Q.opposite(), dual_item, _dual_steps(dim, steps),
                            trace, use_reps)
        if state == "empty":
            return FlagDecision("empty", trace=trace)
        Qop, dual_item, dual_steps_now = state
        Q = Qop.opposite()
        module = ffrep.dualize(dual_item) if use_reps else \
            RootMultiset(Q, dual_item.items)
        dim = module.dims if use_reps else module.dim_vector()
        steps = _dual_steps(dim, dual_steps_now)
        trace.append({"note": "dualize back"})

    if finished(module):
        if all(not any(v) for v in steps):
            return FlagDecision("one", trace=trace)
        return FlagDecision("empty", trace=trace)
    return FlagDecision("unresolved", residual=(Q, module, steps), trace=trace)


# -- Dynkin word expansion -----------------------------------------------------------

def word_filtration(Q: Quiver, word: Sequence[int]) -> tuple:
    """d(w): the last letter of the word is the innermost simple submodule."""
    n = Q.vertex_count
    steps = [dv_zero(n)]
    for v in reversed(word):
        steps.append(dv_add(steps[-1], dv_unit(n, v)))
    return tuple(steps)


def dynkin_word_expand(Q: Quiver, word: Sequence[int]):
    """[A_w] on a Dynkin quiver: the root multisets of total weight admitting
    a flag of type d(w), decided per class by flag_count_mod_q.  At q = 0
    every coefficient of u_w is 1 on this support.
    """
    if classify(Q).kind is not QuiverKind.DYNKIN:
        raise ValueError("word expansion in this form is Dynkin-only")
    steps = word_filtration(Q, word)
    target = steps[-1]
    out = []
    for ms in tame.root_multisets_of_dim(Q, target):
        X = RootMultiset(Q, ms)
        decision = flag_count_mod_q(Q, X, steps)
        if decision.outcome == "one":
            out.append(X)
        elif decision.outcome == "unresolved":
            raise AssertionError("Dynkin decision cannot be unresolved")
    return frozenset(out)


# -- the Dynkin Psi check ---------------------------------------------------------------

def _support_of_product(Q: Quiver, supp_w, supp_v, p: int = 2):
    """[A_w * A_v] by brute force: classes Z with a subrepresentation in
    supp_v whose quotient lies in supp_w (decided over F_p and classified by
    fingerprints; legitimate for Dynkin quivers, where class membership is
    field independent).
    """
    if not supp_w:
        return frozenset()
    dim_w = next(iter(supp_w)).dim_vector()
    dim_v = next(iter(supp_v)).dim_vector() if supp_v else dv_zero(Q.vertex_count)
    total = dv_add(dim_w, dim_v)
    supp_w_items = {X.items for X in supp_w}
    supp_v_items = {X.items for X in supp_v}
    out = []
    for ms in tame.root_multisets_of_dim(Q, total):
        Z = tame.rep_of_root_multiset(Q, ms, p)
        hit = False
        for W in ffrep.enumerate_subreps(Z, dim_v):
            sub = ffrep.restrict_rep(Z, W)
            if tame.classify_dynkin_rep(sub) not in supp_v_items:
                continue
            quot, _ = ffrep.quotient_data(Z, W)
            if tame.classify_dynkin_rep(quot) in supp_w_items:
                hit = True
                break
        if hit:
            out.append(RootMultiset(Q, ms))
    return frozenset(out)


@dataclass
class DynkinPsiReport:
    name: str
    checks: List[tuple]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self):
        return [desc for desc, ok in self.checks if not ok]


def dynkin_psi_check(Q: Quiver, max_len: int = 4, p: int = 2) -> DynkinPsiReport:
    """Exhaustively verify, for words up to max_len, that the reflection
    decision procedure computes a multiplicative support map:
    [A_{wv}] = [A_w * A_v] for every split, plus graded dimension equality
    (span of word supports = number of classes per dimension vector).
    """
    from itertools import product as iproduct
    from fractions import Fraction
    if classify(Q).kind is not QuiverKind.DYNKIN:
        raise ValueError("Dynkin quiver required")
    n = Q.vertex_count
    checks: List[tuple] = []
    supports = {}
    for length in range(1, max_len + 1):
        for word in iproduct(range(n), repeat=length):
            supports[word] = dynkin_word_expand(Q, word)
    for word, supp in supports.items():
        for cut in range(1, len(word)):
            w, v = word[:cut], word[cut:]
            prod = _support_of_product(Q, supports[w], supports[v], p)
            checks.append((f"[A_{word}] = [A_{w} * A_{v}]", prod == supp))
    by_dim = {}
    for word, supp in supports.items():
        d = word_filtration(Q, word)[-1]
        by_dim.setdefault(d, []).append(supp)
    for d, supps in sorted(by_dim.items()):
        classes = tame.root_multisets_of_dim(Q, d)
        index = {ms: i for i, ms in enumerate(classes)}
        rows = []
        for supp in supps:
            row = [0] * len(classes)
            for X in supp:
                row[index[X.items]] = 1
            rows.append(row)
        rank = _int_rank(rows)
        checks.append((f"graded dimension at {d}: rank {rank} = {len(classes)}",
                       rank == len(classes)))
    return DynkinPsiReport(f"dynkin_psi_check {Q.arrows} len<={max_len}", checks)


def _int_rank(rows) -> int:
    from fractions import Fraction
    m = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank
