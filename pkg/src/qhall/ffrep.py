"""Brute-force finite-field representation lab.

Representations of a quiver over a prime field F_p: one matrix per arrow of
shape (d_target, d_source), acting on column vectors.  Subspaces are row
spaces in reduced echelon form, so enumerations are duplicate-free and
deterministic.  This module is the oracle every closed-form count in the
package is checked against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .qpoly import QPolynomial, interpolate
from .quiver import (DimVector, Quiver, admissible_ordering, dv_leq, dv_nonneg,
                     dv_sub, dv_unit, dv_zero, euler_form, is_filtration_of,
                     reflect_dimvec, reflect_quiver)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _freeze(mat) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in mat)


def _mul(A, B, p: int, rows: int, cols: int):
    """Shape-aware product: degenerate inner dimensions yield zero matrices
    of the stated shape instead of losing the column count.
    """
    if rows == 0:
        return []
    if cols == 0 or not A or not B or not A[0]:
        return [[0] * cols for _ in range(rows)]
    return linalg.mat_mul(A, B, p)


def _thaw(mat) -> list:
    return [list(row) for row in mat]


@dataclass(frozen=True)
class FpRep:
    """A representation over F_p: dims per vertex, one matrix per arrow."""

    quiver: Quiver
    p: int
    dims: DimVector
    mats: tuple  # one frozen matrix per arrow, shape (d_target, d_source)

    def __post_init__(self):
        if len(self.dims) != self.quiver.vertex_count:
            raise ValueError("dims length mismatch")
        if not dv_nonneg(self.dims):
            raise ValueError("negative dimension")
        if len(self.mats) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        frozen = []
        for (s, t), m in zip(self.quiver.arrows, self.mats):
            m = _freeze([[x % self.p for x in row] for row in m])
            if len(m) != self.dims[t] or any(len(row) != self.dims[s] for row in m):
                raise ValueError(f"matrix for arrow ({s},{t}) has wrong shape")
            frozen.append(m)
        object.__setattr__(self, "mats", tuple(frozen))

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def to_json(self) -> str:
        return json.dumps({
            "quiver": json.loads(self.quiver.to_json()),
            "p": self.p,
            "mats": [_thaw(m) for m in self.mats],
        })

    @classmethod
    def from_json(cls, text) -> "FpRep":
        data = json.loads(text) if isinstance(text, str) else text
        Q = Quiver.from_json(data["quiver"])
        mats = data["mats"]
        dims = [0] * Q.vertex_count
        for (s, t), m in zip(Q.arrows, mats):
            dims[t] = len(m)
            if m:
                dims[s] = len(m[0])
        if "dims" in data:
            dims = data["dims"]
        return cls(Q, data["p"], tuple(dims), tuple(_freeze(m) for m in mats))


def make_rep(Q: Quiver, p: int, dims: Sequence[int], mats: Sequence) -> FpRep:
    return FpRep(Q, p, tuple(dims), tuple(_freeze(m) for m in mats))


def zero_rep(Q: Quiver, p: int) -> FpRep:
    dims = dv_zero(Q.vertex_count)
    return make_rep(Q, p, dims, [[] for _ in Q.arrows])


def simple_rep(Q: Quiver, p: int, vertex: int) -> FpRep:
    dims = dv_unit(Q.vertex_count, vertex)
    mats = []
    for s, t in Q.arrows:
        mats.append(linalg.zeros(dims[t], dims[s]))
    return make_rep(Q, p, dims, mats)


def semisimple_rep(Q: Quiver, p: int, multiplicities: Sequence[int]) -> FpRep:
    dims = tuple(multiplicities)
    return make_rep(Q, p, dims, [linalg.zeros(dims[t], dims[s]) for s, t in Q.arrows])


def direct_sum(M: FpRep, N: FpRep) -> FpRep:
    if M.quiver != N.quiver or M.p != N.p:
        raise ValueError("direct sum needs matching quiver and field")
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    mats = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        block = linalg.zeros(dims[t], dims[s])
        for i, row in enumerate(M.mats[k]):
            for j, x in enumerate(row):
                block[i][j] = x
        for i, row in enumerate(N.mats[k]):
            for j, x in enumerate(row):
                block[M.dims[t] + i][M.dims[s] + j] = x
        mats.append(block)
    return make_rep(M.quiver, M.p, dims, mats)


def direct_sum_all(reps: Sequence[FpRep], Q: Quiver, p: int) -> FpRep:
    acc = zero_rep(Q, p)
    for r in reps:
        acc = direct_sum(acc, r)
    return acc


def rep_family(Q: Quiver, int_mats: Sequence, dims: Sequence[int]) -> Callable[[int], FpRep]:
    """Integer matrices reduced mod p: the standard same-shape family."""
    dims = tuple(dims)

    def family(p: int) -> FpRep:
        return make_rep(Q, p, dims, [[[x % p for x in row] for row in m] for m in int_mats])

    return family


def all_reps(Q: Quiver, p: int, dims: Sequence[int]):
    """Every point of Rep(dims)(F_p), in a fixed lexicographic order."""
    from itertools import product
    dims = tuple(dims)
    shapes = [(dims[t], dims[s]) for s, t in Q.arrows]
    entry_counts = [r * c for r, c in shapes]
    for values in product(range(p), repeat=sum(entry_counts)):
        mats, pos = [], 0
        for (r, c), cnt in zip(shapes, entry_counts):
            flat = values[pos:pos + cnt]
            pos += cnt
            mats.append([list(flat[i * c:(i + 1) * c]) for i in range(r)])
        yield make_rep(Q, p, dims, mats)


# -- hom and ext dimensions ---------------------------------------------------

def hom_dim(M: FpRep, N: FpRep) -> int:
    """dim_Fp of {(f_i): f_j M_a = N_a f_i for all arrows a: i -> j}."""
    if M.quiver != N.quiver or M.p != N.p:
        raise ValueError("hom_dim needs matching quiver and field")
    p = M.p
    n = M.quiver.vertex_count
    offs, total = [], 0
    for i in range(n):
        offs.append(total)
        total += N.dims[i] * M.dims[i]
    if total == 0:
        return 0
    rows = []
    for k, (i, j) in enumerate(M.quiver.arrows):
        Ma, Na = M.mats[k], N.mats[k]
        for r in range(N.dims[j]):
            for c in range(M.dims[i]):
                row = [0] * total
                # (f_j Ma)[r][c] = sum_cp f_j[r][cp] Ma[cp][c]
                for cp in range(M.dims[j]):
                    row[offs[j] + r * M.dims[j] + cp] = (row[offs[j] + r * M.dims[j] + cp]
                                                         + Ma[cp][c]) % p
                # -(Na f_i)[r][c] = -sum_rp Na[r][rp] f_i[rp][c]
                for rp in range(N.dims[i]):
                    row[offs[i] + rp * M.dims[i] + c] = (row[offs[i] + rp * M.dims[i] + c]
                                                         - Na[r][rp]) % p
                if any(row):
                    rows.append(row)
    return total - (linalg.rank(rows, p) if rows else 0)


def ext_dim(M: FpRep, N: FpRep) -> int:
    """[M,N]^1 = [M,N] - <dim M, dim N> on a hereditary path algebra."""
    e = hom_dim(M, N) - euler_form(M.quiver, M.dims, N.dims)
    if e < 0:
        raise AssertionError("negative Ext dimension: inconsistent input")
    return e


def hom_fingerprint(M: FpRep, tests: Sequence[FpRep]) -> tuple:
    return tuple(hom_dim(M, T) for T in tests)


# -- subrepresentations and flags ---------------------------------------------

def enumerate_subreps(M: FpRep, d: Sequence[int]):
    """All subrepresentations of dimension vector d, as tuples of RREF row
    bases per vertex.  Deterministic order, duplicate-free.

    The search chooses a vertex at a time; a vertex whose in-arrows start at
    already-chosen vertices only ranges over superspaces of the forced image,
    which prunes sharply at larger primes.
    """
    d = tuple(d)
    if not (dv_nonneg(d) and dv_leq(d, M.dims)):
        raise ValueError(f"subrep dimension {d} out of range")
    n = M.quiver.vertex_count
    p = M.p
    results = []
    chosen: dict = {}

    def forced_image(v: int):
        rows = []
        for k, (s, t) in enumerate(M.quiver.arrows):
            if t != v or s not in chosen or s == v:
                continue
            if chosen[s] and M.dims[v]:
                rows.extend(linalg.mat_mul(chosen[s], linalg.transpose(M.mats[k]), p))
        return rows

    def stable_at(v: int) -> bool:
        for k, (s, t) in enumerate(M.quiver.arrows):
            if s not in chosen or t not in chosen:
                continue
            if v not in (s, t):
                continue
            if not chosen[s] or not M.dims[t]:
                continue
            img = linalg.mat_mul(chosen[s], linalg.transpose(M.mats[k]), p)
            if not linalg.row_space_contains(chosen[t], img, p):
                return False
        return True

    def next_vertex():
        best, best_cost = None, None
        for v in range(n):
            if v in chosen:
                continue
            cost = linalg.subspace_count(M.dims[v], d[v], p)
            if any(s in chosen for (s, t) in M.quiver.arrows if t == v and s != v):
                # superspace enumeration of a forced image is much cheaper
                cost = cost // (p ** d[v]) + 1
            if best_cost is None or cost < best_cost or (cost == best_cost and v < best):
                best, best_cost = v, cost
        return best

    def dfs():
        if len(chosen) == n:
            results.append(tuple(_freeze(chosen[i]) for i in range(n)))
            return
        v = next_vertex()
        forced = forced_image(v)
        if forced:
            W, _ = linalg.rref(forced, p)
            if len(W) > d[v]:
                return
            gen = linalg.enumerate_superspaces(W, M.dims[v], d[v], p)
        else:
            gen = linalg.enumerate_subspaces(M.dims[v], d[v], p)
        for basis in gen:
            chosen[v] = basis
            if stable_at(v):
                dfs()
            del chosen[v]

    dfs()
    return results


def restrict_rep(M: FpRep, bases: Sequence) -> FpRep:
    """Subrepresentation on the given RREF row bases, in basis coordinates."""
    p = M.p
    rrefs = []
    for i, b in enumerate(bases):
        R, piv = linalg.rref(_thaw(b), p) if len(b) else ([], [])
        rrefs.append((R, piv))
    dims = tuple(len(R) for R, _ in rrefs)
    mats = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        Bs, (Bt, piv_t) = rrefs[s][0], rrefs[t]
        cols = []
        for row in Bs:
            img = linalg.mat_mul([row], linalg.transpose(M.mats[k]), p)[0] \
                if M.dims[t] else []
            cols.append(linalg.coords_in_rref(Bt, piv_t, img, p))
        mats.append(linalg.transpose(cols) if cols else linalg.zeros(dims[t], 0))
    return make_rep(M.quiver, p, dims, mats)


def quotient_data(M: FpRep, bases: Sequence):
    """Quotient representation M / U and the per-vertex projection matrices
    (m_i x D_i) sending ambient column vectors to quotient coordinates.
    """
    p = M.p
    projections = []
    dims = []
    for i in range(M.quiver.vertex_count):
        D = M.dims[i]
        B, piv = linalg.rref(_thaw(bases[i]), p) if len(bases[i]) else ([], [])
        comp = [c for c in range(D) if c not in piv]
        full = [list(r) for r in B] + [linalg.identity(D)[c] for c in comp]
        dims.append(len(comp))
        if D == 0:
            projections.append([])
            continue
        inv = linalg.mat_inv(linalg.transpose(full), p)  # column-vector change of basis
        projections.append(inv[len(B):])
    mats = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        if dims[t] == 0 or dims[s] == 0:
            mats.append(linalg.zeros(dims[t], dims[s]))
            continue
        proj_image = linalg.mat_mul(projections[t], _thaw(M.mats[k]), p)
        mats.append(linalg.mat_mul(proj_image, _lift_cols(M, s, bases[s], p), p))
    return make_rep(M.quiver, p, tuple(dims), mats), projections


def _lift_cols(M: FpRep, i: int, basis, p: int):
    """Matrix whose columns are the complement (non-pivot) standard vectors."""
    D = M.dims[i]
    B, piv = linalg.rref(_thaw(basis), p) if len(basis) else ([], [])
    comp = [c for c in range(D) if c not in piv]
    out = linalg.zeros(D, len(comp))
    for j, c in enumerate(comp):
        out[c][j] = 1
    return out


def enumerate_flags(M: FpRep, steps: Sequence[DimVector], witnesses: bool = False):
    """Number of chains of subrepresentations with the given dimension
    vectors; `steps` must be a filtration of dim M.  With witnesses=True,
    returns (count, list of flags), each flag a tuple of ambient RREF bases
    per interior level.
    """
    steps = tuple(tuple(s) for s in steps)
    if not is_filtration_of(steps, M.dims):
        raise ValueError(f"{steps} is not a filtration of {M.dims}")
    if not witnesses:
        return _count_flags(M, steps)
    found: List[tuple] = []

    def rec(N: FpRep, inner: tuple, stack: tuple, lift):
        if len(inner) == 1:
            found.append(stack)
            return
        for W in enumerate_subreps(N, inner[-2]):
            ambient = tuple(lift(W))
            rec(restrict_rep(N, W), inner[:-1], (ambient,) + stack, _compose_lift(N, W, lift))

    def identity_lift(W):
        return W

    rec(M, steps, (), identity_lift)
    return len(found), found


def _compose_lift(N: FpRep, W, lift):
    p = N.p

    def new_lift(V):
        rows = []
        for i in range(N.quiver.vertex_count):
            if len(V[i]):
                rows.append(_freeze(linalg.mat_mul(_thaw(V[i]), _thaw(W[i]), p)))
            else:
                rows.append(())
        return lift(tuple(rows))

    return new_lift


def _count_flags(M: FpRep, steps: tuple) -> int:
    if len(steps) == 1:
        return 1
    inner = steps[:-1]
    total = 0
    for W in enumerate_subreps(M, steps[-2]):
        total += _count_flags(restrict_rep(M, W), inner)
    return total


def count_subreps(M: FpRep, d: Sequence[int]) -> int:
    return len(enumerate_subreps(M, d))


# -- duality and reflection functors -------------------------------------------

def dualize(M: FpRep) -> FpRep:
    """Vector space duality: transpose all matrices, reverse all arrows.
    Transposes are built shape-explicitly so 0 x n matrices keep their
    column count.
    """
    mats = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        m = M.mats[k]
        mats.append([[m[r][c] for r in range(M.dims[t])] for c in range(M.dims[s])])
    return make_rep(M.quiver.opposite(), M.p, M.dims, mats)


def _assembled_sink_map(M: FpRep, a: int):
    """Column-block matrix (M_a1 | M_a2 | ...) : (+) M_j -> M_a over arrows
    into a, in arrow order, plus the block layout.
    """
    ks = M.quiver.arrows_into(a)
    blocks = []
    layout = []
    pos = 0
    for k in ks:
        s, _ = M.quiver.arrows[k]
        blocks.append(M.mats[k])
        layout.append((k, s, pos, pos + M.dims[s]))
        pos += M.dims[s]
    phi = [[0] * pos for _ in range(M.dims[a])]
    for (k, s, lo, hi), m in zip(layout, blocks):
        for r in range(M.dims[a]):
            for c in range(hi - lo):
                phi[r][lo + c] = m[r][c]
    return phi, layout, pos


def s_value(M: FpRep, a: int) -> int:
    """Corank of the assembled map into a sink a: dim Hom(M, S_a)."""
    if not M.quiver.is_sink(a):
        raise ValueError(f"vertex {a} is not a sink")
    phi, _, _ = _assembled_sink_map(M, a)
    return M.dims[a] - (linalg.rank(phi, M.p) if phi and phi[0] else 0)


def reflect_rep(a: int, M: FpRep) -> FpRep:
    """Sink reflection: new space at a is the kernel of the assembled map;
    lives on the reflected quiver.  dim = sigma_a(dim M) + s * eps_a.
    """
    if not M.quiver.is_sink(a):
        raise ValueError(f"vertex {a} is not a sink")
    p = M.p
    phi, layout, width = _assembled_sink_map(M, a)
    if width == 0:
        ker: list = []
    elif not phi or M.dims[a] == 0:
        ker = linalg.identity(width)
    else:
        ker = linalg.kernel_basis(phi, p, cols=width)
    newdim = list(M.dims)
    newdim[a] = len(ker)
    RQ = reflect_quiver(M.quiver, a)
    mats = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        if t != a:
            mats.append(_thaw(M.mats[k]))
            continue
        # reversed arrow a -> s: project kernel rows onto the block of s
        lo, hi = next((lo, hi) for kk, ss, lo, hi in layout if kk == k)
        block = [[row[c] for c in range(lo, hi)] for row in ker]
        mats.append(linalg.transpose(block) if block else linalg.zeros(M.dims[s], 0))
    return make_rep(RQ, p, tuple(newdim), mats)


def reflect_rep_source(b: int, M: FpRep) -> FpRep:
    """Source reflection S_b^- = D . S_b^+ . D."""
    if not M.quiver.is_source(b):
        raise ValueError(f"vertex {b} is not a source")
    return dualize(reflect_rep(b, dualize(M)))


def coxeter_plus(M: FpRep) -> FpRep:
    """Composite of sink reflections along the canonical admissible ordering.
    Kills exactly the projective summands.
    """
    order = admissible_ordering(M.quiver)
    if order is None:
        raise ValueError("Coxeter functor needs an acyclic quiver")
    cur = M
    for a in order:
        cur = reflect_rep(a, cur)
    return cur


# -- chains (modules over (KQ)A_{nu+1}) ----------------------------------------

@dataclass(frozen=True)
class ChainRep:
    """A sequence of representations M^0 -> M^1 -> ... -> M^nu with chain
    maps that commute with all arrow matrices.
    """

    steps: tuple  # tuple[FpRep, ...]
    maps: tuple   # per step, a tuple of per-vertex matrices (next_dim x cur_dim)

    def __post_init__(self):
        if not self.steps:
            raise ValueError("empty chain")
        Q, p = self.steps[0].quiver, self.steps[0].p
        if any(r.quiver != Q or r.p != p for r in self.steps):
            raise ValueError("chain steps disagree on quiver or field")
        if len(self.maps) != len(self.steps) - 1:
            raise ValueError("need one map per consecutive pair")
        frozen_maps = []
        for k, f in enumerate(self.maps):
            cur, nxt = self.steps[k], self.steps[k + 1]
            fs = tuple(_freeze(fi) for fi in f)
            for i in range(Q.vertex_count):
                if len(fs[i]) != nxt.dims[i] or any(len(r) != cur.dims[i] for r in fs[i]):
                    raise ValueError("chain map has wrong shape")
            for kk, (s, t) in enumerate(Q.arrows):
                lhs = _mul(_thaw(fs[t]), _thaw(cur.mats[kk]), p, nxt.dims[t], cur.dims[s])
                rhs = _mul(_thaw(nxt.mats[kk]), _thaw(fs[s]), p, nxt.dims[t], cur.dims[s])
                if lhs != rhs:
                    raise ValueError(f"chain map {k} is not a morphism at arrow {kk}")
            frozen_maps.append(fs)
        object.__setattr__(self, "maps", tuple(frozen_maps))

    @property
    def quiver(self) -> Quiver:
        return self.steps[0].quiver

    @property
    def p(self) -> int:
        return self.steps[0].p


def constant_chain(M: FpRep, length: int) -> ChainRep:
    ident = tuple(_freeze(linalg.identity(M.dims[i]))
                  for i in range(M.quiver.vertex_count))
    return ChainRep(tuple([M] * length), tuple([ident] * (length - 1)))


def lambda_hom_dim(U: ChainRep, V: ChainRep) -> int:
    """Hom dimension over (KQ)A_{nu+1}: commuting-ladder linear system."""
    if U.quiver != V.quiver or U.p != V.p or len(U.steps) != len(V.steps):
        raise ValueError("chains must match in quiver, field and length")
    Q, p = U.quiver, U.p
    n = Q.vertex_count
    nu1 = len(U.steps)
    offs = {}
    total = 0
    for k in range(nu1):
        for i in range(n):
            offs[(k, i)] = total
            total += V.steps[k].dims[i] * U.steps[k].dims[i]
    if total == 0:
        return 0
    rows = []

    def add_block(row, key, r, c, coef, cdim):
        row[offs[key] + r * cdim + c] = (row[offs[key] + r * cdim + c] + coef) % p

    for k in range(nu1):
        Uk, Vk = U.steps[k], V.steps[k]
        for kk, (i, j) in enumerate(Q.arrows):
            Ma, Na = Uk.mats[kk], Vk.mats[kk]
            for r in range(Vk.dims[j]):
                for c in range(Uk.dims[i]):
                    row = [0] * total
                    for cp in range(Uk.dims[j]):
                        add_block(row, (k, j), r, cp, Ma[cp][c], Uk.dims[j])
                    for rp in range(Vk.dims[i]):
                        add_block(row, (k, i), rp, c, -Na[r][rp], Uk.dims[i])
                    if any(row):
                        rows.append(row)
    for k in range(nu1 - 1):
        Uk, Un = U.steps[k], U.steps[k + 1]
        Vk, Vn = V.steps[k], V.steps[k + 1]
        for i in range(n):
            f, g = U.maps[k][i], V.maps[k][i]
            for r in range(Vn.dims[i]):
                for c in range(Uk.dims[i]):
                    row = [0] * total
                    for cp in range(Un.dims[i]):
                        add_block(row, (k + 1, i), r, cp, f[cp][c], Un.dims[i])
                    for rp in range(Vk.dims[i]):
                        add_block(row, (k, i), rp, c, -g[r][rp], Uk.dims[i])
                    if any(row):
                        rows.append(row)
    return total - (linalg.rank(rows, p) if rows else 0)


def lambda_euler(Q: Quiver, dsteps: Sequence[DimVector], esteps: Sequence[DimVector]) -> int:
    """<U,V> over (KQ)A_{nu+1}: sum <d^i, e^i> - sum <d^i, e^{i+1}>."""
    if len(dsteps) != len(esteps):
        raise ValueError("chain length mismatch")
    total = sum(euler_form(Q, d, e) for d, e in zip(dsteps, esteps))
    total -= sum(euler_form(Q, dsteps[i], esteps[i + 1]) for i in range(len(dsteps) - 1))
    return total


def flag_chain_and_quotient(M: FpRep, flag: Sequence) -> Tuple[ChainRep, ChainRep]:
    """From an ambient flag witness (interior levels, innermost first) build
    the subobject chain 0 = U^0 -> ... -> U^nu = M and the quotient chain
    M/U^0 -> ... -> M/U^nu.
    """
    p = M.p
    n = M.quiver.vertex_count
    empty = tuple(() for _ in range(n))
    full = tuple(_freeze(linalg.identity(M.dims[i])) for i in range(n))
    levels = [empty] + [tuple(w) for w in flag] + [full]
    reps = [restrict_rep(M, b) for b in levels]
    incl = []
    for k in range(len(levels) - 1):
        cur, nxt = levels[k], levels[k + 1]
        mats = []
        for i in range(n):
            R, piv = linalg.rref(_thaw(nxt[i]), p) if len(nxt[i]) else ([], [])
            cols = [linalg.coords_in_rref(R, piv, list(row), p) for row in cur[i]]
            mats.append(linalg.transpose(cols) if cols else linalg.zeros(len(R), 0))
        incl.append(tuple(_freeze(m) for m in mats))
    sub_chain = ChainRep(tuple(reps), tuple(incl))
    quots, projs = [], []
    for b in levels:
        qrep, proj = quotient_data(M, b)
        quots.append(qrep)
        projs.append(proj)
    qmaps = []
    for k in range(len(levels) - 1):
        mats = []
        for i in range(n):
            if quots[k + 1].dims[i] and quots[k].dims[i]:
                lift = _lift_cols(M, i, levels[k][i], p)
                mats.append(linalg.mat_mul(projs[k + 1][i], lift, p))
            else:
                mats.append(linalg.zeros(quots[k + 1].dims[i], quots[k].dims[i]))
        qmaps.append(tuple(_freeze(m) for m in mats))
    quot_chain = ChainRep(tuple(quots), tuple(qmaps))
    return sub_chain, quot_chain


# -- dimension formula and counting polynomials ---------------------------------

def rep_space_dim(Q: Quiver, d: Sequence[int]) -> int:
    return sum(d[s] * d[t] for s, t in Q.arrows)


def repfl_dimension(Q: Quiver, steps: Sequence[DimVector]) -> int:
    """dim RepFl(d) = sum_{k=1}^{nu-1} <d^k, d^{k+1} - d^k> + dim Rep(d^nu)."""
    steps = [tuple(s) for s in steps]
    total = rep_space_dim(Q, steps[-1])
    for k in range(1, len(steps) - 1):
        total += euler_form(Q, steps[k], dv_sub(steps[k + 1], steps[k]))
    return total


def flag_variety_dim_bound(Q: Quiver, steps: Sequence[DimVector]) -> int:
    """dim of the ambient product of vector-space flags: an upper bound for
    the degree of any flag counting polynomial.
    """
    total = 0
    for i in range(Q.vertex_count):
        for k in range(1, len(steps) - 1):
            total += steps[k][i] * (steps[k + 1][i] - steps[k][i])
    return total


def counting_polynomial(family: Callable[[int], FpRep], steps: Sequence[DimVector],
                        primes: Sequence[int], degree_bound: int) -> QPolynomial:
    """Interpolate p -> #Fl(steps, family(p)) through the given primes.

    Needs degree_bound + 1 primes; any extra primes are used as consistency
    checks (ValueError on mismatch).
    """
    primes = sorted(set(primes))
    if len(primes) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} primes for degree {degree_bound}, "
                         f"got {len(primes)}")
    counts = [(p, enumerate_flags(family(p), steps)) for p in primes]
    poly = interpolate(counts[: degree_bound + 1])
    for p, c in counts[degree_bound + 1:]:
        if poly(p) != c:
            raise ValueError(f"counting polynomial inconsistent at p={p}")
    return poly


def primes_for_degree(degree_bound: int, start: Sequence[int] = ()) -> list:
    """The spec'd prime list, extended until degree_bound+1 points exist."""
    out = [p for p in start]
    for p in _SMALL_PRIMES:
        if len(out) >= degree_bound + 1:
            break
        if p not in out:
            out.append(p)
    if len(out) < degree_bound + 1:
        raise ValueError("prime pool exhausted")
    return sorted(out)
