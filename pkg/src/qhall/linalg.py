"""Dense exact linear algebra over prime fields F_p.

Matrices are lists of lists of ints reduced mod p; subspaces are row spaces
of matrices in reduced row echelon form (RREF).  Everything is small and
exact; no floating point.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, List, Sequence

Matrix = List[List[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], p: int) -> Matrix:
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % p for col in bt] for row in A]


def mat_add(A, B, p) -> Matrix:
    return [[(x + y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(A, B)]


def mat_neg(A, p) -> Matrix:
    return [[(-x) % p for x in row] for row in A]


def rref(A: Sequence[Sequence[int]], p: int):
    """Reduced row echelon form; returns (R, pivot_columns) with zero rows
    dropped.
    """
    m = [list(row) for row in A]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] % p != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p != 0:
                f = m[i][c] % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return [row for row in m[:r]], pivots


def rank(A: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(A, p)[0])


def kernel_basis(A: Sequence[Sequence[int]], p: int, cols: int | None = None) -> Matrix:
    """Basis (as rows) of {x : A x = 0}, x a column vector."""
    if cols is None:
        cols = len(A[0]) if A else 0
    R, pivots = rref(A, p) if A else ([], [])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r][fc]) % p
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[int]], b: Sequence[int], p: int):
    """One solution x of A x = b, or None."""
    if not A:
        return [] if not any(b) else None
    aug = [list(row) + [bb % p] for row, bb in zip(A, b)]
    R, pivots = rref(aug, p)
    cols = len(A[0])
    for row in R:
        if all(x == 0 for x in row[:cols]) and row[cols] % p != 0:
            return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = R[r][cols] % p
    return x


def mat_inv(A: Sequence[Sequence[int]], p: int) -> Matrix:
    n = len(A)
    aug = [list(row) + ident_row for row, ident_row in zip(A, identity(n))]
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


# -- subspaces as row spaces -------------------------------------------------

def row_space_contains(basis_rref: Sequence[Sequence[int]], vectors, p: int) -> bool:
    """True if every row of `vectors` lies in the row space of basis_rref."""
    base = [list(r) for r in basis_rref]
    k = len(base)
    stacked = base + [list(v) for v in vectors]
    return rank(stacked, p) == k


def coords_in_rref(basis_rref: Sequence[Sequence[int]], pivots: Sequence[int],
                   vector: Sequence[int], p: int):
    """Coordinates of a row vector in an RREF basis (the vector must lie in
    the row space): simply the entries at the pivot columns.
    """
    return [vector[c] % p for c in pivots]


def enumerate_subspaces(dim: int, k: int, p: int) -> Iterator[Matrix]:
    """All k-dimensional subspaces of F_p^dim, each as an RREF row basis.

    Iteration is lexicographic on pivot sets, then on free entries, so the
    enumeration is deterministic and duplicate-free.
    """
    if k < 0 or k > dim:
        return
    if k == 0:
        yield []
        return
    for pivots in combinations(range(dim), k):
        free_positions = [(r, c) for r in range(k) for c in range(dim)
                          if c > pivots[r] and c not in pivots]
        for values in product(range(p), repeat=len(free_positions)):
            basis = zeros(k, dim)
            for r, pc in enumerate(pivots):
                basis[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                basis[r][c] = v
            yield basis


def enumerate_superspaces(W: Sequence[Sequence[int]], dim: int, k: int,
                          p: int) -> Iterator[Matrix]:
    """All k-dimensional subspaces of F_p^dim containing the row space of W,
    via subspaces of the quotient lifted through complement coordinates.
    Bases are returned in RREF.
    """
    R, piv = rref(W, p) if len(W) else ([], [])
    w = len(R)
    if k < w or k > dim:
        return
    comp = [c for c in range(dim) if c not in piv]
    for C in enumerate_subspaces(len(comp), k - w, p):
        lifted = [list(r) for r in R]
        for row in C:
            v = [0] * dim
            for x, c in zip(row, comp):
                v[c] = x
            lifted.append(v)
        out, _ = rref(lifted, p)
        yield out


def subspace_count(dim: int, k: int, p: int) -> int:
    """Gaussian binomial [dim choose k]_p by the product formula."""
    if k < 0 or k > dim:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (dim - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def intersect_rowspaces(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
                        p: int, dim: int) -> Matrix:
    """RREF basis of rowspace(A) intersect rowspace(B)."""
    if not A or not B:
        return []
    # x*A = y*B  <=>  [x | y] in kernel of [A ; -B]^T
    stacked = [list(r) for r in A] + [[(-x) % p for x in r] for r in B]
    ker = kernel_basis(transpose(stacked), p, cols=len(stacked))
    vecs = []
    for comb in ker:
        v = [0] * dim
        for coef, row in zip(comb[: len(A)], A):
            for j in range(dim):
                v[j] = (v[j] + coef * row[j]) % p
        vecs.append(v)
    R, _ = rref(vecs, p) if vecs else ([], [])
    return R
