"""Exact linear algebra over an FqField.

Matrices are tuples of row tuples; vectors are tuples.  Subspaces are stored
as the rows of their reduced row echelon form, which is canonical.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from .fields import FqField

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def ident(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def ncols(A: Matrix, default: int = 0) -> int:
    return len(A[0]) if A else default


def mat_mul(F: FqField, A: Matrix, B: Matrix) -> Matrix:
    M, Ad = F.mul_table, F.add_table
    Bt = transpose(B)
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = Ad[acc][M[a][b]]
            new.append(acc)
        out.append(tuple(new))
    if not Bt:
        return tuple(() for _ in A)
    return tuple(out)


def mat_vec(F: FqField, A: Matrix, v: Vector) -> Vector:
    M, Ad = F.mul_table, F.add_table
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = Ad[acc][M[a][b]]
        out.append(acc)
    return tuple(out)


def mat_add(F: FqField, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_sub(F: FqField, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(A, B))


def vec_add(F: FqField, u: Vector, v: Vector) -> Vector:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_scale(F: FqField, c: int, v: Vector) -> Vector:
    return tuple(F.mul(c, a) for a in v)


def frob_mat(F: FqField, A: Matrix, q: int) -> Matrix:
    """Entrywise q-th power."""
    return tuple(tuple(F.pow(a, q) for a in row) for row in A)


def frob_vec(F: FqField, v: Vector, q: int) -> Vector:
    return tuple(F.pow(a, q) for a in v)


def map_entries(A: Matrix, table) -> Matrix:
    return tuple(tuple(table[a] for a in row) for row in A)


def columns(A: Matrix) -> list[Vector]:
    return list(transpose(A))


def from_columns(cols: list[Vector], n: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(n))
    return transpose(tuple(cols))


def rref(F: FqField, rows) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    R = [list(r) for r in rows]
    if not R:
        return [], []
    nc = len(R[0])
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, len(R)) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(F: FqField, A) -> int:
    return len(rref(F, A)[1])


def span(F: FqField, vectors) -> tuple[Vector, ...]:
    """Canonical basis (rref rows) of the span of ``vectors``."""
    R, _ = rref(F, vectors)
    return tuple(tuple(r) for r in R)


def nullspace(F: FqField, A: Matrix, nc: int | None = None) -> list[Vector]:
    """Basis of {v : A v = 0}."""
    nc = ncols(A) if nc is None else nc
    R, piv = rref(F, A)
    free = [c for c in range(nc) if c not in piv]
    basis = []
    for f in free:
        v = [0] * nc
        v[f] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def solve(F: FqField, A: Matrix, b: Vector) -> Vector | None:
    """One solution x of A x = b, or None."""
    nc = ncols(A)
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug)
    if nc in piv:
        return None
    x = [0] * nc
    for row, pc in zip(R, piv):
        x[pc] = row[nc]
    return tuple(x)


def inverse(F: FqField, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(F, aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in R)


def is_invertible(F: FqField, A: Matrix) -> bool:
    return len(A) == ncols(A) and rank(F, A) == len(A)


def det(F: FqField, A: Matrix) -> int:
    R = [list(r) for r in A]
    n = len(R)
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if R[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            R[c], R[pr] = R[pr], R[c]
            d = F.neg(d)
        d = F.mul(d, R[c][c])
        inv = F.inv(R[c][c])
        for i in range(c + 1, n):
            if R[i][c]:
                f = F.mul(R[i][c], inv)
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[c])]
    return d


def in_span(F: FqField, basis, v: Vector) -> bool:
    return rank(F, list(basis) + [v]) == rank(F, basis)


def subspace_leq(F: FqField, U, V) -> bool:
    return all(in_span(F, V, u) for u in U) if U else True


def reduce_mod(F: FqField, basis_rref, pivots, v: Vector) -> list[int]:
    v = list(v)
    for row, pc in zip(basis_rref, pivots):
        if v[pc]:
            f = v[pc]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return v


def complement_basis(F: FqField, big, small) -> list[Vector]:
    """Canonical lifts of a basis of big/small.

    Rows of the rref of ``big`` reduced to vanish on the pivots of ``small``.
    """
    S, sp = rref(F, small)
    B, _ = rref(F, big)
    red = [reduce_mod(F, S, sp, b) for b in B]
    R, _ = rref(F, red)
    return [tuple(r) for r in R]


def coords(F: FqField, basis: list[Vector], v: Vector) -> Vector | None:
    """Coefficients of ``v`` in ``basis`` (vectors), or None if not in span."""
    if not basis:
        return () if not any(v) else None
    return solve(F, transpose(tuple(basis)), v)


def kron(F: FqField, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(F.mul(a, b) for a in ra for b in rb) for ra in A for rb in B)


def compound(F: FqField, A: Matrix, m: int) -> Matrix:
    """m-th exterior power of A in the basis e_I, I increasing subsets (lex)."""
    n = len(A)
    subsets = list(combinations(range(n), m))
    return tuple(tuple(det(F, tuple(tuple(A[i][j] for j in J) for i in I)) for J in subsets)
                 for I in subsets)


def sym_power(F: FqField, A: Matrix, m: int) -> Matrix:
    """m-th symmetric power of A in the monomial basis (multisets, lex)."""
    n = len(A)
    monos = list(combinations_with_replacement(range(n), m))
    index = {mono: k for k, mono in enumerate(monos)}
    cols = []
    for mono in monos:
        poly = {(): 1}
        for j in mono:
            new: dict = {}
            for key, c in poly.items():
                for i in range(n):
                    if A[i][j]:
                        k2 = tuple(sorted(key + (i,)))
                        new[k2] = F.add(new.get(k2, 0), F.mul(c, A[i][j]))
            poly = new
        col = [0] * len(monos)
        for key, c in poly.items():
            col[index[key]] = c
        cols.append(tuple(col))
    return from_columns(cols, len(monos))
