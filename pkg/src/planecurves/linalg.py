"""Dense linear algebra over a field context: matrices as tuples of rows."""

from __future__ import annotations


def mat_vec(ctx, m, v):
    return tuple(
        _dot(ctx, row, v)
        for row in m
    )


def _dot(ctx, row, v):
    acc = 0
    for a, b in zip(row, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def mat_mul(ctx, a, b):
    cols = list(zip(*b))
    return tuple(tuple(_dot(ctx, row, col) for col in cols) for row in a)


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(ctx, m):
    """Inverse by Gauss-Jordan elimination, or None if singular."""
    n = len(m)
    aug = [list(row) + list(ident_row) for row, ident_row in zip(m, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = ctx.inv(aug[col][col])
        aug[col] = [ctx.mul(inv_p, c) for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def nullspace(ctx, rows, ncols: int):
    """Basis of the right kernel of the given row vectors."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv_p = ctx.inv(mat[r][col])
        mat[r] = [ctx.mul(inv_p, c) for c in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row_i, pc in enumerate(pivots):
            vec[pc] = ctx.neg(mat[row_i][fc])
        basis.append(tuple(vec))
    return basis
