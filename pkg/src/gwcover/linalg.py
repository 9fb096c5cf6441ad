"""Exact dense linear algebra over a field ``K`` (matrices are lists of rows)."""

from __future__ import annotations


def identity(n: int, K) -> list[list]:
    return [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]


def zeros(m: int, n: int, K) -> list[list]:
    return [[K.zero] * n for _ in range(m)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def matmul(A, B, K):
    Bt = transpose(B)
    zero = K.zero
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = zero
            for a, b in zip(row, col):
                if a != zero and b != zero:
                    acc = K.add(acc, K.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def matvec(A, v, K):
    zero = K.zero
    out = []
    for row in A:
        acc = zero
        for a, b in zip(row, v):
            if a != zero and b != zero:
                acc = K.add(acc, K.mul(a, b))
        out.append(acc)
    return out


def matpow(A, e: int, K):
    result = identity(len(A), K)
    while e:
        if e & 1:
            result = matmul(result, A, K)
        e >>= 1
        if e:
            A = matmul(A, A, K)
    return result


def vec_add(u, v, K):
    return [K.add(a, b) for a, b in zip(u, v)]


def vec_scale(c, v, K):
    return [K.mul(c, a) for a in v]


def rref(M, K):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    zero = K.zero
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(inv, x) for x in A[r]]
        prow = A[r]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f != zero:
                    A[i] = [K.sub(x, K.mul(f, y)) if y != zero else x for x, y in zip(A[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M, K) -> int:
    return len(rref(M, K)[1])


def kernel(M, K, ncols: int | None = None):
    """Basis of the right null space ``{x : M x = 0}``."""
    if not M:
        n = ncols or 0
        return [[K.one if i == j else K.zero for i in range(n)] for j in range(n)]
    R, pivots = rref(M, K)
    n = len(M[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = K.neg(row[f])
        basis.append(v)
    return basis


def solve(A, b, K):
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, K)
    if n in pivots:
        return None
    x = [K.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def det(M, K):
    A = [list(r) for r in M]
    n = len(A)
    result = K.one
    zero = K.zero
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != zero), None)
        if piv is None:
            return zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = K.neg(result)
        p = A[c][c]
        result = K.mul(result, p)
        inv = K.inv(p)
        for i in range(c + 1, n):
            f = A[i][c]
            if f != zero:
                f = K.mul(f, inv)
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[c])]
    return result


def row_space_basis(vectors, K):
    return rref(vectors, K)[0]
