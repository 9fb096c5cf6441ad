"""Symmetric bilinear forms as Gram matrices, diagonalization and trace forms."""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .errors import CrossCheckError, DegenerateFormError, FieldMismatchError
from .fields import Extension, Field, product_basis, monomial_element
from .gw import GWElement


class GramForm:
    """A symmetric matrix of raw elements of ``field``."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: Field, matrix: Sequence[Sequence]):
        self.field = field
        self.matrix = [list(row) for row in matrix]
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("Gram matrix is not symmetric")

    @classmethod
    def from_values(cls, field: Field, matrix) -> "GramForm":
        return cls(field, [[field.convert(x) for x in row] for row in matrix])

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def det(self):
        return linalg.det(self.matrix, self.field)

    def is_degenerate(self) -> bool:
        return self.field.is_zero(self.det()) if self.matrix else False

    def diagonal(self) -> list:
        """Diagonal entries of a congruent diagonal matrix (raw elements)."""
        return diagonal_entries(self.matrix, self.field)

    def to_gw(self) -> GWElement:
        return diagonalize(self)

    def transfer(self, target: Field) -> "GramForm":
        """Compose with the trace down to ``target``: the form Tr(B(x, y)) on the underlying target-space."""
        return transfer(self, target)

    def __repr__(self):
        K = self.field
        rows = ["[" + ", ".join(K.format(x) for x in row) + "]" for row in self.matrix]
        return f"GramForm({self.field!r}, [{', '.join(rows)}])"


def diagonal_entries(matrix, K: Field) -> list:
    """Symmetric congruence elimination, first nonzero diagonal pivot in index order."""
    M = [list(row) for row in matrix]
    n = len(M)
    out = []
    zero = K.zero
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][i] != zero), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != zero), None)
            if pair is None:
                raise DegenerateFormError("the form is degenerate")
            i, j = pair
            # e_i -> e_i + e_j; the new diagonal entry is 2 M_ij (char != 2)
            for c in range(n):
                M[i][c] = K.add(M[i][c], M[j][c])
            for r in range(n):
                M[r][i] = K.add(M[r][i], M[r][j])
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        d = M[k][k]
        dinv = K.inv(d)
        for r in range(k + 1, n):
            if M[r][k] == zero:
                continue
            f = K.mul(M[r][k], dinv)
            for c in range(k, n):
                M[r][c] = K.sub(M[r][c], K.mul(f, M[k][c]))
            for rr in range(k, n):
                M[rr][r] = M[r][rr]
        out.append(d)
    return out


def diagonalize(g: GramForm) -> GWElement:
    if not g.field.is_base:
        raise FieldMismatchError("diagonalize needs a base-field form; trace it down first")
    return GWElement.from_diagonal(g.field, [g.field.wrap(d) for d in g.diagonal()])


def _tower_between(L: Field, target: Field) -> list[Extension]:
    stages = []
    K = L
    while K != target:
        if K.parent is None:
            raise FieldMismatchError(f"{target} is not a subfield of {L}")
        stages.append(K)
        K = K.parent
    return stages


def _relative_basis(L: Field, target: Field) -> list:
    """Raw elements of L forming the product monomial basis of L over ``target``."""
    stages = list(reversed(_tower_between(L, target)))
    basis = [L.one]
    for st in stages:
        g = L.embed(st.gen, st) if st.d > 1 else None
        powers = [L.one]
        for _ in range(1, st.d):
            powers.append(L.mul(powers[-1], g))
        basis = [L.mul(b, p) for p in powers for b in basis]
    return basis


def gram_matrix(L: Field, multiplier, target: Field | None = None) -> GramForm:
    """Gram matrix ``Tr_{L/target}(b e_i e_j)`` on the product tower basis."""
    target = L.base if target is None else target
    b = L.convert(multiplier)
    if L.is_zero(b):
        raise ValueError("the multiplier must be nonzero")
    if target == L.base:
        exps = product_basis(L)
        cache: dict[tuple, object] = {}
        n = len(exps)
        G = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                key = tuple(a + c for a, c in zip(exps[i], exps[j]))
                if key not in cache:
                    cache[key] = L.trace_to(L.mul(b, monomial_element(L, key)), target) if L != target else b
                G[i][j] = G[j][i] = cache[key]
        return GramForm(target, G)
    basis = _relative_basis(L, target)
    n = len(basis)
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = L.mul(b, L.mul(basis[i], basis[j]))
            G[i][j] = G[j][i] = L.trace_to(x, target) if L != target else x
    return GramForm(target, G)


def trace_form(L: Field, multiplier, target: Field | None = None):
    """``Tr_{L/target}<b>``: a GWElement at the base, a GramForm at an intermediate stage."""
    g = gram_matrix(L, multiplier, target)
    return diagonalize(g) if g.field.is_base else g


def transfer(g: GramForm, target: Field) -> GramForm:
    """The form ``Tr_{L/target} o B`` on the target-space with basis ``w_a v_i``."""
    L = g.field
    if L == target:
        return g
    basis = _relative_basis(L, target)
    n = g.dimension
    idx = [(i, a) for i in range(n) for a in range(len(basis))]
    m = len(idx)
    G = [[None] * m for _ in range(m)]
    for p, (i, a) in enumerate(idx):
        for q in range(p, m):
            j, c = idx[q]
            x = L.mul(g.matrix[i][j], L.mul(basis[a], basis[c]))
            G[p][q] = G[q][p] = L.trace_to(x, target)
    return GramForm(target, G)


def cyclic_closed_form(n: int, s, K: Field) -> GWElement:
    H = GWElement.hyperbolic(K)
    if n % 2:
        return GWElement.form(K, n) + ((n - 1) // 2) * H
    return GWElement.form(K, n) + GWElement.form(K, K.mul(K.from_int(n), K.convert(s))) + ((n - 2) // 2) * H


def cyclic_trace_check(n: int, s, K: Field) -> GWElement:
    """Trace form of ``K[z]/(z^n - s)``, asserted equal to its closed form."""
    if n < 1:
        raise ValueError("n must be positive")
    if K.is_zero(K.from_int(n)):
        raise ValueError(f"n = {n} is not invertible in {K}")
    s = K.convert(s)
    if K.is_zero(s):
        raise ValueError("s must be nonzero")
    if n == 1:
        computed = GWElement.one(K)
    else:
        modulus = [K.neg(s)] + [K.zero] * (n - 1) + [K.one]
        try:
            L = Extension(K, modulus, "z")
        except ValueError:
            raise ValueError(f"z^{n} - {K.format(s)} is reducible over {K}") from None
        computed = trace_form(L, 1)
    expected = cyclic_closed_form(n, s, K)
    if computed != expected:
        raise CrossCheckError(f"cyclic trace form {computed} differs from closed form {expected}")
    return computed


def _is_square_in(c, L: Field) -> bool:
    from .factor import factor_univariate

    return any(len(f) == 2 for f, _ in factor_univariate([L.neg(c), L.zero, L.one], L))


def agrees_after_extension(x: GWElement, g: GramForm) -> bool:
    """Whether the base class ``x``, extended to ``L = g.field``, is the class of ``g``.

    Compares ranks, checks that the ratio of discriminants is a square in L,
    and tests the projection formula ``Tr(lam * g) = x * Tr<lam>`` for a few
    multipliers ``lam`` built from the top generator of L.
    """
    L = g.field
    K = x.field
    if L == K:
        return diagonalize(g) == x
    if x.rank != g.dimension:
        return False
    d_x = K.one
    for c, m in x.entries.items():
        d_x = K.mul(d_x, K.pow(K.convert(c), abs(m)))
    d_g = L.one
    for d in g.diagonal():
        d_g = L.mul(d_g, d)
    if not _is_square_in(L.mul(d_g, L.inv(L.embed(d_x, K))), L):
        return False
    gen = L.gen
    probes = [L.one, gen, L.add(L.one, gen), L.add(L.from_int(2), gen)]
    for lam in probes:
        if L.is_zero(lam):
            continue
        scaled = GramForm(L, [[L.mul(lam, v) for v in row] for row in g.matrix])
        if transfer(scaled, K).to_gw() != x * trace_form(L, lam, K):
            return False
    return True
