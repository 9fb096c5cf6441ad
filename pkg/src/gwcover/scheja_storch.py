"""Finite quotient algebras k[t]/(s), their local factor at the origin, and Scheja--Storch forms.

The quotient is found with Macaulay matrices under a degree-lexicographic
order: all multiples ``m * s_i`` up to a degree bound ``D`` are row reduced
with larger monomials first, and ``D`` grows until the staircase of leading
monomials closes.  The resulting candidate basis is accepted only if the
multiplication matrices commute and every ``s_i`` acts as zero on the unit,
which (with an order-ideal basis) certifies it as the full affine quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import CapacityError, CrossCheckError, NonIsolatedError, PositiveDimensionalError
from .fields import Field
from .forms import GramForm, diagonalize
from .gw import GWElement
from .mpoly import MultiPoly

DEFAULT_MAX_COLUMNS = 6000


def _monomials_up_to(r: int, D: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(D + 1):
        for c in itertools.combinations_with_replacement(range(r), d):
            e = [0] * r
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def _deglex_key(e):
    return (sum(e), e)


def _unit_vec(n, i, K):
    v = [K.zero] * n
    v[i] = K.one
    return v


@dataclass
class QuotientAlgebra:
    """``k[t]/(s)`` (or a local factor of it) with a basis labelled by monomials.

    ``mult_ops[i]`` is the matrix of multiplication by ``t_i``; column ``j``
    holds the coordinates of ``t_i * b_j``.  ``labels[j]`` is a monomial whose
    image is the ``j``-th basis vector.
    """

    field: Field
    variables: tuple
    relations: tuple
    labels: list
    mult_ops: list
    unit: list

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def monomial_vector(self, exps, _cache=None) -> list:
        cache = _cache if _cache is not None else {}
        exps = tuple(exps)
        if exps in cache:
            return cache[exps]
        if not any(exps):
            v = list(self.unit)
        else:
            i = next(k for k, x in enumerate(exps) if x)
            prev = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            v = linalg.matvec(self.mult_ops[i], self.monomial_vector(prev, cache), self.field)
        cache[exps] = v
        return v

    def element(self, f: MultiPoly) -> list:
        """Coordinates of the image of a polynomial."""
        K = self.field
        if f.variables != self.variables:
            f = _reorder(f, self.variables)
        f = f.change_field(K) if f.field != K else f
        cache: dict = {}
        acc = [K.zero] * self.dimension
        for e, c in f.terms.items():
            v = self.monomial_vector(e, cache)
            acc = [K.add(a, K.mul(c, x)) for a, x in zip(acc, v)]
        return acc

    def label_matrix(self, j: int) -> list:
        """Matrix of multiplication by the basis element ``b_j``."""
        K = self.field
        M = linalg.identity(self.dimension, K)
        for i, k in enumerate(self.labels[j]):
            for _ in range(k):
                M = linalg.matmul(self.mult_ops[i], M, K)
        return M

    def multiply(self, u: Sequence, v: Sequence) -> list:
        K = self.field
        acc = [K.zero] * self.dimension
        for j, c in enumerate(u):
            if c != K.zero:
                w = linalg.matvec(self.label_matrix(j), v, K)
                acc = [K.add(a, K.mul(c, x)) for a, x in zip(acc, w)]
        return acc

    def basis_strings(self) -> list[str]:
        out = []
        for e in self.labels:
            mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            out.append(mon or "1")
        return out


def _reorder(f: MultiPoly, variables) -> MultiPoly:
    if set(f.variables) - set(variables):
        raise ValueError(f"polynomial uses variables outside {variables}")
    idx = [f.variables.index(v) if v in f.variables else None for v in variables]
    terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in f.terms.items()}
    return MultiPoly(f.field, variables, terms)


def build_quotient(s_list: Sequence[MultiPoly], variables: Sequence[str] | None = None, *,
                   max_degree: int | None = None,
                   max_columns: int = DEFAULT_MAX_COLUMNS) -> QuotientAlgebra:
    if not s_list:
        raise ValueError("need at least one relation")
    variables = tuple(variables) if variables is not None else s_list[0].variables
    r = len(variables)
    if len(s_list) != r:
        raise ValueError(f"expected {r} relations in {r} variables, got {len(s_list)}")
    K = s_list[0].field
    for s in s_list[1:]:
        if s.field != K and s.field.contains_subfield(K):
            K = s.field
    polys = [_reorder(s, variables).change_field(K) for s in s_list]
    if any(p.is_zero() for p in polys):
        raise PositiveDimensionalError("a zero relation never cuts out a finite scheme")
    degs = [p.total_degree() for p in polys]
    D = max(degs)
    bound = max_degree if max_degree is not None else 2 * sum(degs) + 2 * r + 2
    while D <= bound:
        monos = _monomials_up_to(r, D)
        if len(monos) > max_columns:
            raise CapacityError(f"quotient construction needs more than {max_columns} monomials")
        result = _try_degree(polys, variables, K, D, monos)
        if result is not None:
            return result
        D += 1
    raise PositiveDimensionalError("the relations do not cut out a finite scheme (staircase never closed)")


def _try_degree(polys, variables, K, D, monos):
    r = len(variables)
    cols = sorted(monos, key=_deglex_key, reverse=True)
    col_of = {e: i for i, e in enumerate(cols)}
    rows = []
    for p in polys:
        dp = p.total_degree()
        for m in monos:
            if sum(m) + dp > D:
                continue
            row = [K.zero] * len(cols)
            for e, c in p.terms.items():
                row[col_of[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    R, pivots = linalg.rref(rows, K)
    pivset = set(pivots)
    lead = {cols[c] for c in pivots}
    closed = None
    for d in range(D + 1):
        if all(e in lead for e in monos if sum(e) == d):
            closed = d
            break
    if closed is None:
        return None
    basis = sorted((e for e in monos if sum(e) < closed and e not in lead), key=_deglex_key)
    if not basis:
        return QuotientAlgebra(K, variables, tuple(polys), [], [[] for _ in range(r)], [])
    bset = set(basis)
    # order ideal check
    for b in basis:
        for i in range(r):
            if b[i]:
                q = b[:i] + (b[i] - 1,) + b[i + 1:]
                if q not in bset:
                    return None
    bidx = {e: i for i, e in enumerate(basis)}
    row_of_pivot = {c: R[k] for k, c in enumerate(pivots)}

    def normal_form(e):
        v = [K.zero] * len(basis)
        if e in bidx:
            v[bidx[e]] = K.one
            return v
        row = row_of_pivot[col_of[e]]
        for c, x in enumerate(row):
            if x != K.zero and c not in pivset:
                mono = cols[c]
                if mono not in bidx:
                    return None
                v[bidx[mono]] = K.neg(x)
        return v

    ops = []
    n = len(basis)
    for i in range(r):
        M = linalg.zeros(n, n, K)
        for j, b in enumerate(basis):
            tb = b[:i] + (b[i] + 1,) + b[i + 1:]
            v = normal_form(tb)
            if v is None:
                return None
            for k in range(n):
                M[k][j] = v[k]
        ops.append(M)
    for i in range(r):
        for j in range(i + 1, r):
            if linalg.matmul(ops[i], ops[j], K) != linalg.matmul(ops[j], ops[i], K):
                return None
    J = QuotientAlgebra(K, variables, tuple(polys), basis, ops, _unit_vec(n, 0, K))
    for p in polys:
        if any(x != K.zero for x in J.element(p)):
            return None
    return J


def local_factor_at_origin(J: QuotientAlgebra) -> QuotientAlgebra:
    """The factor of ``J`` supported at the origin (simultaneous generalized kernel)."""
    K = J.field
    n = J.dimension
    if n == 0:
        raise ValueError("empty algebra: the origin is not a zero of the relations")
    powers = [linalg.matpow(M, n, K) for M in J.mult_ops]
    stacked = [row for P in powers for row in P]
    V0 = linalg.kernel(stacked, K, n)
    if not V0:
        raise ValueError("empty local factor: the origin is not a zero of the relations")
    if len(V0) == n:
        return J
    W = linalg.row_space_basis([list(col) for P in powers for col in linalg.transpose(P)], K)
    # project the unit onto V0 along W
    A = linalg.transpose(V0 + W)
    coords = linalg.solve(A, J.unit, K)
    if coords is None:
        raise CrossCheckError("generalized eigenspaces do not span the algebra")
    e0 = [K.zero] * n
    for c, v in zip(coords[: len(V0)], V0):
        e0 = linalg.vec_add(e0, linalg.vec_scale(c, v, K), K)
    # greedy basis of images of monomial labels
    labels, vecs = [], []
    cache: dict = {}
    for lab in J.labels:
        mv = _apply_monomial(J, lab, e0, cache)
        if linalg.rank(vecs + [mv], K) > len(vecs):
            labels.append(lab)
            vecs.append(mv)
        if len(vecs) == len(V0):
            break
    if len(vecs) != len(V0):
        raise CrossCheckError("monomial images do not span the local factor")
    B = linalg.transpose(vecs)
    m = len(vecs)
    ops = []
    for M in J.mult_ops:
        L = linalg.zeros(m, m, K)
        for j, v in enumerate(vecs):
            w = linalg.matvec(M, v, K)
            c = linalg.solve(B, w, K)
            if c is None:
                raise CrossCheckError("local factor is not stable under multiplication")
            for k in range(m):
                L[k][j] = c[k]
        ops.append(L)
    return QuotientAlgebra(K, J.variables, J.relations, labels, ops, _unit_vec(m, 0, K))


def _apply_monomial(J, exps, v, cache):
    key = tuple(exps)
    if key in cache:
        return cache[key]
    if not any(key):
        out = list(v)
    else:
        i = next(k for k, x in enumerate(key) if x)
        prev = key[:i] + (key[i] - 1,) + key[i + 1:]
        out = linalg.matvec(J.mult_ops[i], _apply_monomial(J, prev, v, cache), J.field)
    cache[key] = out
    return out


def coefficient_matrix(s_list: Sequence[MultiPoly], variables: Sequence[str], rule: str = "lowest"):
    """``a_ij`` with ``s_i = sum_j a_ij t_j``; each monomial goes to its lowest (or highest) dividing variable."""
    if rule not in ("lowest", "highest"):
        raise ValueError(f"unknown assignment rule {rule!r}")
    variables = tuple(variables)
    r = len(variables)
    A = []
    for s in s_list:
        s = _reorder(s, variables)
        K = s.field
        parts: list[dict] = [{} for _ in range(r)]
        for e, c in s.terms.items():
            idx = [i for i, x in enumerate(e) if x]
            if not idx:
                raise ValueError("relations must vanish at the origin")
            j = idx[0] if rule == "lowest" else idx[-1]
            ne = e[:j] + (e[j] - 1,) + e[j + 1:]
            parts[j][ne] = c
        A.append([MultiPoly(K, variables, p) for p in parts])
    return A


def poly_det(A: list[list[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along the first row."""
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * poly_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


@dataclass
class SSForm:
    algebra: QuotientAlgebra
    element: list
    functional_index: int
    form: GramForm
    gw: GWElement | None

    @property
    def rank(self) -> int:
        return self.form.dimension


def ss_form(J_local: QuotientAlgebra, s_list: Sequence[MultiPoly], t_vars: Sequence[str] | None = None,
            rule: str = "lowest") -> SSForm:
    K = J_local.field
    t_vars = tuple(t_vars) if t_vars is not None else J_local.variables
    if J_local.dimension == 0:
        raise ValueError("empty local algebra")
    polys = [_reorder(s, t_vars).change_field(K) for s in s_list]
    A = coefficient_matrix(polys, t_vars, rule)
    e_poly = poly_det(A)
    e = J_local.element(_reorder(e_poly, J_local.variables))
    k = next((i for i, x in enumerate(e) if x != K.zero), None)
    if k is None:
        raise NonIsolatedError("the Scheja-Storch element vanishes in the local algebra")
    for M in J_local.mult_ops:
        if any(x != K.zero for x in linalg.matvec(M, e, K)):
            raise CrossCheckError("the Scheja-Storch element is not in the socle")
    inv = K.inv(e[k])
    n = J_local.dimension
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        # column j of the matrix of b_i holds b_i * b_j
        row_k = J_local.label_matrix(i)[k]
        for j in range(i, n):
            G[i][j] = G[j][i] = K.mul(row_k[j], inv)
    form = GramForm(K, G)
    gw = diagonalize(form) if K.is_base else None
    if K.is_base and gw.rank != n:
        raise CrossCheckError("Scheja-Storch form rank differs from the local dimension")
    return SSForm(J_local, e, k, form, gw)


def gradient(f: MultiPoly, variables: Sequence[str] | None = None) -> list[MultiPoly]:
    variables = tuple(variables) if variables is not None else f.variables
    return [f.derivative(v) for v in variables]


def a1_milnor(f: MultiPoly, variables: Sequence[str] | None = None, rule: str = "lowest"):
    """A^1-Milnor number at the origin: a GWElement over the base, else the GramForm."""
    variables = tuple(variables) if variables is not None else f.variables
    grads = gradient(f, variables)
    for g in grads:
        if g.constant_term() != g.field.zero:
            raise ValueError("the origin is not a critical point")
    try:
        J = build_quotient(grads, variables)
    except PositiveDimensionalError as exc:
        raise NonIsolatedError(f"non-isolated critical point: {exc}") from None
    J0 = local_factor_at_origin(J)
    ss = ss_form(J0, grads, variables, rule)
    return ss.gw if ss.gw is not None else ss.form
