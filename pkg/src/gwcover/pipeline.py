"""Quadratic Euler characteristic of a double cover of P^2 branched along a smooth plane curve.

Given ``F`` homogeneous of degree ``2n`` in ``X0, X1, X2`` with ``F(0,0,1)`` a
nonzero square, the projection from ``[0:0:1]`` restricts to the branch curve
``C = V(F)``; its critical points are the closed points of ``V(F, dF/dX2)``.
Each contributes through its local data ``(m, alpha)``:

    beta = sum over odd m of Tr_{k(y)/k} <-2 alpha>
    chi  = 2<1> + beta + ((2n-1)(n-1) + 1 - rank(beta)/2) H
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg, upoly
from .errors import (
    CharacteristicError,
    CrossCheckError,
    FieldMismatchError,
    MNotInvertibleError,
    NonIsolatedError,
    NonSquareBasePointError,
    SingularCurveError,
    ValidationError,
    WrongDegreeError,
)
from .factor import DEFAULT_MAX_DEGREE, DEFAULT_SEED, factor_univariate
from .fields import Extension, Field, PrimeField, Rationals, TowerElement
from .forms import GramForm, diagonalize, trace_form
from .gw import GWElement
from .mpoly import MultiPoly
from .scheja_storch import build_quotient
from .series import TruncatedSeries, compose, hensel_parametrize
from .squares import is_square

log = logging.getLogger(__name__)

VARIABLES = ("X0", "X1", "X2")


@dataclass(frozen=True)
class BranchedCoverInput:
    field: Field
    n: int
    F: MultiPoly

    @property
    def degree(self) -> int:
        return 2 * self.n


@dataclass
class CriticalPointRecord:
    """A closed point of V(F, dF/dX2) in a chart, with its local data once computed."""

    chart: str
    residue_field: Field
    coords: dict
    min_polys: list
    m: int | None = None
    alpha: TowerElement | None = None
    series: TruncatedSeries | None = None

    @property
    def degree(self) -> int:
        return self.residue_field.degree

    @property
    def solve_var(self) -> str:
        return "x1" if self.chart == "X0" else "x0"

    def local_class(self) -> GWElement | None:
        """Tr <-2 alpha> for odd m, otherwise None."""
        if self.m is None or self.alpha is None:
            raise ValueError("local data has not been computed")
        if self.m % 2 == 0:
            return None
        M = self.residue_field
        return trace_form(M, M.mul(M.from_int(-2), self.alpha.value))


@dataclass
class PipelineReport:
    input: BranchedCoverInput
    points: list
    beta: GWElement
    chi: GWElement
    chi_blowup_model: GWElement
    checks: dict = dc_field(default_factory=dict)
    beta_oracle: GWElement | None = None


# ---------------------------------------------------------------- validation

def _chart_poly(F: MultiPoly, chart: str) -> MultiPoly:
    if chart == "X0":
        return F.dehomogenize("X0").rename(("x1", "x2"))
    if chart == "X1":
        return F.dehomogenize("X1").rename(("x0", "x2"))
    raise ValueError(f"unknown chart {chart!r}")


def _check_shape(inp: BranchedCoverInput):
    K = inp.field
    if not isinstance(K, (Rationals, PrimeField)):
        raise ValidationError("the base field must be Q or F_p")
    if inp.n < 1:
        raise ValidationError("n must be a positive integer")
    if K.is_zero(K.from_int(2 * inp.n)):
        raise CharacteristicError(f"2n = {2 * inp.n} is not invertible in {K}")
    F = inp.F
    if F.variables != VARIABLES:
        raise ValidationError(f"F must be a polynomial in {', '.join(VARIABLES)}")
    if F.field != K:
        raise FieldMismatchError(f"F has coefficients in {F.field}, expected {K}")
    if F.is_zero() or not F.is_homogeneous() or F.total_degree() != 2 * inp.n:
        raise WrongDegreeError(f"degree must equal 2n = {2 * inp.n} (F must be homogeneous)")


def _off_curve_point(F: MultiPoly, K: Field, radius: int = 4):
    for P in itertools.product(range(-radius, radius + 1), repeat=3):
        if any(P) and F.evaluate([K.from_int(c) for c in P], K):
            return P
    return None


def _check_smooth(inp: BranchedCoverInput, seed: int, max_degree: int) -> list[CriticalPointRecord]:
    """Every singular point of C lies on V(F, dF/dX2), so smoothness is decided there:
    at a critical point the curve is smooth exactly when the partial in the
    chart's other affine variable is nonzero.  Needs F(0,0,1) != 0.
    """
    points = find_critical_points(inp, seed=seed, max_degree=max_degree)
    for pt in points:
        f = _chart_poly(inp.F, pt.chart)
        fj = f.derivative(pt.solve_var)
        if not fj.evaluate(pt.coords, pt.residue_field):
            raise SingularCurveError(f"the curve is singular at the point {_point_str(pt)}")
    return points


def validate_input(inp: BranchedCoverInput, *, seed: int = DEFAULT_SEED,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> list[CriticalPointRecord]:
    """Check every input invariant; returns the critical points found on the way.

    When ``[0:0:1]`` lies on the curve, smoothness is still decided (on a
    coordinate-moved copy) before the base-point error is raised.
    """
    _check_shape(inp)
    K = inp.field
    c = inp.F.coefficient((0, 0, 2 * inp.n))
    if K.is_zero(c):
        P = _off_curve_point(inp.F, K)
        if P is not None:
            moved = BranchedCoverInput(K, inp.n, move_point(inp.F, [K.from_int(x) for x in P]))
            _check_smooth(moved, seed, max_degree)
        raise NonSquareBasePointError("F(0,0,1) = 0: the point [0:0:1] lies on the branch curve")
    points = _check_smooth(inp, seed, max_degree)
    if not is_square(K.wrap(c)):
        raise NonSquareBasePointError(f"F(0,0,1) = {K.format(c)} must be a nonzero square in {K}")
    return points


def _point_str(pt: CriticalPointRecord) -> str:
    return f"{pt.chart} chart, " + ", ".join(f"{v} = {x}" for v, x in pt.coords.items())


# ------------------------------------------------------------ critical points

def _nested(f: MultiPoly, outer: str, inner: str) -> list:
    """``f`` as a list over powers of ``outer`` of dense polynomials in ``inner``."""
    K = f.field
    io, ii = f.index(outer), f.index(inner)
    out: list[list] = [[] for _ in range(f.degree(outer) + 1)]
    for e, c in f.terms.items():
        col = out[e[io]]
        k = e[ii]
        if len(col) <= k:
            col.extend([K.zero] * (k + 1 - len(col)))
        col[k] = c
    return [upoly.strip(col, K) for col in out]


def eliminate(f: MultiPoly, g: MultiPoly, var: str, keep: str) -> list:
    """``Res_var(f, g)`` as a dense polynomial in ``keep`` (subresultant PRS over K[keep])."""
    R = upoly.PolyRing(f.field)
    return upoly.resultant_ring(_nested(f, var, keep), _nested(g, var, keep), R)


def _root_or_stage(p: list, K: Field, name: str):
    """The field ``K[name]/(p)`` and its generator; a degree-one ``p`` gives ``K`` and its root."""
    if len(p) == 2:
        return K, K.neg(p[0])
    L = Extension(K, p, name, check=False)
    return L, L.gen


def find_critical_points(inp: BranchedCoverInput, *, seed: int = DEFAULT_SEED,
                         max_degree: int = DEFAULT_MAX_DEGREE) -> list[CriticalPointRecord]:
    K = inp.field
    F = inp.F
    points: list[CriticalPointRecord] = []

    # chart X0 = 1
    f = _chart_poly(F, "X0")
    fx2 = f.derivative("x2")
    R = eliminate(f, fx2, "x2", "x1")
    if not R:
        raise SingularCurveError("F and dF/dX2 share a common component, so the curve is singular")
    log.debug("resultant in x1 has degree %d", len(R) - 1)
    for p, _ in factor_univariate(R, K, seed=seed, max_degree=max_degree):
        L, a = _root_or_stage(p, K, "a")
        gf = f.to_univariate("x2", {"x1": L.wrap(a)}, L)
        gd = fx2.to_univariate("x2", {"x1": L.wrap(a)}, L)
        g = upoly.gcd(gf, gd, L)
        if len(g) < 2:
            raise CrossCheckError("a root of the resultant does not lift to a common zero")
        for h, _ in factor_univariate(g, L, seed=seed, max_degree=max_degree):
            M, b = _root_or_stage(h, L, "b")
            coords = {"x1": M.wrap(M.embed(a, L)), "x2": M.wrap(b)}
            polys = [upoly.to_str(p, K, "x1"), upoly.to_str(h, L, "x2")]
            points.append(CriticalPointRecord("X0", M, coords, polys))

    # chart X1 = 1 for points with X0 = 0
    f1 = _chart_poly(F, "X1")
    line = f1.substitute({"x0": 0})
    g1 = line.to_univariate("x2") if line.variables == ("x2",) else []
    d1 = line.derivative("x2").to_univariate("x2")
    g = upoly.gcd(g1, d1, K) if g1 else d1
    if len(g) >= 2:
        for h, _ in factor_univariate(g, K, seed=seed, max_degree=max_degree):
            M, b = _root_or_stage(h, K, "b")
            coords = {"x0": M.wrap(M.zero), "x2": M.wrap(b)}
            points.append(CriticalPointRecord("X1", M, coords, [upoly.to_str(h, K, "x2")]))
    return points


# ----------------------------------------------------------------- local data

def bezout_bound(n: int) -> int:
    return 2 * n * (2 * n - 1) + 2


def local_data(pt: CriticalPointRecord, inp: BranchedCoverInput) -> CriticalPointRecord:
    """Fill in ``m`` and ``alpha`` with the local parameter ``t = x2 - x2(y)``."""
    K = inp.field
    f = _chart_poly(inp.F, pt.chart)
    M = pt.residue_field
    xj = pt.solve_var
    fx2 = f.derivative("x2")
    fx22 = fx2.derivative("x2")
    limit = bezout_bound(inp.n)
    N = 4
    while True:
        try:
            h = hensel_parametrize(f, xj, "x2", pt.coords, N)
        except NonIsolatedError:
            raise SingularCurveError(
                f"d f/d{xj} vanishes at a critical point, so the curve is singular"
            ) from None
        subs = {xj: list(h.coefficients), "x2": [pt.coords["x2"].value, M.one]}
        ser = compose(fx2.change_field(M), subs, N, M)
        m = next((k for k, c in enumerate(ser) if c != M.zero), None)
        if m is not None:
            break
        if N >= limit:
            raise NonIsolatedError("dF/dX2 vanishes identically along the curve branch")
        N = min(2 * N, limit)
    if K.is_zero(K.from_int(m)):
        raise MNotInvertibleError(
            f"m = {m} is not invertible in {K} at the point {_point_str(pt)}"
        )
    ser2 = compose(fx22.change_field(M), subs, N, M)
    alpha = M.div(ser2[m - 1], M.from_int(m))
    if M.is_zero(alpha):
        raise CrossCheckError("alpha vanishes at a critical point")
    pt.m = m
    pt.alpha = M.wrap(alpha)
    pt.series = h
    return pt


def compute_beta(points: Sequence[CriticalPointRecord], K: Field) -> GWElement:
    beta = GWElement.zero(K)
    for pt in points:
        cls = pt.local_class()
        if cls is not None:
            beta = beta + cls
    return beta


def assemble_chi(beta: GWElement, n: int) -> GWElement:
    K = beta.field
    if beta.rank % 2:
        raise CrossCheckError(f"rank of beta is {beta.rank}, which is odd")
    h = (2 * n - 1) * (n - 1) + 1 - beta.rank // 2
    return 2 * GWElement.one(K) + beta + h * GWElement.hyperbolic(K)


def etale_beta_oracle(inp: BranchedCoverInput) -> GWElement:
    """beta as the trace form of (u, v) -> Tr_A(-2 f_x2x2 u v) on A = k[x1,x2]/(f, f_x2).

    Only valid when every critical point has m = 1 and lies in the chart X0 = 1.
    """
    K = inp.field
    f = _chart_poly(inp.F, "X0")
    fx2 = f.derivative("x2")
    A = build_quotient([f, fx2], ("x1", "x2"))
    n = A.dimension
    mats = [A.label_matrix(j) for j in range(n)]
    tr = [sum_trace(Mj, K) for Mj in mats]
    c = A.element(MultiPoly.constant(K, ("x1", "x2"), -2) * fx2.derivative("x2"))
    cb = [linalg.matvec(mats[i], c, K) for i in range(n)]
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            w = linalg.matvec(mats[j], cb[i], K)
            acc = K.zero
            for x, t in zip(w, tr):
                if x != K.zero:
                    acc = K.add(acc, K.mul(x, t))
            G[i][j] = G[j][i] = acc
    return diagonalize(GramForm(K, G))


def sum_trace(M, K):
    acc = K.zero
    for i in range(len(M)):
        acc = K.add(acc, M[i][i])
    return acc


def chi_of_cover(inp: BranchedCoverInput, *, seed: int = DEFAULT_SEED,
                 max_degree: int = DEFAULT_MAX_DEGREE, etale_check: bool = False) -> PipelineReport:
    K = inp.field
    n = inp.n
    points = validate_input(inp, seed=seed, max_degree=max_degree)
    for pt in points:
        local_data(pt, inp)
    beta = compute_beta(points, K)
    checks = {
        "bezout": sum(pt.m * pt.degree for pt in points) == 2 * n * (2 * n - 1),
        "beta_even": beta.rank % 2 == 0,
    }
    if not checks["bezout"]:
        raise CrossCheckError(
            f"Bezout check failed: sum of m*deg is {sum(pt.m * pt.degree for pt in points)}, "
            f"expected {2 * n * (2 * n - 1)}"
        )
    chi = assemble_chi(beta, n)
    checks["rank"] = chi.rank == 4 + 2 * (2 * n - 1) * (n - 1)
    if not checks["rank"]:
        raise CrossCheckError(f"rank of chi is {chi.rank}")
    if isinstance(K, Rationals):
        checks["parity"] = (chi.rank - chi.signature()) % 2 == 0
        if not checks["parity"]:
            raise CrossCheckError("rank and signature of chi have different parity")
    oracle = None
    if etale_check and points and all(pt.m == 1 and pt.chart == "X0" for pt in points):
        oracle = etale_beta_oracle(inp)
        checks["etale_oracle"] = oracle == beta
        if not checks["etale_oracle"]:
            raise CrossCheckError("beta differs from the etale-algebra trace form")
    chi_bl = chi + 2 * GWElement.form(K, -1)
    return PipelineReport(inp, points, beta, chi, chi_bl, checks, oracle)


# ------------------------------------------------------------- coordinate change

def move_point(F: MultiPoly, P: Sequence) -> MultiPoly:
    """``F(A X)`` for an invertible ``A`` whose last column is ``P``, so ``[0:0:1]`` maps to ``P``."""
    K = F.field
    P = [K.convert(c) for c in P]
    if len(P) != 3 or all(K.is_zero(c) for c in P):
        raise ValidationError("the point must have three coordinates, not all zero")
    unit = [[K.one if i == j else K.zero for i in range(3)] for j in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            cols = [unit[i], unit[j], P]
            A = [[cols[c][r] for c in range(3)] for r in range(3)]
            if not K.is_zero(linalg.det(A, K)):
                X = [MultiPoly.variable(K, F.variables, v) for v in F.variables]
                images = []
                for r in range(3):
                    acc = MultiPoly(K, F.variables)
                    for c in range(3):
                        if not K.is_zero(A[r][c]):
                            acc = acc + X[c] * K.wrap(A[r][c])
                    images.append(acc)
                return F.map_variables(images)
    raise AssertionError("unreachable: some pair of unit vectors completes P")  # pragma: no cover


def to_projective(pt: CriticalPointRecord) -> tuple:
    M = pt.residue_field
    if pt.chart == "X0":
        return (M.wrap(M.one), pt.coords["x1"], pt.coords["x2"])
    return (pt.coords["x0"], M.wrap(M.one), pt.coords["x2"])


def local_data_in_chart(inp: BranchedCoverInput, pt: CriticalPointRecord, chart: str) -> CriticalPointRecord:
    """Recompute the local data of ``pt`` in another chart (the point must lie in it)."""
    X = to_projective(pt)
    M = pt.residue_field
    if chart == "X0":
        if not X[0]:
            raise ValueError("the point does not lie in the chart X0 = 1")
        coords = {"x1": X[1] / X[0], "x2": X[2] / X[0]}
    elif chart == "X1":
        if not X[1]:
            raise ValueError("the point does not lie in the chart X1 = 1")
        coords = {"x0": X[0] / X[1], "x2": X[2] / X[1]}
    else:
        raise ValueError(f"unknown chart {chart!r}")
    coords = {k: v if isinstance(v, TowerElement) and v.field == M else M.wrap(M.convert(v))
              for k, v in coords.items()}
    other = CriticalPointRecord(chart, M, coords, list(pt.min_polys))
    return local_data(other, inp)
