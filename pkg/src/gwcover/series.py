"""Truncated power series in one parameter and Newton lifting of curve branches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CrossCheckError, NonIsolatedError
from .fields import Field, TowerElement
from .mpoly import MultiPoly


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum c_k t^k + O(t^precision)`` with raw coefficients in ``field``."""

    field: Field
    coefficients: tuple
    precision: int

    def __post_init__(self):
        if len(self.coefficients) > self.precision:
            object.__setattr__(self, "coefficients", tuple(self.coefficients[: self.precision]))

    def __getitem__(self, k: int) -> TowerElement:
        if k >= self.precision:
            raise IndexError("coefficient beyond the known precision")
        c = self.coefficients[k] if k < len(self.coefficients) else self.field.zero
        return TowerElement(self.field, c)

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or ``None`` if zero to this precision."""
        for k, c in enumerate(self.coefficients):
            if c != self.field.zero:
                return k
        return None

    def __str__(self):
        K = self.field
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == K.zero:
                continue
            cs = K.format(c)
            if k and ("+" in cs or " - " in cs[1:]):
                cs = f"({cs})"
            parts.append(cs if k == 0 else f"{cs}*t" if k == 1 else f"{cs}*t^{k}")
        parts.append(f"O(t^{self.precision})")
        return " + ".join(parts)


def s_add(a, b, K):
    n = max(len(a), len(b))
    a = list(a) + [K.zero] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = K.add(a[i], c)
    return a


def s_sub(a, b, K):
    n = max(len(a), len(b))
    a = list(a) + [K.zero] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = K.sub(a[i], c)
    return a


def s_mul(a, b, N, K):
    zero = K.zero
    out = [zero] * min(N, max(len(a) + len(b) - 1, 0))
    for i, x in enumerate(a[:N]):
        if x == zero:
            continue
        for j in range(min(len(b), N - i)):
            y = b[j]
            if y != zero:
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return out


def s_inv(a, N, K):
    """Inverse of a series with invertible constant term, to ``N`` terms."""
    if not a or a[0] == K.zero:
        raise ZeroDivisionError("series is not a unit")
    inv0 = K.inv(a[0])
    out = [inv0]
    for k in range(1, N):
        acc = K.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = K.add(acc, K.mul(a[j], out[k - j]))
        out.append(K.neg(K.mul(acc, inv0)))
    return out


def compose(f: MultiPoly, series: Mapping[str, Sequence], N: int, L: Field) -> list:
    """``f`` evaluated at raw series (one per variable) over ``L``, truncated to ``N`` terms."""
    K = f.field
    n = len(f.variables)
    vals = [list(series[v]) for v in f.variables]
    maxdeg = [max((e[i] for e in f.terms), default=0) for i in range(n)]
    powers = []
    for v, m in zip(vals, maxdeg):
        tbl = [[L.one]]
        for _ in range(m):
            tbl.append(s_mul(tbl[-1], v, N, L))
        powers.append(tbl)
    acc: list = []
    for e, c in f.terms.items():
        term = [L.embed(c, K)]
        for i, k in enumerate(e):
            if k:
                term = s_mul(term, powers[i][k], N, L)
        acc = s_add(acc, term, L)
    acc = acc[:N]
    return acc + [L.zero] * (N - len(acc))


def hensel_parametrize(f: MultiPoly, solve_var: str, param_var: str, point: Mapping[str, object],
                       precision: int) -> TruncatedSeries:
    """Series ``x(t)`` with ``f(x(t), b + t) = 0 mod t^precision`` and ``x(0) = a``.

    ``point`` maps ``solve_var`` to ``a`` and ``param_var`` to ``b``; both may
    live in an extension of the coefficient field of ``f``.
    """
    if precision <= 0:
        raise ValueError("precision must be positive")
    if set(f.variables) != {solve_var, param_var}:
        raise ValueError("expected a polynomial in exactly the solve and parameter variables")
    L = f.field
    for v in point.values():
        if isinstance(v, TowerElement) and v.field.contains_subfield(L):
            L = v.field
    a = L.convert(point[solve_var])
    b = L.convert(point[param_var])
    f = f.change_field(L)
    fx = f.derivative(solve_var)
    at = {solve_var: L.wrap(a), param_var: L.wrap(b)}
    if f.evaluate(at, L):
        raise ValueError("the point does not lie on the curve")
    if not fx.evaluate(at, L):
        raise NonIsolatedError(f"d f/d{solve_var} is not a unit at the point")

    y = [b, L.one] if precision > 1 else [b]
    x = [a]
    prec = 1
    while prec < precision:
        prec = min(2 * prec, precision)
        xs = x + [L.zero] * (prec - len(x))
        subs = {solve_var: xs, param_var: y}
        num = compose(f, subs, prec, L)
        den = compose(fx, subs, prec, L)
        step = s_mul(num, s_inv(den, prec, L), prec, L)
        x = s_sub(xs, step, L)[:prec]
        check = compose(f, {solve_var: x, param_var: y}, prec, L)
        if any(c != L.zero for c in check):
            raise CrossCheckError("Newton lift failed its re-substitution check")
    return TruncatedSeries(L, tuple(x + [L.zero] * (precision - len(x))), precision)
