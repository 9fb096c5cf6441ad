"""Sparse multivariate polynomials with coefficients in a field tower."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from . import upoly
from .errors import FieldMismatchError
from .fields import Field, TowerElement


class MultiPoly:
    """A polynomial ``{exponent tuple: raw coefficient}`` over ``field``.

    Zero coefficients are never stored and every exponent tuple has one entry
    per name in ``variables``.
    """

    __slots__ = ("field", "variables", "terms")

    def __init__(self, field: Field, variables: Sequence[str], terms: Mapping | None = None):
        self.field = field
        self.variables = tuple(variables)
        zero = field.zero
        self.terms = {e: c for e, c in (terms or {}).items() if c != zero}

    # construction helpers
    @classmethod
    def constant(cls, field, variables, c) -> "MultiPoly":
        n = len(variables)
        return cls(field, variables, {(0,) * n: field.convert(c)})

    @classmethod
    def variable(cls, field, variables, name: str) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(field, variables, {exp: field.one})

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}") from None

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            if other.field != self.field:
                if self.field.contains_subfield(other.field):
                    return other.change_field(self.field)
                raise FieldMismatchError(f"coefficient fields differ: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, TowerElement)):
            return MultiPoly.constant(self.field, self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = K.add(terms[e], c) if e in terms else c
        return MultiPoly(K, self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return MultiPoly(K, self.variables, {e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = K.mul(c1, c2)
                terms[e] = K.add(terms[e], v) if e in terms else v
        return MultiPoly(K, self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.field, self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.variables == other.variables and self.field == other.field
                    and self.terms == other.terms)
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        i = self.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), self.field.zero)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.field.zero)

    def change_field(self, L: Field) -> "MultiPoly":
        if L == self.field:
            return self
        K = self.field
        return MultiPoly(L, self.variables, {e: L.embed(c, K) for e, c in self.terms.items()})

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != len(self.variables):
            raise ValueError("arity mismatch")
        return MultiPoly(self.field, variables, self.terms)

    # calculus and substitution
    def derivative(self, var: str) -> "MultiPoly":
        i = self.index(var)
        K = self.field
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = K.mul(K.from_int(e[i]), c)
        return MultiPoly(K, self.variables, terms)

    def dehomogenize(self, var: str) -> "MultiPoly":
        """Substitute 1 for ``var`` and drop it from the variable list."""
        i = self.index(var)
        K = self.field
        variables = self.variables[:i] + self.variables[i + 1:]
        terms: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            terms[ne] = K.add(terms[ne], c) if ne in terms else c
        return MultiPoly(K, variables, terms)

    def _point_values(self, point, L: Field | None):
        if isinstance(point, Mapping):
            missing = [v for v in self.variables if v not in point]
            if missing:
                raise ValueError(f"no value for {missing}")
            values = [point[v] for v in self.variables]
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise ValueError("point has the wrong number of coordinates")
        if L is None:
            L = self.field
            for v in values:
                if isinstance(v, TowerElement) and v.field != L and v.field.contains_subfield(L):
                    L = v.field
        return [L.convert(v) for v in values], L

    def evaluate(self, point, field: Field | None = None) -> TowerElement:
        """Value at a point whose coordinates lie in ``field`` (default: the largest tower given)."""
        values, L = self._point_values(point, field)
        return TowerElement(L, self.evaluate_raw(values, L))

    def evaluate_raw(self, values: Sequence, L: Field):
        K = self.field
        powers = [_power_table(L, v, self.degree(name)) for v, name in zip(values, self.variables)]
        acc = L.zero
        for e, c in self.terms.items():
            term = L.embed(c, K)
            for tbl, k in zip(powers, e):
                if k:
                    term = L.mul(term, tbl[k])
            acc = L.add(acc, term)
        return acc

    def substitute(self, values: Mapping[str, object]) -> "MultiPoly":
        """Partially evaluate; coefficients of the result live in the largest field involved."""
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        L = self.field
        for v in values.values():
            if isinstance(v, TowerElement) and v.field.contains_subfield(L):
                L = v.field
        K = self.field
        sub_idx = [(i, L.convert(values[v])) for i, v in enumerate(self.variables) if v in values]
        tables = {i: _power_table(L, x, self.degree(self.variables[i])) for i, x in sub_idx}
        new_vars = tuple(self.variables[i] for i in keep)
        terms: dict = {}
        for e, c in self.terms.items():
            coeff = L.embed(c, K)
            for i, _ in sub_idx:
                if e[i]:
                    coeff = L.mul(coeff, tables[i][e[i]])
            ne = tuple(e[i] for i in keep)
            terms[ne] = L.add(terms[ne], coeff) if ne in terms else coeff
        return MultiPoly(L, new_vars, terms)

    def to_univariate(self, var: str, values: Mapping[str, object] | None = None,
                      field: Field | None = None) -> list:
        """Dense coefficient list in ``var`` after substituting the other variables."""
        p = self.substitute(values or {}) if values else self
        if field is not None and field != p.field:
            p = p.change_field(field)
        if p.variables != (var,):
            raise ValueError(f"polynomial still depends on {[v for v in p.variables if v != var]}")
        L = p.field
        n = p.degree(var)
        out = [L.zero] * (n + 1)
        for (k,), c in p.terms.items():
            out[k] = c
        return upoly.strip(out, L)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, field: Field, var: str) -> "MultiPoly":
        return cls(field, (var,), {(k,): c for k, c in enumerate(coeffs)})

    def map_variables(self, linear: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute polynomial ``linear[i]`` for variable ``i`` (same variable list)."""
        K = self.field
        result = MultiPoly(K, self.variables)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly(K, self.variables, {(0,) * len(e): c})
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = linear[i] ** k
                    term = term * cache[(i, k)]
            result = result + term
        return result

    # display
    def __str__(self):
        if not self.terms:
            return "0"
        K = self.field
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mon = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            cs = K.format(c)
            if ("+" in cs or " - " in cs[1:]) and mon:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == K.one:
                parts.append(mon)
            elif K.neg(c) == K.one:
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"MultiPoly({self} over {self.field!r} in {','.join(self.variables)})"


def _power_table(L, x, n):
    tbl = [L.one]
    for _ in range(max(n, 0)):
        tbl.append(L.mul(tbl[-1], x))
    return tbl


def multipoly_calc(f: MultiPoly, op: str, arg):
    """Dispatch ``derivative(var)``, ``dehomogenize(var)`` or ``evaluate(point)``."""
    if op == "derivative":
        return f.derivative(arg)
    if op == "dehomogenize":
        return f.dehomogenize(arg)
    if op == "evaluate":
        return f.evaluate(arg)
    raise ValueError(f"unknown operation {op!r}")
