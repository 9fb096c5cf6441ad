"""The Grothendieck--Witt ring of Q or F_p.

A :class:`GWElement` is a virtual diagonal form: a multiset of canonical
square-class representatives with integer (possibly negative) multiplicities.
Equality (``==``) is the mathematical one, decided by classical invariants:

* over F_p: rank and discriminant;
* over Q: rank, signature, discriminant and the Hasse invariants at every
  place where either side could be nontrivial (Hasse--Minkowski).

The discriminant is the plain determinant square class (product of the
diagonal entries), which is additive on GW.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .errors import FieldMismatchError
from .fields import Field, PrimeField, Rationals
from .squares import INF, hilbert_symbol, prime_support, square_class


def _check_base(K: Field) -> Field:
    if not isinstance(K, (Rationals, PrimeField)):
        raise ValueError("GW elements are only supported over Q and F_p")
    return K


def neg_class(c: int, K: Field) -> int:
    if isinstance(K, Rationals):
        return -c
    return square_class(K.from_int(-c), K)


class GWElement:
    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries: Mapping[int, int] | None = None):
        self.field = _check_base(field)
        self.entries = {c: m for c, m in (entries or {}).items() if m}

    # constructors
    @classmethod
    def zero(cls, K: Field) -> "GWElement":
        return cls(K)

    @classmethod
    def one(cls, K: Field) -> "GWElement":
        return cls(K, {1: 1})

    @classmethod
    def form(cls, K: Field, a) -> "GWElement":
        """The rank-one form <a>."""
        return cls(K, {square_class(K.convert(a), K): 1})

    @classmethod
    def hyperbolic(cls, K: Field) -> "GWElement":
        return cls.from_diagonal(K, [1, -1])

    @classmethod
    def from_diagonal(cls, K: Field, values: Iterable) -> "GWElement":
        _check_base(K)
        entries: dict[int, int] = {}
        for v in values:
            x = v if _is_raw_base(K, v) else K.convert(v)
            if K.is_zero(x):
                raise ValueError("diagonal entries must be nonzero")
            c = square_class(x, K)
            entries[c] = entries.get(c, 0) + 1
        return cls(K, entries)

    # arithmetic
    def _same(self, other: "GWElement"):
        if not isinstance(other, GWElement):
            return False
        if other.field != self.field:
            raise FieldMismatchError(f"GW elements over {self.field} and {other.field}")
        return True

    def __add__(self, other):
        if isinstance(other, int):
            other = other * GWElement.one(self.field)
        if not self._same(other):
            return NotImplemented
        out = dict(self.entries)
        for c, m in other.entries.items():
            out[c] = out.get(c, 0) + m
        return GWElement(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return GWElement(self.field, {c: -m for c, m in self.entries.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = other * GWElement.one(self.field)
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return GWElement(self.field, {c: m * other for c, m in self.entries.items()})
        if not self._same(other):
            return NotImplemented
        K = self.field
        out: dict[int, int] = {}
        for c1, m1 in self.entries.items():
            for c2, m2 in other.entries.items():
                c = _class_product(c1, c2, K)
                out[c] = out.get(c, 0) + m1 * m2
        return GWElement(K, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = other * GWElement.one(self.field)
        if not isinstance(other, GWElement):
            return NotImplemented
        return gw_equals(self, other)

    def __hash__(self):
        inv = self.invariants()
        return hash((self.field, inv.rank, inv.signature, inv.discriminant))

    def __repr__(self):
        return f"GWElement({gw_display(self)} over {self.field!r})"

    def __str__(self):
        return gw_display(canonical(self))

    # invariants
    @property
    def rank(self) -> int:
        return sum(self.entries.values())

    def signature(self) -> int:
        if not isinstance(self.field, Rationals):
            raise ValueError("signature is only defined over Q")
        return sum(m if c > 0 else -m for c, m in self.entries.items())

    def discriminant(self) -> int:
        K = self.field
        d = 1
        for c, m in self.entries.items():
            if m % 2:
                d = _class_product(d, c, K)
        return d

    def negative_count(self) -> int:
        return -sum(m for m in self.entries.values() if m < 0)

    def genuine_diagonal(self, pad: int | None = None) -> list[int]:
        """Diagonal entries of a genuine form equal to ``self + pad*H``.

        ``pad`` defaults to the total negative multiplicity, the least padding
        that removes every virtual entry.
        """
        K = self.field
        need = self.negative_count()
        pad = need if pad is None else pad
        if pad < need:
            raise ValueError(f"padding {pad} is too small for {need} virtual entries")
        out: list[int] = []
        for c, m in sorted(self.entries.items()):
            if m > 0:
                out.extend([c] * m)
            else:
                out.extend([neg_class(c, K)] * (-m))
        minus_one = neg_class(1, K)
        out.extend([1, minus_one] * (pad - need))
        return out

    def invariants(self) -> "GWInvariants":
        return gw_invariants(self)


def _is_raw_base(K, v) -> bool:
    from fractions import Fraction

    if isinstance(K, Rationals):
        return isinstance(v, Fraction)
    return False


def _class_product(a: int, b: int, K: Field) -> int:
    if isinstance(K, Rationals):
        from math import gcd

        g = gcd(a, b)
        return (a // g) * (b // g)
    return square_class(K.from_int(a * b), K)


@dataclass(frozen=True)
class GWInvariants:
    """Invariant record; ``hasse`` lists only the places where the invariant is -1."""

    rank: int
    signature: int | None
    discriminant: int
    hasse: dict = dc_field(default_factory=dict)


def hasse_invariant(diagonal: list[int], place) -> int:
    counts: dict[int, int] = {}
    for a in diagonal:
        counts[a] = counts.get(a, 0) + 1
    keys = sorted(counts)
    h = 1
    for i, a in enumerate(keys):
        ma = counts[a]
        if ma * (ma - 1) // 2 % 2 and hilbert_symbol(a, a, place) == -1:
            h = -h
        for b in keys[i + 1:]:
            if ma * counts[b] % 2 and hilbert_symbol(a, b, place) == -1:
                h = -h
    return h


def _places(diagonal) -> list:
    return [INF] + sorted(prime_support(diagonal) | {2})


def _hasse_map(diagonal) -> dict:
    return {v: -1 for v in _places(diagonal) if hasse_invariant(diagonal, v) == -1}


def gw_invariants(x: GWElement) -> GWInvariants:
    K = x.field
    if isinstance(K, Rationals):
        diag = x.genuine_diagonal()
        return GWInvariants(x.rank, x.signature(), x.discriminant(), _hasse_map(diag))
    return GWInvariants(x.rank, None, x.discriminant(), {})


def gw_from_diagonal(values: Iterable, K: Field) -> GWElement:
    return GWElement.from_diagonal(K, values)


def gw_arith(x: GWElement, y: GWElement, op: str) -> GWElement:
    if x.field != y.field:
        raise FieldMismatchError(f"GW elements over {x.field} and {y.field}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def gw_equals(x: GWElement, y: GWElement) -> bool:
    if x.field != y.field:
        raise FieldMismatchError(f"GW elements over {x.field} and {y.field}")
    if x.rank != y.rank or x.discriminant() != y.discriminant():
        return False
    if not isinstance(x.field, Rationals):
        return True
    if x.signature() != y.signature():
        return False
    pad = max(x.negative_count(), y.negative_count())
    dx = x.genuine_diagonal(pad)
    dy = y.genuine_diagonal(pad)
    for v in _places(dx + dy):
        if hasse_invariant(dx, v) != hasse_invariant(dy, v):
            return False
    return True


def gw_equals_real(x: GWElement, y: GWElement) -> bool:
    """Equality after extending scalars from Q to R: rank and signature."""
    return x.rank == y.rank and x.signature() == y.signature()


def split_hyperbolic(x: GWElement) -> tuple[dict[int, int], int]:
    """Greedily pull out pairs <c> + <-c> as copies of H; returns (residual entries, H count)."""
    K = x.field
    rest = dict(x.entries)
    h = 0
    for c in sorted(rest, key=_order_key):
        m = rest.get(c, 0)
        if not m:
            continue
        nc = neg_class(c, K)
        if nc == c:
            pairs = abs(m) // 2
            sign = 1 if m > 0 else -1
            rest[c] = m - sign * 2 * pairs
            h += sign * pairs
            continue
        mn = rest.get(nc, 0)
        if m > 0 and mn > 0:
            k = min(m, mn)
        elif m < 0 and mn < 0:
            k = -min(-m, -mn)
        else:
            continue
        rest[c] = m - k
        rest[nc] = mn - k
        h += k
    return {c: m for c, m in rest.items() if m}, h


def _order_key(c: int):
    return (abs(c), c < 0)


def gw_display(x: GWElement, unicode: bool = False) -> str:
    """Deterministic text ``a<c> + ... + m*H`` after greedy hyperbolic extraction."""
    rest, h = split_hyperbolic(x)
    return format_terms(rest, h, unicode)


def format_terms(rest: Mapping[int, int], h: int, unicode: bool = False) -> str:
    lt, gt, dot = ("⟨", "⟩", "·") if unicode else ("<", ">", "*")
    terms: list[tuple[int, str]] = []
    for c in sorted(rest, key=_order_key):
        m = rest[c]
        body = f"{lt}{c}{gt}"
        terms.append((m, body if abs(m) == 1 else f"{abs(m)}{body}"))
    if h:
        terms.append((h, "H" if abs(h) == 1 else f"{abs(h)}{dot}H"))
    if not terms:
        return "0"
    out = ""
    for i, (m, body) in enumerate(terms):
        if i == 0:
            out = body if m > 0 else "-" + body
        else:
            out += (" + " if m > 0 else " - ") + body
    return out


def canonical_terms(x: GWElement) -> tuple[dict[int, int], int]:
    """A normalized ``(residual entries, H count)`` presentation of the class of ``x``.

    Small shapes are preferred when they represent the same class:
    ``s<1> + m*H`` (or ``|s|<-1> + m*H``) over Q; over F_p one of
    ``m*H``, ``<1> + m*H``, ``<e> + m*H``, ``2<1> + m*H``, ``<1> + <e> + m*H``.
    Falls back to greedy extraction.
    """
    K = x.field
    r = x.rank
    candidates: list[tuple[dict[int, int], int]] = []
    if isinstance(K, Rationals):
        s = x.signature()
        if (r - s) % 2 == 0:
            if s >= 0:
                candidates.append(({1: s} if s else {}, (r - s) // 2))
            else:
                candidates.append(({-1: -s}, (r + s) // 2))
    else:
        e = square_class(K.from_int(_nonresidue(K)), K)
        if r % 2 == 0:
            m = r // 2
            candidates += [({}, m), ({1: 2}, m - 1), ({1: 1, e: 1}, m - 1)]
        else:
            m = (r - 1) // 2
            candidates += [({1: 1}, m), ({e: 1}, m)]
    H = GWElement.hyperbolic(K)
    for rest, h in candidates:
        if gw_equals(GWElement(K, rest) + h * H, x):
            return {c: m for c, m in rest.items() if m}, h
    return split_hyperbolic(x)


def canonical(x: GWElement) -> GWElement:
    rest, h = canonical_terms(x)
    return GWElement(x.field, rest) + h * GWElement.hyperbolic(x.field) if h else GWElement(x.field, rest)


def display(x: GWElement, unicode: bool = False) -> str:
    """Display the normalized presentation (see :func:`canonical_terms`)."""
    rest, h = canonical_terms(x)
    return format_terms(rest, h, unicode)


def _nonresidue(K: PrimeField) -> int:
    from .squares import least_nonresidue

    return least_nonresidue(K.p)


def real_product_solutions(rank_x: int, sig_x: int, rank_y: int, sig_y: int):
    """Search for beta in GW(R) with ``beta * chi_X = chi_Y`` given ranks and signatures.

    GW(R) consists of ``a<1> + b<-1>`` with rank ``a + b`` and signature
    ``a - b``, so a pair ``(rank, signature)`` is realized exactly when the two
    have the same parity.  Returns a witness ``(a, b)`` or ``None`` when the
    constraints are unsatisfiable.  Free coordinates (when a factor of chi_X
    vanishes) are resolved by the smallest admissible value.
    """
    def solve(coef, rhs):
        if coef == 0:
            return None if rhs else "free"
        if rhs % coef:
            return None
        return rhs // coef

    r = solve(rank_x, rank_y)
    s = solve(sig_x, sig_y)
    if r is None or s is None:
        return None
    if r == "free" and s == "free":
        r, s = 0, 0
    elif r == "free":
        r = s % 2
    elif s == "free":
        s = r % 2
    if (r - s) % 2:
        return None
    return ((r + s) // 2, (r - s) // 2)
