"""Exact base fields and towers of simple algebraic extensions.

Elements are kept in a raw, hashable, canonical form and all arithmetic goes
through the owning field object (``K.add(a, b)``, ``K.mul(a, b)``, ...):

* :class:`Rationals` -- :class:`fractions.Fraction`
* :class:`PrimeField` -- ``int`` in ``range(p)``
* :class:`Extension` -- ``tuple`` of ``d`` parent elements, the coefficients of
  ``1, a, ..., a^(d-1)`` for the stage generator ``a``.

Raw elements compare with ``==`` exactly.  :class:`TowerElement` wraps a raw
element with its field and supplies the usual operators for interactive and
test use.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import upoly
from .errors import FieldMismatchError


class Field:
    """Common interface of all fields; concrete fields override the hot paths."""

    zero: object
    one: object
    characteristic: int
    degree: int  # [self : base]

    @property
    def base(self) -> "Field":
        return self

    @property
    def parent(self) -> "Field | None":
        return None

    @property
    def is_base(self) -> bool:
        return self.parent is None

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def stages(self) -> list["Extension"]:
        out = []
        K = self
        while K.parent is not None:
            out.append(K)
            K = K.parent
        return out[::-1]

    def ancestors(self) -> Iterator["Field"]:
        K: Field | None = self
        while K is not None:
            yield K
            K = K.parent

    def contains_subfield(self, other: "Field") -> bool:
        return any(K == other for K in self.ancestors())

    # generic operations, written in terms of the primitives
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def exquo(self, a, b):
        return self.div(a, b)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q) -> object:
        q = Fraction(q)
        if q.denominator == 1:
            return self.from_int(q.numerator)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def embed(self, x, src: "Field"):
        """Map ``x`` from the subfield ``src`` (an ancestor of self) into self."""
        if src == self:
            return x
        raise FieldMismatchError(f"{src} is not a subfield of {self}")

    def convert(self, x):
        """Coerce ints, Fractions and TowerElements of subfields into self."""
        if isinstance(x, TowerElement):
            return self.embed(x.value, x.field)
        if isinstance(x, tuple) and _is_raw(self, x):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def __call__(self, x) -> "TowerElement":
        return TowerElement(self, self.convert(x))

    def wrap(self, raw) -> "TowerElement":
        return TowerElement(self, raw)

    def format(self, a) -> str:
        return str(a)

    def extension(self, modulus: Sequence, name: str = "a", check: bool = True) -> "Extension":
        return Extension(self, modulus, name, check=check)


class Rationals(Field):
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0
    degree = 1

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def format(self, a):
        return str(a)


class PrimeField(Field):
    degree = 1

    def __init__(self, p: int):
        import gmpy2

        if p <= 2 or not gmpy2.is_prime(p):
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        self.p = int(p)
        self.characteristic = self.p
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"

    @property
    def order(self) -> int:
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        return q.numerator * self.inv(q.denominator % self.p) % self.p

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def format(self, a):
        return str(a)


class Extension(Field):
    """The stage ``parent[name]/(modulus)``; ``modulus`` is monic, low degree first."""

    def __init__(self, parent: Field, modulus: Sequence, name: str = "a", check: bool = True):
        mod = [parent.convert(c) if not _is_raw(parent, c) else c for c in modulus]
        mod = upoly.strip(mod, parent)
        if len(mod) < 2:
            raise ValueError("defining polynomial must have positive degree")
        if mod[-1] != parent.one:
            mod = upoly.monic(mod, parent)
        self._parent = parent
        self.modulus = tuple(mod)
        self.name = name
        self.d = len(mod) - 1
        self.degree = self.d * parent.degree
        self.characteristic = parent.characteristic
        self.zero = tuple([parent.zero] * self.d)
        self.one = tuple([parent.one] + [parent.zero] * (self.d - 1))
        self._fp = parent.p if isinstance(parent, PrimeField) else None
        if check:
            from .factor import is_irreducible

            if not is_irreducible(list(self.modulus), parent):
                raise ValueError(
                    f"defining polynomial {upoly.to_str(list(self.modulus), parent, name)} "
                    f"is reducible over {parent}"
                )

    @property
    def parent(self) -> Field:
        return self._parent

    @property
    def base(self) -> Field:
        return self._parent.base

    def __eq__(self, other):
        return (
            isinstance(other, Extension)
            and other.modulus == self.modulus
            and other._parent == self._parent
        )

    def __hash__(self):
        return hash((self._parent, self.modulus))

    def __repr__(self):
        return f"{self._parent!r}[{self.name}]/({upoly.to_str(list(self.modulus), self._parent, self.name)})"

    @property
    def order(self) -> int:
        return self._parent.order ** self.d

    @property
    def gen(self):
        P = self._parent
        if self.d == 1:
            return (P.neg(self.modulus[0]),)
        return tuple([P.zero, P.one] + [P.zero] * (self.d - 2))

    # arithmetic
    def add(self, a, b):
        P = self._parent
        if self._fp:
            p = self._fp
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(P.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        P = self._parent
        if self._fp:
            p = self._fp
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(P.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        P = self._parent
        return tuple(P.neg(x) for x in a)

    def scale(self, c, a):
        """Multiply by a parent element."""
        P = self._parent
        return tuple(P.mul(c, x) for x in a)

    def mul(self, a, b):
        d = self.d
        if self._fp:
            p = self._fp
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            mod = self.modulus
            for k in range(2 * d - 2, d - 1, -1):
                c = prod[k] % p
                if c:
                    off = k - d
                    for i in range(d):
                        prod[off + i] -= c * mod[i]
            return tuple(c % p for c in prod[:d])
        P = self._parent
        zero = P.zero
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    prod[i + j] = P.add(prod[i + j], P.mul(x, y))
        return self._reduce(prod)

    def _reduce(self, prod):
        P = self._parent
        d = self.d
        mod = self.modulus
        zero = P.zero
        prod = list(prod)
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c != zero:
                off = k - d
                for i in range(d):
                    prod[off + i] = P.sub(prod[off + i], P.mul(c, mod[i]))
        prod = prod[:d]
        prod.extend([zero] * (d - len(prod)))
        return tuple(prod)

    def from_poly(self, coeffs: Sequence):
        """Reduce a parent polynomial (low degree first) into this field."""
        return self._reduce(list(coeffs) if coeffs else [self._parent.zero])

    def inv(self, a):
        P = self._parent
        f = upoly.strip(list(a), P)
        if not f:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        g, s, _ = upoly.gcdex(f, list(self.modulus), P)
        # g is a nonzero constant since the modulus is irreducible
        if len(g) != 1:
            raise ZeroDivisionError(f"{self.format(a)} is not invertible modulo a reducible modulus")
        s = upoly.scale(s, P.inv(g[0]), P)
        return self.from_poly(s)

    def from_int(self, n):
        return self.embed(self._parent.from_int(n), self._parent)

    def from_fraction(self, q):
        return self.embed(self._parent.from_fraction(q), self._parent)

    def embed(self, x, src):
        if src == self:
            return x
        y = self._parent.embed(x, src)
        return tuple([y] + [self._parent.zero] * (self.d - 1))

    def random_element(self, rng):
        return tuple(self._parent.random_element(rng) for _ in range(self.d))

    def elements(self) -> Iterator[tuple]:
        import itertools

        for combo in itertools.product(list(self._parent.elements()), repeat=self.d):
            yield tuple(combo)

    @cached_property
    def power_traces(self) -> tuple:
        """Tr(a^k) over the parent for k = 0 .. d-1 (Newton's identities)."""
        P = self._parent
        d = self.d
        c = self.modulus  # c[d] == 1
        p = [P.from_int(d)]
        for k in range(1, d):
            acc = P.mul(P.from_int(k), c[d - k])
            for i in range(1, k):
                acc = P.add(acc, P.mul(c[d - i], p[k - i]))
            p.append(P.neg(acc))
        return tuple(p)

    def trace(self, a):
        """Field trace down to the parent stage."""
        P = self._parent
        acc = P.zero
        for x, t in zip(a, self.power_traces):
            if x != P.zero:
                acc = P.add(acc, P.mul(x, t))
        return acc

    def trace_to(self, a, target: Field):
        K: Field = self
        while K != target:
            if K.parent is None:
                raise FieldMismatchError(f"{target} is not a subfield of {self}")
            a = K.trace(a)
            K = K.parent
        return a

    def pth_root(self, a):
        """Inverse Frobenius; only meaningful for finite towers."""
        p = self.characteristic
        return self.pow(a, self.order // p)

    def format(self, a) -> str:
        P = self._parent
        terms = []
        for k in range(self.d - 1, -1, -1):
            c = a[k]
            if c == P.zero:
                continue
            cs = P.format(c)
            if k and P.parent is not None and ("+" in cs or " - " in cs):
                cs = f"({cs})"
            mon = "" if k == 0 else (self.name if k == 1 else f"{self.name}^{k}")
            if not mon:
                terms.append(cs)
            elif c == P.one:
                terms.append(mon)
            elif cs == "-1" or (P.neg(c) == P.one):
                terms.append("-" + mon)
            else:
                terms.append(f"{cs}*{mon}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _is_raw(K: Field, c) -> bool:
    if isinstance(K, Rationals):
        return isinstance(c, Fraction)
    if isinstance(K, PrimeField):
        return isinstance(c, int) and not isinstance(c, bool) and 0 <= c < K.p
    return isinstance(c, tuple) and len(c) == K.d


def coefficients(K: Field, a) -> list:
    """Flatten a raw element into base-field coordinates on the product monomial basis."""
    if K.parent is None:
        return [a]
    out = []
    for c in a:
        out.extend(coefficients(K.parent, c))
    return out


def product_basis(K: Field) -> list[tuple[int, ...]]:
    """Exponent vectors of the product monomial basis, ordered like :func:`coefficients`."""
    stages = K.stages()
    basis: list[tuple[int, ...]] = [()]
    for st in stages:
        # coefficient flattening puts the top stage outermost
        basis = [(*inner, k) for k in range(st.d) for inner in basis]
    return basis


def monomial_element(K: Field, exps: Sequence[int]):
    """The raw element prod_i gen_i^exps[i] of the tower K (stages bottom-up)."""
    stages = K.stages()
    x = K.one
    for st, e in zip(stages, exps):
        if e:
            x = K.mul(x, K.embed(st.pow(st.gen, e), st))
    return x


class TowerElement:
    """A field element bundled with its field; supports ``+ - * / **``."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, TowerElement):
            if other.field == self.field:
                return other.value
            if self.field.contains_subfield(other.field):
                return self.field.embed(other.value, other.field)
            raise FieldMismatchError(f"tower mismatch: {self.field} vs {other.field}")
        return self.field.convert(other)

    def _lift(self, other):
        # result lives in the larger field when other is an element of an extension of ours
        if isinstance(other, TowerElement) and other.field != self.field and other.field.contains_subfield(self.field):
            return TowerElement(other.field, other.field.embed(self.value, self.field))
        return None

    def __add__(self, other):
        up = self._lift(other)
        if up is not None:
            return up + other
        return TowerElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        up = self._lift(other)
        if up is not None:
            return up - other
        return TowerElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return TowerElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        up = self._lift(other)
        if up is not None:
            return up * other
        return TowerElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        up = self._lift(other)
        if up is not None:
            return up / other
        return TowerElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return TowerElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return TowerElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return TowerElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except (TypeError, FieldMismatchError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __repr__(self):
        return f"TowerElement({self.field.format(self.value)} in {self.field!r})"

    def __str__(self):
        return self.field.format(self.value)

    def coefficients(self) -> list:
        return coefficients(self.field, self.value)

    def trace(self, target: Field | None = None) -> "TowerElement":
        target = target if target is not None else self.field.base
        if self.field == target:
            return self
        return TowerElement(target, self.field.trace_to(self.value, target))


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_arith(a: TowerElement, b: TowerElement, op: str) -> TowerElement:
    if a.field != b.field:
        raise FieldMismatchError(f"tower mismatch: {a.field} vs {b.field}")
    ops = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return TowerElement(a.field, fn(a.value, b.value))
