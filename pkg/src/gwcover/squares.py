"""Square classes of base-field elements and Hilbert symbols over Q.

Canonical square-class representatives:

* over Q, the signed squarefree integer ``s`` with ``a = s * c^2``;
* over F_p, ``1`` or the least quadratic non-residue mod ``p``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fields import Field, PrimeField, Rationals, TowerElement

INF = "inf"


def _factorint(n: int) -> dict[int, int]:
    from sympy import factorint

    return factorint(n)


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in _factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError(f"no quadratic non-residue mod {p}")


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _unwrap(a, K: Field | None):
    if isinstance(a, TowerElement):
        if not a.field.is_base:
            raise ValueError("square classes are only computed for base-field elements")
        return a.value, a.field
    if K is None:
        K = Rationals()
    return K.convert(a), K


def square_class(a, K: Field | None = None) -> int:
    """Canonical square-class representative of a nonzero base-field element."""
    x, K = _unwrap(a, K)
    if isinstance(K, Rationals):
        if x == 0:
            raise ValueError("zero has no square class")
        return squarefree_part(x.numerator * x.denominator)
    if isinstance(K, PrimeField):
        if x % K.p == 0:
            raise ValueError("zero has no square class")
        return 1 if pow(x, (K.p - 1) // 2, K.p) == 1 else least_nonresidue(K.p)
    raise ValueError("square classes are only computed for base-field elements")


def is_square(a, K: Field | None = None) -> bool:
    x, K = _unwrap(a, K)
    if K.is_zero(x):
        return False
    if isinstance(K, Rationals):
        return x > 0 and square_class(x, K) == 1
    return pow(x, (K.p - 1) // 2, K.p) == 1


def _split_p(n: int, p: int) -> tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def hilbert_symbol(a, b, place) -> int:
    """The Hilbert symbol (a, b)_v for nonzero rationals at a prime ``v`` or ``"inf"``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    # multiplying by squares changes nothing; clear denominators
    a_int = a.numerator * a.denominator
    b_int = b.numerator * b.denominator
    if place == INF:
        return -1 if a_int < 0 and b_int < 0 else 1
    p = int(place)
    alpha, u = _split_p(a_int, p)
    beta, v = _split_p(b_int, p)
    if p != 2:
        eps = ((p - 1) // 2) % 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        if beta % 2:
            sign *= legendre(u, p)
        if alpha % 2:
            sign *= legendre(v, p)
        return sign

    def e(x):
        return ((x - 1) // 2) % 2

    def w(x):
        return ((x * x - 1) // 8) % 2

    exponent = e(u) * e(v) + alpha * w(v) + beta * w(u)
    return -1 if exponent % 2 else 1


def prime_support(values) -> set[int]:
    out: set[int] = set()
    for v in values:
        v = Fraction(v)
        for n in (v.numerator, v.denominator):
            out.update(_factorint(abs(n)).keys())
    return out
