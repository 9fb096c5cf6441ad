"""Dense univariate polynomials over a field ``K``.

A polynomial is a list of raw coefficients, constant term first, with no
trailing zeros; ``[]`` is the zero polynomial.  Every function takes the
coefficient field explicitly, in the style of ``dup_*(f, K)`` routines.
"""

from __future__ import annotations

from typing import Sequence


def strip(f: list, K) -> list:
    zero = K.zero
    n = len(f)
    while n and f[n - 1] == zero:
        n -= 1
    return f[:n] if n != len(f) else f


def degree(f: Sequence) -> int:
    return len(f) - 1


def lc(f: Sequence, K):
    return f[-1] if f else K.zero


def from_ints(coeffs: Sequence[int], K) -> list:
    return strip([K.from_int(c) for c in coeffs], K)


def constant(c, K) -> list:
    return [] if c == K.zero else [c]


def monomial(c, k: int, K) -> list:
    if c == K.zero:
        return []
    return [K.zero] * k + [c]


def add(f, g, K):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = K.add(out[i], c)
    return strip(out, K)


def sub(f, g, K):
    out = list(f) + [K.zero] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = K.sub(out[i], c)
    return strip(out, K)


def neg(f, K):
    return [K.neg(c) for c in f]


def scale(f, c, K):
    if c == K.zero:
        return []
    return strip([K.mul(c, x) for x in f], K)


def mul(f, g, K):
    if not f or not g:
        return []
    zero = K.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b != zero:
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return strip(out, K)


def shift(f, k: int, K):
    return [K.zero] * k + list(f) if f else []


def power(f, e: int, K):
    result = [K.one]
    while e:
        if e & 1:
            result = mul(result, f, K)
        e >>= 1
        if e:
            f = mul(f, f, K)
    return result


def divmod_(f, g, K):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], strip(r, K)
    inv = K.inv(g[-1])
    q = [K.zero] * (len(r) - dg)
    zero = K.zero
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == zero:
            continue
        c = K.mul(c, inv)
        q[k - dg] = c
        off = k - dg
        for i in range(dg + 1):
            r[off + i] = K.sub(r[off + i], K.mul(c, g[i]))
    return strip(q, K), strip(r[:dg], K)


def rem(f, g, K):
    return divmod_(f, g, K)[1]


def quo(f, g, K):
    return divmod_(f, g, K)[0]


def exquo(f, g, K):
    q, r = divmod_(f, g, K)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(f, K):
    if not f:
        return []
    c = f[-1]
    if c == K.one:
        return list(f)
    inv = K.inv(c)
    return [K.mul(inv, x) for x in f]


def gcd(f, g, K):
    while g:
        f, g = g, rem(f, g, K)
    return monic(f, K)


def gcdex(f, g, K):
    """Return ``(h, s, t)`` with ``s*f + t*g = h = gcd(f, g)`` and ``h`` monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = divmod_(r0, r1, K)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, K), K)
        t0, t1 = t1, sub(t0, mul(q, t1, K), K)
    if not r0:
        return [], s0, t0
    inv = K.inv(r0[-1])
    return scale(r0, inv, K), scale(s0, inv, K), scale(t0, inv, K)


def derivative(f, K):
    return strip([K.mul(K.from_int(i), f[i]) for i in range(1, len(f))], K)


def evaluate(f, x, K):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def compose(f, g, K):
    """f(g(x))."""
    acc: list = []
    for c in reversed(f):
        acc = add(mul(acc, g, K), constant(c, K), K)
    return acc


def powmod(f, e: int, m, K):
    result = [K.one]
    f = rem(f, m, K)
    while e:
        if e & 1:
            result = rem(mul(result, f, K), m, K)
        e >>= 1
        if e:
            f = rem(mul(f, f, K), m, K)
    return result


def map_coeffs(f, fn, K):
    return strip([fn(c) for c in f], K)


def to_str(f, K, var: str = "x") -> str:
    if not f:
        return "0"
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == K.zero:
            continue
        cs = K.format(c)
        compound = ("+" in cs or " - " in cs)
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mon:
            terms.append(f"({cs})" if compound and terms else cs)
        elif c == K.one:
            terms.append(mon)
        elif K.neg(c) == K.one:
            terms.append("-" + mon)
        else:
            terms.append(f"({cs})*{mon}" if compound else f"{cs}*{mon}")
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def resultant(f, g, K):
    """Res(f, g) = lc(f)^deg(g) * prod g(roots of f), by the Euclidean remainder sequence."""
    if not f or not g:
        return K.zero
    sign = 1
    acc = K.one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return _signed(K.mul(acc, K.pow(g[0], m)), sign, K)
        r = rem(f, g, K)
        if not r:
            return K.zero
        k = len(r) - 1
        if m * n % 2:
            sign = -sign
        acc = K.mul(acc, K.pow(g[-1], m - k))
        f, g = g, r


def _signed(x, sign, K):
    return x if sign > 0 else K.neg(x)


class PolyRing:
    """``K[x]`` as a coefficient domain for :func:`resultant_ring`."""

    def __init__(self, K):
        self.K = K
        self.zero: list = []
        self.one = [K.one]

    def add(self, a, b):
        return add(a, b, self.K)

    def sub(self, a, b):
        return sub(a, b, self.K)

    def neg(self, a):
        return neg(a, self.K)

    def mul(self, a, b):
        return mul(a, b, self.K)

    def exquo(self, a, b):
        return exquo(a, b, self.K)

    def is_zero(self, a):
        return not a

    def pow(self, a, e):
        return power(a, e, self.K)


def _rstrip(f, R):
    n = len(f)
    while n and R.is_zero(f[n - 1]):
        n -= 1
    return f[:n]


def _prem(A, B, R):
    r = list(A)
    db = len(B) - 1
    lcb = B[-1]
    e = len(A) - len(B) + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        s = len(r) - 1 - db
        r = [R.mul(lcb, x) for x in r]
        for i, b in enumerate(B):
            r[s + i] = R.sub(r[s + i], R.mul(c, b))
        r = _rstrip(r, R)
        e -= 1
    if e > 0 and r:
        m = R.pow(lcb, e)
        r = [R.mul(m, x) for x in r]
    return r


def resultant_ring(A, B, R):
    """Subresultant PRS resultant over an integral domain ``R`` with exact division.

    ``A`` and ``B`` are lists of ``R`` elements (constant term first).  The
    result equals the Sylvester determinant, so it agrees with :func:`resultant`
    when ``R`` is a field.
    """
    A = _rstrip(list(A), R)
    B = _rstrip(list(B), R)
    if not A or not B:
        return R.zero
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -s
        A, B = B, A
    if len(B) == 1:
        res = R.pow(B[0], len(A) - 1)
        return res if s > 0 else R.neg(res)
    g = R.one
    h = R.one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        Rm = _prem(A, B, R)
        A = B
        if not Rm:
            return R.zero
        div = R.mul(g, R.pow(h, delta))
        B = [R.exquo(c, div) for c in Rm]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = R.exquo(R.pow(g, delta), R.pow(h, delta - 1))
        if len(B) == 1:
            da = len(A) - 1
            if da == 0:
                res = R.one
            elif da == 1:
                res = B[0]
            else:
                res = R.exquo(R.pow(B[0], da), R.pow(h, da - 1))
            return res if s > 0 else R.neg(res)
