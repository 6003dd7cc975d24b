"""Dense univariate polynomials over QQ or Fp and their factorization.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros; ``[]`` is the zero polynomial. Every function takes the coefficient
field as its first argument.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .domains import QQ, Domain, PrimeField
from .poly import Poly


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(F: Domain, a, b):
    n = max(len(a), len(b))
    return trim(F.reduce((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) for i in range(n))


def sub(F: Domain, a, b):
    return add(F, a, [F.reduce(-c) for c in b])


def scale(F: Domain, a, c):
    return trim(F.reduce(x * c) for x in a)


def mul(F: Domain, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(F.reduce(c) for c in out)


def divmod_(F: Domain, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        c = F.reduce(a[-1] * inv)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = F.reduce(a[k + i] - c * y)
        a = trim(a)
    return trim(q), a


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F: Domain, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: Domain, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F: Domain, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1, t0, t1 = [F.convert(1)], [], [], [F.convert(1)]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    inv = F.inv(r0[-1])
    return scale(F, r0, inv), scale(F, s0, inv), scale(F, t0, inv)


def deriv(F: Domain, a):
    return trim(F.reduce(i * c) for i, c in enumerate(a))[1:] if len(a) > 1 else []


def powmod(F: Domain, a, e: int, m):
    result = [F.convert(1)]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        base = rem(F, mul(F, base, base), m)
        e >>= 1
    return result


def evaluate(F: Domain, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.reduce(acc * x + c)
    return acc


def to_poly(F: Domain, a) -> Poly:
    return Poly({(i,): c for i, c in enumerate(a) if c}, 1, F)


def from_poly(f: Poly):
    if f.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    n = f.total_degree()
    out = [0] * (n + 1)
    for (e,), c in f.terms.items():
        out[e] = c
    return trim(out)


# ---------------------------------------------------------------------------
# factorization over Fp

def _pth_root(F: PrimeField, a):
    p = F.p
    return trim(a[i] for i in range(0, len(a), p))


def _squarefree_fp(F: PrimeField, f):
    """Squarefree decomposition over Fp: list of (monic squarefree factor, multiplicity)."""
    out = []
    f = monic(F, f)
    if deg(f) < 1:
        return out
    d = deriv(F, f)
    if not d:
        for g, m in _squarefree_fp(F, _pth_root(F, f)):
            out.append((g, m * F.p))
        return out
    c = gcd(F, f, d)
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if deg(c) > 0:
        for g, m in _squarefree_fp(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def _distinct_degree(F: PrimeField, f):
    out = []
    x = [0, 1]
    h = x
    d = 0
    f = list(f)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.p, f)
        g = gcd(F, sub(F, h, x), f)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = rem(F, h, f)
    if deg(f) > 0:
        out.append((monic(F, f), deg(f)))
    return out


def _equal_degree(F: PrimeField, f, d: int, rng: random.Random):
    n = deg(f)
    if n == d:
        return [f]
    p = F.p
    while True:
        a = trim(rng.randrange(p) for _ in range(n))
        if deg(a) < 1:
            continue
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                t = rem(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            g = gcd(F, acc, f)
        else:
            g = gcd(F, sub(F, powmod(F, a, (p ** d - 1) // 2, f), [1]), f)
        if 0 < deg(g) < n:
            return _equal_degree(F, g, d, rng) + _equal_degree(F, divmod_(F, f, g)[0], d, rng)


def factor_fp(F: PrimeField, f, rng: random.Random | None = None):
    """Monic irreducible factors of ``f`` over Fp with multiplicities."""
    rng = rng or random.Random(0x5A17)
    out = []
    for g, m in _squarefree_fp(F, f):
        for h, d in _distinct_degree(F, g):
            for irr in _equal_degree(F, h, d, rng):
                out.append((monic(F, irr), m))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return _merge(out)


def _merge(facs):
    merged: dict = {}
    order = []
    for g, m in facs:
        k = tuple(g)
        if k not in merged:
            order.append(k)
            merged[k] = 0
        merged[k] += m
    return [(list(k), merged[k]) for k in order]


def factor_qq(f):
    """Monic irreducible factors over QQ (Zassenhaus via sympy's factor_list)."""
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, f)])), x,
                    domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for g, m in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
        out.append((monic(QQ, coeffs), m))
    out.sort(key=lambda t: (deg(t[0]), [(c.numerator, c.denominator) for c in t[0]]))
    return out


def factor(F: Domain, f, rng: random.Random | None = None):
    f = trim(F.convert(c) for c in f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if F == QQ:
        return factor_qq(f)
    if isinstance(F, PrimeField):
        return factor_fp(F, f, rng)
    raise ValueError(f"factorization needs a field, got {F}")


def univ_factor(f: Poly, field: Domain | None = None, rng: random.Random | None = None):
    """Factor a univariate :class:`Poly` over QQ or Fp.

    Returns ``(leading_coefficient, [(monic irreducible Poly, multiplicity), ...])``.
    """
    F = field or f.domain
    coeffs = from_poly(f.change_domain(F))
    if not coeffs:
        raise ValueError("cannot factor the zero polynomial")
    lc = coeffs[-1]
    return lc, [(to_poly(F, g), m) for g, m in factor(F, coeffs, rng)]


def is_irreducible(F: Domain, f) -> bool:
    facs = factor(F, f)
    return len(facs) == 1 and facs[0][1] == 1
