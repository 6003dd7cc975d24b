"""Sparse multivariate polynomials over ZZ, QQ and Fp, and monomial orders."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .domains import QQ, ZZ, Domain, PrimeField

Exp = tuple


class MonomialOrder:
    """A monomial order given by a sort key on exponent tuples (larger key = larger monomial)."""

    def __init__(self, name: str, key: Callable[[Exp], tuple]):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"MonomialOrder({self.name})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", lambda e: tuple(e))


def block_order(first: Sequence[int], nvars: int) -> MonomialOrder:
    """Elimination order: grevlex on the ``first`` block, ties broken by grevlex on the rest."""
    first = tuple(sorted(first))
    rest = tuple(i for i in range(nvars) if i not in first)

    def key(e):
        return (_grevlex_key([e[i] for i in first]), _grevlex_key([e[i] for i in rest]))

    return MonomialOrder(f"block{first}/{nvars}", key)


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("terms", "nvars", "domain", "_hash")

    def __init__(self, terms: Mapping[Exp, object], nvars: int, domain: Domain, *, normalized=False):
        if not normalized:
            red = domain.convert
            clean = {}
            for e, c in terms.items():
                c = red(c)
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = c
            terms = clean
        self.terms = terms
        self.nvars = nvars
        self.domain = domain
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars, domain):
        return cls({}, nvars, domain, normalized=True)

    @classmethod
    def const(cls, c, nvars, domain):
        return cls({(0,) * nvars: c}, nvars, domain)

    @classmethod
    def one(cls, nvars, domain):
        return cls.const(1, nvars, domain)

    @classmethod
    def var(cls, i, nvars, domain):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, domain)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def lead(self, order: MonomialOrder = GREVLEX):
        """Return ``(exponent, coefficient)`` of the leading term."""
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly.const(other, self.nvars, self.domain)
        if other.nvars != self.nvars or other.domain != self.domain:
            from ..errors import ContextMismatch

            raise ContextMismatch(f"ring mismatch: {self.nvars}/{self.domain} vs {other.nvars}/{other.domain}")
        return other

    def __add__(self, other):
        other = self._check(other)
        red = self.domain.reduce
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(out, self.nvars, self.domain, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        red = self.domain.reduce
        return Poly({e: red(-c) for e, c in self.terms.items()}, self.nvars, self.domain, normalized=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        red = self.domain.reduce
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: v for e, v in ((e, red(v)) for e, v in out.items()) if v}
        return Poly(out, self.nvars, self.domain, normalized=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        red = self.domain.reduce
        c = self.domain.convert(c)
        out = {e: red(v * c) for e, v in self.terms.items()}
        return Poly({e: v for e, v in out.items() if v}, self.nvars, self.domain, normalized=True)

    def mul_term(self, exp: Exp, c):
        red = self.domain.reduce
        out = {}
        for e, v in self.terms.items():
            w = red(v * c)
            if w:
                out[tuple(a + b for a, b in zip(e, exp))] = w
        return Poly(out, self.nvars, self.domain, normalized=True)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.domain == other.domain and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars, self.domain)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.domain, frozenset(self.terms.items())))
        return self._hash

    # conversions
    def change_domain(self, domain: Domain) -> "Poly":
        """Map coefficients along ZZ->QQ, ZZ->Fp, QQ->Fp (denominators must be invertible) or identity."""
        return Poly(self.terms, self.nvars, domain)

    def reindex(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Embed into ``nvars`` variables, sending variable i to ``positions[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, x in enumerate(e):
                if x:
                    ne[positions[i]] += x
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return Poly(out, nvars, self.domain)

    def substitute(self, images: Sequence["Poly"], domain: Domain | None = None) -> "Poly":
        """Evaluate at ``images`` (one polynomial per variable), coefficients mapped into their domain."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("cannot substitute into a constant without a target context")
        tgt = images[0]
        domain = domain or tgt.domain
        nv = tgt.nvars
        result = Poly.zero(nv, domain)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            term = Poly.const(domain.convert(c), nv, domain)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def clear_denominators(self) -> "Poly":
        """For QQ polynomials: the primitive integer polynomial with positive leading content."""
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        g = g or 1
        return Poly({e: v // g for e, v in ints.items()}, self.nvars, ZZ)

    def to_str(self, names: Sequence[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names is not None else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(self.domain, PrimeField) and c > self.domain.p // 2:
                c = c - self.domain.p
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.to_str()}, {self.domain})"


# ---------------------------------------------------------------------------
# text parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_poly(text: str, names: Sequence[str], domain: Domain) -> Poly:
    """Parse an arithmetic expression in the given variable names.

    Supports ``+ - * ^ **`` and parentheses; ``/`` is accepted only with an
    integer divisor over QQ or a prime field.
    """
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    toks.append(None)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        neg = False
        if peek() in ("+", "-"):
            neg = take() == "-"
        val = term()
        if neg:
            val = -val
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = factor()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants")
                val = val.scale(domain.inv(rhs.constant_term()))
        return val

    def factor():
        base = atom()
        if peek() in ("^", "**"):
            take()
            t = take()
            if t is None or not t.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(t)
        return base

    def atom():
        t = take()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t.isdigit():
            return Poly.const(int(t), nv, domain)
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError("missing ')'")
            return v
        if t in ("+", "-"):
            v = atom()
            return -v if t == "-" else v
        if t in index:
            return Poly.var(index[t], nv, domain)
        raise ValueError(f"unknown symbol {t!r}")

    result = expr()
    if peek() is not None:
        raise ValueError(f"trailing input near {peek()!r}")
    return result


def as_poly(value, names: Sequence[str], domain: Domain) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value, len(names), domain)
    return parse_poly(str(value), names, domain)
