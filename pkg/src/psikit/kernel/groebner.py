"""Buchberger completion over fields and strong Groebner bases over ZZ.

Polynomials are handled internally as plain ``dict`` objects mapping exponent
tuples to coefficients; the public functions accept and return :class:`Poly`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from ..errors import ContextMismatch, ResourceLimit
from .config import check_vars, get_limits
from .domains import ZZ, Domain
from .poly import GREVLEX, MonomialOrder, Poly, block_order, mono_div, mono_divides, mono_lcm, mono_mul


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lead(terms: dict, key):
    m = max(terms, key=key)
    return m, terms[m]


def _sub_multiple(p: dict, g: dict, q, shift, red):
    for e, v in g.items():
        ne = mono_mul(e, shift)
        nv = red(p.get(ne, 0) - q * v)
        if nv:
            p[ne] = nv
        else:
            p.pop(ne, None)


def _nf(terms: dict, G: Sequence, key, dom: Domain) -> dict:
    """Full reduction of ``terms`` by ``G`` (list of ``(lm, lc, terms)``).

    Over a field: ordinary division. Over ZZ: exact strong reduction where a
    leading coefficient divides, otherwise Euclidean reduction of the
    coefficient modulo the smallest applicable leading coefficient.
    """
    p = dict(terms)
    r: dict = {}
    field_ = dom.is_field
    red = dom.reduce
    while p:
        m = max(p, key=key)
        c = p[m]
        best = None
        for g in G:
            lm, lc = g[0], g[1]
            if mono_divides(lm, m):
                if field_:
                    best = g
                    break
                if c % lc == 0:
                    best = g
                    break
                if best is None or lc < best[1]:
                    best = g
        if best is None:
            r[m] = p.pop(m)
            continue
        lm, lc, g = best
        if field_:
            q = dom.div(c, lc)
        else:
            q = c // lc
            if q == 0:
                r[m] = p.pop(m)
                continue
        _sub_multiple(p, g, q, mono_div(m, lm), red)
        if m in p:
            r[m] = p.pop(m)
    return r


def _check_size(terms: dict):
    lim = get_limits()
    if len(terms) > lim.max_terms:
        raise ResourceLimit(f"polynomial with {len(terms)} terms exceeds {lim.max_terms}")
    deg = max((sum(e) for e in terms), default=0)
    if deg > lim.max_degree:
        raise ResourceLimit(f"degree {deg} exceeds {lim.max_degree}")


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _complete_field(polys: list[dict], key, dom: Domain, nvars: int) -> list[dict]:
    G: list = []
    heap: list = []
    pending: set = set()
    lim = get_limits()

    def add(h: dict):
        lm, lc = _lead(h, key)
        inv = dom.inv(lc)
        h = {e: dom.reduce(v * inv) for e, v in h.items()}
        idx = len(G)
        G.append((lm, 1, h))
        if len(G) > lim.max_basis:
            raise ResourceLimit("basis size bound exceeded")
        for i in range(idx):
            lcm = mono_lcm(G[i][0], lm)
            heapq.heappush(heap, (key(lcm), i, idx))
            pending.add((i, idx))
        return not any(lm)

    for f in polys:
        h = _nf(f, G, key, dom)
        if h:
            _check_size(h)
            if add(h):
                return [{(0,) * nvars: 1}]
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lmi, _, fi = G[i]
        lmj, _, fj = G[j]
        lcm = mono_lcm(lmi, lmj)
        if _coprime(lmi, lmj):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(G[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        s = {}
        for e, v in fi.items():
            s[mono_mul(e, mono_div(lcm, lmi))] = v
        _sub_multiple(s, fj, 1, mono_div(lcm, lmj), dom.reduce)
        h = _nf(s, G, key, dom)
        if h:
            _check_size(h)
            if add(h):
                return [{(0,) * nvars: 1}]
    # minimal + reduced
    lms = [g[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        dominated = False
        for j, lm in enumerate(lms):
            if j != i and mono_divides(lm, g[0]) and (lm != g[0] or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for g in keep:
        lm = g[0]
        tail = {e: v for e, v in g[2].items() if e != lm}
        others = [h for h in keep if h is not g]
        t = _nf(tail, others, key, dom)
        t[lm] = 1
        out.append(t)
    return out


def _complete_int(polys: list[dict], key, nvars: int) -> list[dict]:
    dom = ZZ
    G: list = []
    queue: list = []
    lim = get_limits()

    def add(h: dict):
        lm, lc = _lead(h, key)
        if lc < 0:
            h = {e: -v for e, v in h.items()}
            lc = -lc
        idx = len(G)
        G.append((lm, lc, h))
        if len(G) > lim.max_basis:
            raise ResourceLimit("basis size bound exceeded")
        for i in range(idx):
            heapq.heappush(queue, (key(mono_lcm(G[i][0], lm)), i, idx))

    for f in polys:
        h = _nf(f, G, key, dom)
        if h:
            _check_size(h)
            add(h)
    while queue:
        _, i, j = heapq.heappop(queue)
        lmi, a, fi = G[i]
        lmj, b, fj = G[j]
        lcm = mono_lcm(lmi, lmj)
        si, sj = mono_div(lcm, lmi), mono_div(lcm, lmj)
        l = a * b // gcd(a, b)
        if not (_coprime(lmi, lmj) and gcd(a, b) == 1):
            s = {}
            for e, v in fi.items():
                s[mono_mul(e, si)] = v * (l // a)
            _sub_multiple(s, fj, l // b, sj, dom.reduce)
            h = _nf(s, G, key, dom)
            if h:
                _check_size(h)
                add(h)
        if a % b and b % a:
            d, x, y = _xgcd(a, b)
            gp: dict = {}
            for e, v in fi.items():
                gp[mono_mul(e, si)] = v * x
            _sub_multiple(gp, fj, -y, sj, dom.reduce)
            h = _nf(gp, G, key, dom)
            if h:
                _check_size(h)
                add(h)
    # minimal strong basis: drop g whose leading term is strongly divisible by another's
    keep = []
    for i, g in enumerate(G):
        dominated = False
        for j, h in enumerate(G):
            if j == i:
                continue
            if mono_divides(h[0], g[0]) and g[1] % h[1] == 0:
                if (h[0], h[1]) != (g[0], g[1]) or j < i:
                    dominated = True
                    break
        if not dominated:
            keep.append(g)
    out = []
    for g in keep:
        lm, lc = g[0], g[1]
        tail = {e: v for e, v in g[2].items() if e != lm}
        others = [h for h in keep if h is not g]
        t = _nf(tail, others, key, dom)
        t[lm] = lc
        out.append(t)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; over ZZ a reduced strong basis (``strong`` is set)."""

    basis: tuple
    order: MonomialOrder
    domain: Domain
    nvars: int
    strong: bool = False
    _leads: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self._leads:
            object.__setattr__(self, "_leads", tuple(
                (*_lead(g.terms, self.order.key), g.terms) for g in self.basis
            ))

    def leading_terms(self):
        return [(lm, lc) for lm, lc, _ in self._leads]

    def reduce(self, f: Poly) -> Poly:
        if f.nvars != self.nvars or f.domain != self.domain:
            raise ContextMismatch("polynomial and basis live in different rings")
        r = _nf(f.terms, self._leads, self.order.key, self.domain)
        return Poly(r, self.nvars, self.domain, normalized=True)

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return any(not any(lm) and (self.domain.is_field or lc == 1) for lm, lc, _ in self._leads)

    def integer_generator(self) -> int:
        """Over ZZ: the nonnegative generator of the ideal's intersection with ZZ."""
        for lm, lc, _ in self._leads:
            if not any(lm):
                return lc
        return 0

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def groebner(gens: Iterable[Poly], order: MonomialOrder = GREVLEX, *, nvars: int | None = None,
             domain: Domain | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Over ZZ the result is a reduced strong basis: every ideal member has a
    leading term divisible, coefficient included, by some basis leading term.
    """
    gens = [g for g in gens]
    if gens:
        nvars = gens[0].nvars if nvars is None else nvars
        domain = gens[0].domain if domain is None else domain
    if nvars is None or domain is None:
        raise ValueError("empty generator list needs explicit nvars and domain")
    for g in gens:
        if g.nvars != nvars or g.domain != domain:
            raise ContextMismatch("generators must share variable count and coefficient domain")
    check_vars(nvars)
    polys = [g.terms for g in gens if g.terms]
    key = order.key
    if domain.is_field:
        raw = _complete_field(polys, key, domain, nvars)
    else:
        raw = _complete_int(polys, key, nvars)
    basis = [Poly(t, nvars, domain, normalized=True) for t in raw]
    basis.sort(key=lambda p: key(p.lead(order)[0]), reverse=True)
    return GroebnerBasis(tuple(basis), order, domain, nvars, strong=not domain.is_field)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``gb``; zero exactly when ``f`` is in the ideal."""
    return gb.reduce(f)


def eliminate(gens: Sequence[Poly], keep: Iterable[int]) -> list[Poly]:
    """Generators of the ideal intersected with the subring on the ``keep`` variables."""
    gens = list(gens)
    if not gens:
        return []
    nv = gens[0].nvars
    keep = set(keep)
    drop = [i for i in range(nv) if i not in keep]
    if not drop:
        return list(groebner(gens).basis)
    gb = groebner(gens, block_order(drop, nv))
    return [g for g in gb.basis if not (g.support_vars() & set(drop))]


def saturate(gens: Sequence[Poly], f: Poly) -> list[Poly]:
    """Generators of ``(I : f^oo)`` via a Rabinowitsch variable ``t`` and ``t*f - 1``."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    nv, dom = f.nvars, f.domain
    pos = list(range(nv))
    lifted = [g.reindex(nv + 1, pos) for g in gens]
    t = Poly.var(nv, nv + 1, dom)
    lifted.append(t * f.reindex(nv + 1, pos) - 1)
    out = eliminate(lifted, range(nv))
    return [Poly({e[:nv]: c for e, c in g.terms.items()}, nv, dom, normalized=True) for g in out]


class _Infinite:
    def __repr__(self):
        return "INFINITE"

    def __bool__(self):
        return False


INFINITE = _Infinite()


def quotient_basis(gb: GroebnerBasis):
    """Standard monomials of a zero-dimensional ideal over a field, else ``INFINITE``."""
    if gb.is_unit():
        return []
    leads = [lm for lm, lc in gb.leading_terms() if gb.domain.is_field or lc == 1]
    n = gb.nvars
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leads):
            return INFINITE
    seen = set()
    out = []
    stack = [(0,) * n]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        if any(mono_divides(lm, m) for lm in leads):
            continue
        out.append(m)
        for i in range(n):
            stack.append(tuple(x + (1 if k == i else 0) for k, x in enumerate(m)))
    out.sort(key=gb.order.key)
    return out
