"""Small finite commutative rings as explicit tables, and exhaustive checks on them.

Elements are integers ``0..n-1``; addition and multiplication are ``n x n``
numpy tables. Rings built from a presentation over ZZ (with a nonzero integer
in the ideal) use a mixed-radix encoding of canonical coefficient vectors, so
element ``i`` can be printed back as a polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import NotARing, NotFiniteQuotient, TooLarge
from .kernel import ZZ, Poly, groebner
from .kernel.poly import mono_divides
from .rings import (FpAlgebra, RingMorphism, base_ring, lift_to_int, make_algebra, make_morphism,
                    product_construction)

DEFAULT_BOUND = 4096


@dataclass(eq=False)
class FiniteRing:
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    presentation: FpAlgebra | None = None
    basis: tuple = ()
    radix: tuple = ()
    gen_elements: tuple = ()

    @property
    def size(self) -> int:
        return len(self.add)

    @property
    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != self.zero:
            x = int(self.add[x, self.one])
            k += 1
        return k

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add[a] == self.zero)[0])

    def coords(self, i: int) -> list[int]:
        out = []
        for r in self.radix:
            out.append(i % r)
            i //= r
        return out

    def element(self, f) -> int:
        """Index of a polynomial of the presentation."""
        A = self.presentation
        p = A.reduce(A.poly(f))
        idx, stride = 0, 1
        pos = {m: k for k, m in enumerate(self.basis)}
        vec = [0] * len(self.basis)
        for e, c in p.terms.items():
            vec[pos[e]] = c
        for c, r in zip(vec, self.radix):
            idx += (c % r) * stride
            stride *= r
        return idx

    def show(self, i: int) -> str:
        if self.presentation is None:
            return f"#{i}"
        A = self.presentation
        terms = {m: c for m, c in zip(self.basis, self.coords(i)) if c}
        return A.fmt(Poly(terms, A.nvars, A.base))

    def __repr__(self):
        return f"FiniteRing(size={self.size})"


def _carry(P: np.ndarray, radix, tails):
    """Bring coefficient rows into canonical range, pushing overflow into lower monomials."""
    for k in range(len(radix) - 1, -1, -1):
        r = radix[k]
        q = P[:, k] // r
        P[:, k] -= q * r
        if tails[k] is not None and q.any():
            P += q[:, None] * tails[k][None, :]
    return P


def build_finite(A: FpAlgebra, bound: int = DEFAULT_BOUND) -> FiniteRing:
    """Tables for a finite quotient of a polynomial ring over ZZ (or Fp)."""
    A = lift_to_int(A)
    gb = A.gb
    if gb.is_unit():
        z = np.zeros((1, 1), dtype=np.int64)
        return FiniteRing(z, z.copy(), 0, 0, A, (), (), tuple(0 for _ in A.gens))
    if not gb.integer_generator():
        raise NotFiniteQuotient("no nonzero integer in the ideal")
    leads = gb.leading_terms()
    monic = [lm for lm, lc in leads if lc == 1]
    n = A.nvars
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in monic):
            raise NotFiniteQuotient(f"generator {A.gens[i]} is not integral modulo the ideal")
    basis, radix = [], []
    seen, stack = set(), [(0,) * n]
    size = 1
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        if any(mono_divides(lm, m) for lm in monic):
            continue
        r = min(lc for lm, lc in leads if mono_divides(lm, m))
        basis.append(m)
        radix.append(r)
        size *= r
        if size > bound:
            raise TooLarge(f"ring has more than {bound} elements")
        for i in range(n):
            stack.append(tuple(x + (i == k) for k, x in enumerate(m)))
    order = sorted(range(len(basis)), key=lambda k: gb.order.key(basis[k]))
    basis = [basis[k] for k in order]
    radix = [radix[k] for k in order]
    k = len(basis)
    pos = {m: j for j, m in enumerate(basis)}

    def vec(p: Poly):
        v = np.zeros(k, dtype=np.int64)
        for e, c in gb.reduce(p).terms.items():
            v[pos[e]] = c
        return v

    mono = [Poly({m: 1}, n, ZZ) for m in basis]
    tails = []
    for j, m in enumerate(basis):
        t = vec(mono[j].scale(radix[j]))
        tails.append(t if t.any() else None)
    prod = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i, k):
            prod[i, j] = prod[j, i] = vec(mono[i] * mono[j])
    strides = np.cumprod([1] + radix[:-1]).astype(np.int64)
    idx = np.arange(size, dtype=np.int64)
    C = (idx[:, None] // strides[None, :]) % np.array(radix, dtype=np.int64)[None, :]
    add = np.empty((size, size), dtype=np.int64)
    mul = np.empty((size, size), dtype=np.int64)
    for x in range(size):
        S = _carry(C + C[x][None, :], radix, tails)
        add[x] = S @ strides
        W = np.tensordot(C[x], prod, axes=(0, 0))
        Pm = _carry(C @ W, radix, tails)
        mul[x] = Pm @ strides
    R = FiniteRing(add, mul, 0, 0, A, tuple(basis), tuple(radix))
    R.one = R.element(1)
    R.gen_elements = tuple(R.element(A.var(g)) for g in A.gens)
    return R


def ring_from_tables(add, mul, zero: int = 0, one: int = 1) -> FiniteRing:
    """Validate user tables against the commutative ring axioms."""
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    n = len(add)
    if add.shape != (n, n) or mul.shape != (n, n) or add.min() < 0 or add.max() >= n \
            or mul.min() < 0 or mul.max() >= n:
        raise NotARing("closure")
    if not (add == add.T).all():
        raise NotARing("additive commutativity")
    if not (mul == mul.T).all():
        raise NotARing("multiplicative commutativity")
    if not (add[zero] == np.arange(n)).all():
        raise NotARing("additive identity")
    if not (mul[one] == np.arange(n)).all():
        raise NotARing("multiplicative identity")
    if not (add == zero).any(axis=1).all():
        raise NotARing("additive inverses")
    for a in range(n):
        if not (add[add[a]] == add[a][add]).all():
            raise NotARing("additive associativity")
        if not (mul[mul[a]] == mul[a][mul]).all():
            raise NotARing("multiplicative associativity")
        if not (mul[a][add] == add[mul[a][:, None], mul[a][None, :]]).all():
            raise NotARing("distributivity")
    return FiniteRing(add, mul, zero, one)


@dataclass(eq=False)
class FiniteMorphism:
    source: FiniteRing
    target: FiniteRing
    phi: np.ndarray
    origin: RingMorphism | None = None

    def is_surjective(self) -> bool:
        return len(np.unique(self.phi)) == self.target.size

    def is_identity(self) -> bool:
        return self.source is self.target and (self.phi == np.arange(self.source.size)).all()


def check_morphism(A: FiniteRing, B: FiniteRing, phi) -> FiniteMorphism:
    phi = np.asarray(phi, dtype=np.int64)
    if phi[A.one] != B.one:
        raise ValueError("map does not send 1 to 1")
    if not (phi[A.add] == B.add[phi[:, None], phi[None, :]]).all():
        raise ValueError("map is not additive")
    if not (phi[A.mul] == B.mul[phi[:, None], phi[None, :]]).all():
        raise ValueError("map is not multiplicative")
    return FiniteMorphism(A, B, phi)


def finite_morphism(u: RingMorphism, bound: int = DEFAULT_BOUND) -> FiniteMorphism:
    """Tables for a morphism between finite presented rings."""
    A = build_finite(u.source, bound)
    B = build_finite(u.target, bound)
    imgs = [B.element(lift_to_int(u.target).poly(Poly(i.terms, u.target.nvars, ZZ))) for i in u.images]
    phi = np.zeros(A.size, dtype=np.int64)
    mono_img = []
    for m in A.basis:
        x = B.one
        for g, k in zip(imgs, m):
            for _ in range(k):
                x = int(B.mul[x, g])
        mono_img.append(x)
    for i in range(A.size):
        acc = B.zero
        for c, x in zip(A.coords(i), mono_img):
            for _ in range(c):
                acc = int(B.add[acc, x])
        phi[i] = acc
    f = check_morphism(A, B, phi)
    f.origin = u
    return f


# ---------------------------------------------------------------------------
# ideals and primes

def ideal_generated(R: FiniteRing, elems) -> frozenset:
    cur = np.zeros(R.size, dtype=bool)
    cur[R.zero] = True
    for a in elems:
        principal = np.unique(R.mul[a])
        members = np.flatnonzero(cur)
        cur = np.zeros(R.size, dtype=bool)
        cur[np.unique(R.add[np.ix_(members, principal)])] = True
    return frozenset(np.flatnonzero(cur).tolist())


def enumerate_ideals(R: FiniteRing) -> list[frozenset]:
    """All ideals, as closures of principal ideals under sums."""
    principal = {frozenset(np.unique(R.mul[a]).tolist()) for a in range(R.size)}
    found = set(principal)
    queue = list(principal)
    plist = list(principal)
    while queue:
        I = queue.pop()
        mi = np.fromiter(I, dtype=np.int64)
        for P in plist:
            if P <= I:
                continue
            S = frozenset(np.unique(R.add[np.ix_(mi, np.fromiter(P, dtype=np.int64))]).tolist())
            if S not in found:
                found.add(S)
                queue.append(S)
    return sorted(found, key=lambda I: (len(I), sorted(I)))


def _mask(R: FiniteRing, I) -> np.ndarray:
    m = np.zeros(R.size, dtype=bool)
    m[list(I)] = True
    return m


def is_prime_ideal_finite(R: FiniteRing, I) -> bool:
    if len(I) == R.size:
        return False
    inside = _mask(R, I)
    out = np.flatnonzero(~inside)
    return not inside[R.mul[np.ix_(out, out)]].any()


def prime_ideals(R: FiniteRing) -> list[frozenset]:
    return [I for I in enumerate_ideals(R) if is_prime_ideal_finite(R, I)]


def contract(u: FiniteMorphism, J) -> frozenset:
    inside = _mask(u.target, J)
    return frozenset(np.flatnonzero(inside[u.phi]).tolist())


def is_a_prime_finite(u: FiniteMorphism, I) -> bool:
    B = u.target
    if len(I) == B.size:
        return False
    inside = _mask(B, I)
    for c in np.unique(u.phi):
        if inside[c]:
            continue
        if (inside[B.mul[c]] & ~inside).any():
            return False
    return True


def a_primes_finite(u: FiniteMorphism) -> list[frozenset]:
    """Proper ideals I of the target with: u(a)b in I implies u(a) in I or b in I."""
    return [I for I in enumerate_ideals(u.target) if is_a_prime_finite(u, I)]


@dataclass(frozen=True)
class BruteStatus:
    psi: bool
    strong: bool


def bruteforce_status(u: FiniteMorphism) -> BruteStatus:
    B = u.target
    psi = all(is_prime_ideal_finite(B, I) for I in a_primes_finite(u))
    strong = psi
    if psi:
        image = np.unique(u.phi)
        for Q in prime_ideals(B):
            P = contract(u, Q)
            qa = np.fromiter(Q, dtype=np.int64)
            covered = np.unique(B.add[np.ix_(image, qa)])
            if len(covered) != B.size or u.source.size // len(P) != B.size // len(Q):
                strong = False
                break
    return BruteStatus(psi, strong)


def fiber_psi_finite(u: FiniteMorphism) -> bool:
    """Independent check: for every prime P of the source, PB is the unit ideal or prime."""
    B = u.target
    for P in prime_ideals(u.source):
        PB = ideal_generated(B, np.unique(u.phi[list(P)]).tolist())
        if len(PB) != B.size and not is_prime_ideal_finite(B, PB):
            return False
    return True


# ---------------------------------------------------------------------------
# random instances for fuzzing

_SMALL = [2, 3, 4, 5, 7, 8, 9, 6]


def _random_ring(rng: random.Random, bound: int) -> FpAlgebra:
    mods = [m for m in _SMALL if m <= bound] or [2]
    m = rng.choice(mods)
    deg_cap = 1
    while m ** (deg_cap + 1) <= bound and deg_cap < 3:
        deg_cap += 1
    d = rng.randint(1, deg_cap)
    if m ** d > bound or rng.random() < 0.25:
        return make_algebra("ZZ", [], [m])
    coeffs = [rng.randrange(m) for _ in range(d)]
    f = "x^%d" % d + "".join(f" + {c}*x^{k}" for k, c in enumerate(coeffs) if c)
    return make_algebra("ZZ", ["x"], [m, f])


def _power_relation(B: FiniteRing, b: int):
    """Smallest (s, t) with b^(s+t) = b^s."""
    seen = {}
    x, k = B.one, 0
    while x not in seen:
        seen[x] = k
        x = int(B.mul[x, b])
        k += 1
    s = seen[x]
    return s, k - s


def _instance(rng: random.Random, bound: int) -> RingMorphism:
    kind = rng.choice(["structure", "element", "quotient", "extension", "diagonal", "product"])
    B = _random_ring(rng, bound)
    FB = build_finite(B, bound)
    m = FB.characteristic
    if kind == "structure":
        k = rng.choice([1, 1, 2, 3])
        if m * k > bound:
            k = 1
        return make_morphism(make_algebra("ZZ", [], [m * k]), B, [])
    if kind == "element":
        b = rng.randrange(FB.size)
        s, t = _power_relation(FB, b)
        if m ** (s + t) > bound:
            return make_morphism(make_algebra("ZZ", [], [m]), B, [])
        rel = f"t^{s + t} - t^{s}" if s else f"t^{t} - 1"
        A = make_algebra("ZZ", ["t"], [m, rel])
        return make_morphism(A, B, [FB.show(b) or "0"])
    if kind == "quotient":
        g = FB.show(rng.randrange(FB.size)) or "0"
        Q = FpAlgebra(B.base, B.gens, B.relations + (B.poly(g),))
        return make_morphism(B, Q, [Q.var(x) for x in B.gens], check=False)
    if kind == "extension":
        d = rng.randint(1, 2)
        if FB.size ** (d + 1) > bound:
            d = 1
        if FB.size ** d > bound:
            return make_morphism(make_algebra("ZZ", [], [m]), B, [])
        n = B.nvars
        names = B.gens + ("y",)
        cs = [FB.show(rng.randrange(FB.size)) or "0" for _ in range(d)]
        g = f"y^{d}" + "".join(f" + ({c})*y^{k}" for k, c in enumerate(cs))
        rels = [r.reindex(n + 1, list(range(n))) for r in B.relations]
        E = make_algebra("ZZ", names, [*rels, g])
        return make_morphism(B, E, [E.var(x) for x in B.gens])
    C = _random_ring(rng, max(2, bound // max(FB.size, 1)))
    FC = build_finite(C, bound)
    if FB.size * FC.size > bound:
        return make_morphism(make_algebra("ZZ", [], [m]), B, [])
    mc = FC.characteristic
    l = m * mc // np.gcd(m, mc)
    if kind == "diagonal":
        A = make_algebra("ZZ", [], [l])
        return product_construction(B, C, make_morphism(A, B, []), make_morphism(A, C, [])).diagonal
    P = product_construction(B, C)
    return make_morphism(make_algebra("ZZ", [], [l]), P.algebra, [], check=False)


def random_instance(seed: int, bound: int = 64) -> FiniteMorphism:
    """Reproducible random morphism of finite rings with both sides of size <= bound."""
    if bound > DEFAULT_BOUND:
        raise TooLarge(f"size bound above {DEFAULT_BOUND}")
    rng = random.Random(seed)
    for _ in range(50):
        try:
            u = _instance(rng, bound)
            return finite_morphism(u, bound)
        except (TooLarge, NotFiniteQuotient, ValueError):
            continue
    Z2 = make_algebra("ZZ", [], [2])
    return finite_morphism(make_morphism(Z2, Z2, []), bound)


def random_map_from(rng: random.Random, A: FpAlgebra, bound: int = 64) -> RingMorphism:
    """A random morphism out of the finite ring A: a quotient, a monic extension,
    or the diagonal into a product of two quotients."""
    A = lift_to_int(A)
    FA = build_finite(A, bound)
    n = A.nvars
    ident = [A.var(g) for g in A.gens]
    for _ in range(20):
        kind = rng.choice(["quotient", "extension", "diagonal", "quotient"])
        try:
            if kind == "quotient":
                g = A.poly(FA.show(rng.randrange(FA.size)) or "0")
                Q = FpAlgebra(A.base, A.gens, A.relations + (g,))
                build_finite(Q, bound)
                return RingMorphism(A, Q, tuple(Q.reduce(x) for x in ident))
            if kind == "extension":
                if FA.size ** 2 > bound:
                    continue
                c = FA.show(rng.randrange(FA.size)) or "0"
                names = A.gens + ("y",)
                rels = [r.reindex(n + 1, list(range(n))) for r in A.relations]
                E = make_algebra("ZZ", names, [*rels, f"y^2 + ({c})" if rng.random() < 0.5 else f"y^2 + y + ({c})"])
                build_finite(E, bound)
                return make_morphism(A, E, [E.var(x) for x in A.gens])
            g1, g2 = (A.poly(FA.show(rng.randrange(FA.size)) or "0") for _ in range(2))
            Q1 = FpAlgebra(A.base, A.gens, A.relations + (g1,))
            Q2 = FpAlgebra(A.base, A.gens, A.relations + (g2,))
            if build_finite(Q1, bound).size * build_finite(Q2, bound).size > bound:
                continue
            u1 = RingMorphism(A, Q1, tuple(Q1.reduce(x) for x in ident))
            u2 = RingMorphism(A, Q2, tuple(Q2.reduce(x) for x in ident))
            return product_construction(Q1, Q2, u1, u2).diagonal
        except (TooLarge, NotFiniteQuotient):
            continue
    return RingMorphism(A, A, tuple(ident))
