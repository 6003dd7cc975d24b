"""Finitely presented commutative algebras over ZZ, QQ or Fp and their morphisms.

A presentation ``base[x_1..x_n]/(relations)`` is an :class:`FpAlgebra`; a
morphism is given by the images of the source generators. The constructors
here (quotient, localization, tensor product, finite product, idealization,
adjoining a polynomial variable) all produce new presentations; nothing is
ever minimized, and two algebras are equal only when their presentations are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import (BaseIncompatible, ContextMismatch, DuplicateName, ImageNotContained,
                     IncompatibleMultiplicative, MalformedRelation, RelationNotPreserved)
from .kernel import GREVLEX, QQ, ZZ, Domain, GroebnerBasis, IntegerRing, Poly, PrimeField, RationalField
from .kernel import block_order, eliminate, groebner, parse_base, parse_poly, saturate
from .kernel.poly import mono_divides


def _fresh(taken: Iterable[str], stem: str) -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


@dataclass(frozen=True)
class FpAlgebra:
    """``base[gens]/(relations)``; the zero-generator case presents the base ring itself."""

    base: Domain
    gens: tuple
    relations: tuple = ()

    @property
    def nvars(self) -> int:
        return len(self.gens)

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner(self.relations, nvars=self.nvars, domain=self.base)

    @property
    def is_zero(self) -> bool:
        """True when 1 lies in the relation ideal (the zero ring)."""
        return self.gb.is_unit()

    def poly(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.nvars != self.nvars:
                raise ContextMismatch("polynomial has the wrong number of variables")
            return value if value.domain == self.base else value.change_domain(self.base)
        if isinstance(value, int):
            return Poly.const(value, self.nvars, self.base)
        return parse_poly(str(value), self.gens, self.base)

    def var(self, name: str) -> Poly:
        return Poly.var(self.gens.index(name), self.nvars, self.base)

    def zero(self) -> Poly:
        return Poly.zero(self.nvars, self.base)

    def one(self) -> Poly:
        return Poly.one(self.nvars, self.base)

    def reduce(self, f: Poly) -> Poly:
        return self.gb.reduce(self.poly(f))

    def contains(self, f) -> bool:
        return self.gb.contains(self.poly(f))

    def is_base(self) -> bool:
        """True when the algebra is literally its base ring (no generators, no relations)."""
        return not self.gens and not any(r for r in self.relations)

    def fmt(self, f: Poly) -> str:
        return f.to_str(self.gens)

    def __str__(self):
        head = {"Int": "ZZ", "Rat": "QQ"}.get(self.base.tag, repr(self.base))
        if self.gens:
            head += "[" + ", ".join(self.gens) + "]"
        if self.relations:
            head += " / (" + ", ".join(self.fmt(r) for r in self.relations) + ")"
        return head


def make_algebra(base, generators: Sequence[str] = (), relations: Sequence = ()) -> FpAlgebra:
    """Validated presentation ``base[generators]/(relations)``.

    ``base`` is a domain or one of ``"ZZ"``, ``"QQ"``, ``"Fp(p)"``; relations may be
    :class:`Poly` objects or strings in the generator names.
    """
    base = parse_base(base) if isinstance(base, str) else base
    gens = tuple(generators)
    if len(set(gens)) != len(gens):
        dup = next(g for g in gens if gens.count(g) > 1)
        raise DuplicateName(f"generator {dup!r} declared twice")
    rels = []
    for r in relations:
        try:
            p = r if isinstance(r, Poly) else parse_poly(str(r), gens, base)
        except ValueError as exc:
            raise MalformedRelation(f"relation {r!r}: {exc}") from exc
        if p.nvars != len(gens):
            raise MalformedRelation(f"relation {r!r} uses the wrong variables")
        p = p.change_domain(base)
        if not p.is_zero():
            rels.append(p)
    return FpAlgebra(base, gens, tuple(rels))


def base_ring(base) -> FpAlgebra:
    return make_algebra(base)


def lift_to_int(A: FpAlgebra) -> FpAlgebra:
    """Present an Fp-algebra over ZZ by adding the relation p; ZZ-algebras are returned unchanged."""
    if isinstance(A.base, IntegerRing):
        return A
    if isinstance(A.base, PrimeField):
        rels = [Poly(r.terms, A.nvars, ZZ) for r in A.relations]
        return FpAlgebra(ZZ, A.gens, tuple(rels) + (Poly.const(A.base.p, A.nvars, ZZ),))
    raise BaseIncompatible("a QQ-algebra has no finite presentation over ZZ")


def _compatible(src: Domain, tgt: Domain) -> bool:
    if isinstance(src, IntegerRing):
        return True
    return src == tgt


@dataclass(frozen=True)
class RingMorphism:
    """A morphism ``source -> target`` given by one target polynomial per source generator."""

    source: FpAlgebra
    target: FpAlgebra
    images: tuple

    def apply(self, f) -> Poly:
        """Image of a source polynomial, reduced in the target."""
        f = self.source.poly(f)
        T = self.target
        if not self.source.gens:
            return T.reduce(Poly.const(T.base.convert(f.constant_term()), T.nvars, T.base))
        if not T.gens:
            img = [Poly({(): T.base.convert(c.constant_term())}, 0, T.base) for c in self.images]
            val = T.base.convert(0)
            for e, c in f.terms.items():
                term = T.base.convert(c)
                for i, k in enumerate(e):
                    term = T.base.reduce(term * img[i].constant_term() ** k) if img[i].terms else (0 if k else term)
                val = T.base.reduce(val + term)
            return T.reduce(Poly.const(val, 0, T.base))
        return T.reduce(f.substitute(list(self.images), T.base))

    def describe(self) -> str:
        if not self.source.gens:
            return f"{self.source} -> {self.target}"
        maps = ", ".join(f"{x} -> {self.target.fmt(p)}" for x, p in zip(self.source.gens, self.images))
        return f"{self.source} -> {self.target} {{ {maps} }}"

    def __str__(self):
        return self.describe()


def make_morphism(A: FpAlgebra, B: FpAlgebra, images=None, *, check: bool = True) -> RingMorphism:
    """Morphism ``A -> B`` sending the i-th generator of A to ``images[i]``.

    ``images`` may be a sequence or a ``{generator: image}`` mapping. Every relation
    of A must map into the relation ideal of B.
    """
    if not _compatible(A.base, B.base):
        raise BaseIncompatible(f"no ring morphism from a {A.base!r}-algebra to a {B.base!r}-algebra")
    images = images if images is not None else ()
    if isinstance(images, dict):
        missing = [g for g in A.gens if g not in images]
        if missing:
            raise ValueError(f"no image given for {missing}")
        images = [images[g] for g in A.gens]
    images = list(images)
    if len(images) != A.nvars:
        raise ValueError(f"expected {A.nvars} images, got {len(images)}")
    imgs = tuple(B.reduce(B.poly(i)) for i in images)
    u = RingMorphism(A, B, imgs)
    if check:
        for r in A.relations:
            if not u.apply(r).is_zero():
                raise RelationNotPreserved(A.fmt(r))
    return u


def identity(A: FpAlgebra) -> RingMorphism:
    return RingMorphism(A, A, tuple(A.var(g) for g in A.gens))


def structure_map(B: FpAlgebra, base: Domain | None = None) -> RingMorphism:
    """The unique map from the base ring (default: B's own base) into B."""
    return make_morphism(base_ring(base or B.base), B, [])


def compose(u: RingMorphism, v: RingMorphism) -> RingMorphism:
    """``v o u`` for ``u: A -> B`` and ``v: B -> C``."""
    if u.target != v.source:
        raise ContextMismatch("target of the first morphism is not the source of the second")
    return RingMorphism(u.source, v.target, tuple(v.apply(img) for img in u.images))


@dataclass(frozen=True)
class IdealSpec:
    """An ideal of ``ambient`` given by generators (relations of the ambient are implicit)."""

    ambient: FpAlgebra
    generators: tuple

    @cached_property
    def gb(self) -> GroebnerBasis:
        A = self.ambient
        return groebner(list(A.relations) + list(self.generators), nvars=A.nvars, domain=A.base)

    def contains(self, f) -> bool:
        return self.gb.contains(self.ambient.poly(f))

    def is_proper(self) -> bool:
        return not self.gb.is_unit()

    def quotient(self) -> FpAlgebra:
        A = self.ambient
        return FpAlgebra(A.base, A.gens, A.relations + tuple(g for g in self.generators if g))

    def same_ideal(self, other: "IdealSpec") -> bool:
        return all(other.contains(g) for g in self.generators) and all(self.contains(g) for g in other.generators)

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(self.ambient.fmt(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class PrimeSpec(IdealSpec):
    """An ideal used as a prime; ``verified`` is ``"yes"`` only after a primality check."""

    verified: str = "claimed"


def ideal(A: FpAlgebra, *gens) -> IdealSpec:
    return IdealSpec(A, tuple(g for g in (A.poly(x) for x in gens)))


def prime(A: FpAlgebra, *gens, verified: str = "claimed") -> PrimeSpec:
    return PrimeSpec(A, tuple(A.poly(x) for x in gens), verified)


def _gens_of(A: FpAlgebra, I) -> tuple:
    if isinstance(I, IdealSpec):
        if I.ambient != A:
            raise ContextMismatch("ideal belongs to a different presentation")
        return I.generators
    return tuple(A.poly(g) for g in I)


def quotient_construction(u: RingMorphism, I, J) -> RingMorphism:
    """The induced morphism ``A/I -> B/J``; requires ``u(I)`` inside ``J``."""
    A, B = u.source, u.target
    gi, gj = _gens_of(A, I), _gens_of(B, J)
    A2 = FpAlgebra(A.base, A.gens, A.relations + tuple(g for g in gi if g))
    B2 = FpAlgebra(B.base, B.gens, B.relations + tuple(g for g in gj if g))
    for g in gi:
        if not B2.contains(u.apply(g)):
            raise ImageNotContained(A.fmt(g))
    return RingMorphism(A2, B2, tuple(B2.reduce(i) for i in u.images))


def _adjoin_inverse(A: FpAlgebra, s: Poly, stem: str = "y") -> FpAlgebra:
    name = _fresh(A.gens, stem)
    n = A.nvars
    pos = list(range(n))
    rels = tuple(r.reindex(n + 1, pos) for r in A.relations)
    y = Poly.var(n, n + 1, A.base)
    return FpAlgebra(A.base, A.gens + (name,), rels + (y * s.reindex(n + 1, pos) - 1,))


def localize(A: FpAlgebra, s) -> RingMorphism:
    """The fraction map ``A -> A[1/s]`` presented as ``A[y]/(s*y - 1)``."""
    s = A.poly(s)
    L = _adjoin_inverse(A, s)
    return RingMorphism(A, L, tuple(L.var(g) for g in A.gens))


def localize_construction(u: RingMorphism, s, t=None) -> RingMorphism:
    """The induced morphism ``A[1/s] -> B[1/t]``; ``u(s)`` must become a unit in ``B[1/t]``."""
    A, B = u.source, u.target
    s = A.poly(s)
    us = u.apply(s)
    t = us if t is None else B.reduce(B.poly(t))
    A2 = _adjoin_inverse(A, s)
    B2 = _adjoin_inverse(B, t)
    n = B.nvars
    emb = list(range(n))
    base_imgs = [i.reindex(n + 1, emb) for i in u.images]
    z = Poly.var(n, n + 1, B.base)
    if B.reduce(us - t).is_zero():
        inverse = z
    else:
        # adjoin w with u(s)*w = 1 and read off w in terms of the other generators
        m = n + 2
        rels = [r.reindex(m, list(range(n + 1))) for r in B2.relations]
        w = Poly.var(n + 1, m, B.base)
        rels.append(w * us.reindex(m, emb) - 1)
        check = groebner(list(B2.relations) + [us.reindex(n + 1, emb)], nvars=n + 1, domain=B.base)
        if not check.is_unit():
            raise IncompatibleMultiplicative("u(s) does not become a unit after inverting t")
        gb = groebner(rels, block_order([n + 1], m))
        r = gb.reduce(w)
        if n + 1 in r.support_vars():
            raise IncompatibleMultiplicative("could not express the inverse of u(s)")
        inverse = Poly({e[: n + 1]: c for e, c in r.terms.items()}, n + 1, B.base, normalized=True)
    return make_morphism(A2, B2, base_imgs + [inverse])


def _combine_bases(b1: Domain, b2: Domain) -> Domain:
    if b1 == b2:
        return b1
    if isinstance(b1, IntegerRing):
        return b2
    if isinstance(b2, IntegerRing):
        return b1
    raise BaseIncompatible(f"tensor product over {b1!r} and {b2!r} is the zero ring with no common base")


def _rename_pair(g1: Sequence[str], g2: Sequence[str]):
    if not set(g1) & set(g2):
        return tuple(g1), tuple(g2)
    n1 = [f"{g}1" for g in g1]
    n2 = [f"{g}2" for g in g2]
    taken = set()
    out1, out2 = [], []
    for g in n1:
        g = _fresh(taken, g)
        taken.add(g)
        out1.append(g)
    for g in n2:
        g = _fresh(taken, g)
        taken.add(g)
        out2.append(g)
    return tuple(out1), tuple(out2)


@dataclass(frozen=True)
class TensorProduct:
    algebra: FpAlgebra
    left: RingMorphism
    right: RingMorphism
    diagonal_kernel: tuple = ()


def tensor_over(u: RingMorphism, v: RingMorphism) -> TensorProduct:
    """``B (x)_A C`` for ``u: A -> B`` and ``v: A -> C``, with both coprojections.

    When ``u`` and ``v`` are the same morphism, ``diagonal_kernel`` holds the
    generators ``y (x) 1 - 1 (x) y`` of the kernel of the multiplication map.
    """
    if u.source != v.source:
        raise ContextMismatch("tensor product needs a common source")
    B, C = u.target, v.target
    base = _combine_bases(B.base, C.base)
    nb, nc = B.nvars, C.nvars
    n = nb + nc
    names_b, names_c = _rename_pair(B.gens, C.gens)
    pb, pc = list(range(nb)), list(range(nb, n))

    def lb(f: Poly) -> Poly:
        return Poly(f.terms, nb, base).reindex(n, pb) if nb else Poly.const(base.convert(f.constant_term()), n, base)

    def lc(f: Poly) -> Poly:
        return Poly(f.terms, nc, base).reindex(n, pc) if nc else Poly.const(base.convert(f.constant_term()), n, base)

    rels = [lb(r) for r in B.relations] + [lc(r) for r in C.relations]
    for ib, ic in zip(u.images, v.images):
        d = lb(ib) - lc(ic)
        if d:
            rels.append(d)
    D = FpAlgebra(base, names_b + names_c, tuple(rels))
    left = RingMorphism(B, D, tuple(D.reduce(Poly.var(i, n, base)) for i in pb))
    right = RingMorphism(C, D, tuple(D.reduce(Poly.var(i, n, base)) for i in pc))
    kernel = ()
    if u == v:
        kernel = tuple(Poly.var(i, n, base) - Poly.var(nb + i, n, base) for i in range(nb))
    return TensorProduct(D, left, right, kernel)


@dataclass(frozen=True)
class ProductAlgebra:
    algebra: FpAlgebra
    idempotent: Poly
    proj_left: RingMorphism
    proj_right: RingMorphism
    diagonal: RingMorphism | None


def _retarget(u: RingMorphism, B: FpAlgebra) -> RingMorphism:
    return RingMorphism(u.source, B, tuple(Poly(i.terms, B.nvars, B.base) for i in u.images))


def product_construction(B: FpAlgebra, C: FpAlgebra, u: RingMorphism | None = None,
                         v: RingMorphism | None = None) -> ProductAlgebra:
    """``B x C`` presented with an idempotent ``e`` (``e`` is ``(1, 0)``), its projections,
    and the diagonal ``a -> (u(a), v(a))`` (from the common base when no maps are given)."""
    if B.base != C.base:
        if isinstance(B.base, IntegerRing) and isinstance(C.base, PrimeField):
            C2 = lift_to_int(C)
            v = _retarget(v, C2) if v is not None else None
            C = C2
        elif isinstance(C.base, IntegerRing) and isinstance(B.base, PrimeField):
            B2 = lift_to_int(B)
            u = _retarget(u, B2) if u is not None else None
            B = B2
        else:
            raise ContextMismatch(f"no common base for {B.base!r} and {C.base!r}")
    base = B.base
    names_b, names_c = _rename_pair(B.gens, C.gens)
    e_name = _fresh(names_b + names_c, "e")
    nb, nc = B.nvars, C.nvars
    n = nb + nc + 1
    pb, pc = list(range(nb)), list(range(nb, nb + nc))
    e = Poly.var(n - 1, n, base)
    one = Poly.one(n, base)

    def lb(f):
        return f.reindex(n, pb) if nb else Poly.const(f.constant_term(), n, base)

    def lc(f):
        return f.reindex(n, pc) if nc else Poly.const(f.constant_term(), n, base)

    rels = [e * e - e]
    rels += [Poly.var(i, n, base) - e * Poly.var(i, n, base) for i in pb]
    rels += [e * Poly.var(i, n, base) for i in pc]
    rels += [e * lb(r) for r in B.relations]
    rels += [(one - e) * lc(r) for r in C.relations]
    P = FpAlgebra(base, names_b + names_c + (e_name,), tuple(r for r in rels if r))
    proj_b = RingMorphism(P, B, tuple([B.var(g) for g in B.gens] + [B.zero()] * nc + [B.one()]))
    proj_c = RingMorphism(P, C, tuple([C.zero()] * nb + [C.var(g) for g in C.gens] + [C.zero()]))
    diag = None
    if u is not None or v is not None:
        if u is None or v is None or u.source != v.source:
            raise ContextMismatch("the diagonal needs two maps with a common source")
        imgs = tuple(P.reduce(e * lb(a) + (one - e) * lc(b)) for a, b in zip(u.images, v.images))
        diag = RingMorphism(u.source, P, imgs)
    else:
        diag = make_morphism(base_ring(base), P, [], check=False)
    return ProductAlgebra(P, P.reduce(e), proj_b, proj_c, diag)


@dataclass(frozen=True)
class ModulePresentation:
    """A finitely presented module: generators and relations given as coefficient
    tuples (one algebra element per module generator)."""

    over: FpAlgebra
    generators: tuple
    relations: tuple = ()


def make_module(A: FpAlgebra, generators: Sequence[str], relations: Sequence = ()) -> ModulePresentation:
    """Module over A; each relation is a coefficient sequence or a string linear in the generators."""
    gens = tuple(generators)
    if len(set(gens)) != len(gens) or set(gens) & set(A.gens):
        raise DuplicateName("module generator names must be distinct and unused by the algebra")
    names = A.gens + gens
    rels = []
    for r in relations:
        if isinstance(r, str):
            p = parse_poly(r, names, A.base)
            coeffs = [Poly.zero(A.nvars, A.base) for _ in gens]
            for e, c in p.terms.items():
                mdeg = e[A.nvars:]
                if sum(mdeg) != 1:
                    raise MalformedRelation(f"module relation {r!r} is not linear in the generators")
                j = mdeg.index(1)
                coeffs[j] = coeffs[j] + Poly({e[: A.nvars]: c}, A.nvars, A.base)
            rels.append(tuple(coeffs))
        else:
            if len(r) != len(gens):
                raise MalformedRelation("relation length differs from the number of generators")
            rels.append(tuple(A.poly(c) for c in r))
    return ModulePresentation(A, gens, tuple(rels))


def idealization(M: ModulePresentation) -> RingMorphism:
    """The canonical map ``A -> A(+)M`` into the Nagata idealization."""
    A = M.over
    if not M.generators:
        return identity(A)
    na, nm = A.nvars, len(M.generators)
    n = na + nm
    pa = list(range(na))
    ms = [Poly.var(na + j, n, A.base) for j in range(nm)]
    rels = [r.reindex(n, pa) for r in A.relations]
    for rel in M.relations:
        combo = Poly.zero(n, A.base)
        for c, m in zip(rel, ms):
            combo = combo + (c.reindex(n, pa) if na else Poly.const(c.constant_term(), n, A.base)) * m
        if combo:
            rels.append(combo)
    for i in range(nm):
        for j in range(i, nm):
            rels.append(ms[i] * ms[j])
    D = FpAlgebra(A.base, A.gens + M.generators, tuple(rels))
    return RingMorphism(A, D, tuple(Poly.var(i, n, A.base) for i in range(na)))


def polynomial_extension(u: RingMorphism, name: str = "X") -> RingMorphism:
    """``A[X] -> B[X]`` extending ``u`` by ``X -> X``."""
    A, B = u.source, u.target
    name = _fresh(set(A.gens) | set(B.gens), name)

    def grow(R: FpAlgebra) -> FpAlgebra:
        n = R.nvars
        return FpAlgebra(R.base, R.gens + (name,), tuple(r.reindex(n + 1, list(range(n))) for r in R.relations))

    A2, B2 = grow(A), grow(B)
    nb = B.nvars
    imgs = [i.reindex(nb + 1, list(range(nb))) if nb else Poly.const(i.constant_term(), 1, B.base)
            for i in u.images]
    imgs.append(Poly.var(nb, nb + 1, B.base))
    return RingMorphism(A2, B2, tuple(imgs))


# ---------------------------------------------------------------------------
# contraction and module-theoretic helpers

def saturate_integers(gens: Sequence[Poly], nvars: int) -> list[Poly]:
    """Over ZZ: generators of ``{f : n*f in I for some nonzero integer n}``.

    Only primes dividing a leading coefficient of the strong basis can be
    torsion primes of ``ZZ[x]/I``, so one saturation by their product suffices.
    """
    gb = groebner(list(gens), nvars=nvars, domain=ZZ)
    if gb.integer_generator():
        return [Poly.one(nvars, ZZ)]
    bad = 1
    for _, lc in gb.leading_terms():
        if lc != 1:
            bad *= lc
    if bad == 1:
        return list(gb.basis)
    return list(groebner(saturate(list(gb.basis), Poly.const(bad, nvars, ZZ))).basis)


def _common_context(u: RingMorphism):
    """Domain for graph-ideal computations and the target presentation lifted into it."""
    A, B = u.source, u.target
    if A.base == B.base:
        return A.base, B
    if isinstance(A.base, IntegerRing) and isinstance(B.base, PrimeField):
        return ZZ, lift_to_int(B)
    if isinstance(A.base, IntegerRing) and isinstance(B.base, RationalField):
        return QQ, B
    raise BaseIncompatible("incompatible bases")


def graph_ideal(u: RingMorphism, extra_target: Sequence[Poly] = ()):
    """Generators in ``dom[y, x]`` (target variables first) of the graph of ``u``.

    Returns ``(dom, gens, ny, nx)``.
    """
    A = u.source
    dom, B = _common_context(u)
    ny, nx = B.nvars, A.nvars
    n = ny + nx
    py = list(range(ny))
    px = list(range(ny, n))

    def ty(f):
        f = Poly(f.terms, ny, dom)
        return f.reindex(n, py) if ny else Poly.const(f.constant_term(), n, dom)

    def tx(f):
        f = Poly(f.terms, nx, dom)
        return f.reindex(n, px) if nx else Poly.const(f.constant_term(), n, dom)

    gens = [ty(r) for r in B.relations] + [ty(g) for g in extra_target]
    gens += [Poly.var(ny + i, n, dom) - ty(img) for i, img in enumerate(u.images)]
    gens += [tx(r) for r in A.relations]
    return dom, [g for g in gens if g], ny, nx


def contract_ideal(u: RingMorphism, J) -> IdealSpec:
    """Generators of ``u^{-1}(J)`` via the graph ideal and elimination of target variables."""
    A = u.source
    jg = _gens_of(u.target, J)
    dom, gens, ny, nx = graph_ideal(u, jg)
    n = ny + nx
    if nx == 0:
        gb = groebner(gens, block_order(range(ny), n) if ny else GREVLEX, nvars=n, domain=dom)
        kept = [g for g in gb.basis if not g.support_vars()]
    else:
        kept = eliminate(gens, range(ny, n)) if gens else []
    out = [Poly({e[ny:]: c for e, c in g.terms.items()}, nx, dom, normalized=True) for g in kept]
    if dom != A.base:
        # QQ-algebra target over a ZZ source: contract the QQ ideal back to ZZ[x]
        cleared = [g.clear_denominators() for g in out] + list(A.relations)
        out = saturate_integers(cleared, nx) if cleared else []
    out = [A.poly(g) for g in out if not A.reduce(A.poly(g)).is_zero()]
    return IdealSpec(A, tuple(out))


def monic_finite_over_base(B: FpAlgebra):
    """Standard monomials of B as a module over its base when that module is finitely
    generated (every generator has a pure-power leading term with unit coefficient), else None.

    Returns a list of ``(monomial, modulus)`` with modulus 0 for a free coordinate and
    modulus 1 entries omitted.
    """
    gb = B.gb
    leads = gb.leading_terms()
    unit = [lm for lm, lc in leads if B.base.is_field or lc == 1]
    n = B.nvars
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in unit):
            return None
    out = []
    seen = set()
    stack = [(0,) * n]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        if any(mono_divides(lm, m) for lm in unit):
            continue
        mods = [lc for lm, lc in leads if mono_divides(lm, m)]
        r = min(mods) if mods else 0
        if B.base.is_field:
            r = 0
        out.append((m, r))
        for i in range(n):
            stack.append(tuple(x + (1 if k == i else 0) for k, x in enumerate(m)))
    out.sort(key=lambda t: gb.order.key(t[0]))
    return out


def is_finite_morphism(u: RingMorphism) -> bool | None:
    """Whether the target is module-finite over the source (None if undecided)."""
    A, B = u.source, u.target
    if B.is_zero:
        return True
    if A.base != B.base and isinstance(B.base, RationalField):
        return False
    dom, gens, ny, nx = graph_ideal(u)
    n = ny + nx
    gb = groebner(gens, block_order(range(ny), n), nvars=n, domain=dom)
    if gb.is_unit():
        return True
    leads = [lm for lm, lc in gb.leading_terms() if dom.is_field or lc == 1]
    for i in range(ny):
        if not any(lm[i] > 0 and all(lm[k] == 0 for k in range(ny) if k != i) for lm in leads):
            return False
    return True
