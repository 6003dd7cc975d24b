"""Finite-dimensional quotient algebras over a field: minimal polynomials and
the field / not-a-field decision with verifiable witnesses."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..errors import InfiniteDimension, ResourceLimit
from . import upoly
from .domains import Domain, PrimeField
from .groebner import INFINITE, GroebnerBasis, groebner, quotient_basis
from .poly import Poly


class QuotientAlgebra:
    """``F[x]/I`` for a zero-dimensional ideal, with coordinates in the standard monomial basis."""

    def __init__(self, gb: GroebnerBasis):
        if not gb.domain.is_field:
            raise ValueError("quotient algebras need field coefficients")
        basis = quotient_basis(gb)
        if basis is INFINITE:
            raise InfiniteDimension("the quotient is not finite dimensional")
        self.gb = gb
        self.field = gb.domain
        self.nvars = gb.nvars
        self.basis = basis
        self.index = {m: i for i, m in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def nf(self, f: Poly) -> Poly:
        return self.gb.reduce(f)

    def coords(self, f: Poly) -> list:
        r = self.nf(f)
        v = [0] * self.dim
        for e, c in r.terms.items():
            v[self.index[e]] = c
        return v

    def from_coords(self, v) -> Poly:
        return Poly({self.basis[i]: c for i, c in enumerate(v) if c}, self.nvars, self.field, normalized=True)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.nf(a * b)

    def power(self, a: Poly, k: int) -> Poly:
        result = self.nf(Poly.one(self.nvars, self.field))
        base = self.nf(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def evaluate(self, coeffs, a: Poly) -> Poly:
        """Value of the univariate polynomial ``coeffs`` (low degree first) at ``a``."""
        acc = Poly.zero(self.nvars, self.field)
        for c in reversed(coeffs):
            acc = self.nf(acc * a + c)
        return acc

    def min_poly(self, a: Poly) -> list:
        """Monic minimal polynomial of ``a`` as a coefficient list, low degree first."""
        F = self.field
        rows: list = []  # (pivot, vector, combo)
        power = self.nf(Poly.one(self.nvars, F))
        for k in range(self.dim + 1):
            v = self.coords(power)
            combo = [0] * k + [F.convert(1)]
            for piv, rv, rc in rows:
                c = v[piv]
                if c:
                    v = [F.reduce(x - c * y) for x, y in zip(v, rv)]
                    combo = [F.reduce((combo[i] if i < len(combo) else 0) - c * (rc[i] if i < len(rc) else 0))
                             for i in range(max(len(combo), len(rc)))]
            nz = next((i for i, x in enumerate(v) if x), None)
            if nz is None:
                return upoly.trim(combo)
            inv = F.inv(v[nz])
            rows.append((nz, [F.reduce(x * inv) for x in v], [F.reduce(x * inv) for x in combo]))
            power = self.mul(power, a)
        raise AssertionError("no linear dependence found within the dimension bound")

    def inverse(self, a: Poly) -> Poly | None:
        """Inverse of ``a`` via its minimal polynomial, or ``None`` when ``a`` is a zero divisor."""
        m = self.min_poly(a)
        F = self.field
        if not m or not m[0]:
            return None
        c0 = m[0]
        q = [F.reduce(-c * F.inv(c0)) for c in m[1:]]
        return self.evaluate(q, a)

    def is_zero(self, a: Poly) -> bool:
        return self.nf(a).is_zero()


def _as_gb(gens) -> GroebnerBasis:
    if isinstance(gens, GroebnerBasis):
        return gens
    return groebner(list(gens))


def min_poly(g: Poly, gens) -> Poly:
    """Monic minimal polynomial (univariate :class:`Poly`) of ``g`` modulo a zero-dimensional ideal."""
    alg = gens if isinstance(gens, QuotientAlgebra) else QuotientAlgebra(_as_gb(gens))
    return upoly.to_poly(alg.field, alg.min_poly(g))


@dataclass(frozen=True)
class Witness:
    """Certificate that a quotient is not a field.

    ``kind`` is ``nilpotent`` (``element**exponent == 0``), ``idempotent``
    (``element**2 == element``, with ``zero_divisors`` a pair of nonzero
    elements whose product vanishes) or ``transcendental`` (a generator
    satisfying no univariate relation, so the quotient has positive dimension).
    """

    kind: str
    element: Poly
    exponent: int | None = None
    zero_divisors: tuple | None = None


@dataclass(frozen=True)
class Zero:
    name = "Zero"

    def __str__(self):
        return "Zero"


@dataclass(frozen=True)
class Field:
    dim: int
    primitive: Poly | None = None
    name = "Field"

    def __str__(self):
        return f"Field({self.dim})"


@dataclass(frozen=True)
class NotField:
    witness: Witness
    name = "NotField"

    def __str__(self):
        return f"NotField({self.witness.kind})"


def _split(alg: QuotientAlgebra, t: Poly, facs) -> NotField:
    F = alg.field
    if any(m > 1 for _, m in facs):
        rad = [F.convert(1)]
        for g, _ in facs:
            rad = upoly.mul(F, rad, g)
        k = max(m for _, m in facs)
        return NotField(Witness("nilpotent", alg.evaluate(rad, t), exponent=k))
    f = facs[0][0]
    h = [F.convert(1)]
    for g, _ in facs[1:]:
        h = upoly.mul(F, h, g)
    _, s, r = upoly.xgcd(F, f, h)
    e = alg.evaluate(upoly.mul(F, r, h), t)
    pair = (alg.evaluate(f, t), alg.evaluate(h, t))
    return NotField(Witness("idempotent", e, zero_divisors=pair))


def _nullspace(F: Domain, rows: list[list]) -> list[list]:
    """Basis of the right kernel of a matrix given as a list of rows."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.reduce(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.reduce(x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = F.convert(1)
        for i, pc in enumerate(pivots):
            v[pc] = F.reduce(-m[i][fc])
        out.append(v)
    return out


def _frobenius_split(alg: QuotientAlgebra):
    """Deterministic decision for a reduced algebra over Fp: the Frobenius-fixed
    subalgebra has dimension equal to the number of field factors."""
    F = alg.field
    p = F.p
    cols = [alg.coords(alg.power(alg.from_coords([1 if j == i else 0 for j in range(alg.dim)]), p))
            for i in range(alg.dim)]
    mat = [[F.reduce(cols[j][i] - (1 if i == j else 0)) for j in range(alg.dim)] for i in range(alg.dim)]
    kernel = _nullspace(F, mat)
    if len(kernel) <= 1:
        return Field(alg.dim)
    one = alg.coords(Poly.one(alg.nvars, F))
    for v in kernel:
        t = alg.from_coords(v)
        m = alg.min_poly(t)
        if upoly.deg(m) >= 2:
            return _split(alg, t, upoly.factor(F, m))
    raise AssertionError("Frobenius kernel without a separating element")


def classify_artinian_quotient(gens, rng: random.Random | None = None, budget: int = 20):
    """Decide whether ``F[x]/I`` is the zero ring, a field, or neither.

    ``gens`` is a generator list over a field (or a basis). Returns
    :class:`Zero`, :class:`Field` or :class:`NotField` with a witness.
    """
    gb = _as_gb(gens)
    if gb.is_unit():
        return Zero()
    if quotient_basis(gb) is INFINITE:
        lead = [lm for lm, _ in gb.leading_terms()]
        for i in range(gb.nvars):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lead):
                return NotField(Witness("transcendental", Poly.var(i, gb.nvars, gb.domain)))
    alg = QuotientAlgebra(gb)
    F = alg.field
    D = alg.dim
    if D == 1:
        return Field(1, alg.nf(Poly.one(gb.nvars, F)))
    variables = [Poly.var(i, gb.nvars, F) for i in range(gb.nvars)]
    for x in variables:
        facs = upoly.factor(F, alg.min_poly(x))
        if any(m > 1 for _, m in facs):
            return _split(alg, x, facs)
    for x in variables:
        facs = upoly.factor(F, alg.min_poly(x))
        if len(facs) > 1:
            return _split(alg, x, facs)
    rng = rng or random.Random(0)
    candidates = list(variables)
    for _ in range(budget):
        coeffs = [rng.randint(-9, 9) for _ in variables]
        candidates.append(sum((x.scale(c) for x, c in zip(variables, coeffs)), Poly.zero(gb.nvars, F)))
    for t in candidates:
        m = alg.min_poly(t)
        facs = upoly.factor(F, m)
        if len(facs) > 1 or facs[0][1] > 1:
            return _split(alg, t, facs)
        if upoly.deg(m) == D:
            return Field(D, alg.nf(t))
    if isinstance(F, PrimeField):
        return _frobenius_split(alg)
    raise ResourceLimit("no primitive element found within the retry budget")
