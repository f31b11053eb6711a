"""Finite unital rings and bimodules given by structure constants on generators.

Products of arbitrary elements are the bilinear extension of the generator
tables.  Because both sides of every ring/bimodule axiom are multilinear,
checking an axiom on generator tuples proves it for all elements; the
``exhaustive`` flag of the checkers re-verifies on element tuples anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Callable, Literal, Sequence

from .config import DEFAULT_BOUND
from .errors import BoundExceeded, ShapeMismatch
from .report import Report
from .zmod import (
    Coords, FinAbGroup, GroupHom, cokernel, direct_sum, hom_enumerate, image, in_image, is_exact, kernel,
    preimage, solve, split, subgroup,
)

Table = tuple[tuple[Coords, ...], ...]


def _table(rows, n_rows: int, n_cols: int, G: FinAbGroup, what: str) -> Table:
    rows = [list(r) for r in rows]
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise ShapeMismatch(f"{what} table must be {n_rows}x{n_cols}")
    return tuple(tuple(G.reduce(x) for x in r) for r in rows)


def _bilinear(G: FinAbGroup, table: Table, x: Sequence[int], y: Sequence[int]) -> Coords:
    acc = [0] * G.rank
    for j, a in enumerate(x):
        if a:
            row = table[j]
            for l, b in enumerate(y):
                if b:
                    c = a * b
                    for i, t in enumerate(row[l]):
                        acc[i] += c * t
    return tuple(a % n for a, n in zip(acc, G.moduli))


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class FinRing:
    """Unital associative ring on a finite abelian group.

    ``mult[j][l]`` is the product of generators ``e_j e_l``.
    """

    additive: FinAbGroup
    unit: Coords
    mult: Table

    def __post_init__(self):
        G = self.additive
        object.__setattr__(self, "unit", G.reduce(self.unit))
        object.__setattr__(self, "mult", _table(self.mult, G.rank, G.rank, G, "multiplication"))

    @property
    def order(self) -> int:
        return self.additive.order

    @property
    def zero(self) -> Coords:
        return self.additive.zero

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Coords:
        return _bilinear(self.additive, self.mult, x, y)

    def add(self, x, y) -> Coords:
        return self.additive.add(x, y)

    def sub(self, x, y) -> Coords:
        return self.additive.sub(x, y)

    def neg(self, x) -> Coords:
        return self.additive.neg(x)

    def elements(self):
        return self.additive.elements()

    @cached_property
    def is_commutative(self) -> bool:
        r = range(self.additive.rank)
        return all(self.mult[j][l] == self.mult[l][j] for j in r for l in r)

    def __str__(self) -> str:
        return f"Ring[{self.additive}]"


def ring_from_function(additive: FinAbGroup, mul: Callable[[Coords, Coords], Sequence[int]],
                       unit: Sequence[int]) -> FinRing:
    r = range(additive.rank)
    return FinRing(additive, tuple(unit),
                   tuple(tuple(mul(additive.basis(j), additive.basis(l)) for l in r) for j in r))


def cyclic_ring(n: int) -> FinRing:
    """``Z/n``; ``n = 1`` gives the zero ring."""
    if n == 1:
        return zero_ring()
    return FinRing(FinAbGroup((n,)), (1,), (((1,),),))


def zero_ring() -> FinRing:
    return FinRing(FinAbGroup(()), (), ())


def product_ring(*rings: FinRing) -> FinRing:
    G = direct_sum(*(R.additive for R in rings))
    groups = [R.additive for R in rings]

    def mul(x, y):
        return tuple(a for R, xi, yi in zip(rings, split(groups, x), split(groups, y)) for a in R.mul(xi, yi))

    return ring_from_function(G, mul, tuple(a for R in rings for a in R.unit))


def dual_numbers(R: FinRing) -> FinRing:
    """``R[t]/(t^2)`` on ``R + R``."""
    G = direct_sum(R.additive, R.additive)
    k = R.additive.rank

    def mul(x, y):
        a, b, c, d = x[:k], x[k:], y[:k], y[k:]
        return R.mul(a, c) + R.add(R.mul(a, d), R.mul(b, c))

    return ring_from_function(G, mul, R.unit + R.zero)


def upper_triangular(n: int = 2) -> FinRing:
    """Upper triangular 2x2 matrices over ``Z/n`` on coordinates ``(a, b, d)``."""
    G = FinAbGroup((n, n, n))

    def mul(x, y):
        a, b, d = x
        a2, b2, d2 = y
        return (a * a2, a * b2 + b * d2, d * d2)

    return ring_from_function(G, mul, (1, 0, 1))


def check_ring(R: FinRing, exhaustive: bool = False) -> Report:
    """Well-definedness of the table, associativity and unit laws on generators."""
    rep = Report("ring")
    G = R.additive
    n = G.moduli
    r = range(G.rank)
    for j in r:
        for l in r:
            t = R.mult[j][l]
            if G.scale(n[j], t) != G.zero or G.scale(n[l], t) != G.zero:
                rep.add("well_defined", (j, l), "mult")
    if rep.violations:
        return rep
    basis = [G.basis(j) for j in r]
    for a, b, c in product(basis, repeat=3):
        if R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)):
            rep.add("associativity", (a, b, c), "generators")
    for e in basis:
        if R.mul(R.unit, e) != e:
            rep.add("left_unit", (e,), "generators")
        if R.mul(e, R.unit) != e:
            rep.add("right_unit", (e,), "generators")
    if exhaustive:
        els = list(G.elements())
        for a, b, c in product(els, repeat=3):
            if R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)):
                rep.add("associativity", (a, b, c), "elements")
        for x, y, z in product(els, repeat=3):
            if R.mul(G.add(x, y), z) != G.add(R.mul(x, z), R.mul(y, z)):
                rep.add("distributivity", (x, y, z), "elements")
    return rep


# ---------------------------------------------------------------------------
# bilinear maps (non-unital products)


@dataclass(frozen=True)
class BilinearMap:
    """``left x right -> target``, bilinear, given on generator pairs."""

    left: FinAbGroup
    right: FinAbGroup
    target: FinAbGroup
    table: Table

    def __post_init__(self):
        object.__setattr__(self, "table", _table(self.table, self.left.rank, self.right.rank, self.target, "bilinear"))

    @classmethod
    def from_function(cls, left, right, target, fn) -> "BilinearMap":
        return cls(left, right, target, tuple(
            tuple(fn(left.basis(j), right.basis(l)) for l in range(right.rank)) for j in range(left.rank)))

    def __call__(self, x, y) -> Coords:
        return _bilinear(self.target, self.table, x, y)

    def first_difference(self, other: "BilinearMap"):
        """A generator pair where the two maps differ, or None."""
        for j in range(self.left.rank):
            for l in range(self.right.rank):
                if self.table[j][l] != other.table[j][l]:
                    return (self.left.basis(j), self.right.basis(l))
        return None


# ---------------------------------------------------------------------------
# bimodules


@dataclass(frozen=True)
class Bimodule:
    """``left[j][l] = r_j m_l`` and ``right[l][j] = m_l r_j`` on generators."""

    ring: FinRing
    additive: FinAbGroup
    left: Table
    right: Table

    def __post_init__(self):
        R, M = self.ring.additive, self.additive
        object.__setattr__(self, "left", _table(self.left, R.rank, M.rank, M, "left action"))
        object.__setattr__(self, "right", _table(self.right, M.rank, R.rank, M, "right action"))

    def lmul(self, r, m) -> Coords:
        return _bilinear(self.additive, self.left, r, m)

    def rmul(self, m, r) -> Coords:
        return _bilinear(self.additive, self.right, m, r)

    @property
    def order(self) -> int:
        return self.additive.order


def bimodule_from_functions(ring: FinRing, additive: FinAbGroup, lmul, rmul) -> Bimodule:
    R, M = ring.additive, additive
    left = tuple(tuple(lmul(R.basis(j), M.basis(l)) for l in range(M.rank)) for j in range(R.rank))
    right = tuple(tuple(rmul(M.basis(l), R.basis(j)) for j in range(R.rank)) for l in range(M.rank))
    return Bimodule(ring, additive, left, right)


def regular_bimodule(R: FinRing) -> Bimodule:
    return Bimodule(R, R.additive, R.mult, R.mult)


def zero_bimodule(R: FinRing) -> Bimodule:
    return Bimodule(R, FinAbGroup(()), tuple(() for _ in range(R.additive.rank)), ())


def check_bimodule(M: Bimodule, exhaustive: bool = False) -> Report:
    rep = Report("bimodule")
    R, A = M.ring.additive, M.additive
    for j, n in enumerate(R.moduli):
        for l, k in enumerate(A.moduli):
            if A.scale(n, M.left[j][l]) != A.zero or A.scale(k, M.left[j][l]) != A.zero:
                rep.add("well_defined", (j, l), "left")
            if A.scale(n, M.right[l][j]) != A.zero or A.scale(k, M.right[l][j]) != A.zero:
                rep.add("well_defined", (l, j), "right")
    if rep.violations:
        return rep
    ring = M.ring
    rs = [R.basis(j) for j in range(R.rank)]
    ms = [A.basis(l) for l in range(A.rank)]
    if exhaustive:
        rs, ms = list(R.elements()), list(A.elements())
    where = "elements" if exhaustive else "generators"
    for r, s, m in product(rs, rs, ms):
        if M.lmul(ring.mul(r, s), m) != M.lmul(r, M.lmul(s, m)):
            rep.add("left_associativity", (r, s, m), where)
        if M.rmul(m, ring.mul(r, s)) != M.rmul(M.rmul(m, r), s):
            rep.add("right_associativity", (m, r, s), where)
        if M.rmul(M.lmul(r, m), s) != M.lmul(r, M.rmul(m, s)):
            rep.add("middle_associativity", (r, m, s), where)
    for m in ms:
        if M.lmul(ring.unit, m) != m:
            rep.add("left_unit", (m,), where)
        if M.rmul(m, ring.unit) != m:
            rep.add("right_unit", (m,), where)
    return rep


def check_bimodule_map(f: GroupHom, M: Bimodule, N: Bimodule) -> Report:
    """``f(r m) = r f(m)`` and ``f(m r) = f(m) r`` on generators."""
    rep = Report("bimodule_map")
    R = M.ring.additive
    for j in range(R.rank):
        r = R.basis(j)
        for l in range(M.additive.rank):
            m = M.additive.basis(l)
            if f(M.lmul(r, m)) != N.lmul(r, f(m)):
                rep.add("left_linear", (r, m))
            if f(M.rmul(m, r)) != N.rmul(f(m), r):
                rep.add("right_linear", (m, r))
    return rep


# ---------------------------------------------------------------------------
# ring homomorphisms


@dataclass(frozen=True)
class RingHom:
    source: FinRing
    target: FinRing
    hom: GroupHom

    def __post_init__(self):
        if self.hom.source != self.source.additive or self.hom.target != self.target.additive:
            raise ShapeMismatch("ring homomorphism matrix does not match the rings")

    @classmethod
    def from_function(cls, source: FinRing, target: FinRing, fn) -> "RingHom":
        return cls(source, target, GroupHom.from_function(source.additive, target.additive, fn))

    @classmethod
    def identity(cls, R: FinRing) -> "RingHom":
        return cls(R, R, GroupHom.identity(R.additive))

    def __call__(self, x) -> Coords:
        return self.hom(x)

    def __matmul__(self, other: "RingHom") -> "RingHom":
        return RingHom(other.source, self.target, self.hom @ other.hom)

    def is_bijective(self) -> bool:
        return self.hom.is_bijective()

    def inverse(self) -> "RingHom":
        return RingHom(self.target, self.source, self.hom.inverse())


def check_ring_hom(f: RingHom) -> Report:
    rep = Report("ring_hom")
    for i, j in f.hom.violations():
        rep.add("well_defined", (i, j), "matrix")
    if rep.violations:
        return rep
    S = f.source.additive
    basis = [S.basis(j) for j in range(S.rank)]
    for a, b in product(basis, repeat=2):
        if f(f.source.mul(a, b)) != f.target.mul(f(a), f(b)):
            rep.add("multiplicative", (a, b), "generators")
    if f(f.source.unit) != f.target.unit:
        rep.add("unital", (f.source.unit,))
    return rep


def is_ring_hom(f: RingHom) -> bool:
    """Same verdict as ``check_ring_hom(f).ok``, stopping at the first failure."""
    if f.hom.violations() or f(f.source.unit) != f.target.unit:
        return False
    S = f.source.additive
    basis = [S.basis(j) for j in range(S.rank)]
    return all(f(f.source.mul(a, b)) == f.target.mul(f(a), f(b)) for a, b in product(basis, repeat=2))


@lru_cache(maxsize=None)
def _ring_homs(R: FinRing, S: FinRing, bound: int) -> tuple[RingHom, ...]:
    return tuple(f for f in (RingHom(R, S, h) for h in hom_enumerate(R.additive, S.additive, bound))
                 if is_ring_hom(f))


def ring_homs(R: FinRing, S: FinRing, bound: int = DEFAULT_BOUND) -> list[RingHom]:
    return list(_ring_homs(R, S, bound))


def ring_isomorphisms(R: FinRing, S: FinRing, bound: int = DEFAULT_BOUND) -> list[RingHom]:
    if R.order != S.order:
        return []
    return [f for f in ring_homs(R, S, bound) if f.is_bijective()]


def restrict_bimodule(M: Bimodule, alpha: RingHom) -> Bimodule:
    """``M`` as a bimodule over ``alpha.source`` via ``s m = alpha(s) m``."""
    if alpha.target != M.ring:
        raise ShapeMismatch("restriction along a map into a different ring")
    rep = check_ring_hom(alpha)
    if not rep.ok:
        raise ValueError(f"invalid ring homomorphism: {rep.violations[0]}")
    out = bimodule_from_functions(alpha.source, M.additive,
                                  lambda s, m: M.lmul(alpha(s), m),
                                  lambda m, s: M.rmul(m, alpha(s)))
    rep = check_bimodule(out)
    if not rep.ok:
        raise ValueError(f"restricted bimodule invalid: {rep.violations[0]}")
    return out


# ---------------------------------------------------------------------------
# ideals, subrings, quotients


def is_ideal(E: FinRing, incl: GroupHom) -> bool:
    G = E.additive
    basis = [G.basis(j) for j in range(G.rank)]
    K = incl.source
    for l in range(K.rank):
        x = incl(K.basis(l))
        for e in basis:
            if not in_image(incl, E.mul(e, x)) or not in_image(incl, E.mul(x, e)):
                return False
    return True


def ideal_generated(E: FinRing, gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, GroupHom]:
    """Smallest two-sided ideal containing ``gens``, as ``(I, incl)``."""
    G = E.additive
    basis = [G.basis(j) for j in range(G.rank)]
    current = [G.reduce(g) for g in gens]
    I, incl = subgroup(G, current)
    while True:
        cols = [incl(I.basis(l)) for l in range(I.rank)]
        grown = cols + [E.mul(e, x) for x in cols for e in basis] + [E.mul(x, e) for x in cols for e in basis]
        J, jincl = subgroup(G, grown)
        if J.order == I.order:
            return I, incl
        I, incl = J, jincl


def sub_bimodule(M: Bimodule, incl: GroupHom) -> Bimodule:
    """Restrict the actions of ``M`` to the subgroup ``incl``; must be closed."""
    return bimodule_from_functions(M.ring, incl.source,
                                   lambda r, m: preimage(incl, M.lmul(r, incl(m))),
                                   lambda m, r: preimage(incl, M.rmul(incl(m), r)))


def ideal_bimodule(E: FinRing, incl: GroupHom) -> Bimodule:
    """A two-sided ideal of ``E`` as an ``E``-bimodule."""
    return sub_bimodule(regular_bimodule(E), incl)


def quotient_bimodule(M: Bimodule, incl: GroupHom) -> tuple[Bimodule, GroupHom]:
    """``M / im(incl)`` for a sub-bimodule, with the projection."""
    C, proj = cokernel(incl)

    def lift(c):
        return preimage(proj, c)

    Q = bimodule_from_functions(M.ring, C,
                                lambda r, c: proj(M.lmul(r, lift(c))),
                                lambda c, r: proj(M.rmul(lift(c), r)))
    return Q, proj


def quotient_ring(E: FinRing, incl: GroupHom) -> tuple[FinRing, RingHom]:
    """``E / I`` for a two-sided ideal ``I = im(incl)``, with the projection."""
    C, proj = cokernel(incl)
    Q = ring_from_function(C, lambda a, b: proj(E.mul(preimage(proj, a), preimage(proj, b))), proj(E.unit))
    return Q, RingHom(E, Q, proj)


def subring(E: FinRing, incl: GroupHom) -> tuple[FinRing, RingHom]:
    """The subring on ``im(incl)``; ``incl`` must be injective and closed under products."""
    K = incl.source
    S = ring_from_function(K, lambda a, b: preimage(incl, E.mul(incl(a), incl(b))), preimage(incl, E.unit))
    return S, RingHom(S, E, incl)


# ---------------------------------------------------------------------------
# algebra extensions


@dataclass(frozen=True)
class AlgExtension:
    """``0 -> M -> E -> S -> 0`` with ``E -> S`` a ring map."""

    M: FinAbGroup
    E: FinRing
    S: FinRing
    incl: GroupHom
    proj: RingHom

    def bimodule(self) -> Bimodule:
        """``M`` with the ``E``-actions induced through ``incl``."""
        return ideal_bimodule(self.E, self.incl)


def check_extension(ext: AlgExtension) -> Report:
    rep = Report("extension")
    rep.extend(check_ring(ext.E), "E")
    rep.extend(check_ring(ext.S), "S")
    rep.extend(check_ring_hom(ext.proj), "proj")
    if not ext.incl.is_well_defined():
        rep.add("well_defined", (), "incl")
    if not rep.ok:
        return rep
    if not ext.incl.is_injective():
        rep.add("incl_injective", ())
    if not ext.proj.hom.is_surjective():
        rep.add("proj_surjective", ())
    if not is_exact(ext.incl, ext.proj.hom):
        rep.add("exact_middle", ())
    if not is_ideal(ext.E, ext.incl):
        rep.add("two_sided_ideal", ())
    rep.derived["orders"] = {"M": ext.M.order, "E": ext.E.order, "S": ext.S.order}
    return rep


def extension_from_ideal(E: FinRing, incl: GroupHom) -> AlgExtension:
    S, proj = quotient_ring(E, incl)
    return AlgExtension(incl.source, E, S, incl, proj)


def trivial_extension(S: FinRing, M: Bimodule) -> AlgExtension:
    """``S + M`` with ``(s, m)(s', m') = (ss', sm' + ms')``."""
    k = S.additive.rank
    G = direct_sum(S.additive, M.additive)

    def mul(x, y):
        s, m, s2, m2 = x[:k], x[k:], y[:k], y[k:]
        return S.mul(s, s2) + M.additive.add(M.lmul(s, m2), M.rmul(m, s2))

    E = ring_from_function(G, mul, S.unit + M.additive.zero)
    incl = GroupHom.from_function(M.additive, G, lambda m: S.zero + tuple(m))
    proj = RingHom.from_function(E, S, lambda x: x[:k])
    return AlgExtension(M.additive, E, S, incl, proj)


def find_splittings(ext: AlgExtension, mode: Literal["additive", "ring"] = "additive",
                    bound: int = DEFAULT_BOUND, limit: int | None = None) -> list:
    """All sections of ``ext.proj``: group homs, or unital ring homs in ring mode.

    Candidates are ordered lexicographically by generator images, so a
    section with images of the form ``(e_j, 0)`` comes first when it exists.
    ``limit`` stops the search after that many sections.
    """
    S, E = ext.S.additive, ext.E.additive
    if S.order * E.order > bound:
        raise BoundExceeded(f"|S|*|E| = {S.order * E.order} > {bound}")
    choices = []
    for j, n in enumerate(S.moduli):
        xs = [x for x in solve(ext.proj.hom, S.basis(j), bound) if E.scale(n, x) == E.zero]
        choices.append(xs)
    out = []
    for cols in product(*choices):
        sigma = GroupHom.from_columns(S, E, cols)
        if mode == "additive":
            out.append(sigma)
        else:
            f = RingHom(ext.S, ext.E, sigma)
            if is_ring_hom(f):
                out.append(f)
        if limit is not None and len(out) >= limit:
            break
    return out


def describe_ring(R: FinRing) -> dict:
    return {
        "order": R.order,
        "moduli": list(R.additive.moduli),
        "invariants": list(R.additive.invariants()),
        "unit": list(R.unit),
        "commutative": R.is_commutative,
    }


__all__ = [
    "AlgExtension", "BilinearMap", "Bimodule", "FinRing", "RingHom",
    "bimodule_from_functions", "check_bimodule", "check_bimodule_map", "check_extension",
    "check_ring", "check_ring_hom", "cyclic_ring", "describe_ring", "dual_numbers",
    "extension_from_ideal", "find_splittings", "ideal_bimodule", "ideal_generated", "image",
    "is_ideal", "is_ring_hom", "kernel", "product_ring", "quotient_bimodule", "quotient_ring",
    "regular_bimodule", "restrict_bimodule", "ring_from_function", "ring_homs",
    "ring_isomorphisms", "sub_bimodule", "subring", "trivial_extension", "upper_triangular",
    "zero_bimodule", "zero_ring",
]
