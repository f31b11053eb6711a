"""Exhaustive catalogues of small objects, each reduced up to isomorphism.

Rings: the unit of a finite unital ring has additive order equal to the
exponent, and a cyclic subgroup of maximal order is a direct summand, so
every ring has a presentation whose first generator is the unit and whose
first modulus is the exponent.  Only the remaining products are free.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .algebra import (
    AlgExtension, Bimodule, FinRing, RingHom, check_bimodule, check_ring, extension_from_ideal,
    ideal_generated, product_ring, regular_bimodule, ring_homs, trivial_extension,
)
from .config import DEFAULT_BOUND, CensusConfig, parallel_map
from .crossed import CrossedBimodule, XbmMorphism, check_crossed, morphisms
from .zmod import FinAbGroup, GroupHom, hom_enumerate


def _partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[FinAbGroup, ...]:
    """Abelian groups of order ``n`` in invariant-factor form, exponent first."""
    if n == 1:
        return (FinAbGroup(()),)
    per_prime = [[(p, part) for part in _partitions(e)] for p, e in sorted(_factor(n).items())]
    out = []
    for choice in product(*per_prime):
        width = max(len(part) for _, part in choice)
        factors = [1] * width
        for p, part in choice:
            for i, a in enumerate(part):
                factors[i] *= p ** a
        out.append(FinAbGroup(tuple(factors)))
    return tuple(sorted(out, key=lambda G: G.moduli))


def groups_up_to(n: int) -> list[FinAbGroup]:
    return [G for k in range(1, n + 1) for G in groups_of_order(k)]


@lru_cache(maxsize=None)
def automorphisms(G: FinAbGroup) -> tuple[GroupHom, ...]:
    return tuple(f for f in hom_enumerate(G, G, max(DEFAULT_BOUND, G.order ** 2)) if f.is_bijective())


def _transport_table(G: FinAbGroup, phi: GroupHom, phi_inv: GroupHom, mult) -> tuple:
    def mul(x, y):
        out = G.zero
        for j, a in enumerate(x):
            for l, b in enumerate(y):
                if a and b:
                    out = G.add(out, G.scale(a * b, mult[j][l]))
        return out

    basis = [G.basis(j) for j in range(G.rank)]
    return tuple(tuple(phi(mul(phi_inv(x), phi_inv(y))) for y in basis) for x in basis)


@lru_cache(maxsize=None)
def rings_of_order(n: int) -> tuple[FinRing, ...]:
    """Unital rings of order ``n`` up to isomorphism, each with unit ``e_0``."""
    out = []
    for G in groups_of_order(n):
        if G.rank == 0:
            out.append(FinRing(G, (), ()))
            continue
        unit = G.basis(0)
        k = G.rank
        free = [(j, l) for j in range(1, k) for l in range(1, k)]
        options = [[y for y in G.elements()
                    if G.scale(G.moduli[j], y) == G.zero and G.scale(G.moduli[l], y) == G.zero]
                   for j, l in free]
        autos = [(f, f.inverse()) for f in automorphisms(G) if f(unit) == unit]
        seen = set()
        for vals in product(*options):
            table = [[None] * k for _ in range(k)]
            for l in range(k):
                table[0][l] = G.basis(l)
                table[l][0] = G.basis(l)
            for (j, l), v in zip(free, vals):
                table[j][l] = v
            mult = tuple(tuple(row) for row in table)
            if mult in seen:
                continue
            R = FinRing(G, unit, mult)
            if not check_ring(R).ok:
                continue
            orbit = {_transport_table(G, f, g, mult) for f, g in autos}
            seen |= orbit
            out.append(FinRing(G, unit, min(orbit)))
    return tuple(sorted(out, key=lambda R: (R.additive.moduli, R.mult)))


def rings_up_to(n: int) -> list[FinRing]:
    return [R for k in range(1, n + 1) for R in rings_of_order(k)]


@lru_cache(maxsize=None)
def ring_automorphisms(R: FinRing) -> tuple[RingHom, ...]:
    return tuple(f for f in ring_homs(R, R, max(DEFAULT_BOUND, R.order ** 2)) if f.is_bijective())


def _action_candidates(R: FinRing, G: FinAbGroup) -> list[list[GroupHom]]:
    """One list per generator of R: endomorphisms of G killed by its order."""
    ends = hom_enumerate(G, G, max(DEFAULT_BOUND, G.order ** 2))
    ident = GroupHom.identity(G)
    out = []
    for j, n in enumerate(R.additive.moduli):
        if R.additive.basis(j) == R.unit:
            out.append([ident])
        else:
            out.append([f for f in ends if _scaled_zero(f, n)])
    return out


def _scaled_zero(f: GroupHom, n: int) -> bool:
    G = f.target
    return all(G.scale(n, f.column(j)) == G.zero for j in range(f.source.rank))


def _one_sided(R: FinRing, G: FinAbGroup, left: bool) -> list[list[GroupHom]]:
    """Representations ``e_j -> End(G)`` that are unital and (anti)multiplicative."""
    cands = _action_candidates(R, G)
    out = []
    basis = [R.additive.basis(j) for j in range(R.additive.rank)]
    for choice in product(*cands):
        def rep(x):
            f = GroupHom.zero(G, G)
            for j, a in enumerate(x):
                for _ in range(a):
                    f = f + choice[j]
            return f

        if rep(R.unit).matrix != GroupHom.identity(G).matrix:
            continue
        ok = True
        for x, y in product(basis, repeat=2):
            lhs = rep(R.mul(x, y))
            rhs = (rep(x) @ rep(y)) if left else (rep(y) @ rep(x))
            if lhs.matrix != rhs.matrix:
                ok = False
                break
        if ok:
            out.append(list(choice))
    return out


def _tables(R: FinRing, G: FinAbGroup, lreps, rreps) -> Bimodule:
    left = tuple(tuple(lreps[j].column(l) for l in range(G.rank)) for j in range(R.additive.rank))
    right = tuple(tuple(rreps[j].column(l) for j in range(R.additive.rank)) for l in range(G.rank))
    return Bimodule(R, G, left, right)


@lru_cache(maxsize=None)
def bimodules(R: FinRing, G: FinAbGroup) -> tuple[Bimodule, ...]:
    """All bimodule structures on ``G`` (not reduced up to isomorphism)."""
    if G.rank == 0:
        return (Bimodule(R, G, tuple(() for _ in range(R.additive.rank)), ()),)
    if R.order == 1:
        return ()  # the zero ring acts only on the zero group
    lefts = _one_sided(R, G, True)
    rights = _one_sided(R, G, False)
    out = []
    for lr, rr in product(lefts, rights):
        if all((l @ r).matrix == (r @ l).matrix for l in lr for r in rr):
            M = _tables(R, G, lr, rr)
            if check_bimodule(M).ok:
                out.append(M)
    return tuple(out)


def _canonical_xbm(X: CrossedBimodule, raut, gaut) -> tuple:
    R, G = X.R, X.group
    best = None
    for a in raut:
        ainv = a.inverse()
        for g, ginv in gaut:
            left = tuple(tuple(g(X.M.lmul(ainv(R.additive.basis(j)), ginv(G.basis(l))))
                               for l in range(G.rank)) for j in range(R.additive.rank))
            right = tuple(tuple(g(X.M.rmul(ginv(G.basis(l)), ainv(R.additive.basis(j))))
                                for j in range(R.additive.rank)) for l in range(G.rank))
            d = tuple(a(X.d(ginv(G.basis(l)))) for l in range(G.rank))
            key = (left, right, d)
            if best is None or key < best:
                best = key
    return best


def crossed_bimodules(max_ring: int = 4, max_module: int = 4, jobs: int = 1) -> list[CrossedBimodule]:
    """All crossed bimodules with ``|R| <= max_ring`` and ``|M| <= max_module``
    up to isomorphism of the pair ``(R, M)``."""

    def for_pair(pair):
        R, G = pair
        raut = ring_automorphisms(R)
        gaut = [(g, g.inverse()) for g in automorphisms(G)]
        found = {}
        for M in bimodules(R, G):
            for d in hom_enumerate(G, R.additive, max(DEFAULT_BOUND, G.order * R.order)):
                X = CrossedBimodule(R, M, d)
                if not check_crossed(X).ok:
                    continue
                key = _canonical_xbm(X, raut, gaut)
                if key not in found:
                    left, right, dcols = key
                    found[key] = CrossedBimodule(R, Bimodule(R, G, left, right),
                                                 GroupHom.from_columns(G, R.additive, dcols))
        return [found[k] for k in sorted(found)]

    pairs = [(R, G) for R in rings_up_to(max_ring) for G in groups_up_to(max_module)]
    return [X for xs in parallel_map(for_pair, pairs, jobs) for X in xs]


def census_morphisms(xbms: list[CrossedBimodule], max_center: int = 16,
                     bound: int = DEFAULT_BOUND, jobs: int = 1) -> list[XbmMorphism]:
    """All strict morphisms between census members whose split center
    ``S + M`` has order at most ``max_center``."""
    pairs = [(X, Y) for X in xbms for Y in xbms if X.R.order * Y.group.order <= max_center]
    return [f for fs in parallel_map(lambda p: morphisms(p[0], p[1], bound), pairs, jobs) for f in fs]


def ideals(E: FinRing) -> list:
    """All two-sided ideals of ``E`` as ``(I, incl)``, by sums of principal ideals."""
    found = {}

    def key(incl):
        return frozenset(incl(x) for x in incl.source.elements())

    for x in E.elements():
        I, incl = ideal_generated(E, [x])
        found.setdefault(key(incl), (I, incl))
    changed = True
    while changed:
        changed = False
        items = list(found.values())
        for (_, a), (_, b) in product(items, repeat=2):
            gens = [a(a.source.basis(j)) for j in range(a.source.rank)] + \
                   [b(b.source.basis(j)) for j in range(b.source.rank)]
            I, incl = ideal_generated(E, gens)
            k = key(incl)
            if k not in found:
                found[k] = (I, incl)
                changed = True
    return [found[k] for k in sorted(found, key=lambda s: (len(s), sorted(s)))]


def census_extensions(max_order: int = 8) -> list[AlgExtension]:
    """``I -> E -> E/I`` for every ideal of every ring of order ``<= max_order``."""
    return [extension_from_ideal(E, incl) for E in rings_up_to(max_order) for _, incl in ideals(E)]


def order16_extensions() -> list[AlgExtension]:
    """Extensions with center of order 16 built from smaller pieces:
    trivial extensions ``S + M`` with ``|S| = |M| = 4`` over the regular
    bimodule, and products ``E1 x E2`` with the ideal ``E1 x 0``."""
    out = []
    for S in rings_of_order(4):
        out.append(trivial_extension(S, regular_bimodule(S)))
    for E1, E2 in product(rings_of_order(2) + rings_of_order(4), repeat=2):
        if E1.order * E2.order != 16 and E1.order * E2.order != 8:
            continue
        E = product_ring(E1, E2)
        incl = GroupHom.from_function(E1.additive, E.additive, lambda x: tuple(x) + E2.zero)
        out.append(extension_from_ideal(E, incl))
    return [e for e in out if e.E.order == 16]


def census_summary(cfg: CensusConfig = CensusConfig(), jobs: int = 1) -> dict:
    rings = {n: len(rings_of_order(n)) for n in range(1, cfg.max_ring + 1)}
    groups = {n: len(groups_of_order(n)) for n in range(1, cfg.max_module + 1)}
    xbms = crossed_bimodules(cfg.xbm_ring, cfg.xbm_module, jobs)
    return {
        "rings_by_order": rings,
        "groups_by_order": groups,
        "crossed_bimodules": len(xbms),
        "crossed_bimodule_caps": {"ring": cfg.xbm_ring, "module": cfg.xbm_module},
    }
