"""Butterflies between crossed bimodules.

A butterfly from ``N -> S`` to ``M -> R`` is a ring ``E`` with maps

    kappa: N -> E,  iota: M -> E,  pi: E -> S,  jay: E -> R

such that ``M -> E -> S`` is an algebra extension, ``N -> E -> R`` is a
complex, both wings commute with the differentials, and

    iota(m jay(e)) = iota(m) e,    iota(jay(e) m) = e iota(m),
    kappa(n pi(e)) = kappa(n) e,   kappa(pi(e) n) = e kappa(n).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .algebra import (
    AlgExtension, FinRing, RingHom, bimodule_from_functions, check_ring, check_ring_hom,
    find_splittings, is_ideal, is_ring_hom, product_ring, quotient_ring,
    ring_from_function, subring, zero_bimodule,
)
from .config import DEFAULT_BOUND, parallel_map
from .crossed import (
    CrossedBimodule, XbmMorphism, check_crossed, check_morphism, identity_morphism, pi1, pi_maps,
)
from .errors import MiddleMismatch, ShapeMismatch
from .report import Report
from .zmod import (
    GroupHom, HomGroup, direct_sum, image, is_exact, linear_map_between_homs, preimage, pullback, solve,
)


@dataclass(frozen=True)
class Butterfly:
    source: CrossedBimodule  # N -> S
    target: CrossedBimodule  # M -> R
    E: FinRing
    kappa: GroupHom
    iota: GroupHom
    pi: RingHom
    jay: RingHom

    def __post_init__(self):
        X, Y, G = self.source, self.target, self.E.additive
        shapes = [
            (self.kappa.source, X.group), (self.kappa.target, G),
            (self.iota.source, Y.group), (self.iota.target, G),
            (self.pi.source, self.E), (self.pi.target, X.R),
            (self.jay.source, self.E), (self.jay.target, Y.R),
        ]
        if any(a != b for a, b in shapes):
            raise ShapeMismatch("butterfly maps do not match the declared crossed bimodules")

    def extension(self) -> AlgExtension:
        """The exact diagonal ``M -> E -> S``."""
        return AlgExtension(self.target.group, self.E, self.source.R, self.iota, self.pi)


def check_butterfly(B: Butterfly, exhaustive_derived: bool = True) -> Report:
    """All butterfly axioms on generators, then the consequences that must
    follow from them (checked element-wise, located under ``derived``)."""
    rep = Report("butterfly")
    rep.extend(check_crossed(B.source), "source")
    rep.extend(check_crossed(B.target), "target")
    rep.extend(check_ring(B.E), "E")
    rep.extend(check_ring_hom(B.pi), "pi")
    rep.extend(check_ring_hom(B.jay), "jay")
    for name, f in (("kappa", B.kappa), ("iota", B.iota)):
        for ij in f.violations():
            rep.add("well_defined", ij, name)
    if not rep.ok:
        return rep
    X, Y = B.source, B.target
    if not B.iota.is_injective():
        rep.add("iota_injective", ())
    if not B.pi.hom.is_surjective():
        rep.add("pi_surjective", ())
    if not is_exact(B.iota, B.pi.hom):
        rep.add("diagonal_exact", ())
    if (B.pi.hom @ B.kappa).matrix != X.boundary.matrix:
        rep.add("left_wing_commutes", _first_diff(B.pi.hom @ B.kappa, X.boundary))
    if (B.jay.hom @ B.iota).matrix != Y.boundary.matrix:
        rep.add("right_wing_commutes", _first_diff(B.jay.hom @ B.iota, Y.boundary))
    if not (B.jay.hom @ B.kappa).is_zero():
        rep.add("diagonal_complex", _first_diff(B.jay.hom @ B.kappa, GroupHom.zero(X.group, Y.R.additive)))
    G, N, M = B.E.additive, X.group, Y.group
    es = [G.basis(j) for j in range(G.rank)]
    E = B.E
    for e in es:
        for m in (M.basis(l) for l in range(M.rank)):
            if B.iota(Y.M.rmul(m, B.jay(e))) != E.mul(B.iota(m), e):
                rep.add("iota_right_compatible", (m, e))
            if B.iota(Y.M.lmul(B.jay(e), m)) != E.mul(e, B.iota(m)):
                rep.add("iota_left_compatible", (e, m))
        for n in (N.basis(l) for l in range(N.rank)):
            if B.kappa(X.M.rmul(n, B.pi(e))) != E.mul(B.kappa(n), e):
                rep.add("kappa_right_compatible", (n, e))
            if B.kappa(X.M.lmul(B.pi(e), n)) != E.mul(e, B.kappa(n)):
                rep.add("kappa_left_compatible", (e, n))
    if rep.ok and exhaustive_derived:
        rep.extend(check_derived(B), "derived")
    return rep


def _first_diff(f: GroupHom, g: GroupHom) -> tuple:
    for j in range(f.source.rank):
        x = f.source.basis(j)
        if f(x) != g(x):
            return (x,)
    return ()


def check_derived(B: Butterfly) -> Report:
    """Consequences of the axioms, element-wise: ``iota(M)`` is a two-sided
    ideal, ``kappa(N) iota(M) = 0 = iota(M) kappa(N)`` and
    ``iota(m) iota(m') = iota(m d(m'))``."""
    rep = Report("butterfly_derived")
    E, X, Y = B.E, B.source, B.target
    ims = {B.iota(m): m for m in Y.group.elements()}
    zero = E.zero
    for m, im in ((m, B.iota(m)) for m in Y.group.elements()):
        for e in E.elements():
            if E.mul(e, im) not in ims or E.mul(im, e) not in ims:
                rep.add("iota_ideal", (m, e))
        for n in X.group.elements():
            k = B.kappa(n)
            if E.mul(k, im) != zero or E.mul(im, k) != zero:
                rep.add("kappa_iota_annihilate", (n, m))
        for m2 in Y.group.elements():
            if E.mul(im, B.iota(m2)) != B.iota(Y.M.rmul(m, Y.d(m2))):
                rep.add("iota_product", (m, m2))
    return rep


# ---------------------------------------------------------------------------
# split butterflies


def from_morphism(f: XbmMorphism) -> Butterfly:
    """The split butterfly of ``(alpha, beta): (N -> S) -> (M -> R)``.

    ``E = S + M`` with ``(s, m)(s', m') = (ss', alpha(s) m' + m alpha(s') + m d(m'))``.
    """
    X, Y = f.source, f.target
    S, M = X.R, Y.M
    k = S.additive.rank
    G = direct_sum(S.additive, Y.group)

    def mul(x, y):
        s, m, s2, m2 = x[:k], x[k:], y[:k], y[k:]
        tail = Y.group.sum([M.lmul(f.alpha(s), m2), M.rmul(m, f.alpha(s2)), M.rmul(m, Y.d(m2))])
        return S.mul(s, s2) + tail

    E = ring_from_function(G, mul, S.unit + Y.group.zero)
    iota = GroupHom.from_function(Y.group, G, lambda m: S.zero + tuple(m))
    pi = RingHom.from_function(E, S, lambda x: x[:k])
    kappa = GroupHom.from_function(X.group, G, lambda n: X.d(n) + Y.group.neg(f.beta(n)))
    jay = RingHom.from_function(E, Y.R, lambda x: Y.R.add(f.alpha(x[:k]), Y.d(x[k:])))
    return Butterfly(X, Y, E, kappa, iota, pi, jay)


def identity_butterfly(X: CrossedBimodule) -> Butterfly:
    return from_morphism(identity_morphism(X))


def canonical_section(f: XbmMorphism) -> RingHom:
    """``sigma = (id, 0)`` on the center of ``from_morphism(f)``."""
    B = from_morphism(f)
    return RingHom.from_function(B.source.R, B.E, lambda s: tuple(s) + B.target.group.zero)


@dataclass(frozen=True)
class ButterflyMorphism:
    source: Butterfly
    target: Butterfly
    a: RingHom


def check_butterfly_morphism(phi: ButterflyMorphism) -> Report:
    rep = Report("butterfly_morphism")
    B, C = phi.source, phi.target
    if (B.source, B.target) != (C.source, C.target):
        raise ShapeMismatch("butterflies have different endpoints")
    rep.extend(check_ring_hom(phi.a), "a")
    if not rep.ok:
        return rep
    a = phi.a.hom
    for law, lhs, rhs in (("iota", a @ B.iota, C.iota), ("pi", C.pi.hom @ a, B.pi.hom),
                          ("jay", C.jay.hom @ a, B.jay.hom), ("kappa", a @ B.kappa, C.kappa)):
        if lhs.matrix != rhs.matrix:
            rep.add(f"{law}_compatible", _first_diff(lhs, rhs))
    if not a.is_bijective():
        rep.add("bijective", ())
    return rep


def identity_butterfly_morphism(B: Butterfly) -> ButterflyMorphism:
    return ButterflyMorphism(B, B, RingHom.identity(B.E))


def morphism_from_homotopy(H) -> ButterflyMorphism:
    """``psi = (id_S, id_M + h)`` from the split butterfly of ``H.to_`` to
    that of ``H.from_``.  No validation happens here; ``psi`` is multiplicative
    exactly when ``h`` satisfies the product rule."""
    B0, B1 = from_morphism(H.to_), from_morphism(H.from_)
    k = H.to_.source.R.additive.rank
    M = H.to_.target.group

    def fn(x):
        s, m = x[:k], x[k:]
        return tuple(s) + M.add(m, H.h(s))

    return ButterflyMorphism(B0, B1, RingHom(B0.E, B1.E, GroupHom.from_function(B0.E.additive, B1.E.additive, fn)))


@dataclass(frozen=True)
class StrongSplitting:
    sigma: RingHom
    recovered: XbmMorphism
    iso: ButterflyMorphism  # from_morphism(recovered) -> B


def detect_strong_splitting(B: Butterfly, bound: int = DEFAULT_BOUND) -> Optional[StrongSplitting]:
    """Search a unital ring section of ``pi`` and read off ``(alpha, beta)``.

    ``alpha = jay sigma`` and ``beta = iota^{-1} (sigma d - kappa)``; the first
    section in lexicographic order is used.
    """
    sections = find_splittings(B.extension(), "ring", bound, limit=1)
    if not sections:
        return None
    sigma = sections[0]
    X, Y = B.source, B.target
    G = B.E.additive
    alpha = B.jay @ sigma
    beta = GroupHom.from_function(X.group, Y.group,
                                  lambda n: preimage(B.iota, G.sub(sigma(X.d(n)), B.kappa(n))))
    rec = XbmMorphism(X, Y, alpha, beta)
    split = from_morphism(rec)
    k = X.R.additive.rank
    a = GroupHom.from_function(split.E.additive, G, lambda x: G.add(sigma(x[:k]), B.iota(x[k:])))
    return StrongSplitting(sigma, rec, ButterflyMorphism(split, B, RingHom(split.E, B.E, a)))


# ---------------------------------------------------------------------------
# fractions


@dataclass(frozen=True)
class Fraction:
    Efrac: CrossedBimodule
    left: XbmMorphism   # Efrac -> source, a quasi-isomorphism
    right: XbmMorphism  # Efrac -> target
    qiso: bool


def fraction(B: Butterfly) -> Fraction:
    """``N (+)_S E -> E`` with ``d(n, e) = e`` and its two wings.

    ``E`` acts by ``e0 (n, e) = (pi(e0) n, e0 e)`` and
    ``(n, e) e1 = (n pi(e1), e e1)``.  The left wing is ``(pi, (n, e) -> n)``
    and the right wing is ``(jay, (n, e) -> iota^{-1}(e - kappa(n)))``.
    """
    X, Y = B.source, B.target
    P, incl, p1, p2 = pullback(X.boundary, B.pi.hom)
    E = B.E

    def pair(n, e):
        return preimage(incl, tuple(n) + tuple(e))

    mod = bimodule_from_functions(
        E, P,
        lambda e0, x: pair(X.M.lmul(B.pi(e0), p1(x)), E.mul(e0, p2(x))),
        lambda x, e1: pair(X.M.rmul(p1(x), B.pi(e1)), E.mul(p2(x), e1)),
    )
    Z = CrossedBimodule(E, mod, p2)
    left = XbmMorphism(Z, X, B.pi, p1)
    beta = GroupHom.from_function(P, Y.group, lambda x: preimage(B.iota, E.additive.sub(p2(x), B.kappa(p1(x)))))
    right = XbmMorphism(Z, Y, B.jay, beta)
    xi, eta = pi_maps(left)
    return Fraction(Z, left, right, xi.is_bijective() and eta.is_bijective())


def check_fraction(F: Fraction) -> Report:
    rep = Report("fraction")
    rep.extend(check_crossed(F.Efrac), "Efrac")
    rep.extend(check_morphism(F.left), "left")
    rep.extend(check_morphism(F.right), "right")
    if not F.qiso:
        rep.add("left_wing_not_quasi_isomorphism", ())
    return rep


def fraction_split_form(B: Butterfly) -> tuple[CrossedBimodule, XbmMorphism]:
    """``N + M -> E`` with ``d(n, m) = kappa(n) + iota(m)`` and the
    comparison ``(id_E, (n, e) -> (n, iota^{-1}(e - kappa(n))))`` from
    ``fraction(B).Efrac``."""
    X, Y, E = B.source, B.target, B.E
    k = X.group.rank
    G = direct_sum(X.group, Y.group)
    mod = bimodule_from_functions(
        E, G,
        lambda e0, x: X.M.lmul(B.pi(e0), x[:k]) + Y.M.lmul(B.jay(e0), x[k:]),
        lambda x, e1: X.M.rmul(x[:k], B.pi(e1)) + Y.M.rmul(x[k:], B.jay(e1)),
    )
    d = GroupHom.from_function(G, E.additive, lambda x: E.add(B.kappa(x[:k]), B.iota(x[k:])))
    W = CrossedBimodule(E, mod, d)
    F = fraction(B)
    P = F.Efrac.group
    comp = GroupHom.from_function(P, G, lambda x: F.left.beta(x) + F.right.beta(x))
    return W, XbmMorphism(F.Efrac, W, RingHom.identity(E), comp)


def from_extension(ext: AlgExtension) -> Butterfly:
    """From ``0 -> S`` to ``M -> E`` with ``kappa = 0``, ``iota = incl``,
    ``pi = proj`` and ``jay = id``."""
    E = ext.E
    Z = zero_bimodule(ext.S)
    src = CrossedBimodule(ext.S, Z, GroupHom.zero(Z.additive, ext.S.additive))
    tgt = CrossedBimodule(E, ext.bimodule(), ext.incl)
    return Butterfly(src, tgt, E, GroupHom.zero(Z.additive, E.additive), ext.incl, ext.proj, RingHom.identity(E))


# ---------------------------------------------------------------------------
# composition


def compose(F: Butterfly, B: Butterfly, sign: int = 1) -> Butterfly:
    """``F: T -> S`` followed by ``B: S -> R``.

    The center is ``{(f, e) : jay'(f) = pi(e)}`` modulo the ideal of pairs
    ``(iota'(n), sign * kappa(n))``.  ``sign = 1`` is the correct choice; the
    other quotient agrees with it only when ``2 N = 0``.
    """
    if F.target != B.source:
        raise MiddleMismatch("the target of the first butterfly is not the source of the second")
    Fc, Ec = F.E, B.E
    prod = product_ring(Fc, Ec)
    P, incl, p1, p2 = pullback(F.jay.hom, B.pi.hom)
    Q, qincl = subring(prod, incl)
    N = F.target.group
    gen = GroupHom.from_function(
        N, P, lambda n: preimage(incl, F.iota(n) + Ec.additive.scale(sign, B.kappa(n))))
    _, iincl = image(gen)
    iincl = GroupHom(iincl.source, P, iincl.matrix)
    if not is_ideal(Q, iincl):
        raise AssertionError("composition ideal is not two-sided")
    C, proj = quotient_ring(Q, iincl)
    zF, zE = Fc.zero, Ec.zero
    iota = GroupHom.from_function(B.target.group, C.additive, lambda m: proj(preimage(incl, zF + B.iota(m))))
    kappa = GroupHom.from_function(F.source.group, C.additive, lambda p: proj(preimage(incl, F.kappa(p) + zE)))
    pi = RingHom.from_function(C, F.source.R, lambda c: F.pi(p1(preimage(proj.hom, c))))
    jay = RingHom.from_function(C, B.target.R, lambda c: B.jay(p2(preimage(proj.hom, c))))
    return Butterfly(F.source, B.target, C, kappa, iota, pi, jay)


# ---------------------------------------------------------------------------
# isomorphism search


def find_isomorphisms(B: Butterfly, C: Butterfly, bound: int = DEFAULT_BOUND,
                      jobs: int = 1) -> list[ButterflyMorphism]:
    """All butterfly isomorphisms ``B -> C``.

    The four structural compatibilities are linear in ``a``; they are solved
    as one congruence system over ``Hom(E, E')`` and the (coset-enumerated)
    solutions are filtered for unital multiplicativity and bijectivity.
    """
    if (B.source, B.target) != (C.source, C.target):
        raise ShapeMismatch("butterflies have different endpoints")
    if B.E.order != C.E.order:
        return []
    H = HomGroup(B.E.additive, C.E.additive)
    targets = [HomGroup(B.target.group, C.E.additive), HomGroup(B.E.additive, B.source.R.additive),
               HomGroup(B.E.additive, B.target.R.additive), HomGroup(B.source.group, C.E.additive)]
    L = linear_map_between_homs(
        [H], targets,
        lambda fs: [fs[0] @ B.iota, C.pi.hom @ fs[0], C.jay.hom @ fs[0], fs[0] @ B.kappa])
    rhs = tuple(c for T, f in zip(targets, (C.iota, B.pi.hom, B.jay.hom, C.kappa)) for c in T.from_hom(f))
    sols = solve(L, rhs, bound)

    def accept(c):
        a = RingHom(B.E, C.E, H.to_hom(c))
        return a if is_ring_hom(a) and a.hom.is_bijective() else None

    return [ButterflyMorphism(B, C, a) for a in parallel_map(accept, sols, jobs) if a is not None]


def are_isomorphic(B: Butterfly, C: Butterfly, bound: int = DEFAULT_BOUND) -> bool:
    return bool(find_isomorphisms(B, C, bound))


# ---------------------------------------------------------------------------
# induced maps on homotopy invariants


def induced_pi_maps(B: Butterfly) -> tuple[RingHom, GroupHom]:
    """``xi: pi0(source) -> pi0(target)`` and ``eta: pi1(source) -> pi1(target)``
    read through the fraction: right wing after the inverse of the left wing."""
    F = fraction(B)
    if not F.qiso:
        raise AssertionError("left wing of the fraction is not a quasi-isomorphism")
    xl, el = pi_maps(F.left)
    xr, er = pi_maps(F.right)
    return xr @ xl.inverse(), er @ el.inverse()


def check_pi_maps(B: Butterfly) -> Report:
    """``xi`` is a unital ring map and ``eta`` is additive and
    ``xi``-equivariant for the induced biactions."""

    rep = Report("induced_pi_maps")
    xi, eta = induced_pi_maps(B)
    rep.extend(check_ring_hom(xi), "xi")
    for ij in eta.violations():
        rep.add("well_defined", ij, "eta")
    A0, _ = pi1(B.source)
    A1, _ = pi1(B.target)
    P0 = xi.source
    for b, a in product((P0.additive.basis(j) for j in range(P0.additive.rank)),
                        (A0.additive.basis(j) for j in range(A0.additive.rank))):
        if eta(A0.lmul(b, a)) != A1.lmul(xi(b), eta(a)):
            rep.add("eta_left_equivariant", (b, a))
        if eta(A0.rmul(a, b)) != A1.rmul(eta(a), xi(b)):
            rep.add("eta_right_equivariant", (a, b))
    return rep


def butterfly_orders(B: Butterfly) -> dict:
    return {"E": B.E.order, "N": B.source.group.order, "S": B.source.R.order,
            "M": B.target.group.order, "R": B.target.R.order}
