"""Crossed bimodules, their homotopy invariants, strict morphisms and homotopies.

A crossed bimodule is a bimodule map ``d: M -> R`` satisfying the Pfeiffer
identity ``d(m) m' = m d(m')``.  This module also builds crossed bimodules
from small chain DGAs and from simplicial rings truncated at level 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .algebra import (
    BilinearMap, Bimodule, FinRing, RingHom, bimodule_from_functions, check_bimodule,
    check_bimodule_map, check_ring, check_ring_hom, ideal_generated, quotient_bimodule,
    quotient_ring, regular_bimodule, ring_homs, sub_bimodule,
)
from .config import DEFAULT_BOUND
from .errors import BoundExceeded, EndpointMismatch, InvalidDGA, InvalidSimplicial, ShapeMismatch
from .report import Report
from .zmod import (
    Coords, FinAbGroup, GroupHom, cokernel, direct_sum, hom_enumerate, image, is_exact, kernel, preimage,
)


@dataclass(frozen=True)
class CrossedBimodule:
    R: FinRing
    M: Bimodule
    boundary: GroupHom

    def __post_init__(self):
        if self.M.ring != self.R:
            raise ShapeMismatch("M is a bimodule over a different ring")
        if self.boundary.source != self.M.additive or self.boundary.target != self.R.additive:
            raise ShapeMismatch("boundary must map M to R")

    def d(self, m) -> Coords:
        return self.boundary(m)

    @property
    def group(self) -> FinAbGroup:
        return self.M.additive


def ideal_crossed(R: FinRing, gens: Sequence[Sequence[int]]) -> CrossedBimodule:
    """The inclusion of the two-sided ideal generated by ``gens``."""
    I, incl = ideal_generated(R, gens)
    return CrossedBimodule(R, sub_bimodule(regular_bimodule(R), incl), incl)


def zero_differential(R: FinRing, M: Bimodule) -> CrossedBimodule:
    return CrossedBimodule(R, M, GroupHom.zero(M.additive, R.additive))


def check_crossed(X: CrossedBimodule, exhaustive: bool = False) -> Report:
    rep = Report("crossed_bimodule")
    rep.extend(check_ring(X.R, exhaustive), "R")
    rep.extend(check_bimodule(X.M, exhaustive), "M")
    for i, j in X.boundary.violations():
        rep.add("well_defined", (i, j), "del")
    if "well_defined" in rep.laws():
        return rep
    # a broken action still gets the remaining laws reported
    rep.extend(check_bimodule_map(X.boundary, X.M, regular_bimodule(X.R)), "del")
    G = X.M.additive
    ms = list(G.elements()) if exhaustive else [G.basis(l) for l in range(G.rank)]
    for m1, m2 in product(ms, repeat=2):
        lhs = X.M.lmul(X.d(m1), m2)
        rhs = X.M.rmul(m1, X.d(m2))
        if lhs != rhs:
            rep.add("pfeiffer_identity", (m1, m2), "elements" if exhaustive else "generators")
    return rep


def peiffer_product(X: CrossedBimodule, m1, m2) -> Coords:
    """The induced non-unital product ``<m, m'> = m d(m')``."""
    return X.M.rmul(m1, X.d(m2))


def peiffer_bilinear(X: CrossedBimodule) -> BilinearMap:
    G = X.M.additive
    return BilinearMap.from_function(G, G, G, lambda a, b: peiffer_product(X, a, b))


# ---------------------------------------------------------------------------
# homotopy invariants


def pi0(X: CrossedBimodule) -> tuple[FinRing, RingHom]:
    """``coker d`` with its induced ring structure and the projection from R."""
    _, incl = image(X.boundary)
    return quotient_ring(X.R, incl)


def pi1(X: CrossedBimodule) -> tuple[Bimodule, GroupHom]:
    """``ker d`` as a ``pi0``-bimodule, with its inclusion into M."""
    B, proj = pi0(X)
    A, incl = kernel(X.boundary)

    def lift(b):
        return preimage(proj.hom, b)

    mod = bimodule_from_functions(B, A,
                                  lambda b, a: preimage(incl, X.M.lmul(lift(b), incl(a))),
                                  lambda a, b: preimage(incl, X.M.rmul(incl(a), lift(b))))
    return mod, incl


@dataclass(frozen=True)
class CrossedExtension:
    """``0 -> pi1 -> M -> R -> pi0 -> 0``."""

    X: CrossedBimodule
    pi0: FinRing
    pi1: Bimodule
    incl: GroupHom
    proj: RingHom

    def check(self) -> Report:
        rep = Report("crossed_extension")
        if not self.incl.is_injective():
            rep.add("exact_at_pi1", ())
        if not is_exact(self.incl, self.X.boundary):
            rep.add("exact_at_M", ())
        if not is_exact(self.X.boundary, self.proj.hom):
            rep.add("exact_at_R", ())
        if not self.proj.hom.is_surjective():
            rep.add("exact_at_pi0", ())
        rep.extend(check_ring(self.pi0), "pi0")
        rep.extend(check_bimodule(self.pi1), "pi1")
        return rep


def crossed_extension(X: CrossedBimodule) -> CrossedExtension:
    B, proj = pi0(X)
    A, incl = pi1(X)
    ext = CrossedExtension(X, B, A, incl, proj)
    rep = ext.check()
    if not rep.ok:
        raise AssertionError(f"crossed extension not exact: {rep.violations}")
    return ext


def describe_pi(X: CrossedBimodule) -> dict:
    B, _ = pi0(X)
    A, _ = pi1(X)
    return {
        "pi0": {"order": B.order, "invariants": list(B.additive.invariants()), "unit": list(B.unit),
                "moduli": list(B.additive.moduli), "mult": [[list(x) for x in row] for row in B.mult]},
        "pi1": {"order": A.order, "invariants": list(A.additive.invariants()),
                "moduli": list(A.additive.moduli)},
    }


# ---------------------------------------------------------------------------
# strict morphisms


@dataclass(frozen=True)
class XbmMorphism:
    """``(alpha, beta)`` from ``source = (N -> S)`` to ``target = (M -> R)``."""

    source: CrossedBimodule
    target: CrossedBimodule
    alpha: RingHom
    beta: GroupHom

    def __post_init__(self):
        if self.alpha.source != self.source.R or self.alpha.target != self.target.R:
            raise ShapeMismatch("alpha must map S to R")
        if self.beta.source != self.source.group or self.beta.target != self.target.group:
            raise ShapeMismatch("beta must map N to M")

    def is_isomorphism(self) -> bool:
        return self.alpha.is_bijective() and self.beta.is_bijective()


def identity_morphism(X: CrossedBimodule) -> XbmMorphism:
    return XbmMorphism(X, X, RingHom.identity(X.R), GroupHom.identity(X.group))


def check_morphism(f: XbmMorphism) -> Report:
    rep = Report("morphism")
    rep.extend(check_ring_hom(f.alpha), "alpha")
    for i, j in f.beta.violations():
        rep.add("well_defined", (i, j), "beta")
    if not rep.ok:
        return rep
    X, Y = f.source, f.target
    N, S = X.group, X.R.additive
    for l in range(N.rank):
        n = N.basis(l)
        if Y.d(f.beta(n)) != f.alpha(X.d(n)):
            rep.add("chain_map", (n,))
        for j in range(S.rank):
            s = S.basis(j)
            if f.beta(X.M.lmul(s, n)) != Y.M.lmul(f.alpha(s), f.beta(n)):
                rep.add("left_equivariant", (s, n))
            if f.beta(X.M.rmul(n, s)) != Y.M.rmul(f.beta(n), f.alpha(s)):
                rep.add("right_equivariant", (n, s))
    return rep


def compose_morphisms(first: XbmMorphism, second: XbmMorphism) -> XbmMorphism:
    """``second`` after ``first``."""
    if first.target != second.source:
        raise EndpointMismatch("target of the first morphism is not the source of the second")
    return XbmMorphism(first.source, second.target, second.alpha @ first.alpha, second.beta @ first.beta)


def morphisms(X: CrossedBimodule, Y: CrossedBimodule, bound: int = DEFAULT_BOUND) -> list[XbmMorphism]:
    """All strict morphisms ``X -> Y``."""
    out = []
    betas = hom_enumerate(X.group, Y.group, bound)
    for alpha in ring_homs(X.R, Y.R, bound):
        for beta in betas:
            f = XbmMorphism(X, Y, alpha, beta)
            if check_morphism(f).ok:
                out.append(f)
    return out


def pi_maps(f: XbmMorphism) -> tuple[RingHom, GroupHom]:
    """Maps induced on ``pi0`` (a ring map) and ``pi1``."""
    B, p = pi0(f.source)
    B2, p2 = pi0(f.target)
    A, i = pi1(f.source)
    A2, i2 = pi1(f.target)
    xi = RingHom.from_function(B, B2, lambda b: p2(f.alpha(preimage(p.hom, b))))
    eta = GroupHom.from_function(A.additive, A2.additive, lambda a: preimage(i2, f.beta(i(a))))
    return xi, eta


# ---------------------------------------------------------------------------
# homotopies


@dataclass(frozen=True)
class Homotopy:
    """``h: from_ => to_``, an additive map ``S -> M``.

    With ``to_ = (alpha, beta)`` and ``from_ = (alpha', beta')``:
    ``alpha' - alpha = -d h``, ``beta' - beta = -h d`` and
    ``h(s s') = alpha(s) h(s') + h(s) alpha(s') - d(h(s)) h(s')``.
    """

    from_: XbmMorphism
    to_: XbmMorphism
    h: GroupHom


def hochschild_delta(alpha: RingHom, h: GroupHom, M: Bimodule) -> BilinearMap:
    """``(s, s') -> alpha(s) h(s') - h(s s') + h(s) alpha(s')``."""
    S, A = alpha.source, M.additive

    def fn(s, t):
        return A.add(A.sub(M.lmul(alpha(s), h(t)), h(S.mul(s, t))), M.rmul(h(s), alpha(t)))

    return BilinearMap.from_function(S.additive, S.additive, A, fn)


def peiffer_square(Y: CrossedBimodule, h: GroupHom) -> BilinearMap:
    """``<h, h>(s, s') = h(s) d(h(s'))``."""
    S = h.source
    return BilinearMap.from_function(S, S, Y.group, lambda s, t: peiffer_product(Y, h(s), h(t)))


def multiplicative_law_holds(alpha: RingHom, h: GroupHom, Y: CrossedBimodule):
    """Direct check of the product rule for ``h``; returns a failing pair or None."""
    S, M = alpha.source, Y.M
    A = M.additive
    for j in range(S.additive.rank):
        for l in range(S.additive.rank):
            s, t = S.additive.basis(j), S.additive.basis(l)
            rhs = A.sub(A.add(M.lmul(alpha(s), h(t)), M.rmul(h(s), alpha(t))), M.lmul(Y.d(h(s)), h(t)))
            if h(S.mul(s, t)) != rhs:
                return (s, t)
    return None


def check_homotopy(H: Homotopy) -> Report:
    """Verify the three homotopy conditions.

    The product rule is verified twice: directly, and as ``delta h = <h, h>``.
    Both verdicts are recorded in ``derived`` and must agree.
    """
    rep = Report("homotopy")
    f1, f0 = H.from_, H.to_
    if (f1.source, f1.target) != (f0.source, f0.target):
        raise ShapeMismatch("homotopy between morphisms with different endpoints")
    X, Y = f0.source, f0.target
    h = H.h
    if h.source != X.R.additive or h.target != Y.group:
        raise ShapeMismatch("h must map S to M")
    for i, j in h.violations():
        rep.add("well_defined", (i, j), "h")
    if not rep.ok:
        return rep
    S, N = X.R.additive, X.group
    R, M = Y.R.additive, Y.group
    for j in range(S.rank):
        s = S.basis(j)
        if R.sub(f1.alpha(s), f0.alpha(s)) != R.neg(Y.d(h(s))):
            rep.add("alpha_difference", (s,))
    for l in range(N.rank):
        n = N.basis(l)
        if M.sub(f1.beta(n), f0.beta(n)) != M.neg(h(X.d(n))):
            rep.add("beta_difference", (n,))
    direct = multiplicative_law_holds(f0.alpha, h, Y)
    witness = hochschild_delta(f0.alpha, h, Y.M).first_difference(peiffer_square(Y, h))
    rep.derived["product_rule_direct"] = direct is None
    rep.derived["delta_equals_bracket"] = witness is None
    if direct is not None:
        rep.add("product_rule", direct)
    if (direct is None) != (witness is None):
        rep.add("verdicts_disagree", direct or witness or ())
    return rep


def homotopy_source(f: XbmMorphism, h: GroupHom) -> XbmMorphism:
    """The morphism ``(alpha - d h, beta - h d)`` from which ``h`` leads to ``f``."""
    X, Y = f.source, f.target
    alpha = RingHom(X.R, Y.R, f.alpha.hom - (Y.boundary @ h))
    beta = f.beta - (h @ X.boundary)
    return XbmMorphism(X, Y, alpha, beta)


def identity_homotopy(f: XbmMorphism) -> Homotopy:
    return Homotopy(f, f, GroupHom.zero(f.source.R.additive, f.target.group))


def inverse_homotopy(H: Homotopy) -> Homotopy:
    return Homotopy(H.to_, H.from_, -H.h)


def compose_homotopies(first: Homotopy, second: Homotopy) -> Homotopy:
    """``first: f'' => f'`` then ``second: f' => f`` gives ``f'' => f`` with pointwise sum."""
    if first.to_ != second.from_:
        raise EndpointMismatch("homotopies are not composable")
    return Homotopy(first.from_, second.to_, first.h + second.h)


@dataclass
class HomGroupoid:
    objects: list[XbmMorphism]
    arrows: list[Homotopy] = field(default_factory=list)


def hom_groupoid(X: CrossedBimodule, Y: CrossedBimodule, bound: int = DEFAULT_BOUND) -> HomGroupoid:
    """All morphisms ``X -> Y`` and all homotopies between them.

    A solution ``h`` of the product rule with ``d h(1) != 0`` has a non-unital
    source ``alpha - d h`` and is not an arrow of the groupoid.
    """
    objs = morphisms(X, Y, bound)
    hs = hom_enumerate(X.R.additive, Y.group, bound)
    if len(objs) * len(hs) > bound:
        raise BoundExceeded("too many candidate homotopies")
    index = set(objs)
    arrows = []
    for f in objs:
        for h in hs:
            if multiplicative_law_holds(f.alpha, h, Y) is None:
                g = homotopy_source(f, h)
                if g in index:
                    arrows.append(Homotopy(g, f, h))
    return HomGroupoid(objs, arrows)


def check_groupoid(G: HomGroupoid) -> Report:
    """Identities, inverses and closure under composition."""
    rep = Report("hom_groupoid")
    arrows = set(G.arrows)
    for f in G.objects:
        if identity_homotopy(f) not in arrows:
            rep.add("identity", ())
    for H in G.arrows:
        if not check_homotopy(H).ok:
            rep.add("arrow_valid", ())
        if inverse_homotopy(H) not in arrows:
            rep.add("inverse", ())
    by_source: dict = {}
    for H in G.arrows:
        by_source.setdefault(H.from_, []).append(H)
    for H1 in G.arrows:
        for H2 in by_source.get(H1.to_, []):
            C = compose_homotopies(H1, H2)
            if C not in arrows or not check_homotopy(C).ok:
                rep.add("composition", ())
    rep.derived["objects"] = len(G.objects)
    rep.derived["arrows"] = len(G.arrows)
    return rep


# ---------------------------------------------------------------------------
# chain DGAs in degrees 0, -1, -2


@dataclass(frozen=True)
class ChainDGA:
    """``D2 --d2--> D1 --d1--> R`` with ``D1 x D1 -> D2`` the only product
    between negative degrees; degree 0 acts on both by bimodule structures.
    """

    R: FinRing
    D1: Bimodule
    D2: Bimodule
    d1: GroupHom
    d2: GroupHom
    mul11: BilinearMap


def check_dga(D: ChainDGA) -> Report:
    rep = Report("dga")
    rep.extend(check_ring(D.R), "R")
    rep.extend(check_bimodule(D.D1), "D1")
    rep.extend(check_bimodule(D.D2), "D2")
    if not rep.ok:
        return rep
    rep.extend(check_bimodule_map(D.d1, D.D1, regular_bimodule(D.R)), "d1")
    rep.extend(check_bimodule_map(D.d2, D.D2, D.D1), "d2")
    if not (D.d1 @ D.d2).is_zero():
        rep.add("d_squared", ())
    A1, A2, R = D.D1.additive, D.D2.additive, D.R.additive
    g1 = [A1.basis(l) for l in range(A1.rank)]
    g2 = [A2.basis(l) for l in range(A2.rank)]
    rs = [R.basis(j) for j in range(R.rank)]
    for x, y in product(g1, repeat=2):
        # d(xy) = d(x) y - x d(y) in degree -1
        lhs = D.d2(D.mul11(x, y))
        rhs = A1.sub(D.D1.lmul(D.d1(x), y), D.D1.rmul(x, D.d1(y)))
        if lhs != rhs:
            rep.add("leibniz_11", (x, y))
        for r in rs:
            if D.mul11(D.D1.lmul(r, x), y) != D.D2.lmul(r, D.mul11(x, y)):
                rep.add("associativity_r11", (r, x, y))
            if D.mul11(D.D1.rmul(x, r), y) != D.mul11(x, D.D1.lmul(r, y)):
                rep.add("associativity_1r1", (x, r, y))
            if D.mul11(x, D.D1.rmul(y, r)) != D.D2.rmul(D.mul11(x, y), r):
                rep.add("associativity_11r", (x, y, r))
    for x, z in product(g1, g2):
        # products into degree -3 vanish, so both Leibniz expansions vanish
        if D.D2.lmul(D.d1(x), z) != D.mul11(x, D.d2(z)):
            rep.add("leibniz_12", (x, z))
        if D.D2.rmul(z, D.d1(x)) != D.mul11(D.d2(z), x):
            rep.add("leibniz_21", (z, x))
    return rep


def truncate_dga(D: ChainDGA) -> CrossedBimodule:
    """``(D1 / im d2) -> R``."""
    rep = check_dga(D)
    if not rep.ok:
        raise InvalidDGA(str(rep.violations[0]))
    _, incl = image(D.d2)
    incl = GroupHom(incl.source, D.D1.additive, incl.matrix)
    Q, proj = quotient_bimodule(D.D1, incl)
    d = GroupHom.from_function(Q.additive, D.R.additive, lambda c: D.d1(preimage(proj, c)))
    return CrossedBimodule(D.R, Q, d)


def dga_from_crossed(X: CrossedBimodule) -> ChainDGA:
    """``pi1 -> M -> R`` with products through the bimodule structures only."""
    A, incl = kernel(X.boundary)
    D2 = bimodule_from_functions(X.R, A,
                                 lambda r, a: preimage(incl, X.M.lmul(r, incl(a))),
                                 lambda a, r: preimage(incl, X.M.rmul(incl(a), r)))
    zero = BilinearMap(X.group, X.group, A, tuple(tuple(A.zero for _ in range(X.group.rank))
                                                  for _ in range(X.group.rank)))
    D = ChainDGA(X.R, X.M, D2, X.boundary, incl, zero)
    rep = check_dga(D)
    if not rep.ok:
        raise AssertionError(f"DGA from crossed bimodule invalid: {rep.violations}")
    return D


def dga_homology(D: ChainDGA) -> dict[int, FinAbGroup]:
    """Homology groups in degrees 0, -1, -2 (invariant-factor form)."""

    H0, _ = cokernel(D.d1)
    K1, k1 = kernel(D.d1)
    # im d2 inside ker d1
    d2k = GroupHom.from_function(D.D2.additive, K1, lambda z: preimage(k1, D.d2(z)))
    H1, _ = cokernel(d2k)
    H2, _ = kernel(D.d2)
    return {0: H0.canonical()[0], -1: H1.canonical()[0], -2: H2.canonical()[0]}


# ---------------------------------------------------------------------------
# simplicial rings truncated at level 2


@dataclass(frozen=True)
class TruncatedSimplicialRing:
    """Levels ``R0, R1, R2`` with ``faces[n][i]: R_n -> R_{n-1}`` (n = 1, 2)
    and ``degeneracies[n][i]: R_n -> R_{n+1}`` (n = 0, 1)."""

    levels: tuple[FinRing, FinRing, FinRing]
    faces: dict[int, tuple[RingHom, ...]]
    degeneracies: dict[int, tuple[RingHom, ...]]

    def __hash__(self):
        return hash(self.levels)


def _eq_on_generators(f: GroupHom, g: GroupHom) -> bool:
    return f.matrix == g.matrix


def check_simplicial(T: TruncatedSimplicialRing) -> Report:
    rep = Report("simplicial_ring")
    d, s = T.faces, T.degeneracies
    if len(d.get(1, ())) != 2 or len(d.get(2, ())) != 3 or len(s.get(0, ())) != 1 or len(s.get(1, ())) != 2:
        raise InvalidSimplicial("need faces d^1_0..1, d^2_0..2 and degeneracies s^0_0, s^1_0..1")
    for n, maps in list(d.items()) + list(s.items()):
        for i, f in enumerate(maps):
            rep.extend(check_ring_hom(f), f"level{n}.map{i}")
    if not rep.ok:
        return rep
    # d_i d_j = d_{j-1} d_i for i < j
    for j in range(3):
        for i in range(j):
            if not _eq_on_generators((d[1][i] @ d[2][j]).hom, (d[1][j - 1] @ d[2][i]).hom):
                rep.add("face_face", (i, j))
    # level 0 -> 1: d_0 s_0 = d_1 s_0 = id
    ident0 = GroupHom.identity(T.levels[0].additive)
    for i in range(2):
        if not _eq_on_generators((d[1][i] @ s[0][0]).hom, ident0):
            rep.add("face_degeneracy", (i, 0, 0))
    # level 1 -> 2
    ident1 = GroupHom.identity(T.levels[1].additive)
    for j in range(2):
        for i in range(3):
            lhs = (d[2][i] @ s[1][j]).hom
            if i in (j, j + 1):
                ok = _eq_on_generators(lhs, ident1)
            elif i < j:
                ok = _eq_on_generators(lhs, (s[0][j - 1] @ d[1][i]).hom)
            else:
                ok = _eq_on_generators(lhs, (s[0][j] @ d[1][i - 1]).hom)
            if not ok:
                rep.add("face_degeneracy", (i, j, 1))
    # s_0 s_0 = s_1 s_0
    if not _eq_on_generators((s[1][0] @ s[0][0]).hom, (s[1][1] @ s[0][0]).hom):
        rep.add("degeneracy_degeneracy", (0, 0))
    return rep


def truncate_moore(T: TruncatedSimplicialRing) -> CrossedBimodule:
    """``ker d0 / d2(ker d0 & ker d1) -> R0`` with differential induced by d1.

    ``R0`` acts through ``s0``: ``r m r' = s0(r) m s0(r')``.
    """
    return moore_truncation_maps(T)[0]


def moore_truncation_maps(T: TruncatedSimplicialRing) -> tuple[CrossedBimodule, GroupHom, GroupHom]:
    """``truncate_moore`` together with ``ker d0 -> R1`` and ``ker d0 -> M``."""
    rep = check_simplicial(T)
    if not rep.ok:
        raise InvalidSimplicial(str(rep.violations[0]))
    R0, R1, R2 = T.levels
    d, s0 = T.faces, T.degeneracies[0][0]
    K1, inc1 = kernel(d[1][0].hom)
    both = GroupHom.from_function(R2.additive, _pair(R1.additive), lambda z: d[2][0](z) + d[2][1](z))
    K2, inc2 = kernel(both)
    d2 = GroupHom.from_function(K2, K1, lambda z: preimage(inc1, d[2][2](inc2(z))))
    M1 = bimodule_from_functions(R0, K1,
                                 lambda r, m: preimage(inc1, R1.mul(s0(r), inc1(m))),
                                 lambda m, r: preimage(inc1, R1.mul(inc1(m), s0(r))))
    _, im_incl = image(d2)
    im_incl = GroupHom(im_incl.source, K1, im_incl.matrix)
    Q, proj = quotient_bimodule(M1, im_incl)
    boundary = GroupHom.from_function(Q.additive, R0.additive, lambda c: d[1][1](inc1(preimage(proj, c))))
    return CrossedBimodule(R0, Q, boundary), inc1, proj


def _pair(G: FinAbGroup) -> FinAbGroup:

    return direct_sum(G, G)


def crossed_isomorphisms(X: CrossedBimodule, Y: CrossedBimodule, bound: int = DEFAULT_BOUND) -> list[XbmMorphism]:
    if X.R.order != Y.R.order or X.group.order != Y.group.order:
        return []
    return [f for f in morphisms(X, Y, bound) if f.is_isomorphism()]
