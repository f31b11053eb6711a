"""The strict categorical ring of a crossed bimodule and its nerve.

Objects are elements of R and arrows ``r -> r + d(m)`` are pairs ``(r, m)``.
Level ``n`` of the nerve is the ring ``R + M^n`` whose elements are chains
of ``n`` composable arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .algebra import FinRing, RingHom, check_ring, check_ring_hom, ring_from_function
from .config import DEFAULT_BOUND
from .crossed import (
    CrossedBimodule, TruncatedSimplicialRing, XbmMorphism, check_morphism, moore_truncation_maps,
)
from .errors import BoundExceeded, NotComposable
from .report import Report
from .zmod import Coords, GroupHom, direct_sum, preimage, split

MAX_DEPTH = 3


@dataclass(frozen=True)
class CatRingArrow:
    r: Coords
    m: Coords


def source(a: CatRingArrow) -> Coords:
    return a.r


def target(X: CrossedBimodule, a: CatRingArrow) -> Coords:
    return X.R.add(a.r, X.d(a.m))


def identity_arrow(X: CrossedBimodule, r) -> CatRingArrow:
    return CatRingArrow(X.R.additive.reduce(r), X.group.zero)


def arrow_mult(X: CrossedBimodule, a0: CatRingArrow, a1: CatRingArrow) -> CatRingArrow:
    """``(r0 r1, r0 m1 + m0 r1 + m0 d(m1))``."""
    M = X.M
    m = X.group.sum([M.lmul(a0.r, a1.m), M.rmul(a0.m, a1.r), M.rmul(a0.m, X.d(a1.m))])
    return CatRingArrow(X.R.mul(a0.r, a1.r), m)


def arrow_add(X: CrossedBimodule, a0: CatRingArrow, a1: CatRingArrow) -> CatRingArrow:
    return CatRingArrow(X.R.add(a0.r, a1.r), X.group.add(a0.m, a1.m))


def arrow_compose(X: CrossedBimodule, a: CatRingArrow, b: CatRingArrow) -> CatRingArrow:
    """``a`` then ``b``."""
    if target(X, a) != source(b):
        raise NotComposable(f"target {target(X, a)} differs from source {source(b)}")
    return CatRingArrow(a.r, X.group.add(a.m, b.m))


def arrow_inverse(X: CrossedBimodule, a: CatRingArrow) -> CatRingArrow:
    return CatRingArrow(target(X, a), X.group.neg(a.m))


def arrows(X: CrossedBimodule) -> list[CatRingArrow]:
    return [CatRingArrow(r, m) for r in X.R.elements() for m in X.group.elements()]


def interchange_check(X: CrossedBimodule, bound: int = DEFAULT_BOUND) -> Report:
    """``(a;a')(b;b') = (ab);(a'b')`` over all composable pairs of pairs."""
    rep = Report("interchange")
    n = X.R.order * X.group.order
    if n ** 2 * X.group.order ** 2 > bound:
        raise BoundExceeded(f"{n ** 2 * X.group.order ** 2} interchange cases exceed bound {bound}")
    arr = arrows(X)
    by_source: dict = {}
    for a in arr:
        by_source.setdefault(a.r, []).append(a)
    pairs = [(a, b) for a in arr for b in by_source[target(X, a)]]
    for (a, a2), (b, b2) in product(pairs, repeat=2):
        lhs = arrow_mult(X, arrow_compose(X, a, a2), arrow_compose(X, b, b2))
        rhs = arrow_compose(X, arrow_mult(X, a, b), arrow_mult(X, a2, b2))
        if lhs != rhs:
            rep.add("interchange", ((a.r, a.m), (a2.m,), (b.r, b.m), (b2.m,)))
    rep.derived["cases"] = len(pairs) ** 2
    return rep


# ---------------------------------------------------------------------------
# nerve


@dataclass(frozen=True)
class NerveLevel:
    n: int
    ring: FinRing
    u: GroupHom


@dataclass(frozen=True)
class Nerve:
    X: CrossedBimodule
    levels: tuple[NerveLevel, ...]
    faces: dict  # n -> tuple of RingHom level n -> level n-1
    degeneracies: dict  # n -> tuple of RingHom level n -> level n+1

    def __hash__(self):
        return hash((self.X, self.levels))


def _level_parts(X: CrossedBimodule, n: int) -> list:
    return [X.R.additive] + [X.group] * n


def _unsplit(parts: Sequence[Coords]) -> Coords:
    return tuple(c for p in parts for c in p)


def _u(X: CrossedBimodule, r, ms) -> Coords:
    return X.R.add(r, X.d(X.group.sum(ms)) if ms else X.R.zero)


def nerve_level(X: CrossedBimodule, n: int) -> NerveLevel:
    """``R + M^n`` with the inductive product built from ``u_{n-1}``.

    Writing ``y = (r; m_1..m_{n-1})`` for the first ``n`` slots,
    ``(y0, m0)(y1, m1) = (y0 y1, u(y0) m1 + m0 u(y1) + m0 d(m1))``.
    """
    parts = _level_parts(X, n)
    G = direct_sum(*parts)
    M = X.M
    lower = nerve_level(X, n - 1).ring if n > 0 else X.R

    def mul(x, y):
        if n == 0:
            return X.R.mul(x, y)
        px, py = split(parts, x), split(parts, y)
        head = lower.mul(_unsplit(px[:-1]), _unsplit(py[:-1]))
        u0, u1 = _u(X, px[0], px[1:-1]), _u(X, py[0], py[1:-1])
        m0, m1 = px[-1], py[-1]
        tail = X.group.sum([M.lmul(u0, m1), M.rmul(m0, u1), M.rmul(m0, X.d(m1))])
        return head + tail

    unit = X.R.unit + X.group.zero * n
    ring = ring_from_function(G, mul, unit)
    u = GroupHom.from_function(G, X.R.additive, lambda x: _u(X, split(parts, x)[0], split(parts, x)[1:]))
    return NerveLevel(n, ring, u)


def _face(X: CrossedBimodule, n: int, i: int):
    def fn(x):
        p = split(_level_parts(X, n), x)
        r, ms = p[0], list(p[1:])
        if i == 0:
            return _unsplit([X.R.add(r, X.d(ms[0]))] + ms[1:])
        if i == n:
            return _unsplit([r] + ms[:-1])
        merged = ms[:i - 1] + [X.group.add(ms[i - 1], ms[i])] + ms[i + 1:]
        return _unsplit([r] + merged)

    return fn


def _degeneracy(X: CrossedBimodule, n: int, i: int):
    def fn(x):
        p = split(_level_parts(X, n), x)
        ms = list(p[1:])
        return _unsplit([p[0]] + ms[:i] + [X.group.zero] + ms[i:])

    return fn


def nerve(X: CrossedBimodule, n: int = 2) -> Nerve:
    if not 0 <= n <= MAX_DEPTH:
        raise ValueError(f"nerve depth must be between 0 and {MAX_DEPTH}")
    levels = tuple(nerve_level(X, k) for k in range(n + 1))
    faces, degs = {}, {}
    for k in range(1, n + 1):
        faces[k] = tuple(RingHom.from_function(levels[k].ring, levels[k - 1].ring, _face(X, k, i))
                         for i in range(k + 1))
    for k in range(n):
        degs[k] = tuple(RingHom.from_function(levels[k].ring, levels[k + 1].ring, _degeneracy(X, k, i))
                        for i in range(k + 1))
    return Nerve(X, levels, faces, degs)


def check_nerve(Nv: Nerve, exhaustive: bool = False) -> Report:
    """Ring axioms per level, ring-hom property of every structure map,
    the simplicial identities, ``u_n`` recursion, and agreement of level 1
    with the arrow product."""

    rep = Report("nerve")
    X = Nv.X
    for L in Nv.levels:
        rep.extend(check_ring(L.ring, exhaustive), f"level{L.n}")
    for k, maps in Nv.faces.items():
        for i, f in enumerate(maps):
            rep.extend(check_ring_hom(f), f"d{k}_{i}")
    for k, maps in Nv.degeneracies.items():
        for i, f in enumerate(maps):
            rep.extend(check_ring_hom(f), f"s{k}_{i}")
    d, s = Nv.faces, Nv.degeneracies
    top = len(Nv.levels) - 1

    def same(f, g):
        return f.hom.matrix == g.hom.matrix

    for k in range(2, top + 1):
        for j in range(k + 1):
            for i in range(j):
                if not same(d[k - 1][i] @ d[k][j], d[k - 1][j - 1] @ d[k][i]):
                    rep.add("face_face", (k, i, j))
    for k in range(top):
        ident = RingHom.identity(Nv.levels[k].ring)
        for j in range(k + 1):
            for i in range(k + 2):
                lhs = d[k + 1][i] @ s[k][j]
                if i in (j, j + 1):
                    ok = same(lhs, ident)
                elif i < j:
                    ok = same(lhs, s[k - 1][j - 1] @ d[k][i])
                else:
                    ok = same(lhs, s[k - 1][j] @ d[k][i - 1])
                if not ok:
                    rep.add("face_degeneracy", (k, i, j))
    for k in range(1, top):
        for j in range(k):
            for i in range(j + 1):
                if not same(s[k][i] @ s[k - 1][j], s[k][j + 1] @ s[k - 1][i]):
                    rep.add("degeneracy_degeneracy", (k, i, j))
    for L in Nv.levels:
        if L.n == 0:
            if L.u.matrix != GroupHom.identity(X.R.additive).matrix:
                rep.add("u0_identity", ())
            continue
        prev = Nv.levels[L.n - 1]
        parts = _level_parts(X, L.n)
        for x in (L.ring.additive.basis(j) for j in range(L.ring.additive.rank)):
            p = split(parts, x)
            if L.u(x) != X.R.add(prev.u(_unsplit(p[:-1])), X.d(p[-1])):
                rep.add("u_recursion", (L.n, x))
    if top >= 1:
        R1 = Nv.levels[1].ring
        gens = [R1.additive.basis(j) for j in range(R1.additive.rank)]
        for x, y in product(gens, repeat=2):
            a = CatRingArrow(*split(_level_parts(X, 1), x))
            b = CatRingArrow(*split(_level_parts(X, 1), y))
            c = arrow_mult(X, a, b)
            if R1.mul(x, y) != c.r + c.m:
                rep.add("level1_product", (x, y))
    return rep


def truncated(Nv: Nerve) -> TruncatedSimplicialRing:
    if len(Nv.levels) < 3:
        raise ValueError("truncation needs levels 0, 1, 2")
    return TruncatedSimplicialRing(
        tuple(L.ring for L in Nv.levels[:3]),
        {1: Nv.faces[1], 2: Nv.faces[2]},
        {0: Nv.degeneracies[0], 1: Nv.degeneracies[1]},
    )


def moore_roundtrip(X: CrossedBimodule) -> tuple[CrossedBimodule, XbmMorphism, Report]:
    """Truncate the level-2 nerve and compare with ``X``.

    On the nerve, ``ker d0`` at level 1 is ``{(-d m; m)}``, the Moore
    differential sends that class to ``-d m`` and ``ker d0 & ker d1`` at
    level 2 is trivial.  The comparison morphism is ``(id_R, -pr_M)``.
    """
    Y, inc1, proj = moore_truncation_maps(truncated(nerve(X, 2)))
    rep = Report("moore_roundtrip")
    parts = _level_parts(X, 1)
    beta = GroupHom.from_function(Y.group, X.group,
                                  lambda y: X.group.neg(split(parts, inc1(preimage(proj, y)))[1]))
    f = XbmMorphism(Y, X, RingHom.identity(X.R), beta)
    rep.extend(check_morphism(f), "comparison")
    if rep.ok and not f.is_isomorphism():
        rep.add("comparison_not_bijective", ())
    return Y, f, rep
