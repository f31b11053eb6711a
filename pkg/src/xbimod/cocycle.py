"""Cech descent data with constant coefficients.

A cocycle on the index set ``{0, .., n-1}`` is ``(r_i, m_ij)`` with
``r_j - r_i = d(m_ij)`` and ``m_ij + m_jk = m_ik``.  Every overlap is
nonempty, so a cocycle is fixed by ``r_0`` and the row ``m_0j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import FinRing, RingHom, ring_from_function
from .config import DEFAULT_BOUND
from .crossed import CrossedBimodule, pi0
from .errors import BoundExceeded, MismatchedCover, MismatchedParent, ShapeMismatch
from .report import Report
from .zmod import Coords, GroupHom, preimage, solve


@dataclass(frozen=True)
class Cocycle:
    X: CrossedBimodule
    r: tuple[Coords, ...]
    m: tuple[tuple[Coords, ...], ...]

    @property
    def n(self) -> int:
        return len(self.r)


def make_cocycle(X: CrossedBimodule, r, m) -> Cocycle:
    n = len(r)
    if n < 1 or len(m) != n or any(len(row) != n for row in m):
        raise ShapeMismatch("need |I| >= 1 values r_i and an |I| x |I| array m_ij")
    R, G = X.R.additive, X.group
    return Cocycle(X, tuple(R.reduce(x) for x in r), tuple(tuple(G.reduce(x) for x in row) for row in m))


def from_row(X: CrossedBimodule, r0, row) -> Cocycle:
    """The cocycle with ``r_0 = r0`` and ``m_0j = row[j]`` (``row[0] = 0``)."""
    G, R = X.group, X.R
    n = len(row)
    r = [R.add(r0, X.d(row[j])) for j in range(n)]
    m = [[G.sub(row[j], row[i]) for j in range(n)] for i in range(n)]
    return make_cocycle(X, r, m)


def constant_cocycle(X: CrossedBimodule, r, n: int) -> Cocycle:
    return from_row(X, r, [X.group.zero] * n)


def check_cocycle(z: Cocycle) -> Report:
    rep = Report("cocycle")
    X, G, R = z.X, z.X.group, z.X.R
    n = z.n
    for i in range(n):
        if z.m[i][i] != G.zero:
            rep.add("diagonal_zero", (i,))
        for j in range(n):
            if R.sub(z.r[j], z.r[i]) != X.d(z.m[i][j]):
                rep.add("boundary_condition", (i, j))
            for k in range(n):
                if G.add(z.m[i][j], z.m[j][k]) != z.m[i][k]:
                    rep.add("cocycle_condition", (i, j, k))
    return rep


def _same_cover(z: Cocycle, w: Cocycle) -> None:
    if z.X != w.X:
        raise MismatchedParent("cocycles over different crossed bimodules")
    if z.n != w.n:
        raise MismatchedCover(f"index sets of sizes {z.n} and {w.n}")


def cocycle_sum(z: Cocycle, w: Cocycle) -> Cocycle:
    """``(r_i + r'_i, m_ij + m'_ij)``."""
    _same_cover(z, w)
    X, G, R = z.X, z.X.group, z.X.R
    return Cocycle(X, tuple(R.add(a, b) for a, b in zip(z.r, w.r)),
                   tuple(tuple(G.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(z.m, w.m)))


def cocycle_mul(z: Cocycle, w: Cocycle) -> Cocycle:
    """``(r_i r'_i, r_i m'_ij + m_ij r'_j)``."""
    _same_cover(z, w)
    X, G, R, M = z.X, z.X.group, z.X.R, z.X.M
    n = z.n
    r = tuple(R.mul(z.r[i], w.r[i]) for i in range(n))
    m = tuple(tuple(G.add(M.lmul(z.r[i], w.m[i][j]), M.rmul(z.m[i][j], w.r[j])) for j in range(n))
              for i in range(n))
    return Cocycle(X, r, m)


def act(c, z: Cocycle) -> Cocycle:
    """``r_i -> r_i + d(c_i)`` and ``m_ij -> m_ij + c_j - c_i``."""
    if len(c) != z.n:
        raise MismatchedCover("descent morphism has the wrong number of components")
    X, G, R = z.X, z.X.group, z.X.R
    c = [G.reduce(x) for x in c]
    n = z.n
    return Cocycle(X, tuple(R.add(z.r[i], X.d(c[i])) for i in range(n)),
                   tuple(tuple(G.add(z.m[i][j], G.sub(c[j], c[i])) for j in range(n)) for i in range(n)))


def are_isomorphic(z: Cocycle, w: Cocycle):
    """Some ``c`` with ``act(c, z) = w``, or None.  ``c_0`` solves
    ``d(c_0) = r'_0 - r_0`` and the rest follows from ``m_0j``."""
    _same_cover(z, w)
    X, G = z.X, z.X.group
    for c0 in solve(X.boundary, X.R.sub(w.r[0], z.r[0])):
        c = tuple(G.add(c0, G.sub(w.m[0][j], z.m[0][j])) for j in range(z.n))
        if act(c, z) == w:
            return c
    return None


def all_cocycles(X: CrossedBimodule, n: int, bound: int = DEFAULT_BOUND) -> list[Cocycle]:
    """Every cocycle on ``n`` indices, in lexicographic order of ``(r_0, m_01, ..)``."""
    count = X.R.order * X.group.order ** (n - 1)
    if count > bound:
        raise BoundExceeded(f"{count} cocycles > {bound}")
    G = X.group
    out = []
    for r0 in X.R.elements():
        for tail in product(list(G.elements()), repeat=n - 1):
            out.append(from_row(X, r0, (G.zero,) + tail))
    return out


@dataclass(frozen=True)
class ClassRing:
    """Isomorphism classes of cocycles with induced sum and product.

    A class is labelled by ``[r_0]`` in ``pi0``; ``ring`` multiplies labels
    through cocycle products of representatives and ``iso`` is the labelling
    map ``ring -> pi0``, checked to be a ring isomorphism.
    """

    reps: tuple[Cocycle, ...]
    ring: FinRing
    pi0: FinRing
    iso: RingHom
    report: Report


def _key(z: Cocycle) -> tuple:
    return (z.r, z.m)


def classes(X: CrossedBimodule, n: int, bound: int = DEFAULT_BOUND) -> ClassRing:
    """Enumerate classes, check they match ``pi0`` under ``[r_0]``, and that
    sum, product and unit are respected."""
    zs = all_cocycles(X, n, bound)
    if len(zs) * X.group.order ** n > bound:
        raise BoundExceeded("orbit computation exceeds bound")
    G = X.group
    cs = list(product(list(G.elements()), repeat=n))
    rep_of: dict = {}
    for z in zs:
        if _key(z) in rep_of:
            continue
        orbit = {_key(act(c, z)): act(c, z) for c in cs}
        least = orbit[min(orbit)]
        for k in orbit:
            rep_of[k] = least
    reps = tuple(sorted({_key(v): v for v in rep_of.values()}.values(), key=_key))
    B, proj = pi0(X)
    rep = Report("cocycle_classes")
    to_b = {_key(z): proj(z.r[0]) for z in reps}
    if len(set(to_b.values())) != len(reps) or len(reps) != B.order:
        rep.add("classes_not_pi0", (len(reps), B.order))
    by_b = {b: z for z in reps for b in [to_b[_key(z)]]}

    def cls(z):
        return rep_of[_key(z)]

    for a, b in product(reps, repeat=2):
        s, p = cls(cocycle_sum(a, b)), cls(cocycle_mul(a, b))
        if to_b[_key(s)] != B.add(to_b[_key(a)], to_b[_key(b)]):
            rep.add("sum_not_additive", (to_b[_key(a)], to_b[_key(b)]))
        if to_b[_key(p)] != B.mul(to_b[_key(a)], to_b[_key(b)]):
            rep.add("mul_not_multiplicative", (to_b[_key(a)], to_b[_key(b)]))
    unit = cls(constant_cocycle(X, X.R.unit, n))
    if to_b[_key(unit)] != B.unit:
        rep.add("unit_class", ())
    rep.derived["cocycles"] = len(zs)
    rep.derived["classes"] = len(reps)

    ring, iso = B, RingHom.identity(B)
    if rep.ok:
        def mul(x, y):
            return to_b[_key(cls(cocycle_mul(by_b[x], by_b[y])))]

        ring = ring_from_function(B.additive, mul, to_b[_key(unit)])
        iso = RingHom(ring, B, GroupHom.identity(B.additive))
    return ClassRing(reps, ring, B, iso, rep)


def class_of(X: CrossedBimodule, z: Cocycle) -> Coords:
    """The element of ``pi0`` attached to ``z``."""
    _, proj = pi0(X)
    return proj(z.r[0])


def descent_trivialization(z: Cocycle) -> tuple[Cocycle, tuple]:
    """The constant cocycle isomorphic to ``z`` and the morphism ``c_i = -m_0i``."""
    G = z.X.group
    c = tuple(G.neg(z.m[0][i]) for i in range(z.n))
    return act(c, z), c


def lift_pi0(X: CrossedBimodule, b) -> Coords:
    _, proj = pi0(X)
    return preimage(proj.hom, b)
