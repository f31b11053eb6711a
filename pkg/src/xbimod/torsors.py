"""Torsors over a one-point base for a crossed bimodule ``M -> R``.

A torsor is a finite free transitive M-set ``T`` with a map ``s: T -> R``
satisfying ``s(x + m) = s(x) + d(m)``.  Labels are kept sorted, so the
first label serves as the base point and quotient carriers use the least
element of each orbit as representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable

from .crossed import CrossedBimodule
from .errors import EmptyLiftSet, MismatchedParent
from .report import Report
from .zmod import Coords, solve

Label = Hashable


@dataclass(frozen=True)
class Torsor:
    X: CrossedBimodule
    carrier: tuple            # sorted labels
    act: tuple[tuple[int, ...], ...]  # act[i][k]: index of carrier[i] + M-element k
    s: tuple[Coords, ...]

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.carrier)}

    @cached_property
    def m_elements(self) -> list[Coords]:
        return list(self.X.group.elements())

    @cached_property
    def _m_index(self) -> dict:
        return {m: k for k, m in enumerate(self.m_elements)}

    def index(self, x: Label) -> int:
        return self._index[x]

    def add(self, x: Label, m) -> Label:
        return self.carrier[self.act[self._index[x]][self._m_index[self.X.group.reduce(m)]]]

    def triv(self, x: Label) -> Coords:
        return self.s[self._index[x]]

    @property
    def base(self) -> Label:
        return self.carrier[0]

    def offset(self, x: Label) -> Coords:
        """The unique ``m`` with ``base + m = x``."""
        row = self.act[0]
        return self.m_elements[row.index(self._index[x])]


def make_torsor(X: CrossedBimodule, labels: Iterable[Label], add: Callable, s: Callable) -> Torsor:
    carrier = tuple(sorted(set(labels)))
    index = {x: i for i, x in enumerate(carrier)}
    ms = list(X.group.elements())
    act = tuple(tuple(index[add(x, m)] for m in ms) for x in carrier)
    return Torsor(X, carrier, act, tuple(X.R.additive.reduce(s(x)) for x in carrier))


def check_torsor(T: Torsor) -> Report:
    rep = Report("torsor")
    X, G = T.X, T.X.group
    ms = T.m_elements
    zero = T._m_index[G.zero]
    if len(T.carrier) != len(ms):
        rep.add("free", (len(T.carrier), len(ms)))
    if sorted(set(T.act[0])) != list(range(len(T.carrier))):
        rep.add("transitive", (T.base,))
    for i, x in enumerate(T.carrier):
        if T.act[i][zero] != i:
            rep.add("unit_action", (x,))
        for k, m in enumerate(ms):
            j = T.act[i][k]
            if T.s[j] != X.R.add(T.s[i], X.d(m)):
                rep.add("equivariance", (x, m))
            for k2, m2 in enumerate(ms):
                if T.act[j][k2] != T.act[i][T._m_index[G.add(m, m2)]]:
                    rep.add("action_associative", (x, m, m2))
    return rep


def trivial_torsor(X: CrossedBimodule, r) -> Torsor:
    """Carrier ``M`` acting on itself, ``s(m) = r + d(m)``."""
    r = X.R.additive.reduce(r)
    return make_torsor(X, X.group.elements(), X.group.add, lambda m: X.R.add(r, X.d(m)))


def zero_object(X: CrossedBimodule) -> Torsor:
    return trivial_torsor(X, X.R.zero)


def unit_object(X: CrossedBimodule) -> Torsor:
    return trivial_torsor(X, X.R.unit)


def _same_parent(T: Torsor, U: Torsor) -> None:
    if T.X != U.X:
        raise MismatchedParent("torsors over different crossed bimodules")


def torsor_sum(T: Torsor, U: Torsor) -> Torsor:
    """``(T x U) / {(x + m, y - m)}`` with ``s = s_T + s_U``; class label ``(base_T, y)``."""
    _same_parent(T, U)
    X = T.X

    def canon(x, y):
        return (T.base, U.add(y, T.offset(x)))

    labels = [canon(T.base, y) for y in U.carrier]
    return make_torsor(X, labels,
                       lambda c, m: canon(T.add(c[0], m), c[1]),
                       lambda c: X.R.add(T.triv(c[0]), U.triv(c[1])))


def product_correction(X: CrossedBimodule, r, r2, m, m2) -> Coords:
    """``r m' + m r' + m d(m')``."""
    M = X.M
    return X.group.sum([M.lmul(r, m2), M.rmul(m, r2), M.rmul(m, X.d(m2))])


def torsor_product(T: Torsor, U: Torsor) -> Torsor:
    """``(T x U x M) / (M x M)`` with ``<e + m, e' + m'> = <e, e'> + s(e) m' + m s'(e') + m d(m')``.

    The class of ``(e, e', m0)`` is labelled ``(base, base', m0 + c)`` where
    ``c`` is the correction carrying ``(base, base')`` to ``(e, e')``;
    ``s(e, e', m0) = s(e) s'(e') + d(m0)`` and ``M`` translates ``m0``.
    """
    _same_parent(T, U)
    X, G = T.X, T.X.group

    def canon(e, e2, m0):
        c = product_correction(X, T.triv(T.base), U.triv(U.base), T.offset(e), U.offset(e2))
        return (T.base, U.base, G.add(m0, c))

    labels = [canon(T.base, U.base, m) for m in G.elements()]
    return make_torsor(X, labels,
                       lambda c, m: (c[0], c[1], G.add(c[2], m)),
                       lambda c: X.R.add(X.R.mul(T.triv(c[0]), U.triv(c[1])), X.d(c[2])))


def product_class(T: Torsor, U: Torsor, e, e2, m0) -> tuple:
    """Label of the class of ``(e, e', m0)`` in ``torsor_product(T, U)``."""
    X = T.X
    c = product_correction(X, T.triv(T.base), U.triv(U.base), T.offset(e), U.offset(e2))
    return (T.base, U.base, X.group.add(m0, c))


def sum_class(T: Torsor, U: Torsor, x, y) -> tuple:
    return (T.base, U.add(y, T.offset(x)))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class TorsorMorphism:
    source: Torsor
    target: Torsor
    mapping: tuple[int, ...]  # source index -> target index

    def __call__(self, x):
        return self.target.carrier[self.mapping[self.source.index(x)]]


def morphism_from_function(T: Torsor, U: Torsor, fn: Callable) -> TorsorMorphism:
    return TorsorMorphism(T, U, tuple(U.index(fn(x)) for x in T.carrier))


def check_torsor_morphism(f: TorsorMorphism) -> Report:
    rep = Report("torsor_morphism")
    T, U = f.source, f.target
    _same_parent(T, U)
    for x in T.carrier:
        if U.triv(f(x)) != T.triv(x):
            rep.add("trivialization", (x,))
        for m in T.m_elements:
            if f(T.add(x, m)) != U.add(f(x), m):
                rep.add("equivariance", (x, m))
    if len(set(f.mapping)) != len(U.carrier):
        rep.add("bijective", ())
    return rep


def compose_torsor_morphisms(f: TorsorMorphism, g: TorsorMorphism) -> TorsorMorphism:
    """``g`` after ``f``."""
    return TorsorMorphism(f.source, g.target, tuple(g.mapping[i] for i in f.mapping))


def find_torsor_isos(T: Torsor, U: Torsor) -> list[TorsorMorphism]:
    """Every equivariant map is fixed by the image of the base point."""
    _same_parent(T, U)
    out = []
    for y in U.carrier:
        f = morphism_from_function(T, U, lambda x, y=y: U.add(y, T.offset(x)))
        if check_torsor_morphism(f).ok:
            out.append(f)
    return out


def trivialize(T: Torsor) -> tuple[Coords, TorsorMorphism]:
    """``T`` is isomorphic to ``trivial(s(base))`` via ``base + m -> m``."""
    r = T.triv(T.base)
    return r, morphism_from_function(T, trivial_torsor(T.X, r), T.offset)


def left_unitor(T: Torsor) -> TorsorMorphism:
    """``I * T -> T``, class ``(0, e, m0) -> e + m0``."""
    P = torsor_product(unit_object(T.X), T)
    return morphism_from_function(P, T, lambda c: T.add(c[1], c[2]))


def right_unitor(T: Torsor) -> TorsorMorphism:
    """``T * I -> T``, class ``(e, 0, m0) -> e + m0``."""
    P = torsor_product(T, unit_object(T.X))
    return morphism_from_function(P, T, lambda c: T.add(c[0], c[2]))


def product_map(f: TorsorMorphism, g: TorsorMorphism) -> TorsorMorphism:
    """``f * g`` on classes: ``(e, e', m0) -> (f e, g e', m0)``."""
    P = torsor_product(f.source, g.source)
    Q = torsor_product(f.target, g.target)
    return morphism_from_function(P, Q, lambda c: product_class(f.target, g.target, f(c[0]), g(c[1]), c[2]))


def sum_symmetry(T: Torsor, U: Torsor) -> TorsorMorphism:
    return morphism_from_function(torsor_sum(T, U), torsor_sum(U, T),
                                  lambda c: sum_class(U, T, c[1], c[0]))


# ---------------------------------------------------------------------------
# the action of a butterfly


def lift_carrier(B, T: Torsor) -> list[tuple]:
    """All ``N``-equivariant lifts ``y~: T -> E`` of ``s_T`` along ``pi``,
    each as its tuple of values over ``T.carrier``."""
    E = B.E
    candidates = solve(B.pi.hom, T.triv(T.base))
    if not candidates:
        raise EmptyLiftSet("pi has no preimage over the base point")
    lifts = []
    for e in candidates:
        vals = tuple(E.add(e, B.kappa(T.offset(v))) for v in T.carrier)
        lifts.append(vals)
    for vals in lifts:
        for v, ev in zip(T.carrier, vals):
            if B.pi(ev) != T.triv(v):
                raise EmptyLiftSet("constructed lift does not cover the trivialization")
    return sorted(lifts)


def apply_butterfly(B, T: Torsor) -> Torsor:
    """The target torsor of equivariant lifts; ``M`` acts by ``+ iota(m)`` and
    ``x(y~) = jay(y~(v))``, independent of ``v``."""
    if T.X != B.source:
        raise MismatchedParent("torsor is not over the butterfly's source")
    E, Y = B.E, B.target
    lifts = lift_carrier(B, T)
    for vals in lifts:
        xs = {B.jay(ev) for ev in vals}
        if len(xs) != 1:
            raise AssertionError("trivialization of a lift depends on the point")

    def add(vals, m):
        im = B.iota(m)
        return tuple(E.add(ev, im) for ev in vals)

    return make_torsor(Y, lifts, add, lambda vals: B.jay(vals[0]))


def monoidal_comparison(B, T: Torsor, U: Torsor) -> TorsorMorphism:
    """``Phi(T) * Phi(U) -> Phi(T * U)``: the class of ``(y~, y~', m0)`` goes to
    the lift ``(v, v', n0) -> y~(v) y~'(v') + kappa(n0) + iota(m0)``."""
    E = B.E
    PT, PU = apply_butterfly(B, T), apply_butterfly(B, U)
    left = torsor_product(PT, PU)
    TU = torsor_product(T, U)
    right = apply_butterfly(B, TU)

    def fn(c):
        a, b, m0 = c
        vals = []
        for v, v2, n0 in TU.carrier:
            ev = E.mul(a[T.index(v)], b[U.index(v2)])
            vals.append(E.add(E.add(ev, B.kappa(n0)), B.iota(m0)))
        return tuple(vals)

    return morphism_from_function(left, right, fn)


def check_lift_equivariance(B, T: Torsor, U: Torsor) -> Report:
    """The two product twists, element-wise:

    ``y~(v+n) y~'(v'+n') = y~(v) y~'(v') + kappa(y(v) n' + n y'(v') + n d(n'))`` and
    ``(e + iota m)(e' + iota m') = e e' + iota(x(e) m' + m x'(e') + m d(m'))``.
    """
    rep = Report("lift_equivariance")
    E, X, Y = B.E, B.source, B.target
    for a in lift_carrier(B, T):
        for b in lift_carrier(B, U):
            for v in T.carrier:
                for v2 in U.carrier:
                    base = E.mul(a[T.index(v)], b[U.index(v2)])
                    for n in X.group.elements():
                        for n2 in X.group.elements():
                            lhs = E.mul(a[T.index(T.add(v, n))], b[U.index(U.add(v2, n2))])
                            corr = product_correction(X, T.triv(v), U.triv(v2), n, n2)
                            if lhs != E.add(base, B.kappa(corr)):
                                rep.add("kappa_twist", (v, v2, n, n2))
                    x, x2 = B.jay(a[0]), B.jay(b[0])
                    e, e2 = a[T.index(v)], b[U.index(v2)]
                    for m in Y.group.elements():
                        for m2 in Y.group.elements():
                            lhs = E.mul(E.add(e, B.iota(m)), E.add(e2, B.iota(m2)))
                            corr = product_correction(Y, x, x2, m, m2)
                            if lhs != E.add(E.mul(e, e2), B.iota(corr)):
                                rep.add("iota_twist", (v, v2, m, m2))
    return rep


def torsor_summary(T: Torsor) -> dict:
    r, _ = trivialize(T)
    return {"size": len(T.carrier), "base_value": list(r)}
