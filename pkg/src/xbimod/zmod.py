"""Exact linear algebra over finite abelian groups.

A finite abelian group is a list of moduli ``(n_1, ..., n_k)``; an element is a
tuple of residues ``x_i in [0, n_i)``.  A homomorphism is an integer matrix
whose column ``j`` is the image of the ``j``-th generator, so rows are indexed
by target generators.  Kernels, images and cokernels are computed from Smith
normal forms of relation matrices, never by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, prod
from operator import mul
from typing import Callable, Iterator, Sequence

from .config import DEFAULT_BOUND
from .errors import BoundExceeded, ShapeMismatch

Coords = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# integer matrices


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int | None = None) -> list[list[int]]:
    """Integer matrix product; ``inner`` fixes the shared dimension when A has no rows."""
    if inner is None:
        inner = len(A[0]) if A else len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def _snf(A: Sequence[Sequence[int]]):
    """Smith normal form with both transforms and their inverses.

    Returns ``(U, Uinv, D, V, Vinv)`` with ``U A V = D``.
    """
    D = [list(map(int, row)) for row in A]
    p = len(D)
    q = len(D[0]) if p else 0
    U, Uinv = identity_matrix(p), identity_matrix(p)
    V, Vinv = identity_matrix(q), identity_matrix(q)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for row in M:
                    row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            for M in (D, U):
                rd, rs = M[dst], M[src]
                for k in range(len(rd)):
                    rd[k] += c * rs[k]
            for row in Uinv:
                row[src] -= c * row[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        if c:
            for M in (D, V):
                for row in M:
                    row[dst] += c * row[src]
            rd, rs = Vinv[src], Vinv[dst]
            for k in range(len(rd)):
                rd[k] -= c * rs[k]

    for t in range(min(p, q)):
        pivot = None
        for i in range(t, p):
            for j in range(t, q):
                if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, p):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, q):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            rest = [(abs(D[i][t]), i, None) for i in range(t + 1, p) if D[i][t]]
            rest += [(abs(D[t][j]), None, j) for j in range(t + 1, q) if D[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, p) for j in range(t + 1, q) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
            for row in Uinv:
                row[t] = -row[t]
    return U, Uinv, D, V, Vinv


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U A V = D``, U and V unimodular, D diagonal.

    The diagonal is non-negative and each entry divides the next; zeros
    come last.

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> D
    [[2, 0], [0, 4]]
    """
    U, _, D, V, _ = _snf(A)
    return U, D, V


def _diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(B: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis (as column vectors) of ``{z in Z^ncols : B z = 0}``."""
    if not B:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, _, D, V, _ = _snf(B)
    rank = sum(1 for d in _diagonal(D) if d)
    return [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def integer_solve(B: Sequence[Sequence[int]], t: Sequence[int], ncols: int) -> list[int] | None:
    """One integer solution ``z`` of ``B z = t``, or None."""
    if not B:
        return [0] * ncols
    U, _, D, V, _ = _snf(B)
    c = [sum(U[i][k] * t[k] for k in range(len(t))) for i in range(len(U))]
    w = [0] * ncols
    for i, ci in enumerate(c):
        d = D[i][i] if i < ncols else 0
        if d:
            if ci % d:
                return None
            w[i] = ci // d
        elif ci:
            return None
    return [sum(V[i][k] * w[k] for k in range(ncols)) for i in range(ncols)]


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinAbGroup:
    """``Z/n_1 + ... + Z/n_k``.  Moduli equal to 1 are allowed (trivial factors)."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        if any(n < 1 for n in moduli):
            raise ValueError(f"moduli must be >= 1, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def zero(self) -> Coords:
        return (0,) * self.rank

    @cached_property
    def _basis(self) -> tuple[Coords, ...]:
        return tuple(self.reduce([int(i == j) for i in range(self.rank)]) for j in range(self.rank))

    def basis(self, j: int) -> Coords:
        return self._basis[j]

    def reduce(self, x: Sequence[int]) -> Coords:
        if len(x) != self.rank:
            raise ShapeMismatch(f"element of length {len(x)} in group of rank {self.rank}")
        return tuple(int(a) % n for a, n in zip(x, self.moduli))

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and all(0 <= a < n for a, n in zip(x, self.moduli))

    def add(self, x: Coords, y: Coords) -> Coords:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def sub(self, x: Coords, y: Coords) -> Coords:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.moduli))

    def neg(self, x: Coords) -> Coords:
        return tuple(-a % n for a, n in zip(x, self.moduli))

    def scale(self, k: int, x: Coords) -> Coords:
        return tuple(k * a % n for a, n in zip(x, self.moduli))

    def sum(self, xs) -> Coords:
        acc = [0] * self.rank
        for x in xs:
            for i, a in enumerate(x):
                acc[i] += a
        return self.reduce(acc)

    def element_order(self, x: Coords) -> int:
        k = 1
        for a, n in zip(x, self.moduli):
            k = k * (n // gcd(a, n)) // gcd(k, n // gcd(a, n))
        return k

    @cached_property
    def exponent(self) -> int:
        k = 1
        for n in self.moduli:
            k = k * n // gcd(k, n)
        return k

    def elements(self) -> Iterator[Coords]:
        """All elements in lexicographic order of coordinates."""
        return product(*(range(n) for n in self.moduli))

    def canonical(self) -> tuple["FinAbGroup", "GroupHom"]:
        """Invariant-factor form ``C`` and an isomorphism ``C -> self``."""
        return subgroup(self, [self.basis(j) for j in range(self.rank)])

    def invariants(self) -> tuple[int, ...]:
        return self.canonical()[0].moduli

    def is_isomorphic(self, other: "FinAbGroup") -> bool:
        return self.invariants() == other.invariants()

    def __str__(self) -> str:
        if self.order == 1:
            return "0"
        return " + ".join(f"Z/{n}" for n in self.moduli if n > 1)


def trivial_group() -> FinAbGroup:
    return FinAbGroup(())


def cyclic(n: int) -> FinAbGroup:
    return FinAbGroup((n,))


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(tuple(n for G in groups for n in G.moduli))


def _offsets(groups: Sequence[FinAbGroup]) -> list[int]:
    out, k = [], 0
    for G in groups:
        out.append(k)
        k += G.rank
    return out


def split(groups: Sequence[FinAbGroup], x: Coords) -> list[Coords]:
    """Split an element of ``direct_sum(*groups)`` into its components."""
    return [tuple(x[o:o + G.rank]) for o, G in zip(_offsets(groups), groups)]


def injection(groups: Sequence[FinAbGroup], i: int) -> "GroupHom":
    S = direct_sum(*groups)
    o = _offsets(groups)[i]
    G = groups[i]
    return GroupHom.from_function(G, S, lambda x: S.reduce([0] * o + list(x) + [0] * (S.rank - o - G.rank)))


def projection(groups: Sequence[FinAbGroup], i: int) -> "GroupHom":
    S = direct_sum(*groups)
    return GroupHom.from_function(S, groups[i], lambda x: split(groups, x)[i])


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by a ``target.rank x source.rank`` integer matrix.

    Construction does not enforce well-definedness so that checks can report
    it; use :meth:`is_well_defined` or :meth:`violations`.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: Matrix

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.matrix)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise ShapeMismatch(
                f"matrix shape {len(rows)}x{len(rows[0]) if rows else '?'} "
                f"does not match {self.target.rank}x{self.source.rank}"
            )
        rows = tuple(tuple(a % m for a in row) for row, m in zip(rows, self.target.moduli))
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_function(cls, source: FinAbGroup, target: FinAbGroup, fn: Callable[[Coords], Sequence[int]]) -> "GroupHom":
        cols = [target.reduce(fn(source.basis(j))) for j in range(source.rank)]
        return cls(source, target, tuple(tuple(c[i] for c in cols) for i in range(target.rank)))

    @classmethod
    def from_columns(cls, source: FinAbGroup, target: FinAbGroup, cols: Sequence[Sequence[int]]) -> "GroupHom":
        return cls(source, target, tuple(tuple(c[i] for c in cols) for i in range(target.rank)))

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> "GroupHom":
        return cls(source, target, tuple((0,) * source.rank for _ in range(target.rank)))

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls(G, G, tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank)))

    def column(self, j: int) -> Coords:
        return tuple(row[j] for row in self.matrix)

    def __call__(self, x: Sequence[int]) -> Coords:
        return tuple(sum(map(mul, row, x)) % m for row, m in zip(self.matrix, self.target.moduli))

    def violations(self) -> list[tuple[int, int]]:
        """Generator pairs ``(i, j)`` where ``A[i][j] * n_j`` is not 0 mod ``m_i``."""
        return [
            (i, j)
            for i, m in enumerate(self.target.moduli)
            for j, n in enumerate(self.source.moduli)
            if self.matrix[i][j] * n % m
        ]

    def is_well_defined(self) -> bool:
        return not self.violations()

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """``self @ other`` is ``self`` after ``other``."""
        if other.target != self.source:
            raise ShapeMismatch("composition of non-composable homomorphisms")
        return GroupHom.from_function(other.source, self.target, lambda x: self(other(x)))

    def __add__(self, other: "GroupHom") -> "GroupHom":
        self._same_shape(other)
        return GroupHom(self.source, self.target, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, tuple(tuple(-a for a in r) for r in self.matrix))

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)

    def _same_shape(self, other: "GroupHom") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeMismatch("homomorphisms have different source or target")

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.matrix for a in row)

    def is_injective(self) -> bool:
        return kernel(self)[0].order == 1

    def is_surjective(self) -> bool:
        return image(self)[0].order == self.target.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValueError("homomorphism is not invertible")
        return GroupHom.from_columns(
            self.target, self.source,
            [preimage(self, self.target.basis(j)) for j in range(self.target.rank)],
        )


def relation_matrix(f: GroupHom) -> list[list[int]]:
    """``[A | diag(m)]``: its integer kernel describes ``f`` on lifts to ``Z^k``."""
    r = f.target.rank
    return [list(f.matrix[i]) + [f.target.moduli[i] * (i == j) for j in range(r)] for i in range(r)]


def subgroup(G: FinAbGroup, gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, GroupHom]:
    """The subgroup generated by ``gens`` in invariant-factor form, with its inclusion."""
    gens = [G.reduce(g) for g in gens]
    t = len(gens)
    if t == 0:
        K = trivial_group()
        return K, GroupHom.zero(K, G)
    # relations: c in Z^t with sum c_l g_l = 0 in G
    B = [[g[i] for g in gens] + [G.moduli[i] * (i == j) for j in range(G.rank)] for i in range(G.rank)]
    rels = [z[:t] for z in integer_kernel(B, t + G.rank)]
    Q = [[z[i] for z in rels] for i in range(t)]
    _, Uinv, D, _, _ = _snf(Q)
    diag = _diagonal(D) + [0] * (t - min(t, len(rels)))
    moduli, cols = [], []
    for i, d in enumerate(diag):
        if d == 0:
            raise AssertionError("infinite subgroup of a finite group")
        if d > 1:
            moduli.append(d)
            cols.append(G.sum(G.scale(Uinv[l][i], gens[l]) for l in range(t)))
    K = FinAbGroup(tuple(moduli))
    return K, GroupHom.from_columns(K, G, cols)


def kernel(f: GroupHom) -> tuple[FinAbGroup, GroupHom]:
    """``(K, incl)`` with ``incl`` injective onto ``ker f``."""
    k = f.source.rank
    lattice = integer_kernel(relation_matrix(f), k + f.target.rank)
    return subgroup(f.source, [z[:k] for z in lattice])


def image(f: GroupHom) -> tuple[FinAbGroup, GroupHom]:
    return subgroup(f.target, [f.column(j) for j in range(f.source.rank)])


def cokernel(f: GroupHom) -> tuple[FinAbGroup, GroupHom]:
    """``(C, proj)`` with ``proj: target -> C`` surjective and ``proj . f = 0``."""
    X = relation_matrix(f)
    r = f.target.rank
    if r == 0:
        C = trivial_group()
        return C, GroupHom.zero(f.target, C)
    U, _, D, _, _ = _snf(X)
    diag = _diagonal(D)
    keep = [i for i, d in enumerate(diag) if d > 1]
    C = FinAbGroup(tuple(diag[i] for i in keep))
    return C, GroupHom(f.target, C, tuple(tuple(U[i]) for i in keep))


def quotient(G: FinAbGroup, incl: GroupHom) -> tuple[FinAbGroup, GroupHom]:
    """``G / im(incl)`` with its projection."""
    return cokernel(incl)


def pullback(f: GroupHom, g: GroupHom) -> tuple[FinAbGroup, GroupHom, GroupHom, GroupHom]:
    """``{(a, b) : f(a) = g(b)}`` as ``(P, incl: P -> A+B, p1, p2)``."""
    if f.target != g.target:
        raise ShapeMismatch("pullback needs a common codomain")
    A, B = f.source, g.source
    h = GroupHom.from_function(direct_sum(A, B), f.target,
                               lambda x: f.target.sub(f(x[:A.rank]), g(x[A.rank:])))
    P, incl = kernel(h)
    return P, incl, projection([A, B], 0) @ incl, projection([A, B], 1) @ incl


def is_exact(f: GroupHom, g: GroupHom) -> bool:
    """``im f = ker g`` for ``f: A -> B``, ``g: B -> C``."""
    return (g @ f).is_zero() and image(f)[0].order == kernel(g)[0].order


def hom_enumerate(G: FinAbGroup, H: FinAbGroup, bound: int = DEFAULT_BOUND) -> list[GroupHom]:
    """Every homomorphism ``G -> H``, lexicographic in the generator images."""
    if G.order * H.order > bound:
        raise BoundExceeded(f"|G|*|H| = {G.order * H.order} > {bound}")
    choices = [[y for y in H.elements() if H.scale(n, y) == H.zero] for n in G.moduli]
    return [GroupHom.from_columns(G, H, cols) for cols in product(*choices)]


def solve(f: GroupHom, y: Sequence[int], bound: int = DEFAULT_BOUND) -> list[Coords]:
    """All ``x`` with ``f(x) = y``, sorted; empty when ``y`` is not in the image.

    The bound applies to the number of solutions (the kernel order).
    """
    y = f.target.reduce(y)
    k = f.source.rank
    z = integer_solve(relation_matrix(f), y, k + f.target.rank)
    if z is None:
        return []
    x0 = f.source.reduce(z[:k])
    K, incl = kernel(f)
    if K.order > bound:
        raise BoundExceeded(f"{K.order} solutions > {bound}")
    return sorted({f.source.add(x0, incl(c)) for c in K.elements()})


# Sources up to this order get a lookup table of preimages instead of one
# Smith normal form solve per query.
PREIMAGE_TABLE_MAX = 1 << 12


@lru_cache(maxsize=4096)
def _preimage_table(f: GroupHom) -> dict[Coords, Coords] | None:
    if f.source.order > PREIMAGE_TABLE_MAX:
        return None
    table: dict[Coords, Coords] = {}
    for x in f.source.elements():
        table.setdefault(f(x), x)
    return table


def in_image(f: GroupHom, y: Sequence[int]) -> bool:
    table = _preimage_table(f)
    if table is not None:
        return f.target.reduce(y) in table
    return integer_solve(relation_matrix(f), f.target.reduce(y), f.source.rank + f.target.rank) is not None


def preimage(f: GroupHom, y: Sequence[int]) -> Coords:
    """Some ``x`` with ``f(x) = y``; raises ValueError if none exists.

    The answer is the first preimage in ``f.source.elements()`` order for small
    sources and an SNF particular solution otherwise.
    """
    y = f.target.reduce(y)
    table = _preimage_table(f)
    if table is not None:
        if y not in table:
            raise ValueError(f"{y} is not in the image")
        return table[y]
    k = f.source.rank
    z = integer_solve(relation_matrix(f), y, k + f.target.rank)
    if z is None:
        raise ValueError(f"{y} is not in the image")
    return f.source.reduce(z[:k])


# ---------------------------------------------------------------------------
# Hom(G, H) as a finite abelian group


@dataclass(frozen=True)
class HomGroup:
    """``Hom(G, H) = (+)_{i,j} Z/gcd(n_j, m_i)``, entries in row-major order."""

    source: FinAbGroup
    target: FinAbGroup

    @cached_property
    def group(self) -> FinAbGroup:
        return FinAbGroup(tuple(gcd(n, m) for m in self.target.moduli for n in self.source.moduli))

    def _step(self, i: int, j: int) -> int:
        m = self.target.moduli[i]
        return m // gcd(self.source.moduli[j], m)

    def to_hom(self, c: Sequence[int]) -> GroupHom:
        k = self.source.rank
        return GroupHom(self.source, self.target, tuple(
            tuple(c[i * k + j] * self._step(i, j) for j in range(k)) for i in range(self.target.rank)))

    def from_hom(self, f: GroupHom) -> Coords:
        out = []
        for i, row in enumerate(f.matrix):
            for j, a in enumerate(row):
                step = self._step(i, j)
                if a % step:
                    raise ValueError("homomorphism is not well defined")
                out.append(a // step)
        return self.group.reduce(out)


def linear_map_between_homs(spaces: Sequence[HomGroup], target_spaces: Sequence[HomGroup],
                            fn: Callable[[list[GroupHom]], list[GroupHom]]) -> GroupHom:
    """Package an additive operation on tuples of homomorphisms as a GroupHom."""
    src = direct_sum(*(h.group for h in spaces))
    tgt = direct_sum(*(h.group for h in target_spaces))

    def apply(x):
        parts = split([h.group for h in spaces], x)
        outs = fn([h.to_hom(p) for h, p in zip(spaces, parts)])
        return tuple(a for h, o in zip(target_spaces, outs) for a in h.from_hom(o))

    return GroupHom.from_function(src, tgt, apply)
