from itertools import product

import pytest

from xbimod.algebra import check_bimodule, check_ring, cyclic_ring, ring_homs
from xbimod.census import (
    automorphisms, bimodules, census_extensions, census_morphisms, census_summary, crossed_bimodules,
    groups_of_order, ideals, order16_extensions, ring_automorphisms, rings_of_order,
)
from xbimod.config import CensusConfig
from xbimod.crossed import check_crossed, crossed_isomorphisms
from xbimod.zmod import cyclic

# unital rings of order n (OEIS A037291) and abelian groups of order n (OEIS A000688)
UNITAL_RINGS = [1, 1, 1, 4, 1, 1, 1, 11]
ABELIAN_GROUPS = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]


def test_group_counts():
    assert [len(groups_of_order(n)) for n in range(1, 17)] == ABELIAN_GROUPS


def test_ring_counts():
    assert [len(rings_of_order(n)) for n in range(1, 9)] == UNITAL_RINGS


@pytest.mark.parametrize("n", [4, 8])
def test_rings_are_valid_and_pairwise_nonisomorphic(n):
    rings = rings_of_order(n)
    assert all(check_ring(R).ok for R in rings)
    for R, S in product(rings, repeat=2):
        isos = [f for f in ring_homs(R, S) if f.hom.is_bijective()] if R.additive == S.additive else []
        assert bool(isos) == (R == S)


def test_automorphism_counts():
    assert len(automorphisms(cyclic(8))) == 4
    klein = next(G for G in groups_of_order(4) if G.invariants() == (2, 2))
    assert len(automorphisms(klein)) == 6
    for R in rings_of_order(4):
        assert all(f.hom.is_bijective() for f in ring_automorphisms(R))


def test_bimodules_are_valid():
    for R in rings_of_order(2) + rings_of_order(4):
        for n in (2, 4):
            for G in groups_of_order(n):
                for M in bimodules(R, G):
                    assert check_bimodule(M).ok


def test_crossed_bimodule_census():
    xs = crossed_bimodules(4, 4)
    assert len(xs) == 42
    assert all(check_crossed(X).ok for X in xs)
    assert crossed_bimodules(4, 4, jobs=3) == xs


def test_crossed_census_has_no_duplicates():
    xs = crossed_bimodules(2, 4)
    for i, X in enumerate(xs):
        for Y in xs[i + 1:]:
            if (X.R, X.group) == (Y.R, Y.group):
                assert not crossed_isomorphisms(X, Y)


def test_morphism_census():
    ms = census_morphisms(crossed_bimodules(4, 4))
    assert len(ms) == 3990
    assert all(f.source.R.order * f.target.group.order <= 16 for f in ms)


def test_extension_census():
    exts = census_extensions(8)
    assert len(exts) == 80
    big = order16_extensions()
    assert len(big) == 20 and all(e.E.order == 16 for e in big)


def test_ideals_of_z4_and_z8():
    assert len(ideals(cyclic_ring(4))) == 3
    assert len(ideals(cyclic_ring(8))) == 4


def test_summary():
    s = census_summary(CensusConfig())
    assert s["rings_by_order"] == {n + 1: c for n, c in enumerate(UNITAL_RINGS)}
    assert s["crossed_bimodules"] == 42
