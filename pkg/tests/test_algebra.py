from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xbimod import fixtures
from xbimod.algebra import (
    AlgExtension, BilinearMap, FinRing, RingHom, bimodule_from_functions, check_bimodule, check_extension, check_ring,
    check_ring_hom, cyclic_ring, dual_numbers, extension_from_ideal, find_splittings, ideal_generated, is_ideal,
    is_ring_hom, product_ring, quotient_ring, regular_bimodule, restrict_bimodule, ring_homs, subring,
    trivial_extension, upper_triangular,
)
from xbimod.census import census_extensions, order16_extensions, rings_up_to
from xbimod.errors import BoundExceeded, ShapeMismatch
from xbimod.zmod import FinAbGroup, GroupHom, cyclic, hom_enumerate

Z2, Z4 = fixtures.Z2, fixtures.Z4
RINGS = rings_up_to(8) + [upper_triangular(2), product_ring(Z4, Z2), dual_numbers(Z4)]


def elements_of(R):
    return list(R.additive.elements())


def ring_elements(R):
    els = elements_of(R)
    return st.sampled_from(els)


def test_spec_ring_examples():
    assert check_ring(Z4).ok
    bad = FinRing(FinAbGroup((2,)), (0,), (((1,),),))
    rep = check_ring(bad)
    assert rep.laws() == {"left_unit", "right_unit"}
    assert {v.witness for v in rep.violations} == {((1,),)}
    V = product_ring(Z2, Z2)
    assert V.unit == (1, 1) and check_ring(V, exhaustive=True).ok


def test_ring_table_well_definedness():
    bad = FinRing(FinAbGroup((2, 4)), (0, 1), (((1, 0), (0, 1)), ((0, 1), (0, 1))))
    assert "well_defined" in check_ring(bad).laws()
    with pytest.raises(ShapeMismatch):
        FinRing(FinAbGroup((2,)), (1,), (((1,), (0,)),))


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_generator_checks_agree_with_exhaustive(R):
    # associativity on generators must imply associativity on all elements
    assert check_ring(R).ok
    assert check_ring(R, exhaustive=True).ok


@pytest.mark.parametrize("R", [R for R in RINGS if R.order <= 8], ids=str)
def test_bilinear_extension_of_tables(R):
    A = R.additive
    els = elements_of(R)
    for x, y, z in product(els, repeat=3):
        assert R.mul(A.add(x, y), z) == A.add(R.mul(x, z), R.mul(y, z))
        assert R.mul(x, A.add(y, z)) == A.add(R.mul(x, y), R.mul(x, z))


def test_order16_rings_are_associative_elementwise():
    for ext in order16_extensions():
        assert check_ring(ext.E, exhaustive=True).ok


@given(st.sampled_from(RINGS), st.data())
def test_ring_hom_composition(R, data):
    homs_RR = ring_homs(R, R)
    f = data.draw(st.sampled_from(homs_RR))
    g = data.draw(st.sampled_from(homs_RR))
    assert is_ring_hom(f @ g)
    assert RingHom.identity(R) in homs_RR


@pytest.mark.parametrize("R", RINGS[:12], ids=str)
def test_is_ring_hom_matches_report(R):
    for S in RINGS[:8]:
        for h in hom_enumerate(R.additive, S.additive):
            f = RingHom(R, S, h)
            assert is_ring_hom(f) == check_ring_hom(f).ok


def test_no_unital_map_z2_to_z4():
    assert ring_homs(Z2, Z4) == []
    rep = check_ring_hom(RingHom(Z2, Z4, GroupHom(Z2.additive, Z4.additive, ((1,),))))
    assert not rep.ok


def test_restrict_bimodule_examples():
    M = fixtures.fix_a().M
    same = restrict_bimodule(M, RingHom.identity(Z2))
    assert (same.left, same.right) == (M.left, M.right)
    R = restrict_bimodule(M, fixtures.reduction())
    assert check_bimodule(R).ok
    for r in Z4.additive.elements():
        assert R.lmul(r, (1,)) == ((r[0] % 2),)
    with pytest.raises(ValueError):
        restrict_bimodule(regular_bimodule(Z4), RingHom(Z2, Z4, GroupHom(Z2.additive, Z4.additive, ((1,),))))


def test_bimodule_violations():
    G = cyclic(2)
    broken = bimodule_from_functions(Z4, G, lambda r, m: G.scale(r[0], m), lambda m, r: G.zero)
    assert "right_unit" in check_bimodule(broken).laws()
    assert check_bimodule(regular_bimodule(upper_triangular(2)), exhaustive=True).ok


def test_find_splittings_examples():
    triv = trivial_extension(Z2, regular_bimodule(Z2))
    ring_secs = find_splittings(triv, "ring")
    assert ring_secs and ring_secs[0].hom.column(0) == (1, 0)
    nonsplit = fixtures.nonsplit_extension()
    assert find_splittings(nonsplit, "additive") == []
    assert find_splittings(nonsplit, "ring") == []


def test_ring_splittings_are_additive_splittings():
    for ext in census_extensions(8):
        additive = find_splittings(ext)
        ring = find_splittings(ext, "ring")
        assert {f.hom for f in ring} <= set(additive)
        for s in additive:
            assert (ext.proj.hom @ s) == GroupHom.identity(ext.S.additive)


def test_find_splittings_bound():
    with pytest.raises(BoundExceeded):
        find_splittings(fixtures.nonsplit_extension(), bound=4)


def test_ideal_generated_examples():
    I, _ = ideal_generated(Z4, [(0,)])
    assert I.order == 1
    I, inc = ideal_generated(Z4, [(2,)])
    assert {inc(x) for x in I.elements()} == {(0,), (2,)}
    V = product_ring(Z2, Z2)
    I, inc = ideal_generated(V, [(1, 0)])
    assert {inc(x) for x in I.elements()} == {(0, 0), (1, 0)}


@given(st.sampled_from(RINGS), st.data())
def test_ideal_generated_is_the_closure(R, data):
    g = data.draw(ring_elements(R))
    I, inc = ideal_generated(R, [g])
    assert is_ideal(R, inc)
    members = {inc(x) for x in I.elements()}
    # brute force: span of all r g r'
    span = {R.additive.zero}
    gens = {R.mul(R.mul(r, g), s) for r in elements_of(R) for s in elements_of(R)}
    frontier = list(span)
    while frontier:
        x = frontier.pop()
        for y in gens:
            z = R.additive.add(x, y)
            if z not in span:
                span.add(z)
                frontier.append(z)
    assert members == span


def test_quotient_and_subring():
    _, inc = ideal_generated(Z4, [(2,)])
    Q, proj = quotient_ring(Z4, inc)
    assert Q.order == 2 and is_ring_hom(proj)
    V = product_ring(Z2, Z2)
    diag = GroupHom.from_columns(Z2.additive, V.additive, [(1, 1)])
    S, inc = subring(V, diag)
    assert S.order == 2 and is_ring_hom(inc)


def test_extensions_have_multiplicative_orders():
    for ext in census_extensions(8) + order16_extensions():
        assert check_extension(ext).ok
        assert ext.E.order == ext.M.order * ext.S.order


def test_check_extension_detects_inexact():
    bad = AlgExtension(cyclic(2), Z4, Z2, GroupHom.zero(cyclic(2), Z4.additive), fixtures.reduction())
    assert not check_extension(bad).ok
    ok = extension_from_ideal(Z4, ideal_generated(Z4, [(2,)])[1])
    assert check_extension(ok).ok


def test_bilinear_map_difference():
    A = cyclic(2)
    f = BilinearMap.from_function(A, A, A, lambda x, y: (x[0] * y[0] % 2,))
    g = BilinearMap.from_function(A, A, A, lambda x, y: (0,))
    assert f.first_difference(g) == ((1,), (1,))
    assert f.first_difference(f) is None
    assert cyclic_ring(1).order == 1
