from itertools import product

import pytest

from xbimod import fixtures
from xbimod.algebra import (
    RingHom, find_splittings, product_ring, regular_bimodule, ring_homs, trivial_extension, zero_bimodule,
)
from xbimod.butterfly import (
    Butterfly, ButterflyMorphism, are_isomorphic, check_butterfly, check_butterfly_morphism, check_derived,
    check_fraction, check_pi_maps, compose, detect_strong_splitting, find_isomorphisms, fraction,
    fraction_split_form, from_extension, from_morphism, identity_butterfly, identity_butterfly_morphism,
    induced_pi_maps, morphism_from_homotopy,
)
from xbimod.census import census_extensions, crossed_bimodules
from xbimod.crossed import (
    Homotopy, check_morphism, compose_morphisms, crossed_isomorphisms, hom_groupoid, identity_morphism,
    morphisms, pi0, pi1, pi_maps, zero_differential,
)
from xbimod.errors import MiddleMismatch, ShapeMismatch
from xbimod.zmod import GroupHom

Z2, Z4 = fixtures.Z2, fixtures.Z4
FIX = fixtures.crossed_fixtures()
BUTTERFLIES = fixtures.fixture_butterflies()
MORPHISMS = fixtures.fixture_morphisms()


def split_id_b():
    return from_morphism(identity_morphism(fixtures.fix_b()))


# --- construction and checks ---------------------------------------------------


def test_split_butterfly_of_identity_on_fix_b():
    B = split_id_b()
    assert B.E.order == 8 and B.E.additive.moduli == (4, 2)
    for s, m, s2, m2 in product(range(4), range(2), range(4), range(2)):
        assert B.E.mul((s, m), (s2, m2)) == ((s * s2) % 4, (s * m2 + m * s2) % 2)
    for s, m in product(range(4), range(2)):
        assert B.jay((s, m)) == ((s + 2 * m) % 4,)
    assert B.kappa((1,)) == (2, 1)
    assert check_butterfly(B).ok


def test_jay_of_split_butterfly_is_multiplicative_elementwise():
    B = split_id_b()
    for x, y in product(B.E.elements(), repeat=2):
        assert B.jay(B.E.mul(x, y)) == B.target.R.mul(B.jay(x), B.jay(y))


def test_split_butterfly_of_reduction():
    B = BUTTERFLIES["SPLIT_RED"]
    assert B.E.additive.moduli == (4, 2)
    for s, m in product(range(4), range(2)):
        assert B.jay((s, m)) == (s % 2,)
    assert check_butterfly(B).ok


def test_split_butterfly_from_zero_source():
    S = Z2
    X = zero_differential(S, zero_bimodule(S))
    Y = fixtures.fix_a()
    for f in morphisms(X, Y):
        B = from_morphism(f)
        assert B.E.order == S.order * Y.group.order
        assert check_butterfly(B).ok


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_fixture_butterflies_pass(name):
    B = BUTTERFLIES[name]
    assert check_butterfly(B).ok
    assert check_derived(B).ok


def test_corrupted_jay_kappa_is_reported():
    B = split_id_b()
    # kappa(n) = (2n, 0) still lifts d along pi, but jay(kappa(1)) = 2
    bad = Butterfly(B.source, B.target, B.E, GroupHom.from_columns(B.source.group, B.E.additive, [(2, 0)]),
                    B.iota, B.pi, B.jay)
    rep = check_butterfly(bad)
    assert "diagonal_complex" in rep.laws()
    assert [v.witness for v in rep.violations if v.law == "diagonal_complex"] == [((1,),)]


def test_butterfly_shape_errors():
    B = split_id_b()
    with pytest.raises(ShapeMismatch):
        Butterfly(fixtures.fix_a(), B.target, B.E, B.kappa, B.iota, B.pi, B.jay)


# --- homotopies as butterfly morphisms -------------------------------------------


def test_zero_homotopy_gives_identity():
    for f in MORPHISMS:
        H = Homotopy(f, f, GroupHom.zero(f.source.R.additive, f.target.group))
        psi = morphism_from_homotopy(H)
        assert psi.a == identity_butterfly_morphism(from_morphism(f)).a
        assert check_butterfly_morphism(psi).ok


def test_derivation_gives_a_nonidentity_automorphism():
    psi = morphism_from_homotopy(fixtures.derivation_homotopy())
    assert check_butterfly_morphism(psi).ok
    assert psi.a.hom != GroupHom.identity(psi.source.E.additive)


@pytest.mark.parametrize("src", ["FIX_A", "FIX_B", "FIX_C"])
def test_groupoid_arrows_give_butterfly_morphisms(src):
    for Y in FIX.values():
        for H in hom_groupoid(FIX[src], Y).arrows:
            assert check_butterfly_morphism(morphism_from_homotopy(H)).ok


def test_invalid_homotopy_breaks_multiplicativity():
    X = fixtures.fix_a()
    f = identity_morphism(X)
    psi = morphism_from_homotopy(Homotopy(f, f, GroupHom.identity(X.group)))
    assert "multiplicative" in check_butterfly_morphism(psi).laws()


# --- strong splittings --------------------------------------------------------------


def test_strong_splitting_recovers_fixture_morphisms():
    for f in MORPHISMS:
        found = detect_strong_splitting(from_morphism(f))
        assert found is not None
        assert found.recovered == f
        assert check_morphism(found.recovered).ok
        assert check_butterfly_morphism(found.iso).ok


def test_nonsplit_extension_has_no_strong_splitting():
    assert detect_strong_splitting(BUTTERFLIES["NONSPLIT"]) is None
    assert find_splittings(BUTTERFLIES["NONSPLIT"].extension(), "additive") == []


def test_trivial_extension_butterfly_is_strongly_split():
    found = detect_strong_splitting(BUTTERFLIES["TRIVIAL_EXT"])
    assert found is not None and check_morphism(found.recovered).ok


# --- fractions --------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_fraction_of_fixture_butterflies(name):
    F = fraction(BUTTERFLIES[name])
    assert F.qiso
    assert check_fraction(F).ok


def test_fraction_of_identity_on_fix_c_is_a_resolution_of_the_source():
    B = BUTTERFLIES["ID_C"]
    F = fraction(B)
    assert pi0(F.Efrac)[0].order == pi0(B.source)[0].order
    assert pi1(F.Efrac)[0].additive.order == pi1(B.source)[0].additive.order


def test_fraction_of_split_identity_on_fix_b():
    F = fraction(split_id_b())
    assert pi0(F.Efrac)[0].order == 2 and pi1(F.Efrac)[0].additive.order == 1
    assert F.qiso


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_fraction_normalizations_agree(name):
    B = BUTTERFLIES[name]
    Z, comparison = fraction_split_form(B)
    assert check_morphism(comparison).ok and comparison.is_isomorphism()
    assert crossed_isomorphisms(fraction(B).Efrac, Z)


# --- extensions ---------------------------------------------------------------------


def test_extension_butterflies():
    triv = from_extension(trivial_extension(Z2, regular_bimodule(Z2)))
    assert check_butterfly(triv).ok and detect_strong_splitting(triv) is not None
    non = BUTTERFLIES["NONSPLIT"]
    assert check_butterfly(non).ok and find_splittings(non.extension()) == []
    for ext in census_extensions(8):
        B = from_extension(ext)
        assert B.kappa.is_zero() and B.jay.hom == GroupHom.identity(ext.E.additive)
        assert check_butterfly(B).ok


# --- composition ---------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_unit_laws_on_fixtures(name):
    B = BUTTERFLIES[name]
    left = compose(identity_butterfly(B.source), B)
    right = compose(B, identity_butterfly(B.target))
    assert check_butterfly(left).ok and check_butterfly(right).ok
    assert find_isomorphisms(left, B) and find_isomorphisms(right, B)


def test_functoriality_on_fixture_morphisms():
    pairs = [(f, g) for f in MORPHISMS for g in MORPHISMS if f.target == g.source]
    assert pairs
    for f, g in pairs:
        composite = compose(from_morphism(f), from_morphism(g))
        assert are_isomorphic(composite, from_morphism(compose_morphisms(f, g)))


def test_associativity_on_a_fixture_triple():
    a, b, c = BUTTERFLIES["ID_B"], BUTTERFLIES["SPLIT_RED"], BUTTERFLIES["ID_A"]
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert find_isomorphisms(left, right)


def test_composing_through_the_wrong_middle():
    with pytest.raises(MiddleMismatch):
        compose(BUTTERFLIES["ID_A"], BUTTERFLIES["ID_B"])


def test_quotient_sign_matters_only_off_two_torsion():
    # the ideal of pairs (iota'(n), +-kappa(n)) gives isomorphic composites
    # exactly when the middle group is killed by 2
    for f, g in ((f, g) for f in MORPHISMS for g in MORPHISMS if f.target == g.source):
        F, B = from_morphism(f), from_morphism(g)
        plus, minus = compose(F, B), compose(F, B, sign=-1)
        assert check_butterfly(minus).ok
        two_torsion = all(f.target.group.scale(2, n) == f.target.group.zero for n in f.target.group.elements())
        if two_torsion:
            assert are_isomorphic(plus, minus)
    C = BUTTERFLIES["ID_C"]
    assert not are_isomorphic(compose(C, C), compose(C, C, sign=-1))


# --- isomorphisms ---------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_isomorphisms_contain_identity(name):
    B = BUTTERFLIES[name]
    isos = find_isomorphisms(B, B)
    assert identity_butterfly_morphism(B).a in [phi.a for phi in isos]
    assert all(check_butterfly_morphism(phi).ok for phi in isos)


def test_isomorphisms_of_homotopic_split_butterflies_contain_psi():
    H = fixtures.derivation_homotopy()
    psi = morphism_from_homotopy(H)
    found = [phi.a for phi in find_isomorphisms(from_morphism(H.to_), from_morphism(H.from_))]
    assert psi.a in found


def test_isomorphism_search_against_brute_force():
    B = split_id_b()
    expected = [a for a in ring_homs(B.E, B.E) if a.hom.is_bijective()
                and check_butterfly_morphism(ButterflyMorphism(B, B, a)).ok]
    assert sorted(phi.a.hom.matrix for phi in find_isomorphisms(B, B)) == sorted(a.hom.matrix for a in expected)


def test_order_obstruction():
    B = BUTTERFLIES["ID_A"]
    big = product_ring(B.E, Z2)
    first = GroupHom.from_function(B.E.additive, big.additive, lambda x: tuple(x) + (0,))
    proj = GroupHom.from_function(big.additive, B.E.additive, lambda x: x[:-1])
    C = Butterfly(B.source, B.target, big, first @ B.kappa, first @ B.iota,
                  RingHom(big, B.source.R, B.pi.hom @ proj), RingHom(big, B.target.R, B.jay.hom @ proj))
    assert find_isomorphisms(B, C) == []
    with pytest.raises(ShapeMismatch):
        find_isomorphisms(B, BUTTERFLIES["ID_B"])


# --- induced maps on pi ---------------------------------------------------------------


def test_induced_pi_maps_examples():
    xi, eta = induced_pi_maps(split_id_b())
    assert xi.source.order == 2 and xi.hom == GroupHom.identity(xi.source.additive)
    assert eta.source.order == 1
    xi, eta = induced_pi_maps(BUTTERFLIES["SPLIT_RED"])
    assert xi.source.order == xi.target.order == 2 and xi.hom.is_bijective()
    assert eta.source.order == 1 and eta.target.order == 2 and eta.is_zero()
    xi, eta = induced_pi_maps(BUTTERFLIES["ID_A"])
    assert xi.hom == GroupHom.identity(xi.source.additive) and eta == GroupHom.identity(eta.source)


@pytest.mark.parametrize("name", sorted(BUTTERFLIES))
def test_induced_pi_maps_are_compatible(name):
    assert check_pi_maps(BUTTERFLIES[name]).ok


@pytest.mark.parametrize("X", crossed_bimodules(2, 2), ids=str)
def test_induced_maps_match_strict_pi_maps(X):
    for Y in crossed_bimodules(2, 2):
        for f in morphisms(X, Y):
            xi, eta = induced_pi_maps(from_morphism(f))
            xs, es = pi_maps(f)
            assert xi.hom == xs.hom and eta == es


def test_butterfly_endpoints_must_match_for_morphisms():
    with pytest.raises(ShapeMismatch):
        check_butterfly_morphism(ButterflyMorphism(BUTTERFLIES["ID_A"], BUTTERFLIES["ID_B"],
                                                   RingHom.identity(BUTTERFLIES["ID_A"].E)))
