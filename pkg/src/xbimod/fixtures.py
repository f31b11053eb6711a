"""Named small objects used by tests, scripts and the CLI golden suite.

FIX_A   Z/2 --0--> Z/2, regular actions.
FIX_B   Z/2 --(1 -> 2)--> Z/4, Z/4 acting through reduction mod 2.
FIX_C   Z/4 --(x2)--> Z/4, regular actions; pi0 = Z/2, pi1 = {0, 2} and a
        nonzero induced product.
IDEAL   the ideal {0, 2} of Z/4 with the inclusion (isomorphic to FIX_B).
DERIV   the derivation d/de of Z/2[e] into FIX_A, a homotopy between two
        equal morphisms with nonzero h.
NEG_PF  Z/2 acting on (Z/2)^2 componentwise, d(a, b) = a: a bimodule map
        that breaks the Pfeiffer identity at ((1, 0), (0, 1)).
"""

from __future__ import annotations

from .algebra import (
    Bimodule, RingHom, bimodule_from_functions, cyclic_ring, dual_numbers, extension_from_ideal, ideal_generated,
    regular_bimodule, trivial_extension, zero_bimodule,
)
from .butterfly import Butterfly, from_extension, from_morphism, identity_butterfly
from .config import DEFAULT_BOUND
from .crossed import CrossedBimodule, Homotopy, XbmMorphism, ideal_crossed, morphisms, zero_differential
from .zmod import GroupHom, cyclic, direct_sum

Z2 = cyclic_ring(2)
Z4 = cyclic_ring(4)


def fix_a() -> CrossedBimodule:
    M = regular_bimodule(Z2)
    return CrossedBimodule(Z2, M, GroupHom.zero(M.additive, Z2.additive))


def fix_b() -> CrossedBimodule:
    G = cyclic(2)
    M = bimodule_from_functions(Z4, G, lambda r, m: G.scale(r[0], m), lambda m, r: G.scale(r[0], m))
    return CrossedBimodule(Z4, M, GroupHom.from_columns(G, Z4.additive, [(2,)]))


def fix_c() -> CrossedBimodule:
    M = regular_bimodule(Z4)
    return CrossedBimodule(Z4, M, GroupHom.from_columns(M.additive, Z4.additive, [(2,)]))


def ideal_inclusion() -> CrossedBimodule:
    return ideal_crossed(Z4, [(2,)])


def identity_differential() -> CrossedBimodule:
    M = regular_bimodule(Z2)
    return CrossedBimodule(Z2, M, GroupHom.identity(M.additive))


def neg_pfeiffer() -> CrossedBimodule:
    G = direct_sum(cyclic(2), cyclic(2))
    M = bimodule_from_functions(Z2, G, lambda r, m: G.scale(r[0], m), lambda m, r: G.scale(r[0], m))
    return CrossedBimodule(Z2, M, GroupHom.from_columns(G, Z2.additive, [(1,), (0,)]))


def fix_b_right_zero() -> CrossedBimodule:
    """FIX_B with the right action replaced by zero."""
    X = fix_b()
    M = Bimodule(Z4, X.group, X.M.left, (((0,),),))
    return CrossedBimodule(Z4, M, X.boundary)


def reduction() -> RingHom:
    return RingHom.from_function(Z4, Z2, lambda x: (x[0] % 2,))


def reduction_morphism() -> XbmMorphism:
    """``(reduction, id): FIX_B -> FIX_A``."""
    return XbmMorphism(fix_b(), fix_a(), reduction(), GroupHom.identity(cyclic(2)))


def derivation_homotopy() -> Homotopy:
    """``h(a + b e) = b`` from ``(a + b e -> a, 0)`` to itself, ``Z/2[e] -> FIX_A``."""
    S = dual_numbers(Z2)
    X = zero_differential(S, zero_bimodule(S))
    Y = fix_a()
    f = XbmMorphism(X, Y, RingHom.from_function(S, Z2, lambda x: (x[0],)), GroupHom.zero(X.group, Y.group))
    return Homotopy(f, f, GroupHom.from_columns(S.additive, Y.group, [(0,), (1,)]))


def nonsplit_extension():
    """``Z/2 --x2--> Z/4 --> Z/2``."""
    _, incl = ideal_generated(Z4, [(2,)])
    return extension_from_ideal(Z4, incl)


def crossed_fixtures() -> dict[str, CrossedBimodule]:
    return {"FIX_A": fix_a(), "FIX_B": fix_b(), "FIX_C": fix_c(), "IDEAL": ideal_inclusion()}


def fixture_morphisms(bound: int = DEFAULT_BOUND) -> list[XbmMorphism]:
    """Every strict morphism between the four named fixtures, plus the
    source morphism of DERIV."""
    objs = list(crossed_fixtures().values())
    out = [f for X in objs for Y in objs for f in morphisms(X, Y, bound)]
    return out + [derivation_homotopy().to_]


def fixture_butterflies() -> dict[str, Butterfly]:
    out = {f"ID_{k[4:] if k.startswith('FIX_') else k}": identity_butterfly(X) for k, X in crossed_fixtures().items()}
    out["SPLIT_RED"] = from_morphism(reduction_morphism())
    out["SPLIT_DERIV"] = from_morphism(derivation_homotopy().to_)
    out["NONSPLIT"] = from_extension(nonsplit_extension())
    out["TRIVIAL_EXT"] = from_extension(trivial_extension(Z2, regular_bimodule(Z2)))
    return out
