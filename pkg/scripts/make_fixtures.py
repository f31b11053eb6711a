"""Write the fixture document used by the CLI golden suite.

    python scripts/make_fixtures.py tests/golden/fixtures.json
"""

import sys
from pathlib import Path

from xbimod import butterfly, fixtures, torsors
from xbimod.algebra import regular_bimodule, trivial_extension
from xbimod.cocycle import make_cocycle
from xbimod.serialize import document, dumps


def fixture_objects() -> dict:
    A, B, C = fixtures.fix_a(), fixtures.fix_b(), fixtures.fix_c()
    red = fixtures.reduction_morphism()
    deriv = fixtures.derivation_homotopy()
    objs = {
        "FIX_A": A,
        "FIX_B": B,
        "FIX_C": C,
        "IDEAL": fixtures.ideal_inclusion(),
        "NEG_PF": fixtures.neg_pfeiffer(),
        "FIX_B_RIGHT_ZERO": fixtures.fix_b_right_zero(),
        "RED": red,
        "DERIV": deriv,
        "ID_A": butterfly.identity_butterfly(A),
        "ID_B": butterfly.identity_butterfly(B),
        "ID_C": butterfly.identity_butterfly(C),
        "SPLIT_RED": butterfly.from_morphism(red),
        "SPLIT_DERIV": butterfly.from_morphism(deriv.to_),
        "NONSPLIT": fixtures.nonsplit_extension(),
        "TRIVIAL_EXT": trivial_extension(fixtures.Z2, regular_bimodule(fixtures.Z2)),
        "Z_B": make_cocycle(B, [(1,), (3,)], [[(0,), (1,)], [(1,), (0,)]]),
        "Z_B_BAD": make_cocycle(B, [(1,), (2,)], [[(0,), (1,)], [(1,), (0,)]]),
        "T_B3": torsors.trivial_torsor(B, (3,)),
    }
    return objs


def main(out: str) -> None:
    Path(out).write_text(dumps(document(fixture_objects())))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/golden/fixtures.json")
