import contextlib
import io
import json
from pathlib import Path

import pytest

from xbimod import fixtures
from xbimod.cli import main
from xbimod.serialize import document, dumps

GOLDEN = Path(__file__).parent / "golden"
FIXTURES = str(GOLDEN / "fixtures.json")


def run(*argv, inputs=(FIXTURES,)):
    buf = io.StringIO()
    extra = [a for p in inputs for a in ("--input", p)]
    with contextlib.redirect_stdout(buf):
        code = main(list(argv) + extra)
    return code, json.loads(buf.getvalue())


def test_check_ok_and_failure_codes():
    code, out = run("check", "FIX_B")
    assert code == 0 and out["ok"]
    code, out = run("check", "NEG_PF")
    assert code == 1 and not out["ok"]
    pf = [v for v in out["violations"] if v["law"] == "pfeiffer_identity"]
    assert pf and all(len(v["witness"]) == 2 for v in pf)


def test_input_errors_exit_two(tmp_path):
    code, out = run("check", "NOPE")
    assert code == 2 and out["error"]["code"] == "unknown_name"
    code, out = run("pi", "ID_B")
    assert code == 2 and out["error"]["code"] == "wrong_kind"
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out = run("check", "X", inputs=(str(bad),))
    assert code == 2 and out["error"]["code"] == "invalid_json" and out["error"]["path"].startswith(str(bad))
    code, out = run("check", "X", inputs=(str(tmp_path / "missing.json"),))
    assert code == 2 and out["error"]["code"] == "unreadable_input"
    code, out = run("torsor", "sum", "FIX_B", "1")
    assert code == 2 and out["error"]["code"] == "bad_argument"


def test_compose_then_isos_is_nonempty(tmp_path):
    out_path = tmp_path / "composite.json"
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["compose", "ID_B", "SPLIT_RED", "--input", FIXTURES, "--output", str(out_path)])
    assert code == 0 and buf.getvalue() == ""
    code, out = run("isos", "composite", "SPLIT_RED", inputs=(FIXTURES, str(out_path)))
    assert code == 0 and out["count"] > 0


def test_pi_and_fraction_reports():
    code, out = run("pi", "FIX_B")
    assert code == 0 and out["derived"]["pi0"]["order"] == 2 and out["derived"]["pi1"]["order"] == 1
    code, out = run("fraction", "SPLIT_RED")
    assert code == 0 and out["derived"]["qiso"]


def test_split_reports():
    code, out = run("split", "SPLIT_RED")
    assert code == 0 and out["derived"]["strongly_split"]
    code, out = run("split", "NONSPLIT")
    assert code == 0 and not out["derived"]["additively_split"] and not out["derived"]["strongly_split"]


def test_torsor_verbs():
    code, out = run("torsor", "trivial", "FIX_B", "3")
    assert code == 0 and out["torsor"]["s"] == [[3], [1]]
    code, out = run("torsor", "product", "FIX_B", "1", "3")
    assert code == 0 and out["isomorphic_to_trivial"]["r"] == [3] and out["isomorphic_to_trivial"]["count"] > 0
    code, out = run("torsor", "sum", "FIX_B", "T_B3", "1")
    assert code == 0 and out["isomorphic_to_trivial"]["r"] == [0]
    code, out = run("torsor", "apply", "SPLIT_RED", "3")
    assert code == 0 and out["check"]["ok"]
    code, out = run("torsor", "sum", "FIX_A", "T_B3", "1")
    assert code == 2 and out["error"]["code"] == "shape_mismatch"


def test_cocycle_verbs():
    assert run("cocycle", "check", "Z_B")[0] == 0
    assert run("cocycle", "check", "Z_B_BAD")[0] == 1
    code, out = run("cocycle", "mul", "Z_B", "Z_B")
    assert code == 0 and out["cocycle"]["r"] == [[1], [1]]
    code, out = run("cocycle", "iso", "Z_B", "Z_B")
    assert code == 0 and out["isomorphic"]
    code, out = run("cocycle", "classes", "FIX_B", "2")
    assert code == 0 and out["derived"]["classes"] == 2


def test_enumerate_small():
    code, out = run("enumerate", "--max-ring", "4", "--max-module", "4", "--xbm-ring", "2", "--xbm-module", "2",
                    inputs=())
    assert code == 0 and out["rings_by_order"] == {"1": 1, "2": 1, "3": 1, "4": 4}


def test_seeded_checks_are_reproducible():
    a = run("check", "FIX_C", "--seed", "7")
    b = run("check", "FIX_C", "--seed", "7")
    assert a == b and a[1]["ok"]
    code, out = run("check", "NEG_PF", "--seed", "1", "--samples", "200")
    assert code == 1 and any(v["location"] == "sampled" for v in out["violations"])


def test_output_is_canonical_json():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(["check", "FIX_A", "--input", FIXTURES])
    text = buf.getvalue()
    assert text == dumps(json.loads(text))


@pytest.mark.parametrize("jobs", ["1", "3"])
def test_isos_independent_of_jobs(jobs):
    assert run("isos", "ID_C", "ID_C", "--jobs", jobs) == run("isos", "ID_C", "ID_C")


def test_inline_document(tmp_path):
    p = tmp_path / "doc.json"
    p.write_text(dumps(document({"MINE": fixtures.fix_c()})))
    code, out = run("check", "MINE", "--exhaustive", inputs=(str(p),))
    assert code == 0 and out["derived"]["orders"] == {"M": 4, "R": 4}
