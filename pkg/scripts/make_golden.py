"""Regenerate the CLI golden outputs in tests/golden.

    python scripts/make_golden.py [--check] [--jobs N]

Every command in tests/golden/commands.json runs against fixtures.json; its
standard output is stored as ``<name>.json``. With ``--check`` nothing is
written and the script exits 1 if any output or exit code differs.
"""

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

from xbimod.cli import main as cli_main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def command_argv(spec: dict, golden: Path, jobs: int) -> list[str]:
    argv = [a.replace("{golden}", str(golden)) for a in spec["argv"]]
    return argv + ["--input", str(golden / "fixtures.json"), "--jobs", str(jobs)]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    commands = json.loads((GOLDEN / "commands.json").read_text())
    bad = 0
    for name, spec in commands.items():
        code, out = run(command_argv(spec, GOLDEN, args.jobs))
        path = GOLDEN / f"{name}.json"
        if args.check:
            same = path.exists() and path.read_text() == out and code == spec["exit"]
            print(f"{'ok  ' if same else 'DIFF'} {name}")
            bad += not same
        else:
            if code != spec["exit"]:
                print(f"{name}: exit {code}, expected {spec['exit']}", file=sys.stderr)
                bad += 1
            path.write_text(out)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
