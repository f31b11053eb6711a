"""Command-line interface; every verb prints one JSON document on stdout.

Exit codes: 0 when the report is ok, 1 when a check fails, 2 on input
errors (with ``{"code", "message", "path"}``).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import algebra, butterfly, cocycle, crossed, torsors
from .census import census_summary, crossed_bimodules
from .config import CensusConfig, DEFAULT_BOUND
from .errors import BoundExceeded, XbimodError
from .report import Report
from .serialize import (
    InputError, Workspace, document, dumps, enc_hom, enc_ring, enc_torsor, enc_xbm, encode,
)


def _coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t != "")
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}", "argv", "bad_argument") from None


def _workspace(args) -> Workspace:
    ws = Workspace()
    for path in args.input or []:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise InputError(f"cannot read input: {e.strerror}", path, "unreadable_input") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e.msg}", f"{path}:{e.lineno}:{e.colno}", "invalid_json") from None
        ws.add_document(doc, path)
    ws.load_all()
    return ws


def _sampled_checks(X: crossed.CrossedBimodule, seed: int, samples: int) -> Report:
    """Pfeiffer and ring associativity on randomly drawn elements."""
    rng = random.Random(seed)
    rep = Report("sampled")
    ms, rs = list(X.group.elements()), list(X.R.elements())
    for _ in range(samples):
        m1, m2 = rng.choice(ms), rng.choice(ms)
        if X.M.lmul(X.d(m1), m2) != X.M.rmul(m1, X.d(m2)):
            rep.add("pfeiffer_identity", (m1, m2), "sampled")
        a, b, c = rng.choice(rs), rng.choice(rs), rng.choice(rs)
        if X.R.mul(X.R.mul(a, b), c) != X.R.mul(a, X.R.mul(b, c)):
            rep.add("associativity", (a, b, c), "sampled")
    rep.derived["samples"] = samples
    return rep


def _check_object(obj, args) -> Report:
    ex = args.exhaustive
    if isinstance(obj, algebra.FinRing):
        return algebra.check_ring(obj, ex)
    if isinstance(obj, algebra.Bimodule):
        return algebra.check_bimodule(obj, ex)
    if isinstance(obj, crossed.CrossedBimodule):
        rep = crossed.check_crossed(obj, ex)
        if args.seed is not None:
            rep.extend(_sampled_checks(obj, args.seed, args.samples))
        rep.derived["orders"] = {"R": obj.R.order, "M": obj.group.order}
        return rep
    if isinstance(obj, crossed.XbmMorphism):
        return crossed.check_morphism(obj)
    if isinstance(obj, crossed.Homotopy):
        return crossed.check_homotopy(obj)
    if isinstance(obj, butterfly.Butterfly):
        rep = butterfly.check_butterfly(obj)
        rep.derived["orders"] = butterfly.butterfly_orders(obj)
        return rep
    if isinstance(obj, algebra.AlgExtension):
        return algebra.check_extension(obj)
    if isinstance(obj, torsors.Torsor):
        return torsors.check_torsor(obj)
    if isinstance(obj, cocycle.Cocycle):
        return cocycle.check_cocycle(obj)
    rep = Report("hom" if hasattr(obj, "matrix") else "group")
    for ij in getattr(obj, "violations", lambda: [])():
        rep.add("well_defined", ij, "matrix")
    return rep


def cmd_check(args, ws: Workspace):
    rep = _check_object(ws.get(args.name), args)
    return rep.to_json(), rep.ok


def cmd_pi(args, ws: Workspace):
    X = ws.get(args.name, "xbm")
    rep = crossed.check_crossed(X)
    if rep.ok:
        ext = crossed.CrossedExtension(X, *_pi_parts(X))
        rep.extend(ext.check(), "crossed_extension")
        rep.derived.update(crossed.describe_pi(X))
    return rep.to_json(), rep.ok


def _pi_parts(X):
    B, proj = crossed.pi0(X)
    A, incl = crossed.pi1(X)
    return B, A, incl, proj


def cmd_compose(args, ws: Workspace):
    F = ws.get(args.left, "butterfly")
    B = ws.get(args.right, "butterfly")
    C = butterfly.compose(F, B)
    return document({args.name: C}), butterfly.check_butterfly(C).ok


def cmd_fraction(args, ws: Workspace):
    B = ws.get(args.name, "butterfly")
    rep = butterfly.check_butterfly(B)
    if rep.ok:
        F = butterfly.fraction(B)
        rep.extend(butterfly.check_fraction(F), "fraction")
        rep.derived["qiso"] = F.qiso
        rep.derived["Efrac"] = {"order": F.Efrac.group.order, "moduli": list(F.Efrac.group.moduli),
                                **crossed.describe_pi(F.Efrac)}
        xi, eta = butterfly.induced_pi_maps(B)
        rep.derived["xi"] = enc_hom(xi.hom)
        rep.derived["eta"] = enc_hom(eta)
    return rep.to_json(), rep.ok


def cmd_split(args, ws: Workspace):
    obj = ws.get(args.name)
    if isinstance(obj, algebra.AlgExtension):
        obj = butterfly.from_extension(obj)
    if not isinstance(obj, butterfly.Butterfly):
        raise InputError(f"{args.name!r} is neither a butterfly nor an extension", args.name, "wrong_kind")
    rep = butterfly.check_butterfly(obj)
    if rep.ok:
        additive = algebra.find_splittings(obj.extension(), "additive", args.bound, limit=1)
        sp = butterfly.detect_strong_splitting(obj, args.bound)
        rep.derived["additively_split"] = bool(additive)
        rep.derived["strongly_split"] = sp is not None
        if sp is not None:
            rep.extend(crossed.check_morphism(sp.recovered), "recovered")
            rep.extend(butterfly.check_butterfly_morphism(sp.iso), "iso")
            rep.derived["sigma"] = enc_hom(sp.sigma.hom)
            rep.derived["alpha"] = enc_hom(sp.recovered.alpha.hom)
            rep.derived["beta"] = enc_hom(sp.recovered.beta)
    return rep.to_json(), rep.ok


def cmd_isos(args, ws: Workspace):
    B = ws.get(args.a, "butterfly")
    C = ws.get(args.b, "butterfly")
    if (B.source, B.target) != (C.source, C.target):
        return {"isomorphisms": [], "reason": "different endpoints"}, True
    isos = butterfly.find_isomorphisms(B, C, args.bound, args.jobs)
    out = sorted((enc_hom(phi.a.hom) for phi in isos), key=dumps)
    return {"isomorphisms": out, "count": len(out)}, True


def _torsor_arg(ws: Workspace, X, text: str):
    """A named torsor over ``X``, or the trivial torsor at a ring element."""
    if text in ws.raw:
        T = ws.get(text, "torsor")
        if T.X != X:
            raise InputError(f"torsor {text!r} lives over a different crossed bimodule", text, "shape_mismatch")
        return T
    return torsors.trivial_torsor(X, _coords(text))


def cmd_torsor(args, ws: Workspace):
    op = args.op
    if op == "apply":
        B = ws.get(args.name, "butterfly")
        if len(args.values) != 1:
            raise InputError("apply takes one torsor or source ring value", "argv", "bad_argument")
        U = torsors.apply_butterfly(B, _torsor_arg(ws, B.source, args.values[0]))
        expected = None
    else:
        X = ws.get(args.name, "xbm")
        need = 1 if op == "trivial" else 2
        if len(args.values) != need:
            raise InputError(f"{op} takes {need} torsor(s) or ring value(s)", "argv", "bad_argument")
        Ts = [_torsor_arg(ws, X, v) for v in args.values]
        rs = [torsors.trivialize(T)[0] for T in Ts]
        if op == "trivial":
            U, expected = Ts[0], rs[0]
        elif op == "sum":
            U, expected = torsors.torsor_sum(*Ts), X.R.add(*rs)
        else:
            U, expected = torsors.torsor_product(*Ts), X.R.mul(*rs)
    rep = torsors.check_torsor(U)
    r, _ = torsors.trivialize(U)
    out = {"torsor": enc_torsor(U), "check": rep.to_json(), "trivialized_at": list(r)}
    if expected is not None:
        iso = torsors.find_torsor_isos(U, torsors.trivial_torsor(U.X, expected))
        out["isomorphic_to_trivial"] = {"r": list(expected), "count": len(iso)}
        if not iso:
            rep.add("not_isomorphic_to_trivial", (expected,))
    return out, rep.ok


def cmd_cocycle(args, ws: Workspace):
    op = args.op
    if op == "classes":
        if len(args.names) != 2:
            raise InputError("classes takes an xbm name and an index count", "argv", "bad_argument")
        X = ws.get(args.names[0], "xbm")
        try:
            n = int(args.names[1])
        except ValueError:
            raise InputError("index count must be an integer", "argv", "bad_argument") from None
        cr = cocycle.classes(X, n, args.bound)
        rep = cr.report
        rep.extend(algebra.check_ring_hom(cr.iso), "iso")
        rep.derived["ring"] = enc_ring(cr.ring)
        rep.derived["pi0"] = enc_ring(cr.pi0)
        return rep.to_json(), rep.ok
    zs = [ws.get(nm, "cocycle") for nm in args.names]
    if op == "check":
        rep = cocycle.check_cocycle(zs[0])
        return rep.to_json(), rep.ok
    if len(zs) != 2:
        raise InputError(f"{op} takes two cocycles", "argv", "bad_argument")
    if op == "iso":
        c = cocycle.are_isomorphic(*zs)
        return {"isomorphic": c is not None, "c": None if c is None else list(map(list, c))}, True
    z = cocycle.cocycle_sum(*zs) if op == "sum" else cocycle.cocycle_mul(*zs)
    rep = cocycle.check_cocycle(z)
    return {"cocycle": encode(z), "check": rep.to_json()}, rep.ok


def cmd_enumerate(args, ws: Workspace):
    cfg = CensusConfig(args.max_ring, args.max_module, args.xbm_ring, args.xbm_module, args.bound)
    out = census_summary(cfg, args.jobs)
    if args.exhaustive:
        out["crossed_bimodule_list"] = [enc_xbm(X) for X in crossed_bimodules(cfg.xbm_ring, cfg.xbm_module, args.jobs)]
    return out, True


COMMANDS = {
    "check": cmd_check, "pi": cmd_pi, "compose": cmd_compose, "fraction": cmd_fraction,
    "split": cmd_split, "isos": cmd_isos, "torsor": cmd_torsor, "cocycle": cmd_cocycle,
    "enumerate": cmd_enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", help="JSON document (repeatable)")
    common.add_argument("--output", help="write the JSON result here instead of stdout")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="enumeration bound")
    common.add_argument("--seed", type=int, help="enable seeded random spot checks")
    common.add_argument("--samples", type=int, default=64, help="number of seeded samples")
    common.add_argument("--exhaustive", action="store_true", help="element-wise checks / full listings")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")

    p = argparse.ArgumentParser(prog="xbimod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("check", "pi", "fraction", "split"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("name")
    sp = sub.add_parser("compose", parents=[common])
    sp.add_argument("left", help="butterfly T -> S")
    sp.add_argument("right", help="butterfly S -> R")
    sp.add_argument("--name", default="composite", help="name of the composite in the output document")
    sp = sub.add_parser("isos", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp = sub.add_parser("torsor", parents=[common])
    sp.add_argument("op", choices=["trivial", "sum", "product", "apply"])
    sp.add_argument("name", help="crossed bimodule (or butterfly for apply)")
    sp.add_argument("values", nargs="*", help="ring elements as comma-separated coordinates")
    sp = sub.add_parser("cocycle", parents=[common])
    sp.add_argument("op", choices=["check", "sum", "mul", "iso", "classes"])
    sp.add_argument("names", nargs="+")
    sp = sub.add_parser("enumerate", parents=[common])
    defaults = CensusConfig()
    sp.add_argument("--max-ring", type=int, default=defaults.max_ring)
    sp.add_argument("--max-module", type=int, default=defaults.max_module)
    sp.add_argument("--xbm-ring", type=int, default=defaults.xbm_ring)
    sp.add_argument("--xbm-module", type=int, default=defaults.xbm_module)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = _workspace(args)
        result, ok = COMMANDS[args.verb](args, ws)
        code = 0 if ok else 1
    except InputError as e:
        result, code = {"error": e.to_json()}, 2
    except BoundExceeded as e:
        result, code = {"error": {"code": "bound_exceeded", "message": str(e), "path": ""}}, 2
    except XbimodError as e:
        result, code = {"error": {"code": type(e).__name__, "message": str(e), "path": ""}}, 2
    text = dumps(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
