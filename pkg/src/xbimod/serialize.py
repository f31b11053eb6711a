"""JSON documents: encoding, decoding and named workspaces.

A document is ``{"version": 1, "objects": {name: {"kind": ..., ...}}}``.
Wherever an object is expected, a string names another object of the
workspace.  Emission is canonical: sorted keys, plain integers, lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import AlgExtension, Bimodule, FinRing, RingHom
from .butterfly import Butterfly
from .cocycle import Cocycle, make_cocycle
from .crossed import CrossedBimodule, Homotopy, XbmMorphism
from .errors import ShapeMismatch, XbimodError
from .torsors import Torsor
from .zmod import FinAbGroup, GroupHom

VERSION = 1


class InputError(XbimodError):
    """Malformed document; ``path`` locates the offending value."""

    def __init__(self, message: str, path: str = "", code: str = "invalid_input"):
        super().__init__(message)
        self.message = message
        self.path = path
        self.code = code

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "path": self.path}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _tuples(x):
    if isinstance(x, list):
        return tuple(_tuples(v) for v in x)
    return x


def dumps(doc: Any) -> str:
    return json.dumps(_plain(doc), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# encoding


def enc_group(G: FinAbGroup) -> dict:
    return {"moduli": list(G.moduli)}


def enc_hom(f: GroupHom) -> dict:
    return {"source": enc_group(f.source), "target": enc_group(f.target), "matrix": _plain(f.matrix)}


def enc_ring(R: FinRing) -> dict:
    return {"moduli": list(R.additive.moduli), "unit": list(R.unit), "mult": _plain(R.mult)}


def enc_bimodule(M: Bimodule, with_ring: bool = True) -> dict:
    out = {"moduli": list(M.additive.moduli), "left": _plain(M.left), "right": _plain(M.right)}
    if with_ring:
        out["ring"] = enc_ring(M.ring)
    return out


def enc_xbm(X: CrossedBimodule) -> dict:
    return {"R": enc_ring(X.R), "M": enc_bimodule(X.M, with_ring=False), "del": enc_hom(X.boundary)}


def enc_morphism(f: XbmMorphism) -> dict:
    return {"source": enc_xbm(f.source), "target": enc_xbm(f.target),
            "alpha": enc_hom(f.alpha.hom), "beta": enc_hom(f.beta)}


def enc_homotopy(H: Homotopy) -> dict:
    return {"from": enc_morphism(H.from_), "to": enc_morphism(H.to_), "h": enc_hom(H.h)}


def enc_butterfly(B: Butterfly) -> dict:
    return {"source": enc_xbm(B.source), "target": enc_xbm(B.target), "E": enc_ring(B.E),
            "kappa": enc_hom(B.kappa), "iota": enc_hom(B.iota), "pi": enc_hom(B.pi.hom), "jay": enc_hom(B.jay.hom)}


def enc_extension(ext: AlgExtension) -> dict:
    return {"M": enc_group(ext.M), "E": enc_ring(ext.E), "S": enc_ring(ext.S),
            "incl": enc_hom(ext.incl), "proj": enc_hom(ext.proj.hom)}


def enc_torsor(T: Torsor) -> dict:
    return {"xbm": enc_xbm(T.X), "carrier": _plain(T.carrier), "action": _plain(T.act), "s": _plain(T.s)}


def enc_cocycle(z: Cocycle) -> dict:
    return {"xbm": enc_xbm(z.X), "I": z.n, "r": _plain(z.r), "m": _plain(z.m)}


ENCODERS: dict[type, tuple[str, Callable]] = {
    FinAbGroup: ("group", enc_group), GroupHom: ("hom", enc_hom), FinRing: ("ring", enc_ring),
    Bimodule: ("bimodule", enc_bimodule), CrossedBimodule: ("xbm", enc_xbm),
    XbmMorphism: ("morphism", enc_morphism), Homotopy: ("homotopy", enc_homotopy),
    Butterfly: ("butterfly", enc_butterfly), AlgExtension: ("extension", enc_extension),
    Torsor: ("torsor", enc_torsor), Cocycle: ("cocycle", enc_cocycle),
}


def encode(obj) -> dict:
    kind, fn = ENCODERS[type(obj)]
    return {"kind": kind, **fn(obj)}


def document(objects: dict[str, Any]) -> dict:
    return {"version": VERSION, "objects": {name: encode(obj) for name, obj in objects.items()}}


# ---------------------------------------------------------------------------
# decoding


@dataclass
class Workspace:
    """Named objects parsed from one or more documents, resolved lazily and
    validated structurally on load."""

    raw: dict[str, tuple[dict, str]] = field(default_factory=dict)
    objects: dict[str, Any] = field(default_factory=dict)
    _resolving: set = field(default_factory=set)

    def add_document(self, doc: Any, source: str = "<doc>") -> None:
        if not isinstance(doc, dict):
            raise InputError("document must be a JSON object", source)
        if doc.get("version") != VERSION:
            raise InputError(f"unsupported version {doc.get('version')!r}", f"{source}:version",
                             "unsupported_version")
        objs = doc.get("objects")
        if not isinstance(objs, dict):
            raise InputError("missing 'objects' mapping", f"{source}:objects")
        for name, body in objs.items():
            if name in self.raw:
                raise InputError(f"duplicate object name {name!r}", f"{source}:objects.{name}", "duplicate_name")
            if not isinstance(body, dict) or "kind" not in body:
                raise InputError("object needs a 'kind'", f"{source}:objects.{name}")
            self.raw[name] = (body, f"{source}:objects.{name}")

    def load_all(self) -> None:
        for name in sorted(self.raw):
            self.get(name)

    def get(self, name: str, kind: str | None = None):
        if name not in self.raw:
            raise InputError(f"unknown object {name!r}", name, "unknown_name")
        if name not in self.objects:
            if name in self._resolving:
                raise InputError(f"reference cycle through {name!r}", name, "reference_cycle")
            self._resolving.add(name)
            body, path = self.raw[name]
            self.objects[name] = Decoder(self).decode(body, body["kind"], path)
            self._resolving.discard(name)
        obj = self.objects[name]
        if kind is not None and ENCODERS[type(obj)][0] != kind:
            raise InputError(f"{name!r} is a {ENCODERS[type(obj)][0]}, expected {kind}", name, "wrong_kind")
        return obj

    def kind_of(self, name: str) -> str:
        return ENCODERS[type(self.get(name))][0]


class Decoder:
    def __init__(self, ws: Workspace | None = None):
        self.ws = ws

    def decode(self, body, kind: str, path: str):
        if isinstance(body, str):
            if self.ws is None:
                raise InputError("references need a workspace", path)
            return self.ws.get(body, kind)
        if not isinstance(body, dict):
            raise InputError(f"expected a {kind} object", path)
        fn = getattr(self, f"_{kind}", None)
        if fn is None:
            raise InputError(f"unknown kind {kind!r}", path, "unknown_kind")
        try:
            return fn(body, path)
        except InputError:
            raise
        except KeyError as e:
            raise InputError(f"missing field {e.args[0]!r}", path, "missing_field") from None
        except (ShapeMismatch, ValueError, TypeError, IndexError) as e:
            raise InputError(str(e) or type(e).__name__, path, "malformed") from None

    def _ints(self, x, path: str):
        if isinstance(x, list):
            return tuple(self._ints(v, path) for v in x)
        if isinstance(x, bool) or not isinstance(x, int):
            raise InputError(f"expected integers, got {x!r}", path)
        return x

    def _group(self, b, path):
        return FinAbGroup(self._ints(b["moduli"], f"{path}.moduli"))

    def _hom(self, b, path, source: FinAbGroup | None = None, target: FinAbGroup | None = None):
        src = self.decode(b["source"], "group", f"{path}.source") if "source" in b else source
        tgt = self.decode(b["target"], "group", f"{path}.target") if "target" in b else target
        if src is None or tgt is None:
            raise InputError("hom needs source and target", path)
        if (source is not None and src != source) or (target is not None and tgt != target):
            raise InputError("hom endpoints do not match their context", path, "shape_mismatch")
        return GroupHom(src, tgt, self._ints(b["matrix"], f"{path}.matrix"))

    def _ring(self, b, path):
        G = FinAbGroup(self._ints(b["moduli"], f"{path}.moduli"))
        return FinRing(G, self._ints(b["unit"], f"{path}.unit"), self._ints(b["mult"], f"{path}.mult"))

    def _bimodule(self, b, path, ring: FinRing | None = None):
        R = self.decode(b["ring"], "ring", f"{path}.ring") if "ring" in b else ring
        if R is None:
            raise InputError("bimodule needs a ring", path)
        if ring is not None and R != ring:
            raise InputError("bimodule ring does not match its context", path, "shape_mismatch")
        G = FinAbGroup(self._ints(b["moduli"], f"{path}.moduli"))
        return Bimodule(R, G, self._ints(b["left"], f"{path}.left"), self._ints(b["right"], f"{path}.right"))

    def _xbm(self, b, path):
        R = self.decode(b["R"], "ring", f"{path}.R")
        Mb = b["M"]
        M = self.ws.get(Mb, "bimodule") if isinstance(Mb, str) else self._bimodule(Mb, f"{path}.M", R)
        d = self._sub_hom(b["del"], f"{path}.del", M.additive, R.additive)
        return CrossedBimodule(R, M, d)

    def _sub_hom(self, b, path, source, target):
        if isinstance(b, str):
            f = self.ws.get(b, "hom")
            if (f.source, f.target) != (source, target):
                raise InputError("hom endpoints do not match their context", path, "shape_mismatch")
            return f
        try:
            return self._hom(b, path, source, target)
        except KeyError as e:
            raise InputError(f"missing field {e.args[0]!r}", path, "missing_field") from None
        except (ShapeMismatch, ValueError, TypeError) as e:
            raise InputError(str(e), path, "malformed") from None

    def _morphism(self, b, path):
        X = self.decode(b["source"], "xbm", f"{path}.source")
        Y = self.decode(b["target"], "xbm", f"{path}.target")
        alpha = self._sub_hom(b["alpha"], f"{path}.alpha", X.R.additive, Y.R.additive)
        beta = self._sub_hom(b["beta"], f"{path}.beta", X.group, Y.group)
        return XbmMorphism(X, Y, RingHom(X.R, Y.R, alpha), beta)

    def _homotopy(self, b, path):
        f1 = self.decode(b["from"], "morphism", f"{path}.from")
        f0 = self.decode(b["to"], "morphism", f"{path}.to")
        h = self._sub_hom(b["h"], f"{path}.h", f0.source.R.additive, f0.target.group)
        return Homotopy(f1, f0, h)

    def _butterfly(self, b, path):
        X = self.decode(b["source"], "xbm", f"{path}.source")
        Y = self.decode(b["target"], "xbm", f"{path}.target")
        E = self.decode(b["E"], "ring", f"{path}.E")
        G = E.additive
        return Butterfly(
            X, Y, E,
            self._sub_hom(b["kappa"], f"{path}.kappa", X.group, G),
            self._sub_hom(b["iota"], f"{path}.iota", Y.group, G),
            RingHom(E, X.R, self._sub_hom(b["pi"], f"{path}.pi", G, X.R.additive)),
            RingHom(E, Y.R, self._sub_hom(b["jay"], f"{path}.jay", G, Y.R.additive)),
        )

    def _extension(self, b, path):
        M = self.decode(b["M"], "group", f"{path}.M")
        E = self.decode(b["E"], "ring", f"{path}.E")
        S = self.decode(b["S"], "ring", f"{path}.S")
        incl = self._sub_hom(b["incl"], f"{path}.incl", M, E.additive)
        proj = self._sub_hom(b["proj"], f"{path}.proj", E.additive, S.additive)
        return AlgExtension(M, E, S, incl, RingHom(E, S, proj))

    def _torsor(self, b, path):
        X = self.decode(b["xbm"], "xbm", f"{path}.xbm")
        carrier = _tuples(b["carrier"])
        act = self._ints(b["action"], f"{path}.action")
        s = self._ints(b["s"], f"{path}.s")
        n, k = len(carrier), X.group.order
        if len(act) != n or any(len(row) != k or any(not 0 <= i < n for i in row) for row in act):
            raise InputError("action table must be |carrier| x |M| with carrier indices", f"{path}.action")
        if len(s) != n:
            raise InputError("one trivialization value per label", f"{path}.s")
        if list(carrier) != sorted(carrier):
            raise InputError("carrier labels must be sorted", f"{path}.carrier")
        return Torsor(X, carrier, act, tuple(X.R.additive.reduce(v) for v in s))

    def _cocycle(self, b, path):
        X = self.decode(b["xbm"], "xbm", f"{path}.xbm")
        r = self._ints(b["r"], f"{path}.r")
        m = self._ints(b["m"], f"{path}.m")
        if b.get("I", len(r)) != len(r):
            raise InputError("'I' does not match the number of r values", f"{path}.I")
        return make_cocycle(X, r, m)


def decode(body: dict):
    """Decode one self-contained object (``{"kind": ..., ...}``)."""
    return Decoder().decode(body, body["kind"], "object")


def loads_document(text: str, source: str = "<doc>") -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}", "invalid_json") from None
    ws = Workspace()
    ws.add_document(doc, source)
    ws.load_all()
    return ws
