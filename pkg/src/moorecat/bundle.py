"""JSON bundles: categories, path-object morphisms, monoidal data and presentations.

Rationals are strings ``"p/q"``.  Dumping is canonical (sorted keys, fixed
indent) so the same bundle always produces the same bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .enriched import CategoryError, Collapse, EdgeTo, EnrichedCat
from .interchange import MonoidalEnrichedCat
from .monoidal.fincat import FinCat
from .monoidal.presentation import (OperadPresentation, PresentationError, presentation_from_json,
                                    presentation_to_json)
from .monoidal.tensor import TensorData
from .pathobj import PMorphism, PObject
from .report import dumps
from .space import (Dwell, Edge, GraphSpace, MoorePath, PathError, Traverse, format_rational,
                    parse_rational, sort_key)

FORMAT_VERSION = 1


class BundleError(ValueError):
    """Unreadable bundle: bad JSON, missing fields or dangling references."""


@dataclass
class Bundle:
    categories: dict = field(default_factory=dict)     # name -> EnrichedCat
    pmorphisms: dict = field(default_factory=dict)     # category name -> {name: PMorphism}
    fincats: dict = field(default_factory=dict)        # name -> FinCat
    tensors: dict = field(default_factory=dict)        # fincat name -> TensorData
    monoidal: dict = field(default_factory=dict)       # category name -> MonoidalEnrichedCat
    presentations: dict = field(default_factory=dict)  # name -> OperadPresentation
    version: int = FORMAT_VERSION


# -- paths -------------------------------------------------------------------------

def path_to_json(p: MoorePath) -> dict:
    steps = []
    for s in p.steps:
        if isinstance(s, Dwell):
            steps.append(["D", format_rational(s.duration)])
        else:
            steps.append(["T", s.edge, "+" if s.forward else "-", format_rational(s.duration)])
    return {"start": p.start, "steps": steps}


def path_from_json(d, edge_lookup) -> MoorePath:
    """``edge_lookup(edge_id) -> Edge`` resolves the oriented endpoints."""
    try:
        here = d["start"]
        steps = []
        for raw in d.get("steps", []):
            if raw[0] == "D":
                steps.append(Dwell(here, parse_rational(raw[1])))
            elif raw[0] == "T":
                _, eid, sign, dur = raw
                if sign not in ("+", "-"):
                    raise BundleError(f"edge direction must be '+' or '-', got {sign!r}")
                e = edge_lookup(eid)
                fwd = sign == "+"
                src, tgt = (e.src, e.tgt) if fwd else (e.tgt, e.src)
                steps.append(Traverse(eid, fwd, parse_rational(dur), src, tgt))
                here = tgt
            else:
                raise BundleError(f"unknown step {raw!r}")
        return MoorePath(d["start"], tuple(steps))
    except (KeyError, TypeError, IndexError, ValueError, CategoryError) as exc:
        if isinstance(exc, BundleError):
            raise
        raise BundleError(f"malformed path {d!r}: {exc}") from None


def _image_to_json(img):
    if isinstance(img, Collapse):
        return ["collapse", img.vertex]
    return ["edge", img.edge, "+" if img.forward else "-"]


def _image_from_json(raw):
    if raw[0] == "collapse":
        return Collapse(raw[1])
    if raw[0] == "edge" and raw[2] in ("+", "-"):
        return EdgeTo(raw[1], raw[2] == "+")
    raise BundleError(f"bad edge image {raw!r}")


# -- enriched categories ---------------------------------------------------------------

def category_to_json(C: EnrichedCat, pmorphisms: dict | None = None) -> dict:
    homs = []
    for (x, y), sp in sorted(C.homs.items(), key=lambda kv: sort_key(kv[0])):
        if not sp.vertices and not sp.edges:
            continue
        homs.append({"src": x, "tgt": y, "vertices": sorted(sp.vertices, key=sort_key),
                     "edges": sorted([[e.id, e.src, e.tgt] for e in sp.edges], key=sort_key)})
    out = {
        "objects": list(C.objects),
        "homs": homs,
        "identities": dict(C.identities),
        "comp": sorted([[g, f, h] for (g, f), h in C.comp.items()], key=sort_key),
        "pre_action": {f: {e: _image_to_json(i) for e, i in t.items()} for f, t in C.pre_action.items()},
        "post_action": {g: {e: _image_to_json(i) for e, i in t.items()} for g, t in C.post_action.items()},
        "weak_equivalences": sorted(C.weak_equivalences, key=sort_key),
    }
    if pmorphisms:
        out["pmorphisms"] = {n: pmorphism_to_json(m) for n, m in pmorphisms.items()}
    return out


def category_from_json(name: str, d: dict) -> tuple:
    try:
        homs = {}
        for h in d.get("homs", []):
            edges = tuple(Edge(e[0], e[1], e[2]) for e in h.get("edges", []))
            homs[h["src"], h["tgt"]] = GraphSpace(tuple(h.get("vertices", [])), edges)
        comp = {}
        for g, f, h in d.get("comp", []):
            comp[g, f] = h
        pre = {f: {e: _image_from_json(i) for e, i in t.items()} for f, t in d.get("pre_action", {}).items()}
        post = {g: {e: _image_from_json(i) for e, i in t.items()} for g, t in d.get("post_action", {}).items()}
        C = EnrichedCat(tuple(d["objects"]), homs, dict(d["identities"]), comp, pre, post,
                        frozenset(d.get("weak_equivalences", [])), name)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, BundleError):
            raise
        raise BundleError(f"category {name!r}: {exc}") from None
    pms = {n: pmorphism_from_json(C, m) for n, m in d.get("pmorphisms", {}).items()}
    return C, pms


def pmorphism_to_json(m: PMorphism) -> dict:
    return {"src": [m.src.x, m.src.y, m.src.a], "tgt": [m.tgt.x, m.tgt.y, m.tgt.a],
            "f": m.f, "g": m.g, "path": path_to_json(m.path), "length": format_rational(m.length)}


def pmorphism_from_json(C: EnrichedCat, d: dict) -> PMorphism:
    try:
        path = path_from_json(d["path"], C.edge)
        m = PMorphism(PObject(*d["src"]), PObject(*d["tgt"]), d["f"], d["g"], path)
    except (KeyError, TypeError) as exc:
        raise BundleError(f"malformed path-object morphism: {exc}") from None
    if "length" in d and parse_rational(d["length"]) != m.length:
        raise BundleError(f"declared length {d['length']} does not match the path")
    return m


# -- finite categories and tensor data ---------------------------------------------------

def fincat_to_json(C: FinCat) -> dict:
    return {"objects": list(C.objects),
            "morphisms": sorted([[m, s, t] for m, (s, t) in C.morphisms.items()], key=sort_key),
            "identities": dict(C.identities),
            "comp": sorted([[g, f, h] for (g, f), h in C.comp.items()], key=sort_key)}


def fincat_from_json(name: str, d: dict) -> FinCat:
    try:
        return FinCat(tuple(d["objects"]), {m: (s, t) for m, s, t in d["morphisms"]},
                      dict(d["identities"]), {(g, f): h for g, f, h in d["comp"]}, name)
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleError(f"finite category {name!r}: {exc}") from None


def _rows(table: dict) -> list:
    return sorted([list(k) + [v] if isinstance(k, tuple) else [k, v] for k, v in table.items()],
                  key=sort_key)


def _unrows(rows, n) -> dict:
    return {tuple(r[:n]) if n > 1 else r[0]: r[n] for r in rows}


def tensor_to_json(T: TensorData) -> dict:
    out = {"tensor_obj": _rows(T.tensor_obj), "tensor_mor": _rows(T.tensor_mor),
           "assoc": _rows(T.assoc), "assoc_inv": _rows(T.assoc_inv),
           "sym": _rows(T.sym), "sym_inv": _rows(T.sym_inv)}
    if T.unit is not None:
        out["unit"] = T.unit
        out["left_unitor"] = _rows(T.left_unitor)
        out["right_unitor"] = _rows(T.right_unitor)
    return out


def tensor_from_json(d: dict) -> TensorData:
    try:
        return TensorData(_unrows(d["tensor_obj"], 2), _unrows(d["tensor_mor"], 2), d.get("unit"),
                          _unrows(d.get("assoc", []), 3), _unrows(d.get("assoc_inv", []), 3),
                          _unrows(d.get("sym", []), 2), _unrows(d.get("sym_inv", []), 2),
                          _unrows(d.get("left_unitor", []), 1), _unrows(d.get("right_unitor", []), 1))
    except (KeyError, TypeError, IndexError) as exc:
        raise BundleError(f"tensor data: {exc}") from None


def monoidal_to_json(M: MonoidalEnrichedCat) -> dict:
    out = {"tensor_obj": _rows(M.tensor_obj), "tensor_vertex": _rows(M.tensor_vertex),
           "whisker_right": sorted([[e, u, _image_to_json(i)] for (e, u), i in M.whisker_right.items()], key=sort_key),
           "whisker_left": sorted([[u, e, _image_to_json(i)] for (u, e), i in M.whisker_left.items()], key=sort_key),
           "families": {n: path_to_json(p) for n, p in M.families.items()}}
    if M.unit is not None:
        out["unit"] = M.unit
    return out


def monoidal_from_json(C: EnrichedCat, d: dict) -> MonoidalEnrichedCat:
    try:
        return MonoidalEnrichedCat(
            C, _unrows(d["tensor_obj"], 2), _unrows(d["tensor_vertex"], 2),
            {(e, u): _image_from_json(i) for e, u, i in d.get("whisker_right", [])},
            {(u, e): _image_from_json(i) for u, e, i in d.get("whisker_left", [])},
            d.get("unit"), {n: path_from_json(p, C.edge) for n, p in d.get("families", {}).items()},
            C.name)
    except (KeyError, TypeError, IndexError) as exc:
        raise BundleError(f"monoidal section: {exc}") from None


# -- whole bundles ---------------------------------------------------------------------

def bundle_to_json(b: Bundle) -> dict:
    out = {"format": b.version}
    if b.categories:
        out["categories"] = {n: category_to_json(C, b.pmorphisms.get(n)) for n, C in b.categories.items()}
    if b.fincats:
        out["fincats"] = {n: fincat_to_json(C) for n, C in b.fincats.items()}
    if b.tensors:
        out["tensors"] = {n: tensor_to_json(T) for n, T in b.tensors.items()}
    if b.monoidal:
        out["monoidal"] = {n: monoidal_to_json(M) for n, M in b.monoidal.items()}
    if b.presentations:
        out["presentations"] = {n: presentation_to_json(P) for n, P in b.presentations.items()}
    return out


def bundle_from_json(d) -> Bundle:
    if not isinstance(d, dict):
        raise BundleError("bundle must be a JSON object")
    if d.get("format") != FORMAT_VERSION:
        raise BundleError(f"unsupported bundle format {d.get('format')!r}")
    b = Bundle()
    try:
        for n, c in d.get("categories", {}).items():
            b.categories[n], pms = category_from_json(n, c)
            if pms:
                b.pmorphisms[n] = pms
        for n, c in d.get("fincats", {}).items():
            b.fincats[n] = fincat_from_json(n, c)
        for n, t in d.get("tensors", {}).items():
            if n not in b.fincats:
                raise BundleError(f"tensor data {n!r} has no finite category of that name")
            b.tensors[n] = tensor_from_json(t)
        for n, m in d.get("monoidal", {}).items():
            if n not in b.categories:
                raise BundleError(f"monoidal section {n!r} has no category of that name")
            b.monoidal[n] = monoidal_from_json(b.categories[n], m)
        for n, p in d.get("presentations", {}).items():
            b.presentations[n] = presentation_from_json(p)
    except (CategoryError, PathError, PresentationError) as exc:
        raise BundleError(str(exc)) from None
    except AttributeError as exc:
        raise BundleError(f"malformed bundle: {exc}") from None
    return b


def dumps_bundle(b: Bundle) -> str:
    return dumps(bundle_to_json(b))


def loads_bundle(text: str) -> Bundle:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"not valid JSON: {exc}") from None
    return bundle_from_json(d)


def load_bundle(path) -> Bundle:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise BundleError(f"cannot read {path}: {exc}") from None
    return loads_bundle(text)


def fixture_text(name: str) -> str:
    try:
        return resources.files("moorecat").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise BundleError(f"no shipped fixture named {name!r}") from None


def load_fixture(name: str) -> Bundle:
    return loads_bundle(fixture_text(name))


def fixture_bundle(name: str) -> Bundle:
    """Build a shipped fixture from its Python builder."""
    from . import fixtures as fx
    from .monoidal.presentation import BUILTINS

    b = Bundle()
    if name in ("walking-arrow", "cylinder"):
        C = fx.walking_arrow() if name == "walking-arrow" else fx.cylinder()
        b.categories[name] = C
    elif name == "walking-weq":
        C = fx.walking_weq()
        b.categories[name] = C
        b.pmorphisms[name] = fx.walking_weq_pmorphisms(C)
    elif name == "interchange-default":
        M = fx.interchange_default()
        b.categories[name] = M.cat
        b.monoidal[name] = M
    elif name in ("cmonoid-C3", "ncmonoid-S3"):
        C, T = fx.cmonoid_c3() if name == "cmonoid-C3" else fx.ncmonoid_s3()
        b.fincats[name] = C
        b.tensors[name] = T
        b.presentations = {k: f() for k, f in BUILTINS.items()}
    else:
        raise BundleError(f"no shipped fixture named {name!r}")
    return b
