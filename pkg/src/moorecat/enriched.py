"""Finitely presented graph-enriched categories.

Every hom is a :class:`GraphSpace`.  Morphism (vertex) and edge identifiers
are unique across the whole category, so a vertex names its own hom.
Composition is a table on vertices; pre- and post-composition extend to edges
through graph maps ``f^*`` and ``g_*`` whose vertex parts are forced by the
table, so only edge images are stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Union

from .report import Report
from .space import (Dwell, GraphSpace, MoorePath, PathError, Traverse, normalize,
                    path_from_walk, shortest_walk, sort_key)


class CategoryError(ValueError):
    """Ill-formed enriched category data, or an operation applied outside its domain."""


@dataclass(frozen=True)
class EdgeTo:
    edge: object
    forward: bool = True


@dataclass(frozen=True)
class Collapse:
    vertex: object


EdgeImage = Union[EdgeTo, Collapse]


@dataclass(eq=False)
class EnrichedCat:
    objects: tuple
    homs: dict                  # (x, y) -> GraphSpace
    identities: dict            # x -> vertex of hom(x, x)
    comp: dict                  # (g, f) -> g.f
    pre_action: dict = field(default_factory=dict)    # f -> {edge: EdgeImage}
    post_action: dict = field(default_factory=dict)   # g -> {edge: EdgeImage}
    weak_equivalences: frozenset = frozenset()
    name: str = ""

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self.weak_equivalences = frozenset(self.weak_equivalences)
        homs = {}
        for x, y in product(self.objects, repeat=2):
            homs[x, y] = self.homs.get((x, y), GraphSpace(()))
        extra = set(self.homs) - set(homs)
        if extra:
            raise CategoryError(f"hom declared between unknown objects: {sorted(extra, key=sort_key)}")
        self.homs = homs
        self._vertex_home = {}
        self._edge_home = {}
        for xy, space in homs.items():
            for v in space.vertices:
                if v in self._vertex_home:
                    raise CategoryError(f"vertex {v!r} appears in two homs")
                self._vertex_home[v] = xy
            for e in space.edges:
                if e.id in self._edge_home:
                    raise CategoryError(f"edge {e.id!r} appears in two homs")
                self._edge_home[e.id] = xy
        for x in self.objects:
            if x not in self.identities:
                raise CategoryError(f"object {x!r} has no identity")

    # -- lookups -------------------------------------------------------------
    def hom(self, x, y) -> GraphSpace:
        return self.homs[x, y]

    def home(self, v) -> tuple:
        """``(dom, cod)`` of a vertex."""
        try:
            return self._vertex_home[v]
        except KeyError:
            raise CategoryError(f"unknown morphism {v!r}") from None

    def edge_home(self, e) -> tuple:
        try:
            return self._edge_home[e]
        except KeyError:
            raise CategoryError(f"unknown edge {e!r}") from None

    def dom(self, v):
        return self.home(v)[0]

    def cod(self, v):
        return self.home(v)[1]

    def vertices(self) -> list:
        return sorted(self._vertex_home, key=sort_key)

    def edge(self, e):
        return self.homs[self.edge_home(e)].edge(e)

    def identity(self, x):
        return self.identities[x]

    def is_identity(self, v) -> bool:
        x, y = self.home(v)
        return x == y and self.identities[x] == v

    def compose(self, g, f):
        """``g . f`` (f first)."""
        try:
            return self.comp[g, f]
        except KeyError:
            pass
        # validation rejects tables with entries for non-composable pairs
        if self.cod(f) != self.dom(g):
            raise CategoryError(f"{g!r} . {f!r} is not composable")
        raise CategoryError(f"composition table has no entry for {g!r} . {f!r}")

    def compose_many(self, *vs):
        """``compose_many(h, g, f) = h . g . f``."""
        out = vs[-1]
        for v in reversed(vs[:-1]):
            out = self.compose(v, out)
        return out

    def is_weq(self, v) -> bool:
        return v in self.weak_equivalences

    def pre_image(self, f, e) -> EdgeImage:
        """Image of edge ``e`` under ``f^* = (-) . f``."""
        table = self.pre_action.get(f)
        if table is not None and e in table:
            return table[e]
        if self.is_identity(f):
            return EdgeTo(e, True)
        raise CategoryError(f"pre-composition by {f!r} has no image for edge {e!r}")

    def post_image(self, g, e) -> EdgeImage:
        """Image of edge ``e`` under ``g_* = g . (-)``."""
        table = self.post_action.get(g)
        if table is not None and e in table:
            return table[e]
        if self.is_identity(g):
            return EdgeTo(e, True)
        raise CategoryError(f"post-composition by {g!r} has no image for edge {e!r}")

    def is_forest(self) -> bool:
        return all(s.is_forest() for s in self.homs.values())


def then_image(image: EdgeImage, apply) -> EdgeImage:
    """Push an edge image through a second edge map ``apply(edge) -> EdgeImage``."""
    if isinstance(image, Collapse):
        return None  # caller supplies the vertex image
    nxt = apply(image.edge)
    if isinstance(nxt, Collapse):
        return nxt
    return EdgeTo(nxt.edge, nxt.forward == image.forward)


def _compose_images(first: EdgeImage, second_edge, second_vertex) -> EdgeImage:
    if isinstance(first, Collapse):
        return Collapse(second_vertex(first.vertex))
    return then_image(first, second_edge)


# -- pushing paths along actions -----------------------------------------------

def _push(C: EnrichedCat, p: MoorePath, vmap, emap) -> MoorePath:
    steps = []
    for s in p.steps:
        if isinstance(s, Dwell):
            steps.append(Dwell(vmap(s.vertex), s.duration))
            continue
        img = emap(s.edge)
        if isinstance(img, Collapse):
            steps.append(Dwell(img.vertex, s.duration))
        else:
            e = C.edge(img.edge)
            fwd = img.forward == s.forward
            src, tgt = (e.src, e.tgt) if fwd else (e.tgt, e.src)
            if src != vmap(s.source) or tgt != vmap(s.target):
                raise CategoryError(f"edge image of {s.edge!r} disagrees with composition on endpoints")
            steps.append(Traverse(img.edge, fwd, s.duration, src, tgt))
    return normalize(MoorePath(vmap(p.start), tuple(steps)))


def _check_path_in(C: EnrichedCat, p: MoorePath, xy):
    if not p.lives_in(C.homs[xy]):
        raise CategoryError(f"path {p} does not lie in hom{xy}")


def act_pre(C: EnrichedCat, f, p: MoorePath) -> MoorePath:
    """``p . f``: precompose every point of ``p`` with ``f``."""
    x, x2 = C.home(f)
    src, z = C.home(p.start)
    if src != x2:
        raise CategoryError(f"cannot precompose a path in hom({src},{z}) with {f!r}: {x}->{x2}")
    _check_path_in(C, p, (x2, z))
    return _push(C, p, lambda v: C.compose(v, f), lambda e: C.pre_image(f, e))


def act_post(C: EnrichedCat, g, p: MoorePath) -> MoorePath:
    """``g . p``: postcompose every point of ``p`` with ``g``."""
    y2, z2 = C.home(g)
    x, tgt = C.home(p.start)
    if tgt != y2:
        raise CategoryError(f"cannot postcompose a path in hom({x},{tgt}) with {g!r}: {y2}->{z2}")
    _check_path_in(C, p, (x, y2))
    return _push(C, p, lambda v: C.compose(g, v), lambda e: C.post_image(g, e))


# -- homotopy category ---------------------------------------------------------

def pi0_hom(C: EnrichedCat, x, y) -> list:
    """Connected components of hom(x, y), sorted."""
    return C.hom(x, y).components()


def component_of(C: EnrichedCat, v) -> frozenset:
    for comp in pi0_hom(C, *C.home(v)):
        if v in comp:
            return comp
    raise CategoryError(f"{v!r} lies in no component")


@dataclass(frozen=True)
class HoCat:
    objects: tuple
    homs: dict        # (x, y) -> list of classes (frozensets of vertices)
    comp: dict        # (G, F) -> class
    identities: dict  # x -> class

    def hom_size(self, x, y) -> int:
        return len(self.homs[x, y])

    def class_of(self, v) -> frozenset:
        for classes in self.homs.values():
            for c in classes:
                if v in c:
                    return c
        raise KeyError(v)


class InducedCompositionError(CategoryError):
    """Composition is not constant on components; the validator missed something."""


def homotopy_category(C: EnrichedCat) -> HoCat:
    homs = {xy: pi0_hom(C, *xy) for xy in C.homs}
    comp = {}
    for x, y, z in product(C.objects, repeat=3):
        for G in homs[y, z]:
            for F in homs[x, y]:
                results = {C.compose(g, f) for g in G for f in F}
                classes = {c for c in homs[x, z] if c & results}
                if len(classes) != 1:
                    raise InducedCompositionError(
                        f"composition of classes {sorted(G, key=sort_key)} . "
                        f"{sorted(F, key=sort_key)} is not well defined")
                comp[G, F] = classes.pop()
    identities = {}
    for x in C.objects:
        identities[x] = next(c for c in homs[x, x] if C.identity(x) in c)
    return HoCat(C.objects, homs, comp, identities)


@dataclass(frozen=True)
class IsoWitness:
    """``inverse`` of ``morphism`` up to homotopy, with connecting paths.

    ``left_path`` runs from ``id_x`` to ``inverse . morphism`` in hom(x, x);
    ``right_path`` runs from ``id_y`` to ``morphism . inverse`` in hom(y, y).
    Each edge is traversed in unit time.
    """

    morphism: object
    inverse: object
    left_path: MoorePath
    right_path: MoorePath


def find_pi0_inverse(C: EnrichedCat, f) -> Optional[IsoWitness]:
    x, y = C.home(f)
    idx, idy = C.identity(x), C.identity(y)
    candidates = sorted(C.hom(y, x).vertices, key=sort_key)
    # strict inverses first, so identities invert to themselves
    candidates.sort(key=lambda v: not (C.compose(v, f) == idx and C.compose(f, v) == idy))
    for v in candidates:
        left = shortest_walk(C.hom(x, x), idx, C.compose(v, f))
        if left is None:
            continue
        right = shortest_walk(C.hom(y, y), idy, C.compose(f, v))
        if right is None:
            continue
        return IsoWitness(f, v, path_from_walk(C.hom(x, x), idx, left),
                          path_from_walk(C.hom(y, y), idy, right))
    return None


def is_pi0_iso(C: EnrichedCat, f) -> bool:
    return find_pi0_inverse(C, f) is not None


# -- validation ----------------------------------------------------------------

def validate(C: EnrichedCat) -> Report:
    """Check every structural law; an empty report means valid."""
    rep = Report(f"validate {C.name or 'category'}")
    objs = C.objects
    for x in objs:
        if not C.hom(x, x).has_vertex(C.identity(x)):
            rep.add("identity-in-hom", (x, C.identity(x)), "identity is not a vertex of hom(x,x)")
    if not rep.ok:
        return rep

    # composition table: totality and typing
    for x, y, z in product(objs, repeat=3):
        for g in C.hom(y, z).vertices:
            for f in C.hom(x, y).vertices:
                h = C.comp.get((g, f))
                if h is None:
                    rep.add("comp-total", (g, f), f"no entry for {g} . {f}")
                elif not C.hom(x, z).has_vertex(h):
                    rep.add("comp-typed", (g, f, h), f"{g} . {f} = {h} is not in hom({x},{z})")
    for (g, f) in C.comp:
        try:
            if C.cod(f) != C.dom(g):
                rep.add("comp-typed", (g, f), "entry for a non-composable pair")
        except CategoryError:
            rep.add("comp-typed", (g, f), "entry mentions an unknown morphism")
    if not rep.ok:
        return rep

    for x, y in product(objs, repeat=2):
        for f in C.hom(x, y).vertices:
            if C.compose(C.identity(y), f) != f:
                rep.add("left-unit", (f,), f"id_{y} . {f} != {f}")
            if C.compose(f, C.identity(x)) != f:
                rep.add("right-unit", (f,), f"{f} . id_{x} != {f}")
    for w, x, y, z in product(objs, repeat=4):
        for h in C.hom(y, z).vertices:
            for g in C.hom(x, y).vertices:
                hg = C.compose(h, g)
                for f in C.hom(w, x).vertices:
                    if C.compose(hg, f) != C.compose(h, C.compose(g, f)):
                        rep.add("associativity", (h, g, f), f"({h}.{g}).{f} != {h}.({g}.{f})")

    _validate_actions(C, rep)
    if rep.ok:
        _validate_weqs(C, rep)
    for xy, space in sorted(C.homs.items(), key=lambda kv: sort_key(kv[0])):
        if not space.is_forest():
            rep.notes.append(f"hom{xy} is not a forest; pi0 full-faithfulness checks will refuse it")
    return rep


def _image_ok(C, rep, kind, act, e, img, vmap):
    edge = C.edge(e)
    a, b = vmap(edge.src), vmap(edge.tgt)
    if isinstance(img, Collapse):
        if not (img.vertex == a == b):
            rep.add(f"{kind}-typed", (act, e), f"collapse of {e} to {img.vertex} but endpoints go to {a}, {b}")
        return
    try:
        home = C.edge_home(img.edge)
    except CategoryError:
        rep.add(f"{kind}-typed", (act, e), f"image edge {img.edge} does not exist")
        return
    tgt = C.edge(img.edge)
    s, t = (tgt.src, tgt.tgt) if img.forward else (tgt.tgt, tgt.src)
    if (s, t) != (a, b) or home != C.home(a):
        rep.add(f"{kind}-typed", (act, e), f"image {img.edge} runs {s}->{t}, endpoints require {a}->{b}")


def _validate_actions(C: EnrichedCat, rep: Report):
    objs = C.objects
    verts = C.vertices()

    def pre(f, e):
        return C.pre_image(f, e)

    def post(g, e):
        return C.post_image(g, e)

    missing = False
    # tables are total and agree with composition on endpoints
    for f in verts:
        x, x2 = C.home(f)
        for z in objs:
            for edge in C.hom(x2, z).edges:
                try:
                    img = pre(f, edge.id)
                except CategoryError:
                    rep.add("pre-action-total", (f, edge.id), f"no image of {edge.id} under {f}^*")
                    missing = True
                    continue
                _image_ok(C, rep, "pre-action", f, edge.id, img, lambda v: C.compose(v, f))
    for g in verts:
        y2, z2 = C.home(g)
        for x in objs:
            for edge in C.hom(x, y2).edges:
                try:
                    img = post(g, edge.id)
                except CategoryError:
                    rep.add("post-action-total", (g, edge.id), f"no image of {edge.id} under {g}_*")
                    missing = True
                    continue
                _image_ok(C, rep, "post-action", g, edge.id, img, lambda v: C.compose(g, v))
    if missing or not rep.ok:
        return

    for x in objs:
        i = C.identity(x)
        for e in C._edge_home:
            if C.dom(C.edge(e).src) == x and pre(i, e) != EdgeTo(e, True):
                rep.add("pre-action-identity", (i, e), "identity does not act trivially")
            if C.cod(C.edge(e).src) == x and post(i, e) != EdgeTo(e, True):
                rep.add("post-action-identity", (i, e), "identity does not act trivially")

    # (f2 . f)^* = f^* o f2^*  and  (g . g2)_* = g_* o g2_*
    for f in verts:
        x, x1 = C.home(f)
        for f2 in C.vertices():
            if C.dom(f2) != x1:
                continue
            x2 = C.cod(f2)
            ff = C.compose(f2, f)
            for z in objs:
                for edge in C.hom(x2, z).edges:
                    lhs = pre(ff, edge.id)
                    rhs = _compose_images(pre(f2, edge.id), lambda e: pre(f, e),
                                          lambda v: C.compose(v, f))
                    if lhs != rhs:
                        rep.add("pre-action-functorial", (f2, f, edge.id), f"({f2}.{f})^* != {f}^* o {f2}^*")
    for g in verts:
        y1, y2 = C.home(g)
        for g2 in C.vertices():
            if C.cod(g2) != y1:
                continue
            y0 = C.dom(g2)
            gg = C.compose(g, g2)
            for x in objs:
                for edge in C.hom(x, y0).edges:
                    lhs = post(gg, edge.id)
                    rhs = _compose_images(post(g2, edge.id), lambda e: post(g, e),
                                          lambda v: C.compose(g, v))
                    if lhs != rhs:
                        rep.add("post-action-functorial", (g, g2, edge.id), f"({g}.{g2})_* != {g}_* o {g2}_*")

    # g_* f^* = f^* g_*
    for f in verts:
        x, x2 = C.home(f)
        for g in verts:
            y2, z2 = C.home(g)
            for edge in C.hom(x2, y2).edges:
                a = _compose_images(pre(f, edge.id), lambda e: post(g, e), lambda v: C.compose(g, v))
                b = _compose_images(post(g, edge.id), lambda e: pre(f, e), lambda v: C.compose(v, f))
                if a != b:
                    rep.add("action-interchange", (g, f, edge.id), f"{g}_* {f}^* != {f}^* {g}_* on {edge.id}")


def _validate_weqs(C: EnrichedCat, rep: Report):
    W = C.weak_equivalences
    for w in sorted(W, key=sort_key):
        try:
            C.home(w)
        except CategoryError:
            rep.add("W-typed", (w,), "marked morphism does not exist")
    if not rep.ok:
        return
    for x in C.objects:
        if C.identity(x) not in W:
            rep.add("W-identity", (C.identity(x),), "identity is not marked")
    for f in sorted(W, key=sort_key):
        for g in sorted(W, key=sort_key):
            if C.dom(g) == C.cod(f) and C.compose(g, f) not in W:
                rep.add("W-composition", (g, f), f"{g} . {f} = {C.compose(g, f)} is not marked")
    for xy, space in sorted(C.homs.items(), key=lambda kv: sort_key(kv[0])):
        for e in space.edges:
            if (e.src in W) != (e.tgt in W):
                rep.add("W-component", (e.id, e.src, e.tgt), "marking is not constant along this edge")
    for w in sorted(W, key=sort_key):
        if not is_pi0_iso(C, w):
            rep.add("W-invertible", (w,), f"{w} has no inverse in the homotopy category")
