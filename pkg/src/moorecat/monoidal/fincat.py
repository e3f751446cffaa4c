"""Finite ordinary categories given by composition tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..report import Report
from ..space import sort_key


class FinCatError(ValueError):
    pass


@dataclass(eq=False)
class FinCat:
    objects: tuple
    morphisms: dict     # name -> (src, tgt)
    identities: dict    # object -> name
    comp: dict          # (g, f) -> g.f
    name: str = ""

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self._homs = {}
        for m, (s, t) in self.morphisms.items():
            self._homs.setdefault((s, t), []).append(m)
        for ms in self._homs.values():
            ms.sort(key=sort_key)

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def hom(self, x, y) -> list:
        return self._homs.get((x, y), [])

    def identity(self, x):
        return self.identities[x]

    def compose(self, g, f):
        try:
            return self.comp[g, f]
        except KeyError:
            raise FinCatError(f"no composite {g!r} . {f!r}") from None

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.hom_from(self.tgt(f)):
                yield g, f

    def hom_from(self, x) -> list:
        return [m for (s, _), ms in self._homs.items() if s == x for m in ms]

    def is_iso(self, m) -> bool:
        return self.inverse(m) is not None

    def inverse(self, m):
        s, t = self.morphisms[m]
        for n in self.hom(t, s):
            if self.comp.get((n, m)) == self.identities[s] and self.comp.get((m, n)) == self.identities[t]:
                return n
        return None


def validate_fincat(C: FinCat) -> Report:
    rep = Report(f"validate {C.name or 'finite category'}")
    for x in C.objects:
        i = C.identities.get(x)
        if i is None or C.morphisms.get(i) != (x, x):
            rep.add("identity", (x,), "missing or mistyped identity")
    for m, (s, t) in C.morphisms.items():
        if s not in C.objects or t not in C.objects:
            rep.add("typed", (m,), "endpoint is not an object")
    if not rep.ok:
        return rep
    for g, f in C.composable_pairs():
        h = C.comp.get((g, f))
        if h is None:
            rep.add("comp-total", (g, f), "missing composite")
        elif C.morphisms.get(h) != (C.src(f), C.tgt(g)):
            rep.add("comp-typed", (g, f, h), "composite has the wrong type")
    if not rep.ok:
        return rep
    for m in C.morphisms:
        if C.compose(C.identity(C.tgt(m)), m) != m or C.compose(m, C.identity(C.src(m))) != m:
            rep.add("unit", (m,), "identity law fails")
    for g, f in C.composable_pairs():
        gf = C.compose(g, f)
        for h in C.hom_from(C.tgt(g)):
            if C.compose(h, gf) != C.compose(C.compose(h, g), f):
                rep.add("associativity", (h, g, f), "composition is not associative")
    return rep


def discrete(objects, name: str = "") -> FinCat:
    ids = {x: f"id:{x}" for x in objects}
    return FinCat(tuple(objects), {ids[x]: (x, x) for x in objects}, ids,
                  {(ids[x], ids[x]): ids[x] for x in objects}, name)


def from_generators(objects, morphisms: dict, compose_fn, name: str = "") -> FinCat:
    """Build a table by closing ``compose_fn`` over all composable pairs.

    ``morphisms`` must already list every morphism including identities
    (named ``id:<x>``).
    """
    ids = {x: f"id:{x}" for x in objects}
    comp = {}
    for (g, (gs, gt)), (f, (fs, ft)) in product(morphisms.items(), repeat=2):
        if gs == ft:
            comp[g, f] = compose_fn(g, f)
    return FinCat(tuple(objects), dict(morphisms), ids, comp, name)


@dataclass(eq=False)
class Functor:
    """Functor between finite categories, as object and morphism tables."""

    source: FinCat
    target: FinCat
    on_objects: dict
    on_morphisms: dict

    def obj(self, x):
        return self.on_objects[x]

    def mor(self, m):
        return self.on_morphisms[m]


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms})
