"""The pointwise tensor of Moore paths and its clash with strict composition.

For a monoidal graph-enriched category, two Moore paths are tensored by
running them side by side, ``(alpha (.) beta)(t) = alpha(t) (x) beta(t)``,
the shorter one held at its end.  Whenever one side moves the other must be
at rest: a graph has no diagonal cells, so simultaneous moves are reported
as a failure.  Composition in P(C) concatenates, so the two ways of
combining four morphisms differ as soon as the lengths are out of step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .enriched import Collapse, EdgeTo, EnrichedCat
from .pathobj import PathObjectError, PMorphism, PObject, p_compose
from .report import Report
from .space import (Dwell, MoorePath, PairingFailure, Traverse, concat, format_rational, normalize,
                    rescale, sort_key, synchronize, traverse, unit_path)


@dataclass(eq=False)
class MonoidalEnrichedCat:
    cat: EnrichedCat
    tensor_obj: dict        # (x, x2) -> x (x) x2
    tensor_vertex: dict     # (u, u2) -> u (x) u2
    whisker_right: dict     # (edge, u2) -> image of edge (x) u2
    whisker_left: dict      # (u, edge2) -> image of u (x) edge2
    unit: object = None
    families: dict = field(default_factory=dict)   # name -> template MoorePath
    name: str = ""

    def obj(self, x, y):
        return self.tensor_obj[x, y]

    def vertex(self, u, v):
        return self.tensor_vertex[u, v]


def validate_monoidal(M: MonoidalEnrichedCat) -> Report:
    """Typing and functoriality of the tensor tables and whiskerings."""
    C = M.cat
    rep = Report(f"monoidal {M.name or C.name}")
    for x, y in product(C.objects, repeat=2):
        if (x, y) not in M.tensor_obj or M.tensor_obj[x, y] not in C.objects:
            rep.add("tensor-obj", (x, y), "tensor of objects missing or not an object")
    if not rep.ok:
        return rep
    vs = C.vertices()
    for u, v in product(vs, repeat=2):
        (x, y), (x2, y2) = C.home(u), C.home(v)
        w = M.tensor_vertex.get((u, v))
        if w is None:
            rep.add("tensor-vertex", (u, v), "tensor of morphisms missing")
        elif C.home(w) != (M.obj(x, x2), M.obj(y, y2)):
            rep.add("tensor-vertex-typed", (u, v, w), "tensor lies in the wrong hom")
    if not rep.ok:
        return rep
    for x, x2 in product(C.objects, repeat=2):
        if M.vertex(C.identity(x), C.identity(x2)) != C.identity(M.obj(x, x2)):
            rep.add("tensor-identity", (x, x2), "id (x) id is not the identity")
    for (g, f), gf in sorted(C.comp.items(), key=sort_key):
        for (g2, f2), gf2 in sorted(C.comp.items(), key=sort_key):
            lhs = C.compose(M.vertex(g, g2), M.vertex(f, f2))
            if lhs != M.vertex(gf, gf2):
                rep.add("tensor-interchange", (g, f, g2, f2), "(g x g2)(f x f2) != gf x g2f2")
    for (x, y), space in sorted(C.homs.items(), key=sort_key):
        for e in space.edges:
            for v in vs:
                _whisker_ok(M, rep, "whisker-right", (e.id, v), M.whisker_right.get((e.id, v)),
                            M.vertex(e.src, v), M.vertex(e.tgt, v))
                _whisker_ok(M, rep, "whisker-left", (v, e.id), M.whisker_left.get((v, e.id)),
                            M.vertex(v, e.src), M.vertex(v, e.tgt))
    for a, b in product(sorted(C.weak_equivalences, key=sort_key), repeat=2):
        if not C.is_weq(M.vertex(a, b)):
            rep.add("tensor-W", (a, b), "tensor of weak equivalences is not marked")
    return rep


def _whisker_ok(M, rep, check, key, img, src, tgt):
    if img is None:
        rep.add(check, key, "no image")
    elif isinstance(img, Collapse):
        if not (img.vertex == src == tgt):
            rep.add(check, key, f"collapse to {img.vertex} but ends are {src}, {tgt}")
    else:
        e = M.cat.edge(img.edge)
        ends = (e.src, e.tgt) if img.forward else (e.tgt, e.src)
        if ends != (src, tgt):
            rep.add(check, key, f"image runs {ends}, needs {(src, tgt)}")


# -- the pointwise tensor -------------------------------------------------------

def odot_objects(M: MonoidalEnrichedCat, a: PObject, b: PObject) -> PObject:
    w = M.vertex(a.a, b.a)
    if not M.cat.is_weq(w):
        raise PathObjectError(f"{a.a} (x) {b.a} = {w} is not a marked weak equivalence")
    return PObject(M.obj(a.x, b.x), M.obj(a.y, b.y), w)


def _whiskered(M, img, s: Traverse, duration, src, tgt):
    if isinstance(img, Collapse):
        return Dwell(img.vertex, duration)
    fwd = img.forward == s.forward
    return traverse_step(M.cat, img.edge, fwd, duration, src, tgt)


def traverse_step(C: EnrichedCat, edge, fwd, duration, src, tgt):
    e = C.edge(edge)
    ends = (e.src, e.tgt) if fwd else (e.tgt, e.src)
    if ends != (src, tgt):
        raise PathObjectError(f"whiskered edge {edge} runs {ends}, expected {(src, tgt)}")
    return Traverse(edge, fwd, duration, src, tgt)


def odot_paths(M: MonoidalEnrichedCat, alpha: MoorePath, beta: MoorePath):
    """``t -> alpha(t) (x) beta(t)``, of length ``max``; a failure if both move at once."""
    segs = synchronize(alpha, beta, pad=True)
    if isinstance(segs, PairingFailure):
        return segs
    steps = []
    for seg in segs:
        l, r = seg.left, seg.right
        if isinstance(l, Traverse):
            img = M.whisker_right[l.edge, r.vertex]
            steps.append(_whiskered(M, img, l, seg.duration,
                                    M.vertex(l.source, r.vertex), M.vertex(l.target, r.vertex)))
        elif isinstance(r, Traverse):
            img = M.whisker_left[l.vertex, r.edge]
            steps.append(_whiskered(M, img, r, seg.duration,
                                    M.vertex(l.vertex, r.source), M.vertex(l.vertex, r.target)))
        else:
            steps.append(Dwell(M.vertex(l.vertex, r.vertex), seg.duration))
    return normalize(MoorePath(M.vertex(alpha.start, beta.start), tuple(steps)))


def odot_pmorphisms(M: MonoidalEnrichedCat, m1: PMorphism, m2: PMorphism):
    path = odot_paths(M, m1.path, m2.path)
    if isinstance(path, PairingFailure):
        return path
    return PMorphism(odot_objects(M, m1.src, m2.src), odot_objects(M, m1.tgt, m2.tgt),
                     M.vertex(m1.f, m2.f), M.vertex(m1.g, m2.g), path)


# -- interchange ------------------------------------------------------------------

VERDICTS = ("equal", "unequal", "undefined")


@dataclass(frozen=True)
class InterchangeVerdict:
    verdict: str
    lengths: tuple          # (r, v, s, z)
    lhs: object = None      # (beta (.) beta2) o (alpha (.) alpha2), or a failure
    rhs: object = None      # (beta o alpha) (.) (beta2 o alpha2), or a failure

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"

    def to_json(self) -> dict:
        r, v, s, z = (format_rational(x) for x in self.lengths)
        return {"r": r, "v": v, "s": s, "z": z, "verdict": self.verdict,
                "lhs": _side_json(self.lhs), "rhs": _side_json(self.rhs)}


def _side_json(x):
    if isinstance(x, PairingFailure):
        return {"failure": x.reason}
    if isinstance(x, PMorphism):
        return {"path": str(x.path), "length": format_rational(x.length)}
    return None


def check_interchange(M: MonoidalEnrichedCat, alpha: PMorphism, alpha2: PMorphism,
                      beta: PMorphism, beta2: PMorphism) -> InterchangeVerdict:
    """Compare both sides of the interchange law as normal forms.

    ``undefined`` means one side needs a simultaneous move on both factors.
    """
    C = M.cat
    if alpha.tgt != beta.src or alpha2.tgt != beta2.src:
        raise PathObjectError("interchange inputs do not chain")
    lengths = (alpha.length, alpha2.length, beta.length, beta2.length)
    top, bottom = odot_pmorphisms(M, alpha, alpha2), odot_pmorphisms(M, beta, beta2)
    if isinstance(top, PairingFailure):
        lhs = top
    elif isinstance(bottom, PairingFailure):
        lhs = bottom
    else:
        lhs = p_compose(C, bottom, top)
    rhs = odot_pmorphisms(M, p_compose(C, beta, alpha), p_compose(C, beta2, alpha2))
    if isinstance(lhs, PairingFailure) or isinstance(rhs, PairingFailure):
        verdict = "undefined"
    else:
        verdict = "equal" if lhs == rhs else "unequal"
    return InterchangeVerdict(verdict, lengths, lhs, rhs)


def family_path(template: MoorePath, r) -> MoorePath:
    """``template`` stretched to length ``r``; the constant path when ``r = 0``."""
    r = Fraction(r)
    if r == 0:
        return unit_path(template.start)
    return rescale(template, r)


def family_morphism(M: MonoidalEnrichedCat, name: str, r, obj: PObject | None = None) -> PMorphism:
    """Endomorphism of ``obj`` with path from the named family at length ``r``."""
    C = M.cat
    path = family_path(M.families[name], r)
    if obj is None:
        x, y = C.home(path.start)
        obj = PObject(x, y, path.start)
    return PMorphism(obj, obj, C.identity(obj.x), C.identity(obj.y), path)


SWEEP_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2))


def interchange_sweep(M: MonoidalEnrichedCat, grid=SWEEP_GRID, first="left", second="right") -> list:
    """Verdict on every ``(r, v, s, z)`` with ``alpha, beta`` from ``first`` and
    ``alpha2, beta2`` from ``second``, in lexicographic order."""
    out = []
    for r, v, s, z in product(grid, repeat=4):
        out.append(check_interchange(M, family_morphism(M, first, r), family_morphism(M, second, v),
                                     family_morphism(M, first, s), family_morphism(M, second, z)))
    return out


def matched(lengths) -> bool:
    r, v, s, z = lengths
    return r == v and s == z


def sweep_report(M: MonoidalEnrichedCat, cells: list) -> dict:
    """Structured sweep table plus the equality locus and its comparison with ``r=v, s=z``."""
    equal = [c for c in cells if c.equal]
    off = [c for c in equal if not matched(c.lengths)]
    missed = [c for c in cells if matched(c.lengths) and not c.equal]
    counts = {v: sum(1 for c in cells if c.verdict == v) for v in VERDICTS}

    def key(c):
        return ",".join(format_rational(x) for x in c.lengths)

    return {
        "fixture": M.name,
        "grid": sorted({format_rational(x) for c in cells for x in c.lengths},
                       key=lambda q: Fraction(q)),
        "counts": counts,
        "cells": [{k: v for k, v in c.to_json().items() if k in ("r", "v", "s", "z", "verdict")}
                  for c in cells],
        "locus": {
            "equal": [key(c) for c in equal],
            "equal_off_matched": [key(c) for c in off],
            "matched_not_equal": [key(c) for c in missed],
            "matches_r_eq_v_and_s_eq_z": not off and not missed,
        },
        "annotations": {
            "odot_length": "implemented as max of the factor lengths; the additive length r+s is recorded only as an annotation",
            "stated_condition": "r=s and z=v",
            "derived_condition": "r=v and s=z",
        },
    }


# -- counterexample search --------------------------------------------------------

def _candidate_paths(M: MonoidalEnrichedCat, obj: PObject, max_word: int, durations):
    C = M.cat
    space = C.hom(obj.x, obj.y)
    start = obj.a
    out = [unit_path(start)]
    if max_word < 1:
        return out
    half = Fraction(1, 2)
    for e, fwd in space.incident(start):
        for d in durations:
            t = traverse(space, e.id, fwd, d)
            if t.target != start:
                continue
            out.append(MoorePath(start, (t,)))
            out.append(MoorePath(start, (Dwell(start, half), t)))
            out.append(MoorePath(start, (t, Dwell(start, half))))
    uniq = []
    for p in out:
        if p not in uniq:
            uniq.append(p)
    return uniq


@dataclass(frozen=True)
class CounterexampleSearch:
    found: object           # InterchangeVerdict or None
    searched: int
    equal_lengths_only: bool

    def __bool__(self):
        return self.found is not None


def bifunctor_counterexample(M: MonoidalEnrichedCat, obj: PObject | None = None,
                             equal_lengths_only: bool = False, max_word: int = 1,
                             durations=(Fraction(1, 2),)) -> CounterexampleSearch:
    """First quadruple of loops at ``obj`` on which interchange fails with both sides defined.

    Loops are the constant path and single edge traversals, optionally with
    a dwell of 1/2 before or after.
    """
    C = M.cat
    if obj is None:
        w = sorted(C.weak_equivalences, key=sort_key)[0]
        obj = PObject(*C.home(w), w)
    f, g = C.identity(obj.x), C.identity(obj.y)
    mors = [PMorphism(obj, obj, f, g, p) for p in _candidate_paths(M, obj, max_word, durations)]
    n = 0
    for a, a2, b, b2 in product(mors, repeat=4):
        if equal_lengths_only and (a.length != a2.length or b.length != b2.length):
            continue
        n += 1
        v = check_interchange(M, a, a2, b, b2)
        if v.verdict == "unequal":
            return CounterexampleSearch(v, n, equal_lengths_only)
    return CounterexampleSearch(None, n, equal_lengths_only)
