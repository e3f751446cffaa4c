"""The categorical path object P(C) of a graph-enriched category.

Objects are marked weak equivalences ``a: x -> y``.  A morphism from ``a`` to
``b: x' -> y'`` is a triple ``(f, g, path)`` with ``f: x -> x'``,
``g: y -> y'`` and a Moore path in hom(x, y') running from ``g.a`` to
``b.f``.  Composition concatenates ``g'.alpha`` with ``beta.f``, so it is
strictly associative and unital.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .enriched import CategoryError, EnrichedCat, act_post, act_pre, find_pi0_inverse
from .space import (MoorePath, concat, endpoints, path_from_walk, reduced_word, reverse,
                    shortest_walk, sort_key, unit_path, walks)


class PathObjectError(ValueError):
    pass


class NotAForest(PathObjectError):
    """Full-faithfulness on pi0 is only decided for forest homs."""


@dataclass(frozen=True)
class PObject:
    x: object
    y: object
    a: object

    def __str__(self):
        return f"{self.a}:{self.x}->{self.y}"


@dataclass(frozen=True)
class PMorphism:
    src: PObject
    tgt: PObject
    f: object
    g: object
    path: MoorePath

    @property
    def length(self) -> Fraction:
        return self.path.length


def make_object(C: EnrichedCat, x, y, a) -> PObject:
    if C.home(a) != (x, y):
        raise PathObjectError(f"{a!r} is not a morphism {x}->{y}")
    if not C.is_weq(a):
        raise PathObjectError(f"{a!r} is not a marked weak equivalence")
    return PObject(x, y, a)


def objects(C: EnrichedCat) -> list:
    return [PObject(*C.home(a), a) for a in sorted(C.weak_equivalences, key=sort_key)]


def pmorphism_problems(C: EnrichedCat, m: PMorphism) -> list:
    """Reasons ``m`` is not a point of Map_PC(src, tgt); empty when valid."""
    out = []
    a, b = m.src, m.tgt
    for o in (a, b):
        if not C.is_weq(o.a) or C.home(o.a) != (o.x, o.y):
            out.append(f"object {o} is not a marked weak equivalence")
    if out:
        return out
    if C.home(m.f) != (a.x, b.x):
        out.append(f"f = {m.f} is not in hom({a.x},{b.x})")
    if C.home(m.g) != (a.y, b.y):
        out.append(f"g = {m.g} is not in hom({a.y},{b.y})")
    if out:
        return out
    if not m.path.lives_in(C.hom(a.x, b.y)):
        out.append(f"path does not lie in hom({a.x},{b.y})")
        return out
    want = (C.compose(m.g, a.a), C.compose(b.a, m.f))
    if endpoints(m.path) != want:
        out.append(f"path runs {endpoints(m.path)}, square needs {want}")
    return out


def check_pmorphism(C: EnrichedCat, m: PMorphism) -> PMorphism:
    problems = pmorphism_problems(C, m)
    if problems:
        raise PathObjectError("; ".join(problems))
    return m


def p_identity(C: EnrichedCat, o: PObject) -> PMorphism:
    ix, iy = C.identity(o.x), C.identity(o.y)
    return PMorphism(o, o, ix, iy, unit_path(C.compose(iy, o.a)))


def p_compose(C: EnrichedCat, beta: PMorphism, alpha: PMorphism) -> PMorphism:
    """``beta o alpha``: path is ``g'.alpha`` followed by ``beta.f``."""
    return _compose(C, beta, alpha, lambda f, p: act_pre(C, f, p), lambda g, p: act_post(C, g, p))


def _compose(C, beta, alpha, pre, post) -> PMorphism:
    if alpha.tgt != beta.src:
        raise PathObjectError(f"cannot compose: {alpha.tgt} != {beta.src}")
    path = concat(post(beta.g, alpha.path), pre(alpha.f, beta.path))
    out = PMorphism(alpha.src, beta.tgt, C.compose(beta.f, alpha.f), C.compose(beta.g, alpha.g), path)
    # the actions keep the path inside its hom graph; only the square can break
    want = (C.compose(out.g, out.src.a), C.compose(out.tgt.a, out.f))
    if endpoints(path) != want:
        raise PathObjectError(f"composite violates the square: path runs {endpoints(path)}, needs {want}")
    return out


class PathCategory:
    """P(C) with memoized whiskering, for bulk composition.

    Gives the same results as :func:`p_compose`; ``C`` must not be mutated
    while the instance is in use.
    """

    def __init__(self, C: EnrichedCat):
        self.C = C
        self.act_pre = lru_cache(maxsize=None)(lambda f, p: act_pre(C, f, p))
        self.act_post = lru_cache(maxsize=None)(lambda g, p: act_post(C, g, p))

    def compose(self, beta: PMorphism, alpha: PMorphism) -> PMorphism:
        return _compose(self.C, beta, alpha, self.act_pre, self.act_post)

    def identity(self, o: PObject) -> PMorphism:
        return p_identity(self.C, o)


def i_embed(C: EnrichedCat, x) -> PObject:
    return PObject(x, x, C.identity(x))


def i_embed_mor(C: EnrichedCat, u) -> PMorphism:
    x, y = C.home(u)
    return PMorphism(i_embed(C, x), i_embed(C, y), u, u, unit_path(u))


def ev(m):
    """Source/target projection to C x C, on objects or on morphisms."""
    if isinstance(m, PObject):
        return (m.x, m.y)
    return (m.f, m.g)


def essential_surjectivity_witness(C: EnrichedCat, o: PObject) -> PMorphism:
    """Morphism ``i(x) -> o`` given by the strictly commuting square (id, a)."""
    m = PMorphism(i_embed(C, o.x), o, C.identity(o.x), o.a, unit_path(o.a))
    return check_pmorphism(C, m)


def lift_weq(C: EnrichedCat, w1, w2, b: PObject) -> PMorphism:
    """Lift ``(w1, w2): (x, y) -> (x', y')`` to a morphism of P(C) ending at ``b``.

    The source object is ``w2^-1 . b . w1`` for a homotopy inverse ``w2^-1``;
    the homotopy runs from ``w2 w2^-1 b w1`` back to ``b w1`` along the
    reversed witness path, precomposed with ``b w1``.
    """
    for w in (w1, w2):
        if not C.is_weq(w):
            raise PathObjectError(f"{w!r} is not a marked weak equivalence")
    x, x2 = C.home(w1)
    y, y2 = C.home(w2)
    if (x2, y2) != (b.x, b.y):
        raise PathObjectError(f"({w1}, {w2}) does not land on {b}")
    inv = find_pi0_inverse(C, w2)
    if inv is None:
        raise PathObjectError(f"{w2!r} has no homotopy inverse")
    bw1 = C.compose(b.a, w1)
    a = C.compose(C.compose(inv.inverse, b.a), w1)
    if not C.is_weq(a):
        raise PathObjectError(f"source {a!r} is not marked; W is not closed under composition")
    gamma = act_pre(C, bw1, reverse(inv.right_path))
    m = PMorphism(PObject(x, y, a), b, w1, w2, gamma)
    problems = pmorphism_problems(C, m)
    if problems:
        raise PathObjectError("lift leaves the required square: " + "; ".join(problems))
    return m


# -- bounded enumeration -------------------------------------------------------

def pmorphisms_between(C: EnrichedCat, a: PObject, b: PObject, max_word: int,
                       durations=(Fraction(1),)):
    """Every morphism ``a -> b`` whose path is a walk of at most ``max_word``
    edges, each edge taking one of ``durations``."""
    space = C.hom(a.x, b.y)
    for f in sorted(C.hom(a.x, b.x).vertices, key=sort_key):
        for g in sorted(C.hom(a.y, b.y).vertices, key=sort_key):
            start, end = C.compose(g, a.a), C.compose(b.a, f)
            for walk, here in walks(space, start, max_word):
                if here != end:
                    continue
                for ds in product(durations, repeat=len(walk)):
                    yield PMorphism(a, b, f, g, path_from_walk(space, start, walk, ds))


@dataclass(frozen=True)
class FullFaithfulness:
    holds: bool
    components: int
    classes: int
    detail: str = ""

    def __bool__(self):
        return self.holds


def pi0_fully_faithful(C: EnrichedCat, x, y, max_word: int = 2) -> FullFaithfulness:
    """Compare pi0 hom(x, y) with classes of morphisms i(x) -> i(y).

    Morphisms up to ``max_word`` edges are enumerated; two are identified
    when their ``f`` and ``g`` share components and their paths agree after
    conjugating by the connecting words.
    """
    space = C.hom(x, y)
    if not space.is_forest():
        raise NotAForest(f"hom({x},{y}) is not a forest")
    comps = space.components()
    comp_index = {v: i for i, c in enumerate(comps) for v in c}

    def connect(u, v):
        walk = shortest_walk(space, u, v)
        return None if walk is None else reduced_word(path_from_walk(space, u, walk))

    reps = []  # one representative per class

    def same(m1, m2):
        if comp_index[m1.f] != comp_index[m2.f] or comp_index[m1.g] != comp_index[m2.g]:
            return False
        cg, cf = connect(m1.g, m2.g), connect(m1.f, m2.f)
        lhs = cg.inverse() * reduced_word(m1.path) * cf
        return lhs == reduced_word(m2.path)

    ix, iy = i_embed(C, x), i_embed(C, y)
    for m in pmorphisms_between(C, ix, iy, max_word):
        if not any(same(m, r) for r in reps):
            reps.append(m)
    image = []
    for c in comps:
        u = sorted(c, key=sort_key)[0]
        image.append(i_embed_mor(C, u))
    injective = all(not same(image[i], image[j])
                    for i in range(len(image)) for j in range(i + 1, len(image)))
    surjective = all(any(same(r, m) for m in image) for r in reps)
    holds = injective and surjective and len(reps) == len(comps)
    detail = f"{len(comps)} component(s) vs {len(reps)} class(es); injective={injective} surjective={surjective}"
    return FullFaithfulness(holds, len(comps), len(reps), detail)
