"""Small worked examples: enriched categories, finite monoidal categories, perturbations.

The six named fixtures are shipped as JSON bundles under ``moorecat/data``;
the builders here are the source of truth and ``scripts/make_fixtures.py``
regenerates the files from them.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .enriched import Collapse, EdgeTo, EnrichedCat
from .interchange import MonoidalEnrichedCat
from .monoidal.fincat import FinCat
from .monoidal.free import block_swap, free_monoidal, t_tensor
from .monoidal.tensor import TensorData
from .pathobj import PMorphism, PObject
from .space import Dwell, Edge, GraphSpace, MoorePath, Traverse

SHIPPED = ("walking-arrow", "walking-weq", "cylinder", "cmonoid-C3", "ncmonoid-S3",
           "interchange-default")


def derived_actions(homs: dict, identities: dict, comp: dict):
    """Edge images forced by the composition table.

    An edge is sent to the edge joining the images of its ends, or collapsed
    when both ends land on the same vertex.
    """
    objects = sorted({x for xy in homs for x in xy})
    home = {v: xy for xy, sp in homs.items() for v in sp.vertices}
    ids = set(identities.values())

    def image(space, a, b):
        if a == b:
            return Collapse(a)
        for e in space.edges:
            if (e.src, e.tgt) == (a, b):
                return EdgeTo(e.id, True)
            if (e.src, e.tgt) == (b, a):
                return EdgeTo(e.id, False)
        raise ValueError(f"no edge joins {a} and {b}")

    pre, post = {}, {}
    for f, (x, x2) in home.items():
        if f in ids:
            continue
        for z in objects:
            for e in homs.get((x2, z), GraphSpace(())).edges:
                pre.setdefault(f, {})[e.id] = image(homs[x, z], comp[e.src, f], comp[e.tgt, f])
    for g, (y, y2) in home.items():
        if g in ids:
            continue
        for x in objects:
            for e in homs.get((x, y), GraphSpace(())).edges:
                post.setdefault(g, {})[e.id] = image(homs[x, y2], comp[g, e.src], comp[g, e.tgt])
    return pre, post


def _discrete_hom(*vs):
    return GraphSpace(tuple(vs))


def walking_arrow() -> EnrichedCat:
    """Two objects and one arrow ``u: 0 -> 1``, which is not a weak equivalence."""
    homs = {("0", "0"): _discrete_hom("id0"), ("1", "1"): _discrete_hom("id1"),
            ("0", "1"): _discrete_hom("u")}
    ids = {"0": "id0", "1": "id1"}
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("u", "id0"): "u", ("id1", "u"): "u"}
    return EnrichedCat(("0", "1"), homs, ids, comp, weak_equivalences={"id0", "id1"},
                       name="walking-arrow")


def _weq_word(w: str) -> str:
    while "aba" in w or "bab" in w:
        w = w.replace("aba", "a").replace("bab", "b")
    return w


def walking_weq() -> EnrichedCat:
    """``a: x -> y`` with a homotopy inverse ``b``; ``ba ~ id_x`` and ``ab ~ id_y``."""
    homs = {("x", "x"): GraphSpace(("idx", "ba"), (Edge("h", "idx", "ba"),)),
            ("y", "y"): GraphSpace(("idy", "ab"), (Edge("k", "idy", "ab"),)),
            ("x", "y"): _discrete_hom("a"), ("y", "x"): _discrete_hom("b")}
    ids = {"x": "idx", "y": "idy"}
    home = {v: xy for xy, sp in homs.items() for v in sp.vertices}
    word = {"idx": "", "idy": "", "a": "a", "b": "b", "ab": "ab", "ba": "ba"}
    comp = {}
    for g, f in product(home, repeat=2):
        if home[f][1] != home[g][0]:
            continue
        w = _weq_word(word[g] + word[f])
        comp[g, f] = ids[home[f][0]] if w == "" else w
    pre, post = derived_actions(homs, ids, comp)
    return EnrichedCat(("x", "y"), homs, ids, comp, pre, post,
                       weak_equivalences=set(home), name="walking-weq")


def walking_weq_pmorphisms(C: EnrichedCat | None = None) -> dict:
    """Named morphisms of P(C): ``alpha`` of length 1/2 and ``beta`` of length 1/3."""
    C = C or walking_weq()
    o, o2 = PObject("x", "x", "idx"), PObject("x", "x", "ba")
    h = C.hom("x", "x").edge("h")
    alpha = PMorphism(o, o2, "idx", "idx",
                      MoorePath("idx", (Traverse("h", True, Fraction(1, 2), h.src, h.tgt),)))
    beta = PMorphism(o2, o2, "idx", "idx", MoorePath("ba", (Dwell("ba", Fraction(1, 3)),)))
    return {"alpha": alpha, "beta": beta}


def cylinder() -> EnrichedCat:
    """hom(x, y) is an interval ``e: u -> v``; everything else is discrete."""
    homs = {("x", "x"): _discrete_hom("idx"), ("y", "y"): _discrete_hom("idy"),
            ("x", "y"): GraphSpace(("u", "v"), (Edge("e", "u", "v"),))}
    ids = {"x": "idx", "y": "idy"}
    comp = {("idx", "idx"): "idx", ("idy", "idy"): "idy"}
    for w in ("u", "v"):
        comp["idy", w] = w
        comp[w, "idx"] = w
    return EnrichedCat(("x", "y"), homs, ids, comp, weak_equivalences={"idx", "idy"},
                       name="cylinder")


def interchange_default() -> MonoidalEnrichedCat:
    """One object whose endomorphism space is a figure eight; tensor is trivial."""
    space = GraphSpace(("0",), (Edge("l", "0", "0"), Edge("m", "0", "0")))
    C = EnrichedCat(("*",), {("*", "*"): space}, {"*": "0"}, {("0", "0"): "0"},
                    weak_equivalences={"0"}, name="interchange-default")
    half = Fraction(1, 2)
    left = MoorePath("0", (Dwell("0", half), Traverse("l", True, half, "0", "0")))
    right = MoorePath("0", (Traverse("m", True, half, "0", "0"), Dwell("0", half)))
    return MonoidalEnrichedCat(
        C, {("*", "*"): "*"}, {("0", "0"): "0"},
        {(e, "0"): EdgeTo(e, True) for e in ("l", "m")},
        {("0", e): EdgeTo(e, True) for e in ("l", "m")},
        unit="*", families={"left": left, "right": right}, name="interchange-default")


def point_monoidal() -> MonoidalEnrichedCat:
    """One object, one morphism, no edges: only constant paths exist."""
    C = EnrichedCat(("*",), {("*", "*"): GraphSpace(("0",))}, {"*": "0"}, {("0", "0"): "0"},
                    weak_equivalences={"0"}, name="point")
    return MonoidalEnrichedCat(C, {("*", "*"): "*"}, {("0", "0"): "0"}, {}, {}, unit="*",
                               families={"left": MoorePath("0"), "right": MoorePath("0")},
                               name="point")


# -- finite monoidal categories ----------------------------------------------------

def monoid_category(elements, op, unit=None, commute=None, name: str = "") -> tuple:
    """Discrete category on a monoid with ``(x) = op``, identity associator and,
    where ``commute(a, b)`` holds, identity symmetry."""
    elements = tuple(elements)
    ids = {x: f"id:{x}" for x in elements}
    C = FinCat(elements, {ids[x]: (x, x) for x in elements}, ids,
               {(ids[x], ids[x]): ids[x] for x in elements}, name)
    tobj = {(a, b): op(a, b) for a, b in product(elements, repeat=2)}
    tmor = {(ids[a], ids[b]): ids[op(a, b)] for a, b in product(elements, repeat=2)}
    assoc = {(a, b, c): ids[op(op(a, b), c)] for a, b, c in product(elements, repeat=3)
             if op(op(a, b), c) == op(a, op(b, c))}
    if commute is None:
        commute = lambda a, b: op(a, b) == op(b, a)
    sym = {(a, b): ids[op(a, b)] for a, b in product(elements, repeat=2) if commute(a, b)}
    lam = rho = {}
    if unit is not None:
        lam = {a: ids[a] for a in elements}
        rho = {a: ids[a] for a in elements}
    T = TensorData(tobj, tmor, unit, assoc, dict(assoc), sym, dict(sym), lam, rho)
    return C, T


def cmonoid_c3():
    return monoid_category(("0", "1", "2"), lambda a, b: str((int(a) + int(b)) % 3), unit="0",
                           name="cmonoid-C3")


def _s3_compose(p: str, q: str) -> str:
    return "".join(p[int(q[i])] for i in range(3))


S3 = tuple("".join(map(str, p)) for p in permutations(range(3)))


def ncmonoid_s3():
    """S3 under composition: ``a (x) b = a . b`` has no symmetry when ``ab != ba``."""
    return monoid_category(S3, _s3_compose, unit="012", name="ncmonoid-S3")


def z2_groupoid(assoc_labels=None, sym_labels=None, name="Z2-groupoid"):
    """Objects 0, 1 with automorphism group Z/2 each; tensor adds labels mod 2.

    ``assoc_labels``/``sym_labels`` give the Z/2 label of each structure
    component (default all 0, i.e. identities).
    """
    objs = ("0", "1")
    mor = {f"{k}{x}": (x, x) for x in objs for k in ("id", "t")}
    label = {f"{k}{x}": (0 if k == "id" else 1) for x in objs for k in ("id", "t")}
    at = lambda x, n: f"{'id' if n % 2 == 0 else 't'}{x}"
    comp = {(g, f): at(mor[f][0], label[g] + label[f])
            for g, f in product(mor, repeat=2) if mor[g][0] == mor[f][1]}
    C = FinCat(objs, mor, {x: f"id{x}" for x in objs}, comp, name)
    add = lambda a, b: str((int(a) + int(b)) % 2)
    tobj = {(a, b): add(a, b) for a, b in product(objs, repeat=2)}
    tmor = {(f, g): at(add(mor[f][0], mor[g][0]), label[f] + label[g])
            for f, g in product(mor, repeat=2)}
    assoc_labels = assoc_labels or {}
    sym_labels = sym_labels or {}
    assoc = {}
    for a, b, c in product(objs, repeat=3):
        assoc[a, b, c] = at(add(add(a, b), c), assoc_labels.get((a, b, c), 0))
    sym = {}
    for a, b in product(objs, repeat=2):
        sym[a, b] = at(add(a, b), sym_labels.get((a, b), 0))
    # every label is its own inverse
    return C, TensorData(tobj, tmor, None, assoc, dict(assoc), sym, dict(sym))


def perturbed_associator(triple=("1", "0", "0")):
    return z2_groupoid(assoc_labels={triple: 1}, name=f"Z2-groupoid alpha{triple}")


def perturbed_symmetry(pair=("1", "0")):
    return z2_groupoid(sym_labels={pair: 1}, name=f"Z2-groupoid sigma{pair}")


def free_tensor_data(C: FinCat, k: int = 3, variant: str = "S", name: str = ""):
    """The truncated free strict (symmetric) monoidal category with its tables.

    Tensor is concatenation where the result stays within length ``k``;
    the associator is the identity and the symmetry swaps blocks.
    """
    F = free_monoidal(C, variant, False, k)
    F.name = name or F.name
    tobj = {(A, B): A + B for A, B in product(F.objects, repeat=2) if len(A) + len(B) <= k}
    tmor = {(M, N): t_tensor(M, N) for M, N in product(F.morphisms, repeat=2)
            if len(M) + len(N) <= k}
    assoc = {(A, B, Cc): F.identity(A + B + Cc) for A, B, Cc in product(F.objects, repeat=3)
             if len(A) + len(B) + len(Cc) <= k}
    sym, sym_inv = {}, {}
    if variant == "S":
        for A, B in product(F.objects, repeat=2):
            if len(A) + len(B) <= k:
                sym[A, B] = block_swap(A, B, C.identity)
                sym_inv[A, B] = block_swap(B, A, C.identity)
    return F, TensorData(tobj, tmor, None, assoc, dict(assoc), sym, sym_inv, partial=True)


def one_object(name="pt") -> FinCat:
    return FinCat(("x",), {"id:x": ("x", "x")}, {"x": "id:x"}, {("id:x", "id:x"): "id:x"}, name)


def enriched_fixtures() -> dict:
    return {"walking-arrow": walking_arrow(), "walking-weq": walking_weq(), "cylinder": cylinder(),
            "interchange-default": interchange_default().cat}


def monoidal_fixtures() -> dict:
    """Name -> (FinCat, TensorData) for every finite monoidal fixture, shipped or not."""
    return {"cmonoid-C3": cmonoid_c3(), "ncmonoid-S3": ncmonoid_s3(), "Z2-groupoid": z2_groupoid(),
            "Z2-alpha-perturbed": perturbed_associator(), "Z2-sigma-perturbed": perturbed_symmetry()}
