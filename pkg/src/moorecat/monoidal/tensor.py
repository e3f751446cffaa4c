"""Candidate monoidal data on a finite category and the law checkers for it.

:class:`TensorData` holds the tensor tables and the iso data adjoined by each
presentation step: associator, symmetry and (in unital mode) unitors.  Every
checker enumerates its instances in a fixed order and records one violation
per failing instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..report import Report
from ..space import sort_key
from .fincat import FinCat, Functor
from .free import (FreeMonMor, VARIANTS, eta_mor, mu_mor, mu_obj, t_compose, t_identity, t_map,
                   t_morphisms, t_objects)


class Undefined(KeyError):
    """A table entry the computation needs is missing."""


class Skip(Exception):
    """Instance lies outside a truncated table; not a violation."""


@dataclass(eq=False)
class TensorData:
    tensor_obj: dict                      # (a, b) -> a (x) b
    tensor_mor: dict                      # (f, g) -> f (x) g
    unit: object = None
    assoc: dict = field(default_factory=dict)      # (a, b, c) -> (ab)c -> a(bc)
    assoc_inv: dict = field(default_factory=dict)
    sym: dict = field(default_factory=dict)        # (a, b) -> ab -> ba
    sym_inv: dict = field(default_factory=dict)
    left_unitor: dict = field(default_factory=dict)   # a -> I a -> a
    right_unitor: dict = field(default_factory=dict)  # a -> a I -> a
    partial: bool = False   # tables of a truncated free category

    def obj(self, a, b):
        try:
            return self.tensor_obj[a, b]
        except KeyError:
            if self.partial:
                raise Skip((a, b)) from None
            raise Undefined(("tensor", a, b)) from None

    def mor(self, f, g):
        try:
            return self.tensor_mor[f, g]
        except KeyError:
            if self.partial:
                raise Skip((f, g)) from None
            raise Undefined(("tensor", f, g)) from None

    def iso(self, table: str, key):
        try:
            return getattr(self, table)[key]
        except KeyError:
            # truncated tables: components in range were already checked to exist
            if self.partial:
                raise Skip((table, key)) from None
            raise Undefined((table,) + tuple(key if isinstance(key, tuple) else (key,))) from None


def _fmt(key) -> str:
    return ",".join(str(k) for k in key)


# -- shared pieces --------------------------------------------------------------

def check_tensor_functor(C: FinCat, T: TensorData, rep: Report):
    """Totality, typing and functoriality of the tensor."""
    for a, b in product(C.objects, repeat=2):
        try:
            ab = T.obj(a, b)
        except Skip:
            continue
        except Undefined:
            rep.add("tensor-total", (a, b), "tensor of objects undefined")
            continue
        if ab not in C.objects:
            rep.add("tensor-typed", (a, b, ab), "tensor is not an object")
        try:
            if T.mor(C.identity(a), C.identity(b)) != C.identity(ab):
                rep.add("tensor-identity", (a, b), "id (x) id != id")
        except (Undefined, Skip):
            rep.add("tensor-total", (C.identity(a), C.identity(b)), "tensor of identities undefined")
    if not rep.ok:
        return
    mors = sorted(C.morphisms, key=sort_key)
    for f, g in product(mors, repeat=2):
        try:
            want = (T.obj(C.src(f), C.src(g)), T.obj(C.tgt(f), C.tgt(g)))
        except Skip:
            continue
        try:
            fg = T.mor(f, g)
        except (Undefined, Skip):
            rep.add("tensor-total", (f, g), "tensor of morphisms undefined")
            continue
        if C.morphisms.get(fg) != want:
            rep.add("tensor-typed", (f, g), f"{fg} does not run {want[0]} -> {want[1]}")
    if not rep.ok:
        return
    for f, g in product(mors, repeat=2):
        for f2 in C.hom_from(C.tgt(f)):
            for g2 in C.hom_from(C.tgt(g)):
                try:
                    lhs = C.compose(T.mor(f2, g2), T.mor(f, g))
                    rhs = T.mor(C.compose(f2, f), C.compose(g2, g))
                except Skip:
                    continue
                if lhs != rhs:
                    rep.add("tensor-functor", (f2, g2, f, g), "interchange (f2 x g2)(f x g) != f2f x g2g fails")


def _check_iso_family(C: FinCat, T: TensorData, rep: Report, table, inv_table, keys,
                      src_of, tgt_of, label):
    """Existence, typing and invertibility of a family of components."""
    ok = True
    for key in keys:
        try:
            want = (src_of(*key), tgt_of(*key))
        except Skip:
            continue
        try:
            m = T.iso(table, key)
        except (Undefined, Skip):
            rep.add(f"{label}-exists", key, f"no component {label}_{{{_fmt(key)}}}: {want[0]} -> {want[1]}")
            ok = False
            continue
        if C.morphisms.get(m) != want:
            rep.add(f"{label}-typed", key, f"{label}_{{{_fmt(key)}}} = {m} does not run {want[0]} -> {want[1]}")
            ok = False
            continue
        inv = getattr(T, inv_table).get(key)
        if inv is None or C.morphisms.get(inv) != (want[1], want[0]) \
                or C.comp.get((inv, m)) != C.identity(want[0]) \
                or C.comp.get((m, inv)) != C.identity(want[1]):
            rep.add(f"{label}-iso", key, f"{label}_{{{_fmt(key)}}} has no recorded inverse")
            ok = False
    return ok


# -- associator --------------------------------------------------------------------

def _assoc_src(T, a, b, c):
    return T.obj(T.obj(a, b), c)


def _assoc_tgt(T, a, b, c):
    return T.obj(a, T.obj(b, c))


def check_associator_coherence(C: FinCat, T: TensorData) -> Report:
    """Associator is a natural iso and the two re-bracketings of four objects agree."""
    rep = Report("associator coherence")
    check_tensor_functor(C, T, rep)
    if not rep.ok:
        return rep
    objs = C.objects
    triples = list(product(objs, repeat=3))
    if not _check_iso_family(C, T, rep, "assoc", "assoc_inv", triples,
                             lambda a, b, c: _assoc_src(T, a, b, c),
                             lambda a, b, c: _assoc_tgt(T, a, b, c), "assoc"):
        return rep
    mors = sorted(C.morphisms, key=sort_key)
    for f, g, h in product(mors, repeat=3):
        a, b, c = C.src(f), C.src(g), C.src(h)
        a2, b2, c2 = C.tgt(f), C.tgt(g), C.tgt(h)
        try:
            lhs = C.compose(T.iso("assoc", (a2, b2, c2)), T.mor(T.mor(f, g), h))
            rhs = C.compose(T.mor(f, T.mor(g, h)), T.iso("assoc", (a, b, c)))
        except Skip:
            continue
        if lhs != rhs:
            rep.add("assoc-natural", (f, g, h), "associator is not natural")
    if not rep.ok:
        return rep
    for a, b, c, d in product(objs, repeat=4):
        try:
            phi, psi = pentagon_cells(C, T, a, b, c, d)
        except Skip:
            continue
        except Undefined as exc:
            rep.add("pentagon", (a, b, c, d), f"undefined: {exc}")
            continue
        if phi != psi:
            rep.add("pentagon", (a, b, c, d), f"((ab)c)d -> a((bc)d): {phi} != {psi}")
    return rep


def pentagon_cells(C: FinCat, T: TensorData, a, b, c, d):
    """The two associator composites ``((ab)c)d -> a((bc)d)``."""
    A = lambda *k: T.iso("assoc", k)
    Ainv = lambda *k: T.iso("assoc_inv", k)
    I = C.identity
    phi = C.compose(T.mor(I(a), Ainv(b, c, d)),
                    C.compose(A(a, b, T.obj(c, d)), A(T.obj(a, b), c, d)))
    psi = C.compose(A(a, T.obj(b, c), d), T.mor(A(a, b, c), I(d)))
    return phi, psi


# -- symmetry ----------------------------------------------------------------------

def check_symmetry(C: FinCat, T: TensorData) -> Report:
    """Symmetry is a natural iso with ``sigma_{b,a} sigma_{a,b} = id``."""
    rep = Report("symmetry")
    pairs = list(product(C.objects, repeat=2))
    if not _check_iso_family(C, T, rep, "sym", "sym_inv", pairs,
                             lambda a, b: T.obj(a, b), lambda a, b: T.obj(b, a), "sym"):
        return rep
    mors = sorted(C.morphisms, key=sort_key)
    for f, g in product(mors, repeat=2):
        try:
            lhs = C.compose(T.iso("sym", (C.tgt(f), C.tgt(g))), T.mor(f, g))
            rhs = C.compose(T.mor(g, f), T.iso("sym", (C.src(f), C.src(g))))
        except Skip:
            continue
        if lhs != rhs:
            rep.add("sym-natural", (f, g), "symmetry is not natural")
    for a, b in pairs:
        try:
            twice = C.compose(T.iso("sym", (b, a)), T.iso("sym", (a, b)))
            ident = C.identity(T.obj(a, b))
        except Skip:
            continue
        if twice != ident:
            rep.add("sym-involutive", (a, b), f"sigma_{{{b},{a}}} sigma_{{{a},{b}}} = {twice} != id")
    return rep


def hexagon_cells(C: FinCat, T: TensorData, a, b, c):
    """Both ways round ``(ab)c -> b(ca)``."""
    A = lambda *k: T.iso("assoc", k)
    S = lambda *k: T.iso("sym", k)
    I = C.identity
    top = C.compose(A(b, c, a), C.compose(S(a, T.obj(b, c)), A(a, b, c)))
    bottom = C.compose(T.mor(I(b), S(a, c)), C.compose(A(b, a, c), T.mor(S(a, b), I(c))))
    return top, bottom


def check_hexagon(C: FinCat, T: TensorData) -> Report:
    rep = Report("hexagon")
    for a, b, c in product(C.objects, repeat=3):
        try:
            top, bottom = hexagon_cells(C, T, a, b, c)
        except Skip:
            continue
        except Undefined as exc:
            rep.add("hexagon", (a, b, c), f"undefined: {exc}")
            continue
        if top != bottom:
            rep.add("hexagon", (a, b, c), f"(ab)c -> b(ca): {top} != {bottom}")
    return rep


def check_unitors(C: FinCat, T: TensorData) -> Report:
    """Unit object with natural unitor isos; an extrapolation of the nullary operation."""
    rep = Report("unitors")
    rep.notes.append("unit axioms are extrapolated: only existence, invertibility and naturality are checked")
    if T.unit is None or T.unit not in C.objects:
        rep.add("unit-object", (T.unit,), "no unit object")
        return rep
    I = T.unit
    objs = [(a,) for a in C.objects]
    for label, table, src_of in (("lambda", "left_unitor", lambda a: T.obj(I, a)),
                                 ("rho", "right_unitor", lambda a: T.obj(a, I))):
        for (a,) in objs:
            try:
                want = (src_of(a), a)
            except (Skip, Undefined):
                rep.add(f"{label}-exists", (a,), "tensor with the unit undefined")
                continue
            m = getattr(T, table).get(a)
            if m is None or C.morphisms.get(m) != want or not C.is_iso(m):
                rep.add(f"{label}-exists", (a,), f"no invertible {label}_{a}: {want[0]} -> {a}")
    if not rep.ok:
        return rep
    for f in sorted(C.morphisms, key=sort_key):
        a, b = C.src(f), C.tgt(f)
        if C.compose(f, T.left_unitor[a]) != C.compose(T.left_unitor[b], T.mor(C.identity(I), f)):
            rep.add("lambda-natural", (f,), "left unitor not natural")
        if C.compose(f, T.right_unitor[a]) != C.compose(T.right_unitor[b], T.mor(f, C.identity(I))):
            rep.add("rho-natural", (f,), "right unitor not natural")
    return rep


# -- algebras of the strict monads -------------------------------------------------

class StructureMap:
    """``h: TC -> C`` assembled from a strict tensor (and symmetry in variant S)."""

    def __init__(self, C: FinCat, T: TensorData, variant: str = "M"):
        self.C, self.T, self.variant = C, T, variant

    def obj(self, X: tuple):
        if not X:
            if self.T.unit is None:
                raise Undefined(("unit",))
            return self.T.unit
        out = X[0]
        for x in X[1:]:
            out = self.T.obj(out, x)
        return out

    def _tensor_all(self, ms):
        out = ms[0]
        for m in ms[1:]:
            out = self.T.mor(out, m)
        return out

    def mor(self, M: FreeMonMor):
        C = self.C
        n = len(M)
        if n == 0:
            return C.identity(self.obj(()))
        # bring the sources into target order by adjacent swaps
        order = list(range(n))
        acc = C.identity(self.obj(M.src))
        swapped = True
        while swapped:
            swapped = False
            for j in range(n - 1):
                if M.perm[order[j]] > M.perm[order[j + 1]]:
                    objs = [M.src[i] for i in order]
                    pieces = ([C.identity(o) for o in objs[:j]]
                              + [self.T.iso("sym", (objs[j], objs[j + 1]))]
                              + [C.identity(o) for o in objs[j + 2:]])
                    step = self._whisker(pieces)
                    if C.morphisms[step][0] != C.morphisms[acc][1]:
                        raise Undefined(("swap-typing", j))
                    acc = C.compose(step, acc)
                    order[j], order[j + 1] = order[j + 1], order[j]
                    swapped = True
        by_target = [None] * n
        for i in range(n):
            by_target[M.perm[i]] = M.comps[i]
        body = self._tensor_all(by_target)
        if C.morphisms[body][0] != C.morphisms[acc][1]:
            raise Undefined(("body-typing",))
        return C.compose(body, acc)

    def _whisker(self, pieces):
        # pieces holds identities and one two-slot symmetry; fold left
        return self._tensor_all(pieces)


def tensor_algebra(C: FinCat, T: TensorData, variant: str = "M") -> StructureMap:
    if variant not in VARIANTS:
        raise ValueError(variant)
    return StructureMap(C, T, variant)


def _attempt(rep, check, witness, fn):
    try:
        return fn()
    except (Undefined, Skip) as exc:
        rep.add(check, witness, f"undefined: {exc}")
        return _FAILED


_FAILED = object()


def check_algebra(C: FinCat, h, variant: str = "M", k: int = 2, unital: bool = False) -> Report:
    """Unit and multiplication squares for ``h: TC -> C``, plus functoriality of h.

    Multiplication is checked on nested lists of total length <= k.
    """
    rep = Report(f"T{variant}-algebra (k={k})")
    for x in C.objects:
        v = _attempt(rep, "unit-law", (x,), lambda: h.obj((x,)))
        if v is not _FAILED and v != x:
            rep.add("unit-law", (x,), f"h(eta x) = {v}")
    for f in sorted(C.morphisms, key=sort_key):
        v = _attempt(rep, "unit-law", (f,), lambda: h.mor(eta_mor(f, C.src(f), C.tgt(f))))
        if v is not _FAILED and v != f:
            rep.add("unit-law", (f,), f"h(eta f) = {v}")

    T1o = t_objects(C.objects, k, unital=unital)
    T1m = t_morphisms(C.morphisms, k, variant, C.src, C.tgt, unital=unital)
    for M in T1m:
        v = _attempt(rep, "structure-total", (str(M),), lambda: h.mor(M))
        if v is _FAILED:
            continue
        want = (_attempt(rep, "structure-total", (M.src,), lambda: h.obj(M.src)),
                _attempt(rep, "structure-total", (M.tgt,), lambda: h.obj(M.tgt)))
        if C.morphisms.get(v) != want:
            rep.add("structure-typed", (str(M),), f"h = {v} is not a morphism {want[0]} -> {want[1]}")
    if not rep.ok:
        return rep

    # h is a functor
    by_src = {}
    for M in T1m:
        by_src.setdefault(M.src, []).append(M)
    for X in T1o:
        if h.mor(t_identity(X, C.identity)) != C.identity(h.obj(X)):
            rep.add("structure-functor", (X,), "h(id) != id")
    for M in T1m:
        for N in by_src.get(M.tgt, ()):
            if h.mor(t_compose(N, M, C.compose)) != C.compose(h.mor(N), h.mor(M)):
                rep.add("structure-functor", (str(N), str(M)), "h(N.M) != h(N).h(M)")

    # h . mu = h . Th
    for XX in t_objects(T1o, k, weight=len, unital=unital):
        v1 = _attempt(rep, "mult-law", (XX,), lambda: h.obj(mu_obj(XX)))
        v2 = _attempt(rep, "mult-law", (XX,), lambda: h.obj(tuple(h.obj(X) for X in XX)))
        if _FAILED not in (v1, v2) and v1 != v2:
            rep.add("mult-law", (XX,), f"h(mu X) = {v1} but h(Th X) = {v2}")
    T2m = t_morphisms(T1m, k, variant, lambda M: M.src, lambda M: M.tgt, weight=len, unital=unital)
    for MM in T2m:
        v1 = _attempt(rep, "mult-law", (str(MM),), lambda: h.mor(mu_mor(MM)))
        v2 = _attempt(rep, "mult-law", (str(MM),), lambda: h.mor(t_map(MM, h.obj, h.mor)))
        if _FAILED not in (v1, v2) and v1 != v2:
            rep.add("mult-law", (str(MM),), f"h(mu M) = {v1} but h(Th M) = {v2}")
    return rep


def check_algebra_morphism(F: Functor, h, g, variant: str = "M", k: int = 2,
                           unital: bool = False) -> Report:
    """``F . h = g . TF`` on every instance of TC within the truncation."""
    rep = Report("algebra morphism")
    C = F.source
    for X in t_objects(C.objects, k, unital=unital):
        lhs = _attempt(rep, "square", (X,), lambda: F.obj(h.obj(X)))
        rhs = _attempt(rep, "square", (X,), lambda: g.obj(tuple(F.obj(x) for x in X)))
        if _FAILED not in (lhs, rhs) and lhs != rhs:
            rep.add("square", (X,), f"F(h X) = {lhs} but g(TF X) = {rhs}")
    for M in t_morphisms(C.morphisms, k, variant, C.src, C.tgt, unital=unital):
        lhs = _attempt(rep, "square", (str(M),), lambda: F.mor(h.mor(M)))
        rhs = _attempt(rep, "square", (str(M),), lambda: g.mor(t_map(M, F.obj, F.mor)))
        if _FAILED not in (lhs, rhs) and lhs != rhs:
            rep.add("square", (str(M),), f"F(h M) = {lhs} but g(TF M) = {rhs}")
    return rep


def check_symmetric_monoidal(C: FinCat, T: TensorData) -> Report:
    """Associator coherence, then symmetry, then hexagon."""
    rep = Report("symmetric monoidal")
    rep.extend(check_associator_coherence(C, T))
    sym = check_symmetry(C, T)
    rep.extend(sym)
    if sym.checks_failed() & {"sym-exists", "sym-typed", "sym-iso"}:
        rep.notes.append("hexagon: skipped, the symmetry components are missing or mistyped")
    else:
        rep.extend(check_hexagon(C, T))
    return rep
