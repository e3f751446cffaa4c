"""The free (symmetric) strict monoidal monad on finite categories, truncated.

An object of TC is a tuple of objects of C.  A morphism is a permutation
together with one component per source entry: ``comps[i]`` goes from
``src[i]`` to ``tgt[perm[i]]``.  In the plain monoidal variant ("M") the
permutation is always the identity; in the symmetric variant ("S") it is
arbitrary.  Everything is truncated to tuples of length at most ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations, product

from ..report import Report
from .fincat import FinCat

VARIANTS = ("M", "S")


@dataclass(frozen=True)
class FreeMonMor:
    src: tuple
    tgt: tuple
    perm: tuple
    comps: tuple

    def __post_init__(self):
        n = len(self.src)
        if not (len(self.tgt) == len(self.perm) == len(self.comps) == n):
            raise ValueError("arity mismatch in free monoidal morphism")
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"{self.perm} is not a permutation")

    def __len__(self):
        return len(self.src)

    def __str__(self):
        cs = ",".join(map(str, self.comps))
        return f"<{''.join(map(str, self.perm))}|{cs}>"


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def t_compose(N: FreeMonMor, M: FreeMonMor, atom_compose) -> FreeMonMor:
    """``N . M``: entry i goes to ``M.perm[i]`` then to ``N.perm[M.perm[i]]``."""
    if M.tgt != N.src:
        raise ValueError("free monoidal morphisms do not compose")
    perm = tuple(N.perm[M.perm[i]] for i in range(len(M)))
    comps = tuple(atom_compose(N.comps[M.perm[i]], M.comps[i]) for i in range(len(M)))
    return FreeMonMor(M.src, N.tgt, perm, comps)


def t_identity(X: tuple, atom_identity) -> FreeMonMor:
    return FreeMonMor(X, X, tuple(range(len(X))), tuple(atom_identity(x) for x in X))


def t_map(M: FreeMonMor, fobj, fmor) -> FreeMonMor:
    return FreeMonMor(tuple(map(fobj, M.src)), tuple(map(fobj, M.tgt)), M.perm,
                      tuple(map(fmor, M.comps)))


def t_tensor(M: FreeMonMor, N: FreeMonMor) -> FreeMonMor:
    """Juxtaposition, the strict tensor of TC."""
    off = len(M.tgt)
    return FreeMonMor(M.src + N.src, M.tgt + N.tgt, M.perm + tuple(p + off for p in N.perm),
                      M.comps + N.comps)


def block_swap(A: tuple, B: tuple, atom_identity) -> FreeMonMor:
    """Symmetry ``A B -> B A`` moving blocks past each other."""
    perm = tuple(len(B) + i for i in range(len(A))) + tuple(range(len(B)))
    return FreeMonMor(A + B, B + A, perm, tuple(atom_identity(x) for x in A + B))


def mu_obj(XX: tuple) -> tuple:
    return tuple(chain.from_iterable(XX))


def mu_mor(MM: FreeMonMor) -> FreeMonMor:
    """Flatten a morphism whose components are themselves free morphisms."""
    src_off, acc = [], 0
    for X in MM.src:
        src_off.append(acc)
        acc += len(X)
    tgt_off, acc = [], 0
    for Y in MM.tgt:
        tgt_off.append(acc)
        acc += len(Y)
    n = acc
    perm = [None] * n
    comps = [None] * n
    for i, inner in enumerate(MM.comps):
        for j in range(len(inner)):
            perm[src_off[i] + j] = tgt_off[MM.perm[i]] + inner.perm[j]
            comps[src_off[i] + j] = inner.comps[j]
    return FreeMonMor(mu_obj(MM.src), mu_obj(MM.tgt), tuple(perm), tuple(comps))


def eta_obj(x) -> tuple:
    return (x,)


def eta_mor(f, src, tgt) -> FreeMonMor:
    return FreeMonMor((src,), (tgt,), (0,), (f,))


# -- enumeration -----------------------------------------------------------------

def _sequences(items, k, weight, min_len):
    """Tuples of ``items`` with at most ``k`` entries and total weight <= k."""
    # lightest first, so each extension loop can stop at the first item that overflows
    weighted = sorted(((weight(it), i, it) for i, it in enumerate(items)), key=lambda t: t[:2])
    out = [()] if min_len == 0 else []
    frontier = [((), 0)]
    for n in range(1, k + 1):
        nxt = []
        for seq, w in frontier:
            for wi, _, it in weighted:
                if w + wi > k:
                    break
                nxt.append((seq + (it,), w + wi))
        frontier = nxt
        if n >= min_len:
            out.extend(seq for seq, _ in frontier)
    return out


def t_objects(atoms, k, weight=lambda a: 1, unital=False) -> list:
    return _sequences(list(atoms), k, weight, 0 if unital else 1)


def t_morphisms(atoms, k, variant, src, tgt, weight=lambda a: 1, unital=False) -> list:
    """Every free morphism over ``atoms`` within the truncation."""
    _check_variant(variant)
    out = []
    for comps in _sequences(list(atoms), k, weight, 0 if unital else 1):
        n = len(comps)
        perms = permutations(range(n)) if variant == "S" else [tuple(range(n))]
        s = tuple(src(c) for c in comps)
        for p in perms:
            t = [None] * n
            for i, c in enumerate(comps):
                t[p[i]] = tgt(c)
            out.append(FreeMonMor(s, tuple(t), tuple(p), comps))
    return out


def free_monoidal(C: FinCat, variant: str = "M", unital: bool = False, k: int = 3) -> FinCat:
    """Truncation to length <= k of the free strict (symmetric) monoidal category on C."""
    _check_variant(variant)
    if k < 1:
        raise ValueError("truncation length k must be at least 1")
    objs = t_objects(C.objects, k, unital=unital)
    mors = t_morphisms(C.morphisms, k, variant, C.src, C.tgt, unital=unital)
    morphisms = {M: (M.src, M.tgt) for M in mors}
    ids = {X: t_identity(X, C.identity) for X in objs}
    by_src = {}
    for M in mors:
        by_src.setdefault(M.src, []).append(M)
    comp = {}
    for M in mors:
        for N in by_src.get(M.tgt, ()):
            comp[N, M] = t_compose(N, M, C.compose)
    return FinCat(tuple(objs), morphisms, ids, comp,
                  f"T{variant}{'u' if unital else ''}<={k}({C.name})")


# -- monad laws --------------------------------------------------------------------

def _flat_len(x) -> int:
    if isinstance(x, tuple):
        return sum(_flat_len(y) for y in x)
    return 1


def _mor_weight(M) -> int:
    return sum(_mor_weight(c) for c in M.comps) if isinstance(M, FreeMonMor) else 1


def check_monad_laws(C: FinCat, k: int, variant: str = "M", unital: bool = False) -> Report:
    """Associativity and unit laws of (T, mu, eta) on every instance of total size <= k."""
    _check_variant(variant)
    rep = Report(f"monad laws T{variant} k={k} on {C.name or 'C'}")

    def src(M):
        return M.src

    def tgt(M):
        return M.tgt

    # T C, T^2 C, T^3 C within the bound
    T1o = t_objects(C.objects, k, unital=unital)
    T1m = t_morphisms(C.morphisms, k, variant, C.src, C.tgt, unital=unital)
    T2o = t_objects(T1o, k, weight=_flat_len, unital=unital)
    T2m = t_morphisms(T1m, k, variant, src, tgt, weight=_mor_weight, unital=unital)
    T3o = t_objects(T2o, k, weight=_flat_len, unital=unital)
    T3m = t_morphisms(T2m, k, variant, src, tgt, weight=_mor_weight, unital=unital)
    rep.notes.append(f"instances: |TC|={len(T1o)}+{len(T1m)}, |T2C|={len(T2o)}+{len(T2m)}, "
                     f"|T3C|={len(T3o)}+{len(T3m)}")

    for X in T3o:
        lhs = mu_obj(tuple(mu_obj(Y) for Y in X))
        rhs = mu_obj(mu_obj(X))
        if lhs != rhs:
            rep.add("mu-assoc-obj", (X,), "mu.Tmu != mu.muT")
    for M in T3m:
        lhs = mu_mor(t_map(M, mu_obj, mu_mor))
        rhs = mu_mor(mu_mor(M))
        if lhs != rhs:
            rep.add("mu-assoc-mor", (str(M),), "mu.Tmu != mu.muT")
    for X in T1o:
        if mu_obj(tuple(eta_obj(x) for x in X)) != X:
            rep.add("unit-T-eta-obj", (X,), "mu.T(eta) != id")
        if mu_obj(eta_obj(X)) != X:
            rep.add("unit-eta-T-obj", (X,), "mu.eta_T != id")
    for M in T1m:
        Teta = FreeMonMor(tuple(map(eta_obj, M.src)), tuple(map(eta_obj, M.tgt)), M.perm,
                          tuple(eta_mor(c, C.src(c), C.tgt(c)) for c in M.comps))
        if mu_mor(Teta) != M:
            rep.add("unit-T-eta-mor", (str(M),), "mu.T(eta) != id")
        if mu_mor(eta_mor(M, M.src, M.tgt)) != M:
            rep.add("unit-eta-T-mor", (str(M),), "mu.eta_T != id")
    # mu is a functor on T^2 C
    by_src = {}
    for M in T2m:
        by_src.setdefault(M.src, []).append(M)
    inner = lambda N, M: t_compose(N, M, C.compose)
    for M in T2m:
        for N in by_src.get(M.tgt, ()):
            if mu_mor(t_compose(N, M, inner)) != t_compose(mu_mor(N), mu_mor(M), C.compose):
                rep.add("mu-functor", (str(N), str(M)), "mu does not preserve composition")
    return rep
