from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from moorecat.fixtures import (_s3_compose, cmonoid_c3, free_tensor_data, monoid_category,
                               ncmonoid_s3, perturbed_associator, perturbed_symmetry, z2_groupoid)
from moorecat.monoidal.fincat import Functor, discrete, identity_functor
from moorecat.monoidal.tensor import (check_algebra, check_algebra_morphism, check_associator_coherence,
                                      check_hexagon, check_symmetric_monoidal, check_symmetry,
                                      check_unitors, tensor_algebra)

Z2 = ("0", "1")


def _failing(rep, check):
    return {v.witness for v in rep.violations if v.check == check}


# -- Z/2 label oracle ---------------------------------------------------------------
# every structure map of the Z/2 groupoid is a label in Z/2; composites add labels.

def _alpha(labels):
    return lambda a, b, c: labels.get((a, b, c), 0)


def _sigma(labels):
    return lambda a, b: labels.get((a, b), 0)


def _add(*xs):
    return str(sum(int(x) for x in xs) % 2)


def pentagon_defect(al, a, b, c, d):
    return (al(b, c, d) + al(a, b, _add(c, d)) + al(_add(a, b), c, d)
            + al(a, _add(b, c), d) + al(a, b, c)) % 2


def hexagon_defect(al, sg, a, b, c):
    top = al(b, c, a) + sg(a, _add(b, c)) + al(a, b, c)
    bottom = sg(a, c) + al(b, a, c) + sg(a, b)
    return (top + bottom) % 2


def test_strict_z2_passes():
    C, T = z2_groupoid()
    assert check_symmetric_monoidal(C, T).ok


@pytest.mark.parametrize("triple", list(product(Z2, repeat=3)))
def test_perturbed_associator_matches_cocycle(triple):
    C, T = perturbed_associator(triple)
    al = _alpha({triple: 1})
    want = {q for q in product(Z2, repeat=4) if pentagon_defect(al, *q)}
    rep = check_associator_coherence(C, T)
    assert _failing(rep, "pentagon") == want
    # flipping alpha_{1,1,1} alone is a cocycle, so the checker must accept it
    assert rep.ok == (not want) == (triple == ("1", "1", "1"))


def test_perturbed_associator_named_quadruple():
    rep = check_associator_coherence(*perturbed_associator(("1", "0", "0")))
    assert ("1", "1", "0", "0") in _failing(rep, "pentagon")


@pytest.mark.parametrize("pair", list(product(Z2, repeat=2)))
def test_perturbed_symmetry_matches_oracle(pair):
    C, T = perturbed_symmetry(pair)
    sg = _sigma({pair: 1})
    want_inv = {(a, b) for a, b in product(Z2, repeat=2) if (sg(a, b) + sg(b, a)) % 2}
    want_hex = {t for t in product(Z2, repeat=3) if hexagon_defect(_alpha({}), sg, *t)}
    assert _failing(check_symmetry(C, T), "sym-involutive") == want_inv
    assert _failing(check_hexagon(C, T), "hexagon") == want_hex


def test_sigma_squared_fails_on_named_pair():
    rep = check_symmetry(*perturbed_symmetry(("1", "0")))
    assert _failing(rep, "sym-involutive") == {("1", "0"), ("0", "1")}


def test_cmonoid_passes_everything():
    C, T = cmonoid_c3()
    assert check_symmetric_monoidal(C, T).ok
    assert check_unitors(C, T).ok


def test_ncmonoid_has_no_symmetry():
    C, T = ncmonoid_s3()
    assert check_associator_coherence(C, T).ok
    rep = check_symmetry(C, T)
    assert not rep.ok
    # a missing component exactly where the elements do not commute
    want = {(a, b) for a, b in product(C.objects, repeat=2) if _s3_compose(a, b) != _s3_compose(b, a)}
    assert _failing(rep, "sym-exists") == want


def test_missing_tensor_entry_reported():
    C, T = cmonoid_c3()
    del T.tensor_obj["1", "2"]
    assert ("1", "2") in _failing(check_associator_coherence(C, T), "tensor-total")


def test_mistyped_associator():
    C, T = z2_groupoid()
    T.assoc["0", "0", "1"] = "t0"
    assert "assoc-typed" in check_associator_coherence(C, T).checks_failed()


def test_unitor_missing():
    C, T = cmonoid_c3()
    T.left_unitor = {}
    rep = check_unitors(C, T)
    assert not rep.ok and rep.notes


@pytest.mark.parametrize("variant", ["M", "S"])
def test_free_category_coherent(variant):
    C, T = free_tensor_data(discrete(("a", "b")), 3, variant)
    assert check_associator_coherence(C, T).ok
    if variant == "S":
        assert check_symmetry(C, T).ok
        assert check_hexagon(C, T).ok


def test_free_category_one_object():
    C, T = free_tensor_data(discrete(("x",)), 4, "S")
    assert check_symmetric_monoidal(C, T).ok


# -- algebras -----------------------------------------------------------------------

def test_cmonoid_is_an_S_algebra():
    C, T = cmonoid_c3()
    assert check_algebra(C, tensor_algebra(C, T, "S"), "S", k=3).ok


def test_ncmonoid_is_an_M_algebra_only():
    C, T = ncmonoid_s3()
    assert check_algebra(C, tensor_algebra(C, T, "M"), "M", k=3).ok
    rep = check_algebra(C, tensor_algebra(C, T, "S"), "S", k=2)
    assert not rep.ok and "structure-total" in rep.checks_failed()


def test_unital_algebra():
    C, T = cmonoid_c3()
    assert check_algebra(C, tensor_algebra(C, T, "S"), "S", k=2, unital=True).ok


class ConstantOnSingletons:
    """Sends every one-element list to a fixed object."""

    def __init__(self, C, h, x):
        self.C, self.h, self.x = C, h, x

    def obj(self, X):
        return self.x if len(X) == 1 else self.h.obj(X)

    def mor(self, M):
        return self.C.identity(self.x) if len(M) == 1 else self.h.mor(M)


def test_unit_law_witness():
    C, T = cmonoid_c3()
    h = ConstantOnSingletons(C, tensor_algebra(C, T, "M"), "0")
    rep = check_algebra(C, h, "M", k=2)
    assert _failing(rep, "unit-law") >= {("1",), ("2",)}


@settings(max_examples=60)
@given(st.lists(st.sampled_from("012"), min_size=9, max_size=9))
def test_algebra_iff_associative(table):
    elems = ("0", "1", "2")
    op_t = {(a, b): table[3 * int(a) + int(b)] for a, b in product(elems, repeat=2)}
    op = lambda a, b: op_t[a, b]
    assoc = all(op(op(a, b), c) == op(a, op(b, c)) for a, b, c in product(elems, repeat=3))
    comm = all(op(a, b) == op(b, a) for a, b in product(elems, repeat=2))
    C, T = monoid_category(elems, op)
    assert check_algebra(C, tensor_algebra(C, T, "M"), "M", k=3).ok == assoc
    assert check_algebra(C, tensor_algebra(C, T, "S"), "S", k=3).ok == (assoc and comm)


def _endo(C, f):
    return Functor(C, C, {x: f(x) for x in C.objects}, {C.identity(x): C.identity(f(x)) for x in C.objects})


def test_algebra_morphisms():
    C, T = cmonoid_c3()
    h = tensor_algebra(C, T, "S")
    assert check_algebra_morphism(identity_functor(C), h, h, "S", k=3).ok
    double = _endo(C, lambda x: str(2 * int(x) % 3))
    assert check_algebra_morphism(double, h, h, "S", k=3).ok
    P, TP = monoid_category(("e",), lambda a, b: "e", name="trivial")
    bang = Functor(C, P, {x: "e" for x in C.objects}, {C.identity(x): P.identity("e") for x in C.objects})
    assert check_algebra_morphism(bang, h, tensor_algebra(P, TP, "S"), "S", k=3).ok


def test_non_multiplicative_map_fails():
    C, T = cmonoid_c3()
    h = tensor_algebra(C, T, "S")
    shift = _endo(C, lambda x: str((int(x) + 1) % 3))
    rep = check_algebra_morphism(shift, h, h, "S", k=2)
    assert (("0", "0"),) in _failing(rep, "square")
