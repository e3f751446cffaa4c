from fractions import Fraction as F
from itertools import product

import pytest

from moorecat.enriched import act_post, act_pre
from moorecat.fixtures import (cylinder, enriched_fixtures, interchange_default, walking_arrow,
                               walking_weq, walking_weq_pmorphisms)
from moorecat.pathobj import (NotAForest, PathObjectError, PMorphism, PObject, check_pmorphism,
                              essential_surjectivity_witness, ev, i_embed, i_embed_mor, lift_weq,
                              make_object, objects, p_compose, p_identity, pi0_fully_faithful,
                              pmorphism_problems, pmorphisms_between)
from moorecat.space import MoorePath, Traverse, concat, unit_path

WEQ = walking_weq()
NAMED = walking_weq_pmorphisms(WEQ)


def all_pmorphisms(C, max_word=1, durations=(F(1, 2),)):
    obs = objects(C)
    return [m for a, b in product(obs, repeat=2) for m in pmorphisms_between(C, a, b, max_word, durations)]


def test_make_object():
    assert make_object(WEQ, "x", "x", "idx") == PObject("x", "x", "idx")
    for a in ("a", "b", "ab", "ba"):
        make_object(WEQ, *WEQ.home(a), a)
    with pytest.raises(PathObjectError):
        make_object(walking_arrow(), "0", "1", "u")
    with pytest.raises(PathObjectError):
        make_object(WEQ, "y", "y", "a")


def test_named_morphisms_are_valid():
    for m in NAMED.values():
        assert pmorphism_problems(WEQ, m) == []


def test_lengths_add_on_named_pair():
    m = p_compose(WEQ, NAMED["beta"], NAMED["alpha"])
    assert m.length == F(5, 6)


def test_identity_has_length_zero():
    for o in objects(WEQ):
        assert p_identity(WEQ, o).length == 0


def test_wrong_endpoints_rejected():
    o, o2 = PObject("x", "x", "idx"), PObject("x", "x", "ba")
    bad = PMorphism(o, o2, "idx", "idx", unit_path("idx"))
    assert pmorphism_problems(WEQ, bad)
    with pytest.raises(PathObjectError):
        check_pmorphism(WEQ, bad)


def test_compose_object_mismatch():
    with pytest.raises(PathObjectError):
        p_compose(WEQ, NAMED["alpha"], NAMED["alpha"])


MORS = all_pmorphisms(WEQ)


def test_enumeration_is_valid_and_nonempty():
    assert len(MORS) > 20
    assert all(not pmorphism_problems(WEQ, m) for m in MORS)


def test_identity_is_strict_unit():
    for m in MORS:
        assert p_compose(WEQ, m, p_identity(WEQ, m.src)) == m_normal(m)
        assert p_compose(WEQ, p_identity(WEQ, m.tgt), m) == m_normal(m)


def m_normal(m):
    return PMorphism(m.src, m.tgt, m.f, m.g, concat(m.path, unit_path(m.path.end)))


def test_associativity_and_three_fold_formula():
    by_src = {}
    for m in MORS:
        by_src.setdefault(m.src, []).append(m)
    n = 0
    for al in MORS:
        for be in by_src[al.tgt]:
            ba = p_compose(WEQ, be, al)
            for ga in by_src[be.tgt]:
                left = p_compose(WEQ, ga, ba)
                right = p_compose(WEQ, p_compose(WEQ, ga, be), al)
                assert left == right
                assert left.length == al.length + be.length + ga.length
                # gamma.f'f * g''.beta.f * g''g'.alpha, alpha-side first
                f, f2 = al.f, be.f
                g2, g3 = be.g, ga.g
                expected = concat(concat(act_post(WEQ, WEQ.compose(g3, g2), al.path),
                                         act_pre(WEQ, f, act_post(WEQ, g3, be.path))),
                                  act_pre(WEQ, WEQ.compose(f2, f), ga.path))
                assert left.path == expected
                n += 1
    assert n > 100


@pytest.mark.parametrize("name", sorted(enriched_fixtures()))
def test_diagonal_factorization(name):
    C = enriched_fixtures()[name]
    for x in C.objects:
        assert ev(i_embed(C, x)) == (x, x)
    for u in C.vertices():
        m = i_embed_mor(C, u)
        assert ev(m) == (u, u)
        assert m.length == 0


@pytest.mark.parametrize("name", sorted(enriched_fixtures()))
def test_i_is_a_functor(name):
    C = enriched_fixtures()[name]
    for x in C.objects:
        assert i_embed_mor(C, C.identity(x)) == p_identity(C, i_embed(C, x))
    for (v, u), vu in C.comp.items():
        assert p_compose(C, i_embed_mor(C, v), i_embed_mor(C, u)) == i_embed_mor(C, vu)


def test_ev_of_composite_is_componentwise():
    for al in MORS:
        for be in MORS:
            if be.src == al.tgt:
                m = p_compose(WEQ, be, al)
                assert ev(m) == (WEQ.compose(be.f, al.f), WEQ.compose(be.g, al.g))
    o = objects(WEQ)[0]
    assert ev(p_identity(WEQ, o)) == (WEQ.identity(o.x), WEQ.identity(o.y))


@pytest.mark.parametrize("name", sorted(enriched_fixtures()))
def test_essential_surjectivity(name):
    C = enriched_fixtures()[name]
    for o in objects(C):
        m = essential_surjectivity_witness(C, o)
        assert m.src == i_embed(C, o.x) and m.tgt == o
        assert (m.f, m.g) == (C.identity(o.x), o.a)
        assert m.length == 0
        assert C.is_weq(m.f) and C.is_weq(m.g)
        if o.a == C.identity(o.x):
            assert m == p_identity(C, o)


def test_lift_identities():
    for o in objects(WEQ):
        m = lift_weq(WEQ, WEQ.identity(o.x), WEQ.identity(o.y), o)
        assert m.src == o and m.path == unit_path(o.a)


def test_lift_every_marked_pair():
    count = 0
    for o in objects(WEQ):
        for w1, w2 in product(sorted(WEQ.weak_equivalences), repeat=2):
            if (WEQ.cod(w1), WEQ.cod(w2)) != (o.x, o.y):
                continue
            m = lift_weq(WEQ, w1, w2, o)
            assert pmorphism_problems(WEQ, m) == []
            assert (m.f, m.g) == (w1, w2) and m.tgt == o
            assert WEQ.is_weq(m.src.a)
            count += 1
    assert count > 6


def test_lift_refuses_unmarked():
    C = walking_arrow()
    with pytest.raises(PathObjectError):
        lift_weq(C, "u", "u", PObject("1", "1", "id1"))


def test_lift_without_inverse():
    C = walking_arrow()
    C.weak_equivalences = frozenset({"id0", "id1", "u"})
    with pytest.raises(PathObjectError):
        lift_weq(C, "id0", "u", PObject("0", "1", "u"))


@pytest.mark.parametrize("name", ["walking-arrow", "walking-weq", "cylinder"])
def test_pi0_fully_faithful_on_forests(name):
    C = enriched_fixtures()[name]
    for x, y in product(C.objects, repeat=2):
        r = pi0_fully_faithful(C, x, y)
        assert r.holds and r.classes == r.components == len(C.hom(x, y).components())


def test_cylinder_single_class():
    r = pi0_fully_faithful(cylinder(), "x", "y", max_word=2)
    assert (r.components, r.classes) == (1, 1)


def test_non_forest_refused():
    with pytest.raises(NotAForest):
        pi0_fully_faithful(interchange_default().cat, "*", "*")
