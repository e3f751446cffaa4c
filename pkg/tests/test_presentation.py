from itertools import product

import pytest
from hypothesis import given, strategies as st

from moorecat.fixtures import cmonoid_c3, free_tensor_data, monoidal_fixtures, ncmonoid_s3
from moorecat.monoidal.fincat import discrete
from moorecat.monoidal.presentation import (ASSOC, PENTAGON, App, Bindings, Coequifier, Coinserter,
                                            Comp, Coproduct, Id, Iso, OperadPresentation,
                                            PresentationError, Var, builtin_M, builtin_S,
                                            compile_presentation, eval_term, parse_term,
                                            presentation_from_json, presentation_to_json, subst,
                                            tensor_bindings, term_vars)
from moorecat.monoidal.tensor import (check_associator_coherence, check_hexagon, check_symmetric_monoidal,
                                      check_symmetry)


# -- terms ------------------------------------------------------------------------

def test_parse_term():
    t = parse_term("tensor(tensor(a, b), c)")
    assert t == App("tensor", (App("tensor", (Var("a"), Var("b"))), Var("c")))
    assert str(t) == "tensor(tensor(a,b),c)"
    assert term_vars(t) == ["a", "b", "c"]


@pytest.mark.parametrize("bad", ["", "tensor(a", "tensor(a,,b)", "a b", "(a)", "tensor(a))"])
def test_parse_term_rejects(bad):
    with pytest.raises(PresentationError):
        parse_term(bad)


def test_eval_variable():
    _, T = cmonoid_c3()
    assert eval_term(Var("a"), T, ["2"]) == "2"


def test_eval_product_on_monoid():
    _, T = cmonoid_c3()
    t = parse_term("tensor(tensor(a,b),c)")
    for a, b, c in product("012", repeat=3):
        assert eval_term(t, T, [a, b, c]) == str((int(a) + int(b) + int(c)) % 3)


def test_eval_follows_bracketing_order():
    _, T = ncmonoid_s3()
    t = parse_term("tensor(a,b)")
    assert eval_term(t, T, ["021", "102"]) != eval_term(t, T, ["102", "021"])


def test_eval_morphism():
    C, T = cmonoid_c3()
    assert eval_term(parse_term("tensor(a,b)"), T, ["id:1", "id:2"], kind="mor") == "id:0"


def test_eval_arity_mismatch():
    _, T = cmonoid_c3()
    with pytest.raises(PresentationError):
        eval_term(parse_term("tensor(a,b)"), T, ["1"])
    with pytest.raises(PresentationError):
        eval_term(parse_term("tensor(a,b)"), T, {"a": "1"})


def terms(depth=3):
    leaves = st.sampled_from([Var("a"), Var("b"), Var("c")])
    return st.recursive(leaves, lambda sub: st.tuples(sub, sub).map(lambda ab: App("tensor", ab)),
                        max_leaves=2 ** depth)


@given(terms(), terms(), terms(), st.tuples(*[st.sampled_from("012")] * 3))
def test_substitution_commutes_with_evaluation(t, ta, tb, xs):
    _, T = cmonoid_c3()
    env = dict(zip("abc", xs))
    direct = eval_term(subst(t, {"a": ta, "b": tb}), T, env)
    staged = eval_term(t, T, {**env, "a": eval_term(ta, T, env), "b": eval_term(tb, T, env)})
    assert direct == staged


# -- compilation ------------------------------------------------------------------

def test_builtins_compile():
    for P in (builtin_M(), builtin_S()):
        assert compile_presentation(P).presentation is P


def test_undeclared_iso_refused():
    bad = Coequifier("twist", Iso("twist", (Var("a"), Var("b"))), Id(parse_term("tensor(a,b)")), ("a", "b"))
    P = OperadPresentation((("tensor", 2),), (Coproduct(), ASSOC, bad))
    with pytest.raises(PresentationError, match="undeclared iso"):
        compile_presentation(P)


def test_iso_used_before_declaration_refused():
    P = OperadPresentation((("tensor", 2),), (Coproduct(), PENTAGON, ASSOC))
    with pytest.raises(PresentationError):
        compile_presentation(P)


@pytest.mark.parametrize("steps", [
    (Coinserter("x", parse_term("tensor(a)"), Var("a"), ("a",)),),
    (Coinserter("x", parse_term("times(a,b)"), Var("a"), ("a", "b")),),
    (Coinserter("x", parse_term("tensor(a,b)"), Var("c"), ("a", "b")),),
    (Coinserter("x", Var("a"), Var("a"), ("a", "a")),),
    (ASSOC, ASSOC),
    (ASSOC, Coequifier("e", Iso("assoc", (Var("a"),)), Id(Var("a")), ("a",))),
    (ASSOC, Coequifier("e", Comp(()), Id(Var("a")), ("a",))),
])
def test_ill_formed_presentations(steps):
    with pytest.raises(PresentationError):
        compile_presentation(OperadPresentation((("tensor", 2),), steps))


def test_duplicate_generator_refused():
    with pytest.raises(PresentationError):
        compile_presentation(OperadPresentation((("tensor", 2), ("tensor", 3))))


def test_json_round_trip():
    for P in (builtin_M(), builtin_S()):
        assert presentation_from_json(presentation_to_json(P)) == P


def test_json_malformed():
    with pytest.raises(PresentationError):
        presentation_from_json({"generators": [["tensor", 2]], "steps": [{"kind": "pushout"}]})
    with pytest.raises(PresentationError):
        presentation_from_json({"steps": []})


# -- verdicts -----------------------------------------------------------------------

FIXTURES = monoidal_fixtures()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_builtin_S_agrees_with_hand_written(name):
    C, T = FIXTURES[name]
    hand = all(f(C, T).ok for f in (check_associator_coherence, check_symmetry, check_hexagon))
    assert compile_presentation(builtin_S())(C, T).ok == hand


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_builtin_M_agrees_with_associator_check(name):
    C, T = FIXTURES[name]
    assert compile_presentation(builtin_M())(C, T).ok == check_associator_coherence(C, T).ok


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_same_witnesses(name):
    C, T = FIXTURES[name]
    hand = check_symmetric_monoidal(C, T)
    comp = compile_presentation(builtin_S())(C, T)
    failed = lambda rep, check: {v.witness for v in rep.violations if v.check == check}
    for check in ("pentagon", "sym-exists", "sym-involutive", "hexagon"):
        assert failed(comp, check) == failed(hand, check)


def test_expected_verdicts():
    S = compile_presentation(builtin_S())
    M = compile_presentation(builtin_M())
    verdicts = {n: (M(*FIXTURES[n]).ok, S(*FIXTURES[n]).ok) for n in FIXTURES}
    assert verdicts == {"cmonoid-C3": (True, True), "ncmonoid-S3": (True, False),
                        "Z2-groupoid": (True, True), "Z2-alpha-perturbed": (False, False),
                        "Z2-sigma-perturbed": (True, False)}


def test_free_symmetric_category_accepted():
    C, T = free_tensor_data(discrete(("a", "b")), 3, "S")
    assert compile_presentation(builtin_S())(C, T).ok


def test_missing_iso_table():
    C, T = cmonoid_c3()
    b = tensor_bindings(T)
    del b.isos["sym"]
    rep = compile_presentation(builtin_S())(C, T, b)
    assert "sym-exists" in rep.checks_failed()


def test_ternary_generator():
    # a single ternary operation with a cyclic symmetry, on the commutative monoid
    C, T = cmonoid_c3()
    add3 = lambda a, b, c: str((int(a) + int(b) + int(c)) % 3)
    ids = {x: f"id:{x}" for x in C.objects}
    mor3 = lambda f, g, h: ids[add3(*(m[3:] for m in (f, g, h)))]
    cyc = {xs: ids[add3(*xs)] for xs in product(C.objects, repeat=3)}
    b = Bindings({"m": add3}, {"m": mor3}, {"rot": (cyc, cyc)})
    rot = Coinserter("rot", parse_term("m(a,b,c)"), parse_term("m(b,c,a)"), ("a", "b", "c"))
    rot3 = Coequifier("rot3", Comp((Iso("rot", (Var("a"), Var("b"), Var("c"))),
                                    Iso("rot", (Var("b"), Var("c"), Var("a"))),
                                    Iso("rot", (Var("c"), Var("a"), Var("b"))))),
                      Id(parse_term("m(a,b,c)")), ("a", "b", "c"))
    P = OperadPresentation((("m", 3),), (Coproduct(), rot, rot3), "cyclic")
    assert compile_presentation(P)(C, None, b).ok
    del cyc["0", "1", "2"]
    rep = compile_presentation(P)(C, None, b)
    assert ("0", "1", "2") in {v.witness for v in rep.violations if v.check == "rot-exists"}
