from fractions import Fraction as F
from itertools import product
from pathlib import Path

import pytest

from moorecat.fixtures import interchange_default, point_monoidal
from moorecat.interchange import (SWEEP_GRID, bifunctor_counterexample, check_interchange,
                                  family_morphism, family_path, interchange_sweep, odot_objects,
                                  odot_paths, odot_pmorphisms, sweep_report, validate_monoidal)
from moorecat.pathobj import PathObjectError, PMorphism, PObject, i_embed, p_identity
from moorecat.report import dumps
from moorecat.space import Dwell, MoorePath, PairingFailure, Traverse, unit_path

GOLDEN = Path(__file__).parent / "golden" / "interchange_sweep.json"
M = interchange_default()
C = M.cat
O = PObject("*", "*", "0")
HALF = F(1, 2)


def T(edge, d):
    return Traverse(edge, True, F(d), "0", "0")


def D(d):
    return Dwell("0", F(d))


def loop(*steps):
    return MoorePath("0", steps)


def pm(path):
    return PMorphism(O, O, "0", "0", path)


def test_fixtures_validate():
    assert validate_monoidal(M).ok
    assert validate_monoidal(point_monoidal()).ok


def test_broken_whiskering_reported():
    N = interchange_default()
    del N.whisker_left["0", "m"]
    assert not validate_monoidal(N).ok


# -- the tensor on objects and paths -------------------------------------------------

def test_odot_of_embedded_objects():
    assert odot_objects(M, i_embed(C, "*"), i_embed(C, "*")) == i_embed(C, M.obj("*", "*"))


def test_odot_with_unit_object():
    unit = i_embed(C, M.unit)
    assert odot_objects(M, O, unit) == O and odot_objects(M, unit, O) == O


def test_odot_with_unit_path_is_whiskering():
    a = loop(D(HALF), T("l", 1))
    assert odot_paths(M, a, unit_path("0")) == a
    assert odot_paths(M, unit_path("0"), a) == a


def test_odot_dwells_take_max():
    assert odot_paths(M, loop(D(1)), loop(D(3))) == loop(D(3))


def test_odot_overlap_fails():
    out = odot_paths(M, loop(T("l", 1)), loop(D(HALF), T("m", 1)))
    assert isinstance(out, PairingFailure) and out.reason == "simultaneous traversal"


def test_odot_interleaves():
    out = odot_paths(M, loop(T("l", HALF), D(HALF)), loop(D(HALF), T("m", HALF)))
    assert out == loop(T("l", HALF), T("m", HALF))


def test_odot_pmorphism_identities():
    idm = p_identity(C, O)
    assert odot_pmorphisms(M, idm, idm) == idm


# -- interchange --------------------------------------------------------------------

def test_matched_unit_lengths_equal():
    v = check_interchange(M, *(family_morphism(M, n, 1) for n in ("left", "right", "left", "right")))
    assert v.verdict == "equal" and v.lengths == (1, 1, 1, 1)


def test_all_zero_equal():
    v = check_interchange(M, *(family_morphism(M, n, 0) for n in ("left", "right", "left", "right")))
    assert v.equal and v.lhs.length == 0


def test_mismatched_lengths_unequal():
    # alpha_1, alpha'_2: the right factor only dwells, so both sides are defined
    a, b = pm(family_path(M.families["left"], 1)), pm(family_path(M.families["left"], 1))
    a2, b2 = pm(loop(D(2))), pm(loop(D(1)))
    v = check_interchange(M, a, a2, b, b2)
    assert v.verdict == "unequal" and v.lengths == (1, 2, 1, 1)
    # the second traversal of l happens at time 5/2 on one side and 3/2 on the other
    assert v.lhs.path == loop(D(HALF), T("l", HALF), D(F(3, 2)), T("l", HALF))
    assert v.rhs.path == loop(D(HALF), T("l", HALF), D(HALF), T("l", HALF), D(1))


def test_non_chaining_inputs():
    a = family_morphism(M, "left", 1)
    elsewhere = PMorphism(O, PObject("*", "*", "elsewhere"), "0", "0", unit_path("0"))
    with pytest.raises(PathObjectError):
        check_interchange(M, elsewhere, a, a, a)


# an independent oracle: busy intervals of l and m on both sides

def _intervals(r, v, s, z):
    lhs_l = [(r / 2, r), (max(r, v) + s / 2, max(r, v) + s)]
    lhs_m = [(F(0), v / 2), (max(r, v), max(r, v) + z / 2)]
    rhs_l = [(r / 2, r), (r + s / 2, r + s)]
    rhs_m = [(F(0), v / 2), (v, v + z / 2)]
    return (lhs_l, lhs_m, max(r, v) + max(s, z)), (rhs_l, rhs_m, max(r + s, v + z))


def _clash(ls, ms):
    return any(a0 < b1 and b0 < a1 for a0, a1 in ls for b0, b1 in ms if a0 < a1 and b0 < b1)


def _events(xs):
    return sorted((a, b) for a, b in xs if a < b)


def oracle(r, v, s, z):
    (ll, lm, ln), (rl, rm, rn) = _intervals(r, v, s, z)
    if _clash(ll, lm) or _clash(rl, rm):
        return "undefined"
    same = _events(ll) == _events(rl) and _events(lm) == _events(rm) and ln == rn
    return "equal" if same else "unequal"


CELLS = interchange_sweep(M)


def test_sweep_covers_grid_in_order():
    assert [c.lengths for c in CELLS] == list(product(SWEEP_GRID, repeat=4))


def test_sweep_matches_interval_oracle():
    for c in CELLS:
        assert c.verdict == oracle(*c.lengths), c.lengths


def test_sweep_counts():
    rep = sweep_report(M, CELLS)
    assert rep["counts"] == {"equal": 88, "unequal": 37, "undefined": 131}
    assert rep["locus"]["matched_not_equal"] == []
    assert len(rep["locus"]["equal_off_matched"]) == 72
    assert rep["locus"]["matches_r_eq_v_and_s_eq_z"] is False


def test_defined_cells_with_equal_first_lengths_are_equal():
    # pointwise tensor runs both factors from time 0, so r = v is enough
    for c in CELLS:
        r, v, s, z = c.lengths
        if r == v and c.verdict != "undefined":
            assert c.equal


def test_golden_report_byte_stable():
    text = dumps(sweep_report(M, CELLS))
    assert text == GOLDEN.read_text(encoding="utf-8")
    assert dumps(sweep_report(M, interchange_sweep(M))) == text


def test_swap_symmetry():
    swapped = {c.lengths: c.verdict for c in interchange_sweep(M, first="right", second="left")}
    for c in CELLS:
        r, v, s, z = c.lengths
        assert swapped[v, r, z, s] == c.verdict


def test_swap_symmetry_on_paths():
    cands = [unit_path("0"), loop(T("l", HALF)), loop(D(HALF), T("m", HALF)), loop(T("m", 1), D(HALF))]
    for a, a2, b, b2 in product(cands, repeat=4):
        v1 = check_interchange(M, pm(a), pm(a2), pm(b), pm(b2))
        v2 = check_interchange(M, pm(a2), pm(a), pm(b2), pm(b))
        assert v1.verdict == v2.verdict


# -- counterexample search ------------------------------------------------------------

def test_counterexample_found():
    res = bifunctor_counterexample(M)
    assert res and res.found.verdict == "unequal"
    r, v, s, z = res.found.lengths
    assert (r, v, s, z) == (0, HALF, 1, 0)
    assert r != v


def test_no_counterexample_with_equal_lengths():
    res = bifunctor_counterexample(M, equal_lengths_only=True)
    assert not res and res.searched > 1000


def test_no_counterexample_on_point():
    res = bifunctor_counterexample(point_monoidal())
    assert not res and res.searched == 1
