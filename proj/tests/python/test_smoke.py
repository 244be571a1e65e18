import pytest

import cyclelab

WORKED = {
    "p": 5,
    "n": 2,
    "field": {"e0": 150},
    "curve_E": {"type": "supersingular", "v_a": "500"},
    "curve_E2": {"type": "supersingular", "v_a": "500"},
}


def test_worked_example_descriptor():
    rep = cyclelab.cycle_image(WORKED)
    assert rep["result"] == [2, 1, 1]
    assert [c["alpha"] for c in rep["report"]["components"]] == [0, 1, 1, 2]
    assert rep["inputs"]["field"]["e"] == 600


def test_worked_example_trace():
    w = cyclelab.worked_example()
    assert w["report"]["group"]["exps"] == [2, 1, 1]
    assert any("(29/6 e0, 5 e0] u (41/5 e0, 9 e0]" in line for line in w["trace"])


def test_descriptor_round_trip():
    d = cyclelab.parse_descriptor(WORKED)
    assert cyclelab.parse_descriptor(d) == d
    assert d["curve_E"]["v_a"] == "500"


def test_validation_error():
    bad = {"p": 3, "n": 1, "field": {"e": 1}, "curve_E": {"type": "split"}, "curve_E2": {"type": "split"}}
    with pytest.raises(cyclelab.Error) as info:
        cyclelab.parse_descriptor(bad)
    assert info.value.kind == "ValidationError"
    assert "NonIntegralE0" in str(info.value)


def test_parse_error_location():
    with pytest.raises(cyclelab.Error) as info:
        cyclelab.parse_descriptor('{"p": 2,\n "n": }')
    assert info.value.kind == "ParseError"
    assert "line 2" in str(info.value)


def test_reduction_table():
    for p in (2, 3, 5):
        e = cyclelab.minimal_supersingular_e(p, 1)
        ss = {"type": "supersingular", "v_a": str(-(-p * e // (p + 1)))}
        for other in ({"type": "split"}, {"type": "ordinary"}):
            d = {"p": p, "n": 1, "field": {"e": e}, "curve_E": ss, "curve_E2": other}
            assert cyclelab.cycle_image(d)["result"] == [1, 1]
            d["curve_E"] = other
            assert cyclelab.cycle_image(d)["result"] == [1]


def test_grade_units_oracle():
    rep = cyclelab.grade_units(2, 2, n=2, oracle=True)
    assert rep["agree"]
    assert rep["log_total"] == rep["expected_log_total"] == 2 * (2 + 2)


def test_hilbert():
    assert cyclelab.hilbert_orders(2, 1, 1)["agree"]
    for a in (-1, 2, 3, 5, 6, 7):
        for b in (-1, 2, 3, 5, 6, 7):
            assert cyclelab.hilbert_2adic(a, b) == cyclelab.brute_hilbert_2adic(a, b)
    assert cyclelab.symbol_order(1, 1, 2, 1, 1) == 1


def test_jumps_and_milnor():
    j = cyclelab.jumps(2, 1, eisenstein=[-2, 2])
    assert j["lower"] == ["1"] and j["quadratic_lower_jump"] == 1
    rows = cyclelab.milnor(3, 6, n=2, q=2, r=2, window=9)["rows"]
    assert all(r.get("shift_agrees", True) for r in rows)


def test_isogeny_grades():
    rep = cyclelab.isogeny_grades(5, 600, n=2, t=[20, 100])
    assert rep["chain"]["c_phi"] == ["25", "145"]
    with pytest.raises(cyclelab.Error) as info:
        cyclelab.isogeny_grades(5, 600, t=[24, 100], strict=True)
    assert info.value.kind == "ChainInvariant"


def test_verify_single():
    (r,) = cyclelab.verify(4)
    assert r["passed"] and r["id"] == 4
