import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagtori.classifier import (
    Branch,
    Kind,
    Reason,
    case2_route,
    classify_case1_by_area,
    classify_pq,
    classify_via_reduction,
    classify_xy,
    cross_check,
)
from lagtori.energy_germs import energy_fiber
from lagtori.errors import BoundaryError, DomainError, OutsideError
from lagtori.polytopes import PQCoord, XYCoord
from lagtori.verify import boundary_continuity_error, interior_grid, path_independence_error, xy_coherence_error


def test_pq_examples():
    out = classify_pq(PQCoord(0.3, 0.7))
    assert out.kind is Kind.STANDARD_FIBER and out.branch is Branch.CASE1_POS
    assert out.fiber == pytest.approx((0.2, -0.1), abs=1e-15)
    out = classify_pq(PQCoord(-0.2, 0.8))
    assert out.fiber == pytest.approx((0.1, 0.3), abs=1e-15) and out.branch is Branch.CASE1_NEG
    out = classify_pq(PQCoord(0.0, 0.7))
    assert out.kind is Kind.NON_PRODUCT and out.reason is Reason.GERM_ARGUMENT and out.fiber is None
    assert classify_pq(PQCoord(0.0, 0.3)).reason is Reason.CITED_FOOO
    assert classify_pq(PQCoord(0.0, 0.5)).reason is Reason.CITED_FOOO
    assert classify_pq(PQCoord(0.5, 0.7)).branch is Branch.CASE2_POS
    assert classify_pq(PQCoord(-0.5, 0.7)).branch is Branch.CASE2_NEG


def test_xy_examples():
    assert classify_xy(XYCoord(1.0, 0.3)).fiber == pytest.approx((0.2, -0.1), abs=1e-15)
    assert classify_xy(XYCoord(0.6, 0.2)).fiber == pytest.approx((0.1, 0.3), abs=1e-15)
    assert classify_xy(XYCoord(0.5, 0.5)).kind is Kind.NON_PRODUCT


def test_rejects_boundary_and_outside():
    with pytest.raises(BoundaryError):
        classify_pq(PQCoord(0.7, 0.7))
    with pytest.raises(BoundaryError):
        classify_pq(PQCoord(0.0, 1.0))
    with pytest.raises(OutsideError):
        classify_pq(PQCoord(0.9, 0.7))


def test_case1_by_area():
    assert classify_case1_by_area(PQCoord(0.3, 0.7)) == pytest.approx((0.2, -0.1), abs=1e-15)
    assert classify_case1_by_area(PQCoord(0.3, 0.7), numeric=True) == pytest.approx((0.2, -0.1), abs=1e-8)


def test_case2_route_example():
    trace = []
    fiber = classify_via_reduction(PQCoord(0.5, 0.7), trace)
    assert trace[0][0] == "probe"
    assert trace[0][1] == pytest.approx((0.5, 0.8))
    assert trace[0][2] == pytest.approx((0.3, -0.2), abs=1e-15)
    steps = [f for _, _, f in trace]
    assert steps[1] == pytest.approx((-0.3, -0.2), abs=1e-15)
    assert steps[2] == pytest.approx((-0.3, 0.2), abs=1e-15)
    assert fiber == pytest.approx((0.2, -0.3), abs=1e-15)
    assert classify_pq(PQCoord(0.5, 0.7)).fiber == pytest.approx(fiber, abs=1e-15)


def test_path_independence_full_grid():
    assert path_independence_error(interior_grid(50)) <= 1e-12


def test_xy_coherence_grid():
    assert xy_coherence_error(interior_grid(50)) <= 1e-12


def test_boundary_continuity():
    q = 0.7
    a = classify_case1_by_area(PQCoord(0.49, q))
    b = case2_route(PQCoord(0.49, q))
    assert a == pytest.approx((q - 0.5, q - 0.49 - 0.5), abs=1e-12)
    assert b == pytest.approx(a, abs=1e-12)
    assert boundary_continuity_error([0.1 * k + 0.05 for k in range(10)]) <= 1e-12


def test_reduction_route_rejects_diagonal():
    with pytest.raises(DomainError):
        classify_via_reduction(PQCoord(0.0, 0.7))


def test_energy_coherence():
    for pq in interior_grid(30):
        p, q = pq
        if q > 0.5 and abs(p) <= 2 * q - 1:
            assert energy_fiber(classify_pq(pq).fiber) == pytest.approx(1 - q, abs=1e-12)


def test_energy_coherence_fails_beyond_region():
    # e(fiber) = 1 - q is not true for p > 2q - 1 (the p > 0 clause needs this bound)
    assert energy_fiber(classify_pq(PQCoord(0.69, 0.7)).fiber) == pytest.approx(0.01)


def test_json_shape():
    doc = classify_pq(PQCoord(0.3, 0.7)).to_json()
    assert set(doc) == {"input", "kind", "xi", "zeta", "branch", "reason"}
    assert doc["kind"] == "StandardFiber" and doc["branch"] == "Case1Pos" and doc["reason"] is None
    assert doc["input"]["x"] == pytest.approx(1.0) and doc["input"]["y"] == pytest.approx(0.3)
    json.dumps(doc)
    nd = classify_pq(PQCoord(0.0, 0.7)).to_json()
    assert nd["xi"] is None and nd["reason"] == "GermArgument"


def test_cross_check():
    assert cross_check(PQCoord(-0.5, 0.6))["agree"] is True
    assert cross_check(PQCoord(0.0, 0.6))["agree"] is None


interior = st.tuples(st.floats(0.01, 0.99), st.floats(-0.99, 0.99)).map(lambda t: PQCoord(t[0] * t[1], t[0]))


@settings(max_examples=100, deadline=None)
@given(interior)
def test_fiber_inside_p1_and_routes_agree(pq):
    out = classify_pq(pq)
    if out.kind is Kind.NON_PRODUCT:
        return
    assert all(abs(c) < 0.5 for c in out.fiber)
    via = classify_via_reduction(pq)
    assert via == pytest.approx(out.fiber, abs=1e-12)
