import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagtori.energy_germs import (
    UNBOUNDED,
    AffinePiece,
    Combiner,
    Domain,
    GermModel,
    energy_fiber,
    find_linear_equivalence,
    germ_consistency,
    germ_L,
    germ_T_diag,
    germs_linearly_equivalent,
)
from lagtori.errors import DomainError
from lagtori.polytopes import FiberLabel
from lagtori.verify import GERM_D1, GERM_D2, GERM_QS, germ_grid


def test_energy_fiber_examples():
    assert energy_fiber(FiberLabel(0.1, 0.3)) == pytest.approx(0.2)
    assert energy_fiber(FiberLabel(0.0, 0.0)) is UNBOUNDED
    assert energy_fiber(FiberLabel(0.3, 0.1)) == energy_fiber(FiberLabel(0.1, 0.3))
    assert repr(UNBOUNDED) == "Unbounded"


def test_germ_L_examples():
    g = germ_L(0.7)
    assert g((0.01, 0.02)) == pytest.approx(0.28, abs=1e-15)
    vals = {g((d1, 0.02)) for d1 in (0.01, -0.01, 0.005, -0.005)}
    assert len(vals) == 1
    assert g((1e-300, 0.0)) == pytest.approx(energy_fiber(FiberLabel(0.2, 0.2)))
    with pytest.raises(DomainError):
        g((0.0, 0.01))
    with pytest.raises(DomainError):
        germ_L(0.5)


def test_germ_T_examples():
    assert germ_T_diag(0.2)((0.01, 0.02)) == pytest.approx(0.28, abs=1e-15)
    assert germ_T_diag(-0.2)((0.01, 0.02)) == pytest.approx(0.31, abs=1e-15)
    g = germ_T_diag(0.2)
    assert g.pieces[0]((0.01, 0.01)) == g.pieces[1]((0.01, 0.01))
    with pytest.raises(DomainError):
        germ_T_diag(0.0)


def test_equivalence_examples():
    assert not germs_linearly_equivalent(germ_L(0.7), germ_T_diag(0.2))
    assert germs_linearly_equivalent(germ_T_diag(0.2), germ_T_diag(0.2))
    assert germs_linearly_equivalent(germ_L(0.6), germ_L(0.8))
    assert germ_L(0.7).span_dimension() == 1 and germ_T_diag(0.2).span_dimension() == 2


def test_equivalence_finds_swap():
    m = find_linear_equivalence(germ_T_diag(0.2), germ_T_diag(-0.3))
    assert m is not None
    assert abs(round(np.linalg.det(m))) >= 1


def test_inequivalence_grid():
    qs, xis = germ_grid(20)
    assert len(qs) == 20 and len(xis) == 20
    assert all(0.5 < q < 1 for q in qs) and all(0 < abs(x) < 0.5 for x in xis)
    for q in qs:
        for x in xis:
            assert not germs_linearly_equivalent(germ_L(q), germ_T_diag(x))


def test_germ_consistency_examples():
    assert germ_consistency(0.7, 0.01, 0.02) <= 1e-15
    assert germ_consistency(0.7, -0.01, 0.02) <= 1e-15
    assert germ_consistency(0.7, 0.05, -0.03) <= 1e-15
    with pytest.raises(DomainError):
        germ_consistency(0.7, 0.0, 0.01)


def test_germ_consistency_grid():
    assert max(germ_consistency(q, a, b) for q in GERM_QS for a in GERM_D1 for b in GERM_D2) <= 1e-12


def test_germ_json_round_trip():
    for g in (germ_L(0.7), germ_T_diag(-0.2)):
        assert GermModel.from_json(g.to_json()) == g


def test_germ_model_validation():
    with pytest.raises(DomainError):
        GermModel((), Combiner.MIN)
    with pytest.raises(DomainError):
        GermModel((AffinePiece((1.0, 0.0), 0.0),) * 2, Combiner.SINGLE)
    with pytest.raises(DomainError):
        GermModel((AffinePiece((float("inf"), 0.0), 0.0),), Combiner.SINGLE)
    assert germ_L(0.7).domain is Domain.DELTA1_NONZERO


labels = st.tuples(st.floats(-0.49, 0.49), st.floats(-0.49, 0.49)).filter(lambda t: t != (0.0, 0.0))


@settings(max_examples=100, deadline=None)
@given(labels)
def test_energy_symmetries(t):
    xi, zeta = t
    e = energy_fiber(FiberLabel(xi, zeta))
    for other in ((-xi, zeta), (xi, -zeta), (zeta, xi)):
        assert energy_fiber(FiberLabel(*other)) == e
