import pytest
from hypothesis import given, strategies as st

from graded_kronecker.fukaya import (
    CHECKS,
    ModelParams,
    failed_checks,
    hom_F0_F1,
    hom_from_F0_raw,
    hom_from_F1,
    indecomposability_gate,
    intersection_number_F1,
    manifold_admissible,
    rep_cohomology_as_HL,
    scan,
    scan_unique,
)
from graded_kronecker.quiver import (
    LineBundle,
    RepresentationError,
    TorsionInfinity,
    TorsionZero,
    direct_sum,
    normal_form,
    random_base_change,
    shift_rep,
    zero_rep,
)

from conftest import labels


def test_params():
    assert ModelParams(3).d == -2
    assert hom_F0_F1(ModelParams(4)) == {0: 1, 3: 1}
    with pytest.raises(ValueError):
        ModelParams(1)


def test_cohomology_as_HL():
    for n in (2, 5):
        p = ModelParams(n)
        assert rep_cohomology_as_HL(normal_form(TorsionInfinity(1), p.d), p) == {0: 1, n: 1}
        assert rep_cohomology_as_HL(normal_form(LineBundle(3), p.d), p) == {0: 1}
    with pytest.raises(RepresentationError):
        rep_cohomology_as_HL(normal_form(LineBundle(0), -1), ModelParams(3))


def test_failed_checks():
    assert failed_checks({0: 1, 3: 1}, 3) == []
    assert failed_checks({0: 1}, 3) == ["top_class", "duality"]
    assert failed_checks({0: 1, 1: 2, 2: 1}, 2) == ["h1_vanishes"]
    assert failed_checks({-1: 1}, 2, checks=["support"]) == ["support"]


@pytest.mark.parametrize("n", range(2, 11))
def test_torsion_infinity_one_admissible(n):
    p = ModelParams(n)
    rep = manifold_admissible(normal_form(TorsionInfinity(1), p.d), p)
    assert rep.admissible and rep.witness_shift == 0 and rep.failures == []


@pytest.mark.parametrize("k", [-3, 0, 2])
def test_line_bundle_never_admissible(k):
    rep = manifold_admissible(LineBundle(k), ModelParams(4))
    assert not rep.admissible and rep.witness_shift is None
    assert "top_class" in rep.failures


def test_wide_torsion_infinity_rejected():
    rep = manifold_admissible(TorsionInfinity(2), ModelParams(3))
    # degrees 0, -2 and 3, 5: width 7 > 3
    assert rep.profile == {-2: 1, 0: 1, 3: 1, 5: 1}
    assert not rep.admissible


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("k", range(2, 6))
def test_torsion_infinity_higher_k_rejected(n, k):
    assert not manifold_admissible(TorsionInfinity(k), ModelParams(n)).admissible


def test_unknown_check():
    with pytest.raises(ValueError):
        manifold_admissible(LineBundle(0), ModelParams(2), checks=["orientable"])


def test_scan_examples():
    assert scan_unique(ModelParams(2), 6) == [TorsionInfinity(1)]
    assert scan_unique(ModelParams(10), 6) == [TorsionInfinity(1)]
    assert scan_unique(ModelParams(2), 1) == [TorsionInfinity(1)]


def test_torsion_zero_two_needs_h1_check():
    # at n = 2, TZ(2) has degrees {0, 1} + {-1, 2}, the profile of a torus
    p = ModelParams(2)
    no_h1 = [c for c in CHECKS if c != "h1_vanishes"]
    assert set(scan_unique(p, 6, no_h1)) == {TorsionInfinity(1), TorsionZero(2)}
    report = dict(scan(p, 6))[TorsionZero(2)]
    assert report.failures == ["h1_vanishes"]


def test_label_and_rep_agree():
    p = ModelParams(3)
    for lab, report in scan(p, 3):
        assert manifold_admissible(lab, p).admissible == report.admissible


@given(labels(k_max=4), st.integers(2, 6), st.integers(-3, 3), st.integers(0, 10**6))
def test_admissibility_shift_and_base_change_invariant(lab, n, s, seed):
    p = ModelParams(n)
    rep = normal_form(lab, p.d)
    verdict = manifold_admissible(rep, p).admissible
    assert manifold_admissible(shift_rep(rep, s), p).admissible == verdict
    assert manifold_admissible(random_base_change(rep, seed)[0], p).admissible == verdict


def test_hom_from_F1_examples():
    assert hom_from_F1(normal_form(TorsionInfinity(1), -1)) == {0: 1}
    assert hom_from_F1(zero_rep(-1)) == {}
    assert hom_from_F1(normal_form(TorsionZero(2), -2)) == {0: 1, 2: 1}


def test_intersection_examples():
    assert intersection_number_F1(zero_rep(-1)) == 0
    assert intersection_number_F1(normal_form(TorsionInfinity(1), -1)) == 1
    a = normal_form(TorsionInfinity(1, 0), -2)
    b = normal_form(TorsionInfinity(1, 1), -2)
    assert intersection_number_F1(direct_sum(a, b)) == 0


@given(labels(k_max=4), st.integers(2, 6), st.integers(-3, 3))
def test_admissible_indecomposables_meet_F1_once(lab, n, s):
    p = ModelParams(n)
    rep = normal_form(lab.shifted(s), p.d)
    if indecomposability_gate(rep) and manifold_admissible(rep, p).admissible:
        assert sum(hom_from_F1(rep).values()) == 1
        assert abs(intersection_number_F1(rep)) == 1


def test_indecomposability_gate():
    a = normal_form(TorsionZero(2), -1)
    assert indecomposability_gate(a)
    assert not indecomposability_gate(direct_sum(a, normal_form(LineBundle(0), -1)))
    assert indecomposability_gate(random_base_change(a, 5)[0])
    assert not indecomposability_gate(zero_rep(-1))


def test_hom_from_F0_raw():
    # (alpha, beta) on TI(1) is injective; the one-dimensional cokernel sits
    # in the beta slot
    out = hom_from_F0_raw(normal_form(TorsionInfinity(1), -1))
    assert out["kernel"] == {}
    assert sum(out["cokernel"].values()) == 1
    # on LB(-1) the lone V vector is killed by both arrows
    assert hom_from_F0_raw(normal_form(LineBundle(-1), -1))["kernel"] == {0: 1}
