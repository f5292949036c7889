import pytest
from hypothesis import given, strategies as st

from graded_kronecker.linalg import QQ, GradedMap, GradedVectorSpace, ScalarField, identity_map
from graded_kronecker.quiver import (
    IndecomposableLabel,
    Intertwiner,
    LineBundle,
    Representation,
    RepresentationError,
    TorsionInfinity,
    TorsionZero,
    are_isomorphic,
    direct_sum,
    find_isomorphism_linear,
    from_bases,
    is_morphism,
    normal_form,
    random_base_change,
    random_rep,
    shift_rep,
    transport,
    validate,
    zero_rep,
)

from conftest import all_labels, labels, nonzero_d


def test_label_invariants():
    with pytest.raises(ValueError):
        TorsionZero(0)
    with pytest.raises(ValueError):
        IndecomposableLabel("Sheaf", 1)
    assert LineBundle(-3).dims == (3, 2)
    assert LineBundle(2).dims == (2, 3)
    assert TorsionInfinity(4).dims == (4, 4)
    assert str(TorsionZero(2, -1)) == "TorsionZero k=2 shift=-1"


def test_validate_accepts_normal_form():
    validate(normal_form(TorsionInfinity(1), -1))


def test_validate_rejects_zero_d():
    rep = normal_form(TorsionInfinity(1), -1)
    bad = Representation(0, rep.V, rep.W, rep.alpha, rep.beta)
    with pytest.raises(RepresentationError, match="d must be nonzero"):
        validate(bad)


def test_validate_rejects_block_into_zero_degree():
    V, W = GradedVectorSpace({0: 1}, QQ), GradedVectorSpace({0: 1}, QQ)
    alpha = GradedMap(V, W, 0, {0: ((QQ(1),),)})
    # beta has degree -1 so it lands in W_{-1} = 0, yet carries an entry
    beta = GradedMap(V, W, -1, {0: ((QQ(1),),)})
    with pytest.raises(RepresentationError):
        validate(Representation(-1, V, W, alpha, beta))


def test_validate_rejects_wrong_beta_degree():
    rep = normal_form(TorsionZero(2), -2)
    bad = Representation(-1, rep.V, rep.W, rep.alpha, rep.beta)
    with pytest.raises(RepresentationError):
        validate(bad)


def test_validate_rejects_field_mix():
    rep = normal_form(TorsionInfinity(1), -1)
    other = normal_form(TorsionInfinity(1), -1, ScalarField.prime(3))
    with pytest.raises(RepresentationError):
        validate(Representation(-1, rep.V, rep.W, rep.alpha, other.beta))


def test_normal_form_torsion_infinity():
    rep = normal_form(TorsionInfinity(1), -2)
    assert rep.V.dims == {0: 1} and rep.W.dims == {0: 1}
    assert rep.alpha.block(0) == ((1,),)
    assert rep.beta.is_zero()


def test_normal_form_line_bundle_zero():
    rep = normal_form(LineBundle(0), 3)
    assert rep.V.dims == {} and rep.W.dims == {0: 1}
    assert rep.alpha.blocks == {} and rep.beta.blocks == {}


def test_normal_form_torsion_zero():
    rep = normal_form(TorsionZero(2), -2)
    assert rep.V.dims == {2: 1, 4: 1}
    assert rep.W.dims == {0: 1, 2: 1}
    # beta: V_2 -> W_0 and V_4 -> W_2, both identities
    assert rep.beta.block(2) == ((1,),) and rep.beta.block(4) == ((1,),)
    # alpha: V_2 -> W_2 is the subdiagonal one, V_4 has nowhere to go
    assert rep.alpha.block(2) == ((1,),)
    assert rep.alpha.block(4) == ()


def test_normal_form_line_bundle_negative():
    # dim V = 2, dim W = 1 for k = -2
    rep = normal_form(LineBundle(-2), 3)
    assert rep.V.dims == {0: 1, 3: 1} and rep.W.dims == {3: 1}
    assert rep.alpha.block(3) == ((1,),) and rep.beta.block(0) == ((1,),)


@pytest.mark.parametrize("lab", all_labels())
@pytest.mark.parametrize("d", [-5, -3, -1, 1, 2, 5])
def test_normal_forms_respect_arrow_degrees(lab, d):
    rep = normal_form(lab, d)
    validate(rep)
    assert rep.alpha.degree == 0 and rep.beta.degree == d
    assert (rep.V.total, rep.W.total) == lab.dims
    # every normal form is thin: at most one basis vector per degree
    assert all(n == 1 for n in rep.V.dims.values())
    assert all(n == 1 for n in rep.W.dims.values())


def test_direct_sum_unit_and_dims():
    a = normal_form(TorsionInfinity(1), -1)
    assert direct_sum(a, zero_rep(-1)) == a
    s = direct_sum(a, normal_form(LineBundle(0), -1))
    assert (s.V.total, s.W.total) == (1, 2)
    validate(s)


def test_direct_sum_mismatch():
    with pytest.raises(RepresentationError):
        direct_sum(normal_form(LineBundle(0), -1), normal_form(LineBundle(0), -2))


@given(labels(), labels(), nonzero_d)
def test_direct_sum_dims_add(a, b, d):
    ra, rb = normal_form(a, d), normal_form(b, d)
    s = direct_sum(ra, rb)
    for g in set(ra.V.dims) | set(rb.V.dims):
        assert s.V[g] == ra.V[g] + rb.V[g]
    for g in set(ra.W.dims) | set(rb.W.dims):
        assert s.W[g] == ra.W[g] + rb.W[g]


@given(labels(), labels(), labels(), nonzero_d)
def test_direct_sum_commutative_associative(a, b, c, d):
    ra, rb, rc = (normal_form(x, d) for x in (a, b, c))
    assert are_isomorphic(direct_sum(ra, rb), direct_sum(rb, ra)) is not None
    left = direct_sum(direct_sum(ra, rb), rc)
    right = direct_sum(ra, direct_sum(rb, rc))
    assert are_isomorphic(left, right) is not None


@given(labels(), nonzero_d, st.integers(-4, 4))
def test_shift_rep(lab, d, s):
    rep = normal_form(lab, d)
    assert shift_rep(rep, 0) == rep
    assert shift_rep(shift_rep(rep, s), -s) == rep
    assert shift_rep(rep, s) == normal_form(lab.shifted(s), d)
    validate(shift_rep(rep, s))


def test_random_rep_deterministic():
    a = random_rep({0: 2, 1: 1}, {0: 1, 1: 2}, -1, seed=7)
    b = random_rep({0: 2, 1: 1}, {0: 1, 1: 2}, -1, seed=7)
    assert a == b
    assert random_base_change(a, 3) == random_base_change(b, 3)
    validate(a)


def test_identity_base_change_is_noop():
    rep = random_rep({0: 2}, {0: 2, -1: 1}, -1, seed=1)
    iso = Intertwiner(identity_map(rep.V), identity_map(rep.W))
    assert transport(rep, iso) == rep


@given(labels(), labels(), nonzero_d, st.integers(0, 10**6))
def test_random_base_change_witness(a, b, d, seed):
    rep = direct_sum(normal_form(a, d), normal_form(b, d))
    new, iso = random_base_change(rep, seed)
    validate(new)
    assert iso.is_invertible()
    assert is_morphism(rep, new, iso)


@given(labels(k_max=3), nonzero_d, st.integers(0, 10**6))
def test_are_isomorphic_witness(lab, d, seed):
    rep = normal_form(lab, d)
    new, _ = random_base_change(rep, seed)
    w = are_isomorphic(rep, new)
    assert w is not None and w.is_invertible() and is_morphism(rep, new, w)
    back = are_isomorphic(new, rep)
    assert back is not None and is_morphism(new, rep, back)
    assert are_isomorphic(rep, rep) is not None


def test_torsion_zero_vs_infinity_by_hand():
    # at d = -1 both have one V and one W vector, but the unique nonzero
    # arrow is beta in one and alpha in the other
    tz = shift_rep(normal_form(TorsionZero(1), -1), 1)
    ti = normal_form(TorsionInfinity(1), -1)
    assert are_isomorphic(tz, ti) is None
    assert find_isomorphism_linear(tz, ti) is None


def test_same_profile_non_isomorphic():
    # V = W = {0: 1} at d = 1: alpha = 1 versus alpha = 0
    a = from_bases(1, [0], [0], [(0, 0)], [])
    b = from_bases(1, [0], [0], [], [])
    assert are_isomorphic(a, b) is None
    assert find_isomorphism_linear(a, b) is None


def test_shifted_copy_not_isomorphic():
    rep = normal_form(TorsionZero(2), -2)
    assert are_isomorphic(rep, shift_rep(rep, 1)) is None


def test_are_isomorphic_d_mismatch():
    with pytest.raises(RepresentationError):
        are_isomorphic(zero_rep(-1), zero_rep(1))


@pytest.mark.parametrize("seed", range(12))
def test_isomorphism_methods_agree(seed):
    F = ScalarField.prime(3)
    a = random_rep({0: 1, 1: 1}, {0: 1, 1: 1}, 1, seed=seed, field=F, entry_range=(0, 2))
    b = random_rep({0: 1, 1: 1}, {0: 1, 1: 1}, 1, seed=seed + 100, field=F, entry_range=(0, 2))
    # the linear search is exhaustive over F_3 at these sizes
    assert (are_isomorphic(a, b) is None) == (find_isomorphism_linear(a, b) is None)
