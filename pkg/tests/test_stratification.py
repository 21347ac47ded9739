import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strata.decomposition import is_indecomposable, is_isomorphic
from strata.linalg import Field
from strata.presentation import build_algebra
from strata.repcat import Morphism, composition_multiplicities, projective, simple, top
from strata.sampling import random_extension, random_filtered
from strata.stratification import (
    ExtViolation,
    HomViolation,
    HypothesisFailed,
    LinearOrder,
    NotFiltered,
    NotIndecomposable,
    admissible_vs_compat,
    build_epss,
    check_ss,
    compat_lambda_check,
    epss_lift_condition,
    gequiv_check,
    is_filtered,
    is_quasi_hereditary,
    is_ss_algebra,
    lift_G,
    standard_modules,
    theta_filtration,
)

from conftest import EJ2, KRONECKER, module, random_monomial_text


def test_linear_order():
    o = LinearOrder.from_labels([3, 1, 2])
    assert o.sequence == (2, 0, 1) and o.labels() == [3, 1, 2]
    assert o.lt(2, 0) and o.gt(1, 0) and o.ge(1, 1) and o.le(2, 2)
    assert o.greater(0) == [1] and o.sorted([0, 1, 2]) == [2, 0, 1]
    assert o.reversed() == LinearOrder([1, 0, 2])
    with pytest.raises(ValueError):
        LinearOrder([0, 0, 1])


def test_simples_of_ej2_form_a_system(ej2, ej2_delta):
    ss = check_ss(ej2_delta)
    assert ss.valid
    # Lambda has the single arrow a: 1 -> 2
    assert ss.ext1 == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]


def test_reversed_order_breaks_the_system(ej2_delta):
    ss = check_ss(ej2_delta, [2, 1, 0])
    assert not ss.valid
    assert {"axiom": "ext1", "i": 1, "j": 2, "dim": 1} in ss.report().witnesses
    with pytest.raises(ExtViolation):
        check_ss(ej2_delta, [2, 1, 0], strict=True)


def test_six_vertex_theta_hom_violation(six, six_thetas):
    # Theta(2) -> S(3) = soc Theta(1), written down by hand
    T1, T2 = six_thetas[0], six_thetas[1]
    F = six.field
    mats = [F.zeros(T1.dims[i], T2.dims[i]) for i in range(6)]
    mats[2] = F.array([[1]])
    Morphism(T2, T1, mats, check=True)
    ss = check_ss(six_thetas)
    assert ss.hom[1][0] == 1 and ss.ext1[0][1] == 1
    assert ss.report().witnesses == [{"axiom": "hom", "i": 2, "j": 1, "dim": 1}]
    with pytest.raises(HomViolation):
        check_ss(six_thetas, strict=True)
    with pytest.raises(HypothesisFailed):
        build_epss(ss)


def test_six_vertex_theta_under_every_order(six_thetas):
    import itertools

    assert not any(check_ss(six_thetas, list(p)).valid for p in itertools.permutations(range(4)))


def test_decomposable_member_is_rejected():
    A = build_algebra(KRONECKER)
    D = module(A, [1, 1])
    ss = check_ss([simple(A, 1), D])
    assert isinstance(ss.violations[0], NotIndecomposable)


def test_filtration_certificates(ej2, ej2_delta, rng):
    for _ in range(20):
        length = int(rng.integers(1, 5))
        M = random_filtered(rng, ej2_delta, length)
        cert = theta_filtration(M, ej2_delta)
        assert cert.verify()
        # over simples the multiplicities are the dimension vector
        assert cert.multiplicities == list(M.dims) and cert.length == length


@pytest.mark.parametrize("name", ["six2", "ej2"])
def test_multiplicities_do_not_depend_on_search(name, request, rng):
    e = request.getfixturevalue(name)
    thetas = request.getfixturevalue("six2_thetas") if name == "six2" else [simple(e.lam, i) for i in range(3)]
    for _ in range(15):
        length = int(rng.integers(1, 5))
        M = random_filtered(rng, thetas, length)
        a = theta_filtration(M, thetas)
        b = theta_filtration(M, thetas, reverse=True)
        assert a.verify() and b.verify()
        assert a.multiplicities == b.multiplicities
        assert a.length == length


def test_theta_length_is_additive(six2, six2_thetas, rng):
    for _ in range(10):
        X = random_filtered(rng, six2_thetas, int(rng.integers(1, 3)))
        Y = random_filtered(rng, six2_thetas, int(rng.integers(1, 3)))
        E = random_extension(rng, X, Y)
        mx, my, me = (theta_filtration(Z, six2_thetas).multiplicities for Z in (X, Y, E))
        assert me == [a + b for a, b in zip(mx, my)]


def test_not_filtered_is_exhaustive_over_small_fields():
    A = build_algebra(EJ2, field=Field(2))
    thetas = [simple(A, 0), simple(A, 2)]
    with pytest.raises(NotFiltered) as info:
        theta_filtration(projective(A, 0), thetas)
    assert info.value.exhaustive


def test_six2_tensor_not_filtered(six2, six2_thetas):
    N = six2.ideal_tensor_lambda(six2_thetas[1])
    assert not is_filtered(N, six2_thetas)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_standard_modules_form_a_system(seed):
    rng = np.random.default_rng(seed)
    A = build_algebra(random_monomial_text(rng))
    order = [int(x) for x in rng.permutation(A.n_vertices)]
    o = LinearOrder(order)
    D = standard_modules(A, order)
    for i, Di in enumerate(D):
        T, _ = top(Di)
        assert T.dims == simple(A, i).dims
        mult = composition_multiplicities(Di)
        assert all(mult[A.vertices[j]] == 0 for j in o.greater(i))
    assert check_ss(D, order).valid


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_epss_of_standardly_stratified_algebras(seed):
    rng = np.random.default_rng(seed)
    A = build_algebra(random_monomial_text(rng))
    order = [int(x) for x in rng.permutation(A.n_vertices)]
    D = standard_modules(A, order)
    ep = build_epss(check_ss(D, order))
    assert ep.verify()["ok"]
    if is_ss_algebra(A, order):
        assert all(is_isomorphic(Q, projective(A, i)) for i, Q in enumerate(ep.Q))


def test_quasi_hereditary_examples():
    # Kronecker and ej2 are hereditary or directed, hence quasi-hereditary for the natural order
    for text in (KRONECKER, EJ2):
        A = build_algebra(text)
        assert is_ss_algebra(A) and is_quasi_hereditary(A)
    L = build_algebra("algebra l over Q { vertices: 1; arrows: x: 1->1; relations: x*x; }")
    assert is_ss_algebra(L) and not is_quasi_hereditary(L)


def test_single_module_system():
    A = build_algebra(KRONECKER)
    ss = check_ss([projective(A, 0)])
    assert ss.valid and ss.t == 1
    ep = build_epss(ss)
    assert ep.verify()["ok"] and ep.K[0].dim == 0


def test_six_vertex_epss_is_not_indecomposable(six_thetas):
    ep = build_epss(check_ss(six_thetas), require_valid=False)
    v = ep.verify()
    assert ep.Q[0].dims == (1, 1, 2, 1, 1, 0)
    assert not is_indecomposable(ep.Q[0])
    assert v["Q_indecomposable"] == [False, True, True, True]


def test_compat_lambda_reports(ej2, ej2_delta, six, six_thetas):
    r = compat_lambda_check(ej2, check_ss(ej2_delta))
    assert r.status == "pass" and r.data["C1_hom"][0][2] == 1
    r = compat_lambda_check(ej2, check_ss(ej2_delta, [2, 0, 1]))
    assert r.status == "fail" and r.witnesses[0]["condition"] == "C1"
    r = compat_lambda_check(six, check_ss(six_thetas))
    assert r.status == "hypothesis_failed" and r.data["compatible"]


def test_lift_biconditional(ej2, ej2_delta):
    for order in ([0, 1, 2], [2, 0, 1], [2, 1, 0], [1, 0, 2]):
        r = lift_G(ej2, ej2_delta, order)
        assert r.data["biconditional_holds"], order


def test_admissible_vs_compat(ej2):
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        r = admissible_vs_compat(ej2, order)
        assert r.status == "pass", (order, r.data)


def test_epss_lift_condition(ej2, ej2_delta, six2, six2_thetas):
    for e, th in ((ej2, ej2_delta), (six2, six2_thetas)):
        r = epss_lift_condition(e, build_epss(check_ss(th)))
        assert r.status == "pass" and r.data["condition_holds"] and r.data["gamma_is_epss"]


def test_gequiv_gate(six, six_thetas, six2, six2_thetas):
    r = gequiv_check(six, build_epss(check_ss(six_thetas), require_valid=False), samples=5)
    assert r.status == "hypothesis_failed" and r.data["samples"] == 0
    r = gequiv_check(six2, build_epss(check_ss(six2_thetas)), samples=10, seed=1)
    assert r.status == "pass" and r.data["samples"] == 10
