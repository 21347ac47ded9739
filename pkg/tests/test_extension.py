import numpy as np
import pytest

from strata.decomposition import find_isomorphism, is_indecomposable, is_isomorphic
from strata.extension import AlgebraMap, NotAnAlgebraMap, SplitFails, build_split_extension, delta_decompose, verify_split_end
from strata.presentation import build_algebra
from strata.repcat import direct_sum, hom_basis, projective, simple
from strata.sampling import random_module

from conftest import EJ2, SIX


def test_structure_laws(ej2, six, six2):
    for e, dims in ((ej2, (5, 4, 1)), (six, (None, None, 6)), (six2, (None, None, 3))):
        r = e.verify_laws()
        assert r["ok"], r
        assert e.gamma.dim == e.lam.dim + e.ideal_dim
        if dims[0]:
            assert (e.gamma.dim, e.lam.dim) == dims[:2]
        assert e.ideal_dim == dims[2]


def test_ideal_labels(ej2):
    assert ej2.ideal_labels() == ["b"]


def test_split_fails_with_witness():
    text = SIX.replace("e*b - l*g;", "e*b - l*g, e*a - e*b*s;")
    with pytest.raises(SplitFails) as info:
        build_split_extension(text, "b,g")
    assert info.value.witness is not None


def test_unknown_arrow_in_ideal():
    with pytest.raises(Exception):
        build_split_extension(EJ2, "zz")


def test_algebra_map_check():
    A = build_algebra(EJ2)
    F = A.field
    ident = [(i,) for i in range(3)]
    # swapping two vertices while fixing the arrows is not multiplicative
    with pytest.raises(NotAnAlgebraMap):
        AlgebraMap(A, A, [(1,), (0,), (2,)], [A.vector({A.arrow_basis[k]: F(1)}) for k in range(2)])
    AlgebraMap(A, A, ident, [A.vector({A.arrow_basis[k]: F(1)}) for k in range(2)])


@pytest.mark.parametrize("name", ["ej2", "six", "six2"])
def test_G_of_projectives(name, request):
    e = request.getfixturevalue(name)
    for i in range(e.lam.n_vertices):
        GP = e.G(projective(e.lam, i))
        assert is_isomorphic(GP, projective(e.gamma, i))
        assert is_isomorphic(e.F(projective(e.gamma, i)), projective(e.lam, i))


@pytest.mark.parametrize("name", ["ej2", "six", "six2"])
def test_G_restricted_along_sigma(name, request, rng):
    e = request.getfixturevalue(name)
    for _ in range(8):
        M = random_module(e.lam, rng, 3)
        res = e.sigma.restrict(e.G(M))
        assert is_isomorphic(res, direct_sum(M, e.ideal_tensor_lambda(M))[0])


@pytest.mark.parametrize("name", ["ej2", "six", "six2"])
def test_F_of_pullback(name, request, rng):
    e = request.getfixturevalue(name)
    for _ in range(8):
        N = random_module(e.lam, rng, 3)
        assert is_isomorphic(e.F(e.restrict_pi(N)), N)


def test_FG_identity_with_witness(six, rng):
    for _ in range(10):
        M = random_module(six.lam, rng, 3)
        w = find_isomorphism(six.F(six.G(M)), M)
        assert w is not None and w.is_iso()


def test_G_is_a_functor(six, rng):
    for _ in range(5):
        M, N, K = (random_module(six.lam, rng, 2) for _ in range(3))
        for f in hom_basis(M, N):
            for g in hom_basis(N, K):
                lhs = six.G_morphism(g @ f)
                rhs = six.G_morphism(g) @ six.G_morphism(f)
                assert lhs == rhs


def test_delta_decomposition(six2, rng):
    for _ in range(10):
        M, N = random_module(six2.lam, rng, 3), random_module(six2.lam, rng, 3)
        assert delta_decompose(six2, M, N)["ok"]


def test_split_endomorphisms(ej2, six, rng):
    for e in (ej2, six):
        for _ in range(4):
            M = random_module(e.lam, rng, 2)
            r = verify_split_end(e, M)
            assert r["ok"], r


def test_G_preserves_indecomposability(ej2, rng):
    for _ in range(20):
        M = random_module(ej2.lam, rng, 3)
        assert is_indecomposable(M) == is_indecomposable(ej2.G(M))


def test_bimodule_dimensions(six):
    B = six.bimodule("I_GG")
    assert B.dim == six.ideal_dim
    assert six.ideal_right_lambda().dim == six.ideal_dim
