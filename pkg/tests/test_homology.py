import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strata.decomposition import is_isomorphic
from strata.homology import (
    ext,
    ext_dim,
    extension_from_cocycle,
    injective_dimension_at_most,
    les_check,
    projective_dimension_at_most,
    projective_resolution,
    tor_dims,
    universal_extension,
)
from strata.presentation import build_algebra
from strata.repcat import direct_sum, dual, hom_dim, injective, projective, simple
from strata.sampling import random_extension, random_module

from conftest import EJ2, KRONECKER, SIX, module


@pytest.fixture(scope="module")
def six_alg():
    return build_algebra(SIX)


def test_resolutions_are_exact(six_alg, rng):
    for _ in range(10):
        M = random_module(six_alg, rng, 3)
        assert projective_resolution(M, 3).verify()
        assert projective_resolution(M, 3, pad={0: [1], 2: [0, 4]}).verify()


def test_ext_zero_is_hom(six_alg, rng):
    for _ in range(10):
        M, N = random_module(six_alg, rng, 3), random_module(six_alg, rng, 3)
        assert ext_dim(0, M, N) == hom_dim(M, N) == ext(0, M, N).dim


def test_ext_vanishes_on_projectives_and_injectives(six_alg, rng):
    for _ in range(10):
        M = random_module(six_alg, rng, 3)
        for i in range(6):
            for n in (1, 2):
                assert ext_dim(n, projective(six_alg, i), M) == 0
                assert ext_dim(n, M, injective(six_alg, i)) == 0


def test_kronecker_euler_form(rng):
    # hereditary: dim Hom - dim Ext1 = m1 n1 + m2 n2 - 2 m1 n2, and Ext2 = 0
    A = build_algebra(KRONECKER)
    for _ in range(20):
        M, N = random_module(A, rng, 3, 3), random_module(A, rng, 3, 3)
        (m1, m2), (n1, n2) = M.dims, N.dims
        assert hom_dim(M, N) - ext_dim(1, M, N) == m1 * n1 + m2 * n2 - 2 * m1 * n2
        assert ext_dim(2, M, N) == 0


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 2))
def test_padded_matches_minimal(seed, n):
    A = build_algebra(SIX)
    rng = np.random.default_rng(seed)
    M, N = random_module(A, rng, 3), random_module(A, rng, 3)
    pad = {k: sorted(set(int(x) for x in rng.integers(0, 6, size=2))) for k in range(n + 2)}
    assert ext_dim(n, M, N, projective_resolution(M, n + 1)) == ext_dim(n, M, N, projective_resolution(M, n + 1, pad))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 2))
def test_ext_matches_dual_over_opposite(seed, n):
    A = build_algebra(SIX)
    rng = np.random.default_rng(seed)
    M, N = random_module(A, rng, 3), random_module(A, rng, 3)
    assert ext_dim(n, M, N) == ext_dim(n, dual(N), dual(M))


def test_extension_from_cocycles(six_alg, rng):
    for _ in range(10):
        M, N = random_module(six_alg, rng, 2), random_module(six_alg, rng, 2)
        X = ext(1, M, N)
        for k in range(X.dim):
            ses = extension_from_cocycle(X.cocycles[:, k], M, N, X.resolution)
            assert ses.verify()
            # a nonzero class does not split
            assert not is_isomorphic(ses.B, direct_sum(M, N)[0])
        zero = extension_from_cocycle(X.cocycles[:, 0] * 0 if X.dim else
                                      np.zeros(sum(N.dims[i] for i in X.resolution.tops(1)), dtype=object),
                                      M, N, X.resolution)
        assert zero.verify() and is_isomorphic(zero.B, direct_sum(M, N)[0])


def test_universal_extension_kills_ext():
    A = build_algebra(KRONECKER)
    S1, S2 = simple(A, 0), simple(A, 1)
    ses = universal_extension(S1, S2)
    assert ses.verify() and ses.B.dims == (1, 2)
    assert ext_dim(1, ses.B, S2) == 0
    assert is_isomorphic(ses.B, projective(A, 0))


def test_long_exact_sequence(six_alg, rng):
    for _ in range(6):
        A_, C_ = random_module(six_alg, rng, 2), random_module(six_alg, rng, 2)
        X = ext(1, C_, A_)
        if not X.dim:
            continue
        ses = extension_from_cocycle(X.cocycles[:, 0], C_, A_, X.resolution)
        M = random_module(six_alg, rng, 2)
        r = les_check(M, ses, n_max=2)
        assert r["ok"], r


def test_dimension_bounds():
    A = build_algebra(EJ2)
    assert projective_dimension_at_most(projective(A, 0), 0)
    assert not projective_dimension_at_most(simple(A, 0), 0)
    assert projective_dimension_at_most(simple(A, 0), 2)
    assert injective_dimension_at_most(injective(A, 1), 0)
    assert not injective_dimension_at_most(simple(A, 0), 0)


def test_tor_zero_is_functor(ej2, rng):
    for _ in range(5):
        M = random_module(ej2.gamma, rng, 3)
        assert tor_dims(ej2.functor_F, M, 1)[0] == ej2.F(M).dim


def test_random_extension_is_extension(six_alg, rng):
    M, N = simple(six_alg, 0), simple(six_alg, 2)
    E = random_extension(rng, N, M)
    assert E.dims == tuple(a + b for a, b in zip(M.dims, N.dims))
