import numpy as np
import pytest

from strata.linalg import Field
from strata.presentation import build_algebra
from strata.repcat import (
    AlgebraMismatch,
    ModuleError,
    RelationViolated,
    Representation,
    cokernel,
    composition_multiplicities,
    direct_sum,
    dual,
    hom_basis,
    hom_dim,
    identity,
    image,
    injective,
    is_projective,
    kernel,
    projective,
    projective_cover,
    radical,
    simple,
    top,
    trace_submodule,
)
from strata.sampling import random_module

from conftest import EJ2, KRONECKER, SIX, module


@pytest.fixture(scope="module")
def A():
    return build_algebra(EJ2)


def test_relations_are_enforced(A):
    # a*b = 0 in the algebra, so a representation with both maps nonzero fails
    with pytest.raises(RelationViolated):
        module(A, [1, 1, 1], {"a": [[1]], "b": [[1]]})
    with pytest.raises(ModuleError):
        module(A, [1, 1, 0], {"zz": [[1]]})


def test_projectives_and_injectives(A):
    # P(3) = span{e3, b}; I(1) = span{e1, b}
    assert projective(A, 2).dims == (1, 0, 1)
    assert injective(A, 0).dims == (1, 0, 1)
    assert projective(A, 0).dims == (1, 1, 0)
    assert sum(projective(A, i).dim for i in range(3)) == A.dim
    for i in range(3):
        assert is_projective(projective(A, i))
        assert hom_dim(projective(A, i), simple(A, i)) == 1


def test_hom_from_projective_is_vertex_dimension(A, rng):
    for _ in range(20):
        M = random_module(A, rng, max_tops=3)
        for i in range(3):
            assert hom_dim(projective(A, i), M) == M.dims[i]
            assert hom_dim(M, injective(A, i)) == M.dims[i]


def test_hom_basis_consists_of_morphisms(rng):
    A = build_algebra(SIX)
    for _ in range(10):
        M, N = random_module(A, rng, 3), random_module(A, rng, 3)
        for f in hom_basis(M, N):
            f.validate()


def test_hom_algebra_mismatch(A):
    B = build_algebra(KRONECKER)
    with pytest.raises(AlgebraMismatch):
        hom_basis(simple(A, 0), simple(B, 0))


def test_kernel_image_cokernel_dimensions(rng):
    A = build_algebra(SIX)
    for _ in range(15):
        M, N = random_module(A, rng, 3), random_module(A, rng, 3)
        H = hom_basis(M, N)
        if not len(H):
            continue
        f = H.combine(rng.integers(-2, 3, size=len(H)).tolist())
        K, _ = kernel(f)
        Im = image(f)[0]
        C, _ = cokernel(f)
        assert [k + i for k, i in zip(K.dims, Im.dims)] == list(M.dims)
        assert [c + i for c, i in zip(C.dims, Im.dims)] == list(N.dims)


def test_radical_top_and_cover(rng):
    A = build_algebra(SIX)
    for _ in range(15):
        M = random_module(A, rng, 3)
        R, _ = radical(M)
        T, _ = top(M)
        assert [r + t for r, t in zip(R.dims, T.dims)] == list(M.dims)
        P, eps = projective_cover(M)
        assert eps.is_surjective()
        assert sorted(P.tops) == sorted(i for i in range(6) for _ in range(T.dims[i]))


def test_direct_sum_and_composition_factors(A):
    S = [simple(A, i) for i in range(3)]
    D, inc, proj = direct_sum(S[0], projective(A, 2))
    assert D.dims == (2, 0, 1)
    assert composition_multiplicities(D) == {"1": 2, "2": 0, "3": 1}
    for i, p in zip(inc, proj):
        assert (p @ i).is_iso()


def test_trace_of_projective_is_generated_part(A):
    P3 = projective(A, 2)
    Tr, _ = trace_submodule(P3, projective(A, 0))
    assert Tr.dim == 0
    Tr, _ = trace_submodule(simple(A, 0), injective(A, 0))
    assert Tr.dims == (1, 0, 0)


def test_dual_is_involutive(rng):
    A = build_algebra(SIX)
    for _ in range(5):
        M = random_module(A, rng, 3)
        DD = dual(dual(M))
        assert DD.algebra is A and DD.dims == M.dims
        assert all(np.array_equal(x, y) for x, y in zip(DD.maps, M.maps))


def test_identity_is_iso(A):
    M = projective(A, 0)
    assert identity(M).is_iso() and hom_dim(M, M) == 1


def test_from_labels_accepts_int_keys(A):
    M = Representation.from_labels(A, {1: 1, 2: 1}, {"a": [[1]]})
    assert M.dims == (1, 1, 0)


def test_finite_field_modules():
    A = build_algebra(KRONECKER, field=Field(2))
    M = module(A, [1, 1], {"x": [[1]], "y": [[1]]})
    assert hom_dim(M, M) == 1
