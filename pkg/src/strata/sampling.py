"""Seeded random modules for property tests and sampled checks."""

from __future__ import annotations

import numpy as np

from .homology import ext, extension_from_cocycle
from .presentation import BoundQuiverAlgebra
from .repcat import Representation, cokernel, map_from_projectives, projective_sum


def random_module(A: BoundQuiverAlgebra, rng: np.random.Generator, max_tops: int = 2, max_relations: int = 2,
                  max_dim: int | None = None) -> Representation:
    """Cokernel of a random map between small sums of projectives.

    Coefficients are small integers, so the modules are defined over any
    field.  ``max_dim`` rejects and redraws modules that are too large."""
    F = A.field
    n = A.n_vertices
    for _ in range(50):
        k0 = int(rng.integers(1, max_tops + 1))
        tops0 = sorted(int(x) for x in rng.integers(0, n, size=k0))
        P0 = projective_sum(A, tops0)
        k1 = int(rng.integers(0, max_relations + 1))
        tops1 = sorted(int(x) for x in rng.integers(0, n, size=k1))
        tops1 = [j for j in tops1 if P0.dims[j] > 0]
        P1 = projective_sum(A, tops1)
        images = []
        for j in tops1:
            v = rng.integers(-2, 3, size=P0.dims[j])
            images.append(F.array(v.tolist()))
        f = map_from_projectives(P1, P0, images)
        M, _ = cokernel(f)
        if M.dim == 0:
            continue
        if max_dim is None or M.dim <= max_dim:
            return M
    return M


def random_combination(rng, F, n):
    return F.array(rng.integers(-2, 3, size=n).tolist()) if n else F.zeros(0)


def random_extension(rng, bottom: Representation, top: Representation) -> Representation:
    """Middle term of a random extension ``0 -> bottom -> E -> top -> 0``."""
    F = bottom.field
    X = ext(1, top, bottom)
    if X.dim == 0:
        coc = F.zeros(X.cocycles.shape[0])
    else:
        coc = F.dot(X.cocycles, random_combination(rng, F, X.dim))
    return extension_from_cocycle(coc, top, bottom, X.resolution).B


def random_filtered(rng, thetas, length: int) -> Representation:
    """A random iterated extension of modules from ``thetas``; it has a
    filtration with ``length`` factors from the family."""
    k = int(rng.integers(0, len(thetas)))
    M = thetas[k]
    for _ in range(length - 1):
        k = int(rng.integers(0, len(thetas)))
        if rng.integers(0, 2):
            M = random_extension(rng, M, thetas[k])
        else:
            M = random_extension(rng, thetas[k], M)
    return M
