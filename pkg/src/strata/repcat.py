"""Finite dimensional left modules as quiver representations.

A module over ``A = kQ/I`` is a vector space per vertex and a matrix per
arrow; the matrix of an arrow ``a: i -> j`` has shape ``dims[j] x dims[i]``.
A path acts by the product of its arrow matrices in word order, so
``a*b`` acts as ``M_a @ M_b``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from . import linalg as la
from .presentation import BoundQuiverAlgebra


class ModuleError(ValueError):
    pass


class RelationViolated(ModuleError):
    pass


class NotASubmodule(ModuleError):
    pass


class NotAMorphism(ModuleError):
    pass


class AlgebraMismatch(ModuleError):
    pass


class ZeroModule(ModuleError):
    pass


class Representation:
    """A module given by vertex dimensions and arrow matrices."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims, maps, name: str | None = None, check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n_vertices:
            raise ModuleError(f"expected {algebra.n_vertices} dimensions, got {len(self.dims)}")
        self.maps = tuple(maps)
        if len(self.maps) != len(algebra.arrows):
            raise ModuleError(f"expected {len(algebra.arrows)} arrow matrices, got {len(self.maps)}")
        self.name = name
        self._act = {}
        if check:
            self.validate()

    @classmethod
    def from_labels(cls, algebra, dims: dict, maps: dict, name=None):
        """Build from ``{vertex label: dim}`` and ``{arrow label: rows}``;
        missing vertices have dimension 0 and missing arrows act by zero."""
        F = algebra.field
        dims = {str(k): v for k, v in dims.items()}
        d = [int(dims.get(str(v), 0)) for v in algebra.vertices]
        mats = []
        for label, s, t in algebra.arrows:
            if label in maps:
                m = F.array(maps[label]) if d[s] and d[t] else F.zeros(d[t], d[s])
                m = m.reshape(d[t], d[s]) if m.size == d[t] * d[s] else m
            else:
                m = F.zeros(d[t], d[s])
            mats.append(m)
        unknown = set(maps) - {a[0] for a in algebra.arrows}
        if unknown:
            raise ModuleError(f"unknown arrows {sorted(unknown)}")
        return cls(algebra, d, mats, name=name)

    def validate(self):
        A = self.algebra
        for k, (label, s, t) in enumerate(A.arrows):
            if self.maps[k].shape != (self.dims[t], self.dims[s]):
                raise ModuleError(
                    f"arrow {label} needs a {self.dims[t]}x{self.dims[s]} matrix, got {self.maps[k].shape}"
                )
        F = self.field
        for r in A.presentation.relations:
            total = None
            for c, w in r:
                m = F.norm(F(c) * self.word_matrix(tuple(A.arrow_index(x) for x in w)))
                total = m if total is None else F.norm(total + m)
            if total is not None and not la.is_zero(total):
                rel = " + ".join(f"{c}*{'*'.join(w)}" for c, w in r)
                raise RelationViolated(f"relation {rel} does not act by zero")

    # actions
    def word_matrix(self, word) -> np.ndarray:
        A = self.algebra
        F = self.field
        if not word:
            raise ValueError("empty word")
        out = self.maps[word[0]]
        for a in word[1:]:
            out = F.dot(out, self.maps[a])
        return out

    def act(self, b: int) -> np.ndarray:
        """Matrix of basis element ``b`` from its source to its target space."""
        hit = self._act.get(b)
        if hit is None:
            path = self.algebra.basis[b]
            if path.word:
                hit = self.word_matrix(path.word)
            else:
                hit = self.field.eye(self.dims[path.source])
            self._act[b] = hit
        return hit

    def element_block(self, x: np.ndarray, s: int, t: int) -> np.ndarray:
        """Matrix of the algebra element ``x`` from vertex ``s`` to ``t``."""
        F = self.field
        out = F.zeros(self.dims[t], self.dims[s])
        for b in self.algebra.blocks[(t, s)]:
            if x[b] != 0:
                out = out + x[b] * self.act(b)
        return F.norm(out)

    def element_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``x`` on the total space (vertex blocks in order)."""
        F = self.field
        off = self.offsets
        out = F.zeros(self.dim, self.dim)
        n = self.algebra.n_vertices
        for t in range(n):
            for s in range(n):
                if self.dims[s] and self.dims[t]:
                    out[off[t]:off[t + 1], off[s]:off[s + 1]] = self.element_block(x, s, t)
        return out

    # shape
    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self):
        out = [0]
        for d in self.dims:
            out.append(out[-1] + d)
        return out

    def dim_vector(self) -> tuple:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def labelled_dims(self) -> dict:
        return {v: d for v, d in zip(self.algebra.vertices, self.dims)}

    def total_arrow_matrix(self, a: int) -> np.ndarray:
        F = self.field
        _, s, t = self.algebra.arrows[a]
        off = self.offsets
        out = F.zeros(self.dim, self.dim)
        out[off[t]:off[t + 1], off[s]:off[s + 1]] = self.maps[a]
        return out

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Representation{label} dims={self.dims}>"

    def to_data(self) -> dict:
        F = self.field
        return {
            "dims": self.labelled_dims(),
            "maps": {
                label: [[F.to_json(x) for x in row] for row in self.maps[k].tolist()]
                for k, (label, _, _) in enumerate(self.algebra.arrows)
            },
        }


class Morphism:
    """A module homomorphism given by one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, mats, check: bool = False):
        self.source = source
        self.target = target
        self.field = source.field
        self.mats = tuple(mats)
        if check:
            self.validate()

    def validate(self):
        M, N = self.source, self.target
        F = self.field
        for i, m in enumerate(self.mats):
            if m.shape != (N.dims[i], M.dims[i]):
                raise NotAMorphism(f"vertex {i}: expected shape {(N.dims[i], M.dims[i])}, got {m.shape}")
        for k, (label, s, t) in enumerate(M.algebra.arrows):
            lhs = F.dot(self.mats[t], M.maps[k])
            rhs = F.dot(N.maps[k], self.mats[s])
            if np.any(lhs != rhs):
                raise NotAMorphism(f"does not commute with arrow {label}")
        return self

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self o other``."""
        F = self.field
        return Morphism(other.source, self.target, [F.dot(g, f) for g, f in zip(self.mats, other.mats)])

    def __add__(self, other):
        F = self.field
        return Morphism(self.source, self.target, [F.norm(a + b) for a, b in zip(self.mats, other.mats)])

    def __sub__(self, other):
        F = self.field
        return Morphism(self.source, self.target, [F.norm(a - b) for a, b in zip(self.mats, other.mats)])

    def __rmul__(self, c):
        F = self.field
        c = F(c)
        return Morphism(self.source, self.target, [F.norm(c * a) for a in self.mats])

    def __neg__(self):
        return (-1) * self

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for m in self.mats)

    def ranks(self):
        return tuple(la.rank(m, self.field) for m in self.mats)

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def vec(self) -> np.ndarray:
        parts = [m.reshape(-1) for m in self.mats]
        if not parts:
            return self.field.zeros(0)
        return np.concatenate(parts) if any(p.size for p in parts) else self.field.zeros(0)

    def total_matrix(self) -> np.ndarray:
        F = self.field
        so, to = self.source.offsets, self.target.offsets
        out = F.zeros(self.target.dim, self.source.dim)
        for i, m in enumerate(self.mats):
            out[to[i]:to[i + 1], so[i]:so[i + 1]] = m
        return out

    def inverse(self) -> "Morphism":
        F = self.field
        return Morphism(self.target, self.source, [la.inverse(m, F) for m in self.mats])

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and all(a.shape == b.shape and not np.any(a != b) for a, b in zip(self.mats, other.mats))
        )

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims}>"


def identity(M: Representation) -> Morphism:
    F = M.field
    return Morphism(M, M, [F.eye(d) for d in M.dims])


def zero_morphism(M: Representation, N: Representation) -> Morphism:
    F = M.field
    return Morphism(M, N, [F.zeros(N.dims[i], M.dims[i]) for i in range(len(M.dims))])


def zero_module(A: BoundQuiverAlgebra) -> Representation:
    F = A.field
    return Representation(A, [0] * A.n_vertices, [F.zeros(0, 0) for _ in A.arrows], name="0", check=False)


def direct_sum(*mods: Representation):
    """Returns ``(S, inclusions, projections)``; vertex spaces of ``S`` are
    the vertex spaces of the summands stacked in order."""
    if not mods:
        raise ValueError("empty direct sum")
    A = mods[0].algebra
    F = A.field
    n = A.n_vertices
    dims = [sum(m.dims[i] for m in mods) for i in range(n)]
    maps = []
    for k, (_, s, t) in enumerate(A.arrows):
        big = F.zeros(dims[t], dims[s])
        r = c = 0
        for m in mods:
            big[r:r + m.dims[t], c:c + m.dims[s]] = m.maps[k]
            r += m.dims[t]
            c += m.dims[s]
        maps.append(big)
    S = Representation(A, dims, maps, check=False)
    incs, projs = [], []
    pos = [0] * n
    for m in mods:
        inc, proj = [], []
        for i in range(n):
            e = F.zeros(dims[i], m.dims[i])
            for k in range(m.dims[i]):
                e[pos[i] + k, k] = F(1)
            inc.append(e)
            proj.append(e.T.copy())
            pos[i] += m.dims[i]
        incs.append(Morphism(m, S, inc))
        projs.append(Morphism(S, m, proj))
    return S, incs, projs


def power(M: Representation, d: int) -> Representation:
    if d == 0:
        return zero_module(M.algebra)
    return direct_sum(*([M] * d))[0]


# ---------------------------------------------------------------- Hom


class HomSpace(Sequence):
    """A basis of ``Hom(M, N)``.

    The basis comes from an exact nullspace computation with the identity at
    a set of free coordinates, so the coordinates of any homomorphism are
    read off from those positions of its flattened matrices."""

    def __init__(self, source, target, K, free):
        self.source = source
        self.target = target
        self.K = K
        self.free = free
        self._cache = {}

    def __len__(self):
        return self.K.shape[1]

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[j] for j in range(*k.indices(len(self)))]
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError(k)
        hit = self._cache.get(k)
        if hit is None:
            hit = self.from_vec(self.K[:, k])
            self._cache[k] = hit
        return hit

    def from_vec(self, v) -> Morphism:
        M, N = self.source, self.target
        mats = []
        pos = 0
        for i in range(len(M.dims)):
            size = N.dims[i] * M.dims[i]
            mats.append(v[pos:pos + size].reshape(N.dims[i], M.dims[i]).copy())
            pos += size
        return Morphism(M, N, mats)

    def combine(self, coeffs) -> Morphism:
        F = self.source.field
        if len(self) == 0:
            return zero_morphism(self.source, self.target)
        c = np.array([F(x) for x in coeffs], dtype=object)
        return self.from_vec(F.dot(self.K, c))

    def coords(self, f: Morphism) -> np.ndarray:
        v = f.vec()
        return v[self.free] if len(self.free) else self.source.field.zeros(0)

    @property
    def dim(self) -> int:
        return len(self)


def hom_equations(M: Representation, N: Representation) -> np.ndarray:
    """Matrix whose nullspace is ``Hom(M, N)`` in flattened coordinates."""
    A = M.algebra
    F = M.field
    n = A.n_vertices
    off = [0]
    for i in range(n):
        off.append(off[-1] + N.dims[i] * M.dims[i])
    rows = []
    for k, (_, s, t) in enumerate(A.arrows):
        r = N.dims[t] * M.dims[s]
        if r == 0:
            continue
        E = F.zeros(r, off[-1])
        E[:, off[t]:off[t + 1]] += F.kron(F.eye(N.dims[t]), M.maps[k].T)
        E[:, off[s]:off[s + 1]] -= F.kron(N.maps[k], F.eye(M.dims[s]))
        rows.append(F.norm(E))
    if not rows:
        return F.zeros(0, off[-1])
    return np.vstack(rows)


def hom_basis(M: Representation, N: Representation) -> HomSpace:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    E = hom_equations(M, N)
    K, free = la.nullspace_free(E, M.field)
    return HomSpace(M, N, K, free)


def hom_dim(M: Representation, N: Representation) -> int:
    E = hom_equations(M, N)
    return E.shape[1] - la.rank(E, M.field)


# ---------------------------------------------------------------- sub and quotient


def submodule(M: Representation, spans, check: bool = True):
    """Submodule spanned vertexwise by the columns of ``spans[i]``.

    Returns ``(U, inclusion)``; the inclusion matrices are canonical bases of
    the given spans."""
    F = M.field
    bases = [la.canonical_basis(s, F) for s in spans]
    maps = []
    for k, (label, s, t) in enumerate(M.algebra.arrows):
        Bs, _ = bases[s]
        Bt, rows_t = bases[t]
        img = F.dot(M.maps[k], Bs)
        X = img[rows_t] if rows_t else F.zeros(0, Bs.shape[1])
        if check and not la.is_zero(F.norm(F.dot(Bt, X) - img)):
            raise NotASubmodule(f"not closed under arrow {label}")
        maps.append(X)
    U = Representation(M.algebra, [b.shape[1] for b, _ in bases], maps, check=False)
    return U, Morphism(U, M, [b for b, _ in bases])


def quotient(M: Representation, spans):
    """Quotient of ``M`` by the submodule spanned by ``spans[i]``.

    Returns ``(C, projection)``.  The spans must form a submodule."""
    F = M.field
    qs = [la.quotient_map(s, M.dims[i], F) for i, s in enumerate(spans)]
    maps = []
    for k, (_, s, t) in enumerate(M.algebra.arrows):
        maps.append(F.matmul(qs[t][0], M.maps[k], qs[s][1]))
    C = Representation(M.algebra, [q.shape[0] for q, _ in qs], maps, check=False)
    proj = Morphism(M, C, [q for q, _ in qs])
    proj.sections = [s for _, s in qs]
    return C, proj


def kernel(f: Morphism):
    """Returns ``(K, inclusion)``."""
    F = f.field
    spans = [la.nullspace(m, F) for m in f.mats]
    return submodule(f.source, spans, check=False)


def image(f: Morphism):
    """Returns ``(Im, inclusion, corestriction)``."""
    F = f.field
    U, inc = submodule(f.target, list(f.mats), check=False)
    cores = []
    for i, m in enumerate(f.mats):
        rows = la.canonical_basis(m, F)[1]
        cores.append(m[rows] if rows else F.zeros(0, m.shape[1]))
    return U, inc, Morphism(f.source, U, cores)


def cokernel(f: Morphism):
    """Returns ``(C, projection)``."""
    return quotient(f.target, list(f.mats))


def radical(M: Representation):
    """Returns ``(rad M, inclusion)``; ``rad M`` is the sum of the images of
    the arrows."""
    F = M.field
    n = M.algebra.n_vertices
    cols = [[] for _ in range(n)]
    for k, (_, s, t) in enumerate(M.algebra.arrows):
        if M.dims[s] and M.dims[t]:
            cols[t].append(M.maps[k])
    spans = [np.hstack(c) if c else F.zeros(M.dims[i], 0) for i, c in enumerate(cols)]
    return submodule(M, spans, check=False)


def top(M: Representation):
    """Returns ``(top M, projection)``."""
    _, inc = radical(M)
    return quotient(M, list(inc.mats))


def trace_submodule(M: Representation, N: Representation):
    """The trace of ``M`` in ``N``: the sum of images of all maps M -> N.

    Returns ``(Tr, inclusion)``."""
    F = N.field
    H = hom_basis(M, N)
    spans = []
    for i in range(N.algebra.n_vertices):
        cols = [H[k].mats[i] for k in range(len(H)) if N.dims[i] and M.dims[i]]
        spans.append(np.hstack(cols) if cols else F.zeros(N.dims[i], 0))
    return submodule(N, spans, check=False)


def composition_multiplicities(M: Representation) -> dict:
    return M.labelled_dims()


# ---------------------------------------------------------------- special modules


def simple(A: BoundQuiverAlgebra, i: int) -> Representation:
    F = A.field
    dims = [1 if v == i else 0 for v in range(A.n_vertices)]
    maps = [F.zeros(dims[t], dims[s]) for _, s, t in A.arrows]
    return Representation(A, dims, maps, name=f"S({A.vertices[i]})", check=False)


def projective(A: BoundQuiverAlgebra, i: int) -> Representation:
    """``P(i) = A e_i``: at vertex j the paths from i to j."""
    F = A.field
    n = A.n_vertices
    blocks = [A.blocks[(j, i)] for j in range(n)]
    pos = [{b: k for k, b in enumerate(bl)} for bl in blocks]
    maps = []
    for a, (_, s, t) in enumerate(A.arrows):
        m = F.zeros(len(blocks[t]), len(blocks[s]))
        ab = A.arrow_basis[a]
        for col, b in enumerate(blocks[s]):
            for b2, c in A.mul(ab, b).items():
                m[pos[t][b2], col] = c
        maps.append(m)
    P = Representation(A, [len(b) for b in blocks], maps, name=f"P({A.vertices[i]})", check=False)
    P.path_blocks = blocks
    return P


def dual(M: Representation) -> Representation:
    """The dual module over the opposite algebra."""
    op = M.algebra.opposite()
    return Representation(op, M.dims, [m.T.copy() for m in M.maps], name=None, check=False)


def dual_morphism(f: Morphism, Mdual: Representation, Ndual: Representation) -> Morphism:
    """``D(f): D(N) -> D(M)`` for given duals of source and target."""
    return Morphism(Ndual, Mdual, [m.T.copy() for m in f.mats])


def injective(A: BoundQuiverAlgebra, i: int) -> Representation:
    I = dual(projective(A.opposite(), i))
    I.name = f"I({A.vertices[i]})"
    return I


def projective_sum(A: BoundQuiverAlgebra, tops) -> Representation:
    """Direct sum of ``P(i)`` for ``i`` in ``tops`` (in order).  The result
    records ``tops`` and the position of each summand's generator."""
    tops = list(tops)
    if not tops:
        P = zero_module(A)
    else:
        P = direct_sum(*[projective(A, i) for i in tops])[0]
    gens = []
    seen = [0] * A.n_vertices
    for i in tops:
        gens.append(seen[i])
        for j in range(A.n_vertices):
            seen[j] += len(A.blocks[(j, i)])
    P.tops = tops
    P.generators = gens
    return P


def map_from_projectives(P: Representation, N: Representation, images) -> Morphism:
    """The morphism from a projective sum sending the k-th generator to
    ``images[k]`` (a vector in ``N`` at vertex ``P.tops[k]``)."""
    A = P.algebra
    F = P.field
    n = A.n_vertices
    mats = [F.zeros(N.dims[j], P.dims[j]) for j in range(n)]
    pos = [0] * n
    for k, i in enumerate(P.tops):
        x = images[k]
        for j in range(n):
            for b in A.blocks[(j, i)]:
                if N.dims[j]:
                    mats[j][:, pos[j]] = F.dot(N.act(b), x.reshape(-1, 1))[:, 0]
                pos[j] += 1
    return Morphism(P, N, mats)


def evaluate_on_generators(f: Morphism) -> list:
    """Images of the generators of a projective sum under ``f``."""
    P = f.source
    return [f.mats[i][:, g].copy() for i, g in zip(P.tops, P.generators)]


def projective_cover(M: Representation):
    """Minimal projective cover ``(P, epsilon)`` built from a lift of a
    basis of the top."""
    F = M.field
    T, proj = top(M)
    tops, images = [], []
    for i in range(M.algebra.n_vertices):
        sec = proj.sections[i]
        for k in range(T.dims[i]):
            tops.append(i)
            images.append(sec[:, k].copy())
    P = projective_sum(M.algebra, tops)
    return P, map_from_projectives(P, M, images)


def is_projective(M: Representation) -> bool:
    P, _ = projective_cover(M)
    return P.dims == M.dims


def restrict(M: Representation, phi) -> Representation:
    """Restriction of scalars along an algebra map (see
    :class:`strata.extension.AlgebraMap`)."""
    return phi.restrict(M)
