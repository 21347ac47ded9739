"""Projective resolutions, Ext, Tor, extensions and long exact sequences.

``Ext^n(M, N)`` is the cohomology of ``Hom(P_*, N)`` for a minimal
projective resolution ``P_*`` of ``M``.  Since ``Hom(P(i), N) = N_i`` a
cochain on ``P_n = P(i_1) + ... + P(i_r)`` is stored as the concatenation of
the images of the generators ("evaluation coordinates").
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .repcat import (
    Morphism,
    Representation,
    cokernel,
    direct_sum,
    dual,
    evaluate_on_generators,
    kernel,
    map_from_projectives,
    power,
    projective_cover,
    projective_sum,
)


@dataclass
class ProjResolution:
    """``... -> P_1 -> P_0 -> M -> 0``.

    ``modules[k]`` is ``P_k`` (a projective sum with ``tops``),
    ``differentials[k]`` is ``d_k: P_k -> P_{k-1}`` for ``k >= 1``
    (``differentials[0]`` is None) and ``augmentation`` is ``P_0 -> M``.
    ``syzygies[k]`` is the inclusion of ``Omega^k M`` into ``P_{k-1}``."""

    module: Representation
    modules: list
    differentials: list
    augmentation: Morphism
    syzygies: list

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def tops(self, k):
        return self.modules[k].tops

    def verify(self) -> bool:
        """Exactness at every computed term."""
        F = self.module.field
        if not self.augmentation.is_surjective():
            return False
        maps = [self.augmentation] + self.differentials[1:]
        for k in range(1, len(maps)):
            if not (maps[k - 1] @ maps[k]).is_zero():
                return False
            ker = [m.shape[1] - la.rank(m, F) for m in maps[k - 1].mats]
            img = [la.rank(m, F) for m in maps[k].mats]
            if ker != img:
                return False
        return True


def projective_resolution(M: Representation, n: int, pad=None) -> ProjResolution:
    """Projective resolution up to ``P_n``.

    The resolution is minimal unless ``pad`` is given: ``pad[k]`` lists
    vertices whose projectives are added to ``P_k`` as summands mapping to
    zero.  They land in the next kernel and get covered there, so the result
    is still a resolution; this is used to check that derived functors do
    not depend on the choice of resolution."""
    A = M.algebra
    pad = pad or {}
    P0, eps = projective_cover(M)
    if pad.get(0):
        P0, eps = _pad(P0, eps, pad[0])
    modules, diffs, syz = [P0], [None], []
    cur = eps
    for k in range(1, n + 1):
        K, inc = kernel(cur)
        syz.append(inc)
        Pk, cov = projective_cover(K)
        tops = list(Pk.tops)
        images = [A.field.dot(inc.mats[i], x) for i, x in zip(tops, evaluate_on_generators(cov))]
        for i in pad.get(k, []):
            tops.append(i)
            images.append(A.field.zeros(modules[-1].dims[i]))
        P = projective_sum(A, tops)
        d = map_from_projectives(P, modules[-1], images)
        modules.append(P)
        diffs.append(d)
        cur = d
    return ProjResolution(M, modules, diffs, eps, syz)


def _pad(P0, eps, verts):
    A = P0.algebra
    tops = list(P0.tops) + list(verts)
    images = evaluate_on_generators(eps) + [A.field.zeros(eps.target.dims[i]) for i in verts]
    P = projective_sum(A, tops)
    return P, map_from_projectives(P, eps.target, images)


def projective_dimension_at_most(M: Representation, n: int) -> bool:
    """``pd M <= n``, read off the minimal resolution."""
    if M.dim == 0:
        return True
    res = projective_resolution(M, n + 1)
    return res.modules[n + 1].dim == 0


def injective_dimension_at_most(M: Representation, n: int) -> bool:
    """``id M <= n``, via the projective dimension of the dual module."""
    return projective_dimension_at_most(dual(M), n)


def _coboundary(d: Morphism, N: Representation) -> np.ndarray:
    """Matrix of ``phi -> phi o d`` from ``Hom(P_{k-1}, N)`` to
    ``Hom(P_k, N)`` in evaluation coordinates."""
    F = N.field
    src, tgt = d.source, d.target  # P_k, P_{k-1}
    A = N.algebra
    # evaluation offsets
    off_t = np.cumsum([0] + [N.dims[i] for i in tgt.tops])
    off_s = np.cumsum([0] + [N.dims[i] for i in src.tops])
    D = F.zeros(int(off_s[-1]), int(off_t[-1]))
    gens = evaluate_on_generators(d)  # image of generator k of P_k inside P_{k-1}
    # decompose each image into path coefficients per summand of P_{k-1}
    for k, (i, x) in enumerate(zip(src.tops, gens)):
        pos = 0
        # the vertex-i space of P_{k-1} lists, summand by summand, paths from top j to i
        for kk, j in enumerate(tgt.tops):
            paths = A.blocks[(i, j)]
            coeffs = x[pos:pos + len(paths)]
            pos += len(paths)
            if not N.dims[j] or not N.dims[i]:
                continue
            block = F.zeros(N.dims[i], N.dims[j])
            for b, c in zip(paths, coeffs):
                if c != 0:
                    block = block + c * N.act(b)
            D[off_s[k]:off_s[k + 1], off_t[kk]:off_t[kk + 1]] = F.norm(block)
    return D


def hom_from_projective(P: Representation, N: Representation, vec) -> Morphism:
    """The morphism ``P -> N`` with evaluation coordinates ``vec``."""
    images = []
    pos = 0
    for i in P.tops:
        images.append(vec[pos:pos + N.dims[i]])
        pos += N.dims[i]
    return map_from_projectives(P, N, images)


class ExtSpace:
    """``Ext^n(M, N)`` with a basis of cocycle representatives."""

    def __init__(self, n, M, N, res: ProjResolution):
        F = M.field
        self.n, self.M, self.N, self.resolution = n, M, N, res
        self.field = F
        dim_n = sum(N.dims[i] for i in res.tops(n))
        D_next = _coboundary(res.differentials[n + 1], N)  # Hom(P_n) -> Hom(P_{n+1})
        Z = la.nullspace(D_next, F) if D_next.shape[0] else F.eye(dim_n)
        if n > 0:
            D_prev = _coboundary(res.differentials[n], N)  # Hom(P_{n-1}) -> Hom(P_n)
            B = D_prev
        else:
            B = F.zeros(dim_n, 0)
        Bb, _ = la.canonical_basis(B, F)
        # complement of B inside Z, and a projection Z -> Ext
        stacked = np.hstack([Bb, Z]) if Z.shape[1] else Bb
        _, piv = la.rref(stacked, F) if stacked.shape[1] else (None, [])
        reps = [stacked[:, c] for c in piv if c >= Bb.shape[1]]
        self.cocycles = np.array(reps, dtype=object).T if reps else F.zeros(dim_n, 0)
        self.boundaries = Bb
        self.dim = self.cocycles.shape[1]
        self._basis_all = np.hstack([Bb, self.cocycles])

    def coords(self, cocycle) -> np.ndarray:
        """Class of a cocycle in the basis of representatives."""
        F = self.field
        x = la.solve(self._basis_all, cocycle, F)
        if x is None:
            raise ValueError("not a cocycle")
        return x[self.boundaries.shape[1]:]

    def morphism(self, k: int) -> Morphism:
        return hom_from_projective(self.resolution.modules[self.n], self.N, self.cocycles[:, k])


def ext(n: int, M: Representation, N: Representation, res: ProjResolution | None = None) -> ExtSpace:
    if res is None or res.length < n + 1:
        res = projective_resolution(M, n + 1)
    return ExtSpace(n, M, N, res)


def ext_dim(n: int, M: Representation, N: Representation, res: ProjResolution | None = None) -> int:
    """Dimension of ``Ext^n(M, N)`` by ranks only."""
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return 0
    if res is None or res.length < n + 1:
        res = projective_resolution(M, n + 1)
    dim_n = sum(N.dims[i] for i in res.tops(n))
    if dim_n == 0:
        return 0
    D_next = _coboundary(res.differentials[n + 1], N)
    r_next = la.rank(D_next, F)
    r_prev = la.rank(_coboundary(res.differentials[n], N), F) if n > 0 else 0
    return dim_n - r_next - r_prev


def tor_dims(functor, M: Representation, n: int, res: ProjResolution | None = None) -> list:
    """``dim Tor_k`` for ``k = 0..n`` where ``functor(X)`` and
    ``functor.on_morphism(f)`` apply a right exact additive functor."""
    F = M.field
    if res is None or res.length < n + 1:
        res = projective_resolution(M, n + 1)
    FP = [functor(P) for P in res.modules]
    Fd = [None] + [functor.on_morphism(d, FP[k], FP[k - 1]) for k, d in enumerate(res.differentials) if k > 0]
    out = []
    for k in range(n + 1):
        total = FP[k].dim
        r_out = sum(la.rank(m, F) for m in Fd[k].mats) if k > 0 else 0
        r_in = sum(la.rank(m, F) for m in Fd[k + 1].mats)
        out.append(total - r_out - r_in)
    return out


# ---------------------------------------------------------------- extensions


@dataclass
class ShortExact:
    """``0 -> A --u--> B --v--> C -> 0``."""

    A: Representation
    B: Representation
    C: Representation
    u: Morphism
    v: Morphism

    def verify(self) -> bool:
        return (
            self.u.is_injective()
            and self.v.is_surjective()
            and (self.v @ self.u).is_zero()
            and all(b == a + c for a, b, c in zip(self.A.dims, self.B.dims, self.C.dims))
        )


def extension_from_cocycle(cocycle, M: Representation, N: Representation, res: ProjResolution | None = None):
    """The extension ``0 -> N -> E -> M -> 0`` of a cocycle in
    ``Hom(P_1, N)`` (evaluation coordinates), built as a pushout along the
    first syzygy."""
    F = M.field
    if res is None:
        res = projective_resolution(M, 1)
    P0, P1, d1 = res.modules[0], res.modules[1], res.differentials[1]
    iota = res.syzygies[0]  # Omega -> P0
    Om = iota.source
    zeta = hom_from_projective(P1, N, cocycle)
    # corestriction of d1 to Omega is surjective; take a right inverse
    pi1 = [la.solve(iota.mats[i], d1.mats[i], F) if Om.dims[i] else F.zeros(0, P1.dims[i]) for i in range(len(Om.dims))]
    zeta_om = []
    for i in range(len(Om.dims)):
        if Om.dims[i] == 0:
            zeta_om.append(F.zeros(N.dims[i], 0))
        else:
            zeta_om.append(F.dot(zeta.mats[i], la.right_inverse(pi1[i], F)))
    S, (inN, inP), (prN, prP) = direct_sum(N, P0)
    h = Morphism(Om, S, [F.norm(F.dot(inN.mats[i], -zeta_om[i]) + F.dot(inP.mats[i], iota.mats[i])) for i in range(len(Om.dims))])
    E, q = cokernel(h)
    u = q @ inN
    v_mats = []
    for i in range(len(E.dims)):
        v_mats.append(F.matmul(res.augmentation.mats[i], prP.mats[i], q.sections[i]))
    v = Morphism(E, M, v_mats)
    return ShortExact(N, E, M, u, v)


def universal_extension(M: Representation, N: Representation, res: ProjResolution | None = None):
    """``0 -> N^d -> E -> M -> 0`` with ``d = dim Ext^1(M, N)``, whose
    connecting map ``Hom(N, N) -> Ext^1(M, N)`` is onto."""
    F = M.field
    X = ext(1, M, N, res)
    d = X.dim
    Nd = power(N, d)
    parts = []
    pos = 0
    for i in X.resolution.tops(1):
        for c in range(d):
            parts.append(X.cocycles[pos:pos + N.dims[i], c])
        pos += N.dims[i]
    return extension_from_cocycle(np.concatenate(parts) if parts else F.zeros(0), M, Nd, X.resolution)


# ---------------------------------------------------------------- long exact sequence


def _cochain_map(u: Morphism, tops) -> np.ndarray:
    F = u.field
    blocks = [u.mats[i] for i in tops]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = F.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def les_check(M: Representation, ses: ShortExact, n_max: int = 2) -> dict:
    """Exactness of ``0 -> Hom(M, A) -> Hom(M, B) -> Hom(M, C) -> Ext^1(M, A) -> ...``
    through ``Ext^{n_max}(M, C)``, with the connecting maps computed at
    cochain level.  Returns node dimensions, map ranks and a verdict."""
    F = M.field
    res = projective_resolution(M, n_max + 2)
    spaces = {}
    for n in range(n_max + 2):
        for name, X in (("A", ses.A), ("B", ses.B), ("C", ses.C)):
            spaces[(n, name)] = ExtSpace(n, M, X, res)

    def induced(n, f, src, tgt):
        S, T = spaces[(n, src)], spaces[(n, tgt)]
        C = _cochain_map(f, res.tops(n))
        cols = [T.coords(F.dot(C, S.cocycles[:, k])) for k in range(S.dim)]
        return np.array(cols, dtype=object).T if cols else F.zeros(T.dim, 0)

    def connecting(n):
        S, T = spaces[(n, "C")], spaces[(n + 1, "A")]
        lift_v = _cochain_map(ses.v, res.tops(n))
        u_next = _cochain_map(ses.u, res.tops(n + 1))
        D = _coboundary(res.differentials[n + 1], ses.B)
        cols = []
        for k in range(S.dim):
            psi = la.solve(lift_v, S.cocycles[:, k], F)
            y = F.dot(D, psi)
            x = la.solve(u_next, y, F)
            cols.append(T.coords(x))
        return np.array(cols, dtype=object).T if cols else F.zeros(T.dim, 0)

    nodes, maps = [], []
    for n in range(n_max + 1):
        nodes += [(n, "A"), (n, "B"), (n, "C")]
        maps += [induced(n, ses.u, "A", "B"), induced(n, ses.v, "B", "C"), connecting(n)]
    dims = [spaces[x].dim for x in nodes]
    ranks = [la.rank(m, F) if m.size else 0 for m in maps]
    exact = []
    for k, d in enumerate(dims):
        r_in = ranks[k - 1] if k > 0 else 0
        exact.append(d - ranks[k] == r_in)
    labels = [("Hom" if n == 0 else f"Ext{n}") + f"(M,{x})" for n, x in nodes]
    return {"nodes": labels, "dims": dims, "ranks": ranks, "exact": exact, "ok": all(exact)}
