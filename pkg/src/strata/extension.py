"""Split-by-nilpotent extensions and the change of rings functors.

Given ``Gamma = kQ/I'`` and a set of arrows ``A``, the subalgebra ``Lambda``
is presented by the quiver without ``A`` and the relations of ``Gamma`` with
every term through an ``A``-arrow removed.  The algebra maps are
``sigma: Lambda -> Gamma`` (a path goes to itself) and
``pi: Gamma -> Lambda`` (paths through ``A`` go to zero); ``I = ker pi``.

The functors are ``G = Gamma (x)_Lambda -`` and ``F = Lambda (x)_Gamma -``.
``G M`` is modelled as ``M + I (x)_Lambda M`` and ``F N`` as ``N / I N``;
both are cross-checked against a generic tensor product of bimodules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .presentation import AlgebraPresentation, BoundQuiverAlgebra, build_algebra, presentation_from_data
from .repcat import Morphism, Representation, hom_basis, quotient


class SplitFails(ValueError):
    """The canonical section is not an algebra map; ``witness`` names a
    pair of basis paths whose product is not preserved."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnAlgebraMap(ValueError):
    pass


class AlgebraMap:
    """A unital algebra map given on vertices and arrows.

    ``vertex_images[i]`` is the tuple of target vertices whose idempotents
    sum to the image of ``e_i``; the tuples must partition the target
    vertices.  ``arrow_images[a]`` is a vector in the target algebra."""

    def __init__(self, source: BoundQuiverAlgebra, target: BoundQuiverAlgebra, vertex_images, arrow_images, check=True):
        self.source = source
        self.target = target
        self.vertex_images = [tuple(v) for v in vertex_images]
        self.arrow_images = list(arrow_images)
        self._basis_images = None
        if check:
            self.check()

    def _word_image(self, word):
        T = self.target
        out = self.arrow_images[word[0]]
        for a in word[1:]:
            out = T.mul_vec(out, self.arrow_images[a])
        return out

    def _vertex_image(self, i):
        T = self.target
        v = T.field.zeros(T.dim)
        for u in self.vertex_images[i]:
            v[T.vertex_basis[u]] = T.field(1)
        return v

    def check(self):
        S, T = self.source, self.target
        F = S.field
        flat = sorted(u for v in self.vertex_images for u in v)
        if flat != list(range(T.n_vertices)):
            raise NotAnAlgebraMap("vertex images do not partition the target vertices")
        for a, (label, s, t) in enumerate(S.arrows):
            x = self.arrow_images[a]
            lhs = T.mul_vec(self._vertex_image(t), T.mul_vec(x, self._vertex_image(s)))
            if np.any(lhs != x):
                raise NotAnAlgebraMap(f"image of {label} is not between the images of its endpoints")
        for r in S.presentation.relations:
            total = F.zeros(T.dim)
            for c, w in r:
                total = F.norm(total + F(c) * self._word_image(tuple(S.arrow_index(x) for x in w)))
            if not la.is_zero(total):
                raise NotAnAlgebraMap("a relation is not sent to zero")
        return self

    def matrix(self) -> np.ndarray:
        """Matrix from source basis coordinates to target coordinates."""
        if self._basis_images is None:
            S, T = self.source, self.target
            cols = []
            for b in S.basis:
                cols.append(self._word_image(b.word) if b.word else self._vertex_image(b.source))
            self._basis_images = np.array(cols, dtype=object).T.reshape(T.dim, S.dim)
        return self._basis_images

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.source.field.dot(self.matrix(), x)

    def restrict(self, M: Representation) -> Representation:
        """Restriction of a target module to the source algebra."""
        S, T = self.source, self.target
        F = S.field
        if M.algebra is not T:
            raise ValueError("module is not over the target algebra")
        dims = [sum(M.dims[u] for u in self.vertex_images[i]) for i in range(S.n_vertices)]
        maps = []
        for a, (_, s, t) in enumerate(S.arrows):
            x = self.arrow_images[a]
            rows = []
            for v in self.vertex_images[t]:
                row = [M.element_block(x, u, v) for u in self.vertex_images[s]]
                rows.append(np.hstack(row) if row else F.zeros(M.dims[v], 0))
            m = np.vstack(rows) if rows else F.zeros(0, dims[s])
            maps.append(m.reshape(dims[t], dims[s]))
        return Representation(S, dims, maps, check=False)


# ---------------------------------------------------------------- bimodules


class Bimodule:
    """A ``(L, R)``-bimodule split into blocks ``e_t B e_s``.

    ``left_maps[c][(t2, s)]`` is the action of the left arrow ``c: t -> t2``
    as a matrix ``B(t, s) -> B(t2, s)``; ``right_maps[a][t]`` is the action
    of the right arrow ``a: u -> v`` as a matrix ``B(t, v) -> B(t, u)``."""

    def __init__(self, left, right, dims, left_maps, right_maps, name=""):
        self.left = left
        self.right = right
        self.dims = dims
        self.left_maps = left_maps
        self.right_maps = right_maps
        self.name = name

    @property
    def dim(self):
        return sum(self.dims.values())

    def right_module(self) -> Representation:
        """``B`` as a left module over the opposite of the right algebra."""
        R = self.right
        op = R.opposite()
        nL = self.left.n_vertices
        dims = [sum(self.dims[(t, s)] for t in range(nL)) for s in range(R.n_vertices)]
        F = R.field
        maps = []
        for a, (_, u, v) in enumerate(R.arrows):
            m = F.zeros(dims[u], dims[v])
            r = c = 0
            for t in range(nL):
                blk = self.right_maps[a][t]
                m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
                r += self.dims[(t, u)]
                c += self.dims[(t, v)]
            maps.append(m)
        return Representation(op, dims, maps, check=False)

    def left_module(self) -> Representation:
        """``B`` as a left module over the left algebra."""
        L = self.left
        nR = self.right.n_vertices
        dims = [sum(self.dims[(t, s)] for s in range(nR)) for t in range(L.n_vertices)]
        F = L.field
        maps = []
        for c, (_, t, t2) in enumerate(L.arrows):
            m = F.zeros(dims[t2], dims[t])
            r = col = 0
            for s in range(nR):
                blk = self.left_maps[c][(t2, s)]
                m[r:r + blk.shape[0], col:col + blk.shape[1]] = blk
                r += self.dims[(t2, s)]
                col += self.dims[(t, s)]
            maps.append(m)
        return Representation(L, dims, maps, check=False)


def subbimodule_of_algebra(G: BoundQuiverAlgebra, blocks, left_map: AlgebraMap | None, right_map: AlgebraMap | None, name=""):
    """A sub-bimodule of ``G`` given by canonical block bases (``blocks[(t,
    s)] = (B, rows)`` in ``G`` coordinates), over algebras mapping into
    ``G``.  ``None`` means ``G`` itself acts."""
    F = G.field
    L = left_map.source if left_map else G
    R = right_map.source if right_map else G
    dims = {k: v[0].shape[1] for k, v in blocks.items()}
    lm = []
    for c, (_, t, t2) in enumerate(L.arrows):
        x = left_map.arrow_images[c] if left_map else G.vector({G.arrow_basis[c]: F(1)})
        Lx = G.left_matrix(x)
        d = {}
        for s in range(R.n_vertices):
            B, _ = blocks[(t, s)]
            B2, rows2 = blocks[(t2, s)]
            img = F.dot(Lx, B)
            d[(t2, s)] = img[rows2] if rows2 else F.zeros(0, B.shape[1])
        lm.append(d)
    rm = []
    for a, (_, u, v) in enumerate(R.arrows):
        x = right_map.arrow_images[a] if right_map else G.vector({G.arrow_basis[a]: F(1)})
        Rx = G.right_matrix(x)
        d = {}
        for t in range(L.n_vertices):
            B, _ = blocks[(t, v)]
            B2, rows2 = blocks[(t, u)]
            img = F.dot(Rx, B)
            d[t] = img[rows2] if rows2 else F.zeros(0, B.shape[1])
        rm.append(d)
    out = Bimodule(L, R, dims, lm, rm, name)
    out.blocks = blocks
    return out


@dataclass
class TensorResult:
    """``B (x)_R M`` with the data needed for functoriality: per vertex, the
    quotient map from the free tensor space and a section of it."""

    module: Representation
    bimodule: Bimodule
    source: Representation
    q: list
    sections: list
    layout: list  # layout[t] = list of (s, offset, size)


def tensor_bimodule(B: Bimodule, M: Representation) -> TensorResult:
    """``B (x)_R M`` as a left module over ``B.left``."""
    L, R = B.left, B.right
    F = L.field
    nL, nR = L.n_vertices, R.n_vertices
    layout, sizes = [], []
    for t in range(nL):
        off = 0
        lay = []
        for s in range(nR):
            size = B.dims[(t, s)] * M.dims[s]
            lay.append((s, off, size))
            off += size
        layout.append(lay)
        sizes.append(off)
    qs, secs = [], []
    for t in range(nL):
        cols = []
        for a, (_, u, v) in enumerate(R.arrows):
            bv, mu = B.dims[(t, v)], M.dims[u]
            if bv * mu == 0:
                continue
            rel = F.zeros(sizes[t], bv * mu)
            _, ov, sv = layout[t][v]
            _, ou, su = layout[t][u]
            rel[ov:ov + sv] += F.kron(F.eye(bv), M.maps[a])
            rel[ou:ou + su] -= F.kron(B.right_maps[a][t], F.eye(mu))
            cols.append(F.norm(rel))
        U = np.hstack(cols) if cols else F.zeros(sizes[t], 0)
        q, s = la.quotient_map(U, sizes[t], F)
        qs.append(q)
        secs.append(s)
    maps = []
    for c, (_, t, t2) in enumerate(L.arrows):
        big = F.zeros(sizes[t2], sizes[t])
        for s in range(nR):
            _, o2, z2 = layout[t2][s]
            _, o1, z1 = layout[t][s]
            if z1 and z2:
                big[o2:o2 + z2, o1:o1 + z1] = F.kron(B.left_maps[c][(t2, s)], F.eye(M.dims[s]))
        maps.append(F.matmul(qs[t2], big, secs[t]))
    T = Representation(L, [q.shape[0] for q in qs], maps, check=False)
    return TensorResult(T, B, M, qs, secs, layout)


def tensor_morphism(TM: TensorResult, TN: TensorResult, f: Morphism) -> Morphism:
    """``B (x) f`` between two tensor products with the same bimodule."""
    B = TM.bimodule
    F = f.field
    mats = []
    for t in range(B.left.n_vertices):
        rows = TN.q[t].shape[1]
        cols = TM.q[t].shape[1]
        big = F.zeros(rows, cols)
        for (s, o1, z1), (_, o2, z2) in zip(TM.layout[t], TN.layout[t]):
            if z1 and z2:
                big[o2:o2 + z2, o1:o1 + z1] = F.kron(F.eye(B.dims[(t, s)]), f.mats[s])
        mats.append(F.matmul(TN.q[t], big, TM.sections[t]))
    return Morphism(TM.module, TN.module, mats)


# ---------------------------------------------------------------- split extensions


def _lambda_presentation(p: AlgebraPresentation, arrows) -> AlgebraPresentation:
    keep = [a for a in p.arrows if a.label not in arrows]
    rels = []
    for r in p.relations:
        terms = [(c, w) for c, w in r if not any(x in arrows for x in w)]
        if terms:
            rels.append(terms)
    return presentation_from_data(
        p.name + "_lambda",
        p.vertices,
        [(a.label, a.source, a.target) for a in keep],
        rels,
        field=p.field,
    )


class SplitExtension:
    """The split extension ``0 -> I -> Gamma -> Lambda -> 0`` of a
    presentation and an arrow set, with both functors."""

    def __init__(self, gamma: BoundQuiverAlgebra, arrows):
        arrows = list(arrows)
        for x in arrows:
            gamma.arrow_index(x)
        self.gamma = G = gamma
        self.arrow_set = tuple(arrows)
        self.field = F = G.field
        self.lam = L = build_algebra(_lambda_presentation(G.presentation, set(arrows)), G.max_path_length)
        self.A_idx = frozenset(G.arrow_index(x) for x in arrows)
        self.lam_to_gamma = [G.arrow_index(label) for label, _, _ in L.arrows]
        self.gamma_to_lam = {g: k for k, g in enumerate(self.lam_to_gamma)}
        ident = [(i,) for i in range(G.n_vertices)]
        self.sigma = AlgebraMap(
            L, G, ident, [G.vector({G.arrow_basis[g]: F(1)}) for g in self.lam_to_gamma], check=False
        )
        pi_imgs = []
        for g in range(len(G.arrows)):
            if g in self.A_idx:
                pi_imgs.append(F.zeros(L.dim))
            else:
                pi_imgs.append(L.vector({L.arrow_basis[self.gamma_to_lam[g]]: F(1)}))
        self.pi = AlgebraMap(G, L, ident, pi_imgs, check=False)
        self._check_split()
        self._tensor_cache = {}
        self._bimods = {}

    # structure
    def _check_split(self):
        G, L, F = self.gamma, self.lam, self.field
        try:
            self.pi.check()
        except NotAnAlgebraMap as exc:
            raise SplitFails(f"projection is not an algebra map: {exc}") from None
        S = self.sigma.matrix()
        P = self.pi.matrix()
        if np.any(F.dot(P, S) != F.eye(L.dim)):
            raise SplitFails("pi o sigma is not the identity")
        for i in range(L.dim):
            for j in range(L.dim):
                lhs = F.dot(S, L.vector(L.mul(i, j)))
                rhs = G.mul_vec(S[:, i], S[:, j])
                if np.any(lhs != rhs):
                    pair = (L.basis_label(i), L.basis_label(j))
                    raise SplitFails(f"sigma does not preserve the product {pair[0]} * {pair[1]}", pair)
        # I = ker pi, block by block
        blocks = {}
        for (t, s), idx in G.blocks.items():
            sub = P[:, idx] if idx else F.zeros(L.dim, 0)
            K = la.nullspace(sub, F) if idx else F.zeros(0, 0)
            emb = F.zeros(G.dim, K.shape[1])
            for r, b in enumerate(idx):
                emb[b] = K[r]
            blocks[(t, s)] = la.canonical_basis(emb, F)
        self.ideal_blocks = blocks
        self.ideal_dim = sum(B.shape[1] for B, _ in blocks.values())
        if self.ideal_dim + L.dim != G.dim:
            raise SplitFails("dimensions of ideal and quotient do not add up")
        for (t, s), (B, _) in blocks.items():
            for c in range(B.shape[1]):
                for v in G.vertex_basis:
                    if B[v, c] != 0:
                        raise SplitFails("ideal is not inside the arrow ideal")

    def ideal_basis(self) -> np.ndarray:
        cols = [B for B, _ in self.ideal_blocks.values() if B.shape[1]]
        return np.hstack(cols) if cols else self.field.zeros(self.gamma.dim, 0)

    def ideal_labels(self) -> list:
        G = self.gamma
        out = []
        for B, _ in self.ideal_blocks.values():
            for c in range(B.shape[1]):
                terms = [f"{self.field.to_json(B[b, c])}*{G.basis_label(b)}" for b in np.nonzero(B[:, c] != 0)[0]]
                out.append(" + ".join(t[2:] if t.startswith("1*") else t for t in terms))
        return out

    def verify_laws(self) -> dict:
        """Check the structure: ``pi sigma = 1``, ``sigma`` and ``pi``
        multiplicative, ``I`` a two-sided nilpotent ideal, ``Gamma = Lambda
        + I`` with ``(l1, i1)(l2, i2) = (l1 l2, l1 i2 + i1 l2 + i1 i2)``."""
        G, L, F = self.gamma, self.lam, self.field
        S, P = self.sigma.matrix(), self.pi.matrix()
        Ib = self.ideal_basis()
        ok_ps = not np.any(F.dot(P, S) != F.eye(L.dim))
        ok_pi = True
        for i in range(G.dim):
            for j in range(G.dim):
                lhs = F.dot(P, G.vector(G.mul(i, j)))
                rhs = L.mul_vec(P[:, i], P[:, j])
                if np.any(lhs != rhs):
                    ok_pi = False
        ok_ideal = True
        for c in range(Ib.shape[1]):
            for b in range(G.dim):
                e = G.vector({b: F(1)})
                for prod in (G.mul_vec(e, Ib[:, c]), G.mul_vec(Ib[:, c], e)):
                    if not la.is_zero(F.dot(P, prod)):
                        ok_ideal = False
        # nilpotency: powers of I vanish
        power = Ib
        steps = 0
        while power.shape[1] and steps <= G.radical_layers():
            prods = [G.mul_vec(power[:, a], Ib[:, b]) for a in range(power.shape[1]) for b in range(Ib.shape[1])]
            power = la.canonical_basis(np.array(prods, dtype=object).T.reshape(G.dim, -1), F)[0] if prods else F.zeros(G.dim, 0)
            steps += 1
        ok_nil = power.shape[1] == 0
        ok_sum = la.rank(np.hstack([S, Ib]), F) == G.dim
        return {
            "pi_sigma_identity": ok_ps,
            "pi_multiplicative": ok_pi,
            "ideal_two_sided": ok_ideal,
            "ideal_nilpotent": ok_nil,
            "direct_sum": ok_sum,
            "dims": {"gamma": G.dim, "lambda": L.dim, "ideal": self.ideal_dim},
            "ok": ok_ps and ok_pi and ok_ideal and ok_nil and ok_sum,
        }

    # bimodules
    def bimodule(self, kind: str) -> Bimodule:
        """``"I_GL"``, ``"I_LL"``, ``"I_GG"``: the ideal over (Gamma, Lambda),
        (Lambda, Lambda), (Gamma, Gamma); ``"Gamma_GL"``: Gamma over
        (Gamma, Lambda); ``"Lambda_LG"``: Lambda over (Lambda, Gamma);
        ``"Lambda_LL"``: Lambda over itself."""
        hit = self._bimods.get(kind)
        if hit is not None:
            return hit
        G, L, F = self.gamma, self.lam, self.field
        full_G = {k: la.canonical_basis(_unit_cols(G, idx), F) for k, idx in G.blocks.items()}
        full_L = {k: la.canonical_basis(_unit_cols(L, idx), F) for k, idx in L.blocks.items()}
        if kind == "I_GL":
            out = subbimodule_of_algebra(G, self.ideal_blocks, None, self.sigma, "I")
        elif kind == "I_LL":
            out = subbimodule_of_algebra(G, self.ideal_blocks, self.sigma, self.sigma, "I")
        elif kind == "I_GG":
            out = subbimodule_of_algebra(G, self.ideal_blocks, None, None, "I")
        elif kind == "Gamma_GL":
            out = subbimodule_of_algebra(G, full_G, None, self.sigma, "Gamma")
        elif kind == "Lambda_LL":
            out = subbimodule_of_algebra(L, full_L, None, None, "Lambda")
        elif kind == "Lambda_LG":
            out = subbimodule_of_algebra(L, full_L, None, self.pi, "Lambda")
        else:
            raise KeyError(kind)
        self._bimods[kind] = out
        return out

    # functors
    def tensor_ideal(self, M: Representation) -> TensorResult:
        """``I (x)_Lambda M`` as a Gamma-module (cached per module)."""
        key = id(M)
        hit = self._tensor_cache.get(key)
        if hit is not None and hit[0] is M:
            return hit[1]
        res = tensor_bimodule(self.bimodule("I_GL"), M)
        self._tensor_cache[key] = (M, res)
        return res

    def ideal_tensor_lambda(self, M: Representation) -> Representation:
        """``I (x)_Lambda M`` as a Lambda-module."""
        T = self.tensor_ideal(M).module
        return self.sigma.restrict(T)

    def G(self, M: Representation) -> Representation:
        """``Gamma (x)_Lambda M`` as ``M + I (x)_Lambda M``."""
        if M.algebra is not self.lam:
            raise ValueError("G needs a Lambda-module")
        G, F = self.gamma, self.field
        TR = self.tensor_ideal(M)
        T = TR.module
        dims = [M.dims[i] + T.dims[i] for i in range(G.n_vertices)]
        maps = []
        for c, (_, s, t) in enumerate(G.arrows):
            m = F.zeros(dims[t], dims[s])
            m[M.dims[t]:, M.dims[s]:] = T.maps[c]
            if c in self.A_idx:
                m[M.dims[t]:, :M.dims[s]] = self._embed_arrow(TR, c)
            else:
                m[:M.dims[t], :M.dims[s]] = M.maps[self.gamma_to_lam[c]]
            maps.append(m)
        out = Representation(G, dims, maps, check=False)
        out.g_parts = (M, TR)
        return out

    def _embed_arrow(self, TR: TensorResult, c: int) -> np.ndarray:
        """``m -> [c (x) m]`` from ``M_s`` to ``(I (x) M)_t``."""
        G, F = self.gamma, self.field
        M = TR.source
        _, s, t = G.arrows[c]
        B, rows = self.ideal_blocks[(t, s)]
        x = G.vector({G.arrow_basis[c]: F(1)})[rows]
        _, off, size = TR.layout[t][s]
        q = TR.q[t][:, off:off + size]
        return F.dot(q, F.kron(x.reshape(-1, 1), F.eye(M.dims[s])))

    def G_morphism(self, f: Morphism, GM=None, GN=None) -> Morphism:
        GM = GM if GM is not None else self.G(f.source)
        GN = GN if GN is not None else self.G(f.target)
        F = self.field
        Tf = tensor_morphism(GM.g_parts[1], GN.g_parts[1], f)
        mats = []
        for i in range(self.gamma.n_vertices):
            m = F.zeros(GN.dims[i], GM.dims[i])
            m[:f.target.dims[i], :f.source.dims[i]] = f.mats[i]
            m[f.target.dims[i]:, f.source.dims[i]:] = Tf.mats[i]
            mats.append(m)
        return Morphism(GM, GN, mats)

    def L_morphism(self, g: Morphism, GM, GN) -> Morphism:
        """The Gamma-map ``GM -> GN`` adjoint to ``(0, g): M -> N + I (x) N``
        for a Lambda-map ``g: M -> I (x)_Lambda N``."""
        G, F = self.gamma, self.field
        M, TRM = GM.g_parts
        N, _ = GN.g_parts
        Ib = self.ideal_blocks
        n = G.n_vertices
        # images of M-part vectors inside GN
        def lift(s, vec):
            out = F.zeros(GN.dims[s])
            out[N.dims[s]:] = F.dot(g.mats[s], vec)
            return out

        mats = []
        for t in range(n):
            cols = []
            for e in range(M.dims[t]):
                vec = F.zeros(M.dims[t])
                vec[e] = F(1)
                cols.append(lift(t, vec))
            sec = TRM.sections[t]
            for k in range(sec.shape[1]):
                pos = int(np.nonzero(sec[:, k] != 0)[0][0])
                for s, off, size in TRM.layout[t]:
                    if off <= pos < off + size:
                        break
                b, e = divmod(pos - off, M.dims[s])
                B, _ = Ib[(t, s)]
                x = B[:, b]
                vec = F.zeros(M.dims[s])
                vec[e] = F(1)
                cols.append(F.dot(GN.element_block(x, s, t), lift(s, vec)))
            mats.append(np.array(cols, dtype=object).T.reshape(GN.dims[t], GM.dims[t]))
        return Morphism(GM, GN, mats)

    def F(self, N: Representation) -> Representation:
        """``N / I N`` as a Lambda-module."""
        return self._F_data(N)[0]

    def _F_data(self, N):
        if N.algebra is not self.gamma:
            raise ValueError("F needs a Gamma-module")
        cached = getattr(N, "_f_data", None)
        if cached is not None and cached[0] is self:
            return cached[1]
        G, L, F = self.gamma, self.lam, self.field
        spans = []
        for t in range(G.n_vertices):
            cols = []
            for s in range(G.n_vertices):
                B, _ = self.ideal_blocks[(t, s)]
                if not N.dims[s] or not N.dims[t]:
                    continue
                for k in range(B.shape[1]):
                    cols.append(N.element_block(B[:, k], s, t))
            spans.append(np.hstack(cols) if cols else F.zeros(N.dims[t], 0))
        C, proj = quotient(N, spans)
        FN = Representation(L, C.dims, [C.maps[g] for g in self.lam_to_gamma], check=False)
        data = (FN, proj)
        N._f_data = (self, data)
        return data

    def F_morphism(self, f: Morphism, FM=None, FN=None) -> Morphism:
        FMm, pM = self._F_data(f.source)
        FNm, pN = self._F_data(f.target)
        F = self.field
        mats = [F.matmul(pN.mats[i], f.mats[i], pM.sections[i]) for i in range(len(f.mats))]
        return Morphism(FM if FM is not None else FMm, FN if FN is not None else FNm, mats)

    def restrict_pi(self, X: Representation) -> Representation:
        """A Lambda-module viewed as a Gamma-module."""
        return _restrict_along_pi(self, X)

    @property
    def functor_F(self):
        return _FunctorF(self)

    # cross-checks with the generic tensor product
    def G_generic(self, M: Representation) -> Representation:
        return tensor_bimodule(self.bimodule("Gamma_GL"), M).module

    def F_generic(self, N: Representation) -> Representation:
        return tensor_bimodule(self.bimodule("Lambda_LG"), N).module

    # right modules
    def ideal_right_lambda(self) -> Representation:
        """``I`` as a right Lambda-module (a left module over the opposite)."""
        return self.bimodule("I_LL").right_module()

    def lambda_right_gamma(self) -> Representation:
        """``Lambda`` as a right Gamma-module (via pi)."""
        return self.bimodule("Lambda_LG").right_module()

    def gamma_left_lambda(self) -> Representation:
        """``Gamma`` as a left Lambda-module (via sigma)."""
        return self.sigma.restrict(self.bimodule("Gamma_GL").left_module())

    def __repr__(self):
        return (
            f"<SplitExtension {self.gamma.name}: dim Gamma {self.gamma.dim}, "
            f"dim Lambda {self.lam.dim}, dim I {self.ideal_dim}>"
        )


def _unit_cols(A, idx):
    F = A.field
    out = F.zeros(A.dim, len(idx))
    for k, b in enumerate(idx):
        out[b, k] = F(1)
    return out


def _restrict_along_pi(ext: SplitExtension, X: Representation) -> Representation:
    G, F = ext.gamma, ext.field
    maps = []
    for c, (_, s, t) in enumerate(G.arrows):
        if c in ext.A_idx:
            maps.append(F.zeros(X.dims[t], X.dims[s]))
        else:
            maps.append(X.maps[ext.gamma_to_lam[c]])
    return Representation(G, X.dims, maps, check=False)


class _FunctorF:
    """``F`` packaged for :func:`strata.homology.tor_dims`."""

    def __init__(self, ext):
        self.ext = ext

    def __call__(self, N):
        return self.ext.F(N)

    def on_morphism(self, f, FM, FN):
        return self.ext.F_morphism(f, FM, FN)


def build_split_extension(gamma, arrows, field=None, max_path_length: int = 32) -> SplitExtension:
    """Split extension of a presentation (object, text or built algebra)
    by the arrow set ``arrows`` (labels).  Raises :class:`SplitFails` if the
    canonical section is not an algebra map."""
    if not isinstance(gamma, BoundQuiverAlgebra):
        gamma = build_algebra(gamma, max_path_length, field)
    if isinstance(arrows, str):
        arrows = [x.strip() for x in arrows.split(",") if x.strip()]
    return SplitExtension(gamma, arrows)


# ---------------------------------------------------------------- Hom decomposition


def delta_decompose(ext: SplitExtension, M: Representation, N: Representation) -> dict:
    """Check ``Hom_Gamma(GM, GN) = G Hom_Lambda(M, N) + L Hom_Lambda(M, I (x) N)``
    as a direct sum, by ranks.  Every constructed map is validated as a
    Gamma-homomorphism."""
    F = ext.field
    GM, GN = ext.G(M), ext.G(N)
    H = hom_basis(GM, GN)
    IN = ext.ideal_tensor_lambda(N)
    h1 = hom_basis(M, N)
    h2 = hom_basis(M, IN)
    # hom_basis(M, IN) is over the same underlying spaces as the tensor part
    vecs = []
    for f in h1:
        vecs.append(ext.G_morphism(f, GM, GN).validate().vec())
    for g in h2:
        g2 = Morphism(M, ext.tensor_ideal(N).module, g.mats)
        vecs.append(ext.L_morphism(g2, GM, GN).validate().vec())
    r = la.rank(np.array(vecs, dtype=object), F) if vecs else 0
    return {
        "dim_hom_gamma": len(H),
        "dim_hom_lambda": len(h1),
        "dim_hom_tensor": len(h2),
        "rank_of_union": r,
        "ok": r == len(H) == len(h1) + len(h2),
    }


def verify_split_end(ext: SplitExtension, M: Representation) -> dict:
    """``End_Gamma(GM)`` as ``G End(M)`` plus the ideal of maps adjoint to
    ``Hom(M, I (x) M)``: G is multiplicative, the second part is a nilpotent
    two-sided ideal, the dimensions add, and taking the ``M``-block is an
    algebra map onto ``End(M)`` with that ideal as kernel."""
    F = ext.field
    GM = ext.G(M)
    E = hom_basis(GM, GM)
    EM = hom_basis(M, M)
    Gs = [ext.G_morphism(f, GM, GM) for f in EM]
    IM = ext.tensor_ideal(M).module
    Ls = [ext.L_morphism(Morphism(M, IM, g.mats), GM, GM) for g in hom_basis(M, ext.ideal_tensor_lambda(M))]
    vec = lambda f: f.vec()
    Gspan = np.array([vec(f) for f in Gs], dtype=object).T.reshape(-1, len(Gs)) if Gs else F.zeros(0, 0)
    Lspan = np.array([vec(f) for f in Ls], dtype=object).T.reshape(-1, len(Ls)) if Ls else F.zeros(len(E.K), 0)
    ok_dims = len(E) == len(Gs) + len(Ls) and la.rank(np.hstack([Gspan, Lspan]) if Ls else Gspan, F) == len(E)
    ok_mult = True
    for a, f in enumerate(EM):
        for b, g in enumerate(EM):
            if not ext.G_morphism(f @ g, GM, GM) == (Gs[a] @ Gs[b]):
                ok_mult = False
    ok_ideal = True
    for h in list(E):
        for l in Ls:
            for prod in (h @ l, l @ h):
                if Ls and not la.in_span(Lspan, prod.vec(), F):
                    ok_ideal = False
    # nilpotency of the ideal
    power = Lspan
    steps = 0
    while power.shape[1] and steps <= GM.dim + 1:
        prods = [(E.from_vec(power[:, a]) @ l).vec() for a in range(power.shape[1]) for l in Ls]
        power = la.canonical_basis(np.array(prods, dtype=object).T.reshape(-1, len(prods)), F)[0]
        steps += 1
    ok_nil = power.shape[1] == 0

    def theta(h):
        return Morphism(M, M, [h.mats[i][:M.dims[i], :M.dims[i]] for i in range(len(M.dims))])

    ok_theta = True
    for h1 in E:
        for h2 in E:
            if not theta(h1 @ h2) == (theta(h1) @ theta(h2)):
                ok_theta = False
    ok_kernel = all(theta(l).is_zero() for l in Ls)
    return {
        "dim_end_gamma": len(E),
        "dim_end_lambda": len(Gs),
        "dim_ideal": len(Ls),
        "dims_add": ok_dims,
        "G_multiplicative": ok_mult,
        "ideal_two_sided": ok_ideal,
        "ideal_nilpotent": ok_nil,
        "block_map_multiplicative": ok_theta,
        "block_map_kills_ideal": ok_kernel,
        "ok": ok_dims and ok_mult and ok_ideal and ok_nil and ok_theta and ok_kernel,
    }
