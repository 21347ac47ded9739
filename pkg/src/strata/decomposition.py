"""Endomorphism rings, Krull-Schmidt decomposition and isomorphism tests.

The radical of ``End(M)`` is computed exactly: in characteristic zero as the
kernel of the trace form on the natural representation, in characteristic
``p`` by the descending chain of Cohen, Ivanyos and Wales.  Idempotents are
found in the semisimple quotient from zero divisors and then lifted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy

from . import linalg as la
from .repcat import HomSpace, Morphism, Representation, ZeroModule, hom_basis, identity, image


class EndAlgebra:
    """``End(M)`` in the coordinates of :func:`hom_basis`."""

    def __init__(self, M: Representation):
        self.module = M
        self.field = M.field
        self.basis: HomSpace = hom_basis(M, M)
        self.dim = len(self.basis)
        self._struct = None
        self._radical = None

    def element(self, coords) -> Morphism:
        return self.basis.combine(coords)

    def coords(self, f: Morphism) -> np.ndarray:
        return self.basis.coords(f)

    def structure_constants(self) -> np.ndarray:
        """``T[a, b]`` is the coordinate vector of ``f_a o f_b``."""
        if self._struct is None:
            n = self.dim
            T = np.empty((n, n), dtype=object)
            for a in range(n):
                for b in range(n):
                    T[a, b] = self.coords(self.basis[a] @ self.basis[b])
            self._struct = T
        return self._struct

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        F = self.field
        T = self.structure_constants()
        out = F.zeros(self.dim)
        for a in np.nonzero(x != 0)[0]:
            for b in np.nonzero(y != 0)[0]:
                out = out + (x[a] * y[b]) * T[a, b]
        return F.norm(out)

    def one(self) -> np.ndarray:
        return self.coords(identity(self.module))

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        F = self.field
        n = self.dim
        L = F.zeros(n, n)
        for b in range(n):
            e = F.zeros(n)
            e[b] = F(1)
            L[:, b] = self.mul(x, e)
        return L

    # radical
    def radical(self) -> np.ndarray:
        """Columns (in coordinates) spanning the Jacobson radical."""
        if self._radical is None:
            if self.dim == 0:
                self._radical = self.field.zeros(0, 0)
            elif self.field.p is None:
                self._radical = self._radical_char0()
            else:
                self._radical = self._radical_charp()
        return self._radical

    def _radical_char0(self):
        F = self.field
        V = np.array([self.basis[a].vec() for a in range(self.dim)], dtype=object).reshape(self.dim, -1)
        Vt = np.array(
            [np.concatenate([m.T.reshape(-1) for m in self.basis[a].mats]) for a in range(self.dim)], dtype=object
        ).reshape(self.dim, -1)
        gram = F.dot(V, Vt.T) if V.shape[1] else F.zeros(self.dim, self.dim)
        return la.nullspace(gram, F)

    def _trace_digit(self, f: Morphism, i: int) -> int:
        """``(Tr(lift(f)^(p^i)) mod p^(i+1)) / p^i`` with an integer lift."""
        p = self.field.p
        mod = p ** (i + 1)
        total = 0
        for m in f.mats:
            if m.size == 0:
                continue
            X = np.array([[int(x) for x in row] for row in m.tolist()], dtype=object)
            R = np.eye(X.shape[0], dtype=int).astype(object)
            e = p**i
            base = X % mod
            while e:
                if e & 1:
                    R = R.dot(base) % mod
                base = base.dot(base) % mod
                e >>= 1
            total += int(np.trace(R))
        total %= mod
        return (total // p**i) % p

    def _radical_charp(self):
        F = self.field
        p = F.p
        n_nat = max(self.module.dim, 1)
        l = 0
        while p ** (l + 1) <= n_nat:
            l += 1
        current = F.eye(self.dim)
        for i in range(l + 1):
            if current.shape[1] == 0:
                break
            k = current.shape[1]
            rows = F.zeros(self.dim, k)
            for c in range(k):
                x = self.element(current[:, c])
                for b in range(self.dim):
                    rows[b, c] = F(self._trace_digit(x @ self.basis[b], i))
            kern = la.nullspace(rows, F)
            current = F.dot(current, kern) if kern.shape[1] else F.zeros(self.dim, 0)
        return current

    def top_dim(self) -> int:
        return self.dim - self.radical().shape[1]

    def is_local(self) -> bool:
        return self.dim > 0 and self.top_dim() == 1


class _Semisimple:
    """The quotient ``End(M) / rad``."""

    def __init__(self, E: EndAlgebra):
        F = E.field
        self.E = E
        self.field = F
        self.q, self.s = la.quotient_map(E.radical(), E.dim, F)
        self.dim = self.q.shape[0]

    def mul(self, x, y):
        F = self.field
        return F.dot(self.q, self.E.mul(F.dot(self.s, x), F.dot(self.s, y)))

    def one(self):
        return self.field.dot(self.q, self.E.one())

    def left_matrix(self, x):
        F = self.field
        n = self.dim
        L = F.zeros(n, n)
        for b in range(n):
            e = F.zeros(n)
            e[b] = F(1)
            L[:, b] = self.mul(x, e)
        return L

    def min_poly(self, x):
        """Coefficients ``c_0..c_d`` (monic) of the minimal polynomial."""
        F = self.field
        powers = [self.one()]
        while True:
            nxt = self.mul(powers[-1], x)
            A = np.array(powers, dtype=object).T
            sol = la.solve(A, nxt, F)
            if sol is not None:
                return [F.norm(-c) for c in sol] + [F(1)]
            powers.append(nxt)

    def poly_eval(self, coeffs, x):
        F = self.field
        out = F.zeros(self.dim)
        pw = self.one()
        for c in coeffs:
            out = F.norm(out + c * pw)
            pw = self.mul(pw, x)
        return out


def _sympy_poly(coeffs, field):
    x = sympy.Symbol("x")
    if field.p is None:
        cs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
        return sympy.Poly(cs, x, domain=sympy.QQ), x
    return sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p), x


def _poly_coeffs(poly, field):
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.p is None:
            c = sympy.Rational(c)
            out.append(field(f"{c.p}/{c.q}"))
        else:
            out.append(field(int(c)))
    return out


def _candidates(S: _Semisimple, rng, budget: int):
    F = S.field
    n = S.dim
    for b in range(n):
        e = F.zeros(n)
        e[b] = F(1)
        yield e
    for _ in range(budget):
        yield F.array(rng.integers(-3, 4, size=n).tolist())


def _idempotent_in_semisimple(S: _Semisimple, rng, budget: int = 24):
    """A nontrivial idempotent of ``S`` or None if none was found."""
    F = S.field
    one = S.one()
    for x in _candidates(S, rng, budget):
        if la.is_zero(x):
            continue
        L = S.left_matrix(x)
        r = la.rank(L, F)
        zero_div = None
        if 0 < r < S.dim:
            zero_div = x
        else:
            coeffs = S.min_poly(x)
            if len(coeffs) > 2:
                poly, _ = _sympy_poly(coeffs, F)
                factors = poly.factor_list()[1]
                if len(factors) > 1:
                    g = _poly_coeffs(factors[0][0] ** factors[0][1], F)
                    zero_div = S.poly_eval(g, x)
        if zero_div is None:
            continue
        # right identity of the left ideal S * zero_div
        n = S.dim
        cols = [S.mul(_unit(F, n, b), zero_div) for b in range(n)]
        Lbasis, _ = la.canonical_basis(np.array(cols, dtype=object).T, F)
        k = Lbasis.shape[1]
        if k == 0 or k == n:
            continue
        # unknown c: e = Lbasis c; equations l_j e = l_j
        eqs, rhs = [], []
        for j in range(k):
            lj = Lbasis[:, j]
            Lm = S.left_matrix(lj)
            eqs.append(F.dot(Lm, Lbasis))
            rhs.append(lj)
        c = la.solve(np.vstack(eqs), np.concatenate(rhs), F)
        if c is None:
            continue
        e = F.dot(Lbasis, c)
        if not la.is_zero(e) and np.any(e != one):
            return e
    return None


def _unit(F, n, b):
    e = F.zeros(n)
    e[b] = F(1)
    return e


def _lift_idempotent(E: EndAlgebra, x: np.ndarray) -> np.ndarray:
    F = E.field
    for _ in range(64):
        x2 = E.mul(x, x)
        if not np.any(x2 != x):
            return x
        x3 = E.mul(x2, x)
        x = F.norm(3 * x2 - 2 * x3)
    raise RuntimeError("idempotent lifting did not converge")


@dataclass
class Summand:
    module: Representation
    inclusion: Morphism
    projection: Morphism


@dataclass
class Decomposition:
    """Indecomposable summands with inclusions and projections, and the
    grouping of summands into isomorphism classes."""

    module: Representation
    summands: list
    classes: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, k):
        return self.summands[k]

    @property
    def multiplicities(self):
        return [len(c) for c in self.classes]

    def modules(self):
        return [s.module for s in self.summands]


def _split(M: Representation, rng, budget):
    if M.dim == 0:
        return []
    E = EndAlgebra(M)
    if E.is_local():
        return [Summand(M, identity(M), identity(M))]
    S = _Semisimple(E)
    e_bar = _idempotent_in_semisimple(S, rng, budget)
    if e_bar is None:
        return [Summand(M, identity(M), identity(M))]
    F = E.field
    e = _lift_idempotent(E, F.dot(S.s, e_bar))
    out = []
    for coords in (e, F.norm(E.one() - e)):
        f = E.element(coords)
        U, inc, cores = image(f)
        for piece in _split(U, rng, budget):
            out.append(Summand(piece.module, inc @ piece.inclusion, piece.projection @ cores))
    return out


def decompose(M: Representation, seed: int = 0, budget: int = 24) -> Decomposition:
    """Krull-Schmidt decomposition of ``M``.

    Summands come with inclusion and projection morphisms whose composites
    are the identity on each summand.  Endomorphism rings whose semisimple
    quotient is a division algebra of dimension above one are recognized by
    a bounded search for zero divisors."""
    rng = np.random.default_rng(seed)
    summands = _split(M, rng, budget)
    classes: list = []
    for k, s in enumerate(summands):
        for c in classes:
            if _indecomposables_isomorphic(summands[c[0]].module, s.module) is not None:
                c.append(k)
                break
        else:
            classes.append([k])
    return Decomposition(M, summands, classes)


def end_algebra(M: Representation) -> EndAlgebra:
    return EndAlgebra(M)


def is_indecomposable(M: Representation, seed: int = 0) -> bool:
    if M.dim == 0:
        raise ZeroModule("the zero module is neither decomposable nor indecomposable")
    E = EndAlgebra(M)
    if E.is_local():
        return True
    S = _Semisimple(E)
    return _idempotent_in_semisimple(S, np.random.default_rng(seed)) is None


def _indecomposables_isomorphic(X: Representation, Y: Representation):
    """An isomorphism between indecomposables or None."""
    if X.dims != Y.dims:
        return None
    H1 = hom_basis(X, Y)
    if len(H1) == 0:
        return None
    H2 = hom_basis(Y, X)
    for f in H1:
        if f.is_iso():
            return f
    for g in H2:
        for f in H1:
            if (g @ f).is_iso():
                return f
    return None


def _sweep(M, N, budget=256, seed=0):
    H = hom_basis(M, N)
    if len(H) == 0:
        return None
    for f in H:
        if f.is_iso():
            return f
    F = M.field
    rng = np.random.default_rng(seed)
    pool = [0, 1, -1, 2]
    for _ in range(budget):
        c = [pool[k] for k in rng.integers(0, len(pool), size=len(H))]
        f = H.combine([F(x) for x in c])
        if f.is_iso():
            return f
    return None


def find_isomorphism(M: Representation, N: Representation, budget: int = 64):
    """An isomorphism ``M -> N`` or None.

    A deterministic sweep over small combinations of a Hom basis is tried
    first; if it finds nothing both modules are decomposed and the summands
    matched, which is decisive."""
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return Morphism(M, N, list(identity(M).mats))
    f = _sweep(M, N, budget)
    if f is not None:
        return f
    dM, dN = decompose(M), decompose(N)
    if len(dM) != len(dN):
        return None
    used = set()
    total = None
    for sm in dM:
        for k, sn in enumerate(dN):
            if k in used:
                continue
            h = _indecomposables_isomorphic(sm.module, sn.module)
            if h is not None:
                used.add(k)
                piece = sn.inclusion @ h @ sm.projection
                total = piece if total is None else total + piece
                break
        else:
            return None
    return total


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return find_isomorphism(M, N) is not None
