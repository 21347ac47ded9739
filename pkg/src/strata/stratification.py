"""Stratifying systems, filtrations, Ext-projective systems and standard
modules.

Indices of a system are 0-based in the Python API.  Reports and error
messages use 1-based labels, matching the usual mathematical notation.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import linalg as la
from .decomposition import EndAlgebra, is_indecomposable, is_isomorphic
from .homology import ShortExact, ext_dim, universal_extension
from .presentation import BoundQuiverAlgebra
from .repcat import (
    Morphism,
    Representation,
    ZeroModule,
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    identity,
    kernel,
    is_projective,
    projective,
    projective_sum,
    quotient,
    simple,
    trace_submodule,
)


def default_seed(seed=None) -> int:
    """``seed`` if given, else ``$STRATA_SEED``, else 0."""
    if seed is not None:
        return int(seed)
    return int(os.environ.get("STRATA_SEED", "0"))


class StrataError(ValueError):
    pass


class SSViolation(StrataError):
    pass


class NotIndecomposable(SSViolation):
    def __init__(self, i):
        super().__init__(f"Theta({i + 1}) is not indecomposable")
        self.i = i


class HomViolation(SSViolation):
    def __init__(self, i, j, dim):
        super().__init__(f"Hom(Theta({i + 1}), Theta({j + 1})) has dimension {dim}")
        self.i, self.j, self.dim = i, j, dim


class ExtViolation(SSViolation):
    def __init__(self, i, j, dim):
        super().__init__(f"Ext^1(Theta({i + 1}), Theta({j + 1})) has dimension {dim}")
        self.i, self.j, self.dim = i, j, dim


class NotFiltered(StrataError):
    """No filtration was found.  ``depth`` is the deepest level the search
    reached; ``exhaustive`` says whether every embedding was enumerated
    (possible over small finite fields), in which case the answer is a proof."""

    def __init__(self, message, depth=0, nodes=0, exhaustive=False):
        super().__init__(message)
        self.depth, self.nodes, self.exhaustive = depth, nodes, exhaustive


class NonTermination(StrataError):
    pass


class HypothesisFailed(StrataError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------- orders


class LinearOrder:
    """A linear order on ``{0, ..., t-1}`` given by listing the elements from
    smallest to largest."""

    def __init__(self, sequence):
        seq = [int(x) for x in sequence]
        if sorted(seq) != list(range(len(seq))):
            raise ValueError(f"not a permutation of 0..{len(seq) - 1}: {seq}")
        self.sequence = tuple(seq)
        self.rank = {x: r for r, x in enumerate(seq)}

    @classmethod
    def natural(cls, t: int) -> "LinearOrder":
        return cls(range(t))

    @classmethod
    def from_labels(cls, labels) -> "LinearOrder":
        """From 1-based labels, smallest first."""
        return cls([int(x) - 1 for x in labels])

    def __len__(self):
        return len(self.sequence)

    def lt(self, i, j) -> bool:
        return self.rank[i] < self.rank[j]

    def le(self, i, j) -> bool:
        return self.rank[i] <= self.rank[j]

    def gt(self, i, j) -> bool:
        return self.rank[i] > self.rank[j]

    def ge(self, i, j) -> bool:
        return self.rank[i] >= self.rank[j]

    def sorted(self, indices=None, reverse=False) -> list:
        idx = self.sequence if indices is None else indices
        return sorted(idx, key=lambda x: self.rank[x], reverse=reverse)

    def greater(self, i) -> list:
        return [j for j in self.sequence if self.rank[j] > self.rank[i]]

    def reversed(self) -> "LinearOrder":
        return LinearOrder(self.sequence[::-1])

    def labels(self) -> list:
        return [x + 1 for x in self.sequence]

    def __eq__(self, other):
        return isinstance(other, LinearOrder) and self.sequence == other.sequence

    def __hash__(self):
        return hash(self.sequence)

    def __repr__(self):
        return "LinearOrder(" + " < ".join(str(x + 1) for x in self.sequence) + ")"


def _as_order(order, t) -> LinearOrder:
    if order is None:
        return LinearOrder.natural(t)
    if isinstance(order, LinearOrder):
        if len(order) != t:
            raise ValueError("order has the wrong size")
        return order
    return LinearOrder(order)


# ---------------------------------------------------------------- reports


@dataclass
class CheckReport:
    """Outcome of an executable check.  ``status`` is one of ``pass``,
    ``fail``, ``hypothesis_failed`` or ``error``."""

    check: str
    status: str
    data: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    objects: dict = dc_field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "data": _jsonable(self.data),
                "witnesses": _jsonable(self.witnesses)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return str(x)


# ---------------------------------------------------------------- stratifying systems


class StratifyingSystem:
    """A family ``Theta`` with a linear order, together with the Hom and
    Ext^1 tables used to test the axioms.

    ``hom[i][j] = dim Hom(Theta(i), Theta(j))``, likewise ``ext1``.
    """

    def __init__(self, thetas, order, hom, ext1, indecomposable, violations):
        self.thetas = list(thetas)
        self.order = order
        self.hom = hom
        self.ext1 = ext1
        self.indecomposable = indecomposable
        self.violations = violations
        self.algebra = self.thetas[0].algebra

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def t(self) -> int:
        return len(self.thetas)

    def __len__(self):
        return len(self.thetas)

    def __getitem__(self, i):
        return self.thetas[i]

    def report(self) -> CheckReport:
        return CheckReport(
            "check_ss",
            "pass" if self.valid else "fail",
            {"t": self.t, "order": self.order.labels(), "hom": self.hom, "ext1": self.ext1,
             "indecomposable": self.indecomposable},
            [_violation_witness(v) for v in self.violations],
        )


def _violation_witness(v):
    if isinstance(v, NotIndecomposable):
        return {"axiom": "indecomposable", "i": v.i + 1}
    kind = "hom" if isinstance(v, HomViolation) else "ext1"
    return {"axiom": kind, "i": v.i + 1, "j": v.j + 1, "dim": v.dim}


def check_ss(thetas, order=None, strict: bool = False, seed=None) -> StratifyingSystem:
    """Test the stratifying-system axioms for ``(Theta, order)``:
    every ``Theta(i)`` indecomposable, ``Hom(Theta(i), Theta(j)) = 0`` for
    ``i > j`` and ``Ext^1(Theta(i), Theta(j)) = 0`` for ``i >= j``.

    All violations are collected; with ``strict`` the first one is raised."""
    thetas = list(thetas)
    if not thetas:
        raise ValueError("a stratifying system needs t >= 1")
    A = thetas[0].algebra
    if any(T.algebra is not A for T in thetas):
        raise ValueError("modules over different algebras")
    t = len(thetas)
    order = _as_order(order, t)
    seed = default_seed(seed)
    violations = []
    indec = []
    for i, T in enumerate(thetas):
        try:
            ok = is_indecomposable(T, seed=seed)
        except ZeroModule:
            ok = False
        indec.append(ok)
        if not ok:
            violations.append(NotIndecomposable(i))
    hom = [[None] * t for _ in range(t)]
    ext1 = [[None] * t for _ in range(t)]
    for i in range(t):
        for j in range(t):
            hom[i][j] = hom_dim(thetas[i], thetas[j])
            ext1[i][j] = ext_dim(1, thetas[i], thetas[j])
            if order.gt(i, j) and hom[i][j]:
                violations.append(HomViolation(i, j, hom[i][j]))
            if order.ge(i, j) and ext1[i][j]:
                violations.append(ExtViolation(i, j, ext1[i][j]))
    if strict and violations:
        raise violations[0]
    return StratifyingSystem(thetas, order, hom, ext1, indec, violations)


# ---------------------------------------------------------------- filtrations


@dataclass
class FiltrationCertificate:
    """A Theta-filtration found by search.

    ``steps[k] = (i, f, X)``: ``f: Theta(i) -> X`` is injective, ``X`` is the
    module left after removing the first ``k`` factors, and the next module
    is ``coker f``.  Factors are listed bottom first."""

    module: Representation
    thetas: list
    steps: list
    multiplicities: list

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    @property
    def indices(self) -> list:
        return [i for i, _, _ in self.steps]

    def verify(self) -> bool:
        X = self.module
        dv = [0] * len(X.dims)
        for i, f, Y in self.steps:
            if Y.dims != X.dims or not all(la.is_zero(X.field.norm(np.asarray(a, dtype=object) - b))
                                           for a, b in zip(Y.maps, X.maps)):
                return False
            f.validate()
            if f.source is not self.thetas[i] and f.source.dims != self.thetas[i].dims:
                return False
            if not f.is_injective():
                return False
            X, _ = cokernel(f)
            dv = [a + b for a, b in zip(dv, self.thetas[i].dims)]
        if X.dim != 0 or dv != list(self.module.dims):
            return False
        mult = [0] * len(self.thetas)
        for i in self.indices:
            mult[i] += 1
        return mult == list(self.multiplicities)


def _feasible_factory(dvs):
    t = len(dvs)

    @lru_cache(maxsize=None)
    def feasible(target, start=0):
        if all(x == 0 for x in target):
            return True
        for k in range(start, t):
            if any(dvs[k]) and all(a <= b for a, b in zip(dvs[k], target)):
                rest = tuple(b - a for a, b in zip(dvs[k], target))
                if feasible(rest, k):
                    return True
        return False

    return feasible


def _image_key(f: Morphism):
    F = f.field
    key = []
    for m in f.mats:
        B, _ = la.canonical_basis(m, F) if m.size else (m, None)
        key.append(tuple(str(x) for x in np.asarray(B).ravel()) + (np.asarray(B).shape,))
    return tuple(key)


def _embeddings(T: Representation, X: Representation, rng, exhaustive_limit: int, random_tries: int):
    """Injective maps ``T -> X`` (distinct images) from a Hom basis.

    Over F_p with ``p^d <= exhaustive_limit`` every line of ``Hom(T, X)`` is
    enumerated; otherwise basis elements, their sum and seeded random
    combinations are tried.  The second value reports exhaustiveness."""
    H = hom_basis(T, X)
    d = len(H)
    if d == 0:
        return [], True
    F = X.field
    p = F.char
    cands = []
    exhaustive = False
    if p and p ** d <= exhaustive_limit:
        exhaustive = True
        for c in itertools.product(range(p), repeat=d):
            nz = [x for x in c if x]
            if nz and nz[0] == 1:
                cands.append(c)
    else:
        cands.append((1,) * d)
        for k in range(d):
            cands.append(tuple(1 if m == k else 0 for m in range(d)))
        for _ in range(random_tries):
            cands.append(tuple(int(x) for x in rng.integers(-3, 4, size=d)))
    out, seen = [], set()
    for c in cands:
        f = H.combine(c)
        if not f.is_injective():
            continue
        key = _image_key(f)
        if key in seen:
            continue
        seen.add(key)
        out.append(f)
    return out, exhaustive


def theta_filtration(M: Representation, thetas, order=None, indices=None, seed=None,
                     reverse: bool = False, max_nodes: int = 5000, exhaustive_limit: int = 4096,
                     random_tries: int = 6) -> FiltrationCertificate:
    """Search for a filtration of ``M`` with factors in ``Theta``.

    Backtracking over (index, embedding) pairs, bottom factor first.  Indices
    are tried order-maximal first (``reverse`` flips this heuristic) and
    branches whose dimension vector is not a non-negative integer
    combination of the allowed dimension vectors are pruned.  ``indices``
    restricts the allowed factors.  Raises :class:`NotFiltered`."""
    thetas = list(thetas)
    t = len(thetas)
    order = _as_order(order, t)
    allowed = list(range(t)) if indices is None else list(indices)
    try_order = order.sorted(allowed, reverse=not reverse)
    dvs = [tuple(T.dims) for T in thetas]
    feasible = _feasible_factory(tuple(dvs[k] for k in try_order))
    rng = np.random.default_rng(default_seed(seed))
    stats = {"nodes": 0, "depth": 0, "exhaustive": True}

    def search(X, depth):
        stats["depth"] = max(stats["depth"], depth)
        if X.dim == 0:
            return []
        if not feasible(tuple(X.dims)):
            return None
        for i in try_order:
            T = thetas[i]
            if not all(a <= b for a, b in zip(T.dims, X.dims)) or T.dim == 0:
                continue
            if not feasible(tuple(b - a for a, b in zip(T.dims, X.dims))):
                continue
            embs, exh = _embeddings(T, X, rng, exhaustive_limit, random_tries)
            stats["exhaustive"] &= exh
            for f in embs:
                stats["nodes"] += 1
                if stats["nodes"] > max_nodes:
                    raise NotFiltered(f"search budget of {max_nodes} nodes exhausted", stats["depth"],
                                      stats["nodes"], False)
                C, _ = cokernel(f)
                rest = search(C, depth + 1)
                if rest is not None:
                    return [(i, f, X)] + rest
        return None

    steps = search(M, 0)
    if steps is None:
        raise NotFiltered(
            f"no Theta-filtration found (search depth {stats['depth']}, {stats['nodes']} nodes)",
            stats["depth"], stats["nodes"], stats["exhaustive"],
        )
    mult = [0] * t
    for i, _, _ in steps:
        mult[i] += 1
    return FiltrationCertificate(M, thetas, steps, mult)


def is_filtered(M, thetas, order=None, **kw) -> bool:
    try:
        theta_filtration(M, thetas, order, **kw)
        return True
    except NotFiltered:
        return False


# ---------------------------------------------------------------- standard modules


def standard_modules(A: BoundQuiverAlgebra, order=None) -> list:
    """``Delta(i) = P(i) / Tr_{P(>i)}(P(i))`` for an order on the vertices."""
    n = A.n_vertices
    order = _as_order(order, n)
    out = []
    for i in range(n):
        P = projective(A, i)
        bigger = order.greater(i)
        if not bigger:
            out.append(P)
            continue
        Tr, inc = trace_submodule(projective_sum(A, bigger), P)
        D, _ = quotient(P, inc.mats)
        out.append(D)
    return out


def is_ss_algebra(A: BoundQuiverAlgebra, order=None, seed=None) -> bool:
    """Every indecomposable projective is Delta-filtered."""
    order = _as_order(order, A.n_vertices)
    D = standard_modules(A, order)
    return all(is_filtered(projective(A, i), D, order, seed=seed) for i in range(A.n_vertices))


def is_quasi_hereditary(A: BoundQuiverAlgebra, order=None, seed=None) -> bool:
    """Standardly stratified and every ``End(Delta(i))`` has zero radical."""
    order = _as_order(order, A.n_vertices)
    if not is_ss_algebra(A, order, seed):
        return False
    return all(EndAlgebra(D).radical().shape[1] == 0 for D in standard_modules(A, order))


# ---------------------------------------------------------------- Ext-projective systems


@dataclass
class Epss:
    """``(Theta, Q, order)`` with ``eps[i]: 0 -> K(i) -> Q(i) -> Theta(i) -> 0``."""

    system: StratifyingSystem
    Q: list
    K: list
    eps: list

    @property
    def total(self) -> Representation:
        return direct_sum(*self.Q)[0]

    def verify(self, seed=None) -> dict:
        """Re-check every invariant from scratch."""
        ss = self.system
        t = ss.t
        exact = [e.verify() for e in self.eps]
        indec = []
        for Qi in self.Q:
            try:
                indec.append(is_indecomposable(Qi, seed=default_seed(seed)))
            except ZeroModule:
                indec.append(False)
        filtered = [is_filtered(self.K[i], ss.thetas, ss.order, indices=ss.order.greater(i), seed=seed)
                    for i in range(t)]
        ext_table = [[ext_dim(1, self.Q[i], ss.thetas[j]) for j in range(t)] for i in range(t)]
        ext_ok = all(x == 0 for row in ext_table for x in row)
        return {
            "exact": exact,
            "Q_indecomposable": indec,
            "K_filtered": filtered,
            "ext1_Q_theta": ext_table,
            "ok": all(exact) and all(indec) and all(filtered) and ext_ok,
        }


def build_epss(ss: StratifyingSystem, require_valid: bool = True, max_rounds: int = 64) -> Epss:
    """Ext-projective system of ``ss`` by iterated universal extensions.

    ``Q(i)`` starts as ``Theta(i)``; for ``j > i`` taken in increasing order
    ``Q(i)`` is replaced by the universal extension of ``Q(i)`` by
    ``Theta(j)``.  An extension by ``Theta(j)`` can only create Ext^1 with
    larger indices, so one increasing pass reaches the fixed point for a
    stratifying system; the loop repeats until every ``Ext^1(Q(i),
    Theta(j))`` with ``j > i`` vanishes and raises :class:`NonTermination`
    after ``max_rounds``."""
    if require_valid and not ss.valid:
        raise HypothesisFailed("build_epss needs a stratifying system", ss.report())
    Qs, Ks, eps = [], [], []
    for i in range(ss.t):
        Q = ss.thetas[i]
        p = identity(Q)
        for _ in range(max_rounds):
            changed = False
            for j in ss.order.greater(i):
                if ext_dim(1, Q, ss.thetas[j]):
                    e = universal_extension(Q, ss.thetas[j])
                    Q, p = e.B, p @ e.v
                    changed = True
            if not changed:
                break
        else:
            raise NonTermination(f"Q({i + 1}) did not stabilize after {max_rounds} rounds")
        K, inc = kernel(p)
        Qs.append(Q)
        Ks.append(K)
        eps.append(ShortExact(K, Q, ss.thetas[i], inc, p))
    return Epss(ss, Qs, Ks, eps)


# ---------------------------------------------------------------- lifting along G


def _status(hypothesis: bool, ok: bool) -> str:
    if not hypothesis:
        return "hypothesis_failed"
    return "pass" if ok else "fail"


def _ideal_projective(ext) -> bool:
    return is_projective(ext.ideal_right_lambda())


def compat_lambda_check(ext, ss: StratifyingSystem) -> CheckReport:
    """Compatibility of a system over Lambda with the ideal:
    ``Hom(Theta(j), I (x) Theta(i)) = 0`` for ``j > i`` (C1) and
    ``Ext^1(Theta(j), I (x) Theta(i)) = 0`` for ``j >= i`` (C2).

    Tables are indexed ``[j][i]``.  If the axioms of a stratifying system
    fail the status is ``hypothesis_failed`` and the tables are still
    reported."""
    th, order, t = ss.thetas, ss.order, ss.t
    IT = [ext.ideal_tensor_lambda(T) for T in th]
    c1 = [[hom_dim(th[j], IT[i]) for i in range(t)] for j in range(t)]
    c2 = [[ext_dim(1, th[j], IT[i]) for i in range(t)] for j in range(t)]
    wit = []
    for j in range(t):
        for i in range(t):
            if order.gt(j, i) and c1[j][i]:
                wit.append({"condition": "C1", "j": j + 1, "i": i + 1, "dim": c1[j][i]})
            if order.ge(j, i) and c2[j][i]:
                wit.append({"condition": "C2", "j": j + 1, "i": i + 1, "dim": c2[j][i]})
    compatible = not wit
    return CheckReport(
        "compat_lambda",
        _status(ss.valid, compatible),
        {"C1_hom": c1, "C2_ext1": c2, "compatible": compatible, "ss_valid": ss.valid,
         "tensor_dims": [list(T.dims) for T in IT]},
        wit,
        {"tensor": IT},
    )


def lift_G(ext, thetas, order=None, seed=None) -> CheckReport:
    """Compare "(G Theta, order) is a stratifying system over Gamma" with
    "(Theta, order) is a stratifying system compatible with I".  The two
    are equivalent when ``I`` is projective as a right Lambda-module.

    ``objects["lifted"]`` is the system over Gamma."""
    hyp = _ideal_projective(ext)
    ss_l = check_ss(thetas, order, seed=seed)
    comp = compat_lambda_check(ext, ss_l)
    GT = [ext.G(T) for T in ss_l.thetas]
    ss_g = check_ss(GT, ss_l.order, seed=seed)
    lhs = ss_g.valid
    rhs = ss_l.valid and comp.data["compatible"]
    bicond = lhs == rhs
    status = "hypothesis_failed" if not hyp else ("pass" if bicond and lhs else "fail")
    return CheckReport(
        "lift_G",
        status,
        {"ideal_right_projective": hyp, "lifted_is_ss": lhs, "ss_and_compatible": rhs,
         "biconditional_holds": bicond, "lifted_dims": [list(G.dims) for G in GT]},
        ss_g.report().witnesses + comp.witnesses,
        {"lifted": ss_g, "system": ss_l, "compat": comp},
    )


def admissible_check(ext, order=None) -> CheckReport:
    """``[I (x) S(i) : S(j)] = 0`` for ``j > i``; ``table[i][j]`` is that
    multiplicity."""
    L = ext.lam
    n = L.n_vertices
    order = _as_order(order, n)
    table = [list(ext.ideal_tensor_lambda(simple(L, i)).dims) for i in range(n)]
    wit = [{"i": i + 1, "j": j + 1, "mult": table[i][j]}
           for i in range(n) for j in range(n) if order.gt(j, i) and table[i][j]]
    return CheckReport("admissible", "pass" if not wit else "fail",
                       {"table": table, "admissible": not wit, "order": order.labels()}, wit)


def admissible_vs_compat(ext, order=None, seed=None) -> CheckReport:
    """Admissibility against compatibility of the canonical system.

    Asserted when I is right projective: admissibility iff
    ``[I (x) Delta(i) : S(j)] = 0`` for ``j > i``; admissible implies
    ``(Delta, order)`` compatible; and for a standardly stratified Lambda
    compatible implies admissible."""
    L = ext.lam
    n = L.n_vertices
    order = _as_order(order, n)
    hyp = _ideal_projective(ext)
    adm = admissible_check(ext, order)
    D = standard_modules(L, order)
    tdims = [list(ext.ideal_tensor_lambda(d).dims) for d in D]
    delta_side = all(tdims[i][j] == 0 for i in range(n) for j in range(n) if order.gt(j, i))
    ss = check_ss(D, order, seed=seed)
    comp = compat_lambda_check(ext, ss)
    compatible = comp.data["compatible"]
    ss_alg = is_ss_algebra(L, order, seed)
    admissible = adm.data["admissible"]
    aux = admissible == delta_side
    cond_a = (not admissible) or compatible
    cond_b = (not (ss_alg and compatible)) or admissible
    ok = aux and cond_a and cond_b
    return CheckReport(
        "admissible_vs_compat",
        _status(hyp, ok),
        {"ideal_right_projective": hyp, "admissible": admissible, "delta_tensor_condition": delta_side,
         "equivalence_holds": aux, "delta_compatible": compatible, "lambda_ss_algebra": ss_alg,
         "admissible_implies_compatible": cond_a, "compatible_implies_admissible": cond_b,
         "table": adm.data["table"]},
        adm.witnesses + comp.witnesses,
    )


def epss_lift_condition(ext, epss: Epss, seed=None) -> CheckReport:
    """``Ext^1(Q, I (x) Theta) = 0`` against "(G Theta, G Q, order) is the
    Ext-projective system over Gamma", whose invariants are checked
    directly.  Also: ``I (x) Theta`` filtered by Theta forces the vanishing."""
    ss = epss.system
    t = ss.t
    comp = compat_lambda_check(ext, ss)
    hyp = _ideal_projective(ext) and ss.valid and comp.data["compatible"]
    IT = comp.objects["tensor"]
    ext_table = [[ext_dim(1, epss.Q[i], IT[j]) for j in range(t)] for i in range(t)]
    cond = all(x == 0 for row in ext_table for x in row)
    GT = [ext.G(T) for T in ss.thetas]
    GQ = [ext.G(Q) for Q in epss.Q]
    GK = [ext.G(K) for K in epss.K]
    g_exact = []
    for i, e in enumerate(epss.eps):
        u = ext.G_morphism(e.u, GK[i], GQ[i])
        v = ext.G_morphism(e.v, GQ[i], GT[i])
        g_exact.append(ShortExact(GK[i], GQ[i], GT[i], u, v).verify())
    ss_g = check_ss(GT, ss.order, seed=seed)
    g_indec = [is_indecomposable(Q, seed=default_seed(seed)) for Q in GQ]
    g_filtered = [is_filtered(GK[i], GT, ss.order, indices=ss.order.greater(i), seed=seed) for i in range(t)]
    g_ext = [[ext_dim(1, GQ[i], GT[j]) for j in range(t)] for i in range(t)]
    g_ext_ok = all(x == 0 for row in g_ext for x in row)
    is_epss = ss_g.valid and all(g_exact) and all(g_indec) and all(g_filtered) and g_ext_ok
    bicond = cond == is_epss
    in_f = [is_filtered(X, ss.thetas, ss.order, seed=seed) for X in IT]
    remark = (not all(in_f)) or cond
    wit = [{"i": i + 1, "j": j + 1, "dim": ext_table[i][j]} for i in range(t) for j in range(t) if ext_table[i][j]]
    return CheckReport(
        "epss_lift_condition",
        _status(hyp, bicond and remark),
        {"ext1_Q_tensor": ext_table, "condition_holds": cond, "gamma_is_epss": is_epss,
         "gamma_invariants": {"ss": ss_g.valid, "exact": g_exact, "indecomposable": g_indec,
                              "K_filtered": g_filtered, "ext1_GQ_Gtheta": g_ext},
         "biconditional_holds": bicond, "tensor_in_F_theta": in_f, "filtered_implies_vanishing": remark,
         "ideal_right_projective": _ideal_projective(ext), "ss_valid": ss.valid,
         "compatible": comp.data["compatible"]},
        wit,
        {"G_theta": GT, "G_Q": GQ},
    )


def gequiv_check(ext, epss: Epss, samples: int = 100, seed=None, max_length: int = 3) -> CheckReport:
    """Sampled evidence that ``G`` restricts to an exact equivalence
    ``F(Theta) -> F(G Theta)`` under ``Hom(Theta, I (x) Theta) = 0 =
    Ext^1(Q, I (x) Theta)``.

    After the hypothesis gate each sample draws a random iterated extension
    ``M`` of Theta-modules and a random iterated extension ``X`` of
    G Theta-modules.  Fullness: ``dim Hom(GM, GN) = dim Hom(M, N)`` for
    consecutive samples.  Density and extension closure: ``X = G F X`` up
    to isomorphism with ``F X`` Theta-filtered.  This is evidence, not
    proof."""
    from .decomposition import find_isomorphism
    from .sampling import random_filtered

    ss = epss.system
    t = ss.t
    proj = _ideal_projective(ext)
    IT = [ext.ideal_tensor_lambda(T) for T in ss.thetas]
    hom_t = [[hom_dim(ss.thetas[j], IT[i]) for i in range(t)] for j in range(t)]
    ext_q = [[ext_dim(1, epss.Q[j], IT[i]) for i in range(t)] for j in range(t)]
    wit = [{"vanishing": "hom", "j": j + 1, "i": i + 1, "dim": hom_t[j][i]}
           for j in range(t) for i in range(t) if hom_t[j][i]]
    wit += [{"vanishing": "ext1_Q", "j": j + 1, "i": i + 1, "dim": ext_q[j][i]}
            for j in range(t) for i in range(t) if ext_q[j][i]]
    data = {"ideal_right_projective": proj, "hom_theta_tensor": hom_t, "ext1_Q_tensor": ext_q,
            "sampled": True, "samples": 0}
    if not proj or wit:
        return CheckReport("gequiv", "hypothesis_failed", data, wit)
    rng = np.random.default_rng(default_seed(seed))
    GT = [ext.G(T) for T in ss.thetas]
    full_fail, dense_fail = [], []
    prev = None
    for k in range(samples):
        M = random_filtered(rng, ss.thetas, int(rng.integers(1, max_length + 1)))
        if prev is not None:
            GM, GN = ext.G(prev), ext.G(M)
            if hom_dim(GM, GN) != hom_dim(prev, M):
                full_fail.append(k)
        prev = M
        X = random_filtered(rng, GT, int(rng.integers(1, max_length + 1)))
        FX = ext.F(X)
        if find_isomorphism(X, ext.G(FX)) is None or not is_filtered(FX, ss.thetas, ss.order, seed=seed):
            dense_fail.append(k)
    data.update({"samples": samples, "fullness_failures": full_fail, "density_failures": dense_fail})
    wit = [{"sample": k, "property": "full"} for k in full_fail] + [{"sample": k, "property": "dense"}
                                                                   for k in dense_fail]
    return CheckReport("gequiv", "pass" if not wit else "fail", data, wit)


def canonical_delta_lift_check(ext, order=None, samples: int = 10, seed=None) -> CheckReport:
    """Standard modules under G: ``G Delta_Lambda(i) = Delta_Gamma(i)``;
    Lambda is standardly stratified (quasi-hereditary) iff Gamma is; G maps
    Delta-filtered modules to G Delta-filtered ones and ``Tor_1(Lambda,
    X) = 0`` for G Delta-filtered ``X`` (sampled)."""
    from .decomposition import find_isomorphism
    from .homology import tor_dims
    from .sampling import random_filtered

    L, G = ext.lam, ext.gamma
    n = L.n_vertices
    order = _as_order(order, n)
    DL = standard_modules(L, order)
    DG = standard_modules(G, order)
    comp = compat_lambda_check(ext, check_ss(DL, order, seed=seed))
    hyp = _ideal_projective(ext) and comp.data["compatible"]
    GD = [ext.G(D) for D in DL]
    iso = [find_isomorphism(GD[i], DG[i]) is not None for i in range(n)]
    ssL, ssG = is_ss_algebra(L, order, seed), is_ss_algebra(G, order, seed)
    qhL, qhG = is_quasi_hereditary(L, order, seed), is_quasi_hereditary(G, order, seed)
    rng = np.random.default_rng(default_seed(seed))
    transport, tor = [], []
    for _ in range(samples):
        M = random_filtered(rng, DL, int(rng.integers(1, 4)))
        transport.append(is_filtered(ext.G(M), GD, order, seed=seed))
        X = random_filtered(rng, GD, int(rng.integers(1, 4)))
        tor.append(tor_dims(ext.functor_F, X, 1)[1] == 0)
    ok = all(iso) and ssL == ssG and qhL == qhG and all(transport) and all(tor)
    wit = [{"i": i + 1, "iso": False} for i in range(n) if not iso[i]]
    return CheckReport(
        "canonical_delta_lift",
        _status(hyp, ok),
        {"G_delta_iso": iso, "lambda_ss": ssL, "gamma_ss": ssG, "lambda_qh": qhL, "gamma_qh": qhG,
         "ss_biconditional": ssL == ssG, "qh_biconditional": qhL == qhG, "sampled": True,
         "transport": transport, "tor1_vanishes": tor, "compatible": comp.data["compatible"],
         "ideal_right_projective": _ideal_projective(ext)},
        wit,
    )


# ---------------------------------------------------------------- restriction along F


def _ideal_tensor_gamma(ext, M: Representation) -> Representation:
    from .extension import tensor_bimodule

    return tensor_bimodule(ext.bimodule("I_GG"), M).module


def _lambda_projective(ext) -> bool:
    return is_projective(ext.lambda_right_gamma())


def compat_gamma_check(ext, ss: StratifyingSystem) -> CheckReport:
    """Compatibility of a system over Gamma:
    ``Ext^1(Psi(j), I (x)_Gamma Psi(i)) = 0`` for ``j > i`` (C1) and
    ``Ext^2(Psi(j), I (x)_Gamma Psi(i)) = 0`` for ``j >= i`` (C2).

    The hypothesis is that Lambda is projective as a right Gamma-module."""
    th, order, t = ss.thetas, ss.order, ss.t
    hyp = _lambda_projective(ext)
    IT = [_ideal_tensor_gamma(ext, P) for P in th]
    c1 = [[ext_dim(1, th[j], IT[i]) for i in range(t)] for j in range(t)]
    c2 = [[ext_dim(2, th[j], IT[i]) for i in range(t)] for j in range(t)]
    wit = []
    for j in range(t):
        for i in range(t):
            if order.gt(j, i) and c1[j][i]:
                wit.append({"condition": "C1", "j": j + 1, "i": i + 1, "dim": c1[j][i]})
            if order.ge(j, i) and c2[j][i]:
                wit.append({"condition": "C2", "j": j + 1, "i": i + 1, "dim": c2[j][i]})
    compatible = not wit
    R = ext.lambda_right_gamma()
    return CheckReport(
        "compat_gamma",
        _status(hyp and ss.valid, compatible),
        {"lambda_right_projective": hyp, "lambda_right_dims": list(R.dims), "C1_ext1": c1, "C2_ext2": c2,
         "compatible": compatible, "ss_valid": ss.valid, "tensor_dims": [list(T.dims) for T in IT]},
        wit,
        {"tensor": IT},
    )


def restrict_F(ext, ss: StratifyingSystem, seed=None) -> CheckReport:
    """Restrict a system over Gamma through F: every choice of an
    indecomposable summand of each ``F(Psi(i))`` (up to isomorphism) is
    tested with :func:`check_ss`.  ``objects["systems"]`` lists the valid
    ones."""
    from .decomposition import decompose

    comp = compat_gamma_check(ext, ss)
    hyp = comp.data["lambda_right_projective"] and ss.valid and comp.data["compatible"]
    FP = [ext.F(P) for P in ss.thetas]
    choices = []
    for X in FP:
        if X.dim == 0:
            choices.append([])
            continue
        dec = decompose(X, seed=default_seed(seed))
        choices.append([dec.summands[c[0]].module for c in dec.classes])
    systems, verdicts = [], []
    for tup in itertools.product(*choices):
        s = check_ss(list(tup), ss.order, seed=seed)
        verdicts.append(s.valid)
        if s.valid:
            systems.append(s)
    ok = bool(verdicts) and all(verdicts)
    return CheckReport(
        "restrict_F",
        _status(hyp, ok),
        {"F_dims": [list(X.dims) for X in FP], "summand_classes": [len(c) for c in choices],
         "tuples": len(verdicts), "valid_tuples": sum(verdicts), "n_systems": len(systems),
         "lambda_right_projective": comp.data["lambda_right_projective"], "compatible": comp.data["compatible"]},
        comp.witnesses,
        {"systems": systems, "F": FP},
    )


def f_preserves_indec_check(ext, M: Representation, seed=None) -> CheckReport:
    """``Hom(M, I (x)_Gamma M) = 0 = Ext^1(M, I (x)_Gamma M)`` should make
    ``F M`` indecomposable with ``dim End(F M) = dim End(M)``."""
    hyp = _lambda_projective(ext)
    indec_M = is_indecomposable(M, seed=default_seed(seed))
    IM = _ideal_tensor_gamma(ext, M)
    h, e = hom_dim(M, IM), ext_dim(1, M, IM)
    vanish = h == 0 and e == 0
    FM = ext.F(M)
    indec_F = FM.dim > 0 and is_indecomposable(FM, seed=default_seed(seed))
    end_eq = hom_dim(FM, FM) == hom_dim(M, M)
    ok = (not vanish) or (indec_F and end_eq)
    return CheckReport(
        "f_preserves_indec",
        _status(hyp and indec_M, ok),
        {"lambda_right_projective": hyp, "M_indecomposable": indec_M, "hom_M_tensor": h, "ext1_M_tensor": e,
         "vanishings_hold": vanish, "F_indecomposable": indec_F, "end_dims_equal": end_eq,
         "F_dims": list(FM.dims)},
    )
