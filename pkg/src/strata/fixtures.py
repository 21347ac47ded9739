"""Bundled examples with expected-value manifests.

Each fixture directory holds ``gamma.alg``, optional ``modules.mod``, a
``system.ss`` and ``manifest.json``.  The manifest names the arrows
generating the ideal and lists checks as ``{"check": name, "expect":
value}``.  Only the keys present in an expected dict are compared.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from importlib import resources

from .decomposition import decompose, is_isomorphic
from .extension import SplitExtension, build_split_extension
from .formats import builtin_module, parse_modules, parse_system
from .homology import ext_dim
from .presentation import build_algebra
from .repcat import hom_dim, projective_cover, is_projective
from .report import Report
from .stratification import (
    CheckReport,
    admissible_check,
    build_epss,
    canonical_delta_lift_check,
    check_ss,
    compat_gamma_check,
    compat_lambda_check,
    default_seed,
    epss_lift_condition,
    f_preserves_indec_check,
    gequiv_check,
    is_filtered,
    lift_G,
    restrict_F,
    standard_modules,
)

FIXTURES = ("ej2", "six_vertex_sigma", "six_vertex_no_sigma", "section6_restriction")


class FixtureMismatch(AssertionError):
    """Computed values differ from the manifest; ``report`` has the diff."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def algebra_names(ext: SplitExtension) -> dict:
    return {"gamma": ext.gamma, ext.gamma.name: ext.gamma, "lambda": ext.lam, ext.lam.name: ext.lam}


@dataclass
class Fixture:
    id: str
    ext: SplitExtension
    modules: dict
    system_name: str
    thetas: list
    order: list
    manifest: dict

    @property
    def algebras(self) -> dict:
        return algebra_names(self.ext)

    def module(self, name):
        if name in self.modules:
            return self.modules[name]
        for A in (self.ext.lam, self.ext.gamma):
            M = builtin_module(A, name)
            if M is not None:
                return M
        raise KeyError(name)


def _read(fid, name):
    path = resources.files("strata").joinpath(f"data/{fid}/{name}")
    return path.read_text() if path.is_file() else None


def load_fixture(fid: str, manifest: dict | None = None, field=None, order=None) -> Fixture:
    """Load a bundled fixture.  ``order`` (0-based, smallest first)
    replaces the order of the bundled system."""
    if fid not in FIXTURES:
        raise KeyError(f"unknown fixture {fid!r}; known: {', '.join(FIXTURES)}")
    man = manifest if manifest is not None else json.loads(_read(fid, "manifest.json"))
    G = build_algebra(_read(fid, "gamma.alg"), field=field)
    ext = build_split_extension(G, man["arrows"])
    algs = algebra_names(ext)
    text = _read(fid, "modules.mod")
    modules = parse_modules(text, algs) if text else {}
    name, _, thetas, sys_order = parse_system(_read(fid, "system.ss"), algs, modules)
    return Fixture(fid, ext, modules, name, thetas, list(order) if order is not None else sys_order, man)


# ---------------------------------------------------------------- computed values


class _Context:
    """Lazily computed objects shared by the checks of one fixture."""

    def __init__(self, fx: Fixture, seed):
        self.fx, self.seed = fx, seed
        self._ss = self._epss = None

    @property
    def ss(self):
        if self._ss is None:
            self._ss = check_ss(self.fx.thetas, self.fx.order, seed=self.seed)
        return self._ss

    @property
    def epss(self):
        if self._epss is None:
            self._epss = build_epss(self.ss, require_valid=False)
        return self._epss


def _iso_index(X, thetas):
    if X.dim == 0:
        return None
    for j, T in enumerate(thetas):
        if is_isomorphic(X, T):
            return j + 1
    return {"dims": list(X.dims)}


def _right_tops(R):
    P, _ = projective_cover(R)
    return sorted(R.algebra.vertices[i] for i in P.tops)


def _summand_dims(R):
    return sorted(list(s.module.dims) for s in decompose(R))


def c_dims(c: _Context):
    e = c.fx.ext
    return {"gamma": e.gamma.dim, "lambda": e.lam.dim, "ideal": e.ideal_dim}


def c_ideal_right(c):
    R = c.fx.ext.ideal_right_lambda()
    return {"projective": is_projective(R), "tops": _right_tops(R), "summand_dims": _summand_dims(R)}


def c_lambda_right(c):
    R = c.fx.ext.lambda_right_gamma()
    return {"projective": is_projective(R), "summand_dims": _summand_dims(R)}


def c_tensor_theta(c):
    e = c.fx.ext
    return [_iso_index(e.ideal_tensor_lambda(T), c.fx.thetas) for T in c.fx.thetas]


def c_check_ss(c):
    r = c.ss.report()
    return {"valid": c.ss.valid, "witnesses": r.witnesses, "hom": c.ss.hom, "ext1": c.ss.ext1}


def c_compat_lambda(c):
    return compat_lambda_check(c.fx.ext, c.ss).data


def c_tensor_in_F_theta(c):
    e = c.fx.ext
    return [is_filtered(e.ideal_tensor_lambda(T), c.fx.thetas, c.ss.order, seed=c.seed) for T in c.fx.thetas]


def c_ext1_Q_tensor(c):
    e, Q = c.fx.ext, c.epss.Q
    return [[ext_dim(1, Q[i], e.ideal_tensor_lambda(T)) for T in c.fx.thetas] for i in range(len(Q))]


def c_epss(c):
    v = c.epss.verify(seed=c.seed)
    return {"Q_dims": [list(Q.dims) for Q in c.epss.Q], "ok": v["ok"], "Q_indecomposable": v["Q_indecomposable"]}


def c_hom_theta_tensor(c):
    e, th = c.fx.ext, c.fx.thetas
    return [[hom_dim(th[j], e.ideal_tensor_lambda(th[i])) for i in range(len(th))] for j in range(len(th))]


def c_end_thetas(c):
    return [hom_dim(T, T) for T in c.fx.thetas]


def c_end_identity_GQ(c):
    """``dim End(GQ) = dim End(Q) + dim Hom(Q, I (x) Q)`` for the total Q."""
    e = c.fx.ext
    Q = c.epss.total
    lhs = hom_dim(e.G(Q), e.G(Q))
    rhs = hom_dim(Q, Q) + hom_dim(Q, e.ideal_tensor_lambda(Q))
    return {"end_gamma": lhs, "end_lambda_plus_hom_tensor": rhs, "holds": lhs == rhs}


def c_lift_G(c):
    return lift_G(c.fx.ext, c.fx.thetas, c.ss.order, seed=c.seed).data


def c_G_delta(c):
    return canonical_delta_lift_check(c.fx.ext, c.ss.order, seed=c.seed).data


def c_standard_lambda(c):
    return [list(D.dims) for D in standard_modules(c.fx.ext.lam, c.ss.order)]


def c_admissible(c):
    return admissible_check(c.fx.ext, c.ss.order).data


def c_epss_lift_condition(c):
    r = epss_lift_condition(c.fx.ext, c.epss, seed=c.seed)
    return dict(r.data, status=r.status)


def c_gequiv(c):
    r = gequiv_check(c.fx.ext, c.epss, seed=c.seed)
    return {"status": r.status, "witnesses": [[w["j"], w["i"]] for w in r.witnesses if "j" in w],
            "samples": r.data["samples"]}


def c_filtered_modules(c):
    return {name: is_filtered(c.fx.module(name), c.fx.thetas, c.ss.order, seed=c.seed)
            for name, M in c.fx.modules.items() if not any(M is T for T in c.fx.thetas)}


def c_compat_gamma(c):
    return compat_gamma_check(c.fx.ext, c.ss).data


def c_F_psi(c):
    e = c.fx.ext
    out = []
    for P in c.fx.thetas:
        FP = e.F(P)
        hit = None
        for v in e.lam.vertices:
            for kind in "PSI":
                if is_isomorphic(FP, builtin_module(e.lam, kind + v)):
                    hit = kind + v
                    break
            if hit:
                break
        out.append(hit if hit else {"dims": list(FP.dims)})
    return out


def c_restrict_F(c):
    r = restrict_F(c.fx.ext, c.ss, seed=c.seed)
    return dict(r.data, status=r.status, all_valid=r.data["tuples"] == r.data["valid_tuples"])


def c_f_preserves_indec(c):
    return [f_preserves_indec_check(c.fx.ext, P, seed=c.seed).data for P in c.fx.thetas]


CHECKS = {name[2:]: fn for name, fn in globals().items() if name.startswith("c_")}


# ---------------------------------------------------------------- comparison


def _diff(expected, computed, path="") -> list:
    if isinstance(expected, dict) and isinstance(computed, dict):
        out = []
        for k, v in expected.items():
            if k not in computed:
                out.append({"path": f"{path}/{k}", "expected": v, "computed": "<missing>"})
            else:
                out += _diff(v, computed[k], f"{path}/{k}")
        return out
    if isinstance(expected, list) and isinstance(computed, list) and len(expected) == len(computed):
        out = []
        for k, (a, b) in enumerate(zip(expected, computed)):
            out += _diff(a, b, f"{path}/{k}")
        return out
    if expected != computed:
        return [{"path": path or "/", "expected": expected, "computed": computed}]
    return []


def run_fixture(fid: str, manifest: dict | None = None, seed=None, strict: bool = True, field=None,
                order=None) -> Report:
    """Run every check of a fixture manifest.  With ``strict`` a
    :class:`FixtureMismatch` carrying the report is raised on any
    difference."""
    seed = default_seed(seed)
    fx = load_fixture(fid, manifest, field, order)
    ctx = _Context(fx, seed)
    rep = Report(field=fx.ext.field.name, seed=seed)
    for item in fx.manifest["checks"]:
        name = item["check"]
        try:
            computed = CHECKS[name](ctx)
        except Exception as exc:  # reported, not swallowed: the status is "error"
            rep.add(CheckReport(name, "error", {"error": f"{type(exc).__name__}: {exc}"}))
            continue
        diff = _diff(item["expect"], computed)
        rep.add(CheckReport(name, "pass" if not diff else "fail",
                            {"expected": item["expect"], "computed": _select(item["expect"], computed)}, diff))
    if strict and rep.status != "pass":
        bad = [c.check for c in rep.checks if c.status != "pass"]
        raise FixtureMismatch(f"fixture {fid}: mismatching checks {bad}", rep)
    return rep


def _select(expected, computed):
    """The part of ``computed`` that the expectation talks about."""
    if isinstance(expected, dict) and isinstance(computed, dict):
        return {k: _select(v, computed.get(k)) for k, v in expected.items()}
    return computed


def tampered(fid: str) -> dict:
    """A copy of a manifest with its first expected value changed."""
    man = copy.deepcopy(json.loads(_read(fid, "manifest.json")))
    first = man["checks"][0]
    first["expect"] = {"tampered": True} if not isinstance(first["expect"], dict) else dict(
        first["expect"], tampered=True)
    return man
