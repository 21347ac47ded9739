"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 a
hypothesis failed, 3 bad input (including usage errors).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .decomposition import decompose, is_indecomposable
from .extension import SplitFails, build_split_extension, delta_decompose, verify_split_end
from .fixtures import FIXTURES, FixtureMismatch, algebra_names, run_fixture
from .formats import FormatError, lookup_module, parse_modules, parse_system
from .homology import ext, projective_resolution, tor_dims
from .linalg import Field
from .presentation import PresentationError, build_algebra, format_presentation, parse_presentation
from .repcat import ModuleError, hom_basis, is_projective
from .report import Report
from .stratification import (
    CheckReport,
    NotFiltered,
    StrataError,
    build_epss,
    check_ss,
    compat_gamma_check,
    compat_lambda_check,
    default_seed,
    is_quasi_hereditary,
    is_ss_algebra,
    lift_G,
    restrict_F,
    standard_modules,
    theta_filtration,
)

EXIT = {"pass": 0, "fail": 1, "hypothesis_failed": 2, "error": 3}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--field", default=None, help="q or f:<p> (overrides the file)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-path-length", type=int, default=32)
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")


def _inputs(p, arrows=False, modules=False, system=False):
    p.add_argument("--algebra", required=True, help=".alg file")
    if arrows:
        p.add_argument("--arrows", help="comma separated arrows generating the ideal")
    if modules:
        p.add_argument("--modules", help=".mod file")
    if system:
        p.add_argument("--system", required=True, help=".ss file")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="strata", description="Bound quiver algebras, split extensions and stratifying systems.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and normalize a presentation")
    _common(p)
    _inputs(p)

    p = sub.add_parser("build", help="build the algebra of a presentation")
    _common(p)
    _inputs(p, arrows=True)

    p = sub.add_parser("module", help="describe a module")
    _common(p)
    _inputs(p, arrows=True, modules=True)
    p.add_argument("--name", required=True)

    for name, helptext in (("hom", "dimension of Hom"), ("ext", "dimension of Ext^n"), ("delta", "Hom decomposition")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        _inputs(p, arrows=True, modules=True)
        p.add_argument("--from", dest="source", required=True)
        p.add_argument("--to", dest="target", required=True)
        if name == "ext":
            p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("tor", help="Tor_k(Lambda, M) for a Gamma-module M")
    _common(p)
    _inputs(p, arrows=True, modules=True)
    p.add_argument("--module", required=True)
    p.add_argument("--n", type=int, default=2)

    p = sub.add_parser("resolve", help="minimal projective resolution")
    _common(p)
    _inputs(p, arrows=True, modules=True)
    p.add_argument("--module", required=True)
    p.add_argument("--n", type=int, default=3)

    p = sub.add_parser("split-ext", help="split extension data")
    _common(p)
    p.add_argument("action", nargs="?", default="build", choices=("build",))
    _inputs(p)
    p.add_argument("--arrows", required=True)

    p = sub.add_parser("split-end", help="End(GM) against End(M) and Hom(M, I (x) M)")
    _common(p)
    _inputs(p, modules=True)
    p.add_argument("--arrows", required=True)
    p.add_argument("--module", required=True)

    for name, helptext in (("check-ss", "stratifying system axioms"), ("epss", "Ext-projective system"),
                           ("lift", "lift a system along G"), ("restrict", "restrict a system along F")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        _inputs(p, arrows=True, modules=True, system=True)

    p = sub.add_parser("filtration", help="search for a Theta-filtration")
    _common(p)
    _inputs(p, arrows=True, modules=True, system=True)
    p.add_argument("--module", required=True)

    p = sub.add_parser("standard", help="standard modules and ss / qh tests")
    _common(p)
    _inputs(p, arrows=True)
    p.add_argument("--order", help="vertex labels from smallest to largest, comma separated")
    p.add_argument("--side", choices=("gamma", "lambda"), default="gamma")

    p = sub.add_parser("verify", help="run a bundled fixture")
    _common(p)
    p.add_argument("--fixture", required=True, choices=FIXTURES)
    return ap


# ---------------------------------------------------------------- loading


class _Env:
    def __init__(self, args):
        self.args = args
        self.field = Field.parse(args.field) if args.field else None
        self.seed = default_seed(args.seed if args.seed is not None else None)
        self.gamma = self.ext = None
        self.algebras = {}
        self.modules = {}

    def read(self, path):
        try:
            with open(path) as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from None

    def load(self, need_ext=False):
        a = self.args
        self.gamma = build_algebra(self.read(a.algebra), a.max_path_length, self.field)
        self.algebras = {"gamma": self.gamma, self.gamma.name: self.gamma, "algebra": self.gamma}
        arrows = getattr(a, "arrows", None)
        if arrows:
            self.ext = build_split_extension(self.gamma, arrows)
            self.algebras.update(algebra_names(self.ext))
        elif need_ext:
            raise InputError("--arrows is required for this command")
        if getattr(a, "modules", None):
            self.modules = parse_modules(self.read(a.modules), self.algebras)
        return self

    def module(self, name, prefer="lambda"):
        """A module from the module file or a builtin ``S<v>``, ``P<v>``,
        ``I<v>``.  ``gamma:P1`` or ``lambda:P1`` pick the algebra; otherwise
        ``prefer`` decides when an ideal is given."""
        if name in self.modules:
            return self.modules[name]
        if ":" in name:
            alg, name = name.split(":", 1)
            if alg not in self.algebras:
                raise InputError(f"unknown algebra {alg!r}")
            return lookup_module(name, self.algebras[alg], {})
        last = None
        cands = [self.gamma]
        if self.ext is not None:
            cands = [self.ext.lam, self.gamma] if prefer == "lambda" else [self.gamma, self.ext.lam]
        for A in cands:
            try:
                return lookup_module(name, A, {})
            except FormatError as exc:
                last = exc
        raise last

    def system(self):
        _, A, thetas, order = parse_system(self.read(self.args.system), self.algebras, self.modules)
        return A, thetas, order


# ---------------------------------------------------------------- commands


def _single(check, status, data=None, witnesses=None):
    return [CheckReport(check, status, data or {}, witnesses or [])]


def cmd_parse(env):
    p = parse_presentation(env.read(env.args.algebra), env.field)
    return _single("parse", "pass", {"name": p.name, "field": p.field.name, "vertices": list(p.vertices),
                                     "arrows": [[a.label, a.source, a.target] for a in p.arrows],
                                     "text": format_presentation(p)})


def cmd_build(env):
    env.load()
    A = env.gamma
    data = {"dim": A.dim, "basis": [A.basis_label(k) for k in range(A.dim)],
            "loewy_length": A.radical_layers(), "associative": A.check_associative()}
    if env.ext is not None:
        data["dim_lambda"] = env.ext.lam.dim
        data["dim_ideal"] = env.ext.ideal_dim
    return _single("build", "pass" if data["associative"] else "fail", data)


def cmd_module(env):
    env.load()
    M = env.module(env.args.name)
    dec = decompose(M, seed=env.seed) if M.dim else None
    data = {"dims": list(M.dims), "dim": M.dim, "projective": is_projective(M),
            "indecomposable": bool(M.dim) and is_indecomposable(M, seed=env.seed),
            "summand_dims": [list(s.module.dims) for s in dec] if dec else []}
    return _single("module", "pass", data)


def cmd_hom(env):
    env.load()
    M, N = env.module(env.args.source), env.module(env.args.target)
    return _single("hom", "pass", {"dimension": len(hom_basis(M, N))})


def cmd_ext(env):
    env.load()
    M, N = env.module(env.args.source), env.module(env.args.target)
    if env.args.n < 0:
        raise InputError("--n must be non-negative")
    return _single("ext", "pass", {"n": env.args.n, "dimension": ext(env.args.n, M, N).dim})


def cmd_tor(env):
    env.load(need_ext=True)
    M = env.module(env.args.module, prefer="gamma")
    if M.algebra is not env.gamma:
        raise InputError("tor needs a Gamma-module")
    return _single("tor", "pass", {"dims": tor_dims(env.ext.functor_F, M, env.args.n)})


def cmd_resolve(env):
    env.load()
    M = env.module(env.args.module)
    res = projective_resolution(M, env.args.n)
    tops = [[M.algebra.vertices[i] for i in res.tops(k)] for k in range(len(res.modules))]
    return _single("resolve", "pass" if res.verify() else "fail", {"tops": tops})


def cmd_split_ext(env):
    env.load(need_ext=True)
    e = env.ext
    data = {"dim_gamma": e.gamma.dim, "dim_lambda": e.lam.dim, "dim_ideal": e.ideal_dim,
            "ideal_right_projective": is_projective(e.ideal_right_lambda()),
            "lambda_right_projective": is_projective(e.lambda_right_gamma()),
            "ideal_basis": e.ideal_labels()}
    laws = e.verify_laws()
    return _single("split_ext", "pass" if laws["ok"] else "fail", dict(data, laws=laws))


def cmd_delta(env):
    env.load(need_ext=True)
    M, N = env.module(env.args.source), env.module(env.args.target)
    r = delta_decompose(env.ext, M, N)
    return _single("delta", "pass" if r["ok"] else "fail", r)


def cmd_split_end(env):
    env.load(need_ext=True)
    r = verify_split_end(env.ext, env.module(env.args.module))
    return _single("split_end", "pass" if r["ok"] else "fail", r)


def cmd_check_ss(env):
    env.load()
    _, thetas, order = env.system()
    return [check_ss(thetas, order, seed=env.seed).report()]


def cmd_filtration(env):
    env.load()
    _, thetas, order = env.system()
    M = env.module(env.args.module)
    try:
        cert = theta_filtration(M, thetas, order, seed=env.seed)
    except NotFiltered as exc:
        return _single("filtration", "fail", {"filtered": False, "depth": exc.depth, "nodes": exc.nodes,
                                              "exhaustive": exc.exhaustive, "message": str(exc)})
    return _single("filtration", "pass" if cert.verify() else "fail",
                   {"filtered": True, "multiplicities": cert.multiplicities,
                    "factors_bottom_first": [i + 1 for i in cert.indices]})


def cmd_epss(env):
    env.load()
    _, thetas, order = env.system()
    ss = check_ss(thetas, order, seed=env.seed)
    if not ss.valid:
        return [CheckReport("epss", "hypothesis_failed", {"ss_valid": False}, ss.report().witnesses)]
    E = build_epss(ss)
    v = E.verify(seed=env.seed)
    return _single("epss", "pass" if v["ok"] else "fail",
                   dict(v, Q_dims=[list(Q.dims) for Q in E.Q], K_dims=[list(K.dims) for K in E.K]))


def cmd_lift(env):
    env.load(need_ext=True)
    A, thetas, order = env.system()
    if A is not env.ext.lam:
        raise InputError("lift needs a system over Lambda")
    ss = check_ss(thetas, order, seed=env.seed)
    return [compat_lambda_check(env.ext, ss), lift_G(env.ext, thetas, order, seed=env.seed)]


def cmd_restrict(env):
    env.load(need_ext=True)
    A, thetas, order = env.system()
    if A is not env.gamma:
        raise InputError("restrict needs a system over Gamma")
    ss = check_ss(thetas, order, seed=env.seed)
    return [compat_gamma_check(env.ext, ss), restrict_F(env.ext, ss, seed=env.seed)]


def cmd_standard(env):
    a = env.args
    env.load(need_ext=a.side == "lambda")
    A = env.ext.lam if a.side == "lambda" else env.gamma
    if a.order:
        labels = [x.strip() for x in a.order.split(",")]
        if sorted(labels) != sorted(A.vertices):
            raise InputError("--order must list every vertex once")
        order = [A.vertices.index(x) for x in labels]
    else:
        order = list(range(A.n_vertices))
    D = standard_modules(A, order)
    data = {"delta_dims": [list(d.dims) for d in D], "ss_algebra": is_ss_algebra(A, order, env.seed),
            "quasi_hereditary": is_quasi_hereditary(A, order, env.seed)}
    return _single("standard", "pass", data)


def cmd_verify(env):
    try:
        rep = run_fixture(env.args.fixture, seed=env.seed, field=env.field)
    except FixtureMismatch as exc:
        rep = exc.report
    return rep.checks


COMMANDS = {
    "parse": cmd_parse, "build": cmd_build, "module": cmd_module, "hom": cmd_hom, "ext": cmd_ext,
    "tor": cmd_tor, "resolve": cmd_resolve, "split-ext": cmd_split_ext, "delta": cmd_delta,
    "split-end": cmd_split_end, "check-ss": cmd_check_ss, "filtration": cmd_filtration, "epss": cmd_epss,
    "lift": cmd_lift, "restrict": cmd_restrict, "standard": cmd_standard, "verify": cmd_verify,
}


def _text(rep: Report) -> str:
    lines = [f"status: {rep.status}"]
    for c in rep.checks:
        lines.append(f"[{c.status}] {c.check}")
        for k, v in c.to_dict()["data"].items():
            lines.append(f"  {k}: {json.dumps(v)}")
        for w in c.to_dict()["witnesses"]:
            lines.append(f"  witness: {json.dumps(w)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        env = _Env(args)
    except ValueError as exc:
        print(f"strata: error: {exc}", file=sys.stderr)
        return 3
    start = time.perf_counter()
    try:
        checks = COMMANDS[args.command](env)
    except SplitFails as exc:
        checks = [CheckReport(args.command, "fail", {"error": f"SplitFails: {exc}"},
                              [{"witness": str(exc.witness)}])]
    except (InputError, FormatError, PresentationError, ModuleError, StrataError, KeyError) as exc:
        checks = [CheckReport(args.command, "error", {"error": f"{type(exc).__name__}: {exc}"})]
        print(f"strata: error: {exc}", file=sys.stderr)
    except Exception as exc:  # unexpected: still report it with the error status
        checks = [CheckReport(args.command, "error", {"error": f"{type(exc).__name__}: {exc}"})]
        print(f"strata: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
    field = env.field.name if env.field else (env.gamma.field.name if env.gamma is not None else "Q")
    rep = Report(field=field, checks=list(checks), seed=env.seed)
    if args.timing:
        rep.timing = {"seconds": round(time.perf_counter() - start, 6)}
    print(rep.to_json() if args.output == "json" else _text(rep))
    return EXIT[rep.status]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
