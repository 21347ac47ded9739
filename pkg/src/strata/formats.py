"""Text formats for modules (``.mod``) and systems (``.ss``).

A module file holds any number of blocks::

    module T2 over lambda {
      dims: 0 0 1 1 1 0;
      map e = [[1]];
      map l = [[1]];
    }

``dims`` lists dimensions in vertex order; unlisted arrows act by zero.
A system file lists module names, smallest index first, and an optional
order given by 1-based indices from smallest to largest::

    system theta over lambda {
      modules: T1 T2 T3 T4;
      order: 1 2 3 4;
    }

Besides names defined in module files, ``S<v>``, ``P<v>`` and ``I<v>``
denote the simple, projective and injective module at vertex ``v``.
"""

from __future__ import annotations

import json
import re

from .repcat import Representation, injective, projective, simple


class FormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_BLOCK = re.compile(r"(module|system)\s+([A-Za-z_][\w.-]*)\s+over\s+([A-Za-z_][\w.-]*)\s*\{(.*?)\}", re.S)
_NUM = re.compile(r"-?\d+(?:/\d+)?")
_BUILTIN = re.compile(r"^([SPI])(.+)$")


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _blocks(text, kind):
    text = _strip_comments(text)
    out = []
    pos = 0
    for m in _BLOCK.finditer(text):
        gap = text[pos:m.start()].strip()
        if gap:
            raise FormatError(f"unexpected text {gap[:20]!r}", text[:pos].count("\n") + 1)
        if m.group(1) != kind:
            raise FormatError(f"expected a {kind} block, found {m.group(1)}", text[:m.start()].count("\n") + 1)
        line = text[:m.start()].count("\n") + 1
        out.append((m.group(2), m.group(3), m.group(4), line))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        raise FormatError(f"unexpected text {rest[:20]!r}", text[:pos].count("\n") + 1)
    return out


def _statements(body, line):
    for k, stmt in enumerate(body.split(";")):
        stmt = stmt.strip()
        if stmt:
            yield stmt, line + body[: body.find(stmt)].count("\n")


def _matrix(text, line):
    try:
        return json.loads(_NUM.sub(lambda m: '"' + m.group() + '"', text))
    except json.JSONDecodeError:
        raise FormatError(f"bad matrix {text!r}", line) from None


def resolve_algebra(name, algebras: dict):
    if name not in algebras:
        raise FormatError(f"unknown algebra {name!r}; known: {sorted(algebras)}")
    return algebras[name]


def parse_modules(text: str, algebras: dict) -> dict:
    """Parse a module file into ``{name: Representation}``.  ``algebras``
    maps the names usable after ``over``."""
    out = {}
    for name, alg, body, line in _blocks(text, "module"):
        A = resolve_algebra(alg, algebras)
        dims, maps = None, {}
        for stmt, ln in _statements(body, line):
            if stmt.startswith("dims"):
                vals = stmt.split(":", 1)[1].split() if ":" in stmt else stmt.split()[1:]
                try:
                    dims = [int(x) for x in vals]
                except ValueError:
                    raise FormatError(f"bad dims {stmt!r}", ln) from None
            elif stmt.startswith("map"):
                m = re.match(r"map\s+([\w.-]+)\s*=\s*(.*)$", stmt, re.S)
                if not m:
                    raise FormatError(f"bad map statement {stmt!r}", ln)
                maps[m.group(1)] = _matrix(m.group(2), ln)
            else:
                raise FormatError(f"unknown statement {stmt!r}", ln)
        if dims is None or len(dims) != A.n_vertices:
            raise FormatError(f"module {name}: dims must list {A.n_vertices} numbers", line)
        if name in out:
            raise FormatError(f"duplicate module {name}", line)
        M = Representation.from_labels(A, dict(zip(A.vertices, dims)), maps, name=name)
        out[name] = M
    return out


def format_module(M: Representation, name: str, algebra_name: str) -> str:
    lines = [f"module {name} over {algebra_name} {{", "  dims: " + " ".join(str(d) for d in M.dims) + ";"]
    for k, (label, s, t) in enumerate(M.algebra.arrows):
        m = M.maps[k]
        if M.dims[s] and M.dims[t] and any(x != 0 for x in m.ravel()):
            rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m)
            lines.append(f"  map {label} = [{rows}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def builtin_module(A, name: str):
    m = _BUILTIN.match(name)
    if not m or m.group(2) not in A.vertices:
        return None
    i = A.vertices.index(m.group(2))
    return {"S": simple, "P": projective, "I": injective}[m.group(1)](A, i)


def lookup_module(name: str, A, modules: dict):
    if name in modules:
        if modules[name].algebra is not A:
            raise FormatError(f"module {name} lives over a different algebra")
        return modules[name]
    M = builtin_module(A, name)
    if M is None:
        raise FormatError(f"unknown module {name!r}")
    return M


def parse_system(text: str, algebras: dict, modules: dict):
    """Parse a single system block into ``(name, algebra, modules, order)``;
    ``order`` is a list of 0-based indices, smallest first."""
    blocks = _blocks(text, "system")
    if len(blocks) != 1:
        raise FormatError("a system file holds exactly one system block")
    name, alg, body, line = blocks[0]
    A = resolve_algebra(alg, algebras)
    names, order = None, None
    for stmt, ln in _statements(body, line):
        key, _, rest = stmt.partition(":")
        key = key.strip()
        if key == "modules":
            names = rest.split()
        elif key == "order":
            try:
                order = [int(x) - 1 for x in rest.split()]
            except ValueError:
                raise FormatError(f"bad order {rest!r}", ln) from None
        else:
            raise FormatError(f"unknown statement {stmt!r}", ln)
    if not names:
        raise FormatError("system without modules", line)
    thetas = [lookup_module(n, A, modules) for n in names]
    if order is None:
        order = list(range(len(thetas)))
    if sorted(order) != list(range(len(thetas))):
        raise FormatError(f"order must be a permutation of 1..{len(thetas)}", line)
    return name, A, thetas, order
