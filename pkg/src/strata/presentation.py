"""Quiver presentations and the finite dimensional algebras they define.

A presentation lists vertices, arrows and relations.  Paths are written as
words of arrow labels and read like composition of functions: the word
``a*b`` means "first ``b``, then ``a``", so it is a path only when
``target(b) == source(a)``.  This is the only convention in the package.

The text format::

    algebra gamma over Q {
      vertices: 1 2 3;
      arrows: a:1->2, b:3->1;
      relations: a*b;
    }

Relations are linear combinations ``c1*w1 + c2*w2 - ...`` of parallel paths
of length at least two.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .linalg import Field, rref


class PresentationError(ValueError):
    """Base class for invalid presentations."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownVertex(PresentationError):
    pass


class UnknownArrow(PresentationError):
    pass


class DuplicateLabel(PresentationError):
    pass


class NonParallelRelation(PresentationError):
    pass


class NotFiniteDimensional(PresentationError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class AlgebraPresentation:
    """Vertices, arrows and relations.  Relations are tuples of
    ``(coefficient, word)`` pairs; a word is a tuple of arrow labels and
    coefficients are ``Fraction``s."""

    name: str
    field: Field
    vertices: tuple
    arrows: tuple
    relations: tuple

    def with_field(self, field: Field) -> "AlgebraPresentation":
        return AlgebraPresentation(self.name, field, self.vertices, self.arrows, self.relations)

    def opposite(self) -> "AlgebraPresentation":
        arrows = tuple(Arrow(a.label, a.target, a.source) for a in self.arrows)
        rels = tuple(tuple((c, tuple(reversed(w))) for c, w in r) for r in self.relations)
        return AlgebraPresentation(self.name + "_op", self.field, self.vertices, arrows, rels)

    def to_text(self) -> str:
        return format_presentation(self)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<arrow>->)"
    r"|(?P<num>\d+/\d+)|(?P<ident>[A-Za-z0-9_'.]+)|(?P<punct>[{}:;,*+\-=\[\]()])"
)


def _tokenize(text: str):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                if kind == "arrow" or kind == "punct":
                    kind = "punct"
                elif kind == "num":
                    kind = "ident"
                tokens.append((kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], tok[3])

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] != "eof":
            return self.next()
        return None

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "eof":
            found = tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return self.next()

    def ident(self, what):
        tok = self.peek()
        if tok[0] != "ident":
            found = tok[1] or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        return self.next()[1]


_NUMBER = re.compile(r"^\d+(/\d+)?$")


def _parse_term(cur: _Cursor, sign: int):
    coeff = Fraction(sign)
    word = []
    tok = cur.peek()
    if tok[0] == "ident" and _NUMBER.match(tok[1]) and cur.peek(1)[1] == "*":
        coeff *= Fraction(cur.next()[1])
        cur.expect("*")
    word.append(cur.ident("arrow label"))
    while cur.accept("*"):
        word.append(cur.ident("arrow label"))
    return coeff, tuple(word)


def _parse_relation(cur: _Cursor):
    start = cur.peek()
    terms = []
    sign = -1 if cur.accept("-") else 1
    terms.append(_parse_term(cur, sign))
    while cur.peek()[1] in ("+", "-"):
        sign = 1 if cur.next()[1] == "+" else -1
        terms.append(_parse_term(cur, sign))
    return terms, start


def _parse_body(cur: _Cursor, terminators):
    vertices, arrows, relations = [], [], []
    seen = set()
    while cur.peek()[1] not in terminators:
        tok = cur.peek()
        key = cur.ident("section name")
        if key in seen:
            raise ParseError(f"duplicate section {key!r}", tok[2], tok[3])
        seen.add(key)
        cur.accept(":")
        if key == "vertices":
            while cur.peek()[1] != ";":
                t = cur.peek()
                vertices.append((cur.ident("vertex label"), t))
                cur.accept(",")
        elif key == "arrows":
            while cur.peek()[1] != ";":
                t = cur.peek()
                label = cur.ident("arrow label")
                cur.expect(":")
                s = cur.ident("source vertex")
                cur.expect("->")
                tt = cur.ident("target vertex")
                arrows.append((label, s, tt, t))
                if not cur.accept(","):
                    break
        elif key == "relations":
            while cur.peek()[1] != ";":
                relations.append(_parse_relation(cur))
                if not cur.accept(","):
                    break
        else:
            raise ParseError(f"unknown section {key!r}", tok[2], tok[3])
        cur.expect(";")
    return vertices, arrows, relations


def parse_presentation(text: str, field: Field | None = None) -> AlgebraPresentation:
    """Parse the text format.  The header ``algebra NAME over FIELD { ... }``
    is optional; without it the name is ``A`` and the field is Q.  An
    explicit ``field`` argument overrides the declared one."""
    cur = _Cursor(_tokenize(text))
    name, declared = "A", Field(None)
    if cur.peek()[1] == "algebra":
        cur.next()
        name = cur.ident("algebra name")
        if cur.accept("over"):
            tok = cur.peek()
            fname = cur.ident("field")
            try:
                declared = Field.parse(fname)
            except ValueError:
                raise ParseError(f"unknown field {fname!r}", tok[2], tok[3]) from None
        cur.expect("{")
        body = _parse_body(cur, ("}",))
        cur.expect("}")
    else:
        body = _parse_body(cur, ("",))
    if cur.peek()[0] != "eof":
        raise cur.error(f"unexpected {cur.peek()[1]!r} after presentation")
    vertices, arrows, relations = body
    return _validate(name, field or declared, vertices, arrows, relations)


def _validate(name, field, vertices, arrows, relations) -> AlgebraPresentation:
    vlabels = []
    for v, tok in vertices:
        if v in vlabels:
            raise DuplicateLabel(f"vertex {v!r} declared twice (line {tok[2]})")
        vlabels.append(v)
    vset = set(vlabels)
    arrow_objs = []
    labels = set()
    for label, s, t, tok in arrows:
        if label in labels or label in vset:
            raise DuplicateLabel(f"label {label!r} declared twice (line {tok[2]})")
        for x in (s, t):
            if x not in vset:
                raise UnknownVertex(f"arrow {label!r} uses undeclared vertex {x!r} (line {tok[2]})")
        labels.add(label)
        arrow_objs.append(Arrow(label, s, t))
    by_label = {a.label: a for a in arrow_objs}
    rels = []
    for terms, tok in relations:
        rels.append(_check_relation(terms, by_label, f"line {tok[2]}"))
    return AlgebraPresentation(name, field, tuple(vlabels), tuple(arrow_objs), tuple(rels))


def _check_relation(terms, by_label, where=""):
    ends = None
    combined: dict = {}
    for coeff, word in terms:
        for lab in word:
            if lab not in by_label:
                raise UnknownArrow(f"relation uses undeclared arrow {lab!r} {where}".strip())
        if len(word) < 2:
            raise PresentationError(f"relation term {'*'.join(word)} has length < 2 {where}".strip())
        for left, right in zip(word, word[1:]):
            if by_label[right].target != by_label[left].source:
                raise NonParallelRelation(f"{'*'.join(word)} is not a path {where}".strip())
        e = (by_label[word[-1]].source, by_label[word[0]].target)
        if ends is None:
            ends = e
        elif e != ends:
            raise NonParallelRelation(f"relation terms are not parallel {where}".strip())
        combined[word] = combined.get(word, Fraction(0)) + Fraction(coeff)
    return tuple((c, w) for w, c in combined.items() if c != 0)


def presentation_from_data(name, vertices, arrows, relations, field=None) -> AlgebraPresentation:
    """Build a presentation from Python data.

    ``arrows`` is a list of ``(label, source, target)`` and ``relations`` a
    list of lists of ``(coefficient, word)`` with words given as strings
    ``"a*b"`` or tuples of labels."""
    fake = ("", "", 0, 0)
    verts = [(str(v), fake) for v in vertices]
    arrs = [(str(a), str(s), str(t), fake) for a, s, t in arrows]
    rels = []
    for r in relations:
        terms = []
        for c, w in r:
            if isinstance(w, str):
                w = tuple(w.split("*"))
            terms.append((Fraction(c), tuple(w)))
        rels.append((terms, fake))
    return _validate(name, field or Field(None), verts, arrs, rels)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_presentation(p: AlgebraPresentation) -> str:
    """Canonical text form; parsing it gives back an equal presentation."""
    lines = [f"algebra {p.name} over {p.field.name} {{"]
    lines.append("  vertices: " + " ".join(p.vertices) + ";")
    if p.arrows:
        lines.append("  arrows: " + ", ".join(f"{a.label}:{a.source}->{a.target}" for a in p.arrows) + ";")
    if p.relations:
        rels = []
        for r in p.relations:
            parts = []
            for k, (c, w) in enumerate(r):
                word = "*".join(w)
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = word if mag == 1 else f"{_format_coeff(mag)}*{word}"
                if k == 0:
                    parts.append(("-" if c < 0 else "") + body)
                else:
                    parts.append(f" {sign} {body}")
            rels.append("".join(parts))
        lines.append("  relations: " + ", ".join(rels) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- algebra


@dataclass(frozen=True)
class BasisPath:
    """A basis element: a word of arrow indices (applied right to left)
    together with its source and target vertex indices."""

    word: tuple
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.word)


class BoundQuiverAlgebra:
    """The algebra kQ/I with a basis of paths.

    The basis consists of the trivial paths, the arrows and further paths
    that are not leading terms of ideal elements.  Longer paths are
    preferred as leading terms, so each basis element is as short as
    possible.  All products are computed exactly from the reduction table.
    """

    def __init__(self, presentation: AlgebraPresentation, max_path_length: int = 32):
        self.presentation = presentation
        self.field = presentation.field
        self.name = presentation.name
        self.vertices = presentation.vertices
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = tuple(
            (a.label, self._vindex[a.source], self._vindex[a.target]) for a in presentation.arrows
        )
        self._aindex = {a[0]: k for k, a in enumerate(self.arrows)}
        self.max_path_length = max_path_length
        self._opposite = None
        self._build()

    # construction
    def _paths_of_length(self, n):
        if n == 0:
            return [((), v, v) for v in range(len(self.vertices))]
        out = []
        for word, s, t in self._paths[n - 1]:
            for k, (_, s2, t2) in enumerate(self.arrows):
                if s2 == t:
                    out.append(((k,) + word, s, t2))
        return out

    def _build(self):
        F = self.field
        rels = [
            [(F(c), tuple(self._aindex[x] for x in w)) for c, w in r] for r in self.presentation.relations
        ]
        self._paths = [self._paths_of_length(0)]
        L = 0
        while True:
            L += 1
            if L > self.max_path_length:
                raise NotFiniteDimensional(
                    f"paths of length {self.max_path_length} survive the relations"
                )
            self._paths.append(self._paths_of_length(L))
            if not self._paths[L]:
                break
            # columns ordered longest first
            cols = [p for n in range(L, -1, -1) for p in self._paths[n]]
            cindex = {p[0] if p[0] else ("e", p[1]): k for k, p in enumerate(cols)}
            gens = []
            for r in rels:
                if not r:
                    continue
                rs = self.arrows[r[0][1][-1]][1]
                rt = self.arrows[r[0][1][0]][2]
                rlen = min(len(w) for _, w in r)
                for lp in range(0, L - rlen + 1):
                    for pw, ps, pt in self._paths[lp]:
                        if ps != rt:
                            continue
                        for lq in range(0, L - rlen - lp + 1):
                            for qw, qs, qt in self._paths[lq]:
                                if qt != rs:
                                    continue
                                row = {}
                                for c, w in r:
                                    full = pw + w + qw
                                    if len(full) <= L:
                                        k = cindex[full]
                                        row[k] = row.get(k, 0) + c
                                if any(v != 0 for v in row.values()):
                                    gens.append(row)
            n_long = len(self._paths[L])
            if gens:
                G = F.zeros(len(gens), len(cols))
                for i, row in enumerate(gens):
                    for k, c in row.items():
                        G[i, k] = c
                R, piv = rref(G, F)
                R = R[: len(piv)]
            else:
                R, piv = F.zeros(0, len(cols)), []
            rank_all = len(piv)
            rank_short = len(rref(R[:, n_long:], F)[1]) if rank_all else 0
            if rank_all - rank_short == n_long:
                break
        self._finish(cols, R, piv, L)

    def _finish(self, cols, R, piv, L):
        F = self.field
        pset = set(piv)
        # basis: free columns, ordered by length then enumeration order
        free = [k for k in range(len(cols)) if k not in pset]
        order = sorted(free, key=lambda k: (len(cols[k][0]), k if cols[k][0] else cols[k][1]))
        basis = []
        for k in order:
            w, s, t = cols[k]
            basis.append(BasisPath(w, s, t))
        # trivial paths first and in vertex order
        basis.sort(key=lambda b: (b.length, b.source if b.length == 0 else 0))
        self.basis = tuple(basis)
        self.dim = len(basis)
        self._bindex = {(b.word if b.word else ("e", b.source)): i for i, b in enumerate(basis)}
        self._loewy_bound = L
        col_to_basis = {}
        for k in free:
            w, s, _ = cols[k]
            col_to_basis[k] = self._bindex[w if w else ("e", s)]
        self._reduce_cache = {}
        for k, (w, s, t) in enumerate(cols):
            key = w if w else ("e", s)
            if k in col_to_basis:
                self._reduce_cache[key] = {col_to_basis[k]: F(1)}
        for r, c in enumerate(piv):
            w = cols[c][0]
            vec = {}
            for f in free:
                if R[r, f] != 0:
                    vec[col_to_basis[f]] = F.norm(-R[r, f])
            self._reduce_cache[w] = vec
        self._mul_cache = {}
        self.vertex_basis = tuple(self._bindex[("e", v)] for v in range(len(self.vertices)))
        self.arrow_basis = tuple(self._bindex[(k,)] for k in range(len(self.arrows)))

    # lookups
    def vertex_index(self, label) -> int:
        try:
            return self._vindex[str(label)]
        except KeyError:
            raise UnknownVertex(f"no vertex {label!r} in {self.name}") from None

    def arrow_index(self, label) -> int:
        try:
            return self._aindex[label]
        except KeyError:
            raise UnknownArrow(f"no arrow {label!r} in {self.name}") from None

    def word_label(self, word) -> str:
        return "*".join(self.arrows[a][0] for a in word)

    def basis_label(self, i: int) -> str:
        b = self.basis[i]
        return self.word_label(b.word) if b.word else f"e{self.vertices[b.source]}"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def blocks(self):
        """``blocks[(t, s)]`` lists basis indices of paths from s to t."""
        out = {(t, s): [] for t in range(self.n_vertices) for s in range(self.n_vertices)}
        for i, b in enumerate(self.basis):
            out[(b.target, b.source)].append(i)
        return out

    def paths_from(self, s: int):
        return [i for i, b in enumerate(self.basis) if b.source == s]

    # arithmetic
    def reduce_word(self, word) -> dict:
        """Normal form of a nonempty composable word of arrow indices as a
        sparse dict ``{basis index: coefficient}``."""
        word = tuple(word)
        if not word:
            raise ValueError("use vertex_basis for trivial paths")
        return self._reduce_long(word)

    def mul(self, i: int, j: int) -> dict:
        """Product of basis elements ``i * j`` (apply j first)."""
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        bi, bj = self.basis[i], self.basis[j]
        if bi.source != bj.target:
            out = {}
        elif not bi.word:
            out = {j: self.field(1)}
        elif not bj.word:
            out = {i: self.field(1)}
        else:
            out = self._reduce_long(bi.word + bj.word)
        self._mul_cache[key] = out
        return out

    def _reduce_long(self, word):
        if len(word) >= self._loewy_bound:
            return {}
        hit = self._reduce_cache.get(word)
        if hit is None:
            raise ValueError(f"{self.word_label(word)} is not a path")
        return hit

    def vector(self, sparse: dict) -> np.ndarray:
        v = self.field.zeros(self.dim)
        for k, c in sparse.items():
            v[k] = c
        return v

    def element(self, terms) -> np.ndarray:
        """Vector of a linear combination given as ``{label or word: coeff}``
        or a single word string like ``"a*b"`` or ``"e1"``."""
        if isinstance(terms, str):
            terms = {terms: 1}
        F = self.field
        v = F.zeros(self.dim)
        for key, c in terms.items():
            if isinstance(key, str) and key.startswith("e") and key[1:] in self._vindex:
                sparse = {self.vertex_basis[self._vindex[key[1:]]]: F(1)}
            else:
                if isinstance(key, str):
                    key = tuple(self.arrow_index(x) for x in key.split("*"))
                sparse = self._reduce_long(tuple(key))
            for k, x in sparse.items():
                v[k] = F.norm(v[k] + F(c) * x)
        return v

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        F = self.field
        out = F.zeros(self.dim)
        for i in np.nonzero(x != 0)[0]:
            for j in np.nonzero(y != 0)[0]:
                for k, c in self.mul(i, j).items():
                    out[k] += x[i] * y[j] * c
        return F.norm(out)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        F = self.field
        M = F.zeros(self.dim, self.dim)
        for i in np.nonzero(x != 0)[0]:
            for j in range(self.dim):
                for k, c in self.mul(i, j).items():
                    M[k, j] += x[i] * c
        return F.norm(M)

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> y x``."""
        F = self.field
        M = F.zeros(self.dim, self.dim)
        for i in np.nonzero(x != 0)[0]:
            for j in range(self.dim):
                for k, c in self.mul(j, i).items():
                    M[k, j] += x[i] * c
        return F.norm(M)

    def check_associative(self) -> bool:
        F = self.field
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.vector(self.mul(i, j))
                for k in range(n):
                    lhs = self.mul_vec(ij, self.vector({k: F(1)}))
                    rhs = self.mul_vec(self.vector({i: F(1)}), self.vector(self.mul(j, k)))
                    if np.any(lhs != rhs):
                        return False
        return True

    def radical_layers(self) -> int:
        """Loewy length: the least n with J^n = 0."""
        return max((b.length for b in self.basis), default=0) + 1

    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra.  Arrow and vertex indices are shared with
        this algebra (arrows reversed) and ``A.opposite().opposite() is A``."""
        if self._opposite is None:
            op = BoundQuiverAlgebra(self.presentation.opposite(), self.max_path_length)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self):
        return f"<BoundQuiverAlgebra {self.name} over {self.field.name}, dim {self.dim}>"


def build_algebra(p: AlgebraPresentation | str, max_path_length: int = 32, field: Field | None = None):
    """Build the algebra of a presentation (or of presentation text).

    The quiver must give a finite dimensional algebra in which the arrows
    generate a nilpotent ideal; otherwise :class:`NotFiniteDimensional` is
    raised once paths longer than ``max_path_length`` survive."""
    if isinstance(p, str):
        p = parse_presentation(p, field)
    elif field is not None:
        p = p.with_field(field)
    return BoundQuiverAlgebra(p, max_path_length)
