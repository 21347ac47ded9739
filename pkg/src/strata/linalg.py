"""Exact linear algebra over Q and prime fields.

Matrices are numpy object arrays.  Over Q the entries are ``gmpy2.mpq``
rationals, over F_p they are Python ints normalized to ``0..p-1``.  Every
routine takes the field explicitly so that no floating point ever enters.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
import numpy as np


class Field:
    """The ground field: rationals when ``p`` is None, else F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``Q``, ``q``, ``F5``, ``f:5`` or ``GF(5)``."""
        t = text.strip().upper().replace(" ", "")
        if t in ("Q", "QQ"):
            return cls(None)
        for prefix in ("F:", "GF(", "F"):
            if t.startswith(prefix):
                digits = t[len(prefix):].rstrip(")")
                if digits.isdigit():
                    return cls(int(digits))
        raise ValueError(f"unknown field {text!r}")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"

    # scalars
    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return gmpy2.mpq(Fraction(x))
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            return gmpy2.mpq(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return gmpy2.mpq(1) / x
        return pow(int(x), -1, self.p)

    def to_json(self, x):
        """Integers stay ints, other rationals become ``"a/b"`` strings."""
        if self.p is not None:
            return int(x)
        x = gmpy2.mpq(x)
        if x.denominator == 1:
            return int(x.numerator)
        return f"{int(x.numerator)}/{int(x.denominator)}"

    # arrays
    def array(self, rows, shape=None) -> np.ndarray:
        a = np.array(rows, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        out = np.empty(a.shape, dtype=object)
        flat_in, flat_out = a.reshape(-1), out.reshape(-1)
        for k, x in enumerate(flat_in):
            flat_out[k] = self(x)
        return out

    def zeros(self, m: int, n: int | None = None) -> np.ndarray:
        shape = (m,) if n is None else (m, n)
        out = np.empty(shape, dtype=object)
        out.fill(self(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self(1)
        return out

    def norm(self, a: np.ndarray) -> np.ndarray:
        """Reduce an integer-valued result mod p (identity over Q)."""
        if self.p is None:
            return a
        return a % self.p

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[0], b.shape[1]) if b.ndim == 2 else self.zeros(a.shape[0])
        return self.norm(a.dot(b))

    def matmul(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.dot(out, m)
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        m, n = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
        if m == 0 or n == 0:
            return self.zeros(m, n)
        return self.norm(np.kron(a, b))

    def random_matrix(self, rng, m: int, n: int, low: int = -2, high: int = 2) -> np.ndarray:
        vals = rng.integers(low, high + 1, size=(m, n))
        return self.array(vals.tolist(), (m, n)) if m and n else self.zeros(m, n)


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


def rref(a: np.ndarray, field: Field):
    """Reduced row echelon form.  Returns ``(R, pivots)`` with R of the
    same shape as ``a`` (zero rows kept at the bottom)."""
    R = a.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    p = field.p
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = field.norm(R[r] * field.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col != 0)[0]
        if len(rows):
            R[rows] -= np.outer(col[rows], R[r])
            if p is not None:
                R[rows] %= p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(a: np.ndarray, field: Field) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, field)[1])


def nullspace(a: np.ndarray, field: Field) -> np.ndarray:
    """Columns spanning ``{x : a x = 0}``.

    The basis has the identity at the free positions, so the coordinates of a
    vector in the kernel are its entries at those positions (see
    :func:`nullspace_free`)."""
    return nullspace_free(a, field)[0]


def nullspace_free(a: np.ndarray, field: Field):
    m, n = a.shape
    if m == 0:
        return field.eye(n), list(range(n))
    R, piv = rref(a, field)
    free = [c for c in range(n) if c not in set(piv)]
    K = field.zeros(n, len(free))
    for k, f in enumerate(free):
        K[f, k] = field(1)
        for r, pc in enumerate(piv):
            K[pc, k] = field.norm(-R[r, f])
    return K, free


def canonical_basis(a: np.ndarray, field: Field):
    """Canonical basis of the column span of ``a``.

    Returns ``(B, rows)`` where ``B`` has independent columns spanning the
    same space and ``B[rows]`` is the identity.  Coordinates of ``v`` in the
    span are ``v[rows]``."""
    n = a.shape[0]
    if a.shape[1] == 0 or n == 0:
        return field.zeros(n, 0), []
    R, piv = rref(a.T.copy(), field)
    return R[: len(piv)].T.copy(), piv


def solve(a: np.ndarray, b: np.ndarray, field: Field):
    """A particular solution ``x`` of ``a x = b`` or None if inconsistent.

    ``b`` may be a vector or a matrix."""
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    m, n = a.shape
    k = b.shape[1]
    if m == 0:
        x = field.zeros(n, k)
        return x[:, 0] if vec else x
    R, piv = rref(np.hstack([a, b]), field)
    if piv and piv[-1] >= n:
        return None
    x = field.zeros(n, k)
    for r, c in enumerate(piv):
        x[c] = R[r, n:]
    return x[:, 0] if vec else x


def inverse(a: np.ndarray, field: Field):
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(a, field.eye(n), field)
    if x is None or rank(a, field) < n:
        raise ZeroDivisionError("singular matrix")
    return x


def quotient_map(u: np.ndarray, n: int, field: Field):
    """Canonical quotient of ``k^n`` by the column span of ``u``.

    Returns ``(q, s)`` with ``q u = 0``, ``q s = I`` and ``s`` the inclusion
    of the standard basis vectors at non-pivot positions."""
    if u.shape[1] == 0:
        return field.eye(n), field.eye(n)
    R, piv = rref(u.T.copy(), field)
    pset = set(piv)
    free = [c for c in range(n) if c not in pset]
    q = field.zeros(len(free), n)
    s = field.zeros(n, len(free))
    for k, f in enumerate(free):
        q[k, f] = field(1)
        s[f, k] = field(1)
    for r, c in enumerate(piv):
        for k, f in enumerate(free):
            q[k, c] = field.norm(-R[r, f])
    return q, s


def in_span(u: np.ndarray, v: np.ndarray, field: Field) -> bool:
    if is_zero(v):
        return True
    if u.shape[1] == 0:
        return False
    return solve(u, v, field) is not None


def right_inverse(a: np.ndarray, field: Field) -> np.ndarray:
    """``x`` with ``a x = I`` for a surjective ``a``."""
    x = solve(a, field.eye(a.shape[0]), field)
    if x is None:
        raise ValueError("matrix is not surjective")
    return x
