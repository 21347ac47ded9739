"""Brute-force oracles over F_2 that share no code with the package
beyond reading module matrices."""

import itertools

import numpy as np


def _vec(bits, n):
    return tuple((bits >> k) & 1 for k in range(n))


def _add(u, v):
    return tuple((a + b) % 2 for a, b in zip(u, v))


def _span(vectors, n):
    out = {tuple([0] * n)}
    for v in vectors:
        out |= {_add(u, v) for u in out}
    return frozenset(out)


def subspaces(n):
    """All subspaces of F_2^n as frozensets of vectors."""
    vecs = [_vec(b, n) for b in range(1, 2 ** n)]
    seen = {_span([], n)}
    frontier = [_span([], n)]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v not in S:
                    T = _span(list(S) + [v], n)
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    return list(seen)


def _dim(S):
    return len(S).bit_length() - 1


def _matrices(M):
    return [np.array([[int(x) % 2 for x in row] for row in m], dtype=int).reshape(m.shape) for m in M.maps]


def _apply(m, v):
    if m.size == 0:
        return tuple([0] * m.shape[0])
    return tuple(int(x) % 2 for x in m.dot(np.array(v, dtype=int)))


def submodules(M):
    """All submodules as tuples of vertexwise subspaces."""
    A = M.algebra
    mats = _matrices(M)
    per_vertex = [subspaces(d) for d in M.dims]
    out = []
    for choice in itertools.product(*per_vertex):
        ok = True
        for k, (_, s, t) in enumerate(A.arrows):
            if any(_apply(mats[k], v) not in choice[t] for v in choice[s]):
                ok = False
                break
        if ok:
            out.append(choice)
    return out


def _quotient_iso(M, mats, lower, upper, T):
    """Is ``upper / lower`` isomorphic to ``T``?  Brute force over linear
    maps from ``T`` into ``upper`` that intertwine modulo ``lower`` and hit
    a complement of ``lower``."""
    A = M.algebra
    tm = _matrices(T)
    n = len(M.dims)
    if [_dim(upper[i]) - _dim(lower[i]) for i in range(n)] != list(T.dims):
        return False
    choices = []
    for i in range(n):
        choices.append(list(itertools.product(sorted(upper[i]), repeat=T.dims[i])))
    for phi in itertools.product(*choices):
        # images of the basis must be independent modulo lower
        good = True
        for i in range(n):
            if T.dims[i] and _span(list(lower[i]) + list(phi[i]), M.dims[i]) != upper[i]:
                good = False
                break
        if not good:
            continue
        for k, (_, s, t) in enumerate(A.arrows):
            for b in range(T.dims[s]):
                lhs = _apply(mats[k], phi[s][b])
                col = tm[k][:, b] if T.dims[t] else []
                rhs = tuple([0] * M.dims[t])
                for c, x in enumerate(col):
                    if x % 2:
                        rhs = _add(rhs, phi[t][c])
                if _add(lhs, rhs) not in lower[t]:
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


def is_filtered_bruteforce(M, thetas):
    """Enumerate chains of submodules ``0 = M_0 < M_1 < ... < M`` whose
    factors are isomorphic to members of ``thetas``."""
    mats = _matrices(M)
    subs = submodules(M)
    n = len(M.dims)
    zero = subs[0]
    for S in subs:
        if all(len(S[i]) == 1 for i in range(n)):
            zero = S
    full = tuple(_span([_vec(1 << k, M.dims[i]) for k in range(M.dims[i])], M.dims[i]) for i in range(n))
    reach = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for lo in frontier:
            for up in subs:
                if up in reach or not all(lo[i] <= up[i] for i in range(n)):
                    continue
                if any(_quotient_iso(M, mats, lo, up, T) for T in thetas):
                    reach.add(up)
                    nxt.append(up)
        frontier = nxt
    return full in reach


def count_idempotents(M, hom):
    """Number of idempotents of End(M) over F_2 by enumerating all
    ``2^dim`` endomorphisms (given as combinations of a Hom basis)."""
    basis = [[np.array([[int(x) % 2 for x in row] for row in m], dtype=int).reshape(m.shape) for m in f.mats]
             for f in hom]
    count = 0
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        e = [sum((c * b[i] for c, b in zip(coeffs, basis)), np.zeros((M.dims[i], M.dims[i]), dtype=int)) % 2
             for i in range(len(M.dims))]
        if all(np.array_equal(x.dot(x) % 2, x) for x in e):
            count += 1
    return count


def path_count(vertices, arrows, zero_relations):
    """Dimension of a monomial algebra: the number of paths avoiding the
    given zero words.  Words are tuples read right to left."""
    paths = [(v,) for v in vertices]
    total = len(paths)
    current = [((), v, v) for v in vertices]
    while current:
        nxt = []
        for word, s, t in current:
            for label, a, b in arrows:
                if a == t:
                    w = (label,) + word
                    if any(w[k:k + len(r)] == r for r in zero_relations for k in range(len(w) - len(r) + 1)):
                        continue
                    nxt.append((w, s, b))
        total += len(nxt)
        current = nxt
    return total
