"""Naive dense reference computations.

This module is the second, slow route for everything the engine computes:
dense fraction-free elimination for ranks, dense row reduction for
kernels, and a from-scratch allowability loop for intersection homology.
It deliberately shares no elimination or kernel code with the production
path so the two can check each other.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import DomainError
from .intersection import Filtration, Perversity
from .simplicial import Simplex, SimplicialComplex

__all__ = [
    "dense_rank",
    "dense_kernel",
    "dense_betti",
    "dense_intersection_betti",
]


def dense_rank(rows: list[list[int | Fraction]]) -> int:
    """Rank by dense fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    # clear denominators row by row; scaling rows keeps the rank
    m = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        m.append([int(x * denom) for x in fr])
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else abs(b)


def dense_kernel(rows: list[list[int | Fraction]], ncols: int) -> list[list[Fraction]]:
    """Null-space basis by dense reduced row echelon form."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -m[i][f]
        basis.append(vec)
    return basis


def _dense_boundary(K: SimplicialComplex, i: int) -> list[list[int]]:
    lower = K.simplices(i - 1)
    upper = K.simplices(i)
    index = {s: r for r, s in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for c, s in enumerate(upper):
        sign = 1
        for k in range(len(s)):
            face = Simplex(s[:k] + s[k + 1 :])
            rows[index[face]][c] = sign
            sign = -sign
    return rows


def dense_betti(K: SimplicialComplex) -> list[int]:
    """Betti numbers straight from dense boundary matrices."""
    if K.is_empty:
        return []
    m = K.dimension
    dims = [len(K.simplices(d)) for d in range(m + 1)]
    ranks = [dense_rank(_dense_boundary(K, i)) for i in range(1, m + 1)]
    out = []
    for i in range(m + 1):
        leaving = ranks[i - 1] if i >= 1 else 0
        entering = ranks[i] if i < m else 0
        out.append(dims[i] - leaving - entering)
    return out


def _dense_allowable(
    s: Simplex, i: int, p: Perversity, F: Filtration
) -> bool:
    # re-derived on purpose: max dimension of a face inside each level
    m = F.host.dimension
    for k in range(2, m + 1):
        level = F.level_set(m - k)
        worst = None
        for size in range(1, len(s) + 1):
            for face in itertools.combinations(s, size):
                if Simplex(face) in level:
                    worst = size - 1
        if worst is not None and worst > p[k] + i - k:
            return False
    return True


def dense_intersection_betti(
    X: SimplicialComplex, F: Filtration, p: Perversity
) -> list[int]:
    """Intersection Betti numbers by brute force.

    For each degree: enumerate the allowable simplices, take the dense
    kernel of the boundary rows landing on non-allowable simplices, then
    rank the boundary restricted to those kernels.
    """
    if F.host != X:
        raise DomainError("filtration belongs to a different host complex")
    m = X.dimension
    kernels: list[list[list[Fraction]]] = []  # per degree: basis as host-coord columns
    allowables: list[tuple[Simplex, ...]] = []
    for i in range(m + 1):
        allow = tuple(s for s in X.simplices(i) if _dense_allowable(s, i, p, F))
        allowables.append(allow)
        hosts = X.simplices(i)
        host_pos = {s: c for c, s in enumerate(hosts)}
        if i == 0:
            vecs = dense_kernel([], len(allow))
        else:
            full = _dense_boundary(X, i)
            bad_rows = [
                full[r]
                for r, s in enumerate(X.simplices(i - 1))
                if s not in set(allowables[i - 1])
            ]
            restricted = [
                [row[host_pos[s]] for s in allow] for row in bad_rows
            ]
            vecs = dense_kernel(restricted, len(allow))
        # embed into full host coordinates of degree i
        embedded = []
        for v in vecs:
            col = [Fraction(0)] * len(hosts)
            for j, s in enumerate(allow):
                col[host_pos[s]] = v[j]
            embedded.append(col)
        kernels.append(embedded)

    # rank of the boundary restricted to each kernel span
    ranks = []
    for i in range(1, m + 1):
        if not kernels[i]:
            ranks.append(0)
            continue
        full = _dense_boundary(X, i)
        images = []
        for col in kernels[i]:
            images.append(
                [sum(full[r][c] * col[c] for c in range(len(col))) for r in range(len(full))]
            )
        # images as columns of a dense matrix
        mat = [[images[j][r] for j in range(len(images))] for r in range(len(full))]
        ranks.append(dense_rank(mat))

    out = []
    for i in range(m + 1):
        leaving = ranks[i - 1] if i >= 1 else 0
        entering = ranks[i] if i < m else 0
        out.append(len(kernels[i]) - leaving - entering)
    return out
