"""Simplicial complexes: constructors, subdivision, links, pseudomanifold checks.

Complexes are stored by their maximal simplices and closed under taking
faces on demand.  All values are immutable after construction and every
operation is a pure function, so shared complexes are safe to use from
several threads.  Iteration order is always lexicographic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator

from .errors import DomainError, MalformedInputError, NotFoundError

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "Orientation",
    "PseudomanifoldReport",
    "face_closure",
    "link",
    "barycentric_subdivide",
    "subdivide_with_vertex_map",
    "subdivide_subcomplex",
    "full_subcomplex",
    "skeleton",
    "cone",
    "suspension",
    "product",
    "validate_pseudomanifold",
    "check_orientable",
]


class Simplex(tuple):
    """A simplex, held as a strictly increasing tuple of vertex ids.

    Vertex ids are arbitrary non-negative integers.  Input order does not
    matter, but a repeated vertex is rejected: that would describe a
    degenerate simplex, not a face of a complex.
    """

    __slots__ = ()

    def __new__(cls, vertices: Iterable[int]) -> "Simplex":
        vs = tuple(vertices)
        if not vs:
            raise MalformedInputError("a simplex needs at least one vertex")
        for v in vs:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise MalformedInputError(
                    f"vertex ids must be non-negative integers, got {v!r}"
                )
        ordered = tuple(sorted(vs))
        if len(set(ordered)) != len(ordered):
            raise MalformedInputError(f"duplicate vertex in simplex {vs!r}")
        return super().__new__(cls, ordered)

    @property
    def dimension(self) -> int:
        return len(self) - 1

    def faces(self) -> Iterator["Simplex"]:
        """All nonempty faces, the simplex itself included."""
        for size in range(1, len(self) + 1):
            for c in itertools.combinations(self, size):
                yield Simplex(c)

    def boundary(self) -> Iterator[tuple[int, "Simplex"]]:
        """Codimension-one faces with the usual alternating signs.

        Yields (sign, face) where face omits the vertex at position k and
        sign = (-1)**k.
        """
        for k in range(len(self)):
            yield (-1) ** k, Simplex(self[:k] + self[k + 1 :])

    def __repr__(self) -> str:
        return f"Simplex{tuple(self)!r}"


class SimplicialComplex:
    """A finite, face-closed simplicial complex.

    Only the maximal simplices are stored; the full face set is computed
    lazily and cached.  Two complexes are equal iff they have the same
    simplices.
    """

    __slots__ = ("_maximal", "_by_dim", "_all")

    def __init__(self, maximal: Iterable[Iterable[int]]):
        simplices = {Simplex(s) for s in maximal}
        # keep only the inclusion-maximal generators
        drop = set()
        by_size: dict[int, list[Simplex]] = {}
        for s in simplices:
            by_size.setdefault(len(s), []).append(s)
        sizes = sorted(by_size)
        for s in simplices:
            sset = set(s)
            for size in sizes:
                if size <= len(s):
                    continue
                if any(sset.issubset(t) for t in by_size[size]):
                    drop.add(s)
                    break
        self._maximal: tuple[Simplex, ...] = tuple(sorted(simplices - drop))
        self._by_dim: dict[int, tuple[Simplex, ...]] | None = None
        self._all: frozenset[Simplex] | None = None

    # -- basic queries ---------------------------------------------------

    @property
    def maximal_simplices(self) -> tuple[Simplex, ...]:
        return self._maximal

    @property
    def dimension(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        if not self._maximal:
            return -1
        return max(s.dimension for s in self._maximal)

    @property
    def is_empty(self) -> bool:
        return not self._maximal

    def _face_table(self) -> dict[int, tuple[Simplex, ...]]:
        if self._by_dim is None:
            seen: set[Simplex] = set()
            for m in self._maximal:
                seen.update(m.faces())
            table: dict[int, list[Simplex]] = {}
            for s in seen:
                table.setdefault(s.dimension, []).append(s)
            self._by_dim = {d: tuple(sorted(v)) for d, v in table.items()}
            self._all = frozenset(seen)
        return self._by_dim

    def simplices(self, dim: int | None = None) -> tuple[Simplex, ...]:
        """All simplices of one dimension (lexicographic), or of every
        dimension in increasing (dimension, lexicographic) order."""
        table = self._face_table()
        if dim is not None:
            return table.get(dim, ())
        out: list[Simplex] = []
        for d in sorted(table):
            out.extend(table[d])
        return tuple(out)

    def __contains__(self, simplex) -> bool:
        try:
            s = simplex if isinstance(simplex, Simplex) else Simplex(simplex)
        except MalformedInputError:
            return False
        self._face_table()
        assert self._all is not None
        return s in self._all

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Simplex counts (f_0, ..., f_m)."""
        table = self._face_table()
        return tuple(len(table.get(d, ())) for d in range(self.dimension + 1))

    @property
    def simplex_count(self) -> int:
        return sum(self.f_vector)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._maximal == other._maximal

    def __hash__(self) -> int:
        return hash(self._maximal)

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex(dim={self.dimension}, "
            f"maximal={len(self._maximal)})"
        )


def face_closure(maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Smallest face-closed complex containing the given simplices."""
    return SimplicialComplex(maximal)


def link(K: SimplicialComplex, s: Iterable[int]) -> SimplicialComplex:
    """Link of s in K: all t with t disjoint from s and t + s in K."""
    s = s if isinstance(s, Simplex) else Simplex(s)
    if s not in K:
        raise NotFoundError(f"{s!r} is not a simplex of the complex")
    sset = set(s)
    out = []
    for u in K.simplices():
        if len(u) > len(s) and sset.issubset(u):
            out.append(tuple(v for v in u if v not in sset))
    return SimplicialComplex(out)


def full_subcomplex(K: SimplicialComplex, vertex_set: Iterable[int]) -> SimplicialComplex:
    """All simplices of K whose vertices all lie in the given set."""
    vs = set(vertex_set)
    return SimplicialComplex(s for s in K.simplices() if vs.issuperset(s))


def skeleton(K: SimplicialComplex, dim: int) -> SimplicialComplex:
    """The subcomplex of all simplices of dimension at most dim."""
    if dim < 0:
        return SimplicialComplex(())
    return SimplicialComplex(
        s for d in range(0, min(dim, K.dimension) + 1) for s in K.simplices(d)
    )


def cone(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Cone over K with a fresh apex vertex."""
    if apex in K.vertices:
        raise MalformedInputError(f"apex {apex} already occurs in the complex")
    if K.is_empty:
        return SimplicialComplex([[apex]])
    return SimplicialComplex(
        tuple(m) + (apex,) for m in K.maximal_simplices
    )


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """Union of two cones over K with distinct fresh apexes."""
    fresh = max(K.vertices) + 1 if not K.is_empty else 0
    north, south = fresh, fresh + 1
    if K.is_empty:
        return SimplicialComplex([[north], [south]])
    maximal = [tuple(m) + (north,) for m in K.maximal_simplices]
    maximal += [tuple(m) + (south,) for m in K.maximal_simplices]
    return SimplicialComplex(maximal)


def product_with_vertex_map(
    K: SimplicialComplex, L: SimplicialComplex
) -> tuple[SimplicialComplex, dict[tuple[int, int], int]]:
    """Staircase triangulation of |K| x |L| plus its (u, v) -> id map.

    The vertex set is the cartesian product of the vertex sets; each cell
    sigma x tau is cut along monotone staircase paths, which glue
    consistently because the cut only depends on the vertex orders.
    """
    pairs = sorted((u, v) for u in K.vertices for v in L.vertices)
    vid = {p: i for i, p in enumerate(pairs)}
    maximal = []
    for sigma in K.maximal_simplices:
        for tau in L.maximal_simplices:
            p, q = sigma.dimension, tau.dimension
            # a staircase = positions of the p "right" steps among p+q steps
            for rights in itertools.combinations(range(p + q), p):
                a = b = 0
                cell = [vid[(sigma[0], tau[0])]]
                for step in range(p + q):
                    if step in rights:
                        a += 1
                    else:
                        b += 1
                    cell.append(vid[(sigma[a], tau[b])])
                maximal.append(cell)
    return SimplicialComplex(maximal), vid


def product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L|."""
    P, _ = product_with_vertex_map(K, L)
    return P


def subdivide_with_vertex_map(
    K: SimplicialComplex,
) -> tuple[SimplicialComplex, dict[Simplex, int]]:
    """Barycentric subdivision plus the simplex -> new vertex id map.

    New vertices are the simplices of K, numbered in (dimension,
    lexicographic) order; the maximal simplices of the subdivision are the
    maximal flags of the face poset.
    """
    vmap = {s: i for i, s in enumerate(K.simplices())}
    maximal = []
    for m in K.maximal_simplices:
        for perm in itertools.permutations(m):
            flag = [vmap[Simplex(perm[: k + 1])] for k in range(len(perm))]
            maximal.append(flag)
    return SimplicialComplex(maximal), vmap


def barycentric_subdivide(K: SimplicialComplex) -> SimplicialComplex:
    """Standard barycentric subdivision of K."""
    sd, _ = subdivide_with_vertex_map(K)
    return sd


def subdivide_subcomplex(
    sub: SimplicialComplex, vmap: dict[Simplex, int]
) -> SimplicialComplex:
    """Image of a subcomplex under a subdivision produced with
    subdivide_with_vertex_map; the result is a full subcomplex of the
    subdivided host."""
    if sub.is_empty:
        return SimplicialComplex(())
    maximal = []
    for m in sub.maximal_simplices:
        for perm in itertools.permutations(m):
            flag = [vmap[Simplex(perm[: k + 1])] for k in range(len(perm))]
            maximal.append(flag)
    return SimplicialComplex(maximal)


def subdivision_size_estimate(K: SimplicialComplex) -> int:
    """Number of maximal simplices the subdivision will have."""
    return sum(factorial(m.dimension + 1) for m in K.maximal_simplices)


# -- pseudomanifold validation and orientation ---------------------------


@dataclass(frozen=True)
class PseudomanifoldReport:
    """Outcome of the pseudomanifold test.

    verdict is purity plus ridge degree 2; singular_candidate collects the
    simplices whose links fail the homology-sphere test.  That test is a
    heuristic: a homology sphere that is not a sphere passes it, so a
    candidate can miss genuinely singular points.  Declared singular sets
    always take precedence over this report.
    """

    dimension: int
    is_pure: bool
    ridge_degrees_ok: bool
    singular_candidate: SimplicialComplex

    @property
    def verdict(self) -> bool:
        return self.is_pure and self.ridge_degrees_ok


def _ridge_degrees(K: SimplicialComplex) -> dict[Simplex, int]:
    m = K.dimension
    if m <= 0:
        return {}
    degrees: dict[Simplex, int] = {r: 0 for r in K.simplices(m - 1)}
    for top in K.simplices(m):
        for _, r in top.boundary():
            degrees[r] += 1
    return degrees


def _sphere_betti(dim: int) -> tuple[int, ...]:
    # reduced homology of S^dim concentrated in degree dim; S^0 = two points
    if dim < 0:
        return ()
    if dim == 0:
        return (2,)
    return (1,) + (0,) * (dim - 1) + (1,)


def validate_pseudomanifold(K: SimplicialComplex) -> PseudomanifoldReport:
    """Check purity and ridge degrees, and flag link failures.

    A closed m-pseudomanifold must be pure of dimension m with every
    (m-1)-simplex in exactly two m-simplices (degree > 2 fails too; spaces
    with boundary are out of scope).  singular_candidate is the closure of
    the simplices whose link does not have the rational homology of a
    sphere of the complementary dimension.
    """
    from .chains import betti_numbers, chain_complex

    if K.is_empty:
        raise DomainError("cannot validate an empty complex")
    m = K.dimension
    is_pure = all(s.dimension == m for s in K.maximal_simplices)
    degrees = _ridge_degrees(K)
    ridge_ok = all(d == 2 for d in degrees.values())
    failing = []
    for s in K.simplices():
        if s.dimension == m:
            continue
        lk = link(K, s)
        expected = _sphere_betti(m - 1 - s.dimension)
        actual = () if lk.is_empty else tuple(betti_numbers(chain_complex(lk)))
        actual = actual + (0,) * (len(expected) - len(actual))
        if actual != expected:
            failing.append(s)
    return PseudomanifoldReport(
        dimension=m,
        is_pure=is_pure,
        ridge_degrees_ok=ridge_ok,
        singular_candidate=SimplicialComplex(failing),
    )


@dataclass(frozen=True)
class Orientation:
    """A coherent choice of sign for every top-dimensional simplex.

    On each (m-1)-simplex shared by exactly two m-simplices, the two
    induced boundary orientations cancel.
    """

    signs: dict[Simplex, int]

    def sign(self, s: Simplex) -> int:
        return self.signs[s]


def check_orientable(K: SimplicialComplex) -> Orientation | None:
    """Propagate orientations across ridges; None if inconsistent.

    Requires purity and ridge degree <= 2; propagation only crosses ridges
    of degree exactly 2 (the regular part), so pseudomanifold singular sets
    of codimension >= 2 never obstruct it.
    """
    m = K.dimension
    if not all(s.dimension == m for s in K.maximal_simplices):
        raise DomainError("orientation needs a pure complex")
    if m <= 0:
        return Orientation(signs={s: 1 for s in K.simplices(m)})
    degrees = _ridge_degrees(K)
    if any(d > 2 for d in degrees.values()):
        raise DomainError("a ridge lies in more than two top simplices")

    # ridge -> the (sign, top simplex) pairs inducing it
    incident: dict[Simplex, list[tuple[int, Simplex]]] = {}
    for top in K.simplices(m):
        for sgn, r in top.boundary():
            incident.setdefault(r, []).append((sgn, top))

    signs: dict[Simplex, int] = {}
    for seed in K.simplices(m):
        if seed in signs:
            continue
        signs[seed] = 1
        queue = [seed]
        while queue:
            top = queue.pop()
            for sgn, r in top.boundary():
                pair = incident[r]
                if len(pair) != 2:
                    continue
                (s1, t1), (s2, t2) = pair
                other, s_top, s_other = (t2, s1, s2) if t1 == top else (t1, s2, s1)
                # induced orientations must be opposite across the ridge
                needed = -signs[top] * s_top * s_other
                if other in signs:
                    if signs[other] != needed:
                        return None
                else:
                    signs[other] = needed
                    queue.append(other)
    return Orientation(signs=signs)
