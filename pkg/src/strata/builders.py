"""Named complexes used by the command line and the test corpus."""

from __future__ import annotations

from .errors import DomainError
from .simplicial import SimplicialComplex, cone, product, suspension

__all__ = [
    "point",
    "circle",
    "sphere",
    "torus",
    "octahedron",
    "pinched_torus",
    "projective_plane",
    "suspended_torus",
]


def point() -> SimplicialComplex:
    return SimplicialComplex([[0]])


def circle(n: int) -> SimplicialComplex:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise DomainError("a simplicial circle needs at least 3 vertices")
    return SimplicialComplex([[i, (i + 1) % n] for i in range(n)])


def sphere(m: int) -> SimplicialComplex:
    """Boundary of the standard (m+1)-simplex."""
    if m < 0:
        raise DomainError("sphere dimension must be non-negative")
    vs = tuple(range(m + 2))
    return SimplicialComplex(
        [vs[:k] + vs[k + 1 :] for k in range(m + 2)]
    )


def torus() -> SimplicialComplex:
    """9-vertex staircase product of two 3-cycles: 27 edges, 18 triangles."""
    return product(circle(3), circle(3))


def octahedron() -> SimplicialComplex:
    """Suspension of a 4-cycle; the 6-vertex 2-sphere."""
    return suspension(circle(4))


def suspended_torus() -> SimplicialComplex:
    """Suspension of the 9-vertex torus; apexes are vertices 9 and 10."""
    return suspension(torus())


def pinched_torus() -> SimplicialComplex:
    """A torus with one meridian collapsed: a 2-pseudomanifold whose only
    singular point is vertex 0.

    Built as a triangulated 2-sphere (square antiprism with two cone
    points) whose poles have disjoint links and are then identified, which
    is the same space.  9 vertices, 24 edges, 16 triangles.
    """
    pinch = 0
    top = [1, 2, 3, 4]
    bot = [5, 6, 7, 8]
    tris = []
    for i in range(4):
        j = (i + 1) % 4
        tris.append([top[i], top[j], bot[i]])
        tris.append([top[j], bot[i], bot[j]])
        tris.append([pinch, top[i], top[j]])
        tris.append([pinch, bot[i], bot[j]])
    return SimplicialComplex(tris)


def projective_plane() -> SimplicialComplex:
    """The 6-vertex triangulation of the projective plane."""
    return SimplicialComplex(
        [
            [0, 1, 2],
            [0, 1, 3],
            [0, 2, 4],
            [0, 3, 5],
            [0, 4, 5],
            [1, 2, 5],
            [1, 3, 4],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
        ]
    )


def cone_over(K: SimplicialComplex) -> SimplicialComplex:
    """Cone with the apex one past the largest vertex id."""
    apex = max(K.vertices) + 1 if not K.is_empty else 0
    return cone(K, apex)
