"""Perversities, filtrations, allowability, and intersection chain complexes.

A perversity is an integer sequence (p_2, ..., p_m) with p_2 = 0 and unit
increments.  Against a filtration X_0 <= ... <= X_{m-2} of an
m-dimensional host, a simplex s inside an i-chain is allowable when

    dim(|s| intersect X_{m-k}) <= p_k + i - k        for every 2 <= k <= m,

where the intersection is the union of the faces of s lying in X_{m-k} and
an empty intersection makes the condition vacuous.  The degree-i space of
the intersection chain complex consists of the chains supported on
allowable i-simplices whose boundaries are supported on allowable
(i-1)-simplices.  Allowability is a per-simplex predicate, so each degree
is a coordinate subspace intersected with one kernel, which is exactly how
it is computed here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .chains import (
    ChainComplexData,
    RationalSparseMatrix,
    betti_numbers,
    boundary_matrix,
    kernel_basis_with_free,
)
from .errors import DomainError, InvariantViolationError, MalformedInputError
from .simplicial import (
    Simplex,
    SimplicialComplex,
    full_subcomplex,
    skeleton,
    subdivide_with_vertex_map,
    subdivide_subcomplex,
)

__all__ = [
    "Perversity",
    "Filtration",
    "IntersectionChainComplex",
    "is_allowable",
    "intersection_chain_complex",
    "intersection_betti",
    "regular_part",
    "default_filtration",
]


@dataclass(frozen=True)
class Perversity:
    """Values (p_2, ..., p_m); empty for hosts of dimension below 2."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            return
        if vals[0] != 0:
            raise MalformedInputError(f"a perversity starts at 0, got {vals[0]}")
        for a, b in zip(vals, vals[1:]):
            if b - a not in (0, 1):
                raise MalformedInputError(
                    f"perversity steps must be 0 or 1, got {a} -> {b}"
                )

    @classmethod
    def zero(cls, m: int) -> "Perversity":
        return cls(tuple(0 for _ in range(max(m - 1, 0))))

    @classmethod
    def top(cls, m: int) -> "Perversity":
        return cls(tuple(k - 2 for k in range(2, m + 1)))

    @classmethod
    def parse(cls, text: str, m: int) -> "Perversity":
        """CLI syntax: "zero", "top", or a comma list of p_2..p_m."""
        text = text.strip()
        if text == "zero":
            return cls.zero(m)
        if text == "top":
            return cls.top(m)
        try:
            vals = tuple(int(x) for x in text.split(","))
        except ValueError as exc:
            raise MalformedInputError(f"cannot parse perversity {text!r}") from exc
        p = cls(vals)
        if len(vals) != max(m - 1, 0):
            raise MalformedInputError(
                f"perversity {text!r} has {len(vals)} values but dimension "
                f"{m} needs {max(m - 1, 0)}"
            )
        return p

    def __getitem__(self, k: int) -> int:
        """p_k for 2 <= k <= m."""
        return self.values[k - 2]

    def __len__(self) -> int:
        return len(self.values)

    def complement(self, m: int) -> "Perversity":
        """The complementary perversity t - p in dimension m."""
        if len(self.values) != max(m - 1, 0):
            raise DomainError(f"perversity has wrong length for dimension {m}")
        top = Perversity.top(m)
        return Perversity(tuple(t - p for t, p in zip(top.values, self.values)))

    def __le__(self, other: "Perversity") -> bool:
        if len(self.values) != len(other.values):
            raise DomainError("cannot compare perversities of different lengths")
        return all(a <= b for a, b in zip(self.values, other.values))

    def display(self) -> str:
        if not self.values:
            return "0"
        if all(v == 0 for v in self.values):
            return "0"
        if self.values == Perversity.top(len(self.values) + 1).values:
            return "t"
        return "(" + ",".join(str(v) for v in self.values) + ")"


class Filtration:
    """Nested subcomplexes X_0 <= ... <= X_{m-2} of a host complex.

    Each level is face-closed with dim X_i <= i, and the simplices added at
    level i (those not already in level i-1) must all have dimension
    exactly i, a dimension-purity shadow of a genuine stratification.
    """

    __slots__ = ("host", "levels", "_level_sets")

    def __init__(self, host: SimplicialComplex, levels: tuple[SimplicialComplex, ...]):
        m = host.dimension
        expected = max(m - 1, 0)
        if len(levels) != expected:
            raise DomainError(
                f"a {m}-dimensional host needs {expected} filtration levels, "
                f"got {len(levels)}"
            )
        host_simplices = set(host.simplices())
        prev: set[Simplex] = set()
        level_sets: list[frozenset[Simplex]] = []
        for i, level in enumerate(levels):
            cur = set(level.simplices())
            if not cur.issubset(host_simplices):
                raise DomainError(f"filtration level {i} is not a subcomplex of the host")
            if not prev.issubset(cur):
                raise DomainError(f"filtration level {i} does not contain level {i - 1}")
            if level.dimension > i:
                raise DomainError(
                    f"filtration level {i} has dimension {level.dimension} > {i}"
                )
            added = cur - prev
            maximal_added = {
                s for s in added if not any(s != t and set(s) < set(t) for t in added)
            }
            if any(s.dimension != i for s in maximal_added):
                raise DomainError(
                    f"the stratum added at level {i} is not pure of dimension {i}"
                )
            level_sets.append(frozenset(cur))
            prev = cur
        self.host = host
        self.levels = tuple(levels)
        self._level_sets = tuple(level_sets)

    def level_set(self, i: int) -> frozenset[Simplex]:
        """Simplices of X_i; empty beyond the stored range (i < 0)."""
        if i < 0:
            return frozenset()
        return self._level_sets[i]

    @property
    def singular_set(self) -> SimplicialComplex:
        """The deepest level X_{m-2} (empty for manifolds)."""
        if not self.levels:
            return SimplicialComplex(())
        return self.levels[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.host == other.host and self.levels == other.levels

    def __repr__(self) -> str:
        dims = [lvl.dimension for lvl in self.levels]
        return f"Filtration(host dim {self.host.dimension}, level dims {dims})"


def default_filtration(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> Filtration:
    """Skeleton filtration of the declared singular set: X_i = skel_i."""
    m = X.dimension
    sigma = singular if singular is not None else SimplicialComplex(())
    if not sigma.is_empty:
        if sigma.dimension > m - 2:
            raise DomainError(
                f"singular set has dimension {sigma.dimension}, "
                f"allowed at most {m - 2}"
            )
        if not set(sigma.simplices()).issubset(set(X.simplices())):
            raise DomainError("singular set is not a subcomplex of the host")
    levels = tuple(skeleton(sigma, i) for i in range(max(m - 1, 0)))
    return Filtration(X, levels)


def _intersection_dimension(s: Simplex, level: frozenset[Simplex]) -> int | None:
    """dim of the union of faces of s inside the level; None if empty."""
    if not level:
        return None
    for size in range(len(s), 0, -1):
        for face in itertools.combinations(s, size):
            if Simplex(face) in level:
                return size - 1
    return None


def is_allowable(s: Simplex, i: int, p: Perversity, F: Filtration) -> bool:
    """Allowability of a simplex occurring in a chain of degree i."""
    m = F.host.dimension
    if len(p) != max(m - 1, 0):
        raise DomainError(f"perversity has wrong length for dimension {m}")
    for k in range(2, m + 1):
        d = _intersection_dimension(s, F.level_set(m - k))
        if d is not None and d > p[k] + i - k:
            return False
    return True


@dataclass(frozen=True)
class IntersectionChainComplex:
    """The intersection chain complex in explicit bases.

    allowable[i] lists the allowable i-simplices; basis[i] spans the
    degree-i chain space as rational combinations of them; data holds the
    induced boundary matrices in those bases (with the boundary-of-boundary
    check already enforced).
    """

    data: ChainComplexData
    allowable: tuple[tuple[Simplex, ...], ...]
    basis: tuple[tuple[dict[Simplex, Fraction], ...], ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.dims


def intersection_chain_complex(
    X: SimplicialComplex, F: Filtration, p: Perversity
) -> IntersectionChainComplex:
    """Compute the intersection chain complex of X for one perversity.

    Degree i is the kernel of (projection onto non-allowable (i-1)
    coordinates) composed with the boundary, restricted to the span of the
    allowable i-simplices.  The boundary of every kernel element is itself
    an intersection chain, so expressing it in the echelon basis below
    gives the induced boundary matrices.
    """
    if F.host != X:
        raise DomainError("filtration belongs to a different host complex")
    m = X.dimension
    if m < 0:
        raise DomainError("cannot stratify an empty complex")
    if len(p) != max(m - 1, 0):
        raise DomainError(f"perversity has wrong length for dimension {m}")

    allowable: list[tuple[Simplex, ...]] = []
    allowable_pos: list[dict[Simplex, int]] = []
    for i in range(m + 1):
        simps = tuple(s for s in X.simplices(i) if is_allowable(s, i, p, F))
        allowable.append(simps)
        allowable_pos.append({s: j for j, s in enumerate(simps)})

    # per-degree kernels of the "bad boundary rows" blocks
    bases: list[list[dict[int, Fraction]]] = []
    free_positions: list[list[int]] = []
    for i in range(m + 1):
        ncols = len(allowable[i])
        if i == 0:
            bad = RationalSparseMatrix(0, ncols)
        else:
            full = boundary_matrix(X, i)
            lower = X.simplices(i - 1)
            bad_row_of = {}
            for r, s in enumerate(lower):
                if s not in allowable_pos[i - 1]:
                    bad_row_of[r] = len(bad_row_of)
            col_of = {}
            for c, s in enumerate(X.simplices(i)):
                j = allowable_pos[i].get(s)
                if j is not None:
                    col_of[c] = j
            entries = {
                (bad_row_of[r], col_of[c]): v
                for (r, c), v in full.entries.items()
                if r in bad_row_of and c in col_of
            }
            bad = RationalSparseMatrix(len(bad_row_of), ncols, entries)
        vecs, free = kernel_basis_with_free(bad)
        bases.append(vecs)
        free_positions.append(free)

    # induced boundary matrices, expressed through the echelon free slots
    host_boundaries = [boundary_matrix(X, i) for i in range(1, m + 1)]
    pos_maps = [
        {s: r for r, s in enumerate(X.simplices(i))} for i in range(m + 1)
    ]

    induced: list[RationalSparseMatrix] = []
    for i in range(1, m + 1):
        host = host_boundaries[i - 1]
        lower_simplices = X.simplices(i - 1)
        host_col_of_allowable = [pos_maps[i][s] for s in allowable[i]]
        entries: dict[tuple[int, int], Fraction] = {}
        for bcol, vec in enumerate(bases[i]):
            # image of the basis chain under the host boundary
            image: dict[int, Fraction] = {}
            for local_c, x in vec.items():
                host_c = host_col_of_allowable[local_c]
                for hr, v in host.column(host_c):
                    acc = image.get(hr, 0) + v * x
                    if acc:
                        image[hr] = acc
                    else:
                        image.pop(hr, None)
            # translate to positions within the allowable (i-1)-simplices
            local_image: dict[int, Fraction] = {}
            for hr, v in image.items():
                s = lower_simplices[hr]
                j = allowable_pos[i - 1].get(s)
                if j is None:
                    raise InvariantViolationError(
                        f"boundary of a degree-{i} intersection chain leaves "
                        f"the allowable span at {s!r}"
                    )
                local_image[j] = v
            # coordinates w.r.t. the echelon basis: read the free slots
            coords = {}
            for brow, f in enumerate(free_positions[i - 1]):
                x = local_image.get(f)
                if x:
                    coords[brow] = x
            # exactness check: the read-off coordinates must reproduce the image
            recon: dict[int, Fraction] = {}
            for brow, x in coords.items():
                for cc, v in bases[i - 1][brow].items():
                    acc = recon.get(cc, 0) + v * x
                    if acc:
                        recon[cc] = acc
                    else:
                        recon.pop(cc, None)
            if recon != local_image:
                raise InvariantViolationError(
                    f"degree-{i} boundary image is not in the span of the "
                    f"degree-{i - 1} basis"
                )
            for brow, x in coords.items():
                entries[(brow, bcol)] = x
        induced.append(
            RationalSparseMatrix(len(bases[i - 1]), len(bases[i]), entries)
        )

    basis_chains = tuple(
        tuple(
            {allowable[i][c]: x for c, x in sorted(vec.items())}
            for vec in bases[i]
        )
        for i in range(m + 1)
    )
    data = ChainComplexData(
        dims=tuple(len(b) for b in bases),
        boundaries=tuple(induced),
        basis_labels=None,
    )
    return IntersectionChainComplex(
        data=data,
        allowable=tuple(allowable),
        basis=basis_chains,
    )


def intersection_betti(
    X: SimplicialComplex, F: Filtration, p: Perversity
) -> list[int]:
    """Intersection homology Betti numbers b_0..b_m over the rationals.

    The cohomology in the same perversity is the dual vector space, so
    these numbers answer for both.
    """
    return betti_numbers(intersection_chain_complex(X, F, p).data)


def regular_part(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> SimplicialComplex:
    """Simplicial model of the complement of the singular set.

    One barycentric subdivision makes the singular set a full subcomplex;
    the full subcomplex on the remaining vertices is then a deformation
    retract of the complement.
    """
    m = X.dimension
    sigma = singular if singular is not None else SimplicialComplex(())
    if not sigma.is_empty:
        if sigma.dimension > m - 2:
            raise DomainError(
                f"singular set has dimension {sigma.dimension}, "
                f"allowed at most {m - 2}"
            )
        if not set(sigma.simplices()).issubset(set(X.simplices())):
            raise DomainError("singular set is not a subcomplex of the host")
    sd, vmap = subdivide_with_vertex_map(X)
    sigma_vertices = {vmap[s] for s in sigma.simplices()}
    keep = [v for v in sd.vertices if v not in sigma_vertices]
    return full_subcomplex(sd, keep)


def subdivided_pair(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> tuple[SimplicialComplex, SimplicialComplex | None]:
    """One barycentric subdivision of a complex and its singular set."""
    sd, vmap = subdivide_with_vertex_map(X)
    if singular is None or singular.is_empty:
        return sd, singular
    return sd, subdivide_subcomplex(singular, vmap)


def subdivided_filtration(F: Filtration) -> Filtration:
    """One barycentric subdivision of the host and every level."""
    sd, vmap = subdivide_with_vertex_map(F.host)
    levels = tuple(subdivide_subcomplex(level, vmap) for level in F.levels)
    return Filtration(sd, levels)
