"""Exact rational sparse matrices and homology of chain complexes.

Everything here is over the rationals with arbitrary-precision integers;
overflow is not a failure mode we accept.  Elimination is fraction-free
(rows are kept integral and stripped of their content after each update)
with Markowitz-style pivoting: sparsest active column first, then sparsest
row in it, ties always broken by the lowest index, so results are
bit-for-bit deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import DomainError, InputFormatError, InvariantViolationError
from .simplicial import SimplicialComplex

__all__ = [
    "RationalSparseMatrix",
    "ChainComplexData",
    "boundary_matrix",
    "chain_complex",
    "rank",
    "kernel_basis",
    "betti_numbers",
    "dump_matrix",
    "parse_matrix",
]


class RationalSparseMatrix:
    """Immutable sparse matrix over Q: (row, col) -> nonzero Fraction."""

    __slots__ = ("rows", "cols", "_entries", "_columns")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Mapping[tuple[int, int], Fraction | int] | None = None,
    ):
        if rows < 0 or cols < 0:
            raise DomainError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        cleaned: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DomainError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            fv = Fraction(v)
            if fv:
                cleaned[(r, c)] = fv
        self._entries = cleaned
        self._columns: dict[int, list[tuple[int, Fraction]]] | None = None

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def get(self, r: int, c: int) -> Fraction:
        return self._entries.get((r, c), Fraction(0))

    def _column_table(self) -> dict[int, list[tuple[int, Fraction]]]:
        if self._columns is None:
            cols: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in sorted(self._entries.items()):
                cols.setdefault(c, []).append((r, v))
            self._columns = cols
        return self._columns

    def column(self, c: int) -> list[tuple[int, Fraction]]:
        return list(self._column_table().get(c, ()))

    def apply(self, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        """Matrix times a sparse column vector (col index -> value)."""
        out: dict[int, Fraction] = {}
        table = self._column_table()
        for c, x in vec.items():
            if not x:
                continue
            for r, v in table.get(c, ()):
                acc = out.get(r, 0) + v * x
                if acc:
                    out[r] = acc
                else:
                    out.pop(r, None)
        return out

    def compose(self, other: "RationalSparseMatrix") -> "RationalSparseMatrix":
        """self @ other."""
        if self.cols != other.rows:
            raise DomainError("inner dimensions do not match")
        acc: dict[tuple[int, int], Fraction] = {}
        table = self._column_table()
        for (k, j), v in other._entries.items():
            for r, u in table.get(k, ()):
                key = (r, j)
                s = acc.get(key, 0) + u * v
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RationalSparseMatrix(self.rows, other.cols, acc)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalSparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# -- elimination ---------------------------------------------------------


def _strip_content(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _integer_rows(m: RationalSparseMatrix) -> dict[int, dict[int, int]]:
    # scale each row to integers and strip its content; row scaling changes
    # neither the rank nor the null space
    rows: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in m._entries.items():
        rows.setdefault(r, {})[c] = v
    out: dict[int, dict[int, int]] = {}
    for r, row in rows.items():
        denom = 1
        for v in row.values():
            denom = denom * v.denominator // gcd(denom, v.denominator)
        irow = {c: int(v * denom) for c, v in row.items()}
        _strip_content(irow)
        out[r] = irow
    return out


def _eliminate(
    m: RationalSparseMatrix,
) -> tuple[list[tuple[int, int]], list[dict[int, int]]]:
    """Fraction-free sparse elimination.

    Returns the pivots (row, col) in elimination order together with the
    integer pivot rows frozen at selection time.  A pivot row is never
    touched again, and each step clears the pivot column from every other
    active row, so pivot row k has zeros in all earlier pivot columns:
    back-substitution in reverse order is well founded.
    """
    rows = _integer_rows(m)
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    heap: list[tuple[int, int]] = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    pivots: list[tuple[int, int]] = []
    pivot_rows: list[dict[int, int]] = []
    done: set[int] = set()

    while heap:
        n, c = heapq.heappop(heap)
        active = col_rows.get(c)
        if c in done or not active or len(active) != n:
            continue  # stale heap entry
        r = min(active, key=lambda rr: (len(rows[rr]), rr))
        piv_row = rows.pop(r)
        piv = piv_row[c]
        for cc in piv_row:
            rs = col_rows.get(cc)
            if rs is not None:
                rs.discard(r)
                if cc != c and rs:
                    heapq.heappush(heap, (len(rs), cc))
        done.add(c)
        pivots.append((r, c))
        pivot_rows.append(piv_row)

        targets = sorted(col_rows.pop(c, ()))
        touched: set[int] = set()
        for r2 in targets:
            row2 = rows[r2]
            f2 = row2.pop(c)
            # multiply-through update keeps everything integral:
            #   row2 <- piv * row2 - f2 * piv_row
            new = {cc: piv * v for cc, v in row2.items()}
            for cc, v in piv_row.items():
                if cc == c:
                    continue
                s = new.get(cc, 0) - f2 * v
                if s:
                    new[cc] = s
                else:
                    new.pop(cc, None)
            _strip_content(new)
            for cc in row2.keys() | new.keys():
                if cc == c:
                    continue
                had = cc in row2
                has = cc in new
                if had != has:
                    rs = col_rows.setdefault(cc, set())
                    if has:
                        rs.add(r2)
                    else:
                        rs.discard(r2)
                    touched.add(cc)
            rows[r2] = new
        for cc in touched:
            rs = col_rows.get(cc)
            if rs:
                heapq.heappush(heap, (len(rs), cc))
    return pivots, pivot_rows


def rank(m: RationalSparseMatrix) -> int:
    """Exact rank over the rationals."""
    pivots, _ = _eliminate(m)
    return len(pivots)


def kernel_basis_with_free(
    m: RationalSparseMatrix,
) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Kernel basis in echelon form, plus the free column of each vector.

    Vector k has value 1 at its own free column and 0 at every other free
    column, so coordinates with respect to this basis can be read off the
    free positions.
    """
    pivots, pivot_rows = _eliminate(m)
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(m.cols) if c not in pivot_cols]
    basis: list[dict[int, Fraction]] = []
    order = list(zip(pivots, pivot_rows))
    for f in free:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for (r, c), row in reversed(order):
            s = Fraction(0)
            for cc, v in row.items():
                if cc != c and cc in vec:
                    s += v * vec[cc]
            if s:
                vec[c] = -s / row[c]
        basis.append(vec)
    return basis, free


def kernel_basis(m: RationalSparseMatrix) -> list[dict[int, Fraction]]:
    """Basis of the null space, as sparse column vectors."""
    basis, _ = kernel_basis_with_free(m)
    return basis


# -- chain complexes ------------------------------------------------------


@dataclass(frozen=True)
class ChainComplexData:
    """Chain-space dimensions and exact boundary matrices.

    boundaries[i] is the map from degree i+1 to degree i, shaped
    dims[i] x dims[i+1].  Construction verifies that consecutive
    boundaries compose to zero, exactly.
    """

    dims: tuple[int, ...]
    boundaries: tuple[RationalSparseMatrix, ...]
    basis_labels: tuple[tuple, ...] | None = None

    def __post_init__(self):
        if len(self.dims) == 0:
            if self.boundaries:
                raise DomainError("boundaries given for an empty complex")
            return
        if len(self.boundaries) != len(self.dims) - 1:
            raise DomainError(
                f"{len(self.dims)} chain spaces need {len(self.dims) - 1} "
                f"boundary maps, got {len(self.boundaries)}"
            )
        for i, b in enumerate(self.boundaries):
            if b.rows != self.dims[i] or b.cols != self.dims[i + 1]:
                raise DomainError(
                    f"boundary {i + 1} has shape {b.rows}x{b.cols}, expected "
                    f"{self.dims[i]}x{self.dims[i + 1]}"
                )
        for i in range(len(self.boundaries) - 1):
            if not self.boundaries[i].compose(self.boundaries[i + 1]).is_zero:
                raise InvariantViolationError(
                    f"boundary composition in degree {i + 2} is nonzero"
                )

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary(self, i: int) -> RationalSparseMatrix:
        """The boundary map from degree i to degree i-1, 1 <= i <= top."""
        if not 1 <= i <= self.top_degree:
            raise DomainError(f"no boundary map in degree {i}")
        return self.boundaries[i - 1]


def boundary_matrix(K: SimplicialComplex, i: int) -> RationalSparseMatrix:
    """Simplicial boundary from degree i to degree i-1.

    Columns are the i-simplices and rows the (i-1)-simplices, both in
    lexicographic order; the entry against the face omitting the vertex in
    position k is (-1)**k.
    """
    if not 1 <= i <= K.dimension:
        raise DomainError(f"degree {i} out of range for a {K.dimension}-complex")
    rows_index = {s: r for r, s in enumerate(K.simplices(i - 1))}
    entries: dict[tuple[int, int], int] = {}
    for c, s in enumerate(K.simplices(i)):
        for sgn, face in s.boundary():
            entries[(rows_index[face], c)] = sgn
    return RationalSparseMatrix(len(rows_index), len(K.simplices(i)), entries)


def chain_complex(K: SimplicialComplex) -> ChainComplexData:
    """The simplicial chain complex of K with rational coefficients."""
    if K.is_empty:
        return ChainComplexData(dims=(), boundaries=())
    m = K.dimension
    dims = tuple(len(K.simplices(d)) for d in range(m + 1))
    boundaries = tuple(boundary_matrix(K, i) for i in range(1, m + 1))
    labels = tuple(K.simplices(d) for d in range(m + 1))
    return ChainComplexData(dims=dims, boundaries=boundaries, basis_labels=labels)


def betti_numbers(C: ChainComplexData) -> list[int]:
    """Rational Betti numbers b_0..b_top of the complex."""
    n = len(C.dims)
    if n == 0:
        return []
    ranks = [rank(b) for b in C.boundaries]
    out = []
    for i in range(n):
        r_in = ranks[i] if i < n - 1 else 0  # rank of boundary from degree i+1
        r_out = ranks[i - 1] if i > 0 else 0  # rank of boundary leaving degree i
        out.append(C.dims[i] - r_out - r_in)
    return out


# -- coordinate dump format ----------------------------------------------


def dump_matrix(m: RationalSparseMatrix) -> str:
    """Coordinate triplet dump: header "rows cols nnz", one entry per line
    as "row col numerator/denominator", sorted by (row, col)."""
    lines = [f"{m.rows} {m.cols} {m.nnz}"]
    for (r, c), v in sorted(m.entries.items()):
        lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RationalSparseMatrix:
    """Inverse of dump_matrix."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputFormatError("empty matrix dump")
    head = lines[0].split()
    if len(head) != 3:
        raise InputFormatError(f"bad header line {lines[0]!r}")
    try:
        rows, cols, nnz = (int(x) for x in head)
    except ValueError as exc:
        raise InputFormatError(f"bad header line {lines[0]!r}") from exc
    if len(lines) - 1 != nnz:
        raise InputFormatError(f"header promises {nnz} entries, found {len(lines) - 1}")
    entries: dict[tuple[int, int], Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise InputFormatError(f"bad entry line {ln!r}")
        try:
            r, c = int(parts[0]), int(parts[1])
            v = Fraction(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"bad entry line {ln!r}") from exc
        if (r, c) in entries:
            raise InputFormatError(f"duplicate entry at ({r}, {c})")
        entries[(r, c)] = v
    try:
        return RationalSparseMatrix(rows, cols, entries)
    except DomainError as exc:
        raise InputFormatError(str(exc)) from exc
