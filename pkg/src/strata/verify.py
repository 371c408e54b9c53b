"""Duality, de Rham, and Stokes-criterion checks on pseudomanifolds.

Each check here computes a proven combinatorial equivalent of an analytic
statement about forms; the analytic statements themselves are not tested.
Row and report labels name the identification being used, e.g. bounded
(L-infinity) forms on the regular part are counted through the
top-perversity intersection cohomology of the closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .builders import cone_over
from .chains import betti_numbers, chain_complex
from .errors import DomainError, HypothesesUnmetError
from .intersection import (
    Filtration,
    Perversity,
    default_filtration,
    intersection_betti,
    intersection_chain_complex,
    regular_part,
)
from .reference import dense_intersection_betti
from .simplicial import SimplicialComplex, check_orientable

__all__ = [
    "ROW_LINF",
    "ROW_DIRICHLET",
    "ROW_L1",
    "DeRhamRow",
    "DeRhamTable",
    "BettiComparison",
    "DualityReport",
    "StokesReport",
    "de_rham_table",
    "check_gm_duality",
    "check_lefschetz",
    "stokes_report",
    "duality_range_check",
    "cone_check",
]

ROW_LINF = "L∞ ≅ I^t"
ROW_DIRICHLET = "Dirichlet-L¹ ≅ I^0"
ROW_L1 = "L¹ ≅ H(X_reg)"


@dataclass(frozen=True)
class DeRhamRow:
    label: str
    betti: tuple[int, ...]
    basis_sizes: tuple[int, ...]


@dataclass(frozen=True)
class DeRhamTable:
    """The three cohomology rows, each of length dimension + 1."""

    dimension: int
    rows: tuple[DeRhamRow, ...]
    singular_source: str = "declared"

    def __post_init__(self):
        for row in self.rows:
            if len(row.betti) != self.dimension + 1:
                raise DomainError(
                    f"row {row.label!r} has {len(row.betti)} entries, "
                    f"expected {self.dimension + 1}"
                )

    def row(self, label: str) -> DeRhamRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)


@dataclass(frozen=True)
class BettiComparison:
    """One pair of Betti vectors compared entrywise."""

    label_left: str
    label_right: str
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def verdicts(self) -> tuple[bool, ...]:
        return tuple(a == b for a, b in zip(self.left, self.right))

    @property
    def passed(self) -> bool:
        return len(self.left) == len(self.right) and all(self.verdicts)


@dataclass(frozen=True)
class DualityReport:
    title: str
    comparisons: tuple[BettiComparison, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.comparisons)


@dataclass(frozen=True)
class StokesReport:
    """Degreewise integration-by-parts criterion.

    holds[j] (0 <= j < m) is the purely topological answer
    k < m - j - 1 with k the dimension of the singular set (-1 when it is
    empty); once false it stays false for larger j.
    """

    dimension: int
    singular_dimension: int

    @property
    def holds(self) -> tuple[bool, ...]:
        m, k = self.dimension, self.singular_dimension
        return tuple(k < m - j - 1 for j in range(m))


def _require_oriented(X: SimplicialComplex, what: str) -> None:
    if check_orientable(X) is None:
        raise HypothesesUnmetError(
            f"{what} assumes an oriented pseudomanifold, but the complex is "
            "not orientable; hypotheses unmet"
        )


def _pad(betti: list[int], length: int) -> tuple[int, ...]:
    if len(betti) > length:
        raise DomainError("Betti vector longer than the ambient dimension allows")
    return tuple(betti) + (0,) * (length - len(betti))


def de_rham_table(
    X: SimplicialComplex,
    singular: SimplicialComplex | None,
    singular_source: str = "declared",
) -> DeRhamTable:
    """The three-row cohomology table of a stratified pseudomanifold.

    Row 1: intersection cohomology in the top perversity (the bounded-form
    theory of the regular part).  Row 2: zero perversity (the Dirichlet
    theory).  Row 3: cohomology of the regular part itself (the integrable
    theory).
    """
    m = X.dimension
    F = default_filtration(X, singular)
    top = intersection_chain_complex(X, F, Perversity.top(m))
    zero = intersection_chain_complex(X, F, Perversity.zero(m))
    reg = regular_part(X, singular)
    reg_data = chain_complex(reg)
    rows = (
        DeRhamRow(ROW_LINF, _pad(betti_numbers(top.data), m + 1), top.dims),
        DeRhamRow(ROW_DIRICHLET, _pad(betti_numbers(zero.data), m + 1), zero.dims),
        DeRhamRow(
            ROW_L1,
            _pad(betti_numbers(reg_data), m + 1),
            _pad(list(reg_data.dims), m + 1),
        ),
    )
    return DeRhamTable(dimension=m, rows=rows, singular_source=singular_source)


def check_gm_duality(
    X: SimplicialComplex, F: Filtration, p: Perversity
) -> DualityReport:
    """Generalized Poincaré duality: perversity p against q = t - p.

    Compares the p-perversity Betti number in degree j with the
    q-perversity one in degree m - j.  Requires an orientable complex; a
    non-orientable input is a hypothesis failure, not a counterexample.
    """
    m = X.dimension
    _require_oriented(X, "generalized Poincaré duality")
    q = p.complement(m)
    bp = _pad(intersection_betti(X, F, p), m + 1)
    bq = _pad(intersection_betti(X, F, q), m + 1)
    comparison = BettiComparison(
        label_left=f"I^{p.display()} H^j",
        label_right=f"I^{q.display()} H^(m-j)",
        left=bp,
        right=tuple(reversed(bq)),
    )
    return DualityReport(
        title=f"generalized Poincaré duality (m={m}, p={p.display()}, q={q.display()})",
        comparisons=(comparison,),
    )


def check_lefschetz(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> DualityReport:
    """Lefschetz duality shadow: zero perversity against top, reversed.

    This is the Betti-number content of the pairing between the Dirichlet
    theory in degree j and the bounded theory in degree m - j.
    """
    m = X.dimension
    _require_oriented(X, "Lefschetz duality")
    F = default_filtration(X, singular)
    b0 = _pad(intersection_betti(X, F, Perversity.zero(m)), m + 1)
    bt = _pad(intersection_betti(X, F, Perversity.top(m)), m + 1)
    comparison = BettiComparison(
        label_left="I^0 H^j",
        label_right="I^t H^(m-j)",
        left=b0,
        right=tuple(reversed(bt)),
    )
    return DualityReport(
        title=f"Lefschetz duality for the Dirichlet theory (m={m})",
        comparisons=(comparison,),
    )


def stokes_report(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> StokesReport:
    """Dimension criterion for the integration-by-parts identity.

    With the regular part as the open manifold, its frontier is the
    singular set, so the criterion in degree j is dim(singular) < m - j - 1
    (empty set counting as dimension -1).
    """
    sigma = singular if singular is not None else SimplicialComplex(())
    if not sigma.is_empty and not set(sigma.simplices()).issubset(set(X.simplices())):
        raise DomainError("singular set is not a subcomplex of the host")
    return StokesReport(
        dimension=X.dimension,
        singular_dimension=sigma.dimension,
    )


def duality_range_check(
    X: SimplicialComplex, singular: SimplicialComplex | None
) -> DualityReport:
    """Zero-perversity groups equal the regular part's in low degrees.

    Verified for every j < m - k - 1 where k = dim(singular); the boundary
    degree j = m - k - 1 is reported as a note without a pass/fail claim
    because equality there is not promised in general.
    """
    m = X.dimension
    sigma = singular if singular is not None else SimplicialComplex(())
    k = sigma.dimension
    F = default_filtration(X, sigma)
    b0 = _pad(intersection_betti(X, F, Perversity.zero(m)), m + 1)
    breg = _pad(betti_numbers(chain_complex(regular_part(X, sigma))), m + 1)
    cutoff = m - k - 1  # degrees j < cutoff are covered
    comparison = BettiComparison(
        label_left="I^0 H_j",
        label_right="H_j(X_reg)",
        left=b0[:cutoff],
        right=breg[:cutoff],
    )
    notes = []
    if 0 <= cutoff <= m:
        notes.append(
            f"boundary degree j={cutoff} (no claim): "
            f"I^0={b0[cutoff]} vs H(X_reg)={breg[cutoff]}"
        )
    return DualityReport(
        title=f"low-degree agreement I^0 vs regular part (m={m}, k={k})",
        comparisons=(comparison,),
        notes=tuple(notes),
    )


def cone_check(L: SimplicialComplex, p: Perversity) -> DualityReport:
    """Engine vs brute force on the cone over a link complex.

    Builds the cone, stratifies it at the apex, and computes its
    intersection Betti numbers twice: the production sparse path and the
    naive dense path must agree in every degree.
    """
    C = cone_over(L)
    apex = max(C.vertices)
    m = C.dimension
    F = default_filtration(C, SimplicialComplex([[apex]]))
    if len(p) != max(m - 1, 0):
        raise DomainError(
            f"perversity has {len(p)} values but the cone has dimension {m}"
        )
    engine = _pad(intersection_betti(C, F, p), m + 1)
    oracle = _pad(dense_intersection_betti(C, F, p), m + 1)
    comparison = BettiComparison(
        label_left=f"engine I^{p.display()}",
        label_right=f"dense oracle I^{p.display()}",
        left=engine,
        right=oracle,
    )
    return DualityReport(
        title=f"cone check over a {L.dimension}-dimensional link (p={p.display()})",
        comparisons=(comparison,),
    )
