"""Closed-form L1/Linf classification of monomial forms on horn metrics.

The model metric on a punctured cone (0, eps) x L is

    dt^2 + sum_i t^(2 c_i) lambda_i^2,        c_i > 0,

where the lambda_i are a tame basis of 1-forms on the link L.  The tame
bound only guarantees the basis is quasi-orthonormal (the wedge of all of
them is bounded below), which changes pointwise norms by factors bounded
above and below; membership in L1 or Linf is insensitive to such factors,
so this module treats the basis as exactly orthonormal.  Under that
reduction everything is a power count in t:

  * volume density ~ t^(c_1 + ... + c_{m-1}),
  * |lambda_i| ~ t^(-c_i), |dt| ~ 1,

so a monomial form t^a * lambda_I (optionally wedged with dt) has
pointwise norm ~ t^(a - sum_{i in I} c_i) and L1 integrand
~ t^(a + sum_{i not in I} c_i).  Hence

    Linf  <=>  a - sum_{i in I} c_i >= 0
    L1    <=>  a + sum_{i not in I} c_i > -1.

All exponents are exact rationals; no floating point enters either test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, MalformedInputError

__all__ = ["HornMetric", "MonomialForm", "validate", "volume", "l1_test", "linf_test"]


@dataclass(frozen=True)
class HornMetric:
    """Weight exponents c_1..c_{m-1} and the radial cutoff eps."""

    exponents: tuple[Fraction, ...]
    epsilon: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", tuple(Fraction(c) for c in self.exponents)
        )
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))

    @property
    def manifold_dimension(self) -> int:
        return len(self.exponents) + 1


@dataclass(frozen=True)
class MonomialForm:
    """t^a * lambda_I, wedged with dt when with_dt is set.

    link_indices are 1-based positions into the metric exponents.
    """

    radial_exponent: Fraction
    link_indices: frozenset[int] = frozenset()
    with_dt: bool = False

    def __post_init__(self):
        object.__setattr__(self, "radial_exponent", Fraction(self.radial_exponent))
        object.__setattr__(self, "link_indices", frozenset(self.link_indices))
        if any(not isinstance(i, int) or i < 1 for i in self.link_indices):
            raise MalformedInputError("link indices are 1-based positive integers")

    @property
    def degree(self) -> int:
        return len(self.link_indices) + (1 if self.with_dt else 0)


def validate(h: HornMetric) -> bool:
    """True iff every weight decays to zero (c_i > 0) and eps > 0."""
    return all(c > 0 for c in h.exponents) and h.epsilon > 0


def _require_valid(h: HornMetric) -> None:
    if not validate(h):
        raise DomainError("horn metric needs positive exponents and cutoff")


def _check_indices(h: HornMetric, f: MonomialForm) -> None:
    bad = [i for i in f.link_indices if i > len(h.exponents)]
    if bad:
        raise DomainError(
            f"form references link index {max(bad)} but the metric has only "
            f"{len(h.exponents)} link directions"
        )


def _nth_root(value: int, n: int) -> int | None:
    """Exact integer n-th root, or None."""
    if value < 0:
        return None
    if value in (0, 1) or n == 1:
        return value
    lo, hi = 0, 1
    while hi**n < value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == value else None


def volume(h: HornMetric) -> Fraction:
    """Total volume eps^(s+1) / (s+1) with s the sum of the exponents.

    Finite for every valid metric.  The value is only a rational number
    when eps^(s+1) is one (always true for eps = 1 or integer s); otherwise
    this raises rather than round.
    """
    _require_valid(h)
    s1 = sum(h.exponents, Fraction(0)) + 1
    num, den = s1.numerator, s1.denominator
    powed = h.epsilon**num  # still exact: integer exponent
    if den > 1:
        p = _nth_root(powed.numerator, den)
        q = _nth_root(powed.denominator, den)
        if p is None or q is None:
            raise DomainError(
                f"volume eps^({s1}) / ({s1}) is irrational for eps = {h.epsilon}"
            )
        powed = Fraction(p, q)
    return powed / s1


def l1_test(h: HornMetric, f: MonomialForm) -> bool:
    """True iff the form is integrable against the metric volume.

    The integrand power is a + sum of the exponents *not* pulled back by
    the form (the dt factor contributes none), and t^e is integrable at 0
    exactly when e > -1.
    """
    _require_valid(h)
    _check_indices(h, f)
    e = f.radial_exponent + sum(
        (c for i, c in enumerate(h.exponents, start=1) if i not in f.link_indices),
        Fraction(0),
    )
    return e > -1


def linf_test(h: HornMetric, f: MonomialForm) -> bool:
    """True iff the pointwise norm stays bounded as t -> 0."""
    _require_valid(h)
    _check_indices(h, f)
    e = f.radial_exponent - sum(
        (c for i, c in enumerate(h.exponents, start=1) if i in f.link_indices),
        Fraction(0),
    )
    return e >= 0
