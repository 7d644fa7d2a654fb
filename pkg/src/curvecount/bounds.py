"""Closed-form genus bounds, vanishing thresholds, and extremal values.

Everything here is exact rational arithmetic: the boundary case where the
degree-20 threshold equals genus 51 is an exact equality, so no tolerance is
permitted anywhere.  Profiles describe Picard-rank-one 3-folds by degree
n = H^3 and index i (K = -iH).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "ThreefoldProfile",
    "BoundReport",
    "bps_threshold",
    "genus_bound_general",
    "genus_bound_hypersurface",
    "genus_bound_nonhyperplane",
    "genus_bound_divisor",
    "extremal_gv",
    "extremal_moduli_euler",
    "castelnuovo_corollary_check",
    "bound_function_properties",
    "max_vanishing_degree",
    "CorollaryReport",
    "BoundPropertyReport",
]

KIND_GENERAL = "general-bmt"
KIND_HYPERSURFACE = "hypersurface-in-p4"
KIND_QUINTIC = "quintic"


@dataclass(frozen=True)
class ThreefoldProfile:
    degree: int  # n = H^3
    index: int   # i with K_X = -iH
    kind: str = KIND_GENERAL

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.kind == KIND_QUINTIC and (self.degree, self.index) != (5, 0):
            raise ValueError("quintic profile requires n=5, i=0")
        if self.kind == KIND_HYPERSURFACE:
            if self.degree > 5 or self.index != 5 - self.degree:
                raise ValueError("hypersurface profile requires n<=5, i=5-n")

    @classmethod
    def quintic(cls) -> ThreefoldProfile:
        return cls(5, 0, KIND_QUINTIC)

    @classmethod
    def hypersurface(cls, n: int) -> ThreefoldProfile:
        return cls(n, 5 - n, KIND_HYPERSURFACE)

    @classmethod
    def general(cls, n: int, i: int) -> ThreefoldProfile:
        return cls(n, i, KIND_GENERAL)


@dataclass(frozen=True)
class BoundReport:
    d: int
    bound: Fraction
    bound_floor: int
    formula_id: str

    @classmethod
    def make(cls, d: int, bound: Fraction, formula_id: str) -> BoundReport:
        return cls(d, bound, math.floor(bound), formula_id)


def bps_threshold(d: int) -> Fraction:
    """B(d) = (d^2 + 5d + 10)/10, the quintic genus-vanishing threshold."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return Fraction(d * d + 5 * d + 10, 10)


def genus_bound_general(profile: ThreefoldProfile, d: int) -> BoundReport:
    """d^2/(2n) + ((1-i)/2) d + 1."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n, i = profile.degree, profile.index
    b = Fraction(d * d, 2 * n) + Fraction(1 - i, 2) * d + 1
    return BoundReport.make(d, b, "general-bmt")


def genus_bound_hypersurface(n: int, d: int) -> BoundReport:
    """d^2/(2n) + ((n-4)/2) d + 1, degree-n hypersurface in P^4."""
    if n > 5:
        raise ValueError("hypersurface bound needs n <= 5")
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    b = Fraction(d * d, 2 * n) + Fraction(n - 4, 2) * d + 1
    return BoundReport.make(d, b, "hypersurface")


def genus_bound_nonhyperplane(n: int, d: int) -> BoundReport:
    """d^2/(2n) + (n/2 - 1/n - 2) d + 2 + 1/n, for curves off hyperplane sections."""
    if n > 5:
        raise ValueError("non-hyperplane bound needs n <= 5")
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    b = (Fraction(d * d, 2 * n)
         + (Fraction(n, 2) - Fraction(1, n) - 2) * d + 2 + Fraction(1, n))
    return BoundReport.make(d, b, "non-hyperplane")


def genus_bound_divisor(n: int, i: int, m: int, d: int) -> BoundReport:
    """d^2/(2nm) + ((m-i)/2) d + 1, for curves on a degree-m divisor."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    b = Fraction(d * d, 2 * n * m) + Fraction(m - i, 2) * d + 1
    return BoundReport.make(d, b, "divisor")


def _h0_quintic_surface(m: int) -> int:
    """h^0(D, O_D(m)) for a quintic surface D in P^3 (binomial difference)."""
    low = comb(m - 2, 3) if m - 2 >= 3 else 0
    return comb(m + 3, 3) - low


def extremal_gv(m: int) -> int:
    """GV value at the threshold genus for degree d = 5m.

    m >= 2: sign (-1)^(C(m+3,3)-C(m-2,3)+3) times 5(C(m+3,3)-C(m-2,3)),
    with C(m-2,3) := 0 when m < 5.  m = 1 is the special value 10.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 10
    h0 = _h0_quintic_surface(m)
    return (-1) ** (h0 + 3) * 5 * h0


def extremal_moduli_euler(m: int) -> tuple[int, int]:
    """(euler, dim) of the extremal-curve moduli space at d = 5m, m >= 2.

    A projective-space bundle over P^4: euler = 5 * h^0(D, O_D(m)) and
    dim = euler/5 + 3.  Independent route: (-1)^dim * euler = extremal_gv(m).
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    h0 = _h0_quintic_surface(m)
    return 5 * h0, h0 + 3


@dataclass(frozen=True)
class CorollaryReport:
    g_max: int
    checked: int
    equalities: tuple[tuple[int, int], ...]
    violations: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def castelnuovo_corollary_check(g_max: int = 53) -> CorollaryReport:
    """Scan g <= g_max: g > B(d) must hold for 1 <= d <= floor((2g-2)/5).

    Exact-equality cases are reported separately; for g_max = 53 the single
    equality is (g, d) = (51, 20) and there are no strict violations.
    """
    equalities: list[tuple[int, int]] = []
    violations: list[tuple[int, int]] = []
    checked = 0
    for g in range(0, g_max + 1):
        for d in range(1, (2 * g - 2) // 5 + 1):
            checked += 1
            b = bps_threshold(d)
            if g > b:
                continue
            (equalities if g == b else violations).append((g, d))
    return CorollaryReport(g_max, checked, tuple(equalities), tuple(violations))


@dataclass(frozen=True)
class BoundPropertyReport:
    d_max: int
    r_max: int
    parts_max: int
    partitions_checked: int
    covers_checked: int
    superadditivity_violations: tuple = ()
    cover_violations: tuple = ()
    strictness_violations: tuple = ()

    @property
    def passed(self) -> bool:
        return not (self.superadditivity_violations or self.cover_violations
                    or self.strictness_violations)


def _partitions(total: int, parts: int, smallest: int = 1):
    if parts == 1:
        if total >= smallest:
            yield (total,)
        return
    for first in range(smallest, total // parts + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def bound_function_properties(d_max: int, r_max: int,
                              parts_max: int) -> BoundPropertyReport:
    """Exhaustive check of the threshold's combinatorial hypotheses.

    Superadditivity: B(sum d_i) - 1 >= sum (B(d_i) - 1) over all partitions
    with at most parts_max parts and total <= d_max.  Cover inequality:
    (B(d)-1)/r + 1 >= B(d/r) for divisors r <= r_max of d <= d_max, strict
    for r >= 2.
    """
    super_bad = []
    part_count = 0
    for total in range(2, d_max + 1):
        for k in range(2, parts_max + 1):
            for p in _partitions(total, k):
                part_count += 1
                lhs = bps_threshold(total) - 1
                rhs = sum(bps_threshold(di) - 1 for di in p)
                if lhs < rhs:
                    super_bad.append((total, p))
    cover_bad = []
    strict_bad = []
    cover_count = 0
    for d in range(1, d_max + 1):
        for r in range(1, min(r_max, d) + 1):
            if d % r:
                continue
            cover_count += 1
            lhs = (bps_threshold(d) - 1) / r + 1
            rhs = bps_threshold(d // r)
            if lhs < rhs:
                cover_bad.append((d, r))
            if r >= 2 and lhs <= rhs:
                strict_bad.append((d, r))
    return BoundPropertyReport(
        d_max, r_max, parts_max, part_count, cover_count,
        tuple(super_bad), tuple(cover_bad), tuple(strict_bad))


def max_vanishing_degree(g: int) -> int:
    """D(g) = max{d >= 1 : B(d) < g}, or 0 when no degree qualifies.

    Strict inequality is forced by the (g, d) = (51, 20) boundary case:
    B(20) = 51 exactly, so D(51) = 19.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    d = 0
    while bps_threshold(d + 1) < g:
        d += 1
    return d
