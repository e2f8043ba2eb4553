"""Closed-form bounds for sections and multisections of surface bundles.

Fibre genus ``h``, base genus ``g``, multisection cardinality ``k``. Every
function refuses inputs outside the hypotheses its bound was proved under
(raising :class:`~leafforge.errors.Unsupported`); norms are exact
:class:`~fractions.Fraction` values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import Unsupported

#: Euler characteristic of the genus-2 surface that the covering trick starts from.
CHI_SIGMA2 = -2


def _require(cond: bool, hypothesis: str) -> None:
    if not cond:
        raise Unsupported(f"hypothesis violated: {hypothesis}", hypothesis=hypothesis)


@dataclass(frozen=True)
class BundleShape:
    h: int
    g: int
    k: int = 1

    def __post_init__(self):
        _require(self.h >= 2, "fibre genus h >= 2")
        _require(self.g >= 0, "base genus g >= 0")
        _require(self.k >= 1, "multisection cardinality k >= 1")


@dataclass(frozen=True)
class MultisectionData:
    cover_degree: int
    section_genus: int
    self_intersection: int
    euler_characteristic: int


def section_bound(g: int, h: int = 2) -> int:
    """Upper bound ``max(0, 2g - 2)`` on ``|S.S|`` for a section over a genus-``g`` base."""
    _require(h >= 2, "fibre genus h >= 2")
    _require(g >= 0, "base genus g >= 0")
    return max(0, 2 * g - 2)


def diagonal_self_intersection(h: int) -> int:
    """Self-intersection ``2 - 2h`` of the diagonal in ``Sigma_h x Sigma_h``."""
    _require(h >= 1, "h >= 1")
    return 2 - 2 * h


def pure_multisection_bound(g: int, h: int) -> int:
    """``(2g - 2)(4gh + 2)``: at most ``b2 <= 4gh + 2`` sections, each bounded by ``2g - 2``."""
    _require(g >= 1, "base genus g >= 1")
    _require(h >= 2, "fibre genus h >= 2")
    return (2 * g - 2) * (4 * g * h + 2)


def b2_upper(g: int, h: int) -> int:
    """``chi(E) - 2 + 2 b1`` with ``chi(E) = chi(Sigma_g) chi(Sigma_h)`` and ``b1 = 2g + 2h``."""
    return (2 - 2 * g) * (2 - 2 * h) - 2 + 2 * (2 * g + 2 * h)


def vertical_norm() -> Fraction:
    """Sup-norm of the vertical Euler class for fibre genus at least 2."""
    return Fraction(1, 2)


def norm_bound_k(k: int) -> Fraction:
    _require(k >= 1, "multisection cardinality k >= 1")
    return Fraction(k, 2)


def covering_multisection(g: int, h: int) -> MultisectionData:
    """Multisection of ``Sigma_h x Sigma_g`` from the ``Z/(g-1) x Z/(h-1)`` cover of ``Sigma_2``."""
    _require(g >= 2 and h >= 2, "g >= 2 and h >= 2")
    degree = (g - 1) * (h - 1)
    chi = CHI_SIGMA2 * degree
    return MultisectionData(
        cover_degree=degree,
        section_genus=(2 - chi) // 2,
        self_intersection=(2 - 2 * h) * (g - 1),
        euler_characteristic=chi,
    )


def diagonal_cover_sequence(h: int, n: int) -> MultisectionData:
    """Section obtained from ``n`` times the diagonal class by passing to covers.

    Both ``|S.S|`` and ``2 genus - 2`` equal ``n (2h - 2)``, so the ratio
    stays at the sharp value ``1``.
    """
    _require(h >= 2, "fibre genus h >= 2")
    _require(n >= 1, "n >= 1")
    genus = n * (h - 1) + 1
    return MultisectionData(
        cover_degree=n,
        section_genus=genus,
        self_intersection=n * diagonal_self_intersection(h),
        euler_characteristic=2 - 2 * genus,
    )


def factorial_cover_bound(g: int, h: int, k: int) -> int:
    """Bound on ``|e_k(E)|`` after lifting to the degree ``N = k!`` pure cover.

    The cover has base genus ``N(g - 1) + 1``; applying the pure bound there
    and dividing by ``N`` gives ``(2g - 2)(4(N(g - 1) + 1)h + 2)``.
    """
    _require(g >= 1, "base genus g >= 1")
    _require(h >= 2, "fibre genus h >= 2")
    _require(k >= 1, "multisection cardinality k >= 1")
    N = factorial(k)
    gbar = N * (g - 1) + 1
    total = (2 * gbar - 2) * (4 * gbar * h + 2)
    q, r = divmod(total, N)
    assert r == 0
    return q


def gt_l1_convert(x: Fraction | int, direction: str = "gt_to_l1") -> Fraction:
    """Convert between the Gromov-Thurston norm and the l1-norm (``l1 = 2 GT``)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("norms are non-negative")
    if direction == "gt_to_l1":
        return 2 * x
    if direction == "l1_to_gt":
        return x / 2
    raise ValueError("direction must be 'gt_to_l1' or 'l1_to_gt'")
