"""Homogeneous quasimorphism values on Dehn-twist classes.

``phi_k`` denotes the value of a homogeneous quasimorphism on a Dehn twist
about a curve enclosing ``k`` boundary components. On the twist subgroup
such a quasimorphism is a homomorphism and is constant on conjugacy
classes, so each lantern relation among aggregated hole collections of
sizes ``a, b, c`` becomes the linear identity

    phi_{a+b} + phi_{b+c} + phi_{a+c} = phi_a + phi_b + phi_c + phi_{a+b+c}.

:func:`replay_unbound` checks, with exact rationals, the inequality chain
showing that a twist ``Delta_1`` of positive stable commutator length
would force ``scl(Delta_4) > scl(Delta_1)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Mapping


def _phi(k: int, unicode: bool = True) -> str:
    return f"φ{k}" if unicode else f"phi{k}"


@dataclass(frozen=True)
class LinearIdentity:
    """``sum(coeff[k] * phi_k) == 0`` with merged, non-zero coefficients."""

    coefficients: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_terms(cls, terms: Mapping[int, Fraction | int] | list[tuple[int, Fraction | int]],
                   normalize: bool = True) -> "LinearIdentity":
        merged: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            merged[k] = merged.get(k, Fraction(0)) + Fraction(c)
        coeffs = {k: c for k, c in merged.items() if c != 0}
        if normalize and coeffs:
            coeffs = _primitive(coeffs)
        return cls(tuple(sorted(coeffs.items())))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coefficients)

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        return sum((c * Fraction(values[k]) for k, c in self.coefficients), Fraction(0))

    def solve_for(self, k: int) -> dict[int, Fraction]:
        """Express ``phi_k`` as a combination of the other terms."""
        d = self.as_dict()
        if k not in d:
            raise KeyError(f"phi_{k} does not occur")
        ck = d.pop(k)
        return {j: -c / ck for j, c in d.items()}

    def render(self, unicode: bool = True) -> str:
        """``phi_top = ...`` solved for the largest index."""
        if not self.coefficients:
            return "0 = 0"
        top = self.coefficients[-1][0]
        return f"{_phi(top, unicode)} = {_render_combo(self.solve_for(top), unicode)}"


def _primitive(coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in coeffs.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {k: Fraction(v // g) for k, v in ints.items()}


def _render_combo(combo: Mapping[int, Fraction], unicode: bool = True) -> str:
    minus = "−" if unicode else "-"
    parts = []
    for k in sorted(combo, reverse=True):
        c = combo[k]
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else str(mag)
        term = f"{coef}{_phi(k, unicode)}"
        if not parts:
            parts.append(term if c > 0 else f"{minus}{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"{minus} {term}")
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LanternInstance:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("hole collections must be non-empty")


def lantern_reduce(a: int, b: int, c: int) -> LinearIdentity:
    LanternInstance(a, b, c)
    return LinearIdentity.from_terms([
        (a + b, 1), (b + c, 1), (a + c, 1),
        (a, -1), (b, -1), (c, -1), (a + b + c, -1),
    ])


@dataclass(frozen=True)
class ClosedForm:
    """``phi_k = phi1 * phi_1 + phi2 * phi_2``."""

    k: int
    phi1: int
    phi2: int

    def identity(self) -> LinearIdentity:
        return LinearIdentity.from_terms([(self.k, 1), (1, -self.phi1), (2, -self.phi2)],
                                         normalize=False)

    def render(self, unicode: bool = True) -> str:
        combo = {2: Fraction(self.phi2), 1: Fraction(self.phi1)}
        return f"{_phi(self.k, unicode)} = {_render_combo(combo, unicode)}"


def phi_closed_form(k: int) -> ClosedForm:
    """``phi_k = k phi_1 + C(k, 2) (phi_2 - 2 phi_1)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    binom = comb(k, 2)
    return ClosedForm(k, k - 2 * binom, binom)


def bavard_bound(phi_val: Fraction | int, D: Fraction | int) -> Fraction:
    """Lower bound ``|phi(g)| / 2D`` for the stable commutator length of ``g``."""
    D = Fraction(D)
    if D <= 0:
        raise ValueError("defect must be positive")
    return abs(Fraction(phi_val)) / (2 * D)


# -- replay of the unboundedness chain --------------------------------------

FIFTEEN_16 = Fraction(15, 16)
SIX_16 = Fraction(6, 16)
TWENTYFOUR_16 = Fraction(24, 16)


@dataclass(frozen=True)
class QmAssignment:
    """Normalised values ``x_k = phi(Delta_k) / 2D(phi)`` and the hypothesised ``scl(Delta_1) = c``."""

    x1: Fraction
    x2: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("x1", "x2", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def x4(self) -> Fraction:
        return 6 * self.x2 - 8 * self.x1


@dataclass(frozen=True)
class Step:
    label: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    justification: str

    def holds(self) -> bool:
        return {
            "=": self.lhs == self.rhs,
            ">=": self.lhs >= self.rhs,
            ">": self.lhs > self.rhs,
            "<=": self.lhs <= self.rhs,
        }[self.relation]


@dataclass
class ContradictionCertificate:
    q: QmAssignment
    steps: list[Step] = field(default_factory=list)

    @property
    def chain_value(self) -> Fraction:
        """Value of ``2 x1 - (6/16) x2`` (step iii)."""
        return next(s.lhs for s in self.steps if s.label == "iii")

    def verify(self) -> bool:
        """Re-check the certificate from ``q`` without going through the builder.

        ``x4`` is recomputed from the general closed form for ``phi_4``, each
        recorded inequality is re-evaluated, and the final step must be the
        strict inequality ``|x4| > c``.
        """
        q = self.q
        try:
            check_premises(q)
        except PremiseViolated:
            return False
        cf = phi_closed_form(4)
        x4 = cf.phi1 * q.x1 + cf.phi2 * q.x2
        A = 2 * q.x1 - Fraction(3, 8) * q.x2
        B = q.x1 - Fraction(15, 16) * q.x2
        expected = {
            "lantern": (x4, x4),
            "i": (abs(x4), abs(A + 6 * B)),
            "ii": (B, 0),
            "iii": (A, Fraction(3, 2) * q.c),
            "iv.a": (abs(x4), A),
            "iv.b": (Fraction(3, 2) * q.c, q.c),
            "iv": (abs(x4), q.c),
        }
        if [s.label for s in self.steps] != list(expected):
            return False
        for s in self.steps:
            if (s.lhs, s.rhs) != expected[s.label] or not s.holds():
                return False
        return self.steps[-1].relation == ">"


class PremiseViolated(Exception):
    def __init__(self, premise: str, detail: str):
        super().__init__(f"{premise}: {detail}")
        self.premise = premise
        self.detail = detail


def check_premises(q: QmAssignment) -> None:
    if q.c <= 0:
        raise PremiseViolated("c>0", f"c = {q.c} must be positive")
    if q.x1 < FIFTEEN_16 * q.c:
        raise PremiseViolated("P1", f"x1 = {q.x1} < (15/16) c = {FIFTEEN_16 * q.c}")
    if q.x1 > q.c:
        raise PremiseViolated("P2", f"x1 = {q.x1} > c = {q.c}")
    if q.x2 > q.c:
        raise PremiseViolated("P2", f"x2 = {q.x2} > c = {q.c}")


def _chain(q: QmAssignment) -> list[Step]:
    check_premises(q)
    A = 2 * q.x1 - SIX_16 * q.x2
    B = q.x1 - FIFTEEN_16 * q.x2
    x4 = q.x4
    return [
        Step("lantern", x4, "=", 6 * q.x2 - 8 * q.x1,
             "x4 = 6 x2 - 8 x1 from the lantern identities"),
        Step("i", abs(x4), "=", abs(A + 6 * B),
             "|6 x2 - 8 x1| = |(2 x1 - (6/16) x2) + 6 (x1 - (15/16) x2)|"),
        Step("ii", B, ">=", Fraction(0),
             "x1 >= (15/16) c >= (15/16) x2 (P1, P2)"),
        Step("iii", A, ">=", TWENTYFOUR_16 * q.c,
             "2 x1 - (6/16) x2 >= (30/16) c - (6/16) c (P1, x2 <= c)"),
        Step("iv.a", abs(x4), ">=", A,
             "|A + 6B| >= A since A >= 0 and B >= 0"),
        Step("iv.b", TWENTYFOUR_16 * q.c, ">", q.c,
             "(24/16) c > c for c > 0"),
        Step("iv", abs(x4), ">", q.c,
             "Bavard: scl(Delta_4) >= |x4| > c, contradicting scl(Delta_4) <= scl(Delta_1) = c"),
    ]


def replay_unbound(q: QmAssignment) -> ContradictionCertificate:
    """Replay the contradiction chain; raises :class:`PremiseViolated` on bad input."""
    steps = _chain(q)
    failed = [s.label for s in steps if not s.holds()]
    if failed:
        # unreachable when the premises hold; kept as a hard stop
        raise AssertionError(f"chain steps failed: {failed}")
    return ContradictionCertificate(q, steps)


def random_instance(rng: random.Random, max_den: int = 64) -> QmAssignment:
    """A random exact instance satisfying P1 and P2."""
    c = Fraction(rng.randint(1, 10 * max_den), rng.randint(1, max_den))
    x1 = FIFTEEN_16 * c + Fraction(rng.randint(0, max_den), 16 * max_den) * c
    x2 = c - Fraction(rng.randint(0, 4 * max_den), max_den) * c
    return QmAssignment(x1, x2, c)
