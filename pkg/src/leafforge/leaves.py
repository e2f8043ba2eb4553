"""Closed leaves: the Milnor inequality plus the two leaf equations.

An embedded surface ``S`` of genus ``g`` with ``|S.S| <= g - 1`` is a leaf
of some foliation exactly when a distribution exists whose Euler classes
satisfy ``e1.S = 2 - 2g`` and ``e2.S = S.S``. The search for such a
distribution is bounded, so the answer is one of

* ``realized``   with a certificate that re-verifies from raw data,
* ``milnor_fail`` (excluded outright),
* ``infeasible`` (a congruence rules out every characteristic pair),
* ``exhausted``  (nothing in the search box; undecided).
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .distributions import (
    CharacteristicPair,
    EulerPair,
    ManifoldModel,
    SideConstraint,
    euler_from_pair,
    pair_checks,
    solve_pairs,
)
from .errors import Unsupported
from .lattice import ClassVector, IntersectionForm, pair, signature, square

REALIZED = "realized"
MILNOR_FAIL = "milnor_fail"
EXHAUSTED = "exhausted"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SurfaceClass:
    cls: ClassVector
    genus: int

    def __post_init__(self):
        object.__setattr__(self, "cls", tuple(int(x) for x in self.cls))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    def self_intersection(self, Q: IntersectionForm) -> int:
        return square(Q, self.cls)


def milnor_check(Q: IntersectionForm, S: SurfaceClass) -> bool:
    if S.genus == 0:
        raise Unsupported("the Milnor inequality is only applied to surfaces of genus >= 1",
                          hypothesis="genus >= 1")
    return abs(S.self_intersection(Q)) <= S.genus - 1


def leaf_constraints(Q: IntersectionForm, S: SurfaceClass) -> tuple[SideConstraint, SideConstraint]:
    return (SideConstraint(S.cls, S.euler_characteristic, "e1"),
            SideConstraint(S.cls, S.self_intersection(Q), "e2"))


@dataclass(frozen=True)
class LeafCertificate:
    """Raw ``(K+, K-)`` plus the checks they were accepted on.

    :meth:`recheck` recomputes every entry of ``checks`` from the pair and
    the echoed inputs without trusting ``euler``.
    """

    pair: CharacteristicPair
    euler: EulerPair
    checks: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, M: ManifoldModel, S: SurfaceClass, p: CharacteristicPair) -> "LeafCertificate":
        return cls(p, euler_from_pair(p), certificate_checks(M, S, p))

    def recheck(self, M: ManifoldModel, S: SurfaceClass) -> bool:
        fresh = certificate_checks(M, S, self.pair)
        return fresh == self.checks and _all_pass(fresh) and euler_from_pair(self.pair) == self.euler


def certificate_checks(M: ManifoldModel, S: SurfaceClass, p: CharacteristicPair) -> dict:
    """The two square equations, the two leaf equations and the Milnor margin."""
    Q = M.form
    base = pair_checks(M, p)
    checks: dict = {k: v for k, v in base.items()}
    if not base.get("parity", False):
        return checks
    e = euler_from_pair(p)
    s2 = square(Q, S.cls)
    e1s = pair(Q, e.e1, S.cls)
    e2s = pair(Q, e.e2, S.cls)
    checks.update({
        "e1_dot_surface": e1s,
        "e2_dot_surface": e2s,
        "surface_square": s2,
        "leaf_e1": e1s == S.euler_characteristic,
        "leaf_e2": e2s == s2,
        "milnor_margin": S.genus - 1 - abs(s2),
    })
    return checks


def _all_pass(checks: dict) -> bool:
    ok = all(v for v in checks.values() if isinstance(v, bool))
    return ok and checks.get("milnor_margin", -1) >= 0


@dataclass
class LeafOutcome:
    status: str
    surface: SurfaceClass
    bound: int
    certificate: LeafCertificate | None = None
    reason: str = ""
    nodes: int = 0

    @property
    def realized(self) -> bool:
        return self.status == REALIZED


def realize_leaf(M: ManifoldModel, S: SurfaceClass, bound: int = 6, *,
                 jobs: int = 1, backend: str | None = None) -> LeafOutcome:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if len(S.cls) != M.rank:
        raise ValueError("surface class length differs from the form rank")
    if not milnor_check(M.form, S):
        s2 = S.self_intersection(M.form)
        return LeafOutcome(MILNOR_FAIL, S, bound,
                           reason=f"|[S]^2| = {abs(s2)} > g - 1 = {S.genus - 1}")
    res = solve_pairs(M, leaf_constraints(M.form, S), bound, limit=1, jobs=jobs, backend=backend)
    if res.status == "infeasible":
        return LeafOutcome(INFEASIBLE, S, bound, reason=res.reason, nodes=res.nodes)
    if not res.found:
        return LeafOutcome(EXHAUSTED, S, bound,
                           reason=f"no characteristic pair in [-{bound}, {bound}]^{M.rank}",
                           nodes=res.nodes)
    cert = LeafCertificate.build(M, S, res.first)
    if not cert.recheck(M, S):
        raise AssertionError(f"certificate failed re-verification: {cert}")
    return LeafOutcome(REALIZED, S, bound, cert, nodes=res.nodes)


def _spectrum_task(args):
    M, v, g, bound, backend = args
    return realize_leaf(M, SurfaceClass(v, g), bound, backend=backend)


def genus_spectrum(M: ManifoldModel, v: Sequence[int], gmax: int, bound: int = 6, *,
                   jobs: int = 1, backend: str | None = None) -> dict[int, LeafOutcome]:
    """Leaf outcome for the class ``v`` at every genus ``1..gmax``."""
    if gmax < 1:
        raise ValueError("gmax must be >= 1")
    tasks = [(M, tuple(v), g, bound, backend) for g in range(1, gmax + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_spectrum_task, tasks))
    else:
        results = [_spectrum_task(t) for t in tasks]
    return {g: r for g, r in zip(range(1, gmax + 1), results)}
