"""Oriented 2-plane distributions on closed oriented 4-manifolds.

A distribution exists iff there are characteristic vectors ``K+`` and
``K-`` with ``K+.K+ = 2*chi + 3*sigma`` and ``K-.K- = -2*chi + 3*sigma``;
its Euler classes are ``e1 = (K+ + K-)/2`` and ``e2 = (K- - K+)/2``.
This module searches for such pairs in a coordinate box and reports
honestly when the box runs out.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import islice
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import InvariantViolation, NoIntegerCompletion, Unsupported
from .lattice import (
    ClassVector,
    IntersectionForm,
    build_form,
    characteristic_coset,
    is_characteristic,
    pair,
    signature,
    square,
)
from .search import coset_box, iter_solutions

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ManifoldModel:
    """Arithmetic shadow of a closed oriented 4-manifold.

    ``sigma`` is always computed from the form; passing a value only
    asserts agreement.
    """

    name: str
    form: IntersectionForm
    chi: int
    sigma: int | None = None

    def __post_init__(self):
        sig = signature(self.form)
        if self.sigma is not None and self.sigma != sig:
            raise ValueError(f"declared signature {self.sigma} but the form has signature {sig}")
        object.__setattr__(self, "sigma", sig)

    @property
    def rank(self) -> int:
        return self.form.rank


@dataclass(frozen=True)
class CharacteristicPair:
    kplus: ClassVector
    kminus: ClassVector

    def __post_init__(self):
        object.__setattr__(self, "kplus", tuple(int(x) for x in self.kplus))
        object.__setattr__(self, "kminus", tuple(int(x) for x in self.kminus))


@dataclass(frozen=True)
class EulerPair:
    e1: ClassVector
    e2: ClassVector


@dataclass(frozen=True)
class SideConstraint:
    """Require ``pair(Q, e, vector) == value`` where ``e`` is ``e1`` or ``e2``."""

    vector: ClassVector
    value: int
    which: str = "e1"

    def __post_init__(self):
        if self.which not in ("e1", "e2"):
            raise ValueError("which must be 'e1' or 'e2'")
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))


@dataclass
class SearchResult:
    """Outcome of :func:`solve_pairs`.

    ``status`` is ``"found"`` (``pairs`` non-empty), ``"exhausted"`` (the
    box ``[-bound, bound]^rank`` holds no witness; nothing is claimed
    beyond it) or ``"infeasible"`` (a congruence rules out every vector,
    independently of the bound; ``reason`` says which).
    """

    status: str
    bound: int
    pairs: list[CharacteristicPair] = field(default_factory=list)
    complete: bool = False
    reason: str = ""
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def first(self) -> CharacteristicPair | None:
        return self.pairs[0] if self.pairs else None


def distribution_exists(M: ManifoldModel) -> bool:
    """Congruence criterion for manifolds with indefinite intersection form."""
    if M.form.is_definite:
        raise Unsupported(
            f"{M.name}: intersection form is definite; the congruence criterion "
            "only covers indefinite forms",
            hypothesis="indefinite intersection form",
        )
    return M.sigma % 2 == 0 and (M.chi - M.sigma) % 4 == 0


def target_squares(M: ManifoldModel) -> tuple[int, int]:
    return 2 * M.chi + 3 * M.sigma, -2 * M.chi + 3 * M.sigma


def euler_from_pair(p: CharacteristicPair) -> EulerPair:
    s = [a + b for a, b in zip(p.kplus, p.kminus)]
    d = [b - a for a, b in zip(p.kplus, p.kminus)]
    if any(x % 2 for x in s):
        raise InvariantViolation(f"K+ + K- = {tuple(s)} is not even")
    return EulerPair(tuple(x // 2 for x in s), tuple(x // 2 for x in d))


def pair_checks(M: ManifoldModel, p: CharacteristicPair) -> dict[str, bool]:
    """Every defining property of a characteristic pair, checked from scratch."""
    Q = M.form
    tp, tm = target_squares(M)
    if len(p.kplus) != Q.rank or len(p.kminus) != Q.rank:
        return {"dimension": False}
    checks = {
        "kplus_characteristic": is_characteristic(Q, p.kplus),
        "kminus_characteristic": is_characteristic(Q, p.kminus),
        "kplus_square": square(Q, p.kplus) == tp,
        "kminus_square": square(Q, p.kminus) == tm,
        "kplus_van_der_blij": (square(Q, p.kplus) - M.sigma) % 8 == 0,
        "kminus_van_der_blij": (square(Q, p.kminus) - M.sigma) % 8 == 0,
        "parity": all((a + b) % 2 == 0 for a, b in zip(p.kplus, p.kminus)),
    }
    if checks["parity"]:
        e = euler_from_pair(p)
        checks["euler_squares"] = square(Q, e.e1) + square(Q, e.e2) == 3 * M.sigma
        checks["euler_product"] = pair(Q, e.e1, e.e2) == -M.chi
    return checks


def verify_pair(M: ManifoldModel, p: CharacteristicPair,
                constraints: Sequence[SideConstraint] = ()) -> bool:
    if not all(pair_checks(M, p).values()):
        return False
    e = euler_from_pair(p)
    for sc in constraints:
        vec = e.e1 if sc.which == "e1" else e.e2
        if pair(M.form, vec, sc.vector) != sc.value:
            return False
    return True


# -- search -----------------------------------------------------------------

class _Plan:
    """Side constraints split into K+ rows and K- rows.

    With ``a = K+ . Qv`` and ``b = K- . Qv`` a constraint on ``e1`` reads
    ``a + b = 2r`` and one on ``e2`` reads ``b - a = 2r``. When both appear
    for the same ``v`` the two sides decouple; otherwise ``b`` is fixed once
    ``K+`` is known.
    """

    def __init__(self, Q: IntersectionForm, constraints: Sequence[SideConstraint]):
        self.infeasible = ""
        by_vec: dict[ClassVector, dict[str, set[int]]] = {}
        for sc in constraints:
            if len(sc.vector) != Q.rank:
                raise ValueError("constraint vector length differs from the form rank")
            w = Q.apply(sc.vector)
            by_vec.setdefault(w, {"e1": set(), "e2": set()})[sc.which].add(sc.value)
        self.plus_rows: list[ClassVector] = []
        self.plus_rhs: list[int] = []
        self.fixed_minus: list[tuple[ClassVector, int]] = []
        self.linked: list[tuple[ClassVector, int, int]] = []  # (w, 2r, sign of a)
        for w, vals in sorted(by_vec.items()):
            if len(vals["e1"]) > 1 or len(vals["e2"]) > 1:
                self.infeasible = "contradictory side constraints on the same class"
                return
            if not any(w):
                if any(v != 0 for s in vals.values() for v in s):
                    self.infeasible = "side constraint against a null class with non-zero value"
                    return
                continue
            if vals["e1"] and vals["e2"]:
                r1, = vals["e1"]
                r2, = vals["e2"]
                self.plus_rows.append(w)
                self.plus_rhs.append(r1 - r2)
                self.fixed_minus.append((w, r1 + r2))
            elif vals["e1"]:
                r1, = vals["e1"]
                self.linked.append((w, 2 * r1, -1))
            else:
                r2, = vals["e2"]
                self.linked.append((w, 2 * r2, 1))

    def minus_rows(self, kplus: ClassVector) -> tuple[list[ClassVector], list[int]]:
        rows = [w for w, _ in self.fixed_minus]
        rhs = [r for _, r in self.fixed_minus]
        for w, two_r, sgn in self.linked:
            a = sum(x * y for x, y in zip(kplus, w))
            rows.append(w)
            rhs.append(two_r + sgn * a)
        return rows, rhs


def _precheck(M: ManifoldModel, plan: _Plan) -> str:
    if plan.infeasible:
        return plan.infeasible
    tp, tm = target_squares(M)
    # every characteristic K has K.K == sigma (mod 8)
    if (tp - M.sigma) % 8:
        return f"van der Blij: 2chi+3sigma = {tp} is not congruent to sigma = {M.sigma} mod 8"
    if (tm - M.sigma) % 8:
        return f"van der Blij: -2chi+3sigma = {tm} is not congruent to sigma = {M.sigma} mod 8"
    # K = base + 2y, so w.K is pinned modulo 2 gcd(w)
    base = characteristic_coset(M.form).parity
    rows = [(w, r, "K+") for w, r in zip(plan.plus_rows, plan.plus_rhs)]
    rows += [(w, r, "K-") for w, r in plan.fixed_minus]
    for w, r, side in rows:
        m = 2 * reduce(gcd, w, 0)
        if (r - sum(x * y for x, y in zip(w, base))) % m:
            return f"congruence: {side}.Qv = {r} is impossible for characteristic {side} (mod {m})"
    return ""


def iter_pairs(
    M: ManifoldModel,
    constraints: Sequence[SideConstraint] = (),
    bound: int = 6,
    *,
    first_plus: int | None = None,
    start: CharacteristicPair | None = None,
    backend: str | None = None,
    stats: dict | None = None,
) -> Iterator[CharacteristicPair]:
    """Lazily yield characteristic pairs in lexicographic ``(K+, K-)`` order.

    ``first_plus`` pins the first coordinate of ``K+`` (used to split the
    search across workers). ``start`` resumes the stream at the first pair
    not below it.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    plan = _Plan(M.form, constraints)
    if _precheck(M, plan):
        return
    G = M.form.gram
    parity = characteristic_coset(M.form).parity
    lo, hi = coset_box(parity, bound)
    if first_plus is not None:
        if first_plus < lo[0] or first_plus > hi[0] or (first_plus - lo[0]) % 2:
            return
        lo_p = [first_plus] + lo[1:]
        hi_p = [first_plus] + hi[1:]
    else:
        lo_p, hi_p = lo, hi
    tp, tm = target_squares(M)
    cache: dict[tuple, _Memo] = {}
    for kp in iter_solutions(G, lo_p, hi_p, tp, plan.plus_rows, plan.plus_rhs,
                             start=start.kplus if start else None, backend=backend, stats=stats):
        rows, rhs = plan.minus_rows(kp)
        if start is not None and kp == start.kplus:
            for km in iter_solutions(G, lo, hi, tm, rows, rhs, start=start.kminus,
                                     backend=backend, stats=stats):
                yield CharacteristicPair(kp, km)
            continue
        key = (tuple(rows), tuple(rhs))
        memo = cache.get(key)
        if memo is None:
            memo = cache[key] = _Memo(
                lambda rows=rows, rhs=rhs: iter_solutions(G, lo, hi, tm, rows, rhs,
                                                          backend=backend, stats=stats))
        for km in memo:
            yield CharacteristicPair(kp, km)


class _Memo:
    """Re-iterable view of a solution stream, caching up to ``cap`` items.

    Streams longer than ``cap`` are regenerated from scratch on each pass.
    """

    def __init__(self, factory, cap: int = 4096):
        self.factory = factory
        self.cap = cap
        self.items: list = []
        self.source = None
        self.finished = False
        self.overflow = False

    def __iter__(self):
        if self.overflow:
            yield from self.factory()
            return
        i = 0
        while True:
            if i < len(self.items):
                yield self.items[i]
                i += 1
                continue
            if self.finished:
                return
            if self.source is None:
                self.source = self.factory()
            nxt = next(self.source, _END)
            if nxt is _END:
                self.finished = True
                self.source = None
                return
            if len(self.items) >= self.cap:
                # too long to keep; this pass continues straight from the source
                self.overflow = True
                src, self.source, self.items = self.source, None, []
                yield nxt
                yield from src
                return
            self.items.append(nxt)


_END = object()


def _worker(args):
    M, constraints, bound, value, limit, backend = args
    stats: dict = {}
    pairs = list(islice(iter_pairs(M, constraints, bound, first_plus=value,
                                   backend=backend, stats=stats), limit))
    return pairs, stats.get("nodes", 0)


def solve_pairs(
    M: ManifoldModel,
    constraints: Sequence[SideConstraint] = (),
    bound: int = 6,
    *,
    limit: int | None = 1,
    jobs: int = 1,
    backend: str | None = None,
) -> SearchResult:
    """Search ``[-bound, bound]^rank`` for characteristic pairs.

    Returns at most ``limit`` pairs (all of them when ``limit`` is None),
    the lexicographically smallest first. With ``jobs > 1`` the first
    coordinate of ``K+`` is split across processes and the partial streams
    are merged back in order.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    constraints = tuple(constraints)
    reason = _precheck(M, _Plan(M.form, constraints))
    if reason:
        return SearchResult("infeasible", bound, reason=reason, complete=True)
    stats: dict = {}
    if jobs > 1:
        parity = characteristic_coset(M.form).parity
        lo, hi = coset_box(parity, bound)
        values = list(range(lo[0], hi[0] + 1, 2))
        pairs: list[CharacteristicPair] = []
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            tasks = [(M, constraints, bound, v, limit, backend) for v in values]
            for part, nodes in ex.map(_worker, tasks):
                stats["nodes"] = stats.get("nodes", 0) + nodes
                pairs.extend(part)
                if limit is not None and len(pairs) >= limit:
                    break
            # cancel anything not yet started
            ex.shutdown(wait=True, cancel_futures=True)
        complete = limit is None or len(pairs) < limit
        pairs = pairs if limit is None else pairs[:limit]
    else:
        it = iter_pairs(M, constraints, bound, backend=backend, stats=stats)
        if limit is None:
            pairs = list(it)
            complete = True
        else:
            pairs = list(islice(it, limit + 1))
            complete = len(pairs) <= limit
            pairs = pairs[:limit]
    for p in pairs:
        if not verify_pair(M, p, constraints):
            raise InvariantViolation(f"search emitted an invalid pair {p}")
    status = "found" if pairs else "exhausted"
    return SearchResult(status, bound, pairs, complete, nodes=stats.get("nodes", 0))


# -- explicit families -------------------------------------------------------

def foliated_genus_manifold() -> ManifoldModel:
    """``2CP^2 # 2(-CP^2) # S^1 x S^3``: form diag(1, 1, -1, -1), chi 4, sigma 0."""
    return ManifoldModel("2CP2#2CP2bar#S1xS3", build_form(["+1", "+1", "-1", "-1"]), chi=4)


def product_manifold(g: int) -> ManifoldModel:
    """``T^2 x Sigma_g``: form ``(2g+1) H`` with chi = sigma = 0."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return ManifoldModel(f"T2xSigma{g}", build_form(["H"] * (2 * g + 1)), chi=0)


def family_cp2(t: int, s: int) -> CharacteristicPair:
    """The two-parameter family on diag(1, 1, -1, -1) with squares (8, -8).

    ``K+ = (2t - s, 2y + 1, 2y - 1, 1)`` and ``K- = (2t + s, 2z + 1, 2z - 1, 1)``
    with ``y = (9 - (2t - s)^2) / 8`` and ``z = (-7 - (2t + s)^2) / 8``.
    """
    a, b = 2 * t - s, 2 * t + s
    ny, nz = 9 - a * a, -7 - b * b
    if ny % 8 or nz % 8:
        raise NoIntegerCompletion(f"no integral y, z for t={t}, s={s} (s must be odd)")
    y, z = ny // 8, nz // 8
    return CharacteristicPair((a, 2 * y + 1, 2 * y - 1, 1), (b, 2 * z + 1, 2 * z - 1, 1))


def family_product(g: int, gprime: int) -> CharacteristicPair:
    """Square-zero pair on ``(2g+1) H`` supported on the first coordinates of two blocks."""
    if g < 2 or gprime < 0:
        raise ValueError("need g >= 2 and g' >= 0")
    n = 2 * (2 * g + 1)
    kp = [0] * n
    km = [0] * n
    kp[0], kp[2] = -2 - 2 * g, -2 - 2 * gprime
    km[0], km[2] = 2 - 2 * g, 2 - 2 * gprime
    return CharacteristicPair(tuple(kp), tuple(km))


def naive_pairs(M: ManifoldModel, bound: int,
                constraints: Iterable[SideConstraint] = ()) -> list[CharacteristicPair]:
    """Full-box enumeration with no coset or congruence pruning (test oracle)."""
    from itertools import product

    Q = M.form
    tp, tm = target_squares(M)
    rng = range(-bound, bound + 1)
    plus, minus = [], []
    for v in product(rng, repeat=Q.rank):
        if not is_characteristic(Q, v):
            continue
        s = square(Q, v)
        if s == tp:
            plus.append(v)
        if s == tm:
            minus.append(v)
    constraints = list(constraints)
    out = []
    for kp in plus:
        for km in minus:
            p = CharacteristicPair(kp, km)
            if verify_pair(M, p, constraints):
                out.append(p)
    return out
