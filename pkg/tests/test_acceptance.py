"""Acceptance suite: one test per headline criterion.

Each test appends a ``PASS``/``FAIL`` line to :data:`RESULTS`; the lines are
printed in the pytest terminal summary (see ``conftest.py``) and by running
this file directly.
"""
import random
import time
from fractions import Fraction

import pytest

from leafforge import bundles
from leafforge.distributions import (
    ManifoldModel,
    euler_from_pair,
    family_cp2,
    family_product,
    foliated_genus_manifold,
    naive_pairs,
    product_manifold,
    solve_pairs,
    verify_pair,
)
from leafforge.lattice import (
    build_form,
    characteristic_coset,
    is_characteristic,
    signature,
    square,
    van_der_blij_check,
)
from leafforge.leaves import MILNOR_FAIL, REALIZED, SurfaceClass, genus_spectrum, realize_leaf
from leafforge.quasimorphisms import (
    QmAssignment,
    lantern_reduce,
    phi_closed_form,
    random_instance,
    replay_unbound,
)

RESULTS: list[str] = []


class criterion:
    """Time the body, record one line, re-raise failures."""

    def __init__(self, name: str, budget: float | None = None):
        self.name, self.budget = name, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and (self.budget is None or dt < self.budget)
        limit = f" (limit {self.budget:g} s)" if self.budget else ""
        RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {self.name}  [{dt:.3f} s{limit}]")
        print(RESULTS[-1])
        if exc_type is None and not ok:
            pytest.fail(f"{self.name}: {dt:.2f} s exceeds {self.budget} s")
        return False


def test_family_verification():
    with criterion("family verification: t in [-5,5], odd s in [-9,9]", 1.0):
        M = foliated_genus_manifold()
        assert (M.chi, M.sigma) == (4, 0)
        want = (2 * M.chi + 3 * M.sigma, -2 * M.chi + 3 * M.sigma)
        assert want == (8, -8)
        count = 0
        for t in range(-5, 6):
            for s in range(-9, 10, 2):
                p = family_cp2(t, s)
                assert is_characteristic(M.form, p.kplus) and is_characteristic(M.form, p.kminus)
                assert (square(M.form, p.kplus), square(M.form, p.kminus)) == want
                count += 1
        assert count == 110


def test_solver_rediscovery():
    with criterion("solver rediscovery: B=5 witness, oracle equivalence for B<=3", 30.0):
        M = foliated_genus_manifold()
        res = solve_pairs(M, (), 5)
        assert res.found and verify_pair(M, res.first)
        for B in (1, 2, 3):
            oracle = sorted(naive_pairs(M, B), key=lambda p: (p.kplus, p.kminus))
            got = solve_pairs(M, (), B, limit=None).pairs
            assert got == oracle
            if oracle:
                assert solve_pairs(M, (), B).first == oracle[0]
        # lexicographic minimum at B=5 against the full B=5 enumeration
        full = solve_pairs(M, (), 5, limit=None).pairs
        assert res.first == min(full, key=lambda p: (p.kplus, p.kminus))


def test_foliated_genus_spectrum():
    with criterion("foliated genus spectrum: v1, gmax=10, B=30", 60.0):
        M = foliated_genus_manifold()
        spec = genus_spectrum(M, (1, 0, 0, 0), 10, 30)
        assert spec[1].status == MILNOR_FAIL
        for g in range(2, 11):
            assert spec[g].status == REALIZED, (g, spec[g].status)
            assert spec[g].certificate.recheck(M, SurfaceClass((1, 0, 0, 0), g))


def test_leaf_minimise_exactness():
    with criterion("product leaf exactness: family_product(3,10), sigma/g=4, sigma'/g=11"):
        M = product_manifold(3)
        p = family_product(3, 10)
        e = euler_from_pair(p)
        assert e.e1 == (-6, 0, -20, 0) + (0,) * 10
        assert e.e2 == (2, 0, 2, 0) + (0,) * 10
        assert verify_pair(M, p)
        sigma = (1, 1) + (0,) * 12
        sigma_p = (0, 0, 1, 1) + (0,) * 10
        assert realize_leaf(M, SurfaceClass(sigma, 4), 24).status == REALIZED
        assert realize_leaf(M, SurfaceClass(sigma_p, 11), 24).status == REALIZED


def _recurrence_oracle(kmax: int) -> dict[int, tuple[Fraction, Fraction]]:
    # phi_k as (coefficient of phi_1, coefficient of phi_2), eliminating upward
    # through the lantern (1, 1, k-2)
    coeff = {1: (Fraction(1), Fraction(0)), 2: (Fraction(0), Fraction(1))}
    for k in range(3, kmax + 1):
        rhs = lantern_reduce(1, 1, k - 2).solve_for(k)
        c1 = sum(c * coeff[j][0] for j, c in rhs.items())
        c2 = sum(c * coeff[j][1] for j, c in rhs.items())
        coeff[k] = (c1, c2)
    return coeff


def test_lantern_identities():
    with criterion("lantern identities and closed form for k<=50", 1.0):
        assert lantern_reduce(1, 1, 1).render() == "φ3 = 3φ2 − 3φ1"
        cf4 = phi_closed_form(4)
        assert cf4.render() == "φ4 = 6φ2 − 8φ1"
        # the (1,1,2) relation reduces to the same expression once phi3 is substituted
        rhs = lantern_reduce(1, 1, 2).solve_for(4)
        phi3 = lantern_reduce(1, 1, 1).solve_for(3)
        sub = {1: Fraction(0), 2: Fraction(0)}
        for j, c in rhs.items():
            for i, d in (phi3.items() if j == 3 else [(j, Fraction(1))]):
                sub[i] += c * d
        assert (sub[1], sub[2]) == (cf4.phi1, cf4.phi2) == (-8, 6)
        oracle = _recurrence_oracle(50)
        for k in range(1, 51):
            cf = phi_closed_form(k)
            assert (cf.phi1, cf.phi2) == oracle[k], k


def test_replay_suite():
    with criterion("replay suite: 1000 random instances, boundary value 3/2"):
        rng = random.Random(1)
        for _ in range(1000):
            q = random_instance(rng)
            assert FIFTEEN_16 * q.c <= q.x1 <= q.c and q.x2 <= q.c
            cert = replay_unbound(q)
            assert cert.verify()
            assert cert.chain_value >= Fraction(24, 16) * q.c
        cert = replay_unbound(QmAssignment(Fraction(15, 16), Fraction(1), Fraction(1)))
        assert cert.chain_value == Fraction(3, 2)
        assert cert.verify()


FIFTEEN_16 = Fraction(15, 16)


def test_bounds_consistency():
    with criterion("bounds consistency over the stated ranges"):
        for g in range(2, 21):
            for h in range(2, 21):
                m = bundles.covering_multisection(g, h)
                assert abs(m.self_intersection) == abs(m.euler_characteristic)
        for h in range(2, 11):
            for n in range(1, 101):
                d = bundles.diagonal_cover_sequence(h, n)
                assert abs(d.self_intersection) == 2 * d.section_genus - 2
        for g in range(1, 11):
            for h in range(2, 11):
                assert bundles.factorial_cover_bound(g, h, 1) == bundles.pure_multisection_bound(g, h)
        for g in range(0, 51):
            for h in range(0, 51):
                assert (2 - 2 * g) * (2 - 2 * h) - 2 + 2 * (2 * g + 2 * h) == 4 * g * h + 2
                assert bundles.b2_upper(g, h) == 4 * g * h + 2


def _random_model(rng: random.Random) -> ManifoldModel:
    while True:
        rank = rng.randint(2, 8)
        blocks, r = [], 0
        while r < rank:
            b = rng.choice(["+1", "-1", "H"] if rank - r >= 2 else ["+1", "-1"])
            blocks.append(b)
            r += 2 if b == "H" else 1
        Q = build_form(blocks)
        if not Q.is_definite:
            break
    sigma = signature(Q)
    return ManifoldModel("random", Q, chi=sigma + 4 * rng.randint(-1, 2))


def test_lattice_invariants():
    with criterion("lattice invariants over random block forms of rank <= 8"):
        rng = random.Random(3)
        emitted = 0
        for _ in range(60):
            M = _random_model(rng)
            d = characteristic_coset(M.form)
            for p in solve_pairs(M, (), 3, limit=4).pairs:
                for K in (p.kplus, p.kminus):
                    assert van_der_blij_check(M.form, K) and d.contains(K)
                    emitted += 1
        F = foliated_genus_manifold()
        dF = characteristic_coset(F.form)
        for t in range(-3, 4):
            for s in (-3, -1, 1, 3):
                p = family_cp2(t, s)
                for K in (p.kplus, p.kminus):
                    assert van_der_blij_check(F.form, K) and dF.contains(K)
        P = product_manifold(3)
        p = family_product(3, 10)
        for K in (p.kplus, p.kminus):
            assert van_der_blij_check(P.form, K)
        assert emitted > 50


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except Exception:
                pass
