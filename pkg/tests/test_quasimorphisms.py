import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leafforge.quasimorphisms import (
    LinearIdentity,
    PremiseViolated,
    QmAssignment,
    bavard_bound,
    lantern_reduce,
    phi_closed_form,
    random_instance,
    replay_unbound,
)

small = st.integers(min_value=1, max_value=10)


def test_renders():
    assert lantern_reduce(1, 1, 1).render() == "φ3 = 3φ2 − 3φ1"
    assert lantern_reduce(1, 1, 2).render() == "φ4 = 2φ3 − 2φ1"
    assert phi_closed_form(4).render() == "φ4 = 6φ2 − 8φ1"
    assert lantern_reduce(1, 1, 1).render(unicode=False) == "phi3 = 3phi2 - 3phi1"


def test_merging():
    assert lantern_reduce(2, 2, 2).as_dict() == {2: -3, 4: 3, 6: -1}
    assert LinearIdentity.from_terms([(1, 2), (2, 4)]).as_dict() == {1: 1, 2: 2}


@given(small, small, small)
def test_lantern_symmetric(a, b, c):
    base = lantern_reduce(a, b, c)
    for perm in [(b, a, c), (c, b, a), (a, c, b)]:
        assert lantern_reduce(*perm) == base


@given(small, small, small)
def test_closed_form_satisfies_every_lantern(a, b, c):
    ident = lantern_reduce(a, b, c)
    p1, p2 = Fraction(3, 7), Fraction(-5, 2)
    vals = {k: phi_closed_form(k).phi1 * p1 + phi_closed_form(k).phi2 * p2
            for k, _ in ident.coefficients}
    assert ident.evaluate(vals) == 0


@given(st.fractions(max_denominator=50), st.fractions(min_value=Fraction(1, 50), max_denominator=50),
       st.integers(min_value=1, max_value=20))
def test_bavard_homogeneous(phi, D, n):
    assert bavard_bound(n * phi, D) == n * bavard_bound(phi, D)
    assert bavard_bound(phi, n * D) == bavard_bound(phi, D) / n


def test_bavard_rejects_zero_defect():
    with pytest.raises(ValueError):
        bavard_bound(1, 0)


def test_boundary_replay():
    cert = replay_unbound(QmAssignment(Fraction(15, 16), 1, 1))
    assert cert.chain_value == Fraction(3, 2)
    assert cert.steps[-1].relation == ">" and cert.verify()


@pytest.mark.parametrize("args,premise", [
    ((1, 1, 0), "c>0"),
    ((Fraction(1, 2), 1, 1), "P1"),
    ((Fraction(2), 1, 1), "P2"),
    ((1, 2, 1), "P2"),
])
def test_premises(args, premise):
    with pytest.raises(PremiseViolated) as e:
        replay_unbound(QmAssignment(*args))
    assert e.value.premise == premise


def test_random_instances_certify():
    rng = random.Random(7)
    for _ in range(200):
        q = random_instance(rng)
        cert = replay_unbound(q)
        assert cert.verify() and cert.chain_value >= Fraction(24, 16) * q.c


@given(st.fractions(max_denominator=50), st.fractions(min_value=Fraction(1, 50), max_denominator=50),
       st.fractions(min_value=Fraction(1, 30), max_value=30, max_denominator=30))
def test_bavard_scale_invariant(phi, D, lam):
    assert bavard_bound(lam * phi, lam * D) == bavard_bound(phi, D)


def test_bavard_values():
    assert bavard_bound(1, Fraction(1, 2)) == 1
    assert bavard_bound(0, 7) == 0
    assert bavard_bound(-3, 1) == Fraction(3, 2)


def test_small_closed_forms():
    assert (phi_closed_form(1).phi1, phi_closed_form(1).phi2) == (1, 0)
    assert (phi_closed_form(2).phi1, phi_closed_form(2).phi2) == (0, 1)
    assert phi_closed_form(3).render() == "φ3 = 3φ2 − 3φ1"


def test_replay_x1_equals_c():
    cert = replay_unbound(QmAssignment(1, 1, 1))
    lantern = cert.steps[0]
    assert abs(lantern.lhs) == 2 and cert.chain_value == Fraction(13, 8) and cert.verify()
