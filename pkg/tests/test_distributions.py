from itertools import islice

import pytest

from leafforge.distributions import (
    CharacteristicPair,
    ManifoldModel,
    SideConstraint,
    distribution_exists,
    euler_from_pair,
    family_cp2,
    family_product,
    iter_pairs,
    naive_pairs,
    pair_checks,
    solve_pairs,
    target_squares,
    verify_pair,
)
from leafforge.errors import InvariantViolation, NoIntegerCompletion, Unsupported
from leafforge.lattice import build_form, pair, square
from leafforge.documents import load_document


def test_existence_congruences(foliated):
    assert distribution_exists(foliated)
    assert not distribution_exists(load_document("fixture:chi_one").model)
    # odd signature fails the first congruence
    M = ManifoldModel("odd", build_form(["+1", "+1", "-1"]), chi=3)
    assert not distribution_exists(M)


def test_definite_is_unsupported():
    with pytest.raises(Unsupported) as e:
        distribution_exists(load_document("fixture:definite").model)
    assert "indefinite" in e.value.hypothesis


def test_declared_signature_must_match():
    with pytest.raises(ValueError):
        ManifoldModel("x", build_form(["+1", "-1"]), chi=2, sigma=2)


def test_family_shape():
    p = family_cp2(1, 1)
    assert p.kplus == (1, 3, 1, 1) and p.kminus == (3, -3, -5, 1)
    with pytest.raises(NoIntegerCompletion):
        family_cp2(0, 2)


def test_euler_invariants(foliated):
    p = family_cp2(2, 3)
    e = euler_from_pair(p)
    Q = foliated.form
    assert pair(Q, e.e1, e.e2) == -foliated.chi
    assert square(Q, e.e1) + square(Q, e.e2) == 3 * foliated.sigma
    assert all(pair_checks(foliated, p).values())


def test_parity_violation():
    with pytest.raises(InvariantViolation):
        euler_from_pair(CharacteristicPair((1, 0), (0, 0)))


def test_family_product_euler(t2_sigma3):
    p = family_product(3, 10)
    e = euler_from_pair(p)
    assert e.e1[:4] == (-6, 0, -20, 0) and not any(e.e1[4:])
    assert e.e2[:4] == (2, 0, 2, 0) and not any(e.e2[4:])
    assert verify_pair(t2_sigma3, p)


@pytest.mark.parametrize("B", [1, 2, 3])
def test_solver_equals_naive_oracle(foliated, B):
    got = solve_pairs(foliated, (), B, limit=None)
    want = naive_pairs(foliated, B)
    assert got.pairs == sorted(want, key=lambda p: (p.kplus, p.kminus))
    assert got.status == ("found" if want else "exhausted")


def test_constrained_oracle(foliated):
    cons = (SideConstraint((1, 0, 0, 0), -2, "e1"), SideConstraint((1, 0, 0, 0), 1, "e2"))
    got = solve_pairs(foliated, cons, 5, limit=None).pairs
    want = naive_pairs(foliated, 5, cons)
    assert got == sorted(want, key=lambda p: (p.kplus, p.kminus)) and got


def test_first_witness_b5(foliated):
    res = solve_pairs(foliated, (), 5)
    assert res.found and not res.complete
    assert res.first == CharacteristicPair((-5, -3, -5, -1), (-5, -1, -5, -3))
    assert family_cp2(1, 1) in solve_pairs(foliated, (), 5, limit=None).pairs


def test_iter_pairs_is_lazy(foliated):
    first = list(islice(iter_pairs(foliated, (), 30), 3))
    assert len(first) == 3 and all(verify_pair(foliated, p) for p in first)


def test_jobs_merge_in_order(foliated):
    serial = solve_pairs(foliated, (), 3, limit=None).pairs
    par = solve_pairs(foliated, (), 3, limit=None, jobs=2).pairs
    assert serial == par
    assert solve_pairs(foliated, (), 5, jobs=2).first == solve_pairs(foliated, (), 5).first


def test_backends_agree(foliated):
    a = solve_pairs(foliated, (), 3, limit=None, backend="python").pairs
    b = solve_pairs(foliated, (), 3, limit=None).pairs
    assert a == b


def test_infeasible_constraint(foliated):
    # e1 and e2 always have opposite parity pattern on v1; e1.v1 + e2.v1 = K-.v1 is odd
    cons = (SideConstraint((1, 0, 0, 0), 0, "e1"), SideConstraint((1, 0, 0, 0), 0, "e2"))
    res = solve_pairs(foliated, cons, 6)
    assert res.status == "infeasible" and res.reason


def test_k3_forms_find_witness():
    for name in ("k3", "k3_like"):
        M = load_document(f"fixture:{name}").model
        assert M.chi == 24 and M.sigma == -16
        res = solve_pairs(M, (), 6)
        assert res.found
        tp, tm = target_squares(M)
        assert square(M.form, res.first.kplus) == tp and square(M.form, res.first.kminus) == tm


def test_zero_pair_in_empty_box(t2_sigma3):
    res = solve_pairs(t2_sigma3, (), 0)
    assert res.first == CharacteristicPair((0,) * 14, (0,) * 14)


def test_e2_constraint_filter(foliated):
    v1 = (1, 0, 0, 0)
    pairs = solve_pairs(foliated, (SideConstraint(v1, 1, "e2"),), 5, limit=None).pairs
    assert pairs
    assert all(pair(foliated.form, euler_from_pair(p).e2, v1) == 1 for p in pairs)
    unconstrained = solve_pairs(foliated, (), 5, limit=None).pairs
    assert pairs == [p for p in unconstrained if pair(foliated.form, euler_from_pair(p).e2, v1) == 1]


def test_documented_family_values():
    assert family_cp2(-1, 1) == CharacteristicPair((-3, 1, -1, 1), (-1, -1, -3, 1))
    e = euler_from_pair(family_cp2(1, 1))
    assert e.e1 == (2, 0, -2, 1) and e.e2 == (1, -3, -3, 0)
    p = family_product(3, 10)
    assert p.kplus[:4] == (-8, 0, -22, 0) and p.kminus[:4] == (-4, 0, -18, 0)
    q = family_product(2, 0)
    Q = build_form(["H"] * 5)
    assert square(Q, q.kplus) == square(Q, q.kminus) == 0


def test_family_lies_in_stream(foliated):
    for t in range(-9, 10, 3):
        for s in (-9, -3, 1, 7):
            p = family_cp2(t, s)
            B = max(map(abs, p.kplus + p.kminus))
            assert next(iter_pairs(foliated, (), B, start=p)) == p


def test_resume_stream(foliated):
    full = solve_pairs(foliated, (), 3, limit=None).pairs
    for i in (0, 17, 2048, len(full) - 1):
        assert list(iter_pairs(foliated, (), 3, start=full[i])) == full[i:]


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_product_fixtures_have_witnesses(g):
    from leafforge.distributions import product_manifold
    M = product_manifold(g)
    assert distribution_exists(M) and solve_pairs(M, (), 6).found


def test_emitted_euler_invariants(foliated):
    for p in solve_pairs(foliated, (), 5, limit=300).pairs:
        e = euler_from_pair(p)
        assert pair(foliated.form, e.e1, e.e2) == -foliated.chi
        assert square(foliated.form, e.e1) + square(foliated.form, e.e2) == 3 * foliated.sigma
