import pytest

from period2.augmented_algebras import mu_eta
from period2.coeff_rings import RingTower
from period2.group_schemes import (GroupScheme, check_ideal_invariants, coaddition_residual,
                                   comultiply, delta_plus, delta_respects_relations,
                                   descent_check, etale_part, hochschild_tests,
                                   solve_coaddition, verify_hopf)


@pytest.mark.parametrize("m,e", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_mu_eta_coaddition_is_exact(m, e):
    ring = RingTower(m, e, 6)
    for r in range(e + 1):
        A = mu_eta(ring, r)
        G = solve_coaddition(A)
        X = A.var(0)
        assert G.j[0] == A.pure_tensor(X, X).scale(ring.pi_power(2 * r))
        assert verify_hopf(G).passed


def test_fleet_residual_and_axioms(fleet_with_schemes):
    members, _ = fleet_with_schemes
    for ring, mem, G in members:
        assert coaddition_residual(G) == []
        assert check_ideal_invariants(G) == []
        assert delta_respects_relations(G)


def test_corrupted_coaddition_fails_hopf(ring11):
    A = mu_eta(ring11, 0)
    G = solve_coaddition(A)
    X = A.var(0)
    bad = GroupScheme(A, [G.j[0] + A.pure_tensor(X, A.one())], G.prec)
    rep = verify_hopf(bad)
    assert not rep.passed
    assert not rep.cocommut_ok
    assert coaddition_residual(bad) == [0]


def test_delta_plus_of_generator(ring12):
    A = mu_eta(ring12, 1)
    G = solve_coaddition(A)
    assert delta_plus(G, A.var(0)) == G.j[0]
    assert comultiply(G, A.one()) == A.square().one()


def test_descent_on_fleet(fleet_with_schemes):
    members, _ = fleet_with_schemes
    for ring, mem, G in members:
        assert descent_check(G)


def test_etale_part_cocycle(ring11):
    A = mu_eta(ring11, 1)
    G = solve_coaddition(A)
    Get = etale_part(G)
    res = hochschild_tests(Get, Get.j[0])
    assert res["is_cocycle"]
