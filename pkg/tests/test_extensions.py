import pytest

from period2.augmented_algebras import mu_eta
from period2.coeff_rings import RingTower
from period2.errors import NotDivisible
from period2.extensions import (ExtElement, MuEta, classify_order2, ext_element,
                                ext_equivalence, extension_failures, extension_isomorphism,
                                hlt_membership, theta, theta_lt, trivial_coalgebra)
from period2.group_schemes import solve_coaddition
from period2.lubin_tate import formal_sum


@pytest.mark.parametrize("e", [1, 2, 3])
def test_classify_order2(e):
    classes = classify_order2(e)
    assert [mu.r for mu, _ in classes] == list(range(e + 1))


def test_mu_eta_invariants(ring12):
    for r in range(3):
        mu = MuEta(ring12, r)
        assert mu.eta * mu.eta_tilde == ring12.from_int(-2)
    with pytest.raises(ValueError):
        MuEta(ring12, 3)


@pytest.mark.parametrize("r", [0, 1])
def test_trivial_base_gives_mu_eta(ring11, r):
    H = trivial_coalgebra(ring11)
    X = theta_lt(ext_element(H, r, H.algebra.zero()))
    G = solve_coaddition(mu_eta(ring11, r))
    assert (X.coalgebra.algebra.relations[0] == G.algebra.relations[0]).all()
    assert X.coalgebra.deltas[0] == G.delta_generator(0)


@pytest.fixture
def mu2_base(ring11):
    return solve_coaddition(mu_eta(ring11, 0))


def test_mu2_extension_rank4(mu2_base):
    A = mu2_base.algebra
    ext = ext_element(mu2_base, 0, A.var(0))
    assert hlt_membership(ext)
    X = theta_lt(ext)
    assert X.rank == 4
    assert extension_failures(X) == []


def test_zero_is_in_hlt(mu2_base):
    assert hlt_membership(ext_element(mu2_base, 1, mu2_base.algebra.zero()))


def test_ext_equivalence_kernel(mu2_base, ring11):
    A = mu2_base.algebra
    X = A.var(0)
    e_unit = ext_element(mu2_base, 0, X)
    assert ext_equivalence(e_unit, e_unit)
    # eta_tilde = 1: X lies in (I_B0)^loc
    assert ext_equivalence(e_unit, e_unit.with_f(A.zero()))
    # eta_tilde = pi0: X is not divisible by pi0
    e_pi0 = ext_element(mu2_base, 1, X)
    assert not ext_equivalence(e_pi0, e_pi0.with_f(A.zero()))
    # shifting by eta_tilde * b with b in I^loc stays in the class
    f2 = formal_sum(X, X.scale(e_pi0.eta_tilde))
    assert ext_equivalence(e_pi0, e_pi0.with_f(f2))


def test_equivalent_classes_have_isomorphic_schemes(mu2_base):
    A = mu2_base.algebra
    X = A.var(0)
    for r in (0, 1):
        e1 = ext_element(mu2_base, r, X)
        e2 = e1.with_f(formal_sum(X, X.scale(e1.eta_tilde)))
        images = extension_isomorphism(e1, e2)
        assert images is not None
    e1 = ext_element(mu2_base, 1, X)
    assert extension_isomorphism(e1, e1.with_f(A.zero())) is None


def test_kernel_class_splits(mu2_base):
    A = mu2_base.algebra
    e = ext_element(mu2_base, 1, A.var(0).scale(A.ring.pi_power(2)))
    assert ext_equivalence(e, e.with_f(A.zero()))
    assert extension_isomorphism(e, e.with_f(A.zero())) is not None


def test_quadratic_extension_route(mu2_base):
    A = mu2_base.algebra
    ext = ext_element(mu2_base, 1, A.var(0), extend=True)
    assert ext.pi0_step == 4
    assert hlt_membership(ext)
    X = theta_lt(ext)
    assert X.rank == 4
    # pi' X is not defined over O0
    A2 = ext.base.algebra
    odd = ExtElement(ext.base, 0, A2.var(0).scale(A2.ring.pi_power(1)), 4)
    assert not hlt_membership(odd)
    with pytest.raises(NotDivisible):
        theta(ExtElement(ext.base, 1, A2.var(0).scale(A2.ring.pi_power(1)), 4))


def test_etale_base_fails_hlt(ring11):
    H = solve_coaddition(mu_eta(ring11, 1))
    ext = ext_element(H, 0, H.algebra.var(0).scale(ring11.pi_power(1)))
    assert not hlt_membership(ext)
    with pytest.raises(NotDivisible):
        theta_lt(ext)
