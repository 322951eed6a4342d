import itertools

import pytest

from period2.coeff_rings import RingTower
from period2.errors import NoDescent, ValidationError
from period2.filtered_modules import (FilteredModule, FMorphism, base_change_to_Sprime,
                                      change_basis, check_valid, descend_from_Sprime,
                                      direct_sum, etale_sub, hom, hom_star,
                                      is_isomorphic_star, mult_quotient, normalize_basis,
                                      rank_one, s_module, validate, zero_module)
from period2.fleet import FleetSpec, fleet, fleet_modules
from period2.linalg import smat_identity, smat_mul, smat_sigma


@pytest.fixture
def ring():
    return RingTower(1, 1, 6)


def test_validate_rank_one(ring):
    S = ring.S
    for r in range(ring.e + 1):
        assert validate(rank_one(S, 1, r)) == []
    assert validate(FilteredModule(S, 1, [[S.t_power(2)]])) == ["t^e_U_inverse_integral"]
    assert validate(FilteredModule(S, 1, [[S.zero()]])) == ["det_nonzero"]
    with pytest.raises(ValidationError):
        check_valid(FilteredModule(S, 1, [[S.zero()]]))


def test_pinned_hom_counts(ring):
    S = ring.S
    mult, et = s_module(S, 1, "mult"), s_module(S, 1, "et")
    assert len(hom(mult, et)) == 2
    assert hom_star(mult, et).count == 1
    assert len(hom(et, mult)) == 1
    assert len(hom(mult, mult)) == 2
    assert len(hom(et, et)) == 2


def test_morphisms_are_valid(ring):
    S = ring.S
    mods = [m.module for m in fleet_modules(ring)][:6]
    for M, N in itertools.product(mods, repeat=2):
        for f in hom(M, N):
            assert f.is_valid()


def test_composition_and_identity(ring):
    S = ring.S
    M = fleet_modules(ring)[3].module
    ident = FMorphism.from_B(M, M, smat_identity(S, M.u))
    assert ident.is_valid()
    for f in hom(M, M):
        assert f.compose(ident).B == f.B
        assert ident.compose(f).B == f.B


def test_etale_sub_and_mult_quotient(ring):
    S = ring.S
    M = direct_sum(s_module(S, 1, "mult"), s_module(S, 1, "et"))
    Met, i = etale_sub(M)
    Mm, j = mult_quotient(M)
    assert Met.u == 1 and Mm.u == 1
    assert i.is_valid() and j.is_valid()
    assert Met.U == ((S.t_power(1),),)


def test_normalize_basis_puts_local_block_first(ring):
    S = ring.S
    M = FilteredModule(S, 1, [[S.t_power(1), S.zero()], [S.zero(), S.one()]], ring)
    nb = normalize_basis(M)
    assert nb.exponents == (0, 1)
    assert nb.u0 == 1
    # U' = sigma(P)^-1 U P equals U0 diag(t^a)
    P = [list(r) for r in nb.P]
    from period2.linalg import smat_inverse
    lhs = smat_mul(smat_mul(smat_inverse(smat_sigma(P)), M.matrix), P)
    assert lhs == smat_mul([list(r) for r in nb.U0], nb.U1)


def test_change_basis_is_isomorphic(ring, rng):
    S = ring.S
    M = fleet_modules(ring)[4].module
    P = [[S.one(), S.t_power(1)], [S.zero(), S.one()]]
    assert is_isomorphic_star(M, change_basis(M, P))


def test_classes_distinct(ring):
    S = ring.S
    assert not is_isomorphic_star(s_module(S, 1, "mult"), s_module(S, 1, "et"))
    assert is_isomorphic_star(zero_module(S, 1), zero_module(S, 1))


def test_descent_roundtrip():
    members, _ = fleet(FleetSpec(rings=((1, 1), (2, 1), (1, 2))))
    for ring, mem, _ in members:
        Mp = base_change_to_Sprime(mem.module, ring.Sprime)
        assert validate(Mp) == []
        M = descend_from_Sprime(Mp, ring.S)
        assert is_isomorphic_star(M, mem.module)


def test_descent_counterexample():
    ring = RingTower(1, 1, 6)
    Sp = ring.Sprime
    Mp = FilteredModule(Sp, 2, [[Sp.t_power(1)]], ring)
    with pytest.raises(NoDescent) as exc:
        descend_from_Sprime(Mp, ring.S)
    assert exc.value.axiom == "phi1_generates"
