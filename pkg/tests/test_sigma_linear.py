import itertools

import pytest

from period2.coeff_rings import GF2m, RingTower
from period2.errors import NeedsFieldExtension, SolutionSpaceTooLarge
from period2.filtered_modules import s_module
from period2.linalg import iter_span, smat_mul, smat_sigma
from period2.sigma_linear import (brute_force_fixed_space, brute_force_hom, fitting_split,
                                  fixed_vectors_over_s, frobenius_fixed_space,
                                  solve_id_minus_phi, solve_semilinear_hom, split_degree)


def _random_invertible(F, u, rng):
    while True:
        A = [[F.random(rng) for _ in range(u)] for _ in range(u)]
        if u == 1 and A[0][0]:
            return A
        if u == 2 and F.mul(A[0][0], A[1][1]) ^ F.mul(A[0][1], A[1][0]):
            return A


@pytest.mark.parametrize("m,u", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_solve_id_minus_phi_exact(m, u, rng):
    S = RingTower(m, 1, 6).S
    done = 0
    while done < 50:
        A = [[S.random(rng) for _ in range(u)] for _ in range(u)]
        # t A keeps 1 - A sigma invertible on residues
        A = [[a.shift(1) for a in row] for row in A]
        b = [S.random(rng) for _ in range(u)]
        x = solve_id_minus_phi(A, b)
        Ax = [sum((A[i][j] * x[j].frobenius() for j in range(u)), S.zero()) for i in range(u)]
        assert [xi + axi for xi, axi in zip(x, Ax)] == b
        done += 1


def test_solve_id_minus_phi_needs_extension():
    S = RingTower(1, 1, 6).S
    # x - x^2 = 1 has no solution in F2
    with pytest.raises(NeedsFieldExtension) as exc:
        solve_id_minus_phi([[S.one()]], [S.one()])
    assert exc.value.degree == 2


@pytest.mark.parametrize("m,u", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_fixed_space_matches_enumeration(m, u, rng):
    F = GF2m(m)
    for _ in range(25):
        A = _random_invertible(F, u, rng)
        brute = brute_force_fixed_space(F, A)
        try:
            basis = frobenius_fixed_space(F, A)
        except NeedsFieldExtension:
            assert len(brute) < F.size ** u
            continue
        span = set()
        for mask in range(1 << len(basis)):
            v = [0] * u
            for i, b in enumerate(basis):
                if mask >> i & 1:
                    v = [x ^ y for x, y in zip(v, b)]
            span.add(tuple(v))
        assert span == {tuple(x) for x in brute}


def test_swap_needs_quadratic_extension():
    F = GF2m(1)
    A = [[0, 1], [1, 0]]
    assert split_degree(F, A) == 2
    with pytest.raises(NeedsFieldExtension):
        frobenius_fixed_space(F, A)


def test_fitting_split_ranks():
    F = GF2m(1)
    fs = fitting_split(F, [[1, 0], [0, 0]])
    assert fs.rank_invertible == 1
    fs = fitting_split(F, [[0, 1], [0, 0]])
    assert fs.rank_invertible == 0


def test_fixed_vectors_over_s_are_fixed(rng):
    S = RingTower(2, 1, 6).S
    A = [[S.one() + S.t_power(1), S.t_power(2)], [S.zero(), S.one()]]
    sols = fixed_vectors_over_s(A)
    # an F2-form of k^2 has F2-dimension 2
    assert len(sols) == 2
    for x in sols:
        Ax = [sum((A[i][j] * x[j].frobenius() for j in range(2)), S.zero()) for i in range(2)]
        assert Ax == x


@pytest.mark.parametrize("e", [1, 2])
def test_semilinear_hom_matches_brute_force(e):
    ring = RingTower(1, e, 6, N_S=4 * e)
    S = ring.S
    mods = [s_module(S, e, "mult"), s_module(S, e, "et"),
            type(s_module(S, e, "mult"))(S, e, [[S.t_power(1)]])]
    for M, N in itertools.product(mods, repeat=2):
        sols = solve_semilinear_hom(M.matrix, N.matrix, e)
        brute = brute_force_hom(M.matrix, N.matrix, e)
        assert {tuple(tuple(r) for r in B) for _, B in sols} == \
            {tuple(tuple(r) for r in B) for B in brute}
        for A, B in sols:
            assert smat_mul(smat_sigma(B), M.matrix) == smat_mul(N.matrix, B)


def test_hom_cap():
    ring = RingTower(1, 1, 6)
    S = ring.S
    M = s_module(S, 1, "mult")
    with pytest.raises(SolutionSpaceTooLarge):
        solve_semilinear_hom(M.matrix, M.matrix, 1, cap=0)
