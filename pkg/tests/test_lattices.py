import itertools

import numpy as np
import pytest

from period2.coeff_rings import RingTower
from period2.lattices import OLattice, lattice_intersection, lattice_preimage, lattice_sum


def _all_elements(ring):
    for digits in itertools.product(range(ring.mod), repeat=ring.d):
        yield np.array(digits, dtype=np.int64)


def _span_bruteforce(ring, gens):
    """Every O-combination of the generators (small rings only)."""
    elems = list(_all_elements(ring))
    out = set()
    for coeffs in itertools.product(elems, repeat=len(gens)):
        acc = np.zeros_like(gens[0])
        for c, g in zip(coeffs, gens):
            acc = (acc + ring.arr_mul(c[None, :], g)) % ring.mod
        out.add(acc.tobytes())
    return out


@pytest.mark.parametrize("seed", range(4))
def test_membership_matches_enumeration(seed):
    import random
    rng = random.Random(seed)
    ring = RingTower(1, 1, 2)  # O = Z/4[pi], pi^2 = 2: 16 elements
    gens = [np.array([[rng.randrange(4) for _ in range(ring.d)] for _ in range(2)],
                     dtype=np.int64) for _ in range(2)]
    L = OLattice(ring, 2, gens)
    span = _span_bruteforce(ring, gens)
    for a, b in itertools.product(_all_elements(ring), repeat=2):
        x = np.stack([a, b])
        assert L.contains(x) == (x.tobytes() in span)


def test_sum_and_intersection():
    ring = RingTower(1, 1, 4)
    pi = ring.pi_power(1).v
    two = ring.from_int(2).v
    e1 = np.stack([ring.one().v, np.zeros(ring.d, dtype=np.int64)])
    e2 = np.stack([np.zeros(ring.d, dtype=np.int64), ring.one().v])
    A = OLattice(ring, 2, [ring.arr_mul(pi[None, :], e1), e2])
    B = OLattice(ring, 2, [e1, ring.arr_mul(two[None, :], e2)])
    I = lattice_intersection(A, B)
    assert I.contains(ring.arr_mul(pi[None, :], e1))
    assert I.contains(ring.arr_mul(two[None, :], e2))
    assert not I.contains(e1)
    assert not I.contains(e2)
    Ssum = lattice_sum(A, B)
    assert Ssum.contains(e1) and Ssum.contains(e2)


def test_preimage_of_scaling():
    ring = RingTower(1, 1, 4)
    pi = ring.pi_power(1).v
    # map O -> O^1, x -> pi x; preimage of (2) is (pi)
    images = [pi[None, :]]
    target = OLattice(ring, 1, [ring.from_int(2).v[None, :]])
    K = lattice_preimage(ring, images, target, 1)
    assert K.contains(pi[None, :])
    assert not K.contains(ring.one().v[None, :])
