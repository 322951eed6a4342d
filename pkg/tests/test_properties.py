"""Property tests for ring arithmetic and the Lubin-Tate law on random inputs."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NaiveO
from period2.augmented_algebras import mu_eta
from period2.coeff_rings import RingTower
from period2.lubin_tate import formal_neg, formal_sum

RINGS = {(m, e): RingTower(m, e, 6) for m in (1, 2) for e in (1, 2)}


def _element(ring, digits):
    return ring.element(np.array(digits, dtype=np.int64) % ring.mod)


def ring_and_digits(count):
    def build(key):
        ring = RINGS[key]
        vec = st.lists(st.integers(0, ring.mod - 1), min_size=ring.d, max_size=ring.d)
        return st.tuples(st.just(ring), *([vec] * count))
    return st.sampled_from(sorted(RINGS)).flatmap(build)


@settings(max_examples=150, deadline=None)
@given(ring_and_digits(2))
def test_product_matches_naive_model(data):
    ring, a, b = data
    naive = NaiveO(ring)
    got = (_element(ring, a) * _element(ring, b)).v.tolist()
    assert got == naive.to_vec(naive.mul(naive.from_vec(a), naive.from_vec(b)))


@settings(max_examples=150, deadline=None)
@given(ring_and_digits(3))
def test_ring_axioms(data):
    ring, a, b, c = data
    x, y, z = (_element(ring, v) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(0, 63), st.integers(0, 63))
def test_formal_group_law_on_pi_multiples(e, p, q):
    ring = RINGS[(1, e)]
    A = mu_eta(ring, 0)
    X = A.var(0).scale(ring.pi_power(1))
    f, g = X.scale(ring.from_int(p)), X.scale(ring.from_int(q))
    assert formal_sum(f, g) == formal_sum(g, f)
    assert formal_sum(f, formal_neg(f)).is_zero()
    assert formal_sum(formal_sum(f, g), X) == formal_sum(f, formal_sum(g, X))
