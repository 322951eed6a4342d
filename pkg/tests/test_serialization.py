import json

import numpy as np

from period2 import serialization as ser
from period2.augmented_algebras import mu_eta
from period2.coeff_rings import RingTower
from period2.extensions import ext_element
from period2.filtered_modules import hom, s_module
from period2.group_schemes import solve_coaddition, verify_hopf
from period2.lubin_tate import artin_hasse, lt_add_series, lt_log


def _rt(obj):
    return ser.loads(json.dumps(json.loads(ser.dumps(obj))))


def test_ring_and_elements(rng):
    ring = RingTower(2, 2, 7, N_S=20)
    assert _rt(ring) == ring
    x = ring.random(rng)
    y = _rt(x)
    assert y == x and y.prec == x.prec


def test_modules_and_morphisms(fleet_with_schemes):
    members, _ = fleet_with_schemes
    for ring, mem, G in members[::6]:
        M2 = _rt(mem.module)
        assert M2 == mem.module and M2.ring == ring
        H = _rt(G)
        assert H.prec == G.prec
        assert all(a == b for a, b in zip(H.j, G.j))
        assert _rt(G.algebra).relations[0].tolist() == G.algebra.relations[0].tolist()
    ring = RingTower(1, 1, 6)
    M, N = s_module(ring.S, 1, "mult", ring), s_module(ring.S, 1, "et", ring)
    f = hom(M, N)[1]
    assert _rt(f) == f


def test_series_and_reports(ring11):
    for s in (lt_add_series(6, 6), artin_hasse(8, 6), lt_log(8)):
        assert _rt(s) == s
    rep = verify_hopf(solve_coaddition(mu_eta(ring11, 0)))
    assert _rt(rep).to_json() == rep.to_json()


def test_ext_element(ring11):
    G = solve_coaddition(mu_eta(ring11, 0))
    ext = ext_element(G, 0, G.algebra.var(0), extend=True)
    back = _rt(ext)
    assert back.r == ext.r and back.pi0_step == 4
    assert np.array_equal(back.f.v, ext.f.v)
    assert back.base.algebra.ring == ext.base.algebra.ring


def test_large_integers_are_strings():
    assert ser._int_out(1 << 60) == str(1 << 60)
    assert ser._int_in(str(1 << 60)) == 1 << 60
    assert ser._int_out(5) == 5
