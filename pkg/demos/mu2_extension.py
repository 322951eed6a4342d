"""An extension of mu_2 by mu_eta built from f = X and checked as a Hopf algebra."""

from period2.augmented_algebras import mu_eta
from period2.coeff_rings import RingTower
from period2.extensions import ext_element, extension_failures, hlt_membership, theta_lt
from period2.group_schemes import solve_coaddition

ring = RingTower(1, 1, 6)
base = solve_coaddition(mu_eta(ring, 0))
for r in (0, 1):
    ext = ext_element(base, r, base.algebra.var(0))
    print(f"r = {r}: f in H_LT: {hlt_membership(ext)}")
    scheme = theta_lt(ext)
    print(f"  rank {scheme.rank}, failures {extension_failures(scheme)}")
