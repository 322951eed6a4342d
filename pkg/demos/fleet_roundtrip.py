"""Build every fleet module's group scheme, recover the module and compare."""

import time

from period2.filtered_modules import is_isomorphic_star
from period2.fleet import fleet
from period2.functor_g import recover_module
from period2.group_schemes import verify_hopf

start = time.perf_counter()
members, skipped = fleet(with_schemes=True)
for ring, mem, G in members:
    ok = verify_hopf(G).passed and is_isomorphic_star(recover_module(G), mem.module)
    print(f"m{ring.m}_e{ring.e}_{mem.name:<20} rank {G.algebra.n:>2}  {'ok' if ok else 'FAILED'}")
print(f"{len(members)} members, {len(skipped)} skipped, {time.perf_counter() - start:.1f} s")
