"""Print the group schemes of order 2 for small ramification levels."""

from period2.extensions import classify_order2

for e in (1, 2, 3):
    print(f"e = {e}")
    for mu, M in classify_order2(e):
        print(f"  r = {mu.r}: U = {M.U[0][0]!r}, eta valuation {2 * mu.ring.e - 2 * mu.r}")
