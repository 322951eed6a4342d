"""Lubin-Tate addition law and Artin-Hasse exponential modulo 2^6."""

from period2.lubin_tate import artin_hasse, lt_add_series, lt_decomposition

for n, piece in enumerate(lt_decomposition(2, 6)):
    print(f"P{n}: {piece.signed()}")
law = lt_add_series(6, 6)
print("P(X, Y) through degree 6:", law.signed())
E = artin_hasse(16, 6)
print("E(X) mod 64:", [E.coefficient((k,)) for k in range(17)])
