"""Independent reference implementations used by the tests.

O is modelled as (Z/2^N)[y, x] / (lift of the residue modulus in y, E(x)),
with plain Python integer polynomials.
"""

from fractions import Fraction


def poly_mulmod(a, b, modulus_poly, mod):
    """Product of integer coefficient lists modulo a monic polynomial and mod."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    deg = len(modulus_poly) - 1
    for k in range(len(out) - 1, deg - 1, -1):
        c = out[k]
        if c:
            for i in range(deg + 1):
                out[k - deg + i] = (out[k - deg + i] - c * modulus_poly[i]) % mod
    return (out + [0] * deg)[:deg]


class NaiveO:
    """O elements as lists over x of lists over y."""

    def __init__(self, ring):
        self.m, self.e, self.mod = ring.m, ring.e, 1 << ring.N
        self.ymod = [(ring.field.modulus >> j) & 1 for j in range(ring.m + 1)]
        self.E = list(ring.eisenstein)

    def from_vec(self, v):
        m = self.m
        return [[int(v[i * m + j]) for j in range(m)] for i in range(2 * self.e)]

    def to_vec(self, a):
        return [c for row in a for c in row]

    def _wmul(self, a, b):
        return poly_mulmod(a, b, self.ymod, self.mod)

    def _wadd(self, a, b):
        return [(x + y) % self.mod for x, y in zip(a, b)]

    def mul(self, a, b):
        d = 2 * self.e
        prod = [[0] * self.m for _ in range(2 * d - 1)]
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = self._wadd(prod[i + j], self._wmul(x, y))
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if any(c):
                for i in range(d + 1):
                    t = [(-z * self.E[i]) % self.mod for z in c]
                    prod[k - d + i] = self._wadd(prod[k - d + i], t)
        return prod[:d]


def rational_log(D):
    """l(X) = sum X^(2^n) / 2^n through degree D as {degree: Fraction}."""
    out = {}
    n = 0
    while (1 << n) <= D:
        out[1 << n] = Fraction(1, 1 << n)
        n += 1
    return out


def rational_exp_of_log(D):
    """Coefficients of exp(l(X)) through degree D by the recurrence E' = l' E."""
    lg = rational_log(D)
    dl = {k - 1: k * c for k, c in lg.items()}
    E = [Fraction(0)] * (D + 1)
    E[0] = Fraction(1)
    for n in range(1, D + 1):
        s = sum(dl.get(k, 0) * E[n - 1 - k] for k in range(n))
        E[n] = s / n
    return E


def to_mod(c, N):
    mod = 1 << N
    return c.numerator * pow(c.denominator, -1, mod) % mod
