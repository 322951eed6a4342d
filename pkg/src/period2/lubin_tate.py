"""The Lubin-Tate formal group with logarithm l(X) = sum_n X^(2^n) / 2^n.

Two independent routes produce the addition law P(X, Y):

* ``rational``: exact Fractions; invert l by fixed-point iteration and compose.
* ``integer``: solve l(P) = l(X) + l(Y) degree by degree modulo 2^(N+K),
  where every division is an exact division by 2^K.

Formal sums [f] + [g] = [P(f, g)] are evaluated on nilpotent elements of O or
of a square-free algebra, truncating P at the nilpotency orders.
"""

import functools
from fractions import Fraction

import numpy as np

from .errors import IntegralityViolation, NotNilpotent, ValidationError


# ---------------------------------------------------------------------------
# sparse truncated series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Power series in nvars variables modulo total degree > degree.

    Coefficients are Fractions when ``modulus`` is None, otherwise integers
    reduced modulo ``modulus``.
    """

    def __init__(self, nvars, degree, coeffs=None, modulus=None):
        self.nvars = nvars
        self.degree = degree
        self.modulus = modulus
        self.coeffs = {}
        for ex, c in (coeffs or {}).items():
            ex = tuple(ex)
            if sum(ex) <= degree:
                c = self._norm(c)
                if c:
                    self.coeffs[ex] = c

    def _norm(self, c):
        if self.modulus is None:
            return Fraction(c)
        return int(c) % self.modulus

    @classmethod
    def variable(cls, nvars, i, degree, modulus=None):
        ex = [0] * nvars
        ex[i] = 1
        return cls(nvars, degree, {tuple(ex): 1}, modulus)

    @classmethod
    def constant(cls, nvars, c, degree, modulus=None):
        return cls(nvars, degree, {(0,) * nvars: c}, modulus)

    def _new(self, coeffs):
        return TruncatedSeries(self.nvars, self.degree, coeffs, self.modulus)

    def __add__(self, other):
        out = dict(self.coeffs)
        for ex, c in other.coeffs.items():
            out[ex] = out.get(ex, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({ex: -c for ex, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({ex: c * v for ex, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        out = {}
        D = self.degree
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > D:
                    continue
                ex = tuple(a + b for a, b in zip(e1, e2))
                out[ex] = out.get(ex, 0) + c1 * c2
        return self._new(out)

    __rmul__ = scale

    def __pow__(self, k):
        out = TruncatedSeries.constant(self.nvars, 1, self.degree, self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def coefficient(self, ex):
        return self.coeffs.get(tuple(ex), Fraction(0) if self.modulus is None else 0)

    def homogeneous(self, d):
        return self._new({ex: c for ex, c in self.coeffs.items() if sum(ex) == d})

    def truncate(self, degree):
        return TruncatedSeries(self.nvars, degree, self.coeffs, self.modulus)

    def compose_univariate(self, inner):
        """self(inner) for a univariate self and inner without constant term."""
        if self.nvars != 1:
            raise ValueError("outer series must be univariate")
        D = inner.degree
        out = TruncatedSeries(inner.nvars, D, {}, inner.modulus)
        for k in range(self.degree, -1, -1):
            out = out * inner + TruncatedSeries.constant(inner.nvars, self.coefficient((k,)),
                                                         D, inner.modulus)
        return out

    def substitute(self, values):
        """self(values[0], ..., values[nvars-1]) for series values."""
        D = values[0].degree
        one = TruncatedSeries.constant(values[0].nvars, 1, D, values[0].modulus)
        powers = []
        for v in values:
            row = [one]
            for _ in range(self.degree):
                row.append(row[-1] * v)
            powers.append(row)
        out = TruncatedSeries(values[0].nvars, D, {}, values[0].modulus)
        for ex, c in self.coeffs.items():
            term = one
            for i, a in enumerate(ex):
                term = term * powers[i][a]
            out = out + term.scale(c)
        return out

    def reduce_mod(self, N):
        """Integer series mod 2^N; IntegralityViolation on even denominators."""
        if self.modulus is not None:
            mod = 1 << N
            return TruncatedSeries(self.nvars, self.degree, self.coeffs, mod)
        mod = 1 << N
        out = {}
        for ex, c in self.coeffs.items():
            if c.denominator % 2 == 0:
                raise IntegralityViolation(f"coefficient {c} at {ex} is not 2-integral")
            out[ex] = c.numerator * pow(c.denominator, -1, mod)
        return TruncatedSeries(self.nvars, self.degree, out, mod)

    def signed(self):
        """Coefficients as integers in (-modulus/2, modulus/2]."""
        if self.modulus is None:
            return dict(self.coeffs)
        h = self.modulus // 2
        return {ex: (c - self.modulus if c > h else c) for ex, c in self.coeffs.items()}

    def to_json(self):
        return {"(" + ",".join(map(str, ex)) + ")": (str(c) if self.modulus is None else int(c))
                for ex, c in sorted(self.coeffs.items())}

    def __repr__(self):
        return f"TruncatedSeries(nvars={self.nvars}, degree={self.degree}, terms={len(self.coeffs)})"


def _log_exponents(D):
    n, out = 0, []
    while (1 << n) <= D:
        out.append(n)
        n += 1
    return out


def lt_log(D, nvars=1, var=0):
    """l(X) = X + X^2/2 + X^4/4 + ... truncated at degree D."""
    coeffs = {}
    for n in _log_exponents(D):
        ex = [0] * nvars
        ex[var] = 1 << n
        coeffs[tuple(ex)] = Fraction(1, 1 << n)
    return TruncatedSeries(nvars, D, coeffs)


def lt_log_inverse(D):
    """The compositional inverse of l over the rationals."""
    X = TruncatedSeries.variable(1, 0, D)
    g = X
    log = lt_log(D)
    for _ in range(D):
        g = g - (log.compose_univariate(g) - X)
    return g


# ---------------------------------------------------------------------------
# the addition law
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _rational_add_law(D):
    inv = lt_log_inverse(D)
    s = lt_log(D, 2, 0) + lt_log(D, 2, 1)
    return inv.compose_univariate(s)


def lt_add_series_rational(D, N):
    return _rational_add_law(D).reduce_mod(N)


def _conv2(a, b, D, M):
    """Product of dense bivariate arrays modulo 2^M and total degree > D."""
    W = 2 * D + 1
    fa = np.zeros((D + 1) * W, dtype=np.int64)
    fb = np.zeros((D + 1) * W, dtype=np.int64)
    for i in range(D + 1):
        fa[i * W:i * W + D + 1] = a[i]
        fb[i * W:i * W + D + 1] = b[i]
    terms = D + 1
    limb = max(1, (62 - terms.bit_length()) // 2)
    mod = (1 << M) - 1
    nlimbs = -(-M // limb)
    lm = (1 << limb) - 1
    pa = [(fa >> (k * limb)) & lm for k in range(nlimbs)]
    pb = [(fb >> (k * limb)) & lm for k in range(nlimbs)]
    acc = np.zeros(2 * len(fa) - 1, dtype=np.int64)
    for i in range(nlimbs):
        for j in range(nlimbs):
            sh = (i + j) * limb
            if sh >= M:
                continue
            c = np.convolve(pa[i], pb[j]) & ((1 << (M - sh)) - 1)
            acc = (acc + (c << sh)) & mod
    out = np.zeros((D + 1, D + 1), dtype=np.int64)
    for i in range(D + 1):
        row = acc[i * W:i * W + D + 1]
        out[i] = row
    idx = np.add.outer(np.arange(D + 1), np.arange(D + 1))
    out[idx > D] = 0
    return out


@functools.lru_cache(maxsize=None)
def _integer_add_law(D, N):
    K = max(_log_exponents(D))
    M = N + K
    mod = 1 << M
    deg = np.add.outer(np.arange(D + 1), np.arange(D + 1))
    P = np.zeros((D + 1, D + 1), dtype=np.int64)
    P[1, 0] = P[0, 1] = 1
    s = np.zeros_like(P)
    for n in _log_exponents(D):
        s[1 << n, 0] += 1 << (K - n)
        s[0, 1 << n] += 1 << (K - n)
    for d in range(2, D + 1):
        L = np.zeros_like(P)
        power = P.copy()
        for n in _log_exponents(d)[1:]:
            power = _conv2(power, power, D, M)
            L = (L + (power << (K - n))) % mod
        res = np.where(deg == d, (L - s) % mod, 0)
        if np.any(res & ((1 << K) - 1)):
            raise IntegralityViolation(f"degree {d} of the addition law is not integral")
        P = (P - np.where(deg == d, res >> K, 0)) % (1 << N)
    return P


def lt_add_series(D, N, method="integer"):
    """P(X, Y) mod 2^N truncated at total degree D."""
    if method == "rational":
        return lt_add_series_rational(D, N)
    P = _integer_add_law(D, N)
    coeffs = {(a, b): int(P[a, b]) for a in range(D + 1) for b in range(D + 1 - a) if P[a, b]}
    return TruncatedSeries(2, D, coeffs, 1 << N)


def lt_decomposition(n, N):
    """[P_0, ..., P_n] homogeneous of degree 2^k with [X]+[Y] = [P_0]+[P_1]+... .

    Checked through total degree 2^(n+1) - 1: the remainder after each step
    has no terms strictly between consecutive powers of two.
    """
    D = (1 << (n + 1)) - 1
    P = lt_add_series(D, N)
    partial = None
    pieces = []
    for k in range(n + 1):
        rest = P - partial if partial is not None else P
        lo, hi = 1 << k, (1 << (k + 1)) - 1
        if any(c and sum(ex) < lo for ex, c in rest.coeffs.items()):
            raise ValidationError([f"remainder has terms below degree {lo}"])
        piece = rest.homogeneous(lo)
        pieces.append(piece)
        partial = piece if partial is None else P.substitute([partial, piece])
        rest = P - partial
        if any(c and lo < sum(ex) <= hi for ex, c in rest.coeffs.items()):
            raise ValidationError([f"remainder has terms in degrees ({lo}, {hi}]"])
    return pieces


# ---------------------------------------------------------------------------
# Artin-Hasse exponential
# ---------------------------------------------------------------------------

def exp_series(s):
    """exp(s) over the rationals for s without constant term."""
    out = TruncatedSeries.constant(s.nvars, 1, s.degree)
    term = TruncatedSeries.constant(s.nvars, 1, s.degree)
    for k in range(1, s.degree + 1):
        term = (term * s).scale(Fraction(1, k))
        out = out + term
    return out


@functools.lru_cache(maxsize=None)
def _artin_hasse_rational(D):
    return exp_series(lt_log(D))


def _mobius(n):
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def _binomial_series(a, k, D):
    """(1 - X^k)^a over the rationals."""
    coeffs = {}
    c = Fraction(1)
    j = 0
    while j * k <= D:
        coeffs[(j * k,)] = c * (-1) ** j
        c = c * (a - j) / (j + 1)
        j += 1
    return TruncatedSeries(1, D, coeffs)


@functools.lru_cache(maxsize=None)
def _artin_hasse_dwork(D):
    """prod over odd k of (1 - X^k)^(-mu(k)/k)."""
    out = TruncatedSeries.constant(1, 1, D)
    for k in range(1, D + 1, 2):
        mu = _mobius(k)
        if mu:
            out = out * _binomial_series(Fraction(-mu, k), k, D)
    return out


def artin_hasse(D, N, method="exp"):
    """E(X) = exp(l(X)) mod 2^N; ``method='dwork'`` uses the product formula."""
    series = _artin_hasse_dwork(D) if method == "dwork" else _artin_hasse_rational(D)
    return series.reduce_mod(N)


# ---------------------------------------------------------------------------
# evaluation on nilpotent elements
# ---------------------------------------------------------------------------

def _one_like(f):
    if hasattr(f, "alg"):
        return f.alg.one()
    return f.ring.one()


def _zero_like(f):
    if hasattr(f, "alg"):
        return f.alg.zero()
    return f.ring.zero()


def nilpotent_powers(f, cap=None):
    """[1, f, f^2, ...] up to the last nonzero power."""
    cap = 4 * f.ring.N_pi if cap is None else cap
    powers = [_one_like(f)]
    x = f
    while not x.is_zero():
        if len(powers) > cap:
            raise NotNilpotent("no vanishing power within the degree cap", cap=cap)
        powers.append(x)
        x = x * f
    return powers


def _scale(x, c):
    if c == 1:
        return x
    return x.scale(int(c)) if hasattr(x, "alg") else x * int(c)


def evaluate_univariate(series, f, cap=None):
    powers = nilpotent_powers(f, cap)
    if len(powers) - 1 > series.degree:
        raise NotNilpotent("series truncated below the nilpotency order")
    acc = _zero_like(f)
    for k, x in enumerate(powers):
        c = series.coefficient((k,))
        if c:
            acc = acc + _scale(x, c)
    return acc


def formal_sum(f, g, cap=None):
    """[f] + [g] = [P(f, g)]."""
    if g.is_zero():
        return f
    if f.is_zero():
        return g
    pf = nilpotent_powers(f, cap)
    pg = nilpotent_powers(g, cap)
    D = max(1, len(pf) + len(pg) - 2)
    N = f.ring.N
    P = lt_add_series(D, N)
    acc = _zero_like(f)
    for (a, b), c in P.coeffs.items():
        if a < len(pf) and b < len(pg):
            acc = acc + _scale(pf[a] * pg[b], c)
    return acc


def formal_sum_many(terms, cap=None):
    acc = None
    for t in terms:
        acc = t if acc is None else formal_sum(acc, t, cap)
    return acc


def formal_neg(f, cap=None):
    """-[f] = [-f] + [-f^2] + [-f^4] + ..."""
    terms = []
    x = f
    while not x.is_zero():
        terms.append(-x)
        x = x * x
        if len(terms) > 64:
            raise NotNilpotent("iterated squares do not vanish")
    return formal_sum_many(terms, cap) if terms else f


def lt_double(f, cap=None):
    return formal_sum(f, f, cap)


def doubling_congruence_terms(f):
    """[2f], [f^2], [-2f^2], [-2f^4], ... whose formal sum is congruent to [2](f) mod 4."""
    terms = [_scale(f, 2), f * f]
    x = f * f
    while not x.is_zero():
        terms.append(_scale(x, -2))
        x = x * x
    return terms


def doubling_congruence_residual(f, cap=None):
    return lt_double(f, cap) - formal_sum_many(doubling_congruence_terms(f), cap)


def divisible_by_four(x):
    """All coefficients of x lie in 4O at the precision of x."""
    ring = x.ring
    known = x.prec > ring.pi_index
    return not np.any(((x.v & 3) != 0) & known)


def delta_lt(G, f, cap=None):
    """[Delta f] - [f (x) 1] - [1 (x) f] in B (x) B."""
    from .group_schemes import comultiply
    A = G.algebra
    d = comultiply(G, f)
    return formal_sum(formal_sum(d, formal_neg(A.left(f), cap), cap),
                      formal_neg(A.right(f), cap), cap)
