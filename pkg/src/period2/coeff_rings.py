"""Capped-precision coefficient rings.

* ``GF2m``: the residue field k = F_{2^m}; elements are Python ints whose
  bit j is the coefficient of y^j.
* ``RingTower``: O = W_N(k)[x]/(E(x)) with E(x) = E0(x^2) Eisenstein of
  degree 2e.  Elements are ``OElement`` (a numpy vector of length 2e*m plus
  an absolute pi-adic precision).  Index i*m + j holds the integer coefficient
  of pi^i y^j modulo 2^N.
* ``SRing``: S_N = k[t]/t^{N_S} (and S' = k[t']/t'^{2N_S}); ``SElement`` is a
  tuple of field ints.
"""

from dataclasses import dataclass
import functools
import random as _random

import numpy as np

from .errors import NotDivisible, PrecisionExhausted

MAX_N = 24  # int64 headroom for batched products


# ---------------------------------------------------------------------------
# residue field
# ---------------------------------------------------------------------------

def _poly_mod2(a, b):
    """Remainder of F2[y] polynomials given as bitmasks."""
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible_f2(poly):
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod2(poly, q) == 0:
                return False
    return True


def default_modulus(m):
    """Smallest irreducible degree-m polynomial with nonzero constant term."""
    for poly in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible_f2(poly):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {m}")


class GF2m:
    """The field F_{2^m} = F2[y]/(modulus)."""

    def __init__(self, m=1, modulus=None):
        if m < 1:
            raise ValueError("m must be positive")
        modulus = default_modulus(m) if modulus is None else int(modulus)
        if modulus.bit_length() - 1 != m:
            raise ValueError("modulus must have degree m")
        if not is_irreducible_f2(modulus):
            raise ValueError(f"modulus {bin(modulus)} is reducible over F2")
        self.m = m
        self.modulus = modulus
        self.size = 1 << m
        self._mul = [[self._slow_mul(a, b) for b in range(self.size)]
                     for a in range(self.size)] if m <= 8 else None
        self._inv = [0] + [self._slow_pow(a, self.size - 2) for a in range(1, self.size)]
        self._sq = [self.mul(a, a) for a in range(self.size)]
        self._sqrt = [0] * self.size
        for a in range(self.size):
            self._sqrt[self._sq[a]] = a

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __repr__(self):
        return f"GF2m(m={self.m}, modulus={bin(self.modulus)})"

    def _slow_mul(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.m & 1:
                a ^= self.modulus
        return r

    def _slow_pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a][b]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in k")
        return self._inv[a]

    def sq(self, a):
        return self._sq[a]

    def sqrt(self, a):
        return self._sqrt[a]

    def frob(self, a, n=1):
        """a^(2^n); negative n applies the inverse Frobenius."""
        n %= self.m
        for _ in range(n):
            a = self._sq[a]
        return a

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return self._slow_pow(a, n)

    def elements(self):
        return range(self.size)

    def random(self, rng):
        return rng.randrange(self.size)

    def to_bits(self, a):
        return [(a >> j) & 1 for j in range(self.m)]

    def from_bits(self, bits):
        if len(bits) != self.m:
            raise ValueError("k-element must have exactly m bits")
        return sum((int(b) & 1) << j for j, b in enumerate(bits))

    def generator(self):
        """The class of y (equals 1 when m = 1)."""
        return 2 % self.modulus if self.m > 1 else 1


# ---------------------------------------------------------------------------
# valuations at finite precision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AtLeast:
    """Valuation of an element that vanishes at working precision."""

    bound: int

    def __ge__(self, other):
        return self.bound >= _bound(other)

    def __gt__(self, other):
        return self.bound > _bound(other) or (isinstance(other, int) and self.bound >= other + 1)

    def __le__(self, other):
        return False if isinstance(other, int) and other < self.bound else NotImplemented

    def __lt__(self, other):
        return False if isinstance(other, int) and other <= self.bound else NotImplemented

    def __repr__(self):
        return f"AtLeast({self.bound})"


def _bound(x):
    return x.bound if isinstance(x, AtLeast) else x


def val_at_least(v, k):
    """True when the (possibly symbolic) valuation v is known to be >= k."""
    return (v.bound >= k) if isinstance(v, AtLeast) else v >= k


# ---------------------------------------------------------------------------
# the ring O
# ---------------------------------------------------------------------------

class RingTower:
    """Parameters and structure constants for k, W_N(k), O, O0 and S."""

    def __init__(self, m=1, e=1, N=6, N_S=None, eisenstein=None, modulus=None):
        if e < 1:
            raise ValueError("e must be positive")
        if not 2 <= N <= MAX_N:
            raise ValueError(f"N must lie in [2, {MAX_N}]")
        self.field = GF2m(m, modulus)
        self.m, self.e, self.N = m, e, N
        self.N_pi = 2 * e * N
        self.N_S = 8 * e if N_S is None else int(N_S)
        if self.N_S < 4 * e:
            raise ValueError("N_S must be at least 4e")
        if eisenstein is None:
            eisenstein = [-2] + [0] * (2 * e - 1) + [1]
        eisenstein = [int(c) for c in eisenstein]
        self._check_eisenstein(eisenstein)
        self.eisenstein = eisenstein
        self.mod = 1 << N
        self.d = 2 * e * m
        self.lift_modulus = [(self.field.modulus >> j) & 1 for j in range(m + 1)]
        self.pi_index = np.arange(self.d) // m
        self._build_tables()
        self.S = SRing(self.field, self.N_S, name="t")
        self.Sprime = SRing(self.field, 2 * self.N_S, name="t'")

    def _check_eisenstein(self, E):
        e = self.e
        if len(E) != 2 * e + 1 or E[-1] != 1:
            raise ValueError("E must be monic of degree 2e")
        if any(E[i] for i in range(1, 2 * e, 2)):
            raise ValueError("E must be a polynomial in x^2")
        if E[0] % 2 != 0 or E[0] % 4 == 0:
            raise ValueError("constant term of E must have 2-adic valuation 1")
        if any(E[i] % 2 for i in range(2 * e)):
            raise ValueError("non-leading coefficients of E must be even")

    def params(self):
        return {"m": self.m, "e": self.e, "N": self.N, "N_S": self.N_S,
                "eisenstein": list(self.eisenstein)}

    def __eq__(self, other):
        return isinstance(other, RingTower) and self.params() == other.params() \
            and self.field == other.field

    def __hash__(self):
        return hash((self.m, self.e, self.N, self.N_S, tuple(self.eisenstein)))

    def __repr__(self):
        return "RingTower(m={m}, e={e}, N={N}, N_S={N_S})".format(**self.params())

    # -- Witt and O arithmetic in pure Python (table construction only) --
    def _wmul(self, a, b):
        m, mod = self.m, self.mod
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        f = self.lift_modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(m):
                    prod[k - m + j] -= c * f[j]
        return [x % mod for x in prod[:m]]

    def _omul_lists(self, a, b):
        """a, b: lists of 2e Witt vectors (lists of m ints)."""
        e2, m = 2 * self.e, self.m
        prod = [[0] * m for _ in range(2 * e2 - 1)]
        for i, x in enumerate(a):
            if any(x):
                for j, y in enumerate(b):
                    if any(y):
                        w = self._wmul(x, y)
                        prod[i + j] = [p + q for p, q in zip(prod[i + j], w)]
        E = self.eisenstein
        for k in range(2 * e2 - 2, e2 - 1, -1):
            c = prod[k]
            if any(c):
                prod[k] = [0] * m
                for j in range(e2):
                    if E[j]:
                        prod[k - e2 + j] = [p - E[j] * q for p, q in zip(prod[k - e2 + j], c)]
        return [[x % self.mod for x in w] for w in prod[:e2]]

    def _build_tables(self):
        d, m = self.d, self.m
        basis = []
        for idx in range(d):
            v = [[0] * m for _ in range(2 * self.e)]
            v[idx // m][idx % m] = 1
            basis.append(v)
        T = np.zeros((d, d, d), dtype=np.int64)
        for a in range(d):
            for b in range(a, d):
                prod = np.array(self._omul_lists(basis[a], basis[b]), dtype=np.int64).reshape(d)
                T[a, b] = prod
                T[b, a] = prod
        self.T2 = T.reshape(d * d, d)
        # masks: the W-coefficient at pi^i is known modulo 2^ceil((p - i)/2e)
        self._masks = []
        for p in range(self.N_pi + 1):
            bits = [max(0, -(-(p - i) // (2 * self.e))) for i in self.pi_index]
            self._masks.append(np.array([(1 << min(b, self.N)) - 1 for b in bits], dtype=np.int64))
        # 2/pi = pi^(2e-1) * (pi^(2e)/2)^(-1)
        eps0 = np.zeros(d, dtype=np.int64)
        for k in range(2 * self.e):
            eps0[k * m] = (-self.eisenstein[k] // 2) % self.mod
        self.two_over_pi = self.arr_mul(self.pi_power(2 * self.e - 1).v,
                                        self.arr_unit_inverse(eps0))

    # -- vectorised primitives on arrays of shape (..., d) --
    def arr_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        d = self.d
        outer = (a[..., :, None] * b[..., None, :]) % self.mod
        shape = outer.shape[:-2]
        res = outer.reshape(shape + (d * d,)) @ self.T2
        return res % self.mod

    def arr_mask(self, a, prec):
        return a & self._masks[max(0, min(prec, self.N_pi))]

    def arr_valuation(self, a):
        """Elementwise pi-adic valuation; returns N_pi for zero vectors."""
        a = np.asarray(a, dtype=np.int64)
        low = a & (-a)
        with np.errstate(divide="ignore"):
            v2 = np.where(a != 0, np.log2(np.where(low > 0, low, 1)).astype(np.int64), self.N)
        vals = 2 * self.e * v2 + self.pi_index
        vals = np.where(a != 0, vals, self.N_pi)
        return vals.min(axis=-1)

    def arr_div_pi(self, a, k=1):
        """Divide by pi^k; the caller guarantees valuation >= k."""
        a = np.asarray(a, dtype=np.int64)
        m = self.m
        for _ in range(k):
            low = a[..., :m]
            if np.any(low & 1):
                raise NotDivisible("element is not divisible by pi")
            shifted = np.zeros_like(a)
            shifted[..., :-m] = a[..., m:]
            c0 = np.zeros_like(a)
            c0[..., :m] = low >> 1
            a = (shifted + self.arr_mul(c0, self.two_over_pi)) % self.mod
        return a

    def arr_unit_inverse(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 1:
            raise ValueError("arr_unit_inverse expects a single element")
        res = self.field.from_bits([int(x) & 1 for x in a[:self.m]])
        if res == 0:
            raise NotDivisible("element is not a unit")
        y = np.zeros(self.d, dtype=np.int64)
        y[:self.m] = self.field.to_bits(self.field.inv(res))
        two = np.zeros(self.d, dtype=np.int64)
        two[0] = 2
        for _ in range(self.N_pi.bit_length() + 2):
            y = self.arr_mul(y, (two - self.arr_mul(a, y)) % self.mod)
        return y

    # -- element constructors --
    def element(self, v, prec=None):
        prec = self.N_pi if prec is None else prec
        return OElement(self, np.asarray(v, dtype=np.int64) % self.mod, prec)

    def zero(self, prec=None):
        return self.element(np.zeros(self.d, dtype=np.int64), prec)

    def one(self):
        return self.from_int(1)

    def from_int(self, n, prec=None):
        v = np.zeros(self.d, dtype=np.int64)
        v[0] = n % self.mod
        return self.element(v, prec)

    def from_k(self, a, prec=None):
        """Lift of a residue-field element with zero higher digits."""
        v = np.zeros(self.d, dtype=np.int64)
        v[:self.m] = self.field.to_bits(a)
        return self.element(v, prec)

    def pi_power(self, k, prec=None):
        if k < 0:
            raise ValueError("negative power of pi")
        q, r = divmod(k, 2 * self.e)
        v = np.zeros(self.d, dtype=np.int64)
        if q < self.N:
            v[r * self.m] = 1
            # pi^(2e) = -(E(pi) - pi^(2e))
            step = np.zeros(self.d, dtype=np.int64)
            for j in range(2 * self.e):
                step[j * self.m] = (-self.eisenstein[j]) % self.mod
            for _ in range(q):
                v = self.arr_mul(v, step)
        return self.element(v, prec)

    def two_div_pi_power(self, k):
        """The exact element 2 / pi^k for 0 <= k <= 2e."""
        if not 0 <= k <= 2 * self.e:
            raise ValueError("2 / pi^k is integral only for k <= 2e")
        eps0 = np.zeros(self.d, dtype=np.int64)
        for j in range(2 * self.e):
            eps0[j * self.m] = (-self.eisenstein[j] // 2) % self.mod
        inv = self.arr_unit_inverse(eps0)
        return self.element(self.arr_mul(self.pi_power(2 * self.e - k).v, inv))

    def from_coeffs(self, coeffs, prec=None):
        """coeffs: 2e lists of m integers (pi-degree major)."""
        flat = [int(x) for row in coeffs for x in row]
        if len(flat) != self.d:
            raise ValueError("wrong coefficient shape")
        return self.element(flat, prec)

    def random(self, rng, prec=None, min_val=0):
        v = np.array([rng.randrange(self.mod) for _ in range(self.d)], dtype=np.int64)
        x = self.element(v, prec)
        if min_val:
            x = x * self.pi_power(min_val)
        return x

    def from_poly_pi(self, coeffs):
        """sum coeffs[i] * pi^i for k-elements coeffs[i] (ints), any length."""
        acc = self.zero()
        for i, c in enumerate(coeffs):
            if c:
                acc = acc + self.from_k(c) * self.pi_power(i)
        return acc


class OElement:
    """Element of O with capped absolute pi-adic precision."""

    __slots__ = ("ring", "v", "prec")

    def __init__(self, ring, v, prec):
        prec = min(int(prec), ring.N_pi)
        self.ring = ring
        self.prec = prec
        self.v = ring.arr_mask(v, prec)

    def _coerce(self, other):
        if isinstance(other, OElement):
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OElement(self.ring, (self.v + other.v) % self.ring.mod, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return OElement(self.ring, (-self.v) % self.ring.mod, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OElement(self.ring, (self.v - other.v) % self.ring.mod, min(self.prec, other.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec + other.valuation_floor(), other.prec + self.valuation_floor())
        return OElement(self.ring, self.ring.arr_mul(self.v, other.v), prec)

    __rmul__ = __mul__

    def valuation_floor(self):
        v = self.valuation()
        return v.bound if isinstance(v, AtLeast) else v

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        p = min(self.prec, other.prec)
        r = self.ring
        return bool(np.array_equal(r.arr_mask(self.v, p), r.arr_mask(other.v, p)))

    def __hash__(self):
        return hash(tuple(int(x) for x in self.v))

    def __repr__(self):
        terms = []
        for i in range(2 * self.ring.e):
            w = [int(x) for x in self.v[i * self.ring.m:(i + 1) * self.ring.m]]
            if any(w):
                terms.append(f"{w if self.ring.m > 1 else w[0]}*pi^{i}")
        return f"O({' + '.join(terms) or '0'} + O(pi^{self.prec}))"

    @property
    def coeffs(self):
        m = self.ring.m
        return [[int(x) for x in self.v[i * m:(i + 1) * m]] for i in range(2 * self.ring.e)]

    def is_zero(self):
        return not np.any(self.v)

    def valuation(self):
        if self.is_zero():
            return AtLeast(self.prec)
        return int(self.ring.arr_valuation(self.v))

    def is_unit(self):
        return self.valuation() == 0

    def residue(self):
        """Image in k."""
        return self.ring.field.from_bits([int(x) & 1 for x in self.v[:self.ring.m]])

    def div2(self):
        r = self.ring
        known_low = self.prec > r.pi_index
        if np.any((self.v & 1).astype(bool) & known_low):
            raise NotDivisible("valuation below v(2)")
        if self.prec <= 2 * r.e:
            raise PrecisionExhausted("division by 2 needs precision above 2e")
        return OElement(r, self.v >> 1, self.prec - 2 * r.e)

    def div_pi(self, k=1):
        v = self.valuation()
        if not val_at_least(v, k):
            raise NotDivisible(f"valuation {v} below {k}")
        if self.prec <= k:
            raise PrecisionExhausted("division by pi exhausts precision")
        return OElement(self.ring, self.ring.arr_div_pi(self.v, k), self.prec - k)

    def inverse(self):
        if not self.is_unit():
            raise NotDivisible("only units are invertible")
        return OElement(self.ring, self.ring.arr_unit_inverse(self.v), self.prec)

    def tau(self):
        """Image under the O0-automorphism pi -> -pi."""
        sign = np.where(self.ring.pi_index % 2 == 1, -1, 1)
        return OElement(self.ring, (self.v * sign) % self.ring.mod, self.prec)

    def in_O0(self):
        return self == self.tau()

    def with_prec(self, prec):
        return OElement(self.ring, self.v, min(prec, self.prec))


def o_mul(a, b):
    return a * b


def o_add(a, b):
    return a + b


def o_sub(a, b):
    return a - b


def o_neg(a):
    return -a


def o_div2(a):
    return a.div2()


def valuation(a):
    return a.valuation()


# ---------------------------------------------------------------------------
# truncated power series over k
# ---------------------------------------------------------------------------

class SRing:
    """k[t]/t^n."""

    def __init__(self, field, n, name="t"):
        self.field = field
        self.n = n
        self.name = name

    def __eq__(self, other):
        return isinstance(other, SRing) and (self.field, self.n) == (other.field, other.n)

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"SRing({self.field!r}, n={self.n})"

    def __call__(self, coeffs):
        c = list(coeffs)[:self.n]
        c += [0] * (self.n - len(c))
        return SElement(self, tuple(c))

    def zero(self):
        return SElement(self, (0,) * self.n)

    def one(self):
        return self.monomial(0, 1)

    def monomial(self, k, c=1):
        out = [0] * self.n
        if k < self.n:
            out[k] = c
        return SElement(self, tuple(out))

    def t_power(self, k):
        return self.monomial(k)

    def const(self, c):
        return self([c])

    def random(self, rng, degree=None):
        degree = self.n if degree is None else min(degree, self.n)
        return self([self.field.random(rng) for _ in range(degree)])

    def extend(self, extra):
        return SRing(self.field, self.n + extra, self.name)


class SElement:
    __slots__ = ("ring", "c")

    def __init__(self, ring, c):
        self.ring = ring
        self.c = c

    def __add__(self, other):
        return SElement(self.ring, tuple(a ^ b for a, b in zip(self.c, other.c)))

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        n = self.ring.n
        fm = self.ring.field.mul
        out = [0] * n
        a, b = self.c, other.c
        nzb = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in nzb:
                    if i + j >= n:
                        break
                    out[i + j] ^= fm(x, y)
        return SElement(self.ring, tuple(out))

    def scale(self, c):
        fm = self.ring.field.mul
        return SElement(self.ring, tuple(fm(c, x) for x in self.c))

    def __eq__(self, other):
        return isinstance(other, SElement) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = [f"{x}*{self.ring.name}^{i}" for i, x in enumerate(self.c) if x]
        return " + ".join(terms) or "0"

    def is_zero(self):
        return not any(self.c)

    def valuation(self):
        for i, x in enumerate(self.c):
            if x:
                return i
        return AtLeast(self.ring.n)

    def val(self):
        """Integer valuation, n for zero."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return self.ring.n

    def frobenius(self):
        n = self.ring.n
        sq = self.ring.field.sq
        out = [0] * n
        for i, x in enumerate(self.c):
            if 2 * i >= n:
                break
            out[2 * i] = sq(x)
        return SElement(self.ring, tuple(out))

    def frobenius_inverse_coeffs(self):
        """Coefficientwise inverse Frobenius on k (t fixed)."""
        sqrt = self.ring.field.sqrt
        return SElement(self.ring, tuple(sqrt(x) for x in self.c))

    def frobenius_coeffs(self):
        """Coefficientwise Frobenius on k (t fixed)."""
        sq = self.ring.field.sq
        return SElement(self.ring, tuple(sq(x) for x in self.c))

    def shift(self, k):
        """Multiply by t^k (k >= 0) or divide by t^(-k) (exact division required)."""
        n = self.ring.n
        if k >= 0:
            return SElement(self.ring, (0,) * min(k, n) + self.c[:max(0, n - k)])
        k = -k
        if any(self.c[:k]):
            raise NotDivisible(f"not divisible by t^{k}")
        return SElement(self.ring, self.c[k:] + (0,) * k)

    def inverse(self):
        if self.c[0] == 0:
            raise NotDivisible("not a unit in S")
        f = self.ring.field
        n = self.ring.n
        a0inv = f.inv(self.c[0])
        out = [0] * n
        out[0] = a0inv
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                if self.c[i] and out[k - i]:
                    s ^= f.mul(self.c[i], out[k - i])
            out[k] = f.mul(s, a0inv)
        return SElement(self.ring, tuple(out))

    def truncate(self, k):
        k = max(0, min(k, self.ring.n))
        return SElement(self.ring, self.c[:k] + (0,) * (self.ring.n - k))

    def to_ring(self, ring):
        """Pad with zeros or truncate into another k[t]/t^n."""
        return ring(self.c)

    def degree(self):
        for i in range(self.ring.n - 1, -1, -1):
            if self.c[i]:
                return i
        return -1


def frobenius(a):
    return a.frobenius()


def kappa_so(a, ring):
    """S/t^{2e} -> O/2 sending t to pi; output precision 2e."""
    e2, m = 2 * ring.e, ring.m
    v = np.zeros(ring.d, dtype=np.int64)
    for i in range(min(e2, a.ring.n)):
        v[i * m:(i + 1) * m] = ring.field.to_bits(a.c[i])
    return ring.element(v, e2)


def kappa_inverse(o, ring, S=None):
    """O/2 -> S/t^{2e}; the result is the degree < 2e representative."""
    S = ring.S if S is None else S
    m = ring.m
    coeffs = [ring.field.from_bits([int(x) & 1 for x in o.v[i * m:(i + 1) * m]])
              for i in range(2 * ring.e)]
    return S(coeffs)


def lift_s_to_o(a, ring, degree=None):
    """Lift a k[t]-polynomial to O via t -> pi with digit-zero k-lifts."""
    degree = 2 * ring.e if degree is None else degree
    return ring.from_poly_pi(list(a.c[:degree]))


@functools.lru_cache(maxsize=None)
def default_ring(m=1, e=1, N=6, N_S=None):
    return RingTower(m=m, e=e, N=N, N_S=N_S)


def rng_from_seed(seed):
    return _random.Random(seed)
