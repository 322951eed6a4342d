"""Augmented O-algebras with a square-free monomial basis.

An algebra on g generators has the 2^g monomials X^p (p a bitmask) as O-basis
and relations X_i^2 = rel_i, where rel_i is an element.  Tensor products are
again of this shape: the generators of A (x) B are those of A followed by those
of B, and the monomial X^p (x) X^q has index p | (q << g_A).

Elements are coefficient arrays of shape (2^g, d) with one shared absolute
precision.
"""

import functools
import math
import random as _random

import numpy as np

from .coeff_rings import AtLeast, OElement, kappa_so, lift_s_to_o
from .errors import NeedsFieldExtension, NotDivisible, PrecisionExhausted
from .lattices import OLattice, lattice_intersection
from .linalg import F2Map, bits_to_kvec, f2_span_basis, kvec_to_bits


# ---------------------------------------------------------------------------
# algebras and elements
# ---------------------------------------------------------------------------

class SquareFreeAlgebra:
    """O-algebra with basis the square-free monomials in g generators."""

    def __init__(self, ring, nvars, relations, struct_prec=None, factors=None):
        self.ring = ring
        self.g = nvars
        self.n = 1 << nvars
        self.relations = [np.asarray(r, dtype=np.int64) % ring.mod for r in relations]
        if len(self.relations) != nvars:
            raise ValueError("one relation per generator")
        self.struct_prec = ring.N_pi if struct_prec is None else struct_prec
        self._factors = factors
        self._triples = None
        self._cache = {}
        self._tensor_cache = {}

    # -- structure constants --
    def _mono_table(self):
        """dict (p, q) -> {r: coeff} for all monomial products."""
        ring = self.ring
        one = np.zeros(ring.d, dtype=np.int64)
        one[0] = 1
        rels = [{s: r[s] for s in range(self.n) if np.any(r[s])} for r in self.relations]

        @functools.lru_cache(maxsize=None)
        def mono(p, q):
            common = p & q
            if not common:
                return ((p | q, one),)
            bit = common & -common
            i = bit.bit_length() - 1
            base = mono(p ^ bit, q ^ bit)
            acc = {}
            for r1, c1 in base:
                for s, c2 in rels[i].items():
                    c12 = ring.arr_mul(c1, c2)
                    for r2, c3 in mono(r1, s):
                        val = ring.arr_mul(c12, c3)
                        acc[r2] = (acc[r2] + val) % ring.mod if r2 in acc else val
            return tuple((r, c) for r, c in acc.items() if np.any(c))

        return mono

    @property
    def triples(self):
        if self._triples is None:
            if self._factors is not None:
                self._triples = _combine_triples(self.ring, *self._factors)
            else:
                mono = self._mono_table()
                P, Q, R, C = [], [], [], []
                for p in range(self.n):
                    for q in range(self.n):
                        for r, c in mono(p, q):
                            P.append(p)
                            Q.append(q)
                            R.append(r)
                            C.append(c)
                self._triples = (np.array(P, dtype=np.int64), np.array(Q, dtype=np.int64),
                                 np.array(R, dtype=np.int64),
                                 np.array(C, dtype=np.int64).reshape(len(C), self.ring.d))
        return self._triples

    def mul_arrays(self, a, b):
        ring = self.ring
        P, Q, R, C = self.triples
        sel = np.any(a[P] != 0, axis=1) & np.any(b[Q] != 0, axis=1)
        if not np.any(sel):
            return np.zeros((self.n, ring.d), dtype=np.int64)
        x = ring.arr_mul(a[P[sel]], b[Q[sel]])
        y = ring.arr_mul(x, C[sel])
        res = np.zeros((self.n, ring.d), dtype=np.int64)
        np.add.at(res, R[sel], y)
        return res % ring.mod

    # -- constructors --
    def element(self, v, prec=None):
        return AlgElement(self, v, self.ring.N_pi if prec is None else prec)

    def zero(self, prec=None):
        return self.element(np.zeros((self.n, self.ring.d), dtype=np.int64), prec)

    def one(self):
        return self.monomial(0)

    def monomial(self, p, coeff=None):
        v = np.zeros((self.n, self.ring.d), dtype=np.int64)
        if coeff is None:
            v[p, 0] = 1
            return self.element(v)
        coeff = _as_o(self.ring, coeff)
        v[p] = coeff.v
        return self.element(v, coeff.prec)

    def var(self, i):
        return self.monomial(1 << i)

    def from_dict(self, coeffs):
        acc = self.zero()
        for p, c in coeffs.items():
            acc = acc + self.monomial(p, c)
        return acc

    def random_element(self, rng, in_augmentation=True, min_val=0):
        ring = self.ring
        v = np.array([[rng.randrange(ring.mod) for _ in range(ring.d)] for _ in range(self.n)],
                     dtype=np.int64)
        if in_augmentation:
            v[0] = 0
        x = self.element(v)
        if min_val:
            x = x.scale(ring.pi_power(min_val))
        return x

    # -- tensor products --
    def tensor(self, other):
        key = id(other)
        if key not in self._tensor_cache:
            ring = self.ring
            n_t = self.n * other.n
            rels = []
            for r in self.relations:
                v = np.zeros((n_t, ring.d), dtype=np.int64)
                v[:self.n] = r
                rels.append(v)
            for r in other.relations:
                v = np.zeros((n_t, ring.d), dtype=np.int64)
                for q in range(other.n):
                    v[q << self.g] = r[q]
                rels.append(v)
            T = SquareFreeAlgebra(ring, self.g + other.g, rels,
                                  min(self.struct_prec, other.struct_prec),
                                  factors=(self, other))
            T.left_factor, T.right_factor = self, other
            self._tensor_cache[key] = (other, T)
        return self._tensor_cache[key][1]

    def square(self):
        return self.tensor(self)

    def left(self, a):
        """a (x) 1 in self (x) self."""
        T = self.square()
        v = np.zeros((T.n, self.ring.d), dtype=np.int64)
        v[:self.n] = a.v
        return T.element(v, a.prec)

    def right(self, a):
        T = self.square()
        v = np.zeros((T.n, self.ring.d), dtype=np.int64)
        v[np.arange(self.n) << self.g] = a.v
        return T.element(v, a.prec)

    def pure_tensor(self, a, b):
        return self.left(a) * self.right(b)

    def mult(self, t):
        """Multiplication map self (x) self -> self on a tensor element."""
        g, n = self.g, self.n
        tv = t.v.reshape(n, n, self.ring.d)   # [q, p] for index p | q << g
        acc = np.zeros((n, self.ring.d), dtype=np.int64)
        for q in range(n):
            for p in range(n):
                c = tv[q, p]
                if np.any(c):
                    prod = self.mul_arrays(_unit_vec(self, p), _unit_vec(self, q))
                    acc = (acc + self.ring.arr_mul(c[None, :], prod)) % self.ring.mod
        return self.element(acc, t.prec)

    def swap(self, t):
        n = self.n
        tv = t.v.reshape(n, n, self.ring.d).transpose(1, 0, 2).reshape(n * n, self.ring.d)
        return t.alg.element(tv.copy(), t.prec)

    def counit(self, a):
        return OElement(self.ring, a.v[0], a.prec)

    def __repr__(self):
        return f"SquareFreeAlgebra(g={self.g}, ring={self.ring})"


def _unit_vec(alg, p):
    v = np.zeros((alg.n, alg.ring.d), dtype=np.int64)
    v[p, 0] = 1
    return v


def _combine_triples(ring, A, B):
    PA, QA, RA, CA = A.triples
    PB, QB, RB, CB = B.triples
    g = A.g
    P = (PA[:, None] | (PB[None, :] << g)).ravel()
    Q = (QA[:, None] | (QB[None, :] << g)).ravel()
    R = (RA[:, None] | (RB[None, :] << g)).ravel()
    C = ring.arr_mul(CA[:, None, :], CB[None, :, :]).reshape(-1, ring.d)
    return P, Q, R, C


def _as_o(ring, c):
    if isinstance(c, OElement):
        return c
    if isinstance(c, (int, np.integer)):
        return ring.from_int(int(c))
    return ring.element(np.asarray(c, dtype=np.int64))


class AlgElement:
    """Element of a square-free algebra: coefficients per monomial, shared precision."""

    __slots__ = ("alg", "v", "prec")

    def __init__(self, alg, v, prec):
        ring = alg.ring
        self.alg = alg
        self.prec = min(int(prec), ring.N_pi)
        self.v = ring.arr_mask(np.asarray(v, dtype=np.int64) % ring.mod, self.prec)

    @property
    def ring(self):
        return self.alg.ring

    def _coerce(self, other):
        if isinstance(other, AlgElement):
            return other
        if isinstance(other, (OElement, int, np.integer)):
            return self.alg.one().scale(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElement(self.alg, self.v + other.v, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.alg, -self.v, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElement(self.alg, self.v - other.v, min(self.prec, other.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (OElement, int, np.integer)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        va, vb = self.valuation_floor(), other.valuation_floor()
        prec = min(self.prec + vb, other.prec + va, self.alg.struct_prec + va + vb)
        return AlgElement(self.alg, self.alg.mul_arrays(self.v, other.v), prec)

    def __rmul__(self, other):
        if isinstance(other, (OElement, int, np.integer)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = _as_o(self.ring, c)
        cv = c.valuation_floor()
        prec = min(self.prec + cv, c.prec + self.valuation_floor())
        return AlgElement(self.alg, self.ring.arr_mul(c.v[None, :], self.v), prec)

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        p = min(self.prec, other.prec)
        r = self.ring
        return bool(np.array_equal(r.arr_mask(self.v, p), r.arr_mask(other.v, p)))

    def __hash__(self):
        return hash(self.v.tobytes())

    def __repr__(self):
        terms = []
        for p in range(self.alg.n):
            if np.any(self.v[p]):
                c = OElement(self.ring, self.v[p], self.prec)
                terms.append(f"{c!r}*X^{p:b}")
        return " + ".join(terms) or f"0 + O(pi^{self.prec})"

    def coeff(self, p):
        return OElement(self.ring, self.v[p], self.prec)

    def is_zero(self):
        return not np.any(self.v)

    def valuation(self):
        if self.is_zero():
            return AtLeast(self.prec)
        return int(np.min(self.ring.arr_valuation(self.v)))

    def valuation_floor(self):
        v = self.valuation()
        return v.bound if isinstance(v, AtLeast) else v

    def div2(self):
        r = self.ring
        known = self.prec > r.pi_index
        if np.any((self.v & 1).astype(bool) & known[None, :]):
            raise NotDivisible("coefficient not divisible by 2")
        if self.prec <= 2 * r.e:
            raise PrecisionExhausted("division by 2 needs precision above 2e")
        return AlgElement(self.alg, self.v >> 1, self.prec - 2 * r.e)

    def div_pi(self, k=1):
        v = self.valuation()
        if isinstance(v, int) and v < k:
            raise NotDivisible("coefficient not divisible by pi^k")
        if self.prec <= k:
            raise PrecisionExhausted("division by pi exhausts precision")
        return AlgElement(self.alg, self.ring.arr_div_pi(self.v, k), self.prec - k)

    def tau(self):
        sign = np.where(self.ring.pi_index % 2 == 1, -1, 1)
        return AlgElement(self.alg, self.v * sign[None, :], self.prec)

    def with_prec(self, prec):
        return AlgElement(self.alg, self.v, min(prec, self.prec))

    def residue_vector(self):
        """Coefficients mod pi as k-elements."""
        m = self.ring.m
        f = self.ring.field
        return [f.from_bits([int(x) & 1 for x in self.v[p, :m]]) for p in range(self.alg.n)]

    def counit(self):
        return OElement(self.ring, self.v[0], self.prec)

    def support(self):
        return [p for p in range(self.alg.n) if np.any(self.v[p])]


def from_residue_vector(alg, vec):
    ring = alg.ring
    v = np.zeros((alg.n, ring.d), dtype=np.int64)
    for p, a in enumerate(vec):
        v[p, :ring.m] = ring.field.to_bits(a)
    return alg.element(v)


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

def reduce(alg, raw):
    """Normal form of a raw polynomial {exponent tuple: coefficient}."""
    return reduce_raw(alg, raw, rng=None)


def reduce_raw(alg, raw, rng=None):
    """Rewrite X_i^2 -> rel_i until square-free; rng picks the rewrite order."""
    ring = alg.ring
    terms = {}
    prec = ring.N_pi
    for exps, c in raw.items():
        c = _as_o(ring, c)
        prec = min(prec, c.prec)
        exps = tuple(exps) + (0,) * (alg.g - len(exps))
        terms[exps] = (terms[exps] + c.v) % ring.mod if exps in terms else c.v.copy()
    rels = [{s: r[s] for s in range(alg.n) if np.any(r[s])} for r in alg.relations]
    while True:
        reducible = [(ex, i) for ex in terms for i in range(alg.g) if ex[i] >= 2
                     and np.any(terms[ex])]
        if not reducible:
            break
        ex, i = rng.choice(reducible) if rng is not None else min(reducible)
        c = terms.pop(ex)
        base = list(ex)
        base[i] -= 2
        for s, cs in rels[i].items():
            new = tuple(base[k] + ((s >> k) & 1) for k in range(alg.g))
            val = ring.arr_mul(c, cs)
            terms[new] = (terms[new] + val) % ring.mod if new in terms else val
    v = np.zeros((alg.n, ring.d), dtype=np.int64)
    for ex, c in terms.items():
        if not np.any(c):
            continue
        p = sum(1 << k for k in range(alg.g) if ex[k])
        v[p] = (v[p] + c) % ring.mod
    return alg.element(v, min(prec, alg.struct_prec))


def multiply(a, b):
    return a * b


def tensor_multiply(a, b):
    return a * b


def dp_phi1(b):
    """-b^2/2, the divided-power Frobenius on I_B(2)."""
    return -((b * b).div2())


# ---------------------------------------------------------------------------
# algebras of the normal form
# ---------------------------------------------------------------------------

class MonomialAlgebra(SquareFreeAlgebra):
    """Relations X_i^2 = eta_i sum_j X_j c_ji with eta_i = -2 / eta_tilde_prime_i^2.

    ``exponents`` a_i give eta_tilde_prime_i = pi^a_i; the first u0 generators
    form the local block.
    """

    def __init__(self, ring, C, exponents, u0, basis_data=None):
        u = len(exponents)
        self.u, self.u0 = u, u0
        self.exponents = tuple(exponents)
        self.C = [[_as_o(ring, c) for c in row] for row in C]
        self.D = o_matrix_inverse(ring, self.C) if u else []
        self.eta_tilde_prime = [ring.pi_power(a) for a in exponents]
        self.eta_tilde = [ring.pi_power(2 * a) for a in exponents]
        self.eta = [-ring.two_div_pi_power(2 * a) for a in exponents]
        n = 1 << u
        rels = []
        for i in range(u):
            v = np.zeros((n, ring.d), dtype=np.int64)
            for j in range(u):
                v[1 << j] = ring.arr_mul(self.eta[i].v, self.C[j][i].v)
            rels.append(v)
        super().__init__(ring, u, rels)
        self.basis_data = basis_data

    def to_json(self):
        return {"u": self.u, "u0": self.u0,
                "exponents": list(self.exponents),
                "eta": [e.coeffs for e in self.eta],
                "eta_tilde_prime": [e.coeffs for e in self.eta_tilde_prime],
                "C": [[c.coeffs for c in row] for row in self.C]}

    def check_property_c(self):
        u, u0 = self.u, self.u0
        for i in range(u):
            for j in range(u):
                if (i < u0) != (j < u0):
                    if self.C[i][j].valuation_floor() < 1 or self.D[i][j].valuation_floor() < 1:
                        return False
        return True


def o_matrix_inverse(ring, A):
    """Inverse of a square matrix over O whose reduction mod pi is invertible."""
    n = len(A)
    M = [[a for a in row] + [ring.one() if i == j else ring.zero() for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c].is_unit()), None)
        if piv is None:
            raise NotDivisible("matrix is not invertible over O")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def o_matrix_mul(A, B):
    n, k = len(A), len(B)
    p = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for l in range(k):
                t = A[i][l] * B[l][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def kappa_lift_matrix(ring, U):
    """Entrywise lift of an S-matrix through t -> pi, degrees below 2e."""
    return [[lift_s_to_o(a, ring) for a in row] for row in U]


def build_algebra(nb, M=None, ring=None):
    """The algebra of a normalized basis: D lifts U0, C = D^{-1}."""
    if ring is None:
        ring = (M if M is not None else nb.module).ring
    if ring is None:
        raise ValueError("a RingTower is needed to build the algebra")
    u = nb.u
    D = kappa_lift_matrix(ring, [list(r) for r in nb.U0])
    C = o_matrix_inverse(ring, D) if u else []
    alg = MonomialAlgebra(ring, C, nb.exponents, nb.u0, basis_data=nb)
    if not alg.check_property_c():
        raise NotDivisible("property (C) fails for the lifted matrix")
    return alg


def mu_eta(ring, r):
    """O[X]/(X^2 - eta X) with eta_tilde = pi^(2r) (pi_0^r), 0 <= r <= e."""
    return MonomialAlgebra(ring, [[ring.one()]], [r], 1 if r < ring.e else 0)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

def _cached(alg, key, fn):
    if key not in alg._cache:
        alg._cache[key] = fn()
    return alg._cache[key]


def aug_rows(elements):
    """Coefficient rows over the non-constant monomials."""
    return [e.v[1:] for e in elements]


def square_valuations(alg):
    def compute():
        out = {}
        for p in range(1, alg.n):
            x = alg.monomial(p)
            out[p] = (x * x).valuation()
        return out
    return _cached(alg, "sqval", compute)


def i2_exponents(alg, alpha_val=None):
    """c_p with pi^c_p X^p generating I_B(alpha) (alpha = 2 by default)."""
    target = 2 * alg.ring.e if alpha_val is None else alpha_val

    def compute():
        out = {}
        for p, v in square_valuations(alg).items():
            vv = v.bound if isinstance(v, AtLeast) else v
            out[p] = max(0, -(-(target - vv) // 2))
        return out
    return _cached(alg, ("i2", target), compute)


def _frobenius_images(alg):
    """F2-images of x -> x^2 on B (x) k, per (monomial, bit)."""
    def compute():
        ring = alg.ring
        f = ring.field
        m = ring.m
        sq = []
        for p in range(alg.n):
            x = alg.monomial(p)
            sq.append((x * x).residue_vector())
        images = []
        for p in range(alg.n):
            for b in range(m):
                z = f.sq(1 << b)
                vec = [f.mul(z, s) for s in sq[p]]
                images.append(kvec_to_bits(vec, m))
        return images
    return _cached(alg, "frob", compute)


def _frobenius_power_images(alg, s):
    base = F2Map(_frobenius_images(alg))
    imgs = list(base.images)
    for _ in range(s - 1):
        imgs = [base.apply(x) for x in imgs]
    return imgs


def nilradical_mod_pi(alg):
    """F2-basis (as k-vectors over monomials) of the nilradical of B (x) k."""
    def compute():
        s = alg.g + 1
        kern = F2Map(_frobenius_power_images(alg, s)).kernel()
        return [bits_to_kvec(b, alg.n, alg.ring.m) for b in kern]
    return _cached(alg, "nil", compute)


def _lift_kvecs(alg, vecs):
    return [from_residue_vector(alg, v) for v in vecs]


def lattice_of(alg, elements, P=None):
    return OLattice(alg.ring, alg.n - 1, aug_rows(elements), P)


def monomial_lattice(alg, exps):
    """Span of pi^exps[p] X^p."""
    ring = alg.ring
    return lattice_of(alg, [alg.monomial(p, ring.pi_power(c)) for p, c in exps.items()])


def i_lattice(alg):
    return _cached(alg, "I", lambda: monomial_lattice(alg, {p: 0 for p in range(1, alg.n)}))


def loc_lattice(alg):
    """I_B^loc: pi I_B plus lifts of the nilradical mod pi."""
    def compute():
        ring = alg.ring
        gens = [alg.monomial(p, ring.pi_power(1)) for p in range(1, alg.n)]
        gens += _lift_kvecs(alg, nilradical_mod_pi(alg))
        return lattice_of(alg, gens)
    return _cached(alg, "Iloc", compute)


def two_loc_lattice(alg):
    def compute():
        L = loc_lattice(alg)
        ring = alg.ring
        rows = ring.arr_mul(ring.from_int(2).v[None, None, :], L.hermite_rows())
        return OLattice(ring, alg.n - 1, rows)
    return _cached(alg, "2Iloc", compute)


def alpha_loc_lattice(alg, alpha):
    """alpha I_B^loc."""
    ring = alg.ring
    L = loc_lattice(alg)
    rows = ring.arr_mul(_as_o(ring, alpha).v[None, None, :], L.hermite_rows())
    return OLattice(ring, alg.n - 1, rows)


def i2loc_exponents(alg, alpha=None):
    """c_p with pi^c_p X^p generating I_B(alpha)^loc ((oX^p)^2 in alpha I^loc)."""
    ring = alg.ring
    key = ("i2loc", None if alpha is None else tuple(_as_o(ring, alpha).v))

    def compute():
        target = two_loc_lattice(alg) if alpha is None else alpha_loc_lattice(alg, alpha)
        out = {}
        for p in range(1, alg.n):
            x = alg.monomial(p)
            sq = x * x
            c = 0
            while True:
                if 2 * c >= ring.N_pi:
                    raise PrecisionExhausted("no power of pi puts the square in the ideal")
                cand = sq.scale(ring.pi_power(2 * c))
                if cand.v[0].any():
                    c += 1
                    continue
                if target.contains(cand.v[1:]):
                    break
                c += 1
            out[p] = c
        return out
    return _cached(alg, key, compute)


def _product_generators(alg, left_exps, right_exps, extra_exps):
    ring = alg.ring
    gens = []
    for p, cp in left_exps.items():
        for q, cq in right_exps.items():
            x = alg.monomial(p) * alg.monomial(q)
            gens.append(x.scale(ring.pi_power(cp + cq)))
    for p, cp in extra_exps.items():
        gens.append(alg.monomial(p, ring.pi_power(ring.e + cp)))
    return gens


def j_lattice(alg):
    """J_B = I_B(2)^2 + pi^e I_B(2)."""
    def compute():
        c = i2_exponents(alg)
        return lattice_of(alg, _product_generators(alg, c, c, c))
    return _cached(alg, "J", compute)


def j_tilde_lattice(alg):
    """I_B(2)^loc I_B(2) + pi^e I_B(2)^loc."""
    def compute():
        c = i2_exponents(alg)
        cl = i2loc_exponents(alg)
        return lattice_of(alg, _product_generators(alg, cl, c, cl))
    return _cached(alg, "Jt", compute)


def i2_lattice(alg):
    return _cached(alg, "I2", lambda: monomial_lattice(alg, i2_exponents(alg)))


def i2loc_lattice(alg):
    return _cached(alg, "I2loc", lambda: monomial_lattice(alg, i2loc_exponents(alg)))


def two_i_lattice(alg):
    return _cached(alg, "2I", lambda: monomial_lattice(
        alg, {p: 2 * alg.ring.e for p in range(1, alg.n)}))


def ideal_lattice(alg, kind, alpha=None):
    if kind == "I_B":
        return i_lattice(alg)
    if kind == "I_B_loc":
        return loc_lattice(alg)
    if kind == "I_B_2":
        return i2_lattice(alg)
    if kind == "I_B_2_loc":
        return i2loc_lattice(alg)
    if kind == "I_B_alpha":
        return monomial_lattice(alg, i2_exponents(alg, _as_o(alg.ring, alpha).valuation_floor()))
    if kind == "I_B_alpha_loc":
        return monomial_lattice(alg, i2loc_exponents(alg, alpha))
    if kind == "J_B":
        return j_lattice(alg)
    if kind == "J_tilde_B":
        return j_tilde_lattice(alg)
    if kind == "two_I_B":
        return two_i_lattice(alg)
    if kind == "I_B_et":
        return i_et_lattice(alg)
    raise ValueError(f"unknown ideal kind {kind}")


MONOMIAL_KINDS = {"I_B", "I_B_2", "I_B_2_loc", "I_B_alpha", "I_B_alpha_loc", "two_I_B"}


def ideal_membership(a, kind, alpha=None):
    """a in the named ideal, decided by lattice membership."""
    if np.any(a.v[0]):
        return False
    L = ideal_lattice(a.alg, kind, alpha)
    return L.contains(a.v[1:], a.prec)


def monomialwise_membership(a, kind, alpha=None):
    """Conjunction of the memberships of the monomial terms of a."""
    if np.any(a.v[0]):
        return False
    L = ideal_lattice(a.alg, kind, alpha)
    rows = []
    for p in range(1, a.alg.n):
        if np.any(a.v[p]):
            row = np.zeros_like(a.v[1:])
            row[p - 1] = a.v[p]
            rows.append(row)
    if not rows:
        return True
    return bool(np.all(L.contains_many(np.array(rows), a.prec)))


# ---------------------------------------------------------------------------
# idempotents and the maximal etale subalgebra
# ---------------------------------------------------------------------------

def _residue_mul(alg, x, y):
    return (from_residue_vector(alg, x) * from_residue_vector(alg, y)).residue_vector()


def primitive_idempotents_mod_pi(alg):
    """Atoms of the Boolean algebra of idempotents of B (x) k."""
    ring = alg.ring
    f = ring.field
    m = ring.m
    frob = _frobenius_images(alg)
    fixed = F2Map([img ^ (1 << i) for i, img in enumerate(frob)]).kernel()
    idems = [bits_to_kvec(b, alg.n, m) for b in fixed]
    one = [1] + [0] * (alg.n - 1)
    atoms = [one]
    for e in idems:
        new = []
        for a in atoms:
            ae = _residue_mul(alg, a, e)
            rest = [x ^ y for x, y in zip(a, ae)]
            for part in (ae, rest):
                if any(part):
                    new.append(part)
        atoms = new
    # split check: number of atoms equals the k-dimension of the stable image
    s = alg.g + 1
    stable_rank = F2Map(_frobenius_power_images(alg, s)).rank()
    et_dim = stable_rank // m
    if len(atoms) < et_dim:
        degrees = []
        for a in atoms:
            span = []
            for p in range(alg.n):
                for b in range(m):
                    z = [0] * alg.n
                    z[p] = 1 << b
                    span.append(kvec_to_bits(_residue_mul(alg, a, z), m))
            basis = f2_span_basis(span)
            imgs = F2Map(_frobenius_power_images(alg, s))
            rank = len(f2_span_basis([imgs.apply(x) for x in basis]))
            degrees.append(rank // m)
        d = 1
        for x in degrees:
            d = d * x // math.gcd(d, x)
        raise NeedsFieldExtension(d)
    return atoms


def lift_idempotent(alg, e0):
    """Newton iteration e -> 3e^2 - 2e^3 from a residue idempotent."""
    e = from_residue_vector(alg, e0)
    rounds = alg.ring.N_pi.bit_length() + 2
    for _ in range(rounds):
        e2 = e * e
        e = e2.scale(3) - (e2 * e).scale(2)
    if not (e * e == e):
        raise NotDivisible("idempotent lifting did not converge")
    return e


def max_etale_subalgebra(alg):
    """(primitive idempotents, B^et lattice over all monomials, I_{B^et} lattice)."""
    def compute():
        atoms = primitive_idempotents_mod_pi(alg)
        idems = [lift_idempotent(alg, a) for a in atoms]
        full = OLattice(alg.ring, alg.n, [e.v for e in idems])
        aug = [e for e in idems if not np.any(e.v[0])]
        ilat = lattice_of(alg, aug) if aug else None
        return idems, full, ilat
    return _cached(alg, "et", compute)


def i_et_lattice(alg):
    return max_etale_subalgebra(alg)[2]
