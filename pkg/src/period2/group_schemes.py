"""Finite flat group schemes of period 2 from monomial algebras.

The coaddition is stored through j_i = delta^+(X_i), so that
Delta(X_i) = X_i (x) 1 + 1 (x) X_i + j_i.  The vector j solves

    sum_s j_s c_si = -et_i X_i(x)X_i - et_i (X_i(x)1 + 1(x)X_i) j_i - et_i j_i^2 / 2

with et_i = eta_tilde_i, found by fixed-point iteration after multiplying by
D = C^{-1}.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .augmented_algebras import (AlgElement, MonomialAlgebra, from_residue_vector,
                                 ideal_membership)
from .errors import NoConvergence, NotDivisible, NotInSpan, ValidationError
from .linalg import kmat_solve


# ---------------------------------------------------------------------------
# coaddition
# ---------------------------------------------------------------------------

def _half_truncated(x):
    """x / 2 for x known to be even; the result loses the top 2e digits."""
    ring = x.ring
    known = x.prec > ring.pi_index
    if np.any((x.v & 1).astype(bool) & known[None, :]):
        raise NotDivisible("j_i^2 is not divisible by 2")
    return AlgElement(x.alg, x.v >> 1, x.prec - 2 * ring.e)


def _rhs(A, j, full_prec):
    """Right-hand side of the coaddition equation for every i."""
    T = A.square()
    out = []
    for i in range(A.u):
        Xi = A.var(i)
        et = A.eta_tilde[i]
        xx = A.pure_tensor(Xi, Xi)
        lin = A.left(Xi) + A.right(Xi)
        sq = _half_truncated(j[i] * j[i])
        r = -(xx.scale(et)) - (lin * j[i]).scale(et) - sq.scale(et)
        out.append(AlgElement(T, r.v, full_prec))
    return out


def _times_matrix(ring, vec, M):
    """(vec * M)_s = sum_i vec_i M_is for a row vector of tensor elements."""
    out = []
    for s in range(len(M[0]) if M else 0):
        acc = None
        for i, x in enumerate(vec):
            t = x.scale(M[i][s])
            acc = t if acc is None else acc + t
        out.append(acc)
    return out


@dataclass
class GroupScheme:
    """Algebra plus coaddition data j; Delta on monomials is memoised."""

    algebra: MonomialAlgebra
    j: list
    prec: int
    iterations: int = 0
    _delta_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def u(self):
        return self.algebra.u

    def delta_generator(self, i):
        A = self.algebra
        Xi = A.var(i)
        return A.left(Xi) + A.right(Xi) + self.j[i]

    def delta_monomial(self, p):
        if p not in self._delta_cache:
            A = self.algebra
            T = A.square()
            if p == 0:
                val = T.one()
            else:
                low = p & -p
                i = low.bit_length() - 1
                val = self.delta_generator(i) if p == low else \
                    self.delta_generator(i) * self.delta_monomial(p ^ low)
            self._delta_cache[p] = val
        return self._delta_cache[p]

    def to_json(self):
        out = self.algebra.to_json()
        out["j"] = [tensor_to_json(x) for x in self.j]
        return out


def tensor_to_json(x):
    return {str(p): x.coeff(p).coeffs for p in x.support()}


def solve_coaddition(A, initial=None, maxiter=None):
    """Unique solution j with j_i in the J-tilde / J ideals of B (x) B."""
    ring = A.ring
    T = A.square()
    full = ring.N_pi
    target = ring.N_pi - 2 * ring.e
    if A.u == 0:
        return GroupScheme(A, [], target)
    maxiter = 4 * ring.N_pi if maxiter is None else maxiter
    j = [T.zero() for _ in range(A.u)] if initial is None else \
        [AlgElement(T, x.v, full) for x in initial]
    for it in range(1, maxiter + 1):
        new = _times_matrix(ring, _rhs(A, j, full), A.D)
        new = [AlgElement(T, x.v, full) for x in new]
        same = all(AlgElement(T, a.v - b.v, full).valuation_floor() >= target
                   for a, b in zip(new, j))
        j = new
        if same:
            G = GroupScheme(A, [AlgElement(T, x.v, target) for x in j], target, it)
            residual = coaddition_residual(G)
            if residual:
                raise ValidationError([f"coaddition residual at X_{i}" for i in residual])
            return G
    raise NoConvergence(maxiter)


def coaddition_residual(G):
    """Indices i whose equation fails at the precision of j."""
    A = G.algebra
    T = A.square()
    # residual of the stored representative, computed mod pi^N_pi
    rep = [AlgElement(T, x.v, A.ring.N_pi) for x in G.j]
    lhs = _times_matrix(A.ring, rep, A.C)
    rhs = _rhs(A, rep, A.ring.N_pi)
    bad = []
    for i, (a, b) in enumerate(zip(lhs, rhs)):
        if not (a.with_prec(G.prec) == b.with_prec(G.prec)):
            bad.append(i)
    return bad


def check_ideal_invariants(G):
    """j_i in J-tilde(B(x)B) for local i and in J(B(x)B) for etale i."""
    A = G.algebra
    failures = []
    for i, x in enumerate(G.j):
        kind = "J_tilde_B" if i < A.u0 else "J_B"
        if not ideal_membership(x, kind):
            failures.append(f"j_{i} not in {kind}")
    return failures


# ---------------------------------------------------------------------------
# comultiplication
# ---------------------------------------------------------------------------

def comultiply(G, a):
    """Delta(a) as an element of B (x) B."""
    A = G.algebra
    T = A.square()
    acc = T.zero(a.prec)
    for p in a.support():
        acc = acc + G.delta_monomial(p).scale(a.coeff(p))
    return acc


def delta_plus(G, a):
    A = G.algebra
    return comultiply(G, a) - A.left(a) - A.right(a)


def _triple(A):
    return A.square().tensor(A)


def _delta_left(G, t):
    """(Delta (x) id) t in B(x)B(x)B."""
    A = G.algebra
    T3 = _triple(A)
    g, n, ring = A.g, A.n, A.ring
    out = np.zeros((T3.n, ring.d), dtype=np.int64)
    prec = t.prec
    tv = t.v.reshape(n, n, ring.d)
    for q in range(n):
        for p in range(n):
            c = tv[q, p]
            if np.any(c):
                dp = G.delta_monomial(p)
                prec = min(prec, dp.prec)
                idx = np.arange(n * n) | (q << (2 * g))
                out[idx] = (out[idx] + ring.arr_mul(c[None, :], dp.v)) % ring.mod
    return T3.element(out, prec)


def _delta_right(G, t):
    """(id (x) Delta) t in B(x)B(x)B."""
    A = G.algebra
    T3 = _triple(A)
    g, n, ring = A.g, A.n, A.ring
    out = np.zeros((T3.n, ring.d), dtype=np.int64)
    prec = t.prec
    tv = t.v.reshape(n, n, ring.d)
    for q in range(n):
        for p in range(n):
            c = tv[q, p]
            if np.any(c):
                dq = G.delta_monomial(q)
                prec = min(prec, dq.prec)
                idx = p | (np.arange(n * n) << g)
                out[idx] = (out[idx] + ring.arr_mul(c[None, :], dq.v)) % ring.mod
    return T3.element(out, prec)


def _tensor_one_left(A, t):
    """1 (x) t in B(x)B(x)B."""
    T3 = _triple(A)
    out = np.zeros((T3.n, A.ring.d), dtype=np.int64)
    out[np.arange(A.n * A.n) << A.g] = t.v
    return T3.element(out, t.prec)


def _tensor_one_right(A, t):
    """t (x) 1 in B(x)B(x)B."""
    T3 = _triple(A)
    out = np.zeros((T3.n, A.ring.d), dtype=np.int64)
    out[:A.n * A.n] = t.v
    return T3.element(out, t.prec)


def counit_left(A, t):
    """(e (x) id) t."""
    n = A.n
    tv = t.v.reshape(n, n, A.ring.d)
    return A.element(tv[:, 0, :].copy(), t.prec)


@dataclass
class HopfReport:
    coassoc_ok: bool
    cocommut_ok: bool
    counit_ok: bool
    period2_ok: bool
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return self.coassoc_ok and self.cocommut_ok and self.counit_ok and self.period2_ok

    def to_json(self):
        return {"coassoc_ok": self.coassoc_ok, "cocommut_ok": self.cocommut_ok,
                "counit_ok": self.counit_ok, "period2_ok": self.period2_ok,
                "pass": self.passed, "witnesses": self.witnesses}


def delta_respects_relations(G):
    """Delta(X_i)^2 = Delta(X_i^2) for every generator."""
    A = G.algebra
    for i in range(A.g):
        d = G.delta_generator(i)
        rel = AlgElement(A, A.relations[i], A.ring.N_pi)
        if not d * d == comultiply(G, rel):
            return False
    return True


def verify_hopf(G):
    """Coassociativity, cocommutativity, counit and period 2 on generators."""
    A = G.algebra
    wit = {}
    coassoc = cocomm = counit = period2 = True
    for i in range(A.g):
        d = G.delta_generator(i)
        lhs = _delta_left(G, d)
        rhs = _delta_right(G, d)
        if not lhs == rhs:
            coassoc = False
            wit.setdefault("coassoc", []).append(i)
        if not A.swap(d) == d:
            cocomm = False
            wit.setdefault("cocommut", []).append(i)
        if not counit_left(A, d) == A.var(i) or not counit_left(A, A.swap(d)) == A.var(i):
            counit = False
            wit.setdefault("counit", []).append(i)
        # mult(Delta X_i) = 2 X_i + mult(j_i)
        if not A.mult(d).is_zero():
            period2 = False
            wit.setdefault("period2", []).append(i)
    return HopfReport(coassoc, cocomm, counit, period2, wit)


# ---------------------------------------------------------------------------
# the etale block mod pi
# ---------------------------------------------------------------------------

def etale_part(G):
    """Sub-group scheme on the generators after the local block."""
    A = G.algebra
    u0, u = A.u0, A.u
    ring = A.ring
    C_et = [row[u0:] for row in A.C[u0:]]
    B = MonomialAlgebra(ring, C_et, A.exponents[u0:], 0)
    T = B.square()
    j = []
    mask_loc = (1 << u0) - 1
    for x in G.j[u0:]:
        out = np.zeros((T.n, ring.d), dtype=np.int64)
        for idx in x.support():
            p, q = idx & (A.n - 1), idx >> A.g
            if p & mask_loc or q & mask_loc:
                raise ValidationError(["etale coaddition involves local generators"])
            out[(p >> u0) | ((q >> u0) << B.g)] = x.v[idx]
        j.append(T.element(out, x.prec))
    return GroupScheme(B, j, G.prec)


def _is_zero_mod_pi(x):
    m = x.ring.m
    return not np.any(x.v[:, :m] & 1)


def hochschild_tests(G_et, gamma):
    """(is_cocycle, is_coboundary) for a symmetric tensor gamma, mod pi."""
    A = G_et.algebra
    lhs = _delta_left(G_et, gamma) + _tensor_one_right(A, gamma)
    rhs = _tensor_one_left(A, gamma) + _delta_right(G_et, gamma)
    cocycle = _is_zero_mod_pi(lhs - rhs)
    coboundary = _is_zero_mod_pi(A.mult(gamma))
    return {"is_cocycle": cocycle, "is_coboundary": coboundary}


def coboundary_omega(G_et, gamma):
    """omega(gamma) mod pi with delta^+(omega(gamma)) = gamma mod pi."""
    A = G_et.algebra
    field = A.ring.field
    basis = [p for p in range(1, A.n) if bin(p).count("1") >= 2]
    target = gamma.residue_vector()
    if not any(target):
        return A.zero()
    cols = [delta_plus(G_et, A.monomial(p)).residue_vector() for p in basis]
    if not cols:
        raise NotInSpan("gamma is not a coboundary")
    M = [[cols[c][r] for c in range(len(cols))] for r in range(len(target))]
    sol = kmat_solve(field, M, target)
    if sol is None:
        raise NotInSpan("gamma is not in the span of the delta^+ monomials")
    vec = [0] * A.n
    for p, lam in zip(basis, sol):
        vec[p] = lam
    return from_residue_vector(A, vec)


# ---------------------------------------------------------------------------
# Galois conjugation
# ---------------------------------------------------------------------------

def conjugate_coaddition(G):
    return [x.tau() for x in G.j]


def descent_check(G, j_conj=None):
    """tau(j_i) = j_i mod J-tilde (local i) or mod J (etale i)."""
    A = G.algebra
    j_conj = conjugate_coaddition(G) if j_conj is None else j_conj
    for i, (a, b) in enumerate(zip(j_conj, G.j)):
        kind = "J_tilde_B" if i < A.u0 else "J_B"
        if not ideal_membership(a - b, kind):
            return False
    return True
