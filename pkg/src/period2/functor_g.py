"""The functor from filtered modules to group schemes and its inverse on objects.

For a module in normal form U = U0 diag(t^a_i) with algebra B, the module
embeds into (I_B / J_B, I_B(2) / J_B, b -> -b^2/2) by

    m0_i -> (X C)_i,    m1_i -> eta_tilde_prime_i X_i,

so that phi_1(m1) = m0 holds exactly and m1 = m0 D Omega with D lifting U0 and
Omega = diag(pi^a_i) lifting diag(t^a_i).
"""

from dataclasses import dataclass

import numpy as np

from .augmented_algebras import (AlgElement, build_algebra, dp_phi1, i2_exponents,
                                 i2_lattice, ideal_membership, j_lattice,
                                 kappa_lift_matrix, o_matrix_inverse, o_matrix_mul)
from .coeff_rings import kappa_inverse
from .errors import (InternalInvariantViolation, NoConvergence, NotDivisible,
                     SolutionSpaceTooLarge)
from .filtered_modules import FilteredModule, hom_star, normalize_basis
from .group_schemes import delta_plus, solve_coaddition
from .lattices import OLattice, lattice_intersection, lattice_preimage
from .linalg import F2Map, f2_span_basis, smat_inverse, smat_mul, smat_sigma


# ---------------------------------------------------------------------------
# the functor on objects
# ---------------------------------------------------------------------------

def g_functor(M, ring=None):
    """Group scheme of M; the normal-form basis is kept on the result."""
    ring = M.ring if ring is None else ring
    nb = normalize_basis(M)
    A = build_algebra(nb, M, ring)
    G = solve_coaddition(A)
    G.module = M
    G.basis = nb
    return G


def lifted_structure_matrix(A):
    """D * Omega over O, lifting U0 * diag(t^a_i)."""
    u = A.u
    return [[A.D[i][j] * A.eta_tilde_prime[j] for j in range(u)] for i in range(u)]


# ---------------------------------------------------------------------------
# iota
# ---------------------------------------------------------------------------

@dataclass
class IotaModule:
    """(I_B / J_B, I_B(2) / J_B, phi_1) through lattices in the monomial coordinates."""

    algebra: object
    J: OLattice
    I2: OLattice

    def phi1(self, b):
        return dp_phi1(b)

    def congruent(self, a, b):
        return ideal_membership(a - b, "J_B")

    def in_m1(self, b):
        return ideal_membership(b, "I_B_2")

    @property
    def dim_m0(self):
        """F2-dimension of I_B / J_B."""
        return self.J.quotient_dimension()

    @property
    def dim_m1(self):
        return self.J.quotient_dimension() - self.I2.quotient_dimension()

    def phi1_well_defined(self):
        """phi_1 maps the generators of J_B into J_B."""
        A = self.algebra
        for row in self.J.hermite_rows():
            v = np.zeros((A.n, A.ring.d), dtype=np.int64)
            v[1:] = row
            g = A.element(v)
            if not ideal_membership(dp_phi1(g), "J_B"):
                return False
        return True


def iota(B):
    return IotaModule(B, j_lattice(B), i2_lattice(B))


def _row_times(vec, M):
    """Row vector of algebra elements times an O-matrix."""
    out = []
    for s in range(len(M[0]) if M else 0):
        acc = None
        for i, x in enumerate(vec):
            t = x.scale(M[i][s])
            acc = t if acc is None else acc + t
        out.append(acc)
    return out


def iota_M(M, G):
    """Images of the normal-form bases of M^0 and M^1 in iota(B)."""
    A = G.algebra
    X = [A.var(i) for i in range(A.u)]
    m0 = _row_times(X, A.C)
    m1 = [A.var(i).scale(A.eta_tilde_prime[i]) for i in range(A.u)]
    iot = iota(A)
    for i in range(A.u):
        if not iot.in_m1(m1[i]):
            raise InternalInvariantViolation(f"image of m1_{i} not in I_B(2)")
        if not iot.congruent(iot.phi1(m1[i]), m0[i]):
            raise InternalInvariantViolation(f"phi_1 not respected at index {i}")
    back = _row_times(m0, lifted_structure_matrix(A))
    for i in range(A.u):
        if not iot.congruent(back[i], m1[i]):
            raise InternalInvariantViolation(f"m1 = m0 U fails at index {i}")
    return {"m0": m0, "m1": m1, "basis_change": G.basis.P if hasattr(G, "basis") else None}


# ---------------------------------------------------------------------------
# primitives and recovery
# ---------------------------------------------------------------------------

@dataclass
class Primitives:
    """K = {a in I_B : delta^+(a) in J_(B(x)B)} and its linear parts."""

    K: OLattice
    linear: OLattice        # K meet the span of X_1..X_u, in O^u
    linear_m1: OLattice     # linear meet I_B(2), in O^u

    def linear_elements(self, A, lattice=None):
        lat = self.linear if lattice is None else lattice
        out = []
        for row in lat.hermite_rows():
            v = np.zeros((A.n, A.ring.d), dtype=np.int64)
            for i in range(A.u):
                v[1 << i] = row[i]
            out.append(A.element(v))
        return out


def primitives(G):
    A = G.algebra
    ring = A.ring
    T = A.square()
    if A.u == 0:
        empty = OLattice(ring, 0, [])
        return Primitives(empty, empty, empty)
    images = [delta_plus(G, A.monomial(p)).v[1:] for p in range(1, A.n)]
    K = lattice_preimage(ring, images, j_lattice(T), A.n - 1, P=G.prec)
    lin_cols = [(1 << i) - 1 for i in range(A.u)]
    basis = []
    for c in lin_cols:
        row = np.zeros((A.n - 1, ring.d), dtype=np.int64)
        row[c, 0] = 1
        basis.append(row)
    L = OLattice(ring, A.n - 1, basis, K.P)
    Klin = lattice_intersection(K, L)
    rows = [r[lin_cols] for r in Klin.hermite_rows()]
    lin = OLattice(ring, A.u, rows, K.P)
    c = i2_exponents(A)
    i2rows = []
    for i in range(A.u):
        row = np.zeros((A.u, ring.d), dtype=np.int64)
        row[i] = ring.pi_power(c[1 << i]).v
        i2rows.append(row)
    lin1 = lattice_intersection(lin, OLattice(ring, A.u, i2rows, K.P))
    return Primitives(K, lin, lin1)


def _linear_part_mod_j(A, h):
    """Coordinates of a linear element congruent to h modulo J_B."""
    ring = A.ring
    J = j_lattice(A)
    lin_cols = [(1 << i) - 1 for i in range(A.u)]
    other = [c for c in range(A.n - 1) if c not in lin_cols]
    order = other + lin_cols
    Jp = OLattice(ring, A.n - 1, [r[order] for r in J.hermite_rows()], J.P)
    red = Jp.canonical(h.v[1:][order][None], min(h.prec, Jp.P))[0]
    if np.any(red[:len(other)]):
        raise InternalInvariantViolation("class has no linear representative")
    return [ring.element(red[len(other) + i]) for i in range(A.u)]


def recover_module(G, S=None):
    """Filtered module read off from the primitives of G, lifted to S."""
    A = G.algebra
    ring = A.ring
    S = ring.S if S is None else S
    if A.u == 0:
        return FilteredModule(S, ring.e, [], ring)
    prim = primitives(G)
    gens = prim.linear_elements(A, prim.linear_m1)
    if len(gens) != A.u:
        raise InternalInvariantViolation("primitive lattice has the wrong rank")
    Gm = [[g.coeff(1 << i) for g in gens] for i in range(A.u)]
    Hm_cols = []
    for g in gens:
        full = AlgElement(A, g.v, ring.N_pi)
        Hm_cols.append(_linear_part_mod_j(A, dp_phi1(full)))
    Hm = [[Hm_cols[k][i] for k in range(A.u)] for i in range(A.u)]
    U = o_matrix_mul(o_matrix_inverse(ring, Hm), Gm)
    Us = [[kappa_inverse(x, ring, S) for x in row] for row in U]
    return FilteredModule(S, ring.e, Us, ring)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

@dataclass
class AlgebraMorphism:
    """X_i of the source algebra -> images[i] in the target algebra."""

    source: object          # GroupScheme
    target: object          # GroupScheme
    images: list
    iterations: int = 0

    def apply_monomial(self, p):
        out = self.target.algebra.one()
        for i in range(self.source.algebra.u):
            if p >> i & 1:
                out = out * self.images[i]
        return out

    def apply(self, a):
        acc = self.target.algebra.zero(a.prec)
        for p in a.support():
            acc = acc + self.apply_monomial(p).scale(a.coeff(p))
        return acc

    def apply_tensor(self, t):
        As, At = self.source.algebra, self.target.algebra
        n = As.n
        tv = t.v.reshape(n, n, As.ring.d)
        acc = At.square().zero(t.prec)
        for q in range(n):
            for p in range(n):
                c = tv[q, p]
                if np.any(c):
                    term = At.pure_tensor(self.apply_monomial(p), self.apply_monomial(q))
                    acc = acc + term.scale(As.ring.element(c))
        return acc

    def is_algebra_map(self):
        As = self.source.algebra
        for i in range(As.u):
            rel = AlgElement(As, As.relations[i], As.ring.N_pi)
            if not self.images[i] * self.images[i] == self.apply(rel):
                return False
        return True

    def coaddition_defects(self):
        """delta^+(F X_i) - (F (x) F)(j_i) for every i."""
        return [delta_plus(self.target, x) - self.apply_tensor(j)
                for x, j in zip(self.images, self.source.j)]

    def is_compatible(self):
        return all(d.is_zero() for d in self.coaddition_defects())

    def congruent_mod2(self, other):
        return all((a - b).valuation_floor() >= 2 * a.ring.e
                   for a, b in zip(self.images, other.images))


def _normal_form_matrix(f, GM, GN):
    """f in the normal-form bases: P_N^{-1} B P_M."""
    PM = [list(r) for r in GM.basis.P]
    PN = [list(r) for r in GN.basis.P]
    return smat_mul(smat_mul(smat_inverse(PN), [list(r) for r in f.B]), PM)


def transport_hom(M, N, f, GM=None, GN=None, maxiter=None):
    """Algebra map B_M -> B_N attached to f: M -> N.

    Seeded from the module map into iota(B_N) and iterated to an exact
    solution of x_i^2 = eta_i (x C)_i.
    """
    GM = g_functor(M) if GM is None else GM
    GN = g_functor(N) if GN is None else GN
    AM, AN = GM.algebra, GN.algebra
    ring = AM.ring
    if AM.u == 0:
        return AlgebraMorphism(GM, GN, [])
    if AN.u == 0:
        return AlgebraMorphism(GM, GN, [AN.zero() for _ in range(AM.u)])
    Bn = _normal_form_matrix(f, GM, GN)
    An = kappa_lift_matrix(ring, smat_sigma(Bn))
    XN = [AN.var(i) for i in range(AN.u)]
    y = _row_times(_row_times(XN, AN.C), An)
    full = ring.N_pi
    target = full - 2 * ring.e
    x = [AlgElement(AN, v.v, full) for v in _row_times(y, AM.D)]
    maxiter = 4 * full if maxiter is None else maxiter
    for it in range(1, maxiter + 1):
        b = [xi.scale(AM.eta_tilde_prime[i]) for i, xi in enumerate(x)]
        phi = [_phi1_truncated(bi) for bi in b]
        new = [AlgElement(AN, v.v, full) for v in _row_times(phi, AM.D)]
        same = all(AlgElement(AN, a.v - c.v, full).valuation_floor() >= target
                   for a, c in zip(new, x))
        x = new
        if same:
            return AlgebraMorphism(GM, GN, [AlgElement(AN, v.v, target) for v in x], it)
    raise NoConvergence(maxiter)


def _phi1_truncated(b):
    sq = b * b
    ring = b.ring
    known = sq.prec > ring.pi_index
    if np.any((sq.v & 1).astype(bool) & known[None, :]):
        raise NotDivisible("seed is not in I_B(2)")
    return AlgElement(b.alg, -(sq.v >> 1), ring.N_pi)


# ---------------------------------------------------------------------------
# counting morphisms on the group-scheme side
# ---------------------------------------------------------------------------

def _aug_element(A, row):
    v = np.zeros((A.n, A.ring.d), dtype=np.int64)
    v[1:] = row
    return A.element(v)


def scheme_morphism_count(M, N, GM=None, GN=None, cap=16):
    """Number of maps M -> iota(B_N) landing in the primitives, as F2-kernel."""
    GM = g_functor(M) if GM is None else GM
    GN = g_functor(N) if GN is None else GN
    AM, AN = GM.algebra, GN.algebra
    if AM.u == 0 or AN.u == 0:
        return 1
    J = j_lattice(AN)
    I2 = i2_lattice(AN)
    prim = primitives(GN)
    # F2-basis of the linear primitive classes in I_B / J_B
    cands = []
    for g in prim.linear_elements(AN):
        for i in range(2 * AN.ring.e):
            for bit in range(AN.ring.m):
                z = AN.ring.from_k(1 << bit) * AN.ring.pi_power(i)
                cands.append(g.scale(z))
    coords = J.quotient_coords(np.array([c.v[1:] for c in cands]))
    basis_elems, basis_bits = [], []
    for c, bits in zip(cands, coords):
        if f2_span_basis(basis_bits + [bits]).__len__() > len(basis_bits):
            basis_bits.append(bits)
            basis_elems.append(c)
    d0 = len(basis_elems)
    dim = d0 * AM.u
    if dim > 4 * cap:
        raise SolutionSpaceTooLarge(dim, 4 * cap)
    Ut = lifted_structure_matrix(AM)

    def tuple_for(mask):
        ys = [AN.zero() for _ in range(AM.u)]
        for s in range(AM.u):
            for k in range(d0):
                if mask >> (s * d0 + k) & 1:
                    ys[s] = ys[s] + basis_elems[k]
        return ys

    def b_of(ys):
        return _row_times(ys, Ut)

    # step 1: b in I_B(2)
    step1 = []
    for idx in range(dim):
        bs = b_of(tuple_for(1 << idx))
        bits = 0
        for k, b in enumerate(bs):
            bits |= I2.quotient_coords(b.v[1:][None])[0] << (k * I2.quotient_dimension())
        step1.append(bits)
    W = F2Map(step1).kernel()
    # step 2: phi_1(b) = y mod J on W
    qd = J.quotient_dimension()
    step2 = []
    for w in W:
        ys = tuple_for(w)
        bs = b_of(ys)
        bits = 0
        for k in range(AM.u):
            diff = _phi1_truncated(AlgElement(AN, bs[k].v, AN.ring.N_pi)) - ys[k]
            diff = diff.with_prec(AN.ring.N_pi - 2 * AN.ring.e)
            bits |= J.quotient_coords(diff.v[1:][None], diff.prec)[0] << (k * qd)
        step2.append(bits)
    return 1 << len(F2Map(step2).kernel())


def full_faithfulness_check(M, N, cap=16):
    """|Hom*(M, N)| equals the number of morphisms on the group-scheme side."""
    return hom_star(M, N, cap).count == scheme_morphism_count(M, N, cap=cap)
