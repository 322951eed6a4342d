"""Filtered phi_1-modules over S = k[t]/t^N and their morphisms.

A module of rank u is stored through one matrix U: with a basis m0 of M^0 and
the basis m1 = m0 * U of M^1, phi_1(m1) = m0.  A change of basis P on M^1
replaces U by sigma(P)^{-1} U P (the M^0 basis changes by sigma(P)).

A morphism f: M -> N is the pair (A, B) with f(m0_M) = m0_N * A,
f(m1_M) = m1_N * B, sigma(B) U_M = U_N B and A = sigma(B).
"""

from dataclasses import dataclass, field as dc_field

from .errors import NeedsFieldExtension, NoDescent, ValidationError
from .linalg import (F2Map, f2_span_basis, f2_reduce, kmat_rank, smat_add, smat_det,
                     smat_adjugate, smat_identity, smat_inverse, smat_is_zero, smat_mul,
                     smat_residue, smat_sigma, smat_to_ring, smat_transpose, smat_zero,
                     smat_equal)
from .sigma_linear import (HomSpace, fixed_vectors_column, fixed_vectors_over_s,
                           v_matrix)


# ---------------------------------------------------------------------------
# objects and morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FilteredModule:
    S: object
    e: int
    U: tuple
    ring: object = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "U", tuple(tuple(r) for r in self.U))

    @property
    def u(self):
        return len(self.U)

    @property
    def matrix(self):
        return [list(r) for r in self.U]

    @classmethod
    def from_rows(cls, S, e, rows, ring=None):
        """rows: nested lists of SElement, coefficient lists, or ints (0/1)."""
        U = [[_to_s(S, x) for x in r] for r in rows]
        return cls(S, e, U, ring)

    def __repr__(self):
        return f"FilteredModule(u={self.u}, e={self.e}, U={[[str(a) for a in r] for r in self.U]})"


def _to_s(S, x):
    if hasattr(x, "ring") and hasattr(x, "c"):
        return x.to_ring(S) if x.ring != S else x
    if isinstance(x, int):
        return S.const(x)
    return S(list(x))


@dataclass(frozen=True)
class FMorphism:
    source: FilteredModule
    target: FilteredModule
    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(r) for r in self.A))
        object.__setattr__(self, "B", tuple(tuple(r) for r in self.B))

    @classmethod
    def from_B(cls, source, target, B):
        return cls(source, target, smat_sigma(B), B)

    def is_valid(self):
        if self.source.u == 0 or self.target.u == 0:
            return True
        lhs = smat_mul(smat_sigma(self.B), self.source.matrix)
        rhs = smat_mul(self.target.matrix, [list(r) for r in self.B])
        return smat_equal(lhs, rhs) and smat_equal(self.A, smat_sigma(self.B))

    def compose(self, other):
        """self after other."""
        B = smat_mul([list(r) for r in self.B], [list(r) for r in other.B])
        return FMorphism.from_B(other.source, self.target, B)


def s_module(S, e, kind, ring=None):
    """The rank-one objects: 'mult' has U = (1), 'et' has U = (t^e)."""
    if kind == "mult":
        return FilteredModule(S, e, [[S.one()]], ring)
    if kind == "et":
        return FilteredModule(S, e, [[S.t_power(e)]], ring)
    raise ValueError(kind)


def rank_one(S, e, r, ring=None):
    return FilteredModule(S, e, [[S.t_power(r)]], ring)


def zero_module(S, e, ring=None):
    return FilteredModule(S, e, [], ring)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(M):
    """List of failed axioms; empty when M is an object of the category."""
    failures = []
    if M.u == 0:
        return failures
    S, e, u = M.S, M.e, M.u
    if any(len(r) != u for r in M.U):
        return ["square_matrix"]
    if any(a.ring != S for r in M.U for a in r):
        return ["entries_in_S"]
    Sx = S.extend(e * u + 1)
    Ux = smat_to_ring(M.matrix, Sx)
    det = smat_det(Ux)
    if det.truncate(S.n).is_zero():
        failures.append("det_nonzero")
        return failures
    v = det.val()
    adj = smat_adjugate(Ux)
    if any(a.val() < v - e for r in adj for a in r):
        failures.append("t^e_U_inverse_integral")
    return failures


def check_valid(M):
    failures = validate(M)
    if failures:
        raise ValidationError(failures)


# ---------------------------------------------------------------------------
# etale subobject and multiplicative quotient
# ---------------------------------------------------------------------------

def phi0_matrix(M):
    """sigma(V) with V = t^e U^{-1}: phi_0(m0 x) = m0 * sigma(V) sigma(x)."""
    return smat_sigma(v_matrix(M.matrix, M.e))


def etale_sub(M):
    """(M_et, i_et) with U_et = t^e I and i_et the embedding."""
    S, e = M.S, M.e
    if M.u == 0:
        Z = zero_module(S, e, M.ring)
        return Z, FMorphism(Z, M, [], [])
    V = v_matrix(M.matrix, e)
    F = smat_sigma(V)
    cols = fixed_vectors_over_s(F)
    r = len(cols)
    E = [[cols[j][i] for j in range(r)] for i in range(M.u)]
    Met = FilteredModule(S, e, [[S.t_power(e) if i == j else S.zero() for j in range(r)]
                                for i in range(r)], M.ring)
    if r == 0:
        return Met, FMorphism(Met, M, [[] for _ in range(M.u)], [[] for _ in range(M.u)])
    B = smat_mul(V, E)
    return Met, FMorphism(Met, M, E, B)


def _lift_row_solution(U, b0):
    """Row b over S with b = sigma(b) U and residue b0."""
    S = U[0][0].ring
    field = S.field
    u = len(U)
    digits = [[0] * u for _ in range(S.n)]
    digits[0] = list(b0)
    for n in range(1, S.n):
        row = [0] * u
        for i in range(0, n // 2 + 1):
            j = n - 2 * i
            bi = digits[i]
            for c in range(u):
                acc = 0
                for k in range(u):
                    x = U[k][c].c[j]
                    if x and bi[k]:
                        acc ^= field.mul(field.sq(bi[k]), x)
                row[c] ^= acc
        digits[n] = row
    return [S([digits[n][c] for n in range(S.n)]) for c in range(u)]


def mult_quotient(M):
    """(M_mult, j_mult) with U_mult = I and j_mult the projection."""
    S, e = M.S, M.e
    if M.u == 0:
        Z = zero_module(S, e, M.ring)
        return Z, FMorphism(M, Z, [], [])
    field = S.field
    U0 = smat_residue(M.matrix)
    # rows b0 = sigma(b0) U0, as columns of the transposed problem
    residues = fixed_vectors_column(field, [list(r) for r in zip(*U0)])
    rows = [_lift_row_solution(M.matrix, b0) for b0 in residues]
    r = len(rows)
    Mm = FilteredModule(S, e, smat_identity(S, r), M.ring)
    if r == 0:
        return Mm, FMorphism(M, Mm, [], [])
    return Mm, FMorphism.from_B(M, Mm, rows)


# ---------------------------------------------------------------------------
# normal form U = U0 * U1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedBasis:
    U0: tuple
    exponents: tuple          # U1 = diag(t^a_i); local block first
    u0: int                   # size of the local block
    P: tuple                  # change of basis on M^1: U0 U1 = sigma(P)^{-1} U P
    module: FilteredModule = dc_field(compare=False)

    @property
    def U1(self):
        S = self.module.S
        u = len(self.exponents)
        return [[S.t_power(self.exponents[i]) if i == j else S.zero() for j in range(u)]
                for i in range(u)]

    @property
    def u(self):
        return len(self.exponents)


def _complete_basis(field, cols, u):
    """Indices of unit vectors completing the k-columns cols to a basis."""
    chosen = []
    current = [list(c) for c in cols]
    for i in range(u):
        trial = current + [[1 if k == i else 0 for k in range(u)]]
        if kmat_rank(field, [list(r) for r in zip(*trial)]) > len(current):
            chosen.append(i)
            current = trial
    return chosen


def smith_form(W):
    """(Q, exps, R) with W = Q diag(t^exps) R, Q and R invertible over S.

    Pivot: minimal t-valuation, then lowest row, then lowest column.
    """
    n = len(W)
    if n == 0:
        return [], [], []
    S = W[0][0].ring
    W = [list(r) for r in W]
    L = smat_identity(S, n)     # accumulated row operations
    Rt = smat_identity(S, n)    # accumulated column operations
    exps = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = W[i][j].val()
                if v < S.n and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise ValueError("matrix is singular in S")
        v, i, j = best
        W[k], W[i] = W[i], W[k]
        L[k], L[i] = L[i], L[k]
        for row in W:
            row[k], row[j] = row[j], row[k]
        for row in Rt:
            row[k], row[j] = row[j], row[k]
        unit = W[k][k].shift(-v).inverse()
        W[k] = [a * unit for a in W[k]]
        L[k] = [a * unit for a in L[k]]
        for i2 in range(n):
            if i2 != k and not W[i2][k].is_zero():
                q = W[i2][k].shift(-v)
                W[i2] = [a + q * b for a, b in zip(W[i2], W[k])]
                L[i2] = [a + q * b for a, b in zip(L[i2], L[k])]
        for j2 in range(n):
            if j2 != k and not W[k][j2].is_zero():
                q = W[k][j2].shift(-v)
                for row in W:
                    row[j2] = row[j2] + q * row[k]
                for row in Rt:
                    row[j2] = row[j2] + q * row[k]
        exps.append(v)
    return smat_inverse(L), exps, smat_inverse(Rt)


def _solve_p3(field, ell, exps_loc, e, A0):
    """Z0 (r x u_loc over k) with ell + Z0 Pi_e + sigma(Z0) A0 = 0."""
    r, ul = len(ell), len(exps_loc)
    m = field.m
    images = []
    for a in range(r):
        for b in range(ul):
            for bit in range(m):
                z = 1 << bit
                img = [[0] * ul for _ in range(r)]
                if exps_loc[b] == e:
                    img[a][b] ^= z
                sz = field.sq(z)
                for c in range(ul):
                    if A0[b][c]:
                        img[a][c] ^= field.mul(sz, A0[b][c])
                images.append(_kmat_bits(img, m))
    target = _kmat_bits(ell, m)
    sol = F2Map(images).solve(target)
    if sol is None:
        return None
    Z = [[0] * ul for _ in range(r)]
    pos = 0
    for a in range(r):
        for b in range(ul):
            Z[a][b] = (sol >> pos) & ((1 << m) - 1)
            pos += m
    return Z


def _kmat_bits(Mx, m):
    out, pos = 0, 0
    for row in Mx:
        for x in row:
            out |= x << pos
            pos += m
    return out


def normalize_basis(M):
    """Change of basis putting U in the form U0 * diag(t^a_i), local block first."""
    check_valid(M)
    S, e, u = M.S, M.e, M.u
    if u == 0:
        return NormalizedBasis((), (), 0, (), M)
    field = S.field
    Sx = S.extend(2 * e * u + 2)
    U = smat_to_ring(M.matrix, Sx)
    Met, iet = etale_sub(M)
    r = Met.u
    ul = u - r
    VE = smat_to_ring(iet.B, Sx) if r else [[] for _ in range(u)]
    ve0 = [[VE[i][j].c[0] for i in range(u)] for j in range(r)]
    if kmat_rank(field, [list(c) for c in zip(*ve0)] if r else []) != r:
        raise NeedsFieldExtension(1, "etale part does not split off modulo t")
    units = _complete_basis(field, ve0, u)
    P1 = [[Sx.one() if units[j] == i else Sx.zero() for j in range(ul)] + list(VE[i])
          for i in range(u)]
    U1 = smat_mul(smat_mul(smat_inverse(smat_sigma(P1)), U), P1)
    Ull = [row[:ul] for row in U1[:ul]]
    Uel = [row[:ul] for row in U1[ul:]]
    Q, exps, R = smith_form(Ull)
    if any(a > e for a in exps):
        raise ValidationError(["elementary_divisor_divides_t^e"])
    Rinv = smat_inverse(R) if ul else []
    P2 = [[(Rinv[i][j] if i < ul and j < ul else (Sx.one() if i == j else Sx.zero()))
           for j in range(u)] for i in range(u)]
    A = smat_mul(smat_sigma(R), Q) if ul else []
    L = smat_mul(Uel, Rinv) if ul and r else [[] for _ in range(r)]
    # ell = L Delta^{-1} mod t
    ell = [[L[a][b].shift(-exps[b]).c[0] for b in range(ul)] for a in range(r)]
    A0 = smat_residue(A) if ul else []
    Z0 = _solve_p3(field, ell, exps, e, A0) if ul and r else []
    if Z0 is None:
        raise NeedsFieldExtension(2, "local block does not split from the etale block")
    P3 = [[(Sx.one() if i == j else Sx.zero()) if (i < ul or j >= ul)
           else Sx.const(Z0[i - ul][j]) for j in range(u)] for i in range(u)]
    P = smat_mul(smat_mul(P1, P2), P3)
    Unew = smat_mul(smat_mul(smat_inverse(smat_sigma(P)), U), P)
    exps_all = list(exps) + [e] * r
    U0 = [[Unew[i][j].shift(-exps_all[j]) for j in range(u)] for i in range(u)]
    for j in range(u):
        for i in range(u):
            if Unew[i][j].val() < exps_all[j]:
                raise ValidationError(["normal_form_divisibility"])
    U0s = smat_to_ring(U0, S)
    Ps = smat_to_ring(P, S)
    nb = NormalizedBasis(tuple(tuple(r) for r in U0s), tuple(exps_all), ul,
                         tuple(tuple(r) for r in Ps), M)
    _check_normal_form(nb)
    return nb


def _check_normal_form(nb):
    M = nb.module
    S, e, u, ul = M.S, M.e, nb.u, nb.u0
    U0 = [list(r) for r in nb.U0]
    P = [list(r) for r in nb.P]
    lhs = smat_mul(U0, nb.U1)
    rhs = smat_mul(smat_mul(smat_inverse(smat_sigma(P)), M.matrix), P)
    if not smat_equal(lhs, rhs):
        raise ValidationError(["normal_form_identity"])
    field = S.field
    if kmat_rank(field, smat_residue(U0)) != u:
        raise ValidationError(["U0_invertible"])
    for i in range(ul, u):
        for j in range(ul):
            if U0[j][i].c[0] or U0[i][j].c[0]:
                raise ValidationError(["block_shape_mod_t"])
    # C1: nonzero reductions of m1 are independent
    cols = [[lhs[i][j].c[0] for i in range(u)] for j in range(u)]
    nonzero = [c for c in cols if any(c)]
    if nonzero and kmat_rank(field, [list(r) for r in zip(*nonzero)]) != len(nonzero):
        raise ValidationError(["C1"])


# ---------------------------------------------------------------------------
# Hom, starred Hom
# ---------------------------------------------------------------------------

def hom_space(M, N):
    return HomSpace(M.matrix, N.matrix, M.e, M.S)


def hom(M, N, cap=16):
    """All morphisms M -> N."""
    space = hom_space(M, N)
    _check_cap(space.dimension, cap)
    return [FMorphism.from_B(M, N, space.combine(mask)) if space.basis
            else _zero_morphism(M, N) for mask in range(1 << space.dimension)]


def _check_cap(d, cap):
    from .errors import SolutionSpaceTooLarge
    if d > cap:
        raise SolutionSpaceTooLarge(d, cap)


def _zero_morphism(M, N):
    S = M.S
    B = smat_zero(S, N.u, M.u)
    return FMorphism.from_B(M, N, B)


def r_subspace(M, N, space=None):
    """F2-coordinates (in hom_space(M, N)) spanning R(M, N)."""
    space = space or hom_space(M, N)
    if space.dimension == 0:
        return []
    Mm, jm = mult_quotient(M)
    Ne, ie = etale_sub(N)
    if Mm.u == 0 or Ne.u == 0:
        return []
    mid = hom_space(Mm, Ne)
    out = []
    for Bf in mid.basis:
        B = smat_mul(smat_mul([list(r) for r in ie.B], Bf), [list(r) for r in jm.B])
        c = space.coords(B)
        if c is None:
            raise ValueError("composite is not a morphism")
        out.append(c)
    return f2_span_basis(out)


@dataclass
class StarHom:
    space: object
    r_basis: list
    class_basis: list   # coordinates of representatives of an F2-basis of hom/R

    @property
    def count(self):
        return 1 << len(self.class_basis)

    def representatives(self):
        for mask in range(1 << len(self.class_basis)):
            c = 0
            for i, b in enumerate(self.class_basis):
                if mask >> i & 1:
                    c ^= b
            yield c

    def in_r(self, coords):
        return f2_reduce(coords, self.r_basis) == 0


def hom_star(M, N, cap=16):
    space = hom_space(M, N)
    _check_cap(space.dimension, cap)
    rb = r_subspace(M, N, space)
    classes = []
    reduced = list(rb)
    for i in range(space.dimension):
        v = f2_reduce(1 << i, f2_span_basis(reduced))
        if v:
            classes.append(1 << i)
            reduced = f2_span_basis(reduced + [1 << i])
    return StarHom(space, rb, classes)


def _identity_coords(space, u):
    S = space.S
    return space.coords(smat_identity(S, u))


def is_isomorphic_star(M, N, cap=16):
    """A pair of morphisms inverse to each other modulo R exists."""
    if M.u != N.u:
        return False
    if M.u == 0:
        return True
    hMN, hNM = hom_star(M, N, cap), hom_star(N, M, cap)
    hMM, hNN = hom_star(M, M, cap), hom_star(N, N, cap)
    idM = _identity_coords(hMM.space, M.u)
    idN = _identity_coords(hNN.space, N.u)
    fs = [hMN.space.combine(c) for c in hMN.representatives()]
    gs = [hNM.space.combine(c) for c in hNM.representatives()]
    for Bf in fs:
        for Bg in gs:
            gf = hMM.space.coords(smat_mul(Bg, Bf))
            if gf is None or not hMM.in_r(gf ^ idM):
                continue
            fg = hNN.space.coords(smat_mul(Bf, Bg))
            if fg is not None and hNN.in_r(fg ^ idN):
                return True
    return False


# ---------------------------------------------------------------------------
# sums
# ---------------------------------------------------------------------------

def direct_sum(M, N):
    S = M.S
    u, v = M.u, N.u
    U = [[(M.U[i][j] if i < u and j < u else
           N.U[i - u][j - u] if i >= u and j >= u else S.zero())
          for j in range(u + v)] for i in range(u + v)]
    return FilteredModule(S, M.e, U, M.ring or N.ring)


def diagonal(M):
    S = M.S
    ident = smat_identity(S, M.u)
    return FMorphism.from_B(M, direct_sum(M, M), ident + ident)


def permute(M, perm):
    """Same object with basis vectors reordered: new basis i is old basis perm[i]."""
    S = M.S
    u = M.u
    P = [[S.one() if perm[j] == i else S.zero() for j in range(u)] for i in range(u)]
    return change_basis(M, P)


def change_basis(M, P):
    """Object with U' = sigma(P)^{-1} U P."""
    U = smat_mul(smat_mul(smat_inverse(smat_sigma(P)), M.matrix), P)
    return FilteredModule(M.S, M.e, U, M.ring)


# ---------------------------------------------------------------------------
# base change t = t'^2 and descent
# ---------------------------------------------------------------------------

def _to_sprime(a, Sp):
    coeffs = [0] * Sp.n
    for i, x in enumerate(a.c):
        if 2 * i < Sp.n:
            coeffs[2 * i] = x
    return Sp(coeffs)


def base_change_to_Sprime(M, Sp=None):
    """Same U with t replaced by t'^2; an object of level 2e over S'."""
    if Sp is None:
        Sp = M.S.__class__(M.S.field, 2 * M.S.n, "t'")
    U = [[_to_sprime(a, Sp) for a in row] for row in M.U]
    return FilteredModule(Sp, 2 * M.e, U, M.ring)


def _split_parity(a, S):
    """a(t') = ev(t) + t' od(t) with ev, od in S."""
    ev = [0] * S.n
    od = [0] * S.n
    for i, x in enumerate(a.c):
        if i % 2 == 0 and i // 2 < S.n:
            ev[i // 2] = x
        elif i % 2 == 1 and i // 2 < S.n:
            od[i // 2] = x
    return S(ev), S(od)


def descend_from_Sprime(Mp, S=None):
    """Filtered module over S whose base change is Mp, or NoDescent.

    M^0 is the S-span of phi_1'(M'^1) = m0', seen through the S-basis
    (m0', t' m0') of M'^0; M^1 = M'^1 cap M^0 with phi_1 restricted.
    """
    if Mp.e % 2:
        raise NoDescent("level", "level of an S'-object must be even to descend")
    e = Mp.e // 2
    Sp = Mp.S
    if S is None:
        S = Sp.__class__(Sp.field, Sp.n // 2, "t")
    u = Mp.u
    if u == 0:
        return zero_module(S, e, Mp.ring)
    field = S.field
    # guard precision: work in S_x and truncate at the end
    Sx = S.extend(2 * e * u + 2)
    Ux = [[_split_parity(a, Sx) for a in row] for row in Mp.U]
    # W: M'^1 basis columns written in the S-basis (m0', t' m0') of M'^0
    W = [[None] * u for _ in range(2 * u)]
    for i in range(u):
        for j in range(u):
            ev, od = Ux[i][j]
            W[i][j] = ev
            W[u + i][j] = od
    # M^0 = S-span of m0' (the even part); m1'-combinations in M^0 are
    # those x over S' with odd coordinates zero.  Write x = x_ev + t' x_od.
    # Odd part of m1' x equals U_od x_ev + U_ev x_od.  (t'^2 = t)
    Uev = [[Ux[i][j][0] for j in range(u)] for i in range(u)]
    Uod = [[Ux[i][j][1] for j in range(u)] for i in range(u)]
    Uod_t = [[a.shift(1) for a in r] for r in Uod]
    # block map (x_ev, x_od) -> odd coordinates: [U_od | U_ev]
    # even coordinates: U_ev x_ev + t U_od x_od
    big_odd = [Uod[i] + Uev[i] for i in range(u)]
    kernel = _s_kernel_basis(big_odd, Sx)
    if len(kernel) != u:
        raise NoDescent("rank", "intersection M'^1 cap M^0 is not free of full rank")
    Y = []  # u x u: M^1 basis in m0' coordinates
    Phi = []  # phi_1 of M^1 basis in m0' coordinates
    for vec in kernel:
        x_ev, x_od = vec[:u], vec[u:]
        even = [sum((Uev[i][j] * x_ev[j] + Uod_t[i][j] * x_od[j] for j in range(u)), Sx.zero())
                for i in range(u)]
        Y.append(even)
        # phi_1'(m1' x) = m0' sigma'(x); sigma'(x_ev + t' x_od) = sigma(x_ev) + t' ... the t'
        # part must vanish for the image to lie in M^0: t'^2 sigma(x_od) = t sigma(x_od)
        Phi.append([x_ev[j].frobenius() + x_od[j].frobenius().shift(1) for j in range(u)])
    Y = smat_transpose(Y)
    Phi = smat_transpose(Phi)
    det = smat_det(Phi)
    if det.c[0] == 0:
        raise NoDescent("phi1_generates",
                        "phi_1(M^1) does not generate M^0 over S")
    Unew = smat_mul(smat_inverse(Phi), Y)
    M = FilteredModule(S, e, smat_to_ring(Unew, S), Mp.ring)
    failures = validate(M)
    if failures:
        raise NoDescent(failures[0])
    return M


def _s_kernel_basis(Mx, S):
    """Basis of the kernel of a full-row-rank u x n matrix over k[[t]], read in S.

    Column elimination with minimal-valuation pivots; eliminated entries are
    set to zero explicitly so truncation noise stays above the guard digits.
    """
    rows = [list(r) for r in Mx]
    n = len(rows[0]) if rows else 0
    T = smat_identity(S, n)
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    free_cols = list(range(n))
    for i in range(len(rows)):
        best = None
        for j in free_cols:
            v = cols[j][i].val()
            if v < S.n and (best is None or v < best[0]):
                best = (v, j)
        if best is None:
            continue
        v, j = best
        unit = cols[j][i].shift(-v).inverse()
        for j2 in free_cols:
            if j2 == j or cols[j2][i].is_zero():
                continue
            q = cols[j2][i].shift(-v) * unit
            cols[j2] = [a + q * b for a, b in zip(cols[j2], cols[j])]
            cols[j2][i] = S.zero()
            for r in range(n):
                T[r][j2] = T[r][j2] + q * T[r][j]
        free_cols.remove(j)
    return [[T[r][j] for r in range(n)] for j in free_cols]
