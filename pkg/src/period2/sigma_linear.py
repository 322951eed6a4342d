"""Frobenius-semilinear algebra over k and over S = k[t]/t^N.

Convention: a ``SigmaMap`` with matrix A acts on column coordinate vectors by
x -> A * sigma(x); column i of A is the image of the i-th basis vector.
"""

from dataclasses import dataclass
import functools

from .coeff_rings import GF2m
from .errors import NeedsFieldExtension, SolutionSpaceTooLarge
from .linalg import (F2Map, bits_to_kvec, iter_span, kmat_column_space, kmat_frob,
                     kmat_identity, kmat_kernel, kmat_mul, kmat_order, kmat_rank,
                     kmat_solve, kmat_transpose, kvec_to_bits, smat_adjugate, smat_det,
                     smat_identity, smat_mul, smat_scale, smat_sigma, smat_to_ring)


@dataclass(frozen=True)
class SigmaMap:
    matrix: tuple  # rows of SElement or of field ints
    domain_rank: int


@dataclass(frozen=True)
class FittingSplit:
    basis_change: list  # k-matrix; first rank_invertible columns span L1
    rank_invertible: int


# ---------------------------------------------------------------------------
# residue-level (over k)
# ---------------------------------------------------------------------------

def _kvec_frob(field, x, n=1):
    return [field.frob(a, n) for a in x]


def _apply_col(field, A, x):
    """A * sigma(x)."""
    sx = _kvec_frob(field, x)
    return [_dot(field, row, sx) for row in A]


def _dot(field, row, x):
    acc = 0
    for a, b in zip(row, x):
        if a and b:
            acc ^= field.mul(a, b)
    return acc


def _stable_product(field, A):
    """A sigma(A) ... sigma^{u-1}(A): its column space is the stable image."""
    u = len(A)
    P = kmat_identity(u)
    for i in range(u):
        P = kmat_mul(field, P, kmat_frob(field, A, i))
    return P


def fitting_split(field, A):
    """Split k^u = L1 + L2 for x -> A sigma(x); L1 stable image, L2 = ker phi^u."""
    u = len(A)
    P = _stable_product(field, A)
    L1 = kmat_column_space(field, P)
    # phi^u(x) = P sigma^u(x); kernel is sigma^{-u}(ker P)
    L2 = [_kvec_frob(field, v, -u) for v in kmat_kernel(field, P, u)]
    cols = L1 + L2
    basis = kmat_transpose(cols) if cols else []
    return FittingSplit(basis_change=basis, rank_invertible=len(L1))


def _fixed_space_bits(field, A):
    """F2-basis of {x : x = A sigma(x)} as bit vectors."""
    u, m = len(A), field.m
    images = []
    for i in range(u):
        for b in range(m):
            x = [0] * u
            x[i] = 1 << b
            y = _apply_col(field, A, x)
            images.append(kvec_to_bits([p ^ q for p, q in zip(x, y)], m))
    return F2Map(images).kernel()


def _restricted_matrix(field, A, L1):
    """Matrix G with A sigma(P) = P G for the columns P of the stable image."""
    r = len(L1)
    P = kmat_transpose(L1)
    AsP = kmat_mul(field, A, kmat_frob(field, P))
    G = [[0] * r for _ in range(r)]
    for j in range(r):
        col = [AsP[i][j] for i in range(len(A))]
        sol = kmat_solve(field, P, col)
        for i in range(r):
            G[i][j] = sol[i]
    return G


def split_degree(field, A):
    """Degree d such that x = A sigma(x) has a full F2-space of solutions over F_{2^(md)}."""
    u = len(A)
    P = _stable_product(field, A)
    L1 = kmat_column_space(field, P)
    if not L1:
        return 1
    G = _restricted_matrix(field, A, L1)
    # sigma^m(x) = Q^{-1} x on fixed vectors, Q = G sigma(G) ... sigma^{m-1}(G)
    Q = kmat_identity(len(G))
    for i in range(field.m):
        Q = kmat_mul(field, Q, kmat_frob(field, G, i))
    return kmat_order(field, Q)


def fixed_vectors_column(field, A):
    """F2-basis (as k column vectors) of {x : x = A sigma(x)}.

    Raises NeedsFieldExtension when the space is smaller than the Fitting rank.
    """
    u = len(A)
    bits = _fixed_space_bits(field, A)
    r = kmat_rank(field, _stable_product(field, A)) if u else 0
    if len(bits) < r:
        raise NeedsFieldExtension(split_degree(field, A))
    return [bits_to_kvec(b, u, field.m) for b in bits]


def frobenius_fixed_space(field, A):
    """F2-basis of {x in k^u : x^(2) A = x} (row vectors); A invertible."""
    u = len(A)
    basis = fixed_vectors_column(field, kmat_transpose(A))
    if len(basis) < u:
        raise NeedsFieldExtension(split_degree(field, kmat_transpose(A)))
    return basis


def brute_force_fixed_space(field, A):
    """All x in k^u with x^(2) A = x, by enumeration (test oracle)."""
    u = len(A)
    sols = []
    for bits in range(field.size ** u):
        x = bits_to_kvec(bits, u, field.m)
        sx = [field.sq(a) for a in x]
        y = [_dot(field, sx, [A[i][j] for i in range(u)]) for j in range(u)]
        if y == x:
            sols.append(x)
    return sols


# ---------------------------------------------------------------------------
# residue field extensions
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def embed_field(field, d):
    """(K, emb) with K = F_{2^(md)} and emb: k -> K a field embedding."""
    K = GF2m(field.m * d)
    coeffs = [(field.modulus >> j) & 1 for j in range(field.m + 1)]
    for r in K.elements():
        acc, power = 0, 1
        for c in coeffs:
            if c:
                acc ^= power
            power = K.mul(power, r)
        if acc == 0:
            root = r
            break
    table = []
    for a in field.elements():
        acc, power = 0, 1
        for j in range(field.m):
            if a >> j & 1:
                acc ^= power
            power = K.mul(power, root)
        table.append(acc)
    return K, tuple(table)


def _affine_residue_solution(field, A0, b0):
    """Some x in k^u with x + A0 sigma(x) = b0, or None."""
    u, m = len(A0), field.m
    images = []
    for i in range(u):
        for b in range(m):
            x = [0] * u
            x[i] = 1 << b
            y = _apply_col(field, A0, x)
            images.append(kvec_to_bits([p ^ q for p, q in zip(x, y)], m))
    sol = F2Map(images).solve(kvec_to_bits(b0, m))
    return None if sol is None else bits_to_kvec(sol, u, m)


def needed_extension_degree(field, A0, b0, max_degree=12):
    for d in range(2, max_degree + 1):
        K, emb = embed_field(field, d)
        A = [[emb[a] for a in row] for row in A0]
        if _affine_residue_solution(K, A, [emb[x] for x in b0]) is not None:
            return d
    return None


# ---------------------------------------------------------------------------
# over S
# ---------------------------------------------------------------------------

def solve_id_minus_phi(A, b):
    """x with x - A sigma(x) = b exactly in S (A: u x u over S, b: list over S)."""
    u = len(b)
    if u == 0:
        return []
    S = b[0].ring
    field = S.field
    n = S.n
    A0 = [[a.c[0] for a in row] for row in A]
    b0 = [x.c[0] for x in b]
    x0 = _affine_residue_solution(field, A0, b0)
    if x0 is None:
        raise NeedsFieldExtension(needed_extension_degree(field, A0, b0) or 0)
    digits = [[0] * n for _ in range(u)]
    for i in range(u):
        digits[i][0] = x0[i]
    for k in range(1, n):
        for row in range(u):
            acc = b[row].c[k]
            for col in range(u):
                coeff = A[row][col].c
                for i in range(0, k // 2 + 1):
                    j = k - 2 * i
                    xi = digits[col][i]
                    if coeff[j] and xi:
                        acc ^= field.mul(coeff[j], field.sq(xi))
            digits[row][k] = acc
    return [S(d) for d in digits]


def fixed_vectors_over_s(A):
    """F2-basis of {x in S^u : x = A sigma(x)}; each solution lifts uniquely from its residue."""
    u = len(A)
    if u == 0:
        return []
    S = A[0][0].ring
    field = S.field
    residues = fixed_vectors_column(field, [[a.c[0] for a in row] for row in A])
    out = []
    for x0 in residues:
        digits = [[0] * S.n for _ in range(u)]
        for i in range(u):
            digits[i][0] = x0[i]
        for k in range(1, S.n):
            for row in range(u):
                acc = 0
                for col in range(u):
                    coeff = A[row][col].c
                    for i in range(0, k // 2 + 1):
                        j = k - 2 * i
                        xi = digits[col][i]
                        if coeff[j] and xi:
                            acc ^= field.mul(coeff[j], field.sq(xi))
                digits[row][k] = acc
        out.append([S(d) for d in digits])
    return out


def v_matrix(U, e, S_out=None):
    """t^e U^{-1}, computed from U as an exact polynomial matrix.

    U is padded to a longer ring so the division by det(U) loses nothing
    below t^{S_out.n}.
    """
    u = len(U)
    S = U[0][0].ring
    S_out = S if S_out is None else S_out
    Sx = S_out.extend(e * u + 1 + max(0, S.n - S_out.n))
    Ux = smat_to_ring(U, Sx)
    det = smat_det(Ux)
    v = det.val()
    unit = det.shift(-v).inverse()
    V = [[a.shift(e - v) * unit for a in row] for row in smat_adjugate(Ux)]
    return smat_to_ring(V, S_out)


class HomSpace:
    """F2-space of B with sigma(B) U_M = U_N B, each B determined by B mod t^(e+1)."""

    def __init__(self, U_M, U_N, e, S):
        self.U_M, self.U_N, self.e, self.S = U_M, U_N, e, S
        self.u_M, self.u_N = len(U_M), len(U_N)
        self.D = e + 1
        self.basis = self._solve()
        lows = [self.low_bits(B) for B in self.basis]
        self._coord_map = F2Map(lows)

    @property
    def dimension(self):
        return len(self.basis)

    def low_bits(self, B):
        m = self.S.field.m
        out = 0
        pos = 0
        for i in range(self.u_N):
            for j in range(self.u_M):
                for k in range(self.D):
                    out |= B[i][j].c[k] << pos
                    pos += m
        return out

    def coords(self, B):
        """Coordinates of B in the basis, or None when B is not in the space."""
        c = self._coord_map.solve(self.low_bits(B))
        return c

    def combine(self, mask):
        B = [[self.S.zero() for _ in range(self.u_M)] for _ in range(self.u_N)]
        i = 0
        while mask:
            if mask & 1:
                B = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(B, self.basis[i])]
            mask >>= 1
            i += 1
        return B

    def _solve(self):
        if self.u_M == 0 or self.u_N == 0:
            return []
        e, D, S = self.e, self.D, self.S
        field = S.field
        m = field.m
        Sx = S.extend(e + 1)
        V = v_matrix(self.U_N, e, Sx)
        UM = smat_to_ring(self.U_M, Sx)
        L = D + e
        images = []
        for i in range(self.u_N):
            for j in range(self.u_M):
                W = [[V[r][i] * UM[j][c] for c in range(self.u_M)] for r in range(self.u_N)]
                for k in range(D):
                    for b in range(m):
                        c = 1 << b
                        img = 0
                        pos = 0
                        sc = field.sq(c)
                        for r in range(self.u_N):
                            for cc in range(self.u_M):
                                w = W[r][cc].c
                                for deg in range(L):
                                    val = 0
                                    if r == i and cc == j and deg == k + e:
                                        val ^= c
                                    src = deg - 2 * k
                                    if 0 <= src < len(w) and w[src]:
                                        val ^= field.mul(sc, w[src])
                                    img |= val << pos
                                    pos += m
                        images.append(img)
        kernel = F2Map(images).kernel()
        basis = []
        for vec in kernel:
            B = [[Sx.zero() for _ in range(self.u_M)] for _ in range(self.u_N)]
            pos = 0
            for i in range(self.u_N):
                for j in range(self.u_M):
                    coeffs = [0] * Sx.n
                    for k in range(D):
                        coeffs[k] = (vec >> pos) & ((1 << m) - 1)
                        pos += m
                    B[i][j] = Sx(coeffs)
            B = _extend_solution(B, V, UM, e, D, Sx)
            basis.append(smat_to_ring(B, S))
        return basis


def _extend_solution(B, V, UM, e, known, Sx):
    """Iterate B <- t^{-e} V sigma(B) U_M until B is known to all digits."""
    while known < Sx.n:
        R = smat_mul(smat_mul(V, smat_sigma(B)), UM)
        new_known = min(Sx.n, 2 * known - e)
        B = [[a.shift(-e).truncate(new_known) for a in row] for row in R]
        if new_known <= known:
            raise ValueError("hom extension stalled")
        known = new_known
    return B


def solve_semilinear_hom(U_M, U_N, e, cap=16):
    """All pairs (A, B) with sigma(B) U_M = U_N B and A = sigma(B)."""
    S = (U_M[0][0] if U_M else U_N[0][0]).ring
    space = HomSpace(U_M, U_N, e, S)
    if space.dimension > cap:
        raise SolutionSpaceTooLarge(space.dimension, cap)
    out = []
    for mask in range(1 << space.dimension):
        B = space.combine(mask)
        out.append((smat_sigma(B), B))
    return out


def brute_force_hom(U_M, U_N, e):
    """Enumerate every B with entries of degree < N_S and keep exact solutions (oracle)."""
    S = U_M[0][0].ring
    field = S.field
    u_M, u_N = len(U_M), len(U_N)
    Sx = S.extend(e)
    V = v_matrix(U_N, e, Sx)
    UM = smat_to_ring(U_M, Sx)
    n = S.n
    total = u_M * u_N * n
    sols = []
    for code in range(field.size ** total):
        entries = []
        c = code
        for _ in range(u_M * u_N):
            coeffs = []
            for _ in range(n):
                coeffs.append(c % field.size)
                c //= field.size
            entries.append(Sx(coeffs))
        B = [entries[i * u_M:(i + 1) * u_M] for i in range(u_N)]
        lhs = [[a.shift(e) for a in row] for row in B]
        rhs = smat_mul(smat_mul(V, smat_sigma(B)), UM)
        if all(x == y for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2)):
            sols.append(smat_to_ring(B, S))
    return sols


def span_members(basis):
    return list(iter_span(basis))
