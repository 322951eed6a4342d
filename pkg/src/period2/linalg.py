"""Exact linear algebra over F2 (bit rows), over k = F_{2^m}, and over S.

F2 vectors are Python ints; bit i is coordinate i.  A k-vector of length u is
encoded over F2 as the concatenation of the m-bit encodings of its entries.
"""

from .errors import NotDivisible


# ---------------------------------------------------------------------------
# F2
# ---------------------------------------------------------------------------

class F2Map:
    """An F2-linear map given by the images of the input basis vectors."""

    def __init__(self, images, n_in=None):
        self.images = list(images)
        self.n_in = len(self.images) if n_in is None else n_in
        self._reduced = None

    def _reduce(self):
        if self._reduced is None:
            # rows (image, combination); pivots keyed by lowest set bit of image
            pivots = {}
            kernel = []
            for i, img in enumerate(self.images):
                comb = 1 << i
                while img:
                    low = img & -img
                    if low in pivots:
                        pimg, pcomb = pivots[low]
                        img ^= pimg
                        comb ^= pcomb
                    else:
                        pivots[low] = (img, comb)
                        break
                if not img:
                    kernel.append(comb)
            self._reduced = (pivots, kernel)
        return self._reduced

    def kernel(self):
        return list(self._reduce()[1])

    def rank(self):
        return len(self._reduce()[0])

    def solve(self, target):
        """Some x with map(x) = target, or None."""
        pivots, _ = self._reduce()
        comb = 0
        img = target
        while img:
            low = img & -img
            if low not in pivots:
                return None
            pimg, pcomb = pivots[low]
            img ^= pimg
            comb ^= pcomb
        return comb

    def apply(self, x):
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= self.images[i]
            x >>= 1
            i += 1
        return out


def f2_rank(vectors):
    return F2Map(vectors).rank()


def f2_span_basis(vectors):
    """Reduced basis of the span (pivot = lowest set bit)."""
    basis = []
    for v in vectors:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            low = v & -v
            basis = [b ^ v if b & low else b for b in basis]
            basis.append(v)
    return basis


def f2_reduce(v, basis):
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def f2_in_span(v, basis):
    return f2_reduce(v, basis) == 0


def f2_complement_coords(vectors, sub_basis):
    """Reduce vectors modulo the span of sub_basis; returns reduced basis of the quotient."""
    sub = f2_span_basis(sub_basis)
    reduced = [f2_reduce(v, sub) for v in vectors]
    return f2_span_basis([r for r in reduced if r])


def iter_span(basis):
    """All 2^len(basis) F2-combinations."""
    n = len(basis)
    for mask in range(1 << n):
        v = 0
        for i in range(n):
            if mask >> i & 1:
                v ^= basis[i]
        yield v


# ---------------------------------------------------------------------------
# k-vectors <-> F2 bits
# ---------------------------------------------------------------------------

def kvec_to_bits(vec, m):
    out = 0
    for i, a in enumerate(vec):
        out |= a << (i * m)
    return out


def bits_to_kvec(bits, u, m):
    mask = (1 << m) - 1
    return [(bits >> (i * m)) & mask for i in range(u)]


# ---------------------------------------------------------------------------
# k = F_{2^m}: matrices as lists of rows of field ints
# ---------------------------------------------------------------------------

def kmat_mul(field, A, B):
    n, k, p = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        for j in range(k):
            a = A[i][j]
            if a:
                row = B[j]
                for l in range(p):
                    if row[l]:
                        out[i][l] ^= field.mul(a, row[l])
    return out


def kmat_frob(field, A, n=1):
    return [[field.frob(x, n) for x in row] for row in A]


def kmat_identity(u):
    return [[1 if i == j else 0 for j in range(u)] for i in range(u)]


def kmat_transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def kmat_rref(field, A):
    """Row-reduced echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in A]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x ^ field.mul(f, y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def kmat_rank(field, A):
    return len(kmat_rref(field, A)[1]) if A else 0


def kmat_kernel(field, A, ncols=None):
    """Basis (list of column vectors) of {x : A x = 0}."""
    ncols = len(A[0]) if A else (ncols or 0)
    rows, pivots = kmat_rref(field, A) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, c in zip(rows, pivots):
            x[c] = r[f]
        basis.append(x)
    return basis


def kmat_column_space(field, A):
    """Basis of the column space of A as a list of column vectors."""
    if not A:
        return []
    rows, pivots = kmat_rref(field, kmat_transpose(A))
    return [list(r) for r in rows]


def kmat_inverse(field, A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows, pivots = kmat_rref(field, aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise NotDivisible("matrix over k is singular")
    return [r[n:] for r in rows]


def kmat_solve(field, A, b):
    """Some x with A x = b, or None."""
    n = len(A)
    ncols = len(A[0]) if n else 0
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    rows, pivots = kmat_rref(field, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in zip(rows, pivots):
        x[c] = r[ncols]
    return x


def kmat_order(field, A, limit=10000):
    """Multiplicative order of an invertible k-matrix."""
    u = len(A)
    ident = kmat_identity(u)
    P = [list(r) for r in A]
    for k in range(1, limit + 1):
        if P == ident:
            return k
        P = kmat_mul(field, P, A)
    raise ValueError("matrix order exceeds limit")


# ---------------------------------------------------------------------------
# S = k[t]/t^n: matrices as lists of rows of SElement
# ---------------------------------------------------------------------------

def smat_zero(S, r, c):
    z = S.zero()
    return [[z] * c for _ in range(r)]


def smat_identity(S, u):
    return [[S.one() if i == j else S.zero() for j in range(u)] for i in range(u)]


def smat_mul(A, B):
    if not A or not B:
        return [[] for _ in A] if A else []
    S = A[0][0].ring if A[0] else B[0][0].ring
    n, k, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for l in range(p):
            acc = S.zero()
            for j in range(k):
                a = A[i][j]
                b = B[j][l]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def smat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def smat_sigma(A):
    return [[a.frobenius() for a in row] for row in A]


def smat_transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def smat_scale(A, s):
    return [[a * s for a in row] for row in A]


def smat_shift(A, k):
    return [[a.shift(k) for a in row] for row in A]


def smat_to_ring(A, S):
    return [[a.to_ring(S) for a in row] for row in A]


def smat_residue(A):
    return [[a.c[0] for a in row] for row in A]


def smat_digit(A, n):
    return [[a.c[n] if n < a.ring.n else 0 for a in row] for row in A]


def smat_equal(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb)) and len(A) == len(B)


def smat_det(A):
    """Determinant by cofactor expansion (u <= 4 in practice)."""
    n = len(A)
    if n == 0:
        return None
    S = A[0][0].ring
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] + A[0][1] * A[1][0]
    acc = S.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        acc = acc + A[0][j] * smat_det(minor)
    return acc


def smat_adjugate(A):
    n = len(A)
    S = A[0][0].ring
    if n == 1:
        return [[S.one()]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            adj[j][i] = smat_det(minor)
    return adj


def smat_inverse(A):
    """Inverse of a matrix whose determinant is a unit."""
    if not A:
        return []
    det = smat_det(A)
    inv = det.inverse()
    return smat_scale(smat_adjugate(A), inv)


def smat_min_valuation(A):
    return min((a.val() for row in A for a in row), default=None)


def smat_is_zero(A):
    return all(a.is_zero() for row in A for a in row)
