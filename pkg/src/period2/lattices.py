"""Finite O-submodules of O^n: echelon forms, membership, quotients, preimages.

Vectors are int64 arrays of shape (n, d) in the coefficient layout of
``RingTower``.  A lattice L is handled through its image in (O/pi^P)^n, which
is exact once pi^c O^n lies in L for some c < P (the conductor).  Elimination
uses the Howell form over the chain ring O/pi^P: after choosing a pivot row g
with pivot pi^v, the row pi^(P-v) g is added so intersections with coordinate
subspaces stay generated by the remaining rows.
"""

import numpy as np

from .errors import PrecisionExhausted


class OLattice:
    """O-span of the given generators inside O^ncols (plus pi^P O^ncols)."""

    def __init__(self, ring, ncols, generators, P=None):
        self.ring = ring
        self.ncols = ncols
        self.P = ring.N_pi if P is None else min(P, ring.N_pi)
        gens = _as_rows(ring, ncols, generators)
        gens = ring.arr_mask(gens, self.P)
        self.pivots, _ = howell(ring, gens, self.P, range(ncols))
        self._conductor = None

    # -- basic data --
    @property
    def pivot_valuations(self):
        return {c: v for c, v, _ in self.pivots}

    def is_full_rank(self):
        return len(self.pivots) == self.ncols

    def conductor(self):
        """Least c with pi^c O^n inside L; PrecisionExhausted when c >= P."""
        if self._conductor is None:
            if not self.is_full_rank():
                raise PrecisionExhausted("lattice is not of full rank at working precision")
            lo, hi = max(v for _, v, _ in self.pivots), self.P
            if not self._contains_power(hi - 1):
                raise PrecisionExhausted("lattice conductor exceeds working precision",
                                         precision=self.P)
            hi -= 1
            while lo < hi:
                mid = (lo + hi) // 2
                if self._contains_power(mid):
                    hi = mid
                else:
                    lo = mid + 1
            self._conductor = lo
        return self._conductor

    def _contains_power(self, a):
        r = self.ring
        X = np.zeros((self.ncols, self.ncols, r.d), dtype=np.int64)
        pa = r.pi_power(a).v
        for c in range(self.ncols):
            X[c, c] = pa
        red, _ = self._reduce(X, self.P)
        return not np.any(red)

    # -- reduction --
    def _reduce(self, X, Q):
        """Canonical representatives of the rows of X modulo L + pi^Q O^n.

        Returns (reduced, low_digits) where low_digits[c] is a (b, v_c) array of
        k-elements (as ints) giving the kept digits at pivot column c.
        """
        r = self.ring
        m = r.m
        X = r.arr_mask(np.array(X, dtype=np.int64) % r.mod, Q)
        b = X.shape[0]
        digits = {}
        for c, v, g in self.pivots:
            col = X[:, c, :]
            low = np.zeros_like(col)
            work = col.copy()
            ds = np.zeros((b, v), dtype=np.int64)
            pik = np.zeros(r.d, dtype=np.int64)
            pik[0] = 1
            pi1 = r.pi_power(1).v
            for i in range(min(v, Q)):
                res = np.zeros_like(work)
                res[:, :m] = work[:, :m] & 1
                ds[:, i] = _bits_to_int(res[:, :m])
                low = (low + r.arr_mul(res, pik[None, :])) % r.mod
                work = r.arr_div_pi((work - res) % r.mod, 1)
                pik = r.arr_mul(pik, pi1)
            digits[c] = ds
            high = r.arr_mask((col - low) % r.mod, Q)
            if np.any(high):
                q = r.arr_div_pi(high, v) if v else high
                X = (X - r.arr_mul(q[:, None, :], g[None, :, :])) % r.mod
                X = r.arr_mask(X, Q)
            X[:, c, :] = low
        return X, digits

    def _effective_precision(self, prec):
        Q = self.P if prec is None else min(self.P, prec)
        if self.conductor() > Q:
            raise PrecisionExhausted("element precision below lattice conductor",
                                     precision=Q, conductor=self.conductor())
        return Q

    def contains_many(self, X, prec=None):
        X = _as_rows(self.ring, self.ncols, X)
        if X.shape[0] == 0:
            return np.zeros(0, dtype=bool)
        Q = self._effective_precision(prec)
        red, digits = self._reduce(X, Q)
        return ~np.any(red.reshape(red.shape[0], self.ncols * self.ring.d), axis=1)

    def contains(self, x, prec=None):
        return bool(self.contains_many(np.asarray(x)[None], prec)[0])

    def canonical(self, X, prec=None):
        Q = self._effective_precision(prec)
        return self._reduce(_as_rows(self.ring, self.ncols, X), Q)[0]

    def quotient_coords(self, X, prec=None):
        """F2 coordinates of classes in O^n / L; requires 2 O^n inside L."""
        X = _as_rows(self.ring, self.ncols, X)
        Q = self._effective_precision(prec)
        _, digits = self._reduce(X, Q)
        m = self.ring.m
        out = [0] * X.shape[0]
        pos = 0
        for c, v, _ in self.pivots:
            ds = digits[c]
            for i in range(v):
                for row in range(X.shape[0]):
                    out[row] |= int(ds[row, i]) << pos
                pos += m
        return out

    def quotient_dimension(self):
        return sum(v for _, v, _ in self.pivots) * self.ring.m

    def hermite_rows(self):
        return np.array([g for _, _, g in self.pivots], dtype=np.int64).reshape(
            len(self.pivots), self.ncols, self.ring.d)

    def f2_spanning_vectors(self):
        """Vectors whose F2-span maps onto L / 2L (generators times k-basis times pi^i)."""
        r = self.ring
        rows = self.hermite_rows()
        out = []
        for g in rows:
            for i in range(2 * r.e):
                pi_i = r.pi_power(i).v
                for bit in range(r.m):
                    z = np.zeros(r.d, dtype=np.int64)
                    z[bit] = 1
                    out.append(r.arr_mul(r.arr_mul(z, pi_i)[None, :], g))
        return np.array(out, dtype=np.int64).reshape(len(out), self.ncols, r.d)


def _bits_to_int(arr):
    out = np.zeros(arr.shape[0], dtype=np.int64)
    for j in range(arr.shape[1]):
        out |= (arr[:, j] & 1) << j
    return out


def _as_rows(ring, ncols, generators):
    if isinstance(generators, np.ndarray):
        arr = generators.astype(np.int64)
        if arr.ndim == 2:
            arr = arr[None]
        return arr.reshape(arr.shape[0], ncols, ring.d) % ring.mod
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if not gens:
        return np.zeros((0, ncols, ring.d), dtype=np.int64)
    return np.array(gens, dtype=np.int64).reshape(len(gens), ncols, ring.d) % ring.mod


def howell(ring, rows, P, columns):
    """Echelonise rows over O/pi^P in the given column order.

    Returns (pivots, remaining) where pivots is a list of (column, valuation,
    row with pivot exactly pi^valuation) and remaining holds the rows that are
    zero on every processed column.
    """
    r = ring
    rows = r.arr_mask(np.array(rows, dtype=np.int64) % r.mod, P)
    pivots = []
    for c in columns:
        if rows.shape[0] == 0:
            break
        vals = np.minimum(r.arr_valuation(rows[:, c, :]), P)
        i = int(np.argmin(vals))
        v = int(vals[i])
        if v >= P:
            continue
        g = rows[i].copy()
        rest = np.delete(rows, i, axis=0)
        w = r.arr_div_pi(g[c], v) if v else g[c]
        winv = r.arr_unit_inverse(r.arr_mask(w, P - v) if v else w)
        g = r.arr_mask(r.arr_mul(winv[None, :], g), P)
        g[c] = r.pi_power(v).v
        if rest.shape[0]:
            nz = np.any(rest[:, c, :] != 0, axis=1)
            if np.any(nz):
                q = rest[nz, c, :]
                q = r.arr_div_pi(q, v) if v else q
                upd = (rest[nz] - r.arr_mul(q[:, None, :], g[None, :, :])) % r.mod
                upd = r.arr_mask(upd, P)
                upd[:, c, :] = 0
                rest[nz] = upd
        extra = []
        if v > 0:
            ex = r.arr_mask(r.arr_mul(r.pi_power(P - v).v[None, :], g), P)
            ex[c] = 0
            if np.any(ex):
                extra.append(ex)
        if extra:
            rest = np.concatenate([rest, np.array(extra)], axis=0)
        keep = np.any(rest.reshape(rest.shape[0], rows.shape[1] * r.d) != 0, axis=1)
        rows = rest[keep]
        pivots.append((c, v, g))
    return pivots, rows


def lattice_preimage(ring, images, target, n_src, P=None):
    """{x in O^n_src : f(x) in target}, f given by images[i] = f(e_i).

    ``target`` is an OLattice; the result is an OLattice in O^n_src.
    """
    P = target.P if P is None else P
    r = ring
    n_t = target.ncols
    width = n_t + n_src
    rows = []
    for i in range(n_src):
        row = np.zeros((width, r.d), dtype=np.int64)
        row[:n_t] = images[i]
        row[n_t + i, 0] = 1
        rows.append(row)
    for g in target.hermite_rows():
        row = np.zeros((width, r.d), dtype=np.int64)
        row[:n_t] = g
        rows.append(row)
    for c in range(n_t):
        row = np.zeros((width, r.d), dtype=np.int64)
        row[c] = r.pi_power(P).v if P < r.N_pi else 0
        if np.any(row):
            rows.append(row)
    _, remaining = howell(r, np.array(rows), P, range(n_t))
    gens = [row[n_t:] for row in remaining]
    for c in range(n_src):
        z = np.zeros((n_src, r.d), dtype=np.int64)
        if P < r.N_pi:
            z[c] = r.pi_power(P).v
            gens.append(z)
    return OLattice(r, n_src, gens, P)


def lattice_intersection(A, B):
    """A cap B for lattices in the same O^n."""
    r = A.ring
    n = A.ncols
    P = min(A.P, B.P)
    width = 2 * n
    rows = []
    for g in A.hermite_rows():
        row = np.zeros((width, r.d), dtype=np.int64)
        row[:n] = g
        row[n:] = g
        rows.append(row)
    for g in B.hermite_rows():
        row = np.zeros((width, r.d), dtype=np.int64)
        row[:n] = g
        rows.append(row)
    _, remaining = howell(r, np.array(rows).reshape(len(rows), width, r.d), P, range(n))
    gens = [row[n:] for row in remaining]
    return OLattice(r, n, gens, P)


def lattice_sum(A, B):
    rows = list(A.hermite_rows()) + list(B.hermite_rows())
    return OLattice(A.ring, A.ncols, rows, min(A.P, B.P))


def scaled(L, scalar_v):
    """scalar * L for a scalar given as a coefficient vector."""
    r = L.ring
    rows = r.arr_mul(np.asarray(scalar_v)[None, None, :], L.hermite_rows())
    return OLattice(r, L.ncols, rows, L.P)
