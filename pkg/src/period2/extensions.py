"""Order-2 group schemes and extensions of a group scheme H by mu_eta.

mu_eta is Spec O0[X] with X^2 = eta X and Delta X = X(x)1 + 1(x)X + eta_tilde X(x)X,
where eta_tilde = pi0^r, eta * eta_tilde = -2 and pi0 = pi^2.

An extension class is represented by a nilpotent element f of the algebra B of
H, possibly after the quadratic scalar extension O' = O[pi'] with pi'^2 = pi.
Its scheme is built from g = E(f), E the Artin-Hasse series, on B[Z] with
W = 1 + eta_tilde Z, where W^2 = g^2 and Delta W = (W (x) W) Delta(g) / (g (x) g).
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .augmented_algebras import (AlgElement, SquareFreeAlgebra, loc_lattice, mu_eta)
from .coeff_rings import RingTower
from .errors import NotDivisible, NotNilpotent, ValidationError
from .filtered_modules import is_isomorphic_star, rank_one
from .functor_g import g_functor
from .group_schemes import (GroupScheme, comultiply, delta_respects_relations,
                            solve_coaddition, tensor_to_json, verify_hopf)
from .lubin_tate import (artin_hasse, delta_lt, evaluate_univariate, formal_neg,
                         formal_sum, lt_double, nilpotent_powers)


# ---------------------------------------------------------------------------
# order 2
# ---------------------------------------------------------------------------

@dataclass
class MuEta:
    """mu_eta over a ring tower, with eta_tilde = pi0^r."""

    ring: RingTower
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= self.ring.e:
            raise ValueError("r must lie in [0, e]")

    @property
    def eta_tilde(self):
        return self.ring.pi_power(2 * self.r)

    @property
    def eta(self):
        return -self.ring.two_div_pi_power(2 * self.r)

    def algebra(self):
        return mu_eta(self.ring, self.r)

    def group_scheme(self):
        return solve_coaddition(self.algebra())

    def to_json(self):
        return {"r": self.r, "eta": self.eta.coeffs, "eta_tilde": self.eta_tilde.coeffs}


def classify_order2(e, m=1, N=6, ring=None):
    """The e+1 classes (MuEta(r), S t^r) for r = 0..e, each checked through g_functor."""
    if e < 1:
        raise ValueError("e must be positive")
    ring = RingTower(m, e, N) if ring is None else ring
    S = ring.S
    out = []
    for r in range(e + 1):
        M = rank_one(S, e, r, ring)
        G = g_functor(M, ring)
        mu = MuEta(ring, r)
        ratio_val = G.algebra.eta[0].valuation_floor() - mu.eta.valuation_floor()
        if ratio_val != 0:
            raise ValidationError([f"g_functor(S t^{r}) is not mu_eta up to a unit"])
        report = verify_hopf(G)
        if not report.passed:
            raise ValidationError([f"mu_eta with r={r} fails {report.witnesses}"])
        out.append((mu, M))
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            if is_isomorphic_star(out[a][1], out[b][1]):
                raise ValidationError([f"classes r={a} and r={b} are isomorphic"])
    return out


# ---------------------------------------------------------------------------
# coalgebra structures given on generators
# ---------------------------------------------------------------------------

@dataclass
class Coalgebra:
    """Square-free algebra with Delta given on the generators."""

    algebra: SquareFreeAlgebra
    deltas: list
    prec: int
    _delta_cache: dict = dc_field(default_factory=dict, repr=False)

    def delta_generator(self, i):
        return self.deltas[i]

    def delta_monomial(self, p):
        return GroupScheme.delta_monomial(self, p)

    @property
    def rank(self):
        return self.algebra.n

    def to_json(self):
        A = self.algebra
        return {"rank": A.n,
                "relations": [tensor_to_json(AlgElement(A, r, self.prec)) for r in A.relations],
                "delta": [tensor_to_json(d) for d in self.deltas]}


def as_coalgebra(G):
    A = G.algebra
    return Coalgebra(A, [G.delta_generator(i) for i in range(A.g)], G.prec)


def trivial_coalgebra(ring):
    A = SquareFreeAlgebra(ring, 0, [])
    return Coalgebra(A, [], ring.N_pi)


def quadratic_extension(ring):
    """The tower for O' = O[pi'] with pi'^2 = pi: Eisenstein polynomial E(x^2)."""
    E2 = [0] * (4 * ring.e + 1)
    for i, c in enumerate(ring.eisenstein):
        E2[2 * i] = c
    return RingTower(ring.m, 2 * ring.e, ring.N, ring.N_S, E2, ring.field.modulus)


def _embed_vec(v, ring2):
    """O-digits at pi^i move to pi'^(2i)."""
    m = ring2.m
    out = np.zeros(v.shape[:-1] + (ring2.d,), dtype=np.int64)
    for i in range(v.shape[-1] // m):
        out[..., 2 * i * m:(2 * i + 1) * m] = v[..., i * m:(i + 1) * m]
    return out


def base_change_coalgebra(H, ring2):
    """H over O' through pi -> pi'^2."""
    A = H.algebra
    A2 = SquareFreeAlgebra(ring2, A.g, [_embed_vec(r, ring2) for r in A.relations])
    T2 = A2.square()
    deltas = [T2.element(_embed_vec(d.v, ring2), 2 * d.prec) for d in H.deltas]
    return Coalgebra(A2, deltas, 2 * H.prec)


def embed_element(x, A2):
    return A2.element(_embed_vec(x.v, A2.ring), 2 * x.prec)


# ---------------------------------------------------------------------------
# extension data
# ---------------------------------------------------------------------------

@dataclass
class ExtElement:
    """A candidate class f over the base H, for mu_eta with eta_tilde = pi0^r.

    ``pi0_step`` is the exponent of pi0 in the working uniformizer: 2 over O,
    4 over O'.  The base relations must have O0 coefficients, so that the
    monomials are also a basis of B0.
    """

    base: Coalgebra
    r: int
    f: AlgElement
    pi0_step: int = 2

    def __post_init__(self):
        ring = self.base.algebra.ring
        if self.f.alg is not self.base.algebra:
            raise ValidationError(["f is not an element of the base algebra"])
        if not 0 <= self.r * self.pi0_step <= 2 * ring.e:
            raise ValueError("eta_tilde must divide 2")
        for i, rel in enumerate(self.base.algebra.relations):
            if not in_o0(AlgElement(self.base.algebra, rel, ring.N_pi), self.pi0_step):
                raise ValidationError([f"relation {i} is not defined over O0"])

    @property
    def ring(self):
        return self.base.algebra.ring

    @property
    def eta_tilde_exponent(self):
        return self.r * self.pi0_step

    @property
    def eta_tilde(self):
        return self.ring.pi_power(self.eta_tilde_exponent)

    @property
    def eta(self):
        return -self.ring.two_div_pi_power(self.eta_tilde_exponent)

    def with_f(self, f):
        return ExtElement(self.base, self.r, f, self.pi0_step)

    def to_json(self):
        return {"r": self.r, "pi0_step": self.pi0_step,
                "f": tensor_to_json(self.f), "base": self.base.to_json()}


def ext_element(base, r, f, extend=False):
    """ExtElement from a GroupScheme or Coalgebra; ``extend`` moves to O'."""
    H = as_coalgebra(base) if isinstance(base, GroupScheme) else base
    if not extend:
        return ExtElement(H, r, f)
    ring2 = quadratic_extension(H.algebra.ring)
    H2 = base_change_coalgebra(H, ring2)
    if f.alg is not H2.algebra:
        f = embed_element(f, H2.algebra)
    return ExtElement(H2, r, f, 4)


def in_o0(x, pi0_step):
    """Every coefficient of x lies in O0 = W[pi0]."""
    known = x.prec > x.ring.pi_index
    bad = (x.ring.pi_index % pi0_step != 0) & known
    return not np.any(x.v[:, bad])


def in_scaled_b0(x, exponent, pi0_step, nilpotent_part=False):
    """x in pi^exponent * I_{B0}, optionally intersected with the topologically nilpotent part."""
    if x.is_zero():
        return True
    if not x.counit().is_zero():
        return False
    try:
        y = x.div_pi(exponent) if exponent else x
    except NotDivisible:
        return False
    if not in_o0(y, pi0_step):
        return False
    if nilpotent_part:
        return loc_lattice(x.alg).contains(x.v[1:], x.prec)
    return True


def hlt_membership(ext, cap=None):
    """[2](f) in eta_tilde^2 I_{B0} and delta_LT(f) in eta_tilde I_{B0(x)B0}."""
    f = ext.f
    if f.is_zero():
        return True
    if not f.counit().is_zero():
        return False
    k = ext.eta_tilde_exponent
    step = ext.pi0_step
    if not in_scaled_b0(lt_double(f, cap), 2 * k, step):
        return False
    return in_scaled_b0(delta_lt(ext.base, f, cap), k, step)


def ext_equivalence(ext1, ext2, cap=None):
    """f1 -_LT f2 lies in (eta_tilde I_{B0})^loc."""
    if ext1.base is not ext2.base or ext1.r != ext2.r:
        raise ValidationError(["extensions have different base or eta"])
    h = formal_sum(ext1.f, formal_neg(ext2.f, cap), cap)
    return in_scaled_b0(h, ext1.eta_tilde_exponent, ext1.pi0_step, nilpotent_part=True)


# ---------------------------------------------------------------------------
# the extension scheme
# ---------------------------------------------------------------------------

def evaluate_artin_hasse(f):
    """E(f) for nilpotent f."""
    D = max(1, len(nilpotent_powers(f)) - 1)
    return evaluate_univariate(artin_hasse(D, f.ring.N), f)


def _geometric_inverse(x):
    """Inverse of 1 + n with n nilpotent."""
    n = x - 1
    acc = x.alg.one()
    term = x.alg.one()
    for _ in range(4 * x.ring.N_pi + 1):
        term = -(term * n)
        if term.is_zero():
            return acc
        acc = acc + term
    raise NotNilpotent("g (x) g - 1 is not nilpotent")


def _extend_base(A, rels_extra):
    """B[Z]: base generators first, Z last."""
    ring = A.ring
    n2 = A.n << 1
    rels = []
    for r in A.relations:
        v = np.zeros((n2, ring.d), dtype=np.int64)
        v[:A.n] = r
        rels.append(v)
    rels.append(rels_extra)
    return SquareFreeAlgebra(ring, A.g + 1, rels)


def _lift_base(x, E):
    """Base element into B[Z]."""
    v = np.zeros((E.n, E.ring.d), dtype=np.int64)
    v[:x.alg.n] = x.v
    return E.element(v, x.prec)


def _lift_base_tensor(t, A, E):
    """Element of B(x)B into B[Z](x)B[Z]."""
    T = E.square()
    v = np.zeros((T.n, E.ring.d), dtype=np.int64)
    for idx in t.support():
        p, q = idx & (A.n - 1), idx >> A.g
        v[p | (q << E.g)] = t.v[idx]
    return T.element(v, t.prec)


@dataclass
class ExtensionScheme:
    """The scheme of an extension class with its structure maps."""

    ext: ExtElement
    coalgebra: Coalgebra
    g: AlgElement
    inclusion_images: list
    projection: Coalgebra

    @property
    def rank(self):
        return self.coalgebra.rank

    def to_json(self):
        return {"ext": self.ext.to_json(), "scheme": self.coalgebra.to_json(),
                "g": tensor_to_json(self.g)}


def theta(ext):
    """The scheme of ext with its maps, without the verification pass."""
    H = ext.base
    A = H.algebra
    ring = A.ring
    k = ext.eta_tilde_exponent
    et, eta = ext.eta_tilde, ext.eta
    g = evaluate_artin_hasse(ext.f) if not ext.f.is_zero() else A.one()
    c = (g * g - 1).div_pi(2 * k) if k else g * g - 1
    # Z^2 = eta Z + (g^2 - 1) / eta_tilde^2
    extra = np.zeros((A.n << 1, ring.d), dtype=np.int64)
    extra[A.n] = eta.v
    extra[:A.n] = c.v
    E = _extend_base(A, extra)
    Z = E.var(A.g)
    deltas = [_lift_base_tensor(d, A, E) for d in H.deltas]
    if ext.f.is_zero():
        kk = E.square().zero()
    else:
        dg = comultiply(H, g)
        inv = _geometric_inverse(A.pure_tensor(g, g))
        dx = dg * inv - 1
        kk = _lift_base_tensor(dx.div_pi(k) if k else dx, A, E)
    one_z = E.one() + Z.scale(et)
    dz = E.left(Z) + E.right(Z) + E.pure_tensor(Z, Z).scale(et) + \
        E.pure_tensor(one_z, one_z) * kk
    deltas.append(dz)
    prec = min([d.prec for d in deltas] + [H.prec])
    scheme = Coalgebra(E, deltas, prec)
    mu = mu_eta_coalgebra(ring, k)
    return ExtensionScheme(ext, scheme, _lift_base(g, E),
                           [E.var(i) for i in range(A.g)], mu)


def mu_eta_coalgebra(ring, k):
    """mu_eta with eta_tilde = pi^k over ring."""
    A = SquareFreeAlgebra(ring, 1, [np.stack([np.zeros(ring.d, dtype=np.int64),
                                              (-ring.two_div_pi_power(k)).v])])
    X = A.var(0)
    d = A.left(X) + A.right(X) + A.pure_tensor(X, X).scale(ring.pi_power(k))
    return Coalgebra(A, [d], ring.N_pi)


def theta_lt(ext, check=True):
    """Scheme of the class f: Theta(E(f)); verified unless ``check`` is false."""
    if check and not hlt_membership(ext):
        raise NotDivisible("f does not satisfy the H_LT conditions")
    X = theta(ext)
    if check:
        failures = extension_failures(X)
        if failures:
            raise ValidationError(failures)
    return X


def extension_failures(X):
    """Hopf axioms plus both structure maps; empty when all pass."""
    S = X.coalgebra
    E = S.algebra
    out = []
    report = verify_hopf(S)
    if not report.passed:
        out.append(f"hopf axioms fail: {report.witnesses}")
    if not delta_respects_relations(S):
        out.append("Delta does not respect the relations")
    sub = as_hopf_images(E, X.ext.base.algebra.g, X.projection.algebra)
    if not is_hopf_morphism(S, X.projection, sub):
        out.append("projection to mu_eta is not a Hopf map")
    if not is_hopf_morphism(X.ext.base, S, X.inclusion_images):
        out.append("inclusion of the base is not a Hopf map")
    if E.n != 2 * X.ext.base.algebra.n:
        out.append("rank is not twice the base rank")
    return out


def as_hopf_images(E, base_vars, mu_alg):
    """Images for B[Z] -> mu_eta: base generators to 0, Z to X."""
    return [mu_alg.zero() for _ in range(base_vars)] + [mu_alg.var(0)]


def _apply(images, target, x):
    """Algebra map on the monomial expansion of x."""
    acc = target.zero(x.prec)
    for p in x.support():
        term = target.one()
        q = p
        while q:
            low = q & -q
            term = term * images[low.bit_length() - 1]
            q ^= low
        acc = acc + term.scale(x.coeff(p))
    return acc


def _apply_tensor(images, S_alg, T_alg, t):
    TT = T_alg.square()
    acc = TT.zero(t.prec)
    mask = S_alg.n - 1
    for idx in t.support():
        p, q = idx & mask, idx >> S_alg.g
        lp = _apply(images, T_alg, S_alg.monomial(p))
        rq = _apply(images, T_alg, S_alg.monomial(q))
        acc = acc + T_alg.pure_tensor(lp, rq).scale(t.coeff(idx))
    return acc


def is_hopf_morphism(source, target, images):
    """images of the source generators define an algebra map respecting Delta."""
    SA, TA = source.algebra, target.algebra
    if len(images) != SA.g:
        return False
    for i in range(SA.g):
        rel = AlgElement(SA, SA.relations[i], SA.ring.N_pi)
        if not images[i] * images[i] == _apply(images, TA, rel):
            return False
        lhs = _apply_tensor(images, SA, TA, source.delta_generator(i))
        rhs = comultiply(target, images[i])
        if not lhs == rhs:
            return False
    return True


def extension_isomorphism(ext1, ext2, X1=None, X2=None):
    """Images of an isomorphism Theta(f1) -> Theta(f2) compatible with both maps.

    With h = f1 -_LT f2 one has E(f1) = E(f2) E(h), and Z1 maps to
    Z2 E(h) + (E(h) - 1) / eta_tilde.  Returns None when h is not in the kernel.
    """
    if not ext_equivalence(ext1, ext2):
        return None
    X1 = theta(ext1) if X1 is None else X1
    X2 = theta(ext2) if X2 is None else X2
    E2 = X2.coalgebra.algebra
    A = ext1.base.algebra
    h = formal_sum(ext1.f, formal_neg(ext2.f))
    eh = _lift_base(evaluate_artin_hasse(h) if not h.is_zero() else A.one(), E2)
    k = ext1.eta_tilde_exponent
    shift = (eh - 1).div_pi(k) if k else eh - 1
    Z2 = E2.var(A.g)
    images = [E2.var(i) for i in range(A.g)] + [Z2 * eh + shift]
    if not is_hopf_morphism(X1.coalgebra, X2.coalgebra, images):
        raise ValidationError(["kernel witness does not give a Hopf isomorphism"])
    # compatibility with the projection to mu_eta
    mu_img = as_hopf_images(E2, A.g, X2.projection.algebra)
    if not _apply(mu_img, X2.projection.algebra, images[-1]) == X2.projection.algebra.var(0):
        raise ValidationError(["isomorphism does not respect the projection"])
    return images
