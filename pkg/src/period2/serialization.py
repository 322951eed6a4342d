"""JSON forms for rings, elements, modules, group schemes, series and extensions.

Every document carries a "kind" tag.  Integers of absolute value at least 2^53
are written as decimal strings.
"""

import json

import numpy as np

from .augmented_algebras import AlgElement, MonomialAlgebra, SquareFreeAlgebra
from .coeff_rings import OElement, RingTower
from .errors import ValidationError
from .filtered_modules import FilteredModule, FMorphism
from .group_schemes import GroupScheme, HopfReport
from .lubin_tate import TruncatedSeries

SAFE_INT = 1 << 53


def _int_out(x):
    x = int(x)
    return str(x) if abs(x) >= SAFE_INT else x


def _int_in(x):
    return int(x)


def _ints_out(a):
    if isinstance(a, (list, tuple, np.ndarray)):
        return [_ints_out(x) for x in a]
    return _int_out(a)


def _ints_in(a):
    if isinstance(a, list):
        return [_ints_in(x) for x in a]
    return _int_in(a)


# ---------------------------------------------------------------------------
# rings and elements
# ---------------------------------------------------------------------------

def ring_to_json(ring):
    out = ring.params()
    out["modulus"] = ring.field.modulus
    out["kind"] = "ring"
    return out


def ring_from_json(d):
    return RingTower(d["m"], d["e"], d["N"], d.get("N_S"), d.get("eisenstein"),
                     d.get("modulus"))


def o_to_json(x):
    return {"kind": "o_element", "v": _ints_out(x.v.tolist()), "prec": x.prec}


def o_from_json(d, ring):
    return OElement(ring, np.array(_ints_in(d["v"]), dtype=np.int64), d["prec"])


def s_to_json(a):
    return list(a.c)


def s_from_json(c, S):
    return S(list(c))


def alg_element_to_json(x):
    return {"kind": "alg_element", "n": x.alg.n, "v": _ints_out(x.v.tolist()),
            "prec": x.prec}


def alg_element_from_json(d, alg):
    v = np.array(_ints_in(d["v"]), dtype=np.int64).reshape(alg.n, alg.ring.d)
    return AlgElement(alg, v, d["prec"])


# ---------------------------------------------------------------------------
# filtered modules
# ---------------------------------------------------------------------------

def module_to_json(M):
    out = {"kind": "filtered_module", "e": M.e, "N_S": M.S.n,
           "U": [[s_to_json(a) for a in row] for row in M.U]}
    if M.ring is not None:
        out["ring"] = ring_to_json(M.ring)
    return out


def module_from_json(d, ring=None):
    if ring is None and "ring" in d:
        ring = ring_from_json(d["ring"])
    if ring is None:
        raise ValidationError(["module file has no ring and none was supplied"])
    S = ring.S
    if d.get("N_S", S.n) != S.n:
        raise ValidationError(["N_S of the module differs from the ring"])
    if d["e"] != ring.e:
        raise ValidationError(["level e of the module differs from the ring"])
    U = [[s_from_json(c, S) for c in row] for row in d["U"]]
    return FilteredModule(S, d["e"], U, ring)


def morphism_to_json(f):
    return {"kind": "morphism", "source": module_to_json(f.source),
            "target": module_to_json(f.target),
            "B": [[s_to_json(a) for a in row] for row in f.B]}


def morphism_from_json(d, ring=None):
    M = module_from_json(d["source"], ring)
    N = module_from_json(d["target"], ring or M.ring)
    B = [[s_from_json(c, M.S) for c in row] for row in d["B"]]
    return FMorphism.from_B(M, N, B)


# ---------------------------------------------------------------------------
# algebras and group schemes
# ---------------------------------------------------------------------------

def algebra_to_json(A):
    return {"kind": "monomial_algebra", "ring": ring_to_json(A.ring),
            "u0": A.u0, "exponents": list(A.exponents),
            "C": [[o_to_json(c) for c in row] for row in A.C]}


def algebra_from_json(d, ring=None):
    ring = ring_from_json(d["ring"]) if ring is None else ring
    C = [[o_from_json(c, ring) for c in row] for row in d["C"]]
    return MonomialAlgebra(ring, C, d["exponents"], d["u0"])


def group_scheme_to_json(G):
    return {"kind": "group_scheme", "algebra": algebra_to_json(G.algebra),
            "prec": G.prec, "j": [alg_element_to_json(x) for x in G.j],
            "summary": G.to_json()}


def group_scheme_from_json(d, ring=None):
    A = algebra_from_json(d["algebra"], ring)
    T = A.square()
    j = [alg_element_from_json(x, T) for x in d["j"]]
    return GroupScheme(A, j, d["prec"])


def coalgebra_to_json(H):
    A = H.algebra
    return {"kind": "coalgebra", "ring": ring_to_json(A.ring), "g": A.g,
            "relations": _ints_out([r.tolist() for r in A.relations]),
            "prec": H.prec, "delta": [alg_element_to_json(x) for x in H.deltas]}


def coalgebra_from_json(d, ring=None):
    from .extensions import Coalgebra
    ring = ring_from_json(d["ring"]) if ring is None else ring
    rels = [np.array(r, dtype=np.int64) for r in _ints_in(d["relations"])]
    A = SquareFreeAlgebra(ring, d["g"], rels)
    T = A.square()
    return Coalgebra(A, [alg_element_from_json(x, T) for x in d["delta"]], d["prec"])


def hopf_report_to_json(rep):
    out = rep.to_json()
    out["kind"] = "hopf_report"
    return out


def hopf_report_from_json(d):
    return HopfReport(d["coassoc_ok"], d["cocommut_ok"], d["counit_ok"], d["period2_ok"],
                      d.get("witnesses", {}))


# ---------------------------------------------------------------------------
# series and extensions
# ---------------------------------------------------------------------------

def series_to_json(s):
    return {"kind": "series", "nvars": s.nvars, "degree": s.degree,
            "modulus": None if s.modulus is None else _int_out(s.modulus),
            "coeffs": [[list(ex), _series_coeff_out(c)] for ex, c in sorted(s.coeffs.items())]}


def _series_coeff_out(c):
    if hasattr(c, "denominator") and c.denominator != 1:
        return [_int_out(c.numerator), _int_out(c.denominator)]
    return _int_out(c)


def _series_coeff_in(c):
    from fractions import Fraction
    if isinstance(c, list):
        return Fraction(_int_in(c[0]), _int_in(c[1]))
    return _int_in(c)


def series_from_json(d):
    mod = d.get("modulus")
    coeffs = {tuple(ex): _series_coeff_in(c) for ex, c in d["coeffs"]}
    return TruncatedSeries(d["nvars"], d["degree"], coeffs,
                           None if mod is None else _int_in(mod))


def ext_to_json(ext):
    return {"kind": "ext_element", "r": ext.r, "pi0_step": ext.pi0_step,
            "base": coalgebra_to_json(ext.base), "f": alg_element_to_json(ext.f)}


def ext_from_json(d):
    from .extensions import ExtElement
    H = coalgebra_from_json(d["base"])
    return ExtElement(H, d["r"], alg_element_from_json(d["f"], H.algebra), d["pi0_step"])


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def to_json(obj):
    from .extensions import Coalgebra, ExtElement
    if isinstance(obj, RingTower):
        return ring_to_json(obj)
    if isinstance(obj, OElement):
        out = o_to_json(obj)
        out["ring"] = ring_to_json(obj.ring)
        return out
    if isinstance(obj, FilteredModule):
        return module_to_json(obj)
    if isinstance(obj, FMorphism):
        return morphism_to_json(obj)
    if isinstance(obj, GroupScheme):
        return group_scheme_to_json(obj)
    if isinstance(obj, MonomialAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, Coalgebra):
        return coalgebra_to_json(obj)
    if isinstance(obj, HopfReport):
        return hopf_report_to_json(obj)
    if isinstance(obj, TruncatedSeries):
        return series_to_json(obj)
    if isinstance(obj, ExtElement):
        return ext_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def from_json(d, ring=None):
    kind = d.get("kind")
    if kind == "ring":
        return ring_from_json(d)
    if kind == "o_element":
        return o_from_json(d, ring_from_json(d["ring"]) if "ring" in d else ring)
    if kind == "filtered_module":
        return module_from_json(d, ring)
    if kind == "morphism":
        return morphism_from_json(d, ring)
    if kind == "group_scheme":
        return group_scheme_from_json(d, ring)
    if kind == "monomial_algebra":
        return algebra_from_json(d, ring)
    if kind == "coalgebra":
        return coalgebra_from_json(d, ring)
    if kind == "hopf_report":
        return hopf_report_from_json(d)
    if kind == "series":
        return series_from_json(d)
    if kind == "ext_element":
        return ext_from_json(d)
    raise ValidationError([f"unknown document kind {kind!r}"])


def dumps(obj, **kw):
    return json.dumps(to_json(obj), **kw)


def loads(text, ring=None):
    return from_json(json.loads(text), ring)
