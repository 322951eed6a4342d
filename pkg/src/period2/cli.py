"""Command-line interface.

Exit codes: 0 success, 1 check failed, 2 validation failure, 3 residue field
extension needed, 4 precision exhausted, 5 other mathematical failure.
Errors are written to stderr as one JSON object {"error", "message", "details"}.
"""

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import serialization as ser
from .coeff_rings import MAX_N, RingTower
from .errors import (NeedsFieldExtension, NotDivisible, Period2Error, PrecisionExhausted,
                     ValidationError)
from .filtered_modules import (base_change_to_Sprime, check_valid, descend_from_Sprime, hom,
                               hom_star, is_isomorphic_star)
from .functor_g import g_functor, recover_module, scheme_morphism_count

EXIT_OK, EXIT_FAILED, EXIT_VALIDATION, EXIT_EXTENSION, EXIT_PRECISION, EXIT_MATH = range(6)


@dataclass
class Config:
    m: int = 1
    e: int = 1
    N: int = 6
    N_S: int = None
    cap: int = 16
    seed: int = 0
    out: str = None

    def validate(self):
        if not 2 <= self.N <= MAX_N:
            raise ValidationError([f"N must lie in [2, {MAX_N}]"])
        try:
            self.ring()
        except ValueError as exc:
            raise ValidationError([str(exc)]) from exc

    def ring(self):
        return RingTower(self.m, self.e, self.N, self.N_S)


def load_config(args):
    """Defaults, then the PERIOD2_CONFIG file, then explicit flags."""
    cfg = Config()
    path = os.environ.get("PERIOD2_CONFIG")
    if path:
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError([f"unknown config keys {sorted(unknown)}"])
        cfg = Config(**{**asdict(cfg), **data})
    for name, attr in (("m", "m"), ("e", "e"), ("prec", "N"), ("ns", "N_S"),
                       ("cap", "cap"), ("seed", "seed"), ("out", "out")):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, attr, val)
    cfg.validate()
    return cfg


def _read(path):
    return json.loads(Path(path).read_text())


def _emit(cfg, doc):
    text = json.dumps(doc, indent=2)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)


def _module(path, cfg):
    d = _read(path)
    ring = None if "ring" in d else cfg.ring()
    M = ser.module_from_json(d, ring)
    check_valid(M)
    return M


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_build(args, cfg):
    M = _module(args.module, cfg)
    G = g_functor(M)
    _emit(cfg, ser.group_scheme_to_json(G))
    return EXIT_OK


def cmd_verify(args, cfg):
    from .group_schemes import check_ideal_invariants, coaddition_residual, verify_hopf
    G = ser.group_scheme_from_json(_read(args.scheme))
    rep = verify_hopf(G)
    residual = coaddition_residual(G)
    invariants = check_ideal_invariants(G)
    doc = {"hopf": rep.to_json(), "residual_failures": residual,
           "ideal_failures": invariants}
    doc["pass"] = rep.passed and not residual and not invariants
    _emit(cfg, doc)
    return EXIT_OK if doc["pass"] else EXIT_FAILED


def cmd_roundtrip(args, cfg):
    M = _module(args.module, cfg)
    G = g_functor(M)
    M2 = recover_module(G)
    ok = is_isomorphic_star(M, M2, cfg.cap)
    _emit(cfg, {"recovered": ser.module_to_json(M2), "isomorphic": ok})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_hom(args, cfg):
    M = _module(args.source, cfg)
    N = _module(args.target, cfg)
    hs = hom_star(M, N, cfg.cap)
    full = hom(M, N, cfg.cap)
    doc = {"hom_count": len(full), "hom_star_count": hs.count}
    if args.schemes:
        doc["scheme_morphism_count"] = scheme_morphism_count(M, N, cap=cfg.cap)
        doc["agree"] = doc["scheme_morphism_count"] == hs.count
    _emit(cfg, doc)
    return EXIT_OK if doc.get("agree", True) else EXIT_FAILED


def cmd_classify(args, cfg):
    from .extensions import classify_order2
    classes = classify_order2(cfg.e, cfg.m, cfg.N)
    doc = [{"r": mu.r, "module": ser.module_to_json(M), "mu_eta": mu.to_json()}
           for mu, M in classes]
    _emit(cfg, doc)
    return EXIT_OK


def cmd_lt(args, cfg):
    from .lubin_tate import artin_hasse, lt_add_series
    P = lt_add_series(args.degree, cfg.N)
    doc = {"law": P.to_json()}
    if args.artin_hasse:
        doc["artin_hasse"] = artin_hasse(args.degree, cfg.N).to_json()
    _emit(cfg, doc)
    return EXIT_OK


def cmd_ext(args, cfg):
    from .extensions import (ext_element, extension_failures, hlt_membership, theta)
    from .serialization import alg_element_from_json
    base = _read(args.base)
    if base.get("kind") == "group_scheme":
        H = ser.group_scheme_from_json(base)
    else:
        H = ser.coalgebra_from_json(base)
    f = alg_element_from_json(_read(args.f), H.algebra)
    ext = ext_element(H, args.eta_r, f, extend=args.extend)
    member = hlt_membership(ext)
    doc = {"hlt_membership": member}
    if member:
        X = theta(ext)
        failures = extension_failures(X)
        doc.update({"rank": X.rank, "failures": failures,
                    "scheme": ser.coalgebra_to_json(X.coalgebra)})
        ok = not failures
    else:
        ok = False
    _emit(cfg, doc)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_descend(args, cfg):
    from .group_schemes import descent_check
    d = _read(args.module)
    ring = ser.ring_from_json(d["ring"]) if "ring" in d else cfg.ring()
    Sp = ring.Sprime
    U = [[Sp(c) for c in row] for row in d["U"]]
    from .filtered_modules import FilteredModule
    Mp = FilteredModule(Sp, d["e"], U, ring)
    M = descend_from_Sprime(Mp, ring.S)
    back = is_isomorphic_star(base_change_to_Sprime(M, Sp), Mp, cfg.cap)
    G = g_functor(M)
    doc = {"descended": ser.module_to_json(M), "base_change_isomorphic": back,
           "descent_check": descent_check(G)}
    _emit(cfg, doc)
    return EXIT_OK if back and doc["descent_check"] else EXIT_FAILED


def cmd_fleet(args, cfg):
    from .fleet import FleetSpec, fleet
    spec = FleetSpec(N=cfg.N)
    members, skipped = fleet(spec)
    outdir = Path(args.dir)
    outdir.mkdir(parents=True, exist_ok=True)
    names = []
    for ring, mem, _ in members:
        name = f"m{ring.m}_e{ring.e}_{mem.name}.json"
        (outdir / name).write_text(json.dumps(ser.module_to_json(mem.module)) + "\n")
        names.append(name)
    print(json.dumps({"written": len(names),
                      "skipped": [f"m{r.m}_e{r.e}_{m.name}" for r, m in skipped]}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    # SUPPRESS keeps subcommand defaults from hiding flags given before the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--m", type=int, help="degree of the residue field over F2")
    common.add_argument("--e", type=int, help="level e")
    common.add_argument("--prec", type=int, help="2-adic precision N")
    common.add_argument("--ns", type=int, help="t-adic precision of S")
    common.add_argument("--cap", type=int, help="enumeration dimension cap")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--out", help="write JSON here instead of stdout")
    p = argparse.ArgumentParser(prog="period2", parents=[common],
                                description="Period-2 group schemes from filtered modules.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("build", parents=[common], help="group scheme of a module file")
    s.add_argument("module")
    s.set_defaults(func=cmd_build)
    s = sub.add_parser("verify-hopf", parents=[common], help="check a group scheme file")
    s.add_argument("scheme")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("roundtrip", parents=[common], help="recover a module from its scheme")
    s.add_argument("module")
    s.set_defaults(func=cmd_roundtrip)
    s = sub.add_parser("hom", parents=[common], help="morphism counts")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--schemes", action="store_true", help="also count scheme morphisms")
    s.set_defaults(func=cmd_hom)
    s = sub.add_parser("classify-order2", parents=[common], help="group schemes of order 2")
    s.set_defaults(func=cmd_classify)
    s = sub.add_parser("lt-coeffs", parents=[common], help="Lubin-Tate addition law")
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--artin-hasse", action="store_true")
    s.set_defaults(func=cmd_lt)
    s = sub.add_parser("ext", parents=[common], help="extension of a base by mu_eta")
    s.add_argument("--base", required=True)
    s.add_argument("--f", required=True, dest="f")
    s.add_argument("--eta-r", type=int, required=True)
    s.add_argument("--extend", action="store_true", help="work over O[pi'], pi'^2 = pi")
    s.set_defaults(func=cmd_ext)
    s = sub.add_parser("descend", parents=[common], help="descend a module over S'")
    s.add_argument("module")
    s.set_defaults(func=cmd_descend)
    s = sub.add_parser("fleet", parents=[common], help="write the fleet module files")
    s.add_argument("dir")
    s.set_defaults(func=cmd_fleet)
    return p


def exit_code_for(exc):
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    if isinstance(exc, NeedsFieldExtension):
        return EXIT_EXTENSION
    if isinstance(exc, (PrecisionExhausted, NotDivisible)):
        return EXIT_PRECISION
    return EXIT_MATH


def error_json(exc):
    return {"error": getattr(exc, "kind", type(exc).__name__), "message": str(exc),
            "details": dict(getattr(exc, "details", {}))}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        random.seed(cfg.seed)
        return args.func(args, cfg)
    except (Period2Error, json.JSONDecodeError, KeyError, OSError) as exc:
        if not isinstance(exc, Period2Error):
            exc = ValidationError([f"{type(exc).__name__}: {exc}"])
        print(json.dumps(error_json(exc)), file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
