"""The reproducible verification fleet of small filtered modules."""

from dataclasses import dataclass
import itertools

from .coeff_rings import RingTower
from .errors import NeedsFieldExtension
from .filtered_modules import FilteredModule, hom_star, validate
from .functor_g import g_functor
from .linalg import smat_mul


@dataclass(frozen=True)
class FleetSpec:
    """Modules U = U0 diag(t^a_i) with u <= max_u, a_i in [0, e], U0 from a fixed list."""

    rings: tuple = ((1, 1), (1, 2), (2, 1), (2, 2))
    N: int = 6
    max_u: int = 2
    unit_names: tuple = ("identity", "upper", "lower_t")
    sorted_exponents: bool = True


def unit_matrices(S, m):
    """Named 2x2 unit matrices over S."""
    one, zero, t = S.one(), S.zero(), S.t_power(1)
    out = {
        "identity": [[one, zero], [zero, one]],
        "upper": [[one, one], [zero, one]],
        "lower_t": [[one, zero], [t, one]],
        "swap": [[zero, one], [one, zero]],
        "full": [[one, t], [one, one]],
    }
    if m > 1:
        y = S.const(S.field.generator())
        out["twist_y"] = [[y, zero], [zero, one]]
    return out


@dataclass(frozen=True)
class FleetMember:
    name: str
    module: FilteredModule


def fleet_modules(ring, spec=None):
    """Fleet members over one ring, in a fixed order."""
    spec = FleetSpec() if spec is None else spec
    S, e = ring.S, ring.e
    out = []
    for r in range(e + 1):
        out.append(FleetMember(f"u1_r{r}", FilteredModule(S, e, [[S.t_power(r)]], ring)))
    if spec.max_u >= 2:
        units = unit_matrices(S, ring.m)
        for a in itertools.product(range(e + 1), repeat=2):
            if spec.sorted_exponents and a[0] > a[1]:
                continue
            diag = [[S.t_power(a[0]), S.zero()], [S.zero(), S.t_power(a[1])]]
            for name in spec.unit_names:
                if name not in units:
                    continue
                U = smat_mul(units[name], diag)
                M = FilteredModule(S, e, U, ring)
                if not validate(M):
                    out.append(FleetMember(f"u2_{name}_a{a[0]}{a[1]}", M))
    return out


def fleet(spec=None, with_schemes=False):
    """[(ring, member, scheme or None)]; members needing a field extension are skipped."""
    spec = FleetSpec() if spec is None else spec
    out = []
    skipped = []
    for m, e in spec.rings:
        ring = RingTower(m, e, spec.N)
        for mem in fleet_modules(ring, spec):
            G = None
            try:
                hom_star(mem.module, mem.module)
                if with_schemes:
                    G = g_functor(mem.module, ring)
            except NeedsFieldExtension:
                skipped.append((ring, mem))
                continue
            out.append((ring, mem, G))
    return out, skipped
