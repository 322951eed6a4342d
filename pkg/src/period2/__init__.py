"""Finite flat group schemes of period 2 over ramified 2-adic rings, built from filtered modules."""

from .coeff_rings import RingTower
from .errors import (NeedsFieldExtension, NoConvergence, NoDescent, NotDivisible, NotInSpan,
                     NotNilpotent, Period2Error, PrecisionExhausted, SolutionSpaceTooLarge,
                     ValidationError)
from .filtered_modules import FilteredModule, hom_star, is_isomorphic_star, normalize_basis
from .functor_g import g_functor, recover_module
from .group_schemes import solve_coaddition, verify_hopf

__version__ = "0.1.0"
