"""Census and existence atlas of periodic stationary patterns of the
Nagumo equation on cycle graphs.

Layers, lowest first:

* numtheory - exact Moebius/totient/divisor helpers.
* words     - words over {0,1} / {0,a,1}, symmetry groups, orbit enumeration.
* counting  - closed-form class counts (necklace/bracelet families).
* gde       - stationary states: Newton solver and branch continuation in
              the diffusion parameter.
* regions   - existence-region probing: how far in d a pattern survives.
* cli       - the nagumo-atlas command.
"""

from .counting import count_table, total_regions
from .gde import ContinuationConfig, Equilibrium, Params, newton_solve, solve_type
from .regions import d_max, membership, scan_region
from .words import A2, A3, GroupKind, Word, enumerate_orbits, representatives

__all__ = [
    "A2",
    "A3",
    "ContinuationConfig",
    "Equilibrium",
    "GroupKind",
    "Params",
    "Word",
    "count_table",
    "d_max",
    "enumerate_orbits",
    "membership",
    "newton_solve",
    "representatives",
    "scan_region",
    "solve_type",
    "total_regions",
]

__version__ = "0.1.0"
