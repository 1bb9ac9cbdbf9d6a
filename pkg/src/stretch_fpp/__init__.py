"""First-passage percolation rates on width-two stretch graphs.

Ladder-shaped graphs on {0..n} x {0, 1} carry up to five translation-
invariant edge families (two rails, two diagonals, rungs), each edge with
an independent Exp(1) weight.  The package computes the asymptotic
first-passage rate chi = lim l_n / n three independent ways and
cross-validates them:

* closed form (Bessel and tangent expressions) for the three solved
  families,
* transfer-operator power iteration on the frontier-gap chain's kernel,
* sharded Monte Carlo over the frontier recursion for all six nontrivial
  families.
"""

from .bessel import bessel_j, check_recurrence
from .chain import (
    DeltaState,
    GenericFrontier,
    delta_init,
    delta_step,
    frontier_from_ladder,
    frontier_init,
    generic_step,
    run_chain,
)
from .density import (
    DensityGrid,
    chi_by_expectation,
    chi_exact,
    inner_mean,
    kernel_g,
    kernel_k,
    kernel_p,
    kernel_q,
    lambda_density,
    stationary_by_power_iteration,
    stationary_closed_form,
)
from .graph import (
    DISCONNECTED,
    SOLVED,
    TRIVIAL,
    UNSOLVED,
    GraphFamily,
    LayerWeights,
    WeightedLadder,
    classify,
    dijkstra_oracle,
    sample_ladder,
    shard_rng,
)
from .mc import (
    RateEstimate,
    collect_samples,
    estimate_chi,
    subadditivity_probe,
    validate_recursion,
)

__version__ = "0.1.0"

__all__ = [
    "DISCONNECTED",
    "SOLVED",
    "TRIVIAL",
    "UNSOLVED",
    "DeltaState",
    "DensityGrid",
    "GenericFrontier",
    "GraphFamily",
    "LayerWeights",
    "RateEstimate",
    "WeightedLadder",
    "bessel_j",
    "check_recurrence",
    "chi_by_expectation",
    "chi_exact",
    "classify",
    "collect_samples",
    "delta_init",
    "delta_step",
    "dijkstra_oracle",
    "estimate_chi",
    "frontier_from_ladder",
    "frontier_init",
    "generic_step",
    "inner_mean",
    "kernel_g",
    "kernel_k",
    "kernel_p",
    "kernel_q",
    "lambda_density",
    "run_chain",
    "sample_ladder",
    "shard_rng",
    "stationary_by_power_iteration",
    "stationary_closed_form",
    "subadditivity_probe",
    "validate_recursion",
    "__version__",
]
