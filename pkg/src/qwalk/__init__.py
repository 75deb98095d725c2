"""Two locally interacting discrete-time quantum walkers on a line."""

from .errors import (
    CapacityExceededError,
    InvalidArgumentError,
    NumericalFailureError,
    QWalkError,
)
from .evolution import (
    HADAMARD,
    CoinOperator,
    ExplicitCoinUnitary,
    HermitianGenerator,
    InteractionSpec,
    NoInteraction,
    PhasePair,
    Trajectory,
    apply_interaction,
    build_coin_unitary,
    coin_step,
    evolve,
    free_step,
    interacting_step,
    iter_evolution,
    shift_step,
)
from .observables import (
    JointDistribution,
    Marginal,
    ReducedDensityMatrix,
    ZoneProbabilities,
    entropy_series,
    joint_distribution,
    marginal,
    reduced_density_matrix,
    zone_probabilities,
)
from .state import (
    CoinVector,
    Lattice,
    SpinPair,
    TwoWalkerState,
    make_lattice,
    norm_squared,
    product_initial_state,
)

__all__ = [
    "CapacityExceededError",
    "CoinOperator",
    "CoinVector",
    "ExplicitCoinUnitary",
    "HADAMARD",
    "HermitianGenerator",
    "InteractionSpec",
    "InvalidArgumentError",
    "JointDistribution",
    "Lattice",
    "Marginal",
    "NoInteraction",
    "NumericalFailureError",
    "PhasePair",
    "QWalkError",
    "ReducedDensityMatrix",
    "SpinPair",
    "Trajectory",
    "TwoWalkerState",
    "ZoneProbabilities",
    "apply_interaction",
    "build_coin_unitary",
    "coin_step",
    "entropy_series",
    "evolve",
    "free_step",
    "interacting_step",
    "iter_evolution",
    "joint_distribution",
    "make_lattice",
    "marginal",
    "norm_squared",
    "product_initial_state",
    "reduced_density_matrix",
    "shift_step",
    "zone_probabilities",
]
