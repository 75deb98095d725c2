"""Driver glue: run one configuration or a theta sweep and collect observables."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig, SweepConfig
from .evolution import HADAMARD, evolve
from .observables import (
    JointDistribution,
    Marginal,
    ZoneProbabilities,
    joint_distribution,
    marginal,
    reduced_density_matrix,
    zone_probabilities,
)
from .state import TwoWalkerState, make_lattice, product_initial_state


@dataclass
class Snapshot:
    time: int
    zones: ZoneProbabilities
    entropy: float


@dataclass
class RunResult:
    final: TwoWalkerState
    joint: JointDistribution
    marginal: Marginal
    snapshots: list[Snapshot]


def observe(state: TwoWalkerState) -> Snapshot:
    joint = joint_distribution(state)
    return Snapshot(
        time=state.time,
        zones=zone_probabilities(joint),
        entropy=reduced_density_matrix(state).entropy,
    )


def simulate(config: RunConfig, theta_plus: float | None = None, record: bool = True) -> RunResult:
    lattice = make_lattice(config.steps)
    initial = product_initial_state(lattice, config.coin1, config.coin2, config.x1, config.x2)
    spec = config.interaction_spec(theta_plus)
    traj = evolve(
        initial,
        HADAMARD,
        spec,
        steps=config.steps,
        record_every=config.record_every if record else None,
        observe=observe,
    )
    joint = joint_distribution(traj.final)
    return RunResult(traj.final, joint, marginal(joint), traj.snapshots)


@dataclass
class SweepRow:
    theta: float
    time: int
    zones: ZoneProbabilities
    entropy: float


def _sweep_point(args: tuple[RunConfig, float]) -> SweepRow:
    config, theta = args
    result = simulate(config, theta_plus=theta, record=False)
    snap = result.snapshots[-1]
    return SweepRow(theta, snap.time, snap.zones, snap.entropy)


def sweep(config: SweepConfig) -> list[SweepRow]:
    """Final-step observables for every theta_plus in the grid, ordered by theta."""
    grid = sorted(float(t) for t in config.theta_grid)
    jobs = [(config.base, t) for t in grid]
    if config.parallelism == 1 or len(jobs) == 1:
        return [_sweep_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
        return list(pool.map(_sweep_point, jobs))


def joint_rows(joint: JointDistribution):
    x = joint.lattice.coordinates
    p = joint.values
    for i, x1 in enumerate(x):
        for j, x2 in enumerate(x):
            yield int(x1), int(x2), float(p[i, j])


def marginal_rows(marg: Marginal):
    return [(int(x), float(n)) for x, n in zip(marg.lattice.coordinates, np.asarray(marg.values))]
