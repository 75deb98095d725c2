"""Position distributions, lattice-zone probabilities and entanglement entropy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidArgumentError, NumericalFailureError
from .evolution import Trajectory
from .state import Lattice, TwoWalkerState

EIGEN_CLAMP = 1e-10


@dataclass(frozen=True, eq=False)
class JointDistribution:
    values: np.ndarray
    lattice: Lattice
    time: int

    def at(self, x1: int, x2: int) -> float:
        return float(self.values[self.lattice.index(x1), self.lattice.index(x2)])


@dataclass(frozen=True, eq=False)
class Marginal:
    values: np.ndarray
    lattice: Lattice
    time: int

    def at(self, x: int) -> float:
        return float(self.values[self.lattice.index(x)])


def joint_distribution(state: TwoWalkerState) -> JointDistribution:
    p = np.einsum("sxy,sxy->xy", state.amplitudes.conj(), state.amplitudes).real
    return JointDistribution(p, state.lattice, state.time)


def marginal(joint: JointDistribution) -> Marginal:
    """Distribution of walker 1 (walker 2 is ``joint.values.sum(axis=0)``)."""
    return Marginal(joint.values.sum(axis=1), joint.lattice, joint.time)


def walker_marginal(state: TwoWalkerState, walker: int = 1) -> Marginal:
    """Position distribution of one walker reduced straight from the amplitudes."""
    psi = state.spin_resolved()
    if walker == 1:
        n = np.einsum("abxy,abxy->x", psi.conj(), psi).real
    elif walker == 2:
        n = np.einsum("abxy,abxy->y", psi.conj(), psi).real
    else:
        raise InvalidArgumentError("walker must be 1 or 2")
    return Marginal(n, state.lattice, state.time)


# Zones: interior I = {3|x| <= t + 1}, left/right edges are the rest.
ZONES = ("L", "I", "R")


def zone_masks(lattice: Lattice, t: int) -> dict[str, np.ndarray]:
    x = lattice.coordinates
    interior = 3 * np.abs(x) <= t + 1
    return {"L": (x < 0) & ~interior, "I": interior, "R": (x > 0) & ~interior}


@dataclass(frozen=True)
class ZoneProbabilities:
    """Coarse-grained pair probabilities.

    ``p_a`` both walkers in the interior, ``p_b`` on opposite edges, ``p_c``
    on the same edge, ``p_d`` one in the interior and one on an edge.  They
    use the symmetry-reduced sums (2 L x R, 2 L x L, 4 I x L), so they sum to
    one only for exchange- and reflection-symmetric distributions.
    ``pair_sums`` keeps all nine direct zone-pair sums, ordered L, I, R.
    """

    p_a: float
    p_b: float
    p_c: float
    p_d: float
    zone_boundary: int
    pair_sums: tuple[tuple[float, ...], ...]

    @property
    def total(self) -> float:
        return self.p_a + self.p_b + self.p_c + self.p_d

    def direct(self) -> tuple[float, float, float, float]:
        """The four probabilities summed over every zone pair, no symmetry assumed."""
        (ll, li, lr), (il, ii, ir), (rl, ri, rr) = self.pair_sums
        return ii, lr + rl, ll + rr, li + il + ir + ri

    @property
    def symmetry_defect(self) -> float:
        """Largest gap between the symmetric shortcut and the direct sums."""
        short = (self.p_a, self.p_b, self.p_c, self.p_d)
        return max(abs(a - b) for a, b in zip(short, self.direct()))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.p_a, self.p_b, self.p_c, self.p_d


def zone_probabilities(joint: JointDistribution, t: int | None = None) -> ZoneProbabilities:
    if t is None:
        t = joint.time
    if t != joint.time:
        raise InvalidArgumentError(f"zone time {t} does not match distribution time {joint.time}")
    masks = zone_masks(joint.lattice, t)
    p = joint.values
    sums = tuple(
        tuple(float(p[np.ix_(masks[a], masks[b])].sum()) for b in ZONES) for a in ZONES
    )
    s = dict(((a, b), sums[i][j]) for i, a in enumerate(ZONES) for j, b in enumerate(ZONES))
    return ZoneProbabilities(
        p_a=s["I", "I"],
        p_b=2 * s["L", "R"],
        p_c=2 * s["L", "L"],
        p_d=4 * s["I", "L"],
        zone_boundary=(t + 1) // 3,
        pair_sums=sums,
    )


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """One walker's state with the other traced out.

    ``matrix[(s, x), (s', x')] = sum over (s2, x2) of conj(psi[s, s2, x, x2]) psi[s', s2, x', x2]``,
    with row index ``s * L + x_index``.  ``orbitals[:, i]`` holds the orbital
    of ``eigenvalues[i]`` so that ``matrix = sum_i lambda_i conj(phi_i) phi_i^T``.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    orbitals: np.ndarray
    entropy: float
    lattice: Lattice
    time: int

    def orbital(self, i: int = 0) -> np.ndarray:
        """Orbital ``i`` reshaped to ``(2, L)`` (coin, position index)."""
        return self.orbitals[:, i].reshape(2, self.lattice.num_sites)

    def top(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        return self.eigenvalues[:k], self.orbitals[:, :k]


def von_neumann_entropy(eigenvalues: Iterable[float]) -> float:
    """``-sum lam log2 lam`` with ``0 log 0 = 0``."""
    lam = np.asarray(list(eigenvalues), dtype=float)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def binary_entropy(p: float) -> float:
    return von_neumann_entropy([p, 1.0 - p])


def _clamp(w: np.ndarray) -> np.ndarray:
    if w.size and w.min() < -EIGEN_CLAMP:
        raise NumericalFailureError(
            f"reduced density matrix has eigenvalue {w.min():.3e}; evolution lost unitarity"
        )
    return np.where(w < 0, 0.0, w)


def reduced_density_matrix(state: TwoWalkerState) -> ReducedDensityMatrix:
    L = state.lattice.num_sites
    # rows: (s1, x1), columns: (s2, x2) of walker 2
    psi = state.spin_resolved().transpose(0, 2, 1, 3).reshape(2 * L, 2 * L)
    rho = psi.conj() @ psi.T
    rho = 0.5 * (rho + rho.conj().T)
    # Rows of psi that vanish identically span an exact null space of rho
    # (support bound and parity leave about half of them empty); diagonalize
    # only the active block.
    active = np.flatnonzero(np.any(psi != 0, axis=1))
    idle = np.setdiff1d(np.arange(2 * L), active)
    w_act, v_act = np.linalg.eigh(rho[np.ix_(active, active)])
    w = np.concatenate([w_act, np.zeros(idle.size)])
    v = np.zeros((2 * L, 2 * L), dtype=complex)
    v[np.ix_(active, np.arange(active.size))] = v_act
    v[idle, active.size + np.arange(idle.size)] = 1.0
    order = np.argsort(-w, kind="stable")
    w = _clamp(w[order])
    orbitals = v[:, order].conj()
    return ReducedDensityMatrix(
        matrix=rho,
        eigenvalues=w,
        orbitals=orbitals,
        entropy=von_neumann_entropy(w),
        lattice=state.lattice,
        time=state.time,
    )


def entanglement_entropy(state: TwoWalkerState) -> float:
    """Entropy of one walker, from the singular values of the amplitude matrix."""
    L = state.lattice.num_sites
    psi = state.spin_resolved().transpose(0, 2, 1, 3).reshape(2 * L, 2 * L)
    sv = np.linalg.svd(psi, compute_uv=False)
    return von_neumann_entropy(_clamp(sv**2))


def entropy_series(trajectory: Trajectory | Iterable[TwoWalkerState]) -> list[tuple[int, float]]:
    """``(t, entropy)`` for every recorded state of a trajectory."""
    states = trajectory.snapshots if isinstance(trajectory, Trajectory) else trajectory
    out = []
    for s in states:
        if not isinstance(s, TwoWalkerState):
            raise InvalidArgumentError("entropy_series needs recorded states, not observables")
        out.append((s.time, reduced_density_matrix(s).entropy))
    return out
