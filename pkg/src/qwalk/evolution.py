"""Coin, shift and contact-interaction operators, and the interleaved step.

One step of the interacting walk is ``V . (S C x S C)``: both coins are
flipped, both walkers shift, then the interaction acts on cells where the
walkers coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

import numpy as np

from .errors import CapacityExceededError, InvalidArgumentError
from .state import DOWN, UP, TwoWalkerState

UNITARY_TOL = 1e-10

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _is_unitary(m: np.ndarray, tol: float) -> bool:
    return np.allclose(m.conj().T @ m, np.eye(m.shape[0]), rtol=0, atol=tol)


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Single-walker 2x2 unitary coin, applied identically to both walkers."""

    matrix: np.ndarray = field(
        default_factory=lambda: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    )

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise InvalidArgumentError("coin must be a finite 2x2 matrix")
        if not _is_unitary(m, UNITARY_TOL):
            raise InvalidArgumentError("coin matrix is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def hadamard(cls) -> "CoinOperator":
        return cls()

    @classmethod
    def identity(cls) -> "CoinOperator":
        return cls(np.eye(2, dtype=complex))


HADAMARD = CoinOperator.hadamard()


# Interaction variants.  Each one acts on the four spin-pair amplitudes of a
# contact cell (x1 == x2) and leaves every other cell alone.


@dataclass(frozen=True)
class NoInteraction:
    pass


@dataclass(frozen=True)
class PhasePair:
    """Phase ``exp(i theta_plus)`` on equal coins, ``exp(i theta_minus)`` on opposite coins."""

    theta_plus: float = 0.0
    theta_minus: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta_plus) and math.isfinite(self.theta_minus)):
            raise InvalidArgumentError("phase angles must be finite")

    def phases(self) -> np.ndarray:
        """Diagonal of the contact operator in UU, UD, DU, DD order."""
        p = np.exp(1j * self.theta_plus)
        m = np.exp(1j * self.theta_minus)
        return np.array([p, m, m, p])


@dataclass(frozen=True, eq=False)
class HermitianGenerator:
    """Contact operator ``exp(i sum_ij h[i, j] sigma_i x sigma_j)``; index 0 is the identity."""

    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        if h.shape != (4, 4):
            raise InvalidArgumentError(f"h must be 4x4, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise InvalidArgumentError("h must contain finite reals")
        h.flags.writeable = False
        object.__setattr__(self, "h", h)


@dataclass(frozen=True, eq=False)
class ExplicitCoinUnitary:
    """Arbitrary 4x4 unitary on the joint coin space, in UU, UD, DU, DD order."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise InvalidArgumentError("coin unitary must be a finite 4x4 matrix")
        if not _is_unitary(m, UNITARY_TOL):
            raise InvalidArgumentError("coin unitary fails O^dagger O = I within 1e-10")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


InteractionSpec = Union[NoInteraction, PhasePair, HermitianGenerator, ExplicitCoinUnitary]

NO_INTERACTION = NoInteraction()


def pauli_generator(h: np.ndarray) -> np.ndarray:
    """The Hermitian 4x4 matrix ``sum_ij h[i, j] sigma_i x sigma_j``."""
    h = np.asarray(h, dtype=float)
    return np.einsum("ij,iab,jcd->acbd", h, PAULI, PAULI).reshape(4, 4)


def build_coin_unitary(spec: HermitianGenerator | np.ndarray) -> np.ndarray:
    """``exp(iH)`` through the eigendecomposition of the Hermitian generator."""
    if not isinstance(spec, HermitianGenerator):
        spec = HermitianGenerator(spec)
    gen = pauli_generator(spec.h)
    gen = 0.5 * (gen + gen.conj().T)
    w, v = np.linalg.eigh(gen)
    return (v * np.exp(1j * w)) @ v.conj().T


def phase_pair_from_generator(alpha: float, beta: float) -> PhasePair:
    """Phase family equivalent to ``h00 = alpha, h33 = beta``."""
    return PhasePair(alpha + beta, alpha - beta)


def contact_matrix(spec: InteractionSpec) -> np.ndarray:
    """The 4x4 operator applied on contact cells."""
    if isinstance(spec, NoInteraction):
        return np.eye(4, dtype=complex)
    if isinstance(spec, PhasePair):
        return np.diag(spec.phases())
    if isinstance(spec, HermitianGenerator):
        return build_coin_unitary(spec)
    if isinstance(spec, ExplicitCoinUnitary):
        return np.array(spec.matrix)
    raise InvalidArgumentError(f"unknown interaction spec {spec!r}")


def coin_step(state: TwoWalkerState, coin: CoinOperator = HADAMARD) -> TwoWalkerState:
    """Apply ``coin x coin`` to the spin-pair index of every cell."""
    if not isinstance(coin, CoinOperator):
        coin = CoinOperator(coin)
    c = coin.matrix
    psi = state.spin_resolved()
    out = np.einsum("ab,cd,bdxy->acxy", c, c, psi, optimize=True)
    return state.with_amplitudes(out.reshape(state.amplitudes.shape))


def _shift_axis(src: np.ndarray, dst: np.ndarray, spin_axis_index: int, axis: int) -> None:
    # Cyclic wrap; refuse to wrap nonzero amplitude (guard band breached).
    n = src.shape[axis]
    up = np.take(src, UP, axis=spin_axis_index)
    down = np.take(src, DOWN, axis=spin_axis_index)
    pos_axis = axis - 1
    if np.any(np.take(up, n - 1, axis=pos_axis)) or np.any(np.take(down, 0, axis=pos_axis)):
        raise CapacityExceededError("nonzero amplitude reached the lattice edge; lattice too small")
    idx_up = [slice(None)] * src.ndim
    idx_up[spin_axis_index] = UP
    idx_down = list(idx_up)
    idx_down[spin_axis_index] = DOWN
    dst[tuple(idx_up)] = np.roll(up, 1, axis=pos_axis)
    dst[tuple(idx_down)] = np.roll(down, -1, axis=pos_axis)


def shift_step(state: TwoWalkerState) -> TwoWalkerState:
    """Move each walker one site right on coin up, one site left on coin down.

    The step counter is left alone; :func:`free_step` advances it.
    """
    if state.time >= state.lattice.max_steps:
        raise CapacityExceededError(
            f"state at t={state.time} cannot be shifted on a lattice built for "
            f"{state.lattice.max_steps} steps"
        )
    psi = state.spin_resolved()
    mid = np.empty_like(psi)
    _shift_axis(psi, mid, 0, 2)
    out = np.empty_like(psi)
    _shift_axis(mid, out, 1, 3)
    return state.with_amplitudes(out.reshape(state.amplitudes.shape))


def free_step(state: TwoWalkerState, coin: CoinOperator = HADAMARD) -> TwoWalkerState:
    shifted = shift_step(coin_step(state, coin))
    return shifted.with_amplitudes(shifted.amplitudes, time=state.time + 1)


def apply_interaction(state: TwoWalkerState, spec: InteractionSpec = NO_INTERACTION) -> TwoWalkerState:
    """Act with the contact operator on every cell with ``x1 == x2``."""
    if isinstance(spec, NoInteraction):
        return state
    amps = np.array(state.amplitudes)
    diag = np.arange(state.lattice.num_sites)
    contact = amps[:, diag, diag]
    if isinstance(spec, PhasePair):
        amps[:, diag, diag] = spec.phases()[:, None] * contact
    else:
        amps[:, diag, diag] = contact_matrix(spec) @ contact
    return state.with_amplitudes(amps)


def interacting_step(
    state: TwoWalkerState,
    coin: CoinOperator = HADAMARD,
    spec: InteractionSpec = NO_INTERACTION,
) -> TwoWalkerState:
    return apply_interaction(free_step(state, coin), spec)


def iter_evolution(
    initial: TwoWalkerState,
    coin: CoinOperator = HADAMARD,
    spec: InteractionSpec = NO_INTERACTION,
    steps: int = 1,
) -> Iterator[TwoWalkerState]:
    """Yield the state at t0, t0 + 1, ..., t0 + steps."""
    _check_steps(initial, steps)
    # Resolve the generator once instead of per step.
    if isinstance(spec, HermitianGenerator):
        spec = ExplicitCoinUnitary(build_coin_unitary(spec))
    state = initial
    yield state
    for _ in range(steps):
        state = interacting_step(state, coin, spec)
        yield state


def _check_steps(initial: TwoWalkerState, steps: int) -> None:
    if steps < 0:
        raise InvalidArgumentError("steps must be non-negative")
    if initial.time + steps > initial.lattice.max_steps:
        raise CapacityExceededError(
            f"{steps} steps from t={initial.time} exceed the lattice capacity of "
            f"{initial.lattice.max_steps}"
        )


@dataclass
class Trajectory:
    """Final state plus the snapshots recorded every ``record_every`` steps."""

    final: TwoWalkerState
    times: list[int]
    snapshots: list


def evolve(
    initial: TwoWalkerState,
    coin: CoinOperator = HADAMARD,
    spec: InteractionSpec = NO_INTERACTION,
    steps: int = 1,
    record_every: int | None = 1,
    observe: Callable[[TwoWalkerState], object] | None = None,
) -> Trajectory:
    """Run ``steps`` interleaved steps.

    Snapshots are taken at the initial time, every ``record_every`` steps and
    at the final step.  ``observe`` maps each recorded state to whatever is
    kept (the state itself by default), which avoids holding a hundred full
    wavefunctions when only observables are needed.  ``record_every=None``
    records nothing but the final state.
    """
    if record_every is not None and record_every < 1:
        raise InvalidArgumentError("record_every must be >= 1")
    observe = observe or (lambda s: s)
    times, snaps = [], []
    final = initial
    for k, state in enumerate(iter_evolution(initial, coin, spec, steps)):
        final = state
        if record_every is not None and (k % record_every == 0 or k == steps):
            times.append(state.time)
            snaps.append(observe(state))
    if record_every is None:
        times.append(final.time)
        snaps.append(observe(final))
    return Trajectory(final=final, times=times, snapshots=snaps)
