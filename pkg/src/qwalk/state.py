"""Lattice geometry and the two-walker wavefunction.

Amplitudes are stored as a dense complex array of shape ``(4, L, L)``
indexed by ``(spin pair, x1 index, x2 index)``.  The spin-pair axis follows
the fixed order UU, UD, DU, DD, i.e. ``pair = 2 * s1 + s2`` with up = 0 and
down = 1, so ``amplitudes.reshape(2, 2, L, L)`` separates the two coins.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

# Keeps the (4, L, L) complex array below ~16 GiB.
MAX_STEPS = 16_000

NORM_TOL = 1e-9


class SpinPair(enum.IntEnum):
    UU = 0
    UD = 1
    DU = 2
    DD = 3

    @classmethod
    def from_spins(cls, s1: int, s2: int) -> "SpinPair":
        return cls(2 * s1 + s2)

    @property
    def spins(self) -> tuple[int, int]:
        return divmod(int(self), 2)


UP, DOWN = 0, 1


@dataclass(frozen=True)
class Lattice:
    """Finite window of the integer line large enough for ``max_steps`` steps."""

    num_sites: int
    origin_index: int
    max_steps: int

    def __post_init__(self):
        if self.num_sites % 2 != 1 or self.num_sites < 2 * self.max_steps + 1:
            raise InvalidArgumentError(
                f"lattice of {self.num_sites} sites cannot hold {self.max_steps} steps"
            )
        if not 0 <= self.origin_index < self.num_sites:
            raise InvalidArgumentError("origin index outside the lattice")

    def coordinate(self, index: int) -> int:
        return index - self.origin_index

    def index(self, x: int) -> int:
        i = x + self.origin_index
        if not 0 <= i < self.num_sites:
            raise InvalidArgumentError(f"coordinate {x} lies outside the lattice")
        return i

    @property
    def coordinates(self) -> np.ndarray:
        return np.arange(self.num_sites) - self.origin_index

    @property
    def guard_margin(self) -> int:
        """Largest start offset for which ``max_steps`` steps stay wrap-free."""
        return min(self.origin_index, self.num_sites - 1 - self.origin_index) - self.max_steps


def make_lattice(max_steps: int) -> Lattice:
    """Lattice with ``2T + 3`` sites: the ``2T + 1`` reachable ones plus a guard site per side."""
    if isinstance(max_steps, bool) or not isinstance(max_steps, (int, np.integer)):
        raise InvalidArgumentError(f"max_steps must be an integer, got {max_steps!r}")
    if max_steps < 1 or max_steps > MAX_STEPS:
        raise InvalidArgumentError(f"max_steps must lie in [1, {MAX_STEPS}], got {max_steps}")
    num_sites = 2 * int(max_steps) + 3
    return Lattice(num_sites=num_sites, origin_index=(num_sites - 1) // 2, max_steps=int(max_steps))


@dataclass(frozen=True)
class CoinVector:
    up: complex
    down: complex

    @classmethod
    def plus(cls) -> "CoinVector":
        """(|up> + i|down>) / sqrt(2)."""
        s = 1 / math.sqrt(2)
        return cls(s, 1j * s)

    def as_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)

    def norm_squared(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2


@dataclass(frozen=True, eq=False)
class TwoWalkerState:
    """Immutable snapshot of the two-walker wavefunction at step ``time``."""

    amplitudes: np.ndarray
    lattice: Lattice
    time: int = 0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        L = self.lattice.num_sites
        if amps.shape != (4, L, L):
            raise InvalidArgumentError(f"amplitudes must have shape (4, {L}, {L}), got {amps.shape}")
        if self.time < 0:
            raise InvalidArgumentError("time must be non-negative")
        if amps is self.amplitudes and amps.flags.writeable:
            amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def spin_resolved(self) -> np.ndarray:
        """View of the amplitudes with shape ``(2, 2, L, L)``."""
        L = self.lattice.num_sites
        return self.amplitudes.reshape(2, 2, L, L)

    def amplitude(self, pair: SpinPair | int, x1: int, x2: int) -> complex:
        return complex(
            self.amplitudes[int(pair), self.lattice.index(x1), self.lattice.index(x2)]
        )

    def exchanged(self) -> "TwoWalkerState":
        """The state with the two walkers' labels swapped."""
        swapped = self.spin_resolved().transpose(1, 0, 3, 2).reshape(self.amplitudes.shape)
        return TwoWalkerState(np.ascontiguousarray(swapped), self.lattice, self.time)

    def with_amplitudes(self, amplitudes: np.ndarray, time: int | None = None) -> "TwoWalkerState":
        return TwoWalkerState(amplitudes, self.lattice, self.time if time is None else time)


def _check_coin(coin: CoinVector, name: str) -> None:
    if abs(coin.norm_squared() - 1.0) > NORM_TOL:
        raise InvalidArgumentError(f"{name} is not normalized (|c|^2 = {coin.norm_squared():.12g})")


def product_initial_state(
    lattice: Lattice,
    coin1: CoinVector | None = None,
    coin2: CoinVector | None = None,
    x1: int = 0,
    x2: int = 0,
) -> TwoWalkerState:
    """Both walkers localized, with independent coins (default ``|+>`` at the origin)."""
    coin1 = CoinVector.plus() if coin1 is None else coin1
    coin2 = CoinVector.plus() if coin2 is None else coin2
    _check_coin(coin1, "coin1")
    _check_coin(coin2, "coin2")
    margin = lattice.guard_margin
    if abs(x1) > margin or abs(x2) > margin:
        raise InvalidArgumentError(
            f"start positions must satisfy |x| <= {margin} on this lattice, got ({x1}, {x2})"
        )
    L = lattice.num_sites
    amps = np.zeros((4, L, L), dtype=complex)
    spins = np.outer(coin1.as_array(), coin2.as_array()).reshape(4)
    amps[:, lattice.index(x1), lattice.index(x2)] = spins
    return TwoWalkerState(amps, lattice, 0)


def norm_squared(state: TwoWalkerState) -> float:
    a = state.amplitudes
    return float(np.vdot(a, a).real)
