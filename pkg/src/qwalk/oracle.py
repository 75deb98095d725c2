"""Brute-force cross-check: the full step operator as an explicit dense matrix.

Basis ordering is ``(spin pair, x1 index, x2 index)`` flattened in C order,
i.e. ``k = (pair * L + i1) * L + i2``.  This is exactly
``TwoWalkerState.amplitudes.reshape(-1)``.

Everything here is assembled from basis kets by index bookkeeping and uses
``scipy.linalg.expm`` for the generator route, so it shares no stepping code
with the engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import evolution
from .errors import CapacityExceededError, InvalidArgumentError
from .evolution import (
    HADAMARD,
    PAULI,
    CoinOperator,
    ExplicitCoinUnitary,
    HermitianGenerator,
    InteractionSpec,
    NoInteraction,
    PhasePair,
)
from .state import CoinVector, Lattice, TwoWalkerState, make_lattice, product_initial_state

MAX_DENSE_SITES = 15
DEFAULT_SEED = 20240917
SEED_ENV = "QWALK_SEED"


def basis_index(lattice: Lattice, pair: int, i1: int, i2: int) -> int:
    L = lattice.num_sites
    return (pair * L + i1) * L + i2


@dataclass(frozen=True, eq=False)
class DenseStep:
    matrix: np.ndarray
    lattice: Lattice

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def unitarity_error(self) -> float:
        m = self.matrix
        return float(np.abs(m.conj().T @ m - np.eye(self.dim)).max())


def dense_coin(lattice: Lattice, coin: CoinOperator) -> np.ndarray:
    L = lattice.num_sites
    cc = np.kron(coin.matrix, coin.matrix)
    return np.kron(cc, np.eye(L * L))


def dense_shift(lattice: Lattice) -> np.ndarray:
    """Permutation moving each walker right on up (0) and left on down (1), cyclic."""
    L = lattice.num_sites
    dim = 4 * L * L
    s = np.zeros((dim, dim))
    for pair in range(4):
        s1, s2 = divmod(pair, 2)
        d1 = 1 if s1 == 0 else -1
        d2 = 1 if s2 == 0 else -1
        for i1 in range(L):
            for i2 in range(L):
                src = basis_index(lattice, pair, i1, i2)
                dst = basis_index(lattice, pair, (i1 + d1) % L, (i2 + d2) % L)
                s[dst, src] = 1.0
    return s


def dense_contact_projector(lattice: Lattice) -> np.ndarray:
    """Projector onto lattice configurations with both walkers on one site."""
    L = lattice.num_sites
    pi = np.zeros((L * L, L * L))
    for i in range(L):
        pi[i * L + i, i * L + i] = 1.0
    return pi


def oracle_coin_unitary(spec: InteractionSpec) -> np.ndarray:
    if isinstance(spec, NoInteraction):
        return np.eye(4, dtype=complex)
    if isinstance(spec, PhasePair):
        # I + z+ P+ + z- P- restricted to the coin space
        same = np.diag([1.0, 0.0, 0.0, 1.0])
        opposite = np.diag([0.0, 1.0, 1.0, 0.0])
        zp = np.exp(1j * spec.theta_plus) - 1
        zm = np.exp(1j * spec.theta_minus) - 1
        return np.eye(4) + zp * same + zm * opposite
    if isinstance(spec, HermitianGenerator):
        gen = sum(
            spec.h[i, j] * np.kron(PAULI[i], PAULI[j]) for i in range(4) for j in range(4)
        )
        return expm(1j * gen)
    if isinstance(spec, ExplicitCoinUnitary):
        return np.array(spec.matrix)
    raise InvalidArgumentError(f"unknown interaction spec {spec!r}")


def dense_interaction(lattice: Lattice, spec: InteractionSpec) -> np.ndarray:
    L = lattice.num_sites
    o = oracle_coin_unitary(spec)
    return np.eye(4 * L * L) + np.kron(o - np.eye(4), dense_contact_projector(lattice))


def build_dense_step(
    lattice: Lattice,
    coin: CoinOperator = HADAMARD,
    spec: InteractionSpec = NoInteraction(),
) -> DenseStep:
    """``V (S x S)(C x C)`` as a ``4 L^2`` square matrix."""
    if lattice.num_sites > MAX_DENSE_SITES:
        raise CapacityExceededError(
            f"dense oracle supports at most {MAX_DENSE_SITES} sites, got {lattice.num_sites}"
        )
    m = dense_interaction(lattice, spec) @ dense_shift(lattice) @ dense_coin(lattice, coin)
    return DenseStep(m, lattice)


def compare_evolutions(
    lattice: Lattice,
    coin: CoinOperator,
    spec: InteractionSpec,
    initial: TwoWalkerState,
    steps: int,
) -> float:
    """Max |amplitude difference| between dense and engine evolution after ``steps`` steps."""
    if steps < 0 or steps > (lattice.num_sites - 3) // 2:
        raise InvalidArgumentError(
            f"steps must lie in [0, {(lattice.num_sites - 3) // 2}] for {lattice.num_sites} sites"
        )
    if initial.lattice != lattice:
        raise InvalidArgumentError("initial state lives on a different lattice")
    m = build_dense_step(lattice, coin, spec).matrix
    vec = initial.amplitudes.reshape(-1).copy()
    for _ in range(steps):
        vec = m @ vec
    state = initial
    for _ in range(steps):
        state = evolution.interacting_step(state, coin, spec)
    return float(np.abs(state.amplitudes.reshape(-1) - vec).max(initial=0.0))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_coin(rng: np.random.Generator) -> CoinVector:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return CoinVector(complex(v[0]), complex(v[1]))


def random_specs(rng: np.random.Generator, count: int = 24) -> list[InteractionSpec]:
    """``count`` specs cycling through all four interaction variants."""
    specs: list[InteractionSpec] = []
    for k in range(count):
        kind = k % 4
        if kind == 0:
            specs.append(NoInteraction())
        elif kind == 1:
            a, b = rng.uniform(-2 * np.pi, 2 * np.pi, size=2)
            specs.append(PhasePair(float(a), float(b)))
        elif kind == 2:
            specs.append(HermitianGenerator(rng.normal(size=(4, 4))))
        else:
            specs.append(ExplicitCoinUnitary(random_unitary(rng, 4)))
    return specs


def seed_from_env() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InvalidArgumentError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclass
class OracleCase:
    label: str
    spec: InteractionSpec
    num_sites: int
    steps: int
    deviation: float
    unitarity_error: float


def run_oracle_suite(seed: int | None = None, count: int = 24, steps: int = 3) -> list[OracleCase]:
    """Engine vs dense evolution for seeded random specs and coins.

    Covers both the 9-site lattice (``steps`` steps) and the 5-site one (1 step).
    """
    seed = seed_from_env() if seed is None else seed
    rng = np.random.default_rng(seed)
    cases = []
    specs = random_specs(rng, count)
    for k, spec in enumerate(specs):
        for T, n_steps in ((steps, steps), (1, 1)):
            lattice = make_lattice(T)
            initial = product_initial_state(lattice, random_coin(rng), random_coin(rng))
            step = build_dense_step(lattice, HADAMARD, spec)
            dev = compare_evolutions(lattice, HADAMARD, spec, initial, n_steps)
            cases.append(
                OracleCase(
                    label=f"#{k:02d} {describe_spec(spec)}",
                    spec=spec,
                    num_sites=lattice.num_sites,
                    steps=n_steps,
                    deviation=dev,
                    unitarity_error=step.unitarity_error(),
                )
            )
    return cases


def describe_spec(spec: InteractionSpec) -> str:
    if isinstance(spec, NoInteraction):
        return "none"
    if isinstance(spec, PhasePair):
        return f"phase(theta+={spec.theta_plus:.6g}, theta-={spec.theta_minus:.6g})"
    if isinstance(spec, HermitianGenerator):
        return "hermitian(h=" + np.array2string(spec.h.ravel(), precision=4, max_line_width=10**6) + ")"
    return "unitary(O=" + np.array2string(spec.matrix.ravel(), precision=4, max_line_width=10**6) + ")"
