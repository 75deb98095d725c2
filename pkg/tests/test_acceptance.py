"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line (collected again in the terminal summary).
"""

import math

import numpy as np
import pytest

from conftest import T_PAPER, THETAS_8, brute_force_rdm, final_state
from qwalk import (
    HADAMARD,
    ExplicitCoinUnitary,
    HermitianGenerator,
    NoInteraction,
    PhasePair,
    interacting_step,
    iter_evolution,
    joint_distribution,
    make_lattice,
    marginal,
    norm_squared,
    product_initial_state,
    reduced_density_matrix,
    zone_probabilities,
)
from qwalk.observables import binary_entropy, von_neumann_entropy
from qwalk.oracle import compare_evolutions, random_coin, random_specs, seed_from_env


def test_01_unitarity(report):
    worst = 0.0
    for theta in (0.0, math.pi / 4, math.pi, 3 * math.pi / 2):
        worst = max(worst, abs(norm_squared(final_state(theta)) - 1))
    report(1, "unitarity after 100 interleaved steps", worst <= 1e-10, f"max |norm^2 - 1| = {worst:.2e}")


def test_02_non_interacting_factorization(report):
    joint = joint_distribution(final_state(0.0))
    n = marginal(joint).values
    fact = float(np.abs(joint.values - np.outer(n, n)).max())
    z = zone_probabilities(joint)
    gap = abs(z.p_b - z.p_c)
    report(
        2,
        "theta=0 factorization and pB = pC",
        fact <= 1e-12 and gap <= 1e-10,
        f"max |P - n n| = {fact:.2e}, |pB - pC| = {gap:.2e}",
    )


def test_03_bunching_plateau(report):
    z = zone_probabilities(joint_distribution(final_state(math.pi)))
    report(3, "theta=pi bunching plateau pA = 0.45 +- 0.05", abs(z.p_a - 0.45) <= 0.05, f"pA = {z.p_a:.4f}")


def test_04_zero_entanglement_line(report):
    lat = make_lattice(T_PAPER)
    worst = 0.0
    for state in iter_evolution(product_initial_state(lat), HADAMARD, PhasePair(0.0), T_PAPER):
        worst = max(worst, abs(reduced_density_matrix(state).entropy))
    report(4, "theta=0 entropy vanishes for all t <= 100", worst <= 1e-10, f"max |E| = {worst:.2e}")


def test_05_first_step_closed_form(report):
    worst_engine = worst_brute = 0.0
    lat = make_lattice(2)
    for theta in THETAS_8:
        s = interacting_step(product_initial_state(lat), HADAMARD, PhasePair(theta))
        expected = binary_entropy((1 + abs(math.cos(theta))) / 2)
        worst_engine = max(worst_engine, abs(reduced_density_matrix(s).entropy - expected))
        brute = np.clip(np.linalg.eigvalsh(brute_force_rdm(s)), 0, None)
        worst_brute = max(worst_brute, abs(von_neumann_entropy(brute) - expected))
    report(
        5,
        "E(1, theta) = h2((1 + |cos theta|) / 2) on 8 angles",
        worst_engine <= 1e-10 and worst_brute <= 1e-10,
        f"engine {worst_engine:.2e}, brute-force trace {worst_brute:.2e}",
    )


def _observables(state):
    joint = joint_distribution(state)
    return (
        joint.values,
        marginal(joint).values,
        np.array(zone_probabilities(joint).as_tuple()),
        np.array([reduced_density_matrix(state).entropy]),
    )


def test_06_two_pi_periodicity(report):
    worst = 0.0
    for theta in (math.pi / 2, math.pi, 7 * math.pi / 4):
        a, b = final_state(theta), final_state(theta + 2 * math.pi)
        worst = max(worst, float(np.abs(a.amplitudes - b.amplitudes).max()))
        for x, y in zip(_observables(a), _observables(b)):
            worst = max(worst, float(np.abs(x - y).max()))
    report(6, "theta and theta + 2pi agree", worst <= 1e-10, f"max deviation {worst:.2e}")


def test_07_qualitative_theta_shape(report):
    e_late = reduced_density_matrix(final_state(7 * math.pi / 4)).entropy
    e_pi = reduced_density_matrix(final_state(math.pi)).entropy
    pa_small = zone_probabilities(joint_distribution(final_state(math.pi / 8))).p_a
    pa_half = zone_probabilities(joint_distribution(final_state(math.pi / 2))).p_a
    report(
        7,
        "E(100, 7pi/4) < E(100, pi) and pA(pi/8) < pA(pi/2)",
        e_late < e_pi and pa_small < pa_half,
        f"E(7pi/4) = {e_late:.4f}, E(pi) = {e_pi:.4f}, pA(pi/8) = {pa_small:.4f}, pA(pi/2) = {pa_half:.4f}",
    )


def test_08_oracle_equivalence(report):
    rng = np.random.default_rng(seed_from_env())
    lat = make_lattice(3)
    assert lat.num_sites == 9
    specs = random_specs(rng, 24)
    kinds = {type(s) for s in specs}
    worst = 0.0
    for spec in specs:
        initial = product_initial_state(lat, random_coin(rng), random_coin(rng))
        worst = max(worst, compare_evolutions(lat, HADAMARD, spec, initial, 3))
    covered = kinds == {NoInteraction, PhasePair, HermitianGenerator, ExplicitCoinUnitary}
    report(
        8,
        "engine equals dense oracle (L=9, 3 steps, 24 specs)",
        worst <= 1e-12 and covered and len(specs) >= 20,
        f"max deviation {worst:.2e}",
    )


def test_09_support_parity_exchange(report):
    lat = make_lattice(T_PAPER)
    x = lat.coordinates
    support_ok = True
    worst_exchange = 0.0
    for state in iter_evolution(product_initial_state(lat), HADAMARD, PhasePair(math.pi), T_PAPER):
        t = state.time
        outside = (np.abs(x) > t) | ((x + t) % 2 != 0)
        a = state.amplitudes
        support_ok &= bool(np.all(a[:, outside, :] == 0) and np.all(a[:, :, outside] == 0))
        worst_exchange = max(worst_exchange, float(np.abs(state.exchanged().amplitudes - a).max()))
    report(
        9,
        "support and parity exact, exchange symmetry at every step (theta=pi)",
        support_ok and worst_exchange <= 1e-12,
        f"support/parity exact: {support_ok}, exchange deviation {worst_exchange:.2e}",
    )


def test_10_figure_one_corners(report):
    joint = joint_distribution(final_state(0.0))
    p = joint.values
    x = joint.lattice.coordinates
    top = np.argsort(p.ravel(), kind="stable")[::-1][:4]
    cells = [(int(x[k // p.shape[1]]), int(x[k % p.shape[1]])) for k in top]
    far = all(abs(a) > 2 * T_PAPER / 3 and abs(b) > 2 * T_PAPER / 3 for a, b in cells)
    quadrants = {(a > 0, b > 0) for a, b in cells}
    report(
        10,
        "theta=0 four largest P(x1, x2) in the four corners",
        far and len(quadrants) == 4,
        f"cells {cells}",
    )
