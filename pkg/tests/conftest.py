import functools
import math

import numpy as np
import pytest

from qwalk import HADAMARD, PhasePair, evolve, make_lattice, product_initial_state

ACCEPTANCE_LINES = []

T_PAPER = 100


@functools.lru_cache(maxsize=None)
def final_state(theta_plus, theta_minus=0.0, steps=T_PAPER):
    """Final state of the default |+>|+> run at the origin, cached across tests."""
    lattice = make_lattice(steps)
    initial = product_initial_state(lattice)
    return evolve(initial, HADAMARD, PhasePair(theta_plus, theta_minus), steps, record_every=None).final


@pytest.fixture
def lattice3():
    return make_lattice(3)


@pytest.fixture
def plus_state():
    return product_initial_state(make_lattice(100))


@pytest.fixture
def report():
    """Record one acceptance line and fail the test when the criterion fails."""

    def _report(number, name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {name}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(ACCEPTANCE_LINES), key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


THETAS_8 = [k * math.pi / 4 for k in range(8)]


def brute_force_rdm(state):
    """Partial trace over walker 2 by explicit summation over its coin and position."""
    L = state.lattice.num_sites
    psi = state.spin_resolved()
    rho = np.zeros((2 * L, 2 * L), dtype=complex)
    nz = np.argwhere(np.abs(psi) > 0)
    rows = {}
    for s1, s2, i1, i2 in nz:
        rows.setdefault((s2, i2), []).append((s1, i1))
    for (s2, i2), entries in rows.items():
        for s, x in entries:
            for sp, xp in entries:
                rho[s * L + x, sp * L + xp] += np.conj(psi[s, s2, x, i2]) * psi[sp, s2, xp, i2]
    return rho
