import numpy as np
import pytest

from spectralforge import pairing
from spectralforge.classical import ActionTable, classical_value, integrate_flow
from spectralforge.errors import InputError


def quadratic_two_mode_table(K=6):
    d = pairing.encode((K - 1, K - 1)) + 1
    idx = pairing.enumerate_first(d, 2)
    energies = (
        5.0
        + 1.0 * idx[:, 0]
        + 1.3 * idx[:, 1]
        + 0.08 * idx[:, 0] ** 2
        + 0.05 * idx[:, 1] ** 2
        + 0.04 * idx[:, 0] * idx[:, 1]
    )
    return ActionTable.build(energies, 2, K)


def test_value_examples():
    identity = ActionTable.build(np.arange(8.0), 1, 8)
    assert classical_value(identity, [1.0], [0.0]) == pytest.approx(0.0, abs=1e-12)
    odd = ActionTable.build(2 * np.arange(8.0) + 1, 1, 8)
    assert classical_value(odd, [np.sqrt(3.0)], [0.0]) == pytest.approx(3.0, abs=1e-10)


def test_value_two_mode_graded_lex_lookup():
    K = 5
    d = pairing.encode((K - 1, K - 1)) + 1
    energies = 5.0 + 2.0 * np.arange(d)  # E = (5, 7, 9, ...) by rank
    table = ActionTable.build(energies, 2, K)
    # actions (0, 1) sit at graded-lex rank 1, so the value is 7
    x = [1.0, np.sqrt(3.0)]
    p = [0.0, 0.0]
    assert classical_value(table, x, p) == pytest.approx(7.0, abs=1e-10)


def test_interpolant_exact_at_nodes():
    table = quadratic_two_mode_table()
    for j1 in range(table.K):
        for j2 in range(table.K):
            got = table.value_at_actions([j1, j2])
            assert got == pytest.approx(table.values[j1, j2], abs=1e-12)


def test_out_of_domain_rejected():
    table = ActionTable.build(np.arange(8.0), 1, 8)
    with pytest.raises(InputError):
        table.value_at_actions([7.5])
    with pytest.raises(InputError):
        classical_value(table, [10.0], [10.0])


def test_harmonic_flow_exact_circle():
    identity = ActionTable.build(np.arange(8.0), 1, 8)
    report = integrate_flow(identity, [1.0], [0.0], T=100.0, dt=0.01)
    assert report.max_action_drift < 1e-8
    assert not report.truncated


def test_two_mode_flow_conserves_actions():
    table = quadratic_two_mode_table()
    x0 = [np.sqrt(2 * 1.2 + 1), 0.0]
    p0 = [0.0, np.sqrt(2 * 2.1 + 1)]
    report = integrate_flow(table, x0, p0, T=100.0, dt=0.01)
    assert report.max_action_drift < 1e-6
    assert report.max_energy_drift < 1e-6
    assert not report.truncated
    # orbit stays on its torus: radius bounded by initial actions + drift
    radius = np.sqrt(report.xs**2 + report.ps**2)
    initial = np.sqrt(2 * report.actions[0] + 1)
    assert (radius <= initial + 1e-3).all()


def test_step_halving_reduces_drift():
    table = quadratic_two_mode_table()
    x0 = [np.sqrt(2 * 1.2 + 1), 0.0]
    p0 = [0.0, np.sqrt(2 * 2.1 + 1)]
    d1 = integrate_flow(table, x0, p0, T=100.0, dt=0.01).max_action_drift
    d2 = integrate_flow(table, x0, p0, T=100.0, dt=0.005).max_action_drift
    assert d1 / d2 >= 12.0


def test_default_step_from_table_frequency():
    table = ActionTable.build(10.0 * np.arange(8.0), 1, 8)
    report = integrate_flow(table, [1.0], [0.0], T=1.0)
    assert report.times[1] == pytest.approx(1e-2 / 10.0, rel=1e-6)


def test_domain_exit_truncates_with_flag():
    # the exact flow conserves actions, so force an exit with a step so coarse
    # the one-step map amplifies the orbit radius past the last node
    table = ActionTable.build(np.arange(6.0) ** 2, 1, 6)
    report = integrate_flow(table, [np.sqrt(2 * 4.9 + 1)], [0.0], T=10.0, dt=0.5)
    assert report.truncated
    assert report.times[-1] < 10.0


def test_trajectory_csv_shape():
    table = quadratic_two_mode_table()
    report = integrate_flow(table, [1.0, 1.0], [0.0, 0.0], T=1.0, dt=0.01)
    lines = report.trajectory_csv().strip().splitlines()
    assert lines[0] == "t,x1,x2,p1,p2,J1,J2,energy"
    assert len(lines) == report.times.size + 1


def test_build_validation():
    with pytest.raises(InputError):
        ActionTable.build(np.arange(10.0), 3, 4)
    with pytest.raises(InputError):
        ActionTable.build(np.arange(3.0), 1, 3)
    with pytest.raises(InputError):
        ActionTable.build(np.arange(5.0), 2, 4)  # too few energies for 4x4 grid
