import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nucleus_entanglement.corrections import CorrectionTable, nonadditive_gap
from nucleus_entanglement.dynamics import (
    DensityMatrix,
    PurityTrace,
    StateError,
    make_product_state,
    purity_of,
    purity_trace,
    purity_values,
    reduced_density_matrix,
    spectra_for,
    trace_summary,
)
from nucleus_entanglement.spectra import SubsystemKind, electron_spectrum, nucleus_spectrum
from strategies import product_states

HBAR = 6.582119569e-16


@pytest.fixture(scope="module")
def spectra(params):
    return electron_spectrum(15, params), nucleus_spectrum(10, params)


@pytest.fixture(scope="module")
def fig2():
    return make_product_state([(1, 1), (2, 1)], [(1, 1), (2, 1)])


def test_normalization():
    s = make_product_state([(1, 1), (2, 1)], [(1, 1), (2, 1)])
    np.testing.assert_allclose(s.electron_amplitudes, [2**-0.5] * 2, rtol=1e-15)
    np.testing.assert_allclose(s.nucleus_amplitudes, [2**-0.5] * 2, rtol=1e-15)


def test_levels_sorted():
    s = make_product_state([(3, 1j), (1, 2)], [(1, 1)])
    assert s.electron_levels == (1, 3)
    assert s.electron_amplitudes[1] == pytest.approx(1j / math.sqrt(5))


@pytest.mark.parametrize(
    "electron, nucleus",
    [
        ([(1, 1)], [(1, 0), (2, 0)]),
        ([(1, 1), (1, 1)], [(1, 1)]),
        ([], [(1, 1)]),
        ([(0, 1)], [(1, 1)]),
    ],
)
def test_invalid_states(electron, nucleus):
    with pytest.raises(StateError):
        make_product_state(electron, nucleus)


def test_high_n_state_valid():
    s = make_product_state([(14, 1), (15, 1)], [(1, 1), (2, 1)])
    assert s.dims == (2, 2)


@given(product_states(), st.sampled_from(list(SubsystemKind)))
@settings(max_examples=30, deadline=None)
def test_initial_rank_one(table_6x10, params, state, kind):
    rho = reduced_density_matrix(state, table_6x10, spectra_for(state, params), 0.0, kind)
    amps = state.electron_amplitudes if kind is SubsystemKind.ELECTRON else state.nucleus_amplitudes
    np.testing.assert_allclose(rho.matrix, np.outer(amps, amps.conj()), atol=1e-15)
    assert purity_of(rho) == pytest.approx(1.0, abs=1e-12)


@given(product_states(), st.floats(0.0, 1e-2), st.sampled_from(list(SubsystemKind)))
@settings(max_examples=50, deadline=None)
def test_density_matrix_valid(table_6x10, params, state, t, kind):
    rho = reduced_density_matrix(state, table_6x10, spectra_for(state, params), t, kind)
    rho.check()


def test_fig2_maximally_mixed(fig2, table_6x10, spectra):
    gap = nonadditive_gap(1, 2, 1, 2, table_6x10)
    t = math.pi * HBAR / abs(gap)
    rho = reduced_density_matrix(fig2, table_6x10, spectra, t).matrix
    assert abs(rho[0, 1]) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(np.diag(rho).real, [0.5, 0.5], atol=1e-12)
    assert purity_of(rho) == pytest.approx(0.5, abs=1e-12)


def test_purity_of_mixed():
    assert purity_of(np.eye(2) / 2) == pytest.approx(0.5)
    assert purity_of(np.eye(10) / 10) == pytest.approx(0.1)
    v = np.array([1, 1j, -1]) / math.sqrt(3)
    assert purity_of(DensityMatrix(SubsystemKind.ELECTRON, (1, 2, 3), np.outer(v, v.conj()))) == pytest.approx(1.0)


def test_fig2_closed_form_trace(fig2, table_6x10, spectra):
    gap = nonadditive_gap(1, 2, 1, 2, table_6x10)
    period = 2 * math.pi * HBAR / abs(gap)
    trace = purity_trace(fig2, table_6x10, spectra, period, 2001)
    expected = 0.75 + 0.25 * np.cos(gap * trace.times_s / HBAR)
    np.testing.assert_allclose(trace.purity, expected, rtol=0, atol=1e-10)
    summary = trace_summary(trace)
    assert summary.min == pytest.approx(0.5, abs=1e-6)
    assert summary.argmin_s == pytest.approx(period / 2, rel=1e-9)
    assert trace.purity[0] == pytest.approx(1.0, abs=1e-12)


def test_grid(fig2, table_6x10, spectra):
    trace = purity_trace(fig2, table_6x10, spectra, 3.0, 4)
    np.testing.assert_array_equal(trace.times_s, [0.0, 1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        purity_trace(fig2, table_6x10, spectra, 1.0, 1)
    with pytest.raises(ValueError):
        purity_trace(fig2, table_6x10, spectra, 0.0, 10)


@given(product_states(nucleus_dim=1), st.floats(1e-8, 1e3))
@settings(max_examples=20, deadline=None)
def test_single_nucleus_level_stays_pure(table_6x10, params, state, t_max):
    trace = purity_trace(state, table_6x10, spectra_for(state, params), t_max, 50)
    np.testing.assert_allclose(trace.purity, 1.0, rtol=0, atol=1e-12)


def test_single_nucleus_level_many_electrons(table_6x10, params):
    state = make_product_state([(n, 1) for n in range(1, 7)], [(3, 1)])
    trace = purity_trace(state, table_6x10, spectra_for(state, params), 1e3, 500)
    np.testing.assert_allclose(trace.purity, 1.0, rtol=0, atol=1e-12)


@given(product_states(), st.lists(st.floats(0.0, 1e-3), min_size=10, max_size=10))
@settings(max_examples=30, deadline=None)
def test_subsystem_symmetry(table_6x10, params, state, times):
    spectra = spectra_for(state, params)
    pe = purity_values(state, table_6x10, spectra, times, SubsystemKind.ELECTRON)
    pc = purity_values(state, table_6x10, spectra, times, SubsystemKind.NUCLEUS)
    np.testing.assert_allclose(pe, pc, rtol=0, atol=1e-10)


@given(product_states(), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_additive_shift_invariance(table_6x10, params, state, seed):
    rng = np.random.default_rng(seed)
    scale = 1e-9
    u = rng.uniform(-scale, scale, size=6)
    v = rng.uniform(-scale, scale, size=10)
    shifted = CorrectionTable(
        table_6x10.electron_levels,
        table_6x10.nucleus_levels,
        table_6x10.values_eV + u[:, None] + v[None, :],
    )
    spectra = spectra_for(state, params)
    times = np.linspace(0.0, 1e-4, 64)
    np.testing.assert_allclose(
        purity_values(state, shifted, spectra, times),
        purity_values(state, table_6x10, spectra, times),
        rtol=0,
        atol=1e-12,
    )


@given(product_states(), st.floats(0.0, 2 * math.pi))
@settings(max_examples=30, deadline=None)
def test_phase_invariance(table_6x10, params, state, phi):
    spectra = spectra_for(state, params)
    rotated_e = state.electron_amplitudes.copy()
    rotated_e[0] *= complex(math.cos(phi), math.sin(phi))
    rotated = make_product_state(
        zip(state.electron_levels, rotated_e), zip(state.nucleus_levels, state.nucleus_amplitudes)
    )
    times = np.linspace(0.0, 1e-3, 64)
    np.testing.assert_allclose(
        purity_values(rotated, table_6x10, spectra, times),
        purity_values(state, table_6x10, spectra, times),
        rtol=0,
        atol=1e-12,
    )


@given(product_states(), st.floats(1e-6, 1e4))
@settings(max_examples=40, deadline=None)
def test_purity_bounds(table_6x10, params, state, t_max):
    trace = purity_trace(state, table_6x10, spectra_for(state, params), t_max, 200)
    assert np.all(trace.purity <= 1 + 1e-12)
    assert np.all(trace.purity > 0)
    assert np.all(trace.purity >= 1 / min(state.dims) - 1e-12)


def test_huge_times_stay_physical(params):
    from nucleus_entanglement.corrections import build_correction_table

    state = make_product_state([(14, 1), (15, 1)], [(1, 1), (2, 1)])
    table = build_correction_table([14, 15], [1, 2], params)
    gap = nonadditive_gap(14, 15, 1, 2, table)
    trace = purity_trace(state, table, spectra_for(state, params), 1e20, 101)
    expected = 0.75 + 0.25 * np.cos(gap * trace.times_s / HBAR)
    np.testing.assert_allclose(trace.purity, expected, rtol=0, atol=1e-10)


def test_missing_level(fig2, params):
    table = CorrectionTable((1,), (1, 2), [[1e-9, 2e-9]])
    with pytest.raises(KeyError):
        reduced_density_matrix(fig2, table, spectra_for(fig2, params), 0.0)


def test_summary_constant_trace():
    trace = PurityTrace(np.linspace(0, 1, 5), np.ones(5))
    s = trace_summary(trace, thresholds=(0.999, 0.5))
    assert s.first_crossing == {0.999: None, 0.5: None}
    assert s.min == 1.0 and s.mean == 1.0 and s.argmin_s == 0.0


def test_summary_first_crossing():
    trace = PurityTrace(np.arange(5.0), np.array([1.0, 0.9995, 0.998, 0.99, 0.999]))
    s = trace_summary(trace, thresholds=(0.999, 0.995))
    assert s.first_crossing == {0.999: 2.0, 0.995: 3.0}
    assert s.argmin_s == 3.0
    with pytest.raises(ValueError):
        trace_summary(PurityTrace(np.array([]), np.array([])))
