import numpy as np
import pytest

from ccshare.linalg import reduce_pair
from ccshare.measures import (
    _branch_terms,
    _cond_kernel,
    _proj_flat,
    _rho4,
)
from ccshare.optimize import (
    BlochMeasurement,
    OptimizationError,
    OptimizerSettings,
    bloch_projectors,
    canonical_angles,
    maximize_over_product_bases,
    minimize_over_qubit_basis,
)
from ccshare.sampling import SampleSeed, haar_random_pure
from ccshare.states import I2, SIGMA_X, ghz


def test_z_basis_projectors():
    p0, p1 = bloch_projectors(BlochMeasurement(0.0, 0.0))
    assert np.allclose(p0, np.diag([1, 0]))
    assert np.allclose(p1, np.diag([0, 1]))


def test_x_basis_projectors():
    p0, p1 = bloch_projectors(BlochMeasurement(np.pi / 2, 0.0))
    assert np.allclose(p0, (I2 + SIGMA_X) / 2, atol=1e-12)
    assert np.allclose(p1, (I2 - SIGMA_X) / 2, atol=1e-12)


def test_projector_algebra():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m = BlochMeasurement(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
        p0, p1 = bloch_projectors(m)
        assert np.max(np.abs(p0 + p1 - I2)) < 1e-12
        assert np.max(np.abs(p0 @ p0 - p0)) < 1e-12
        assert np.max(np.abs(p0 @ p1)) < 1e-12


def test_angle_validation():
    with pytest.raises(ValueError):
        BlochMeasurement(-0.1, 0.0)
    with pytest.raises(ValueError):
        BlochMeasurement(0.0, 7.0)
    with pytest.raises(ValueError):
        OptimizerSettings(grid_points_theta=4)


def test_canonical_angles_identify_antipodes():
    t, p = canonical_angles(np.pi - 0.3, 1.0 + np.pi)
    t2, p2 = canonical_angles(0.3, 1.0)
    assert t == pytest.approx(t2, abs=1e-12)
    assert p == pytest.approx(p2, abs=1e-12)


def test_constant_objective():
    m, value = minimize_over_qubit_basis(lambda _m: 2.5)
    assert value == pytest.approx(2.5)
    assert 0 <= m.theta <= np.pi / 2


def test_ghz_cqd_inner_term_minimized_at_z():
    # Measuring the second qubit of the GHZ pair reduction in z leaves
    # pure conditional states, so the average conditional entropy is 0.
    rho = reduce_pair(ghz(3), 1, 2)
    kernel = _cond_kernel(_rho4(rho))

    def objective(m):
        return float(_branch_terms(_proj_flat(m.theta, m.phi), kernel)[0])

    m, value = minimize_over_qubit_basis(objective)
    assert value == pytest.approx(0.0, abs=1e-9)
    assert m.theta == pytest.approx(0.0, abs=1e-3)


def test_refined_minimum_beats_fine_grid():
    fine_t = np.linspace(0, np.pi / 2, 181)
    fine_p = np.linspace(0, 2 * np.pi, 360, endpoint=False)
    tt, pp = (a.ravel() for a in np.meshgrid(fine_t, fine_p, indexing="ij"))
    for i in range(20):
        psi = haar_random_pure(2, SampleSeed(50, i))
        rho = reduce_pair(psi, 1, 2)
        kernel = _cond_kernel(_rho4(rho))

        def objective(m):
            return float(_branch_terms(_proj_flat(m.theta, m.phi), kernel)[0])

        def grid_objective(thetas, phis):
            return _branch_terms(_proj_flat(thetas, phis), kernel)[0]

        _, refined = minimize_over_qubit_basis(objective, grid_objective=grid_objective)
        fine_min = float(np.min(_branch_terms(_proj_flat(tt, pp), kernel)[0]))
        assert refined <= fine_min + 1e-4


def test_optimizer_determinism():
    rho = reduce_pair(haar_random_pure(3, SampleSeed(51, 0)), 1, 2)
    kernel = _cond_kernel(_rho4(rho))

    def objective(m):
        return float(_branch_terms(_proj_flat(m.theta, m.phi), kernel)[0])

    first = minimize_over_qubit_basis(objective)
    second = minimize_over_qubit_basis(objective)
    assert first == second


def test_non_finite_objective_reports_angles():
    def bad(m):
        return np.nan

    with pytest.raises(OptimizationError) as err:
        minimize_over_qubit_basis(bad)
    assert len(err.value.angles) == 2


def test_product_maximize_constant_and_spotcheck():
    _, _, value = maximize_over_product_bases(lambda a, b: 0.0)
    assert value == pytest.approx(0.0)

    rng = np.random.default_rng(6)

    def wavy(ma, mb):
        return float(np.cos(ma.theta) + np.sin(mb.theta) * np.cos(mb.phi))

    _, _, best = maximize_over_product_bases(wavy)
    for _ in range(10):
        ma = BlochMeasurement(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
        mb = BlochMeasurement(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
        assert best >= wavy(ma, mb) - 1e-9
