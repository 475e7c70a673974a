"""Smoke tests for the python bindings: quick analytic cross-checks."""

import math

import pytest

import dimred


@pytest.fixture(scope="module")
def mode():
    pot = dimred.TransversePotential()
    pot.kind = dimred.TransverseKind.harmonic
    return dimred.solve_transverse(pot)


def test_scattering_length_barrier():
    spec = dimred.PotentialSpec.square_barrier(100.0, 1.0)
    sol = dimred.solve_zero_energy(spec, 1.0)
    kap = math.sqrt(50.0)
    assert sol.scattering_length == pytest.approx(1.0 - math.tanh(kap) / kap,
                                                  rel=1e-10)


def test_kernel_identity():
    spec = dimred.calibrate_unit_scattering_length(
        dimred.PotentialSpec.square_barrier(100.0, 1.0))
    sol = dimred.solve_zero_energy(spec, 1.0)
    f = dimred.build_jastrow(sol, 4.0)
    k = dimred.kernels(f)
    a = sol.scattering_length
    assert k.integral_h == pytest.approx(4 * math.pi * a / (1 - a / 4),
                                         rel=1e-6)


def test_transverse_analytics(mode):
    assert mode.e_perp == pytest.approx(2.0, abs=1e-6)
    assert mode.gap == pytest.approx(2.0, abs=1e-6)
    assert mode.norm4_4 == pytest.approx(1 / (2 * math.pi), rel=1e-6)


def test_effective_coupling(mode):
    geom = dimred.GeometryParams(2, 0.1, 1.0, 0.01)
    assert dimred.effective_g(geom, mode) == pytest.approx(4.0, rel=1e-6)


def test_bethe_pair_transcendental():
    st = dimred.bethe_solve(2, 1.0, 2.0, [-1, 1])
    k = st.rapidities[1]
    assert k * math.tan(k / 2) == pytest.approx(0.5, rel=1e-9)
    assert st.energy == pytest.approx(2 * k * k)


def test_periodic_spectrum_monotone_in_g():
    prev = None
    for g in (0.5, 2.0, 8.0):
        sp = dimred.ll_spectrum_periodic(2, 1.0, g, 3)
        if prev is not None:
            assert all(e2 >= e1 - 1e-10 for e1, e2 in zip(prev, sp.energies))
        prev = sp.energies


def test_relative_levels_limits():
    assert dimred.relative_1d_levels(1.0, 0.0, 2) == pytest.approx([1.0, 5.0])
    assert dimred.relative_1d_levels(
        1.0, dimred.INFINITE_COUPLING, 2) == pytest.approx([3.0, 7.0])


def test_lemma_overlap_values():
    assert dimred.lemma2_overlap([1.0, 2.0], 1.1) == pytest.approx(0.9)
    assert dimred.lemma2_overlap([1.0, 2.0, 3.0], 1.05, 1) == pytest.approx(0.8)


def test_two_body_oracle_free_case(mode):
    cfg = dimred.TwoBodyConfig()
    cfg.geom = dimred.GeometryParams(2, 0.1, 1.0, 0.0)
    cfg.spec = dimred.calibrate_unit_scattering_length(
        dimred.PotentialSpec.square_barrier(100.0, 1.0))
    policy = dimred.MeshPolicy()
    policy.core_points_per_a = 12
    policy.trans_points_per_scale = 12
    policy.mid_points_per_r = 6
    policy.far_points_per_scale = 12
    cfg.mesh = policy
    cfg.k_max = 2
    cfg.n_rel_levels = 2
    sp = dimred.verify_two_body(cfg, mode)
    assert sp.excess[0] == pytest.approx(2.0, abs=1e-3)
    assert sp.overlap_group[0] == pytest.approx(1.0, abs=1e-4)
