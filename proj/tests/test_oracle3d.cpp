#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"
#include "dimred/oracle3d.hpp"
#include "dimred/relative_1d.hpp"
#include "dimred/scattering.hpp"

using namespace dimred;

namespace {

const TransverseMode& harmonic_mode() {
  static TransverseMode mode = [] {
    TransversePotential pot;
    pot.kind = TransverseKind::Harmonic;
    return solve_transverse(pot);
  }();
  return mode;
}

const PotentialSpec& soft_sphere() {
  static PotentialSpec spec = calibrate_unit_scattering_length(
      PotentialSpec::square_barrier(100.0, 1.0));
  return spec;
}

MeshPolicy coarse_policy() {
  MeshPolicy p;
  p.core_points_per_a = 16;
  p.trans_points_per_scale = 18;
  p.mid_points_per_r = 10;
  p.far_points_per_scale = 16;
  return p;
}

}  // namespace

TEST_CASE("center-of-mass separation") {
  GeometryParams geom{2, 0.1, 2.0, 0.0};
  const auto com = com_separation(geom, 3);
  CHECK(com.e_perp_over_r2 == doctest::Approx(200.0));
  CHECK(com.omega_z == doctest::Approx(0.5));
  CHECK(com.z_levels[0] == doctest::Approx(0.25));
  CHECK(com.z_levels[1] == doctest::Approx(0.75));
}

TEST_CASE("oracle configuration is rejected outside its domain") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 1.0, 0.0};
  tb.spec = soft_sphere();
  SUBCASE("non-harmonic transverse trap") {
    tb.transverse_kind = TransverseKind::TabulatedRadial;
    CHECK_THROWS_AS(tb.validate(), std::invalid_argument);
  }
  SUBCASE("non-harmonic longitudinal trap") {
    tb.longitudinal_harmonic = false;
    CHECK_THROWS_AS(tb.validate(), std::invalid_argument);
  }
  SUBCASE("hard core on the grid") {
    tb.spec = PotentialSpec::hard_core(1.0);
    CHECK_THROWS_AS(tb.validate(), std::invalid_argument);
  }
  SUBCASE("three-body request") {
    tb.geom.n = 3;
    CHECK_THROWS_AS(tb.validate(), std::invalid_argument);
  }
}

TEST_CASE("free relative problem reproduces the even oscillator ladder") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 1.0, 0.0};
  tb.spec = soft_sphere();
  tb.mesh = coarse_policy();
  tb.n_rel_levels = 3;
  const auto rel = solve_relative(tb);
  CHECK(rel.lambda[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(rel.lambda[1] == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(rel.lambda[2] == doctest::Approx(9.0).epsilon(1e-5));
  for (double r : rel.solver_residual) CHECK(r <= 1e-9);
}

TEST_CASE("free two-body spectrum is a product and overlaps are exact") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 1.0, 0.0};
  tb.spec = soft_sphere();
  tb.mesh = coarse_policy();
  tb.k_max = 3;
  const auto sp = verify_two_body(tb, harmonic_mode());
  CHECK(sp.excess[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(sp.total[0] == doctest::Approx(2.0 * 200.0 + 2.0).epsilon(1e-5));
  CHECK(sp.overlap_group[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sp.window_ok);
  for (double o : sp.overlap_group) CHECK(o <= 1.0 + 1e-9);
}

TEST_CASE("repulsion never lowers a level") {
  GeometryParams geom{2, 0.2, 1.0, 0.02};
  double prev = -1e300;
  for (double v0 : {5.0, 20.0, 80.0}) {
    TwoBodyConfig tb;
    tb.geom = geom;
    tb.spec = PotentialSpec::square_barrier(v0, 1.0);
    tb.mesh = coarse_policy();
    tb.n_rel_levels = 2;
    tb.richardson = false;
    const auto rel = solve_relative(tb);
    CHECK(rel.lambda[0] > prev);
    prev = rel.lambda[0];
  }
}

TEST_CASE("second-order mesh convergence") {
  // level shifts shrink fourfold when every spacing is halved; a smooth
  // bump keeps the interaction edge from polluting the order
  std::vector<double> ts, vs;
  for (int i = 0; i <= 128; ++i) {
    const double t = i / 128.0;
    ts.push_back(t);
    vs.push_back(30.0 * std::pow(1.0 - t * t, 2));
  }
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.2, 1.0, 0.02};
  tb.spec = calibrate_unit_scattering_length(PotentialSpec::tabulated(ts, vs));
  tb.mesh = coarse_policy();
  tb.n_rel_levels = 1;
  const auto r0 = solve_relative(tb);
  tb.mesh = tb.mesh.refined();
  const auto r1 = solve_relative(tb);
  const double ratio = r0.grid_defect[0] / r1.grid_defect[0];
  CHECK(ratio > 2.8);
  CHECK(ratio < 5.5);
  // the two extrapolations agree far inside the coarse defect
  CHECK(std::abs(r0.lambda[0] - r1.lambda[0]) < 0.2 * r0.grid_defect[0]);
}

TEST_CASE("interacting point: sandwich, overlaps, window") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 1.0, 0.01};  // g = 4
  tb.spec = soft_sphere();
  tb.mesh = coarse_policy();
  tb.k_max = 3;
  const auto& mode = harmonic_mode();
  const auto sp = verify_two_body(tb, mode);
  CHECK(sp.g == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(sp.window_ok);

  const double e1 = sp.e1d[0];
  const double gap_over_r2 = mode.gap / (tb.geom.r * tb.geom.r);
  const auto uc = upper_chain_explicit(tb.geom, mode, sp.g,
                                       soft_sphere().range_R0);
  const auto lc = lower_chain_explicit(
      tb.geom, mode, LowerChainParams::defaults(tb.geom), soft_sphere());
  const double lower = e1 * lc.effective_lower_factor * (1.0 - e1 / gap_over_r2);
  REQUIRE_FALSE(uc.vacuous);
  CHECK(lower <= sp.excess[0]);
  CHECK(sp.excess[0] <= e1 * uc.factor);
  CHECK(sp.excess[0] > e1);  // the confinement correction is repulsive here
  CHECK(sp.overlap_group[0] > 0.99);
}

TEST_CASE("scaling identity at ell = 1 is trivial") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 1.0, 0.005};
  tb.spec = soft_sphere();
  tb.mesh = coarse_policy();
  tb.k_max = 2;
  const auto res = scaling_check(tb, harmonic_mode());
  CHECK(res.rel_diff[0] <= 1e-10);
  CHECK(res.rel_diff[1] <= 1e-10);
}

TEST_CASE("scaling identity across trap lengths") {
  TwoBodyConfig tb;
  tb.geom = GeometryParams{2, 0.1, 2.0, 0.002};
  tb.spec = soft_sphere();
  tb.mesh = coarse_policy();
  tb.k_max = 2;
  const auto res = scaling_check(tb, harmonic_mode());
  CHECK(res.rel_diff[0] <= 1e-4);
  CHECK(res.rel_diff[1] <= 1e-4);
}

TEST_CASE("relative 1D reference") {
  SUBCASE("free and impenetrable ladders") {
    const auto lv0 = relative_1d_levels(2.0, 0.0, 3);
    CHECK(lv0[0] == doctest::Approx(0.25));
    CHECK(lv0[1] == doctest::Approx(1.25));
    const auto lvi = relative_1d_levels(1.0, kInfiniteCoupling, 2);
    CHECK(lvi[0] == doctest::Approx(3.0));
    CHECK(lvi[1] == doctest::Approx(7.0));
  }
  SUBCASE("large coupling approaches fermionization") {
    const auto lv = relative_1d_levels(1.0, 1e7, 2);
    CHECK(lv[0] == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(lv[1] == doctest::Approx(7.0).epsilon(1e-5));
  }
  SUBCASE("cross-module agreement with the trapped diagonalization") {
    const double g = 4.0;
    const double ref = 1.0 + relative_1d_levels(1.0, g, 1)[0];
    const auto sp = ll_spectrum_trapped(2, 1.0, g, 96, 1);
    CHECK(std::abs(sp.energies[0] - ref) / ref < 2e-5);
  }
  SUBCASE("normalized wavefunction") {
    const auto lvl = relative_1d_level(1.0, 3.0, 0);
    double nrm = 0.0;
    for (std::size_t i = 0; i + 1 < lvl.z.size(); ++i)
      nrm += (lvl.psi[i] * lvl.psi[i] + lvl.psi[i + 1] * lvl.psi[i + 1]) *
             (lvl.z[i + 1] - lvl.z[i]);
    CHECK(nrm == doctest::Approx(1.0).epsilon(1e-6));  // includes the 2x
    // cusp: psi'(0+) / psi(0) = g/4
    const double num = (relative_1d_eval(lvl, 1e-4) -
                        relative_1d_eval(lvl, 0.0)) / 1e-4;
    CHECK(num / relative_1d_eval(lvl, 0.0) ==
          doctest::Approx(3.0 / 4.0).epsilon(1e-2));
  }
}
