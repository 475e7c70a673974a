#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimred/numerics.hpp"
#include "dimred/reduction.hpp"
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

}  // namespace

TEST_CASE("effective coupling") {
  const auto& mode = harmonic_mode();
  GeometryParams geom{2, 0.1, 1.0, 0.01};
  CHECK(effective_g(geom, mode) == doctest::Approx(4.0).epsilon(1e-6));
  geom.a = 0.0;
  CHECK(effective_g(geom, mode) == 0.0);
  geom.a = 0.02;
  CHECK(effective_g(geom, mode) == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("deviation scales") {
  GeometryParams geom{2, 1.0, 1.0, 0.5e-8};  // na/r = 1e-8
  CHECK(eta_lower(geom, 1.0) == doctest::Approx(0.104).epsilon(1e-12));
  geom.a = 0.0;
  CHECK(eta_lower(geom, 1.0) == 0.0);
  CHECK(eta_upper(geom, 1.0) == 0.0);
  geom.a = 0.5e-3;  // na/r = 1e-3
  CHECK(eta_upper(geom, 1.0) == doctest::Approx(1e-2).epsilon(1e-12));
  geom.a = 0.5;  // na/r = 1 sits on the validity boundary
  CHECK(eta_upper(geom, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-sided envelope") {
  const auto& mode = harmonic_mode();
  SUBCASE("tiny deviations collapse the envelope") {
    // the 1/8 power needs na/r ~ 1e-24 before eta_L reaches 1e-3
    GeometryParams geom{2, 0.1, 1.0, 5e-26};
    const auto env = theorem1_envelope({1.0, 2.0}, geom, mode, 1.0, 1.0);
    CHECK(env.lower[0] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(env.upper[0] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(env.valid_lower[0]);
    CHECK(env.valid_upper[0]);
    CHECK(env.lower[0] <= env.upper[0]);
  }
  SUBCASE("a level at the gap edge loses its lower bound") {
    GeometryParams geom{2, 0.1, 1.0, 5e-26};
    const double edge = mode.gap / (geom.r * geom.r);
    const auto env = theorem1_envelope({edge}, geom, mode, 1.0, 1.0);
    CHECK(env.lower[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(env.valid_lower[0]);
  }
  SUBCASE("lower never exceeds upper when valid") {
    GeometryParams geom{2, 0.1, 1.0, 2e-4};
    const auto env =
        theorem1_envelope({0.5, 1.0, 3.0, 10.0}, geom, mode, 1.0, 1.0);
    for (std::size_t k = 0; k < env.e1d.size(); ++k)
      if (env.valid_lower[k] && env.valid_upper[k] && env.eta_L < 1.0)
        CHECK(env.lower[k] <= env.upper[k]);
  }
}

TEST_CASE("explicit upper chain") {
  const auto& mode = harmonic_mode();
  SUBCASE("factor tends to one as a vanishes") {
    double prev = 1e300;
    for (double a : {1e-3, 1e-4, 1e-5, 1e-6}) {
      GeometryParams geom{2, 0.1, 1.0, a};
      const double g = effective_g(geom, mode);
      const auto uc =
          upper_chain_explicit(geom, mode, g, soft_sphere().range_R0);
      CHECK_FALSE(uc.vacuous);
      CHECK(uc.factor >= 1.0);
      CHECK(uc.factor < prev);
      prev = uc.factor;
    }
    CHECK(prev < 1.01);
  }
  SUBCASE("the three-body correction vanishes for a pair") {
    GeometryParams geom{2, 0.1, 1.0, 1e-3};
    const auto uc = upper_chain_explicit(geom, mode, 4.0, 1.0);
    CHECK(uc.K == 0.0);
  }
  SUBCASE("dimensionless factors depend only on the ratios") {
    GeometryParams g1{2, 0.1, 1.0, 1e-3};
    GeometryParams g2{2, 0.4, 4.0, 4e-3};  // same na/r, a/r
    const auto u1 =
        upper_chain_explicit(g1, mode, effective_g(g1, mode), 1.0);
    const auto u2 =
        upper_chain_explicit(g2, mode, effective_g(g2, mode), 1.0);
    CHECK(u1.factor == doctest::Approx(u2.factor).epsilon(1e-10));
  }
  SUBCASE("cutoff below the core is rejected as vacuous") {
    GeometryParams geom{2, 0.1, 1.0, 1e-3};
    const auto uc = upper_chain_explicit(geom, mode, 4.0, 1.0, 5e-4);
    CHECK(uc.vacuous);
  }
}

TEST_CASE("explicit lower chain") {
  const auto& mode = harmonic_mode();
  SUBCASE("every factor tends to one along a -> 0") {
    double prev_g = -1.0, prev_kin = -1.0;
    for (double x : {1e-10, 1e-14, 1e-17, 1e-20}) {
      GeometryParams geom{2, 0.1, 1.0, x * 0.1 / 2.0};
      const auto lc = lower_chain_explicit(
          geom, mode, LowerChainParams::defaults(geom), soft_sphere());
      CHECK(lc.g_dprime <= lc.g_prime + 1e-15);
      CHECK(lc.g_prime <= lc.g + 1e-15);
      CHECK(lc.g_dprime / lc.g > prev_g);
      CHECK(lc.kinetic_factor > prev_kin);
      prev_g = lc.g_dprime / lc.g;
      prev_kin = lc.kinetic_factor;
    }
    CHECK(prev_g > 0.9);
    CHECK(prev_kin > 0.99);
  }
  SUBCASE("an oversized level cut is vacuous") {
    GeometryParams geom{2, 0.1, 1.0, 1e-10};
    auto p = LowerChainParams::defaults(geom);
    p.delta = mode.norm4_4 * 1.5;
    const auto lc = lower_chain_explicit(geom, mode, p, soft_sphere());
    CHECK(lc.vacuous);
    CHECK(lc.first_nonpositive == "P_level");
  }
  SUBCASE("parameter validation") {
    GeometryParams geom{2, 0.1, 1.0, 1e-6};
    auto p = LowerChainParams::defaults(geom);
    p.eps = 0.5;
    p.eta = 1.5;  // violates (1-eps)(1+eta) <= 1
    CHECK_THROWS_AS(lower_chain_explicit(geom, mode, p, soft_sphere()),
                    std::invalid_argument);
  }
  SUBCASE("smeared-pair kernel integral beats its analytic lower bound") {
    GeometryParams geom{2, 0.1, 1.0, 1e-4};
    const double R = 0.02, delta = 0.02;
    const double quad =
        d_integral_quadrature(geom, mode, R, delta, 1.17e-4);
    const double bound = 4.0 * M_PI / (geom.r * geom.r) *
                         (mode.norm4_4 - delta -
                          R * mode.sup_grad_b2 / geom.r);
    CHECK(quad >= bound * (1.0 - 1e-3));
  }
}

TEST_CASE("overlap lemma") {
  CHECK(lemma2_overlap({1.0, 2.0}, 1.0) == doctest::Approx(1.0));
  CHECK(lemma2_overlap({1.0, 2.0}, 1.1) == doctest::Approx(0.9));
  // block variant: l = 1, k = 2, E = (1, 2, 3), eta = 1.05
  CHECK(lemma2_overlap({1.0, 2.0, 3.0}, 1.05, 1) == doctest::Approx(0.8));
  CHECK_THROWS_AS(lemma2_overlap({1.0, 2.0, 2.0}, 1.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma2_overlap({1.0, 2.0}, 0.9), std::invalid_argument);
}

TEST_CASE("overlap bound for degeneracy groups") {
  const auto& mode = harmonic_mode();
  SUBCASE("vanishing deviations give a bound near one") {
    GeometryParams geom{2, 0.1, 1.0, 5e-26};
    const std::vector<double> e1d{1.0, 2.0, 3.0};
    const std::vector<int> groups{1, 2, 3};
    const auto ob = theorem2_bound(e1d, groups, 0, geom, mode, 1.0, 1.0);
    CHECK(ob.valid);
    CHECK(ob.value == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(ob.value <= 1.0);
  }
  SUBCASE("a width-two group uses the group bookkeeping") {
    GeometryParams geom{2, 0.1, 1.0, 1e-14};
    const std::vector<double> e1d{1.0, 2.0, 2.0, 3.0};
    const std::vector<int> groups{1, 2, 4};
    const auto ob = theorem2_bound(e1d, groups, 1, geom, mode, 1.0, 1.0);
    CHECK(ob.valid);
    CHECK(ob.k_lo == 2);
    CHECK(ob.k_hi == 4);
  }
  SUBCASE("invalid when the deviation scale saturates") {
    GeometryParams geom{2, 0.1, 1.0, 0.4};  // na/r = 8: eta_U > 1
    const std::vector<double> e1d{1.0, 2.0};
    const std::vector<int> groups{1, 2};
    const auto ob = theorem2_bound(e1d, groups, 0, geom, mode, 1.0, 1.0);
    CHECK_FALSE(ob.valid);
  }
}

TEST_CASE("geometry validation") {
  GeometryParams bad{0, 1.0, 1.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  GeometryParams neg{2, -1.0, 1.0, 0.0};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}
