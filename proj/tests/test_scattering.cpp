#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimred/numerics.hpp"
#include "dimred/scattering.hpp"

using namespace dimred;

namespace {

double barrier_length(double v0, double R0) {
  const double kap = std::sqrt(v0 / 2.0);
  return R0 - std::tanh(kap * R0) / kap;
}

PotentialSpec ramp_potential(double v0, double R0, int samples = 33) {
  std::vector<double> t, v;
  for (int i = 0; i <= samples; ++i) {
    t.push_back(R0 * i / samples);
    v.push_back(v0 * (1.0 - double(i) / samples));
  }
  return PotentialSpec::tabulated(t, v);
}

}  // namespace

TEST_CASE("hard sphere: closed form") {
  const auto sol = solve_zero_energy(PotentialSpec::hard_core(1.0), 1.0);
  CHECK(sol.scattering_length == 1.0);
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double t = sol.grid[i];
    if (t < 1.0)
      CHECK(sol.f0[i] == 0.0);
    else if (t > 0.0)
      CHECK(sol.f0[i] == doctest::Approx(1.0 - 1.0 / t).epsilon(1e-14));
  }
}

TEST_CASE("square barrier matches the analytic scattering length") {
  for (double v0 : {1.0, 10.0, 100.0}) {
    const auto sol =
        solve_zero_energy(PotentialSpec::square_barrier(v0, 1.0), 1.0);
    CHECK(sol.scattering_length ==
          doctest::Approx(barrier_length(v0, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("zero potential scatters trivially") {
  const auto sol = solve_zero_energy(ramp_potential(0.0, 1.0), 1.0);
  CHECK(std::abs(sol.scattering_length) < 1e-10);
  for (double f : sol.f0) CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(calibrate_unit_scattering_length(ramp_potential(0.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("tabulated solver agrees with the barrier closed form") {
  std::vector<double> t{0.0, 0.5, 1.0}, v{40.0, 40.0, 40.0};
  const auto sol = solve_zero_energy(PotentialSpec::tabulated(t, v), 1.0);
  CHECK(sol.scattering_length ==
        doctest::Approx(barrier_length(40.0, 1.0)).epsilon(1e-9));
  CHECK(sol.residual < 1e-10);
}

TEST_CASE("solution invariants hold on the grid") {
  for (const auto& spec :
       {PotentialSpec::square_barrier(30.0, 1.0), ramp_potential(25.0, 1.2)}) {
    const auto sol = solve_zero_energy(spec, 1.0);
    const double as = sol.scattering_length;
    double prev = -1.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
      const double t = sol.grid[i];
      CHECK(sol.f0[i] >= -1e-12);
      CHECK(sol.f0[i] <= 1.0 + 1e-12);
      CHECK(sol.f0[i] >= prev - 1e-12);
      prev = sol.f0[i];
      if (t > 0.0)
        CHECK(sol.f0_prime[i] <=
              (1.0 / t) * std::min(1.0, as / t) * (1.0 + 1e-9) + 1e-12);
      if (t >= sol.core_radius() && t > 0.0)
        CHECK(sol.f0[i] == doctest::Approx(1.0 - as / t).epsilon(1e-9));
    }
  }
}

TEST_CASE("pointwise larger potentials scatter more") {
  double prev = 0.0;
  for (double v0 : {1.0, 4.0, 16.0, 64.0, 256.0}) {
    const double as =
        solve_zero_energy(PotentialSpec::square_barrier(v0, 1.0), 1.0)
            .scattering_length;
    CHECK(as > prev);
    prev = as;
  }
}

TEST_CASE("scaling covariance in the length unit") {
  const auto spec = PotentialSpec::square_barrier(50.0, 1.0);
  const auto s1 = solve_zero_energy(spec, 1.0);
  const auto s2 = solve_zero_energy(spec, 2.0);
  CHECK(s2.scattering_length ==
        doctest::Approx(2.0 * s1.scattering_length).epsilon(1e-12));
  for (double t : {0.4, 0.9, 1.7, 3.0})
    CHECK(s2.f0_at(2.0 * t) == doctest::Approx(s1.f0_at(t)).epsilon(1e-11));
}

TEST_CASE("calibration rescales to unit scattering length") {
  SUBCASE("hard core already unit") {
    const auto cal =
        calibrate_unit_scattering_length(PotentialSpec::hard_core(1.0));
    CHECK(cal.range_R0 == doctest::Approx(1.0));
  }
  SUBCASE("square barrier") {
    const auto cal = calibrate_unit_scattering_length(
        PotentialSpec::square_barrier(50.0, 1.0));
    const double as0 = barrier_length(50.0, 1.0);
    CHECK(cal.range_R0 == doctest::Approx(1.0 / as0).epsilon(1e-8));
    CHECK(solve_zero_energy(cal, 1.0).scattering_length ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("tabulated, range scales by the inverse length") {
    auto spec = ramp_potential(25.0, 0.7);
    const double as = solve_zero_energy(spec, 1.0).scattering_length;
    const auto cal = calibrate_unit_scattering_length(spec);
    CHECK(cal.range_R0 == doctest::Approx(spec.range_R0 / as).epsilon(1e-6));
    CHECK(solve_zero_energy(cal, 1.0).scattering_length ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Jastrow cutoff") {
  SUBCASE("hard core, R = 2") {
    const auto sol = solve_zero_energy(PotentialSpec::hard_core(1.0), 1.0);
    const auto f = build_jastrow(sol, 2.0);
    CHECK(f.value(1.5) == doctest::Approx((1.0 - 1.0 / 1.5) / 0.5));
    CHECK(f.value(3.0) == 1.0);
    CHECK_THROWS_AS(build_jastrow(sol, 0.5), std::invalid_argument);
  }
  SUBCASE("R to infinity recovers f0") {
    const auto sol =
        solve_zero_energy(PotentialSpec::square_barrier(30.0, 1.0), 1.0);
    const auto f = build_jastrow(sol, 4000.0);
    for (double t : {0.5, 1.0, 2.5})
      CHECK(f.value(t) == doctest::Approx(sol.f0_at(t)).epsilon(1e-3));
  }
  SUBCASE("calibrated barrier, direct evaluation at the core edge") {
    const auto cal = calibrate_unit_scattering_length(
        PotentialSpec::square_barrier(100.0, 1.0));
    const auto sol = solve_zero_energy(cal, 1.0);
    const double R = 4.0 * sol.core_radius();
    const auto f = build_jastrow(sol, R);
    CHECK(f.value(sol.core_radius()) ==
          doctest::Approx(sol.f0_at(sol.core_radius()) / sol.f0_at(R)));
  }
}

TEST_CASE("kernel pair: support, identity, bounds") {
  std::vector<std::pair<const char*, PotentialSpec>> pots;
  pots.emplace_back("hard", PotentialSpec::hard_core(1.0));
  pots.emplace_back("barrier", calibrate_unit_scattering_length(
                                   PotentialSpec::square_barrier(100.0, 1.0)));
  pots.emplace_back("ramp",
                    calibrate_unit_scattering_length(ramp_potential(60.0, 1.0)));
  for (const auto& [name, spec] : pots) {
    CAPTURE(name);
    const auto sol = solve_zero_energy(spec, 1.0);
    const double a = sol.scattering_length;
    const double R = 4.0;
    const auto f = build_jastrow(sol, R);
    const auto k = kernels(f);
    CHECK(k.h.back() == 0.0);
    CHECK(k.m.back() == 0.0);
    CHECK(k.integral_h ==
          doctest::Approx(4.0 * M_PI * a / (1.0 - a / R)).epsilon(1e-6));
    CHECK(k.sup_m <=
          2.0 * M_PI * a * (1.0 + std::log(R / a)) / (1.0 - a / R) + 1e-9);
    CHECK(k.integral_m <=
          4.0 * M_PI * a * R * (1.0 - a / (2.0 * R)) / (1.0 - a / R) + 1e-9);
    for (std::size_t i = 1; i < k.z.size(); ++i) {
      CHECK(k.h[i] <= k.h[i - 1] + 1e-12);
      CHECK(k.m[i] <= k.m[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("potential validation") {
  PotentialSpec bad;
  bad.kind = PotentialKind::SquareBarrier;
  bad.range_R0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::tabulated({0.0, 1.0}, {1.0, -2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_zero_energy(PotentialSpec::hard_core(1.0), -1.0),
                  std::invalid_argument);
}
