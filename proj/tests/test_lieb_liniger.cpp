#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"
#include "dimred/relative_1d.hpp"

using namespace dimred;

TEST_CASE("decoupled pair at g = 0") {
  const auto st = bethe_solve(2, 1.0, 0.0, {-1, 1});
  CHECK(st.rapidities[0] == doctest::Approx(-M_PI));
  CHECK(st.rapidities[1] == doctest::Approx(M_PI));
  CHECK(st.energy == doctest::Approx(2.0 * M_PI * M_PI));
  CHECK(st.momentum == 0.0);
}

TEST_CASE("impenetrable pair limit") {
  const auto st = bethe_solve(2, 1.0, 1e8, {-1, 1});
  CHECK(st.energy == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-5));
}

TEST_CASE("pair rapidity solves the relative transcendental equation") {
  // ell = 1, ground pair: k tan(k/2) = g/4
  for (double g : {0.5, 2.0, 7.0}) {
    const auto st = bethe_solve(2, 1.0, g, {-1, 1});
    const double k = st.rapidities[1];
    CHECK(k * std::tan(0.5 * k) == doctest::Approx(0.25 * g).epsilon(1e-10));
    CHECK(st.newton_residual <= 1e-12);
  }
}

TEST_CASE("first-order perturbation for three weakly coupled bosons") {
  // E ~ g n(n-1) / (2 ell) for the flat ground state
  const auto sp = ll_spectrum_periodic(3, 1.0, 0.1, 1);
  CHECK(std::abs(sp.energies[0] - 0.3) < 0.05 * 0.3);  // O(g^2) slack
}

TEST_CASE("quantum number validation") {
  CHECK_THROWS_AS(bethe_solve(2, 1.0, 1.0, {-2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(bethe_solve(3, 1.0, 1.0, {-1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bethe_solve(2, 1.0, 1.0, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bethe_solve(2, 1.0, -1.0, {-1, 1}), std::invalid_argument);
}

TEST_CASE("free limits of the periodic spectrum") {
  SUBCASE("odd n condenses at zero") {
    const auto sp = ll_spectrum_periodic(3, 1.0, 0.0, 2);
    CHECK(sp.energies[0] == doctest::Approx(0.0));
  }
  SUBCASE("even n sits on the half-integer lattice") {
    const auto sp = ll_spectrum_periodic(2, 1.0, 0.0, 1);
    CHECK(sp.energies[0] == doctest::Approx(2.0 * M_PI * M_PI));
  }
}

TEST_CASE("periodic spectrum vs the momentum-basis route") {
  // n = 2, ell = 2 pi, g = 2: ground level against the independent dense
  // diagonalization, extrapolated in the cutoff
  const auto sp = ll_spectrum_periodic(2, 2.0 * M_PI, 2.0, 1);
  const double ed = ed_periodic_extrapolated(2, 2.0 * M_PI, 2.0, 0, 0,
                                             {16, 24, 36});
  CHECK(std::abs(sp.energies[0] - ed) / ed < 1e-4);
}

TEST_CASE("free fermion levels") {
  CHECK(tg_levels(2, 1.0, 1)[0] == doctest::Approx(2.0 * M_PI * M_PI));
  CHECK(tg_levels(3, 1.0, 1)[0] == doctest::Approx(8.0 * M_PI * M_PI));
  const auto e1 = tg_levels(3, 1.0, 4);
  const auto e2 = tg_levels(3, 2.0, 4);
  for (int k = 0; k < 4; ++k)
    CHECK(e2[k] == doctest::Approx(e1[k] / 4.0).epsilon(1e-12));
}

TEST_CASE("levels are monotone in g and capped by free fermions") {
  const int k_max = 5;
  const auto ef = tg_levels(2, 1.0, k_max);
  std::vector<double> prev;
  for (double g : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto sp = ll_spectrum_periodic(2, 1.0, g, k_max);
    for (int k = 0; k < k_max; ++k) {
      if (!prev.empty()) CHECK(sp.energies[k] >= prev[k] - 1e-10);
      CHECK(sp.energies[k] <= ef[k] + 1e-8);
    }
    prev = sp.energies;
  }
}

TEST_CASE("excitation branches") {
  const auto br = excitation_branches(8, 8.0, 3.0);
  CHECK(br.p.front() == 0.0);
  CHECK(br.eps_type_i.front() == 0.0);
  CHECK(br.eps_type_ii.front() == 0.0);
  for (std::size_t i = 1; i < br.p.size(); ++i) {
    CHECK(br.eps_type_ii[i] <= br.eps_type_i[i] + 1e-10);
    CHECK(br.eps_type_i[i] > 0.0);
  }
  CHECK(br.p.back() == doctest::Approx(2.0 * M_PI));  // p = 2 pi n / ell

  SUBCASE("impenetrable limit approaches the free-fermion dispersions") {
    const int n = 6;
    const double ell = 6.0;
    const auto big = excitation_branches(n, ell, 1e7);
    const auto gs = bethe_ground_numbers(n);
    auto tg_energy = [&](const std::vector<int>& I2) {
      double e = 0.0;
      for (int v : I2) e += std::pow(M_PI * v / ell, 2);
      return e;
    };
    const double e0 = tg_energy(gs);
    for (int q = 1; q <= n; ++q) {
      auto ia = gs;
      ia[n - 1] += 2 * q;
      auto ib = gs;
      ib.erase(ib.begin() + (n - q));
      ib.push_back(gs[n - 1] + 2);
      CHECK(big.eps_type_i[q] ==
            doctest::Approx(tg_energy(ia) - e0).epsilon(1e-4));
      CHECK(big.eps_type_ii[q] ==
            doctest::Approx(tg_energy(ib) - e0).epsilon(1e-4));
    }
  }
}

TEST_CASE("trapped single particle ladder") {
  const auto sp = ll_spectrum_trapped(1, 0.5, 0.0, 16, 3);
  for (int k = 0; k < 3; ++k)
    CHECK(sp.energies[k] == doctest::Approx((2.0 * k + 1.0) / 0.25));
}

TEST_CASE("trapped pair, free case is separable") {
  const auto sp = ll_spectrum_trapped(2, 1.0, 0.0, 32, 4);
  CHECK(sp.energies[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sp.energies[1] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sp.energies[2] == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(sp.energies[3] == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("trapped pair fermionizes at infinite coupling") {
  const auto sp = ll_spectrum_trapped(2, 1.0, kInfiniteCoupling, 32, 3);
  CHECK(sp.energies[0] == doctest::Approx(4.0));  // 1 + 3
  CHECK(sp.energies[1] == doctest::Approx(6.0));  // 1 + 5 (com excitation)
  // relative even-sector levels coincide with the odd oscillator ladder
  const auto rel = relative_1d_levels(1.0, kInfiniteCoupling, 3);
  CHECK(rel[0] == doctest::Approx(3.0));
  CHECK(rel[1] == doctest::Approx(7.0));
}

TEST_CASE("trapped pair against the shooting reference") {
  // separable reference: COM ladder plus the even-sector relative level
  const double ref = 1.0 + relative_1d_levels(1.0, 4.0, 1)[0];
  const auto sp = ll_spectrum_trapped(2, 1.0, 4.0, 96, 2);
  CHECK(std::abs(sp.energies[0] - ref) / ref < 2e-5);
  CHECK(sp.window_ok);
}

TEST_CASE("Hellmann-Feynman consistency within a fixed basis") {
  const double g = 2.0, dg = 0.02;
  const auto sp = ll_spectrum_trapped(2, 1.0, g, 48, 1);
  const auto spp = ll_spectrum_trapped(2, 1.0, g + dg, 48, 1);
  const auto spm = ll_spectrum_trapped(2, 1.0, g - dg, 48, 1);
  const double fd =
      (spp.energies_raw[0] - spm.energies_raw[0]) / (2.0 * dg);
  CHECK(std::abs(fd - sp.delta_expectation[0]) / fd < 0.01);
}

TEST_CASE("degeneracy index") {
  SUBCASE("strictly increasing") {
    const auto k = degeneracy_index({1.0, 2.0, 3.0, 4.0});
    CHECK(k == std::vector<int>{1, 2, 3, 4});
  }
  SUBCASE("a double level at position 2") {
    const auto k = degeneracy_index({1.0, 2.0, 2.0, 3.0});
    CHECK(k == std::vector<int>{1, 2, 4});
  }
  SUBCASE("trapped pair groups stable under the tolerance scan") {
    const auto sp = ll_spectrum_trapped(2, 1.0, 1.0, 48, 5);
    const auto base = degeneracy_index(sp.energies, 1e-8);
    for (double tol : {1e-10, 1e-9, 1e-7, 1e-6})
      CHECK(degeneracy_index(sp.energies, tol) == base);
  }
}

TEST_CASE("plane-wave basis validation") {
  CHECK_THROWS_AS(ed_periodic_levels(5, 1.0, 1.0, 0, 8, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ed_periodic_extrapolated(2, 1.0, 1.0, 0, 0, {8, 16}),
                  std::invalid_argument);
}
