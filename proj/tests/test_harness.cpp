#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "dimred/harness.hpp"
#include "dimred/numerics.hpp"

using namespace dimred;

namespace {

const char* kMinimalConfig = R"(
# minimal run configuration
[potential]
kind = square_barrier
strength_v0 = 100.0
range_R0 = 1.0

[geometry]
n = 2
ell = 1.0
fixed_g = 4.0
a_over_r = 0.1, 0.05

[run]
out = {OUT}
workers = 2
)";

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("dimred_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

RunConfig config_with_out(const std::string& tag) {
  std::string text = kMinimalConfig;
  const auto dir = temp_dir(tag);
  text.replace(text.find("{OUT}"), 5, dir.string());
  return RunConfig::parse_text(text);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = config_with_out("parse");
  CHECK(cfg.n == 2);
  CHECK(cfg.ell == 1.0);
  CHECK(cfg.fixed_g.has_value());
  CHECK(*cfg.fixed_g == 4.0);
  CHECK(cfg.a_over_r == std::vector<double>{0.1, 0.05});
  CHECK(cfg.workers == 2);
  CHECK(cfg.potential.kind == PotentialKind::SquareBarrier);
}

TEST_CASE("config validation reports the offending field") {
  CHECK_THROWS_WITH_AS(RunConfig::parse_text("[geometry]\nn = -1\n"),
                       doctest::Contains("geometry.n"), ConfigError);
  CHECK_THROWS_WITH_AS(RunConfig::parse_text("[run]\nworkers = zero\n"),
                       doctest::Contains("run.workers"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse_text("[potential]\nkind = banana\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_text("key_without_section\n"), ConfigError);
}

TEST_CASE("config hash is canonical and sensitive to physics fields") {
  const auto a = config_with_out("hash_a");
  auto b = a;
  CHECK(a.hash() == b.hash());
  b.out_dir = "elsewhere";  // run-control fields do not enter the hash
  CHECK(a.hash() == b.hash());
  b.mesh.core_points_per_a *= 2;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("sweep points from the fixed-coupling rule") {
  TransversePotential pot;
  pot.kind = TransverseKind::Harmonic;
  const auto mode = solve_transverse(pot);
  const auto cfg = config_with_out("points");
  const auto pts = cfg.sweep_points(mode);
  REQUIRE(pts.size() == 2);
  // g = 4 with the harmonic mode means a = r^2
  CHECK(pts[0].r == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(pts[0].a == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(pts[1].r == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("csv writer emits locale-free numbers") {
  const auto dir = temp_dir("csv");
  const auto path = dir / "t.csv";
  write_csv(path, {"x", "y"}, {{1.5, 2.25}, {-0.125, 3e-7}});
  std::ifstream in(path);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "x,y");
  CHECK(row1 == "1.5,2.25");
  CHECK(row2.find(',') != std::string::npos);
  CHECK(row2.find(';') == std::string::npos);
}

TEST_CASE("cache round trip and corruption recovery") {
  const auto dir = temp_dir("cache");
  Cache cache(dir, true);
  json v = {{"alpha", 1.5}, {"beta", {1, 2, 3}}};
  cache.store("k1", v);
  auto hit = cache.lookup("k1");
  REQUIRE(hit.has_value());
  CHECK(*hit == v);
  CHECK_FALSE(cache.lookup("missing").has_value());
  {
    std::ofstream out(dir / "bad.json");
    out << "{ not json";
  }
  CHECK_FALSE(cache.lookup("bad").has_value());
  Cache disabled(dir, false);
  disabled.store("k2", v);
  CHECK_FALSE(disabled.lookup("k2").has_value());
}

TEST_CASE("transverse subcommand writes the expected report") {
  auto cfg = config_with_out("transverse");
  const auto rep = run_subcommand("transverse", cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.body["results"]["e_perp"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep.body["results"]["gap"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep.body["results"]["norm4_4"].get<double>() ==
        doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-6));
  CHECK(std::filesystem::exists(cfg.out_dir / "transverse.csv"));
  CHECK(std::filesystem::exists(cfg.out_dir / "report.json"));
  // determinism: a second run produces the identical report
  const auto rep2 = run_subcommand("transverse", cfg);
  CHECK(rep.body.dump() == rep2.body.dump());
}

TEST_CASE("ll-spectrum subcommand at g = 0") {
  auto cfg = config_with_out("llspec");
  cfg.ll_g = 0.0;
  cfg.ll_k_max = 3;
  const auto rep = run_subcommand("ll-spectrum", cfg);
  const auto energies =
      rep.body["results"]["energies"].get<std::vector<double>>();
  CHECK(energies[0] ==
        doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-10));  // n = 2 lattice
  CHECK(std::filesystem::exists(cfg.out_dir / "spectrum.csv"));
}

TEST_CASE("scatter subcommand") {
  auto cfg = config_with_out("scatter");
  const auto rep = run_subcommand("scatter", cfg);
  CHECK(rep.body["results"]["scattering_length"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::filesystem::exists(cfg.out_dir / "scattering.csv"));
}

TEST_CASE("branches subcommand") {
  auto cfg = config_with_out("branches");
  cfg.n = 6;
  cfg.ell = 6.0;
  cfg.ll_g = 2.0;
  const auto rep = run_subcommand("branches", cfg);
  const auto p = rep.body["results"]["p"].get<std::vector<double>>();
  CHECK(p.front() == 0.0);
  CHECK(p.back() == doctest::Approx(2.0 * M_PI));
  CHECK(std::filesystem::exists(cfg.out_dir / "branches.csv"));
}

TEST_CASE("unknown subcommand is a configuration error") {
  auto cfg = config_with_out("unknown");
  CHECK_THROWS_AS(run_subcommand("frobnicate", cfg), ConfigError);
}

TEST_CASE("sweep subcommand with caching") {
  auto cfg = config_with_out("sweep");
  // keep the oracle cheap for this test
  cfg.mesh.core_points_per_a = 12;
  cfg.mesh.trans_points_per_scale = 14;
  cfg.mesh.mid_points_per_r = 8;
  cfg.mesh.far_points_per_scale = 12;
  cfg.k_max = 2;
  const auto rep = run_subcommand("sweep", cfg);
  CHECK(rep.exit_code == 0);
  CHECK(std::filesystem::exists(cfg.out_dir / "sweep.csv"));
  const auto& pts = rep.body["results"]["points"];
  REQUIRE(pts.size() == 2);
  CHECK(pts[0]["ratio_1"].get<double>() == doctest::Approx(1.0).epsilon(0.2));
  // validity flags ride along with every tabulated bound
  CHECK(pts[0].contains("valid_lower_1"));
  CHECK(pts[0].contains("valid_upper_1"));
  // second run hits the cache and reproduces the results bit for bit
  const auto rep2 = run_subcommand("sweep", cfg);
  CHECK(rep.body["results"].dump() == rep2.body["results"].dump());
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
