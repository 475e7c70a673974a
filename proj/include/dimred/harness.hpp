#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimred/lieb_liniger.hpp"
#include "dimred/oracle3d.hpp"
#include "dimred/potential.hpp"
#include "dimred/reduction.hpp"
#include "dimred/transverse.hpp"

namespace dimred {

using json = nlohmann::ordered_json;

/// Invalid configuration; carries the offending field name.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(const std::string& f, const std::string& what)
      : std::runtime_error(f + ": " + what), field(f) {}
};

/// Flat-text config: [section] headers, key = value lines, '#' comments,
/// comma-separated lists.  Lengths are dimensionless in units of ell unless
/// a key says otherwise.
struct RunConfig {
  PotentialSpec potential{PotentialKind::SquareBarrier, 1.0, 100.0, {}, {}};
  bool calibrate = true;
  TransversePotential transverse;
  // geometry: either an explicit (a, r) list or a fixed-g sweep rule
  int n = 2;
  double ell = 1.0;
  std::vector<double> a_list;
  std::vector<double> r_list;
  std::optional<double> fixed_g;
  std::vector<double> a_over_r;   // sweep abscissa when fixed_g is set
  double C = 1.0;
  double D = 1.0;
  std::optional<LowerChainParams> schedule_override;
  double upper_R_override = 0.0;
  // Lieb-Liniger block
  double ll_g = 1.0;
  int ll_k_max = 6;
  TrapKind ll_trap = TrapKind::Periodic;
  int ll_basis = 48;
  // oracle
  MeshPolicy mesh;
  int k_max = 4;
  bool dump_vectors = false;  // binary grid dump of relative eigenvectors
  // run control
  std::filesystem::path out_dir = "out";
  int workers = 1;
  bool cache_enabled = true;

  static RunConfig parse_file(const std::filesystem::path& path);
  static RunConfig parse_text(const std::string& text);
  std::string canonical_text() const;  // deterministic dump used for hashing
  std::string hash() const;
  std::vector<GeometryParams> sweep_points(const TransverseMode& mode) const;
};

struct Report {
  json body;
  int exit_code = 0;
};

/// Subcommands: scatter, transverse, ll-spectrum, branches, bounds,
/// verify-2body, sweep, accept.  Writes CSV/JSON artifacts under
/// config.out_dir and returns the JSON report.
Report run_subcommand(const std::string& name, const RunConfig& config);

// ---- CSV -------------------------------------------------------------------

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// ---- cache -----------------------------------------------------------------

/// Content-addressed JSON cache; writes are atomic (temp file + rename).
class Cache {
 public:
  Cache(std::filesystem::path dir, bool enabled)
      : dir_(std::move(dir)), enabled_(enabled) {}

  std::optional<json> lookup(const std::string& key) const;
  void store(const std::string& key, const json& value) const;
  bool enabled() const { return enabled_; }

 private:
  std::filesystem::path dir_;
  bool enabled_;
};

std::string sha256_hex(const std::string& data);

}  // namespace dimred
