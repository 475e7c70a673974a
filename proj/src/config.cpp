#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dimred/harness.hpp"
#include "dimred/numerics.hpp"

namespace dimred {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_sections(const std::string& text) {
  SectionMap out;
  std::string section = "";
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno),
                          "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno),
                        "expected key = value");
    out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

double to_double(const std::string& field, const std::string& v) {
  if (v == "inf" || v == "infinity") return kInfiniteCoupling;
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw ConfigError(field, "not a number: '" + v + "'");
  }
}

int to_int(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw ConfigError(field, "not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(field, "not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& field, const std::string& v) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(to_double(field, tok));
  }
  if (out.empty()) throw ConfigError(field, "empty list");
  return out;
}

}  // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
  const SectionMap sec = parse_sections(text);
  RunConfig cfg;
  cfg.transverse.kind = TransverseKind::Harmonic;

  auto get = [&](const std::string& s, const std::string& k,
                 const char* dflt) -> std::string {
    auto si = sec.find(s);
    if (si == sec.end()) return dflt;
    auto ki = si->second.find(k);
    if (ki == si->second.end()) return dflt;
    return ki->second;
  };
  auto field = [](const std::string& s, const std::string& k) {
    return s + "." + k;
  };

  // [potential]
  {
    const std::string kind = get("potential", "kind", "square_barrier");
    cfg.potential.kind = potential_kind_from_string(kind);
    cfg.potential.range_R0 =
        to_double(field("potential", "range_R0"),
                  get("potential", "range_R0", "1.0"));
    cfg.potential.strength_v0 =
        to_double(field("potential", "strength_v0"),
                  get("potential", "strength_v0", "100.0"));
    const std::string ts = get("potential", "table_t", "");
    const std::string vs = get("potential", "table_v", "");
    if (!ts.empty() || !vs.empty()) {
      cfg.potential.table_t = to_list(field("potential", "table_t"), ts);
      cfg.potential.table_v = to_list(field("potential", "table_v"), vs);
    }
    cfg.calibrate =
        to_bool(field("potential", "calibrate"),
                get("potential", "calibrate", "true"));
    try {
      cfg.potential.validate();
    } catch (const std::exception& e) {
      throw ConfigError("potential", e.what());
    }
  }

  // [transverse]
  {
    const std::string kind = get("transverse", "kind", "harmonic");
    if (kind == "harmonic") {
      cfg.transverse.kind = TransverseKind::Harmonic;
    } else if (kind == "tabulated_radial") {
      cfg.transverse.kind = TransverseKind::TabulatedRadial;
      cfg.transverse.rho =
          to_list(field("transverse", "rho"), get("transverse", "rho", ""));
      cfg.transverse.V =
          to_list(field("transverse", "V"), get("transverse", "V", ""));
    } else {
      throw ConfigError("transverse.kind", "unknown kind '" + kind + "'");
    }
  }

  // [geometry]
  {
    cfg.n = to_int(field("geometry", "n"), get("geometry", "n", "2"));
    cfg.ell =
        to_double(field("geometry", "ell"), get("geometry", "ell", "1.0"));
    const std::string fg = get("geometry", "fixed_g", "");
    if (!fg.empty()) {
      cfg.fixed_g = to_double(field("geometry", "fixed_g"), fg);
      cfg.a_over_r = to_list(field("geometry", "a_over_r"),
                             get("geometry", "a_over_r", "0.1,0.05,0.02"));
    } else {
      const std::string as = get("geometry", "a", "");
      const std::string rs = get("geometry", "r", "");
      if (!as.empty()) cfg.a_list = to_list(field("geometry", "a"), as);
      if (!rs.empty()) cfg.r_list = to_list(field("geometry", "r"), rs);
      if (cfg.a_list.size() != cfg.r_list.size())
        throw ConfigError("geometry", "a and r lists must have equal length");
    }
    if (cfg.n < 1) throw ConfigError("geometry.n", "must be >= 1");
    if (!(cfg.ell > 0)) throw ConfigError("geometry.ell", "must be > 0");
  }

  // [bounds]
  {
    cfg.C = to_double(field("bounds", "C"), get("bounds", "C", "1.0"));
    cfg.D = to_double(field("bounds", "D"), get("bounds", "D", "1.0"));
    cfg.upper_R_override = to_double(field("bounds", "upper_R"),
                                     get("bounds", "upper_R", "0.0"));
    const std::string sr = get("bounds", "lower_R", "");
    if (!sr.empty()) {
      LowerChainParams p;
      p.R = to_double(field("bounds", "lower_R"), sr);
      p.delta =
          to_double(field("bounds", "lower_delta"),
                    get("bounds", "lower_delta", "0.1"));
      p.eps = to_double(field("bounds", "lower_eps"),
                        get("bounds", "lower_eps", "0.1"));
      p.eta = to_double(field("bounds", "lower_eta"),
                        get("bounds", "lower_eta", "0.1"));
      p.kappa = to_double(field("bounds", "lower_kappa"),
                          get("bounds", "lower_kappa", "0.1"));
      cfg.schedule_override = p;
    }
    if (!(cfg.C > 0)) throw ConfigError("bounds.C", "must be > 0");
    if (!(cfg.D > 0)) throw ConfigError("bounds.D", "must be > 0");
  }

  // [ll]
  {
    cfg.ll_g = to_double(field("ll", "g"), get("ll", "g", "1.0"));
    cfg.ll_k_max = to_int(field("ll", "k_max"), get("ll", "k_max", "6"));
    cfg.ll_basis = to_int(field("ll", "basis_size"),
                          get("ll", "basis_size", "48"));
    const std::string trap = get("ll", "trap", "periodic");
    if (trap == "periodic")
      cfg.ll_trap = TrapKind::Periodic;
    else if (trap == "harmonic")
      cfg.ll_trap = TrapKind::Harmonic;
    else
      throw ConfigError("ll.trap", "unknown trap '" + trap + "'");
    if (cfg.ll_k_max < 1) throw ConfigError("ll.k_max", "must be >= 1");
  }

  // [mesh]
  {
    cfg.mesh.core_points_per_a =
        to_double(field("mesh", "core_points_per_a"),
                  get("mesh", "core_points_per_a", "24"));
    cfg.mesh.trans_points_per_scale =
        to_double(field("mesh", "trans_points_per_scale"),
                  get("mesh", "trans_points_per_scale", "24"));
    cfg.mesh.mid_points_per_r =
        to_double(field("mesh", "mid_points_per_r"),
                  get("mesh", "mid_points_per_r", "14"));
    cfg.mesh.far_points_per_scale =
        to_double(field("mesh", "far_points_per_scale"),
                  get("mesh", "far_points_per_scale", "22"));
    cfg.k_max = to_int(field("mesh", "k_max"), get("mesh", "k_max", "4"));
    cfg.dump_vectors = to_bool(field("mesh", "dump_vectors"),
                               get("mesh", "dump_vectors", "false"));
  }

  // [run]
  {
    cfg.out_dir = get("run", "out", "out");
    cfg.workers = to_int(field("run", "workers"), get("run", "workers", "1"));
    cfg.cache_enabled =
        to_bool(field("run", "cache"), get("run", "cache", "true"));
    if (cfg.workers < 1) throw ConfigError("run.workers", "must be >= 1");
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "[potential]\nkind = " << to_string(potential.kind)
     << "\nrange_R0 = " << potential.range_R0
     << "\nstrength_v0 = " << potential.strength_v0 << "\ncalibrate = "
     << (calibrate ? "true" : "false") << "\n";
  if (!potential.table_t.empty()) {
    os << "table_t =";
    for (double t : potential.table_t) os << " " << t;
    os << "\ntable_v =";
    for (double v : potential.table_v) os << " " << v;
    os << "\n";
  }
  os << "[transverse]\nkind = "
     << (transverse.kind == TransverseKind::Harmonic ? "harmonic"
                                                     : "tabulated_radial")
     << "\n";
  os << "[geometry]\nn = " << n << "\nell = " << ell << "\n";
  if (fixed_g) {
    os << "fixed_g = " << *fixed_g << "\na_over_r =";
    for (double x : a_over_r) os << " " << x;
    os << "\n";
  } else {
    os << "a =";
    for (double x : a_list) os << " " << x;
    os << "\nr =";
    for (double x : r_list) os << " " << x;
    os << "\n";
  }
  os << "[bounds]\nC = " << C << "\nD = " << D
     << "\nupper_R = " << upper_R_override << "\n";
  os << "[ll]\ng = " << ll_g << "\nk_max = " << ll_k_max
     << "\nbasis_size = " << ll_basis << "\ntrap = "
     << (ll_trap == TrapKind::Periodic ? "periodic" : "harmonic") << "\n";
  os << "[mesh]\ncore_points_per_a = " << mesh.core_points_per_a
     << "\ntrans_points_per_scale = " << mesh.trans_points_per_scale
     << "\nmid_points_per_r = " << mesh.mid_points_per_r
     << "\nfar_points_per_scale = " << mesh.far_points_per_scale
     << "\nk_max = " << k_max << "\n";
  return os.str();
}

std::string RunConfig::hash() const { return sha256_hex(canonical_text()); }

std::vector<GeometryParams> RunConfig::sweep_points(
    const TransverseMode& mode) const {
  std::vector<GeometryParams> pts;
  if (fixed_g) {
    // fixed coupling: a = g r^2 / (8 pi ||b||_4^4); a/r fixes r
    for (double x : a_over_r) {
      GeometryParams gp;
      gp.n = n;
      gp.ell = ell;
      gp.r = x * 8.0 * M_PI * mode.norm4_4 / (*fixed_g);
      gp.a = x * gp.r;
      pts.push_back(gp);
    }
  } else {
    for (std::size_t i = 0; i < a_list.size(); ++i) {
      GeometryParams gp;
      gp.n = n;
      gp.ell = ell;
      gp.a = a_list[i];
      gp.r = r_list[i];
      pts.push_back(gp);
    }
  }
  for (auto& p : pts) p.validate();
  return pts;
}

}  // namespace dimred
