#include "dimred/harness.hpp"

#include <atomic>
#include <iostream>
#include <fstream>
#include <thread>

#include "dimred/acceptance.hpp"
#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"
#include "dimred/relative_1d.hpp"
#include "dimred/scattering.hpp"

namespace dimred {

namespace {

constexpr const char* kVersion = "0.1.0";

json report_skeleton(const std::string& subcommand, const RunConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["subcommand"] = subcommand;
  j["config_hash"] = cfg.hash();
  j["provenance"] = {{"tool", "dimred"}, {"version", kVersion}};
  return j;
}

void write_report(const RunConfig& cfg, const json& j) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  std::ofstream out(cfg.out_dir / "report.json");
  out << j.dump(2) << "\n";
}

std::uint64_t seed_from_hash(const std::string& hex) {
  std::uint64_t s = 0;
  for (int i = 0; i < 16 && i < static_cast<int>(hex.size()); ++i) {
    s <<= 4;
    const char c = hex[i];
    s |= std::uint64_t(c <= '9' ? c - '0' : c - 'a' + 10);
  }
  return s ? s : 1;
}

PotentialSpec prepared_potential(const RunConfig& cfg) {
  if (!cfg.calibrate) return cfg.potential;
  return calibrate_unit_scattering_length(cfg.potential);
}

json scatter_report(const RunConfig& cfg) {
  json j = report_skeleton("scatter", cfg);
  const PotentialSpec spec = prepared_potential(cfg);
  const auto sol = solve_zero_energy(spec, 1.0);
  j["results"]["scattering_length"] = sol.scattering_length;
  j["results"]["residual"] = sol.residual;
  j["results"]["kind"] = to_string(spec.kind);
  j["results"]["range_R0"] = spec.range_R0;
  j["results"]["strength_v0"] = spec.strength_v0;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < sol.grid.size(); ++i)
    rows.push_back({sol.grid[i], sol.f0[i], sol.f0_prime[i]});
  write_csv(cfg.out_dir / "scattering.csv", {"t", "f0", "f0_prime"}, rows);
  j["artifacts"] = {"scattering.csv"};
  return j;
}

json transverse_report(const RunConfig& cfg) {
  json j = report_skeleton("transverse", cfg);
  const TransverseMode mode = solve_transverse(cfg.transverse);
  j["results"]["e_perp"] = mode.e_perp;
  j["results"]["gap"] = mode.gap;
  j["results"]["gap_sector"] = mode.gap_sector;
  j["results"]["norm4_4"] = mode.norm4_4;
  j["results"]["sup_b"] = mode.sup_b;
  j["results"]["sup_grad_b2"] = mode.sup_grad_b2;
  j["results"]["rayleigh_defect"] = mode.rayleigh_defect;
  j["results"]["grid_defect"] = mode.grid_defect;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < mode.rho.size(); ++i)
    rows.push_back({mode.rho[i], mode.b[i]});
  write_csv(cfg.out_dir / "transverse.csv", {"rho", "b"}, rows);
  j["artifacts"] = {"transverse.csv"};
  return j;
}

json ll_spectrum_report(const RunConfig& cfg) {
  json j = report_skeleton("ll-spectrum", cfg);
  LLSpectrum sp;
  if (cfg.ll_trap == TrapKind::Periodic)
    sp = ll_spectrum_periodic(cfg.n, cfg.ell, cfg.ll_g, cfg.ll_k_max);
  else
    sp = ll_spectrum_trapped(cfg.n, cfg.ell, cfg.ll_g, cfg.ll_basis,
                             cfg.ll_k_max);
  j["results"]["n"] = sp.n;
  j["results"]["ell"] = sp.ell;
  j["results"]["g"] = std::isinf(sp.g) ? json("inf") : json(sp.g);
  j["results"]["trap"] =
      sp.trap == TrapKind::Periodic ? "periodic" : "harmonic";
  j["results"]["energies"] = sp.energies;
  j["results"]["window_ok"] = sp.window_ok;
  if (sp.trap == TrapKind::Harmonic) {
    j["results"]["basis_size"] = sp.basis_size;
    j["results"]["conv_defect"] = sp.conv_defect;
  }
  const auto groups = degeneracy_index(sp.energies);
  j["results"]["degeneracy_groups"] = groups;

  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < sp.energies.size(); ++k)
    rows.push_back({double(k + 1), sp.energies[k]});
  write_csv(cfg.out_dir / "spectrum.csv", {"k", "E_1d"}, rows);
  j["artifacts"] = {"spectrum.csv"};
  return j;
}

json branches_report(const RunConfig& cfg) {
  json j = report_skeleton("branches", cfg);
  const Branches br = excitation_branches(cfg.n, cfg.ell, cfg.ll_g);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < br.p.size(); ++i)
    rows.push_back({br.p[i], br.eps_type_i[i], br.eps_type_ii[i]});
  write_csv(cfg.out_dir / "branches.csv", {"p", "eps_I", "eps_II"}, rows);
  j["results"]["p"] = br.p;
  j["results"]["eps_I"] = br.eps_type_i;
  j["results"]["eps_II"] = br.eps_type_ii;
  j["artifacts"] = {"branches.csv"};
  return j;
}

json chain_to_json(const LowerChain& lc) {
  json j;
  j["R"] = lc.params.R;
  j["delta"] = lc.params.delta;
  j["eps"] = lc.params.eps;
  j["eta"] = lc.params.eta;
  j["kappa"] = lc.params.kappa;
  j["g"] = lc.g;
  j["g_prime"] = lc.g_prime;
  j["g_dprime"] = lc.g_dprime;
  j["kinetic_factor"] = lc.kinetic_factor;
  j["effective_lower_factor"] = lc.effective_lower_factor;
  j["factors"] = {{"P_eps", lc.P_eps},         {"P_grad", lc.P_grad},
                  {"P_exclude", lc.P_exclude}, {"P_gap", lc.P_gap},
                  {"P_level", lc.P_level},     {"P_smear", lc.P_smear}};
  j["vacuous"] = lc.vacuous;
  if (lc.vacuous) j["first_nonpositive"] = lc.first_nonpositive;
  return j;
}

json bounds_report(const RunConfig& cfg) {
  json j = report_skeleton("bounds", cfg);
  const PotentialSpec spec = prepared_potential(cfg);
  const TransverseMode mode = solve_transverse(cfg.transverse);
  const auto points = cfg.sweep_points(mode);
  if (points.empty()) throw ConfigError("geometry", "no geometry points");
  const GeometryParams geom = points.front();
  const double g = effective_g(geom, mode);

  LLSpectrum sp = ll_spectrum_trapped(geom.n, geom.ell, g,
                                      std::min(cfg.ll_basis, 96), cfg.ll_k_max);
  BoundEnvelope env = theorem1_envelope(sp.energies, geom, mode, cfg.C, cfg.D);
  UpperChain uc = upper_chain_explicit(geom, mode, g, spec.range_R0,
                                       cfg.upper_R_override);
  LowerChainParams lp = cfg.schedule_override
                            ? *cfg.schedule_override
                            : LowerChainParams::defaults(geom);
  LowerChain lc = lower_chain_explicit(geom, mode, lp, spec);

  j["results"]["g"] = g;
  j["results"]["eta_L"] = env.eta_L;
  j["results"]["eta_U"] = env.eta_U;
  j["results"]["upper_chain"] = {
      {"R", uc.R},           {"factor", uc.factor},
      {"K", uc.K},           {"norm_lower", uc.norm_lower},
      {"vacuous", uc.vacuous},
      {"induced_C", uc.induced_C}};
  if (uc.vacuous) j["results"]["upper_chain"]["reason"] = uc.vacuous_reason;
  j["results"]["lower_chain"] = chain_to_json(lc);

  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < env.e1d.size(); ++k)
    rows.push_back({double(k + 1), env.e1d[k], env.lower[k], env.upper[k],
                    env.valid_lower[k] ? 1.0 : 0.0,
                    env.valid_upper[k] ? 1.0 : 0.0});
  write_csv(cfg.out_dir / "envelope.csv",
            {"k", "E_1d", "lower", "upper", "valid_lower", "valid_upper"},
            rows);
  j["artifacts"] = {"envelope.csv"};
  return j;
}

json spectrum3d_to_json(const Spectrum3D& sp) {
  json j;
  j["g"] = sp.g;
  j["total"] = sp.total;
  j["excess"] = sp.excess;
  j["com_index"] = sp.com_index;
  j["rel_index"] = sp.rel_index;
  j["overlap_group"] = sp.overlap_group;
  j["e1d"] = sp.e1d;
  j["e1d_groups"] = sp.e1d_groups;
  j["grid_defect"] = sp.grid_defect;
  j["window_ok"] = sp.window_ok;
  return j;
}

struct PointResult {
  json body;
  bool failed = false;
  std::string error;
};

PointResult run_point(const RunConfig& cfg, const PotentialSpec& spec,
                      const TransverseMode& mode, const GeometryParams& geom,
                      const Cache& cache) {
  PointResult pr;
  const std::string key = sha256_hex(
      cfg.canonical_text() + "|point|" + std::to_string(geom.a) + "," +
      std::to_string(geom.r) + "," + std::to_string(geom.ell) + "|" +
      kVersion);
  if (auto hit = cache.lookup(key)) {
    pr.body = *hit;
    return pr;
  }
  try {
    TwoBodyConfig tb;
    tb.geom = geom;
    tb.spec = spec;
    tb.mesh = cfg.mesh;
    tb.k_max = cfg.k_max;
    tb.seed = seed_from_hash(cfg.hash());
    Spectrum3D sp = verify_two_body(tb, mode);

    const double g = sp.g;
    UpperChain uc = upper_chain_explicit(geom, mode, g, spec.range_R0,
                                         cfg.upper_R_override);
    LowerChainParams lp = cfg.schedule_override
                              ? *cfg.schedule_override
                              : LowerChainParams::defaults(geom);
    LowerChain lc = lower_chain_explicit(geom, mode, lp, spec);
    const double gap_over_r2 = mode.gap / (geom.r * geom.r);

    json p;
    p["a"] = geom.a;
    p["r"] = geom.r;
    p["ell"] = geom.ell;
    p["a_over_r"] = geom.a_over_r();
    p["spectrum3d"] = spectrum3d_to_json(sp);
    p["upper_chain_factor"] = uc.vacuous ? json() : json(uc.factor);
    p["lower_chain"] = chain_to_json(lc);
    if (!sp.e1d.empty()) {
      const double e1 = sp.e1d.front();
      p["E1d_1"] = e1;
      p["excess_1"] = sp.excess.front();
      p["ratio_1"] = sp.excess.front() / e1;
      p["lower_1"] = e1 * lc.effective_lower_factor * (1.0 - e1 / gap_over_r2);
      p["upper_1"] = uc.vacuous ? json() : json(e1 * uc.factor);
      p["overlap_1"] = sp.overlap_group.front();
      p["valid_lower_1"] = e1 <= gap_over_r2;
      p["valid_upper_1"] = !uc.vacuous;
    }
    pr.body = p;
    cache.store(key, p);
  } catch (const std::exception& e) {
    pr.failed = true;
    pr.error = e.what();
    pr.body = {{"a", geom.a}, {"r", geom.r}, {"error", e.what()}};
  }
  return pr;
}

// Binary grid dump: magic, dimensions, axis coordinates, then the
// M-orthonormal eigenvectors (doubles, native endianness).
void dump_relative_vectors(const std::filesystem::path& path,
                           const RelativeSolve& rel) {
  std::ofstream out(path, std::ios::binary);
  const std::uint32_t magic = 0x44524456;  // "DRDV"
  const std::uint32_t nr = rel.mesh.n_rho_free();
  const std::uint32_t nz = rel.mesh.n_z_free();
  const std::uint32_t nv = static_cast<std::uint32_t>(rel.vectors.size());
  out.write(reinterpret_cast<const char*>(&magic), 4);
  out.write(reinterpret_cast<const char*>(&nr), 4);
  out.write(reinterpret_cast<const char*>(&nz), 4);
  out.write(reinterpret_cast<const char*>(&nv), 4);
  out.write(reinterpret_cast<const char*>(rel.mesh.rho.data()), 8 * nr);
  out.write(reinterpret_cast<const char*>(rel.mesh.z.data()), 8 * nz);
  for (const auto& v : rel.vectors)
    out.write(reinterpret_cast<const char*>(v.data()), 8 * v.size());
}

json verify_2body_report(const RunConfig& cfg) {
  json j = report_skeleton("verify-2body", cfg);
  const PotentialSpec spec = prepared_potential(cfg);
  const TransverseMode mode = solve_transverse(cfg.transverse);
  const auto points = cfg.sweep_points(mode);
  if (points.empty()) throw ConfigError("geometry", "no geometry points");
  Cache cache(cfg.out_dir / "cache", cfg.cache_enabled);
  PointResult pr = run_point(cfg, spec, mode, points.front(), cache);
  if (pr.failed) throw NumericalError(pr.error);
  j["results"] = pr.body;
  if (cfg.dump_vectors) {
    TwoBodyConfig tb;
    tb.geom = points.front();
    tb.spec = spec;
    tb.mesh = cfg.mesh;
    tb.seed = seed_from_hash(cfg.hash());
    const RelativeSolve rel = solve_relative(tb);
    std::filesystem::create_directories(cfg.out_dir);
    dump_relative_vectors(cfg.out_dir / "relative_vectors.bin", rel);
    j["artifacts"] = {"relative_vectors.bin"};
  }
  return j;
}

json sweep_report(const RunConfig& cfg) {
  json j = report_skeleton("sweep", cfg);
  const PotentialSpec spec = prepared_potential(cfg);
  const TransverseMode mode = solve_transverse(cfg.transverse);
  const auto points = cfg.sweep_points(mode);
  Cache cache(cfg.out_dir / "cache", cfg.cache_enabled);

  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(cfg.workers, int(points.size())));
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      results[i] = run_point(cfg, spec, mode, points[i], cache);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<std::vector<double>> rows;
  bool any_failed = false;
  json pts = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pr = results[i];
    pts.push_back(pr.body);
    if (pr.failed) {
      any_failed = true;
      continue;
    }
    const auto& p = pr.body;
    rows.push_back({p["a_over_r"].get<double>(), p["excess_1"].get<double>(),
                    p["E1d_1"].get<double>(), p["ratio_1"].get<double>(),
                    p["lower_1"].get<double>(),
                    p["upper_1"].is_null() ? std::nan("")
                                           : p["upper_1"].get<double>(),
                    p["overlap_1"].get<double>()});
  }
  write_csv(cfg.out_dir / "sweep.csv",
            {"a_over_r", "excess_1", "E1d_1", "ratio", "lower", "upper",
             "overlap"},
            rows);
  j["results"]["points"] = pts;
  j["results"]["any_failed"] = any_failed;
  j["artifacts"] = {"sweep.csv"};
  return j;
}

}  // namespace

Report run_subcommand(const std::string& name, const RunConfig& cfg) {
  Report rep;
  if (name == "scatter") {
    rep.body = scatter_report(cfg);
  } else if (name == "transverse") {
    rep.body = transverse_report(cfg);
  } else if (name == "ll-spectrum") {
    rep.body = ll_spectrum_report(cfg);
  } else if (name == "branches") {
    rep.body = branches_report(cfg);
  } else if (name == "bounds") {
    rep.body = bounds_report(cfg);
  } else if (name == "verify-2body") {
    rep.body = verify_2body_report(cfg);
  } else if (name == "sweep") {
    rep.body = sweep_report(cfg);
    if (rep.body["results"]["any_failed"].get<bool>()) rep.exit_code = 2;
  } else if (name == "accept") {
    rep.body = report_skeleton("accept", cfg);
    const int failures = run_acceptance(std::cout, cfg.out_dir / "accept");
    rep.body["results"]["failed_criteria"] = failures;
    rep.exit_code = failures == 0 ? 0 : 3;
  } else {
    throw ConfigError("subcommand", "unknown subcommand '" + name + "'");
  }
  write_report(cfg, rep.body);
  return rep;
}

}  // namespace dimred
