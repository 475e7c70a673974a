#include "dimred/oracle3d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"
#include "dimred/relative_1d.hpp"
#include "dimred/sparse_eig.hpp"

namespace dimred {

void TwoBodyConfig::validate() const {
  geom.validate();
  if (geom.n != 2)
    throw std::invalid_argument("two-body oracle requires n = 2");
  if (transverse_kind != TransverseKind::Harmonic || !longitudinal_harmonic)
    throw std::invalid_argument(
        "two-body oracle is restricted to harmonic traps");
  spec.validate();
  if (spec.is_hard_core())
    throw std::invalid_argument(
        "two-body oracle needs a finite barrier (use a calibrated stiff "
        "soft sphere instead of a hard core)");
  if (k_max < 1 || n_rel_levels < 1)
    throw std::invalid_argument("k_max and n_rel_levels must be >= 1");
}

ComSeparation com_separation(const GeometryParams& geom, int n_z_levels) {
  ComSeparation c;
  c.e_perp_over_r2 = 2.0 / (geom.r * geom.r);
  c.omega_z = 2.0 / (geom.ell * geom.ell);
  for (int N = 0; N < n_z_levels; ++N)
    c.z_levels.push_back((2.0 * N + 1.0) / (geom.ell * geom.ell));
  return c;
}

namespace {

Mesh refine_mesh(const Mesh& m) {
  Mesh f;
  auto split = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(2 * v.size());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      out.push_back(v[i]);
      out.push_back(0.5 * (v[i] + v[i + 1]));
    }
    out.push_back(v.back());
    return out;
  };
  f.rho = split(m.rho);
  f.z = split(m.z);
  return f;
}

struct Assembled {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd M;
};

// Quadratic form of the relative operator measured from the transverse
// ground energy, in the ground-mode-weighted representation:
//   a[u] = (1/r^2) Int [ 2|grad u|^2 + (z^2/(2 l^4) + v_int) u^2 ] W rho,
//   W(rho) = exp(-rho^2 / (2 r^2)),  z on the half line with even weight 2.
Assembled assemble_relative(const GeometryParams& geom,
                            const PotentialSpec& spec, const Mesh& mesh) {
  const double r = geom.r, ell = geom.ell, a = geom.a;
  const double core = a * spec.range_R0;
  const int nr = mesh.n_rho_free();
  const int nz = mesh.n_z_free();
  const auto& rho = mesh.rho;
  const auto& z = mesh.z;

  auto W = [&](double p) { return std::exp(-p * p / (2.0 * r * r)); };
  auto Wp = [&](double p) { return W(p) * p; };

  auto v_int = [&](double p, double zz) -> double {
    if (a <= 0.0) return 0.0;
    const double t = std::hypot(p, zz);
    return spec.value(t / a) / (a * a);
  };
  // cell-averaged interaction near the barrier edge (3x3 Gauss points)
  auto v_cell = [&](int i, int j) -> double {
    const double p = rho[i], zz = z[j];
    if (a <= 0.0) return 0.0;
    const double hl = (i > 0) ? rho[i] - rho[i - 1] : 0.0;
    const double hr = rho[i + 1] - rho[i];
    const double gl = (j > 0) ? z[j] - z[j - 1] : 0.0;
    const double gr = z[j + 1] - z[j];
    const double half_p = 0.5 * std::max(hl, hr);
    const double half_z = 0.5 * std::max(gl, gr);
    const double t = std::hypot(p, zz);
    const double reach = std::hypot(half_p, half_z);
    if (std::abs(t - core) > 1.5 * reach) return v_int(p, zz);
    static const double gx[3] = {-0.7745966692414834, 0.0,
                                 0.7745966692414834};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double pl = std::max(0.0, p - 0.5 * hl), pr = p + 0.5 * hr;
    const double zl = std::max(0.0, zz - 0.5 * gl), zr = zz + 0.5 * gr;
    double s = 0.0;
    for (int qa = 0; qa < 3; ++qa)
      for (int qb = 0; qb < 3; ++qb) {
        const double pp = 0.5 * (pl + pr) + 0.5 * (pr - pl) * gx[qa];
        const double zq = 0.5 * (zl + zr) + 0.5 * (zr - zl) * gx[qb];
        s += gw[qa] * gw[qb] * v_int(pp, zq);
      }
    return s / 4.0;
  };

  // lumped cell weights
  std::vector<double> rw(nr), zw(nz);
  for (int i = 0; i < nr; ++i) {
    double w = 0.0;
    if (i > 0) {
      const double h = rho[i] - rho[i - 1];
      w += 0.5 * h * Wp(0.5 * (rho[i] + rho[i - 1]));
    }
    const double h = rho[i + 1] - rho[i];
    w += 0.5 * h * Wp(0.5 * (rho[i] + rho[i + 1]));
    rw[i] = w;
  }
  for (int j = 0; j < nz; ++j) {
    double w = 0.0;
    if (j > 0) w += 0.5 * (z[j] - z[j - 1]);
    w += 0.5 * (z[j + 1] - z[j]);
    zw[j] = 2.0 * w;  // even reflection
  }

  const double inv_r2 = 1.0 / (r * r);
  Assembled out;
  out.M.resize(mesh.dof());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(5 * mesh.dof());

  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nz; ++j) {
      const int id = mesh.index(i, j);
      const double mass = rw[i] * zw[j] * inv_r2;
      out.M(id) = mass;
      const double pot =
          z[j] * z[j] / (2.0 * std::pow(ell, 4)) + v_cell(i, j);
      double diag = pot * mass;
      // rho edges
      {
        const double h = rho[i + 1] - rho[i];
        const double k = 2.0 * inv_r2 * zw[j] * Wp(0.5 * (rho[i] + rho[i + 1])) / h;
        diag += k;
        if (i + 1 < nr)
          trips.emplace_back(id, mesh.index(i + 1, j), -k);
      }
      if (i > 0) {
        const double h = rho[i] - rho[i - 1];
        diag += 2.0 * inv_r2 * zw[j] * Wp(0.5 * (rho[i] + rho[i - 1])) / h;
      }
      // z edges (the factor 2 is the even reflection)
      {
        const double h = z[j + 1] - z[j];
        const double k = 2.0 * inv_r2 * rw[i] * 2.0 / h;
        diag += k;
        if (j + 1 < nz) trips.emplace_back(id, mesh.index(i, j + 1), -k);
      }
      if (j > 0) {
        const double h = z[j] - z[j - 1];
        diag += 2.0 * inv_r2 * rw[i] * 2.0 / h;
      }
      trips.emplace_back(id, id, diag);
    }
  }
  // symmetrize the off-diagonal pattern
  std::vector<Eigen::Triplet<double>> sym;
  sym.reserve(2 * trips.size());
  for (const auto& t : trips) {
    sym.push_back(t);
    if (t.row() != t.col())
      sym.emplace_back(t.col(), t.row(), t.value());
  }
  out.A.resize(mesh.dof(), mesh.dof());
  out.A.setFromTriplets(sym.begin(), sym.end());
  return out;
}

std::vector<double> solve_lambdas(const GeometryParams& geom,
                                  const PotentialSpec& spec, const Mesh& mesh,
                                  int n_pairs, std::uint64_t seed,
                                  std::vector<Eigen::VectorXd>* vecs,
                                  std::vector<double>* residuals,
                                  Eigen::VectorXd* mass_out) {
  auto asm_ = assemble_relative(geom, spec, mesh);
  ShiftInvertOptions opt;
  opt.n_pairs = n_pairs;
  opt.seed = seed;
  opt.max_basis = std::max(140, 8 * n_pairs + 60);
  auto pairs = smallest_eigenpairs(asm_.A, asm_.M, opt);
  if (vecs) *vecs = pairs.vectors;
  if (residuals) *residuals = pairs.residuals;
  if (mass_out) *mass_out = asm_.M;
  return pairs.values;
}

}  // namespace

RelativeSolve solve_relative(const TwoBodyConfig& config) {
  config.validate();
  const double core = config.geom.a * config.spec.range_R0;
  Mesh coarse = build_relative_mesh(config.geom, core,
                                    config.spec.strength_v0, config.mesh);
  Mesh fine = refine_mesh(coarse);

  RelativeSolve out;
  out.mesh = fine;
  Eigen::VectorXd mass;
  std::vector<double> lam_f = solve_lambdas(
      config.geom, config.spec, fine, config.n_rel_levels, config.seed,
      &out.vectors, &out.solver_residual, &mass);
  out.mass.assign(mass.data(), mass.data() + mass.size());
  out.lambda_fine = lam_f;
  if (config.richardson) {
    std::vector<double> lam_c =
        solve_lambdas(config.geom, config.spec, coarse, config.n_rel_levels,
                      config.seed, nullptr, nullptr, nullptr);
    for (std::size_t k = 0; k < lam_f.size(); ++k) {
      out.lambda.push_back((4.0 * lam_f[k] - lam_c[k]) / 3.0);
      out.grid_defect.push_back(std::abs(lam_f[k] - lam_c[k]) / 3.0);
    }
  } else {
    out.lambda = lam_f;
    out.grid_defect.assign(lam_f.size(), 0.0);
  }
  return out;
}

Spectrum3D assemble_spectrum(const TwoBodyConfig& config,
                             const RelativeSolve& rel,
                             const TransverseMode& mode) {
  const GeometryParams& geom = config.geom;
  Spectrum3D sp;
  sp.g = effective_g(geom, mode);

  const int n_com = config.k_max + 4;
  ComSeparation com = com_separation(geom, n_com);

  // combined levels: excess = COM z level + relative lambda
  struct Entry {
    double excess;
    int N, j;
  };
  std::vector<Entry> entries;
  for (int N = 0; N < n_com; ++N)
    for (std::size_t j = 0; j < rel.lambda.size(); ++j)
      entries.push_back({com.z_levels[N] + rel.lambda[j], N, int(j)});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.excess < b.excess; });
  entries.resize(std::min<std::size_t>(entries.size(), config.k_max));

  // 1D reference with the same COM ladder
  const int n_rel_1d = config.k_max + 4;
  std::vector<double> e_rel_1d = relative_1d_levels(geom.ell, sp.g, n_rel_1d);
  struct Ref {
    double e;
    int N, m;
  };
  std::vector<Ref> refs;
  for (int N = 0; N < n_com; ++N)
    for (int m = 0; m < n_rel_1d; ++m)
      refs.push_back({com.z_levels[N] + e_rel_1d[m], N, m});
  std::sort(refs.begin(), refs.end(),
            [](const Ref& a, const Ref& b) { return a.e < b.e; });
  refs.resize(std::min<std::size_t>(refs.size(), config.k_max));
  for (const auto& rf : refs) sp.e1d.push_back(rf.e);
  sp.e1d_groups = degeneracy_index(sp.e1d, 1e-8);

  // overlaps of the relative eigenvectors against the 1D profiles, taken in
  // the weighted mass metric (the transverse factors match exactly)
  const Mesh& mesh = rel.mesh;
  const int nrho = mesh.n_rho_free();
  const int nz = mesh.n_z_free();
  std::vector<std::vector<double>> ubar(rel.vectors.size(),
                                        std::vector<double>(nz, 0.0));
  for (std::size_t v = 0; v < rel.vectors.size(); ++v)
    for (int i = 0; i < nrho; ++i)
      for (int j = 0; j < nz; ++j)
        ubar[v][j] += rel.vectors[v](mesh.index(i, j)) *
                      rel.mass[mesh.index(i, j)];

  // collapsed z-weights of the mass metric; normalizing the 1D profiles in
  // this metric keeps every overlap a true discrete Bessel coefficient
  std::vector<double> zweight(nz, 0.0);
  for (int i = 0; i < nrho; ++i)
    for (int j = 0; j < nz; ++j) zweight[j] += rel.mass[mesh.index(i, j)];
  std::vector<std::vector<double>> psi_on_grid(n_rel_1d);
  for (int m = 0; m < n_rel_1d; ++m) {
    auto lvl = relative_1d_level(geom.ell, sp.g, m);
    psi_on_grid[m].resize(nz);
    double nrm = 0.0;
    for (int j = 0; j < nz; ++j) {
      psi_on_grid[m][j] = relative_1d_eval(lvl, mesh.z[j]);
      nrm += zweight[j] * psi_on_grid[m][j] * psi_on_grid[m][j];
    }
    const double s = 1.0 / std::sqrt(nrm);
    for (int j = 0; j < nz; ++j) psi_on_grid[m][j] *= s;
  }
  auto overlap = [&](int vec_j, int m) {
    double s = 0.0;
    for (int j = 0; j < nz; ++j) s += ubar[vec_j][j] * psi_on_grid[m][j];
    return s;
  };

  double max_defect = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    sp.excess.push_back(e.excess);
    sp.total.push_back(e.excess + 2.0 * com.e_perp_over_r2);
    sp.com_index.push_back(e.N);
    sp.rel_index.push_back(e.j);
    max_defect = std::max(max_defect, rel.grid_defect[e.j]);

    // degeneracy group of the matching 1D level
    int gi = 0;
    {
      const auto& starts = sp.e1d_groups;
      for (std::size_t s = 0; s < starts.size(); ++s) {
        const int lo = starts[s];
        const int hi = (s + 1 < starts.size())
                           ? starts[s + 1]
                           : static_cast<int>(sp.e1d.size()) + 1;
        if (static_cast<int>(k) + 1 >= lo && static_cast<int>(k) + 1 < hi) {
          gi = static_cast<int>(s);
          break;
        }
      }
      double sum = 0.0;
      const int lo = sp.e1d_groups[gi];
      const int hi = (gi + 1 < static_cast<int>(sp.e1d_groups.size()))
                         ? sp.e1d_groups[gi + 1]
                         : static_cast<int>(refs.size()) + 1;
      for (int l = lo; l < hi && l <= static_cast<int>(refs.size()); ++l) {
        const auto& rf = refs[l - 1];
        if (rf.N != e.N) continue;  // COM factors are orthonormal
        const double o = overlap(e.j, rf.m);
        sum += o * o;
      }
      sp.overlap_group.push_back(sum);
    }
  }
  sp.grid_defect = max_defect;
  const double gap_over_r2 = mode.gap / (geom.r * geom.r);
  sp.window_ok = sp.excess.empty() || sp.excess.back() < gap_over_r2;
  return sp;
}

Spectrum3D verify_two_body(const TwoBodyConfig& config,
                           const TransverseMode& mode) {
  RelativeSolve rel = solve_relative(config);
  return assemble_spectrum(config, rel, mode);
}

ScalingCheckResult scaling_check(const TwoBodyConfig& config,
                                 const TransverseMode& mode) {
  TwoBodyConfig scaled = config;
  scaled.geom.r = config.geom.r / config.geom.ell;
  scaled.geom.a = config.geom.a / config.geom.ell;
  scaled.geom.ell = 1.0;

  Spectrum3D base = verify_two_body(config, mode);
  Spectrum3D other = verify_two_body(scaled, mode);

  ScalingCheckResult res;
  const double l2 = config.geom.ell * config.geom.ell;
  for (std::size_t k = 0; k < base.excess.size() && k < other.excess.size();
       ++k) {
    const double eb = base.excess[k];
    const double es = other.excess[k] / l2;
    res.excess_base.push_back(eb);
    res.excess_scaled.push_back(es);
    res.rel_diff.push_back(std::abs(eb - es) / std::max(std::abs(eb), 1e-300));
    res.defect.push_back((base.grid_defect + other.grid_defect / l2) /
                         std::max(std::abs(eb), 1e-300));
  }
  return res;
}

}  // namespace dimred
