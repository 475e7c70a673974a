#include "dimred/transverse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dimred/numerics.hpp"
#include "dimred/sparse_eig.hpp"

namespace dimred {

double TransversePotential::value(double r) const {
  if (kind == TransverseKind::Harmonic) return r * r;
  return lerp_table(rho, V, r);
}

void TransversePotential::validate() const {
  if (kind == TransverseKind::Harmonic) return;
  if (rho.size() < 4 || rho.size() != V.size())
    throw std::invalid_argument("tabulated transverse potential needs samples");
  for (std::size_t i = 1; i < rho.size(); ++i)
    if (!(rho[i] > rho[i - 1]))
      throw std::invalid_argument("transverse abscissae must increase");
  if (!(V.back() > V.front()))
    throw std::invalid_argument("transverse potential must confine");
}

namespace {

struct SectorResult {
  std::vector<double> values;
  Eigen::VectorXd ground;     // only for m = 0
  std::vector<double> mass;   // matching ground, includes the 2 pi factor? no
  std::vector<double> rho;    // node positions of the unknowns
};

// P1 finite elements with lumped mass on the weighted line rho drho;
// sector m adds the centrifugal m^2 / rho^2 term.
SectorResult solve_sector(const TransversePotential& pot, int m, int n,
                          double rho_max, double grading, int n_pairs,
                          bool want_vector) {
  std::vector<double> node(n + 1);
  for (int i = 0; i <= n; ++i)
    node[i] = rho_max * std::pow(double(i) / n, grading);

  const int lo = (m == 0) ? 0 : 1;   // centrifugal wall at the axis for m >= 1
  const int n_free = n - lo;         // node n is Dirichlet
  std::vector<double> diag(n_free, 0.0), off(n_free - 1, 0.0),
      mass(n_free, 0.0), pos(n_free);

  auto idx = [&](int i) { return i - lo; };
  for (int i = lo; i < n; ++i) {
    const double hl = (i > 0) ? node[i] - node[i - 1] : 0.0;
    const double hr = node[i + 1] - node[i];
    double mi = hr * (2.0 * node[i] + node[i + 1]) / 6.0;
    if (i > 0) mi += hl * (2.0 * node[i] + node[i - 1]) / 6.0;
    mass[idx(i)] = mi;
    pos[idx(i)] = node[i];

    // centrifugal: exact hat integral of 1/rho
    if (m >= 1) {
      double c = 0.0;
      if (i > 0) {
        const double rl = node[i - 1];
        c += (rl == 0.0) ? 1.0
                         : 1.0 - (rl / hl) * std::log(node[i] / rl);
      }
      const double rr = node[i + 1];
      c += (rr / hr) * std::log(rr / node[i]) - 1.0;
      diag[idx(i)] += m * m * c;
    }
    diag[idx(i)] += pot.value(node[i]) * mi;
  }
  // stiffness edges
  for (int i = lo; i < n; ++i) {
    const double h = node[i + 1] - node[i];
    const double k = 0.5 * (node[i] + node[i + 1]) / h;
    diag[idx(i)] += k;
    if (i + 1 < n) {
      diag[idx(i + 1)] += k;
      off[idx(i)] = -k;
    }
  }
  // for m >= 1 the edge (0,1) ties node 1 to the clamped axis
  if (m >= 1) {
    const double h = node[1] - node[0];
    diag[0] += 0.5 * (node[0] + node[1]) / h;
  }

  auto pairs = tridiag_smallest(diag, off, mass, n_pairs, want_vector);
  SectorResult out;
  out.values = pairs.values;
  out.mass = mass;
  out.rho = pos;
  if (want_vector) out.ground = pairs.vectors.front();
  return out;
}

double quartic_norm(const std::vector<double>& rho,
                    const std::vector<double>& b) {
  // 3-point Gauss per interval is exact for the P1 interpolant's b^4 rho
  static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    const double h = rho[i + 1] - rho[i];
    for (int q = 0; q < 3; ++q) {
      const double t = 0.5 * (1.0 + gx[q]);
      const double x = rho[i] + t * h;
      const double v = (1.0 - t) * b[i] + t * b[i + 1];
      total += gw[q] * 0.5 * h * v * v * v * v * x;
    }
  }
  return 2.0 * M_PI * total;
}

struct GridRun {
  double e0, e1_m0, e1_m1, e1_m2;
  std::vector<double> rho;
  std::vector<double> b;  // normalized on the plane
  double norm4;
  double sup_b;
  double sup_grad_b2;
  double rayleigh_defect;
};

GridRun run_grid(const TransversePotential& pot, int n, double rho_max,
                 double grading) {
  auto s0 = solve_sector(pot, 0, n, rho_max, grading, 2, true);
  auto s1 = solve_sector(pot, 1, n, rho_max, grading, 1, false);
  auto s2 = solve_sector(pot, 2, n, rho_max, grading, 1, false);

  GridRun g;
  g.e0 = s0.values[0];
  g.e1_m0 = s0.values[1];
  g.e1_m1 = s1.values[0];
  g.e1_m2 = s2.values[0];

  Eigen::VectorXd v = s0.ground;
  double nrm2 = 0.0;
  for (int i = 0; i < v.size(); ++i) nrm2 += v(i) * v(i) * s0.mass[i];
  double sum = v.sum();
  const double scale = ((sum < 0) ? -1.0 : 1.0) / std::sqrt(2.0 * M_PI * nrm2);
  g.rho = s0.rho;
  g.rho.push_back(rho_max);
  g.b.resize(g.rho.size());
  for (int i = 0; i < v.size(); ++i) g.b[i] = v(i) * scale;
  g.b.back() = 0.0;  // Dirichlet closure

  g.norm4 = quartic_norm(g.rho, g.b);
  g.sup_b = *std::max_element(g.b.begin(), g.b.end());
  double gmax = 0.0;
  for (std::size_t i = 0; i + 1 < g.rho.size(); ++i) {
    const double s = std::abs(g.b[i + 1] * g.b[i + 1] - g.b[i] * g.b[i]) /
                     (g.rho[i + 1] - g.rho[i]);
    gmax = std::max(gmax, s);
  }
  g.sup_grad_b2 = gmax;
  g.rayleigh_defect = 0.0;  // filled by the caller from the re-assembled form
  return g;
}

// Quadratic form / mass ratio of the stored ground profile, re-assembled
// from scratch; used for the Rayleigh consistency check.
double rayleigh_quotient(const TransversePotential& pot,
                         const std::vector<double>& rho,
                         const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    const double h = rho[i + 1] - rho[i];
    const double mid = 0.5 * (rho[i] + rho[i + 1]);
    const double slope = (b[i + 1] - b[i]) / h;
    num += slope * slope * mid * h;
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double hl = (i > 0) ? rho[i] - rho[i - 1] : 0.0;
    const double hr = (i + 1 < rho.size()) ? rho[i + 1] - rho[i] : 0.0;
    double mi = 0.0;
    if (i > 0) mi += hl * (2.0 * rho[i] + rho[i - 1]) / 6.0;
    if (i + 1 < rho.size()) mi += hr * (2.0 * rho[i] + rho[i + 1]) / 6.0;
    num += pot.value(rho[i]) * mi * b[i] * b[i];
    den += mi * b[i] * b[i];
  }
  return num / den;
}

}  // namespace

TransverseMode solve_transverse(const TransversePotential& pot,
                                const RadialGridPolicy& policy) {
  pot.validate();
  double rho_max = policy.rho_max;
  if (pot.kind == TransverseKind::TabulatedRadial)
    rho_max = std::min(rho_max, pot.rho.back());

  const int n_coarse = policy.n_nodes;
  GridRun c = run_grid(pot, n_coarse, rho_max, policy.grading);
  GridRun f = run_grid(pot, 2 * n_coarse, rho_max, policy.grading);

  auto rich = [](double coarse, double fine) {
    return (4.0 * fine - coarse) / 3.0;
  };

  TransverseMode mode;
  mode.e_perp = rich(c.e0, f.e0);
  mode.grid_defect = std::abs(f.e0 - c.e0) / 3.0;
  const double gap0 = rich(c.e1_m0, f.e1_m0) - mode.e_perp;
  const double gap1 = rich(c.e1_m1, f.e1_m1) - mode.e_perp;
  const double gap2 = rich(c.e1_m2, f.e1_m2) - mode.e_perp;
  mode.gap = std::min({gap0, gap1, gap2});
  mode.gap_sector = (mode.gap == gap1) ? 1 : ((mode.gap == gap2) ? 2 : 0);
  if (!(mode.gap > 10.0 * std::max(mode.grid_defect, 1e-14)))
    throw NumericalError("transverse gap below grid resolution");

  mode.rho = f.rho;
  mode.b = f.b;
  for (double bv : mode.b)
    if (bv < -1e-9) throw NumericalError("transverse ground mode not positive");
  mode.norm4_4 = rich(c.norm4, f.norm4);
  mode.sup_b = rich(c.sup_b, f.sup_b);
  mode.sup_grad_b2 = rich(c.sup_grad_b2, f.sup_grad_b2);
  if (std::abs(f.sup_grad_b2 - c.sup_grad_b2) >
      0.05 * std::max(1e-12, f.sup_grad_b2))
    throw NumericalError("grad b^2 norm not grid-converged");

  const double rq = rayleigh_quotient(pot, f.rho, f.b);
  mode.rayleigh_defect = std::abs(rq - f.e0) / std::abs(f.e0);

  // confinement window check for tabulated traps
  if (pot.kind == TransverseKind::TabulatedRadial &&
      !(pot.value(rho_max) > 2.0 * (mode.e_perp + mode.gap)))
    throw NumericalError("transverse window too small for the requested gap");
  return mode;
}

double TransverseMode::b_at(double r) const { return lerp_table(rho, b, r); }

ScaledMode scaled_mode(const TransverseMode& mode, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("scale r must be positive");
  ScaledMode s;
  s.r = r;
  s.mode = &mode;
  s.e_perp_over_r2 = mode.e_perp / (r * r);
  s.gap_over_r2 = mode.gap / (r * r);
  s.norm4_4_r = mode.norm4_4 / (r * r);
  return s;
}

double ScaledMode::b_r(double rho) const {
  return mode->b_at(rho / r) / r;
}

}  // namespace dimred
