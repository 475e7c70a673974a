#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"

namespace dimred {

namespace {

// Oscillator orbitals phi_k(z) of -d^2/dz^2 + z^2/ell^4 sampled on a uniform
// z-grid wide and fine enough for quartic products: the trapezoid rule is
// spectrally accurate for these Gaussian-decaying integrands, and every
// sampled value is O(1), so no cancellation occurs at any basis size.
struct OrbitalTable {
  Eigen::MatrixXd phi;  // (n_orb x nodes)
  double h = 0.0;       // z spacing
  int nodes = 0;
};

OrbitalTable orbital_table(int n_orb, double ell) {
  const double kappa = std::sqrt(2.0 * n_orb + 1.0);  // top wavenumber (x units)
  const double L = kappa + 8.0;                       // half-width in x = z/ell
  const double h_x = M_PI / (4.0 * kappa + 12.0);
  const int half = static_cast<int>(std::ceil(L / h_x));
  const int nodes = 2 * half + 1;
  OrbitalTable tab;
  tab.h = h_x * ell;
  tab.nodes = nodes;
  tab.phi.resize(n_orb, nodes);
  std::vector<double> v(n_orb);
  for (int q = 0; q < nodes; ++q) {
    const double x = (q - half) * h_x;
    v[0] = std::pow(M_PI, -0.25) / std::sqrt(ell) * std::exp(-0.5 * x * x);
    if (n_orb > 1) v[1] = std::sqrt(2.0) * x * v[0];
    for (int k = 2; k < n_orb; ++k)
      v[k] = std::sqrt(2.0 / k) * x * v[k - 1] -
             std::sqrt(double(k - 1) / k) * v[k - 2];
    for (int k = 0; k < n_orb; ++k) tab.phi(k, q) = v[k];
  }
  return tab;
}

using State = std::vector<int>;  // sorted orbital indices, size n

std::uint64_t pack_state(const State& s) {
  std::uint64_t key = 0;
  for (int k : s) key = (key << 16) | std::uint64_t(k + 1);
  return key;
}

void gen_trapped_states(int n, int pos, int prev, int quanta_left, State& cur,
                        std::vector<State>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int k = prev; k * (n - pos) <= quanta_left; ++k) {
    cur[pos] = k;
    gen_trapped_states(n, pos + 1, k, quanta_left - k, cur, out);
  }
}

struct BlockResult {
  std::vector<double> energies;
  std::vector<double> delta_exp;
};

// Pair problem: the contact interaction factorizes over the quadrature
// nodes, so the block Hamiltonian is D + g G^T G.
BlockResult solve_block_pair(double ell, double g,
                             const std::vector<State>& states,
                             const OrbitalTable& tab, int k_keep) {
  const int dim = static_cast<int>(states.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd diag0(dim);
  Eigen::MatrixXd G(tab.nodes, dim);
  const double sqh = std::sqrt(tab.h);
  for (int col = 0; col < dim; ++col) {
    const int i = states[col][0], j = states[col][1];
    diag0(col) = (2.0 * i + 1.0 + 2.0 * j + 1.0) / (ell * ell);
    const double c = std::sqrt(2.0 / (i == j ? 2.0 : 1.0));
    G.col(col) = c * sqh *
                 tab.phi.row(i).cwiseProduct(tab.phi.row(j)).transpose();
  }
  H.noalias() = g * G.transpose() * G;
  H.diagonal() += diag0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  BlockResult out;
  const int keep = std::min(k_keep, dim);
  for (int i = 0; i < keep; ++i) {
    out.energies.push_back(es.eigenvalues()(i));
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    const double inter = es.eigenvalues()(i) - v.dot(diag0.asDiagonal() * v);
    out.delta_exp.push_back(g > 0 ? inter / g : 0.0);
  }
  return out;
}

// General n: second-quantized assembly with cached quadruple integrals.
BlockResult solve_block_general(int n, double ell, double g,
                                const std::vector<State>& states,
                                const OrbitalTable& tab, int k_keep) {
  const int dim = static_cast<int>(states.size());
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(2 * dim);
  for (int i = 0; i < dim; ++i) index[pack_state(states[i])] = i;
  const int n_orb = static_cast<int>(tab.phi.rows());
  const int nq = tab.nodes;

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd diag0(dim);

  std::unordered_map<std::uint64_t, double> cache;
  cache.reserve(1 << 18);
  auto I4 = [&](int i, int j, int k, int l) {
    std::array<int, 4> q{i, j, k, l};
    std::sort(q.begin(), q.end());
    if ((q[0] + q[1] + q[2] + q[3]) % 2 != 0) return 0.0;
    const std::uint64_t key = ((std::uint64_t)q[0] << 48) |
                              ((std::uint64_t)q[1] << 32) |
                              ((std::uint64_t)q[2] << 16) | (std::uint64_t)q[3];
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    double s = 0.0;
    for (int a = 0; a < nq; ++a)
      s += tab.phi(q[0], a) * tab.phi(q[1], a) * tab.phi(q[2], a) *
           tab.phi(q[3], a);
    s *= tab.h;
    cache.emplace(key, s);
    return s;
  };

  State ns(n);
  for (int col = 0; col < dim; ++col) {
    const State& s = states[col];
    std::unordered_map<int, int> occ;
    double kin = 0.0;
    for (int k : s) {
      occ[k]++;
      kin += (2.0 * k + 1.0) / (ell * ell);
    }
    H(col, col) += kin;
    diag0(col) = kin;
    if (g == 0.0) continue;

    for (const auto& [p, np] : occ) {
      for (const auto& [q, nqc] : occ) {
        const double amp1 = std::sqrt(double(np) * (nqc - (p == q ? 1 : 0)));
        if (amp1 <= 0.0) continue;
        auto occ2 = occ;
        if (--occ2[p] == 0) occ2.erase(p);
        if (--occ2[q] == 0) occ2.erase(q);
        for (int r = 0; r < n_orb; ++r) {
          for (int t = (p + q + r) % 2; t < n_orb; t += 2) {
            auto occ3 = occ2;
            const int nr = occ3[r]++;
            const int nt = occ3[t]++;  // includes the r bump when r == t
            const double amp2 = std::sqrt(double(nr + 1) * double(nt + 1));
            int pos = 0;
            for (const auto& [m, c] : occ3)
              for (int i = 0; i < c; ++i) ns[pos++] = m;
            std::sort(ns.begin(), ns.end());
            auto it = index.find(pack_state(ns));
            if (it == index.end()) continue;  // beyond the quanta cap
            H(it->second, col) += 0.5 * g * amp1 * amp2 * I4(p, q, r, t);
          }
        }
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  BlockResult out;
  const int keep = std::min(k_keep, dim);
  for (int i = 0; i < keep; ++i) {
    out.energies.push_back(es.eigenvalues()(i));
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    const double inter = es.eigenvalues()(i) - v.dot(diag0.asDiagonal() * v);
    out.delta_exp.push_back(g > 0 ? inter / g : 0.0);
  }
  return out;
}

struct FullSolve {
  std::vector<double> energies;
  std::vector<double> delta_exp;
};

FullSolve solve_at_quanta(int n, double ell, double g, int quanta,
                          int k_keep) {
  const int n_orb = quanta + 1;
  const OrbitalTable tab = orbital_table(n_orb, ell);

  std::vector<State> all;
  {
    State cur(n);
    gen_trapped_states(n, 0, 0, quanta, cur, all);
  }
  std::vector<State> even, odd;
  for (auto& s : all) {
    int q = 0;
    for (int k : s) q += k;
    (q % 2 == 0 ? even : odd).push_back(s);
  }
  auto solve = [&](const std::vector<State>& block) {
    return (n == 2) ? solve_block_pair(ell, g, block, tab, k_keep)
                    : solve_block_general(n, ell, g, block, tab, k_keep);
  };
  auto be = solve(even);
  auto bo = solve(odd);

  FullSolve fs;
  std::vector<std::pair<double, double>> merged;
  for (std::size_t i = 0; i < be.energies.size(); ++i)
    merged.emplace_back(be.energies[i], be.delta_exp[i]);
  for (std::size_t i = 0; i < bo.energies.size(); ++i)
    merged.emplace_back(bo.energies[i], bo.delta_exp[i]);
  std::sort(merged.begin(), merged.end());
  for (auto& [e, d] : merged) {
    fs.energies.push_back(e);
    fs.delta_exp.push_back(d);
  }
  return fs;
}

}  // namespace

LLSpectrum ll_spectrum_trapped(int n, double ell, double g, int basis_size,
                               int k_max) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("trapped ED supports n in [1,4]");
  if (basis_size > 160)
    throw std::invalid_argument("trapped ED quanta cutoff capped at 160");
  LLSpectrum sp;
  sp.n = n;
  sp.ell = ell;
  sp.g = g;
  sp.trap = TrapKind::Harmonic;
  sp.basis_size = basis_size;

  if (n == 1) {
    for (int k = 0; k < k_max; ++k)
      sp.energies.push_back((2.0 * k + 1.0) / (ell * ell));
    return sp;
  }

  if (std::isinf(g)) {
    // fermionized: sums of n distinct oscillator energies, low quanta only
    const int budget = 2 * k_max + n * n + 8;
    std::vector<double> levels;
    std::vector<int> pick(n);
    std::function<void(int, int, int)> rec = [&](int pos, int prev,
                                                 int quanta_left) {
      if (pos == n) {
        double e = 0.0;
        for (int k : pick) e += (2.0 * k + 1.0) / (ell * ell);
        levels.push_back(e);
        return;
      }
      for (int k = prev; k * (n - pos) <= quanta_left; ++k) {
        pick[pos] = k;
        rec(pos + 1, k + 1, quanta_left - k);
      }
    };
    rec(0, 0, budget);
    std::sort(levels.begin(), levels.end());
    if (static_cast<int>(levels.size()) < k_max)
      throw NumericalError("fermionized enumeration window too small");
    levels.resize(k_max);
    sp.energies = levels;
    return sp;
  }

  std::vector<double> sizes;
  for (int q : {basis_size / 8, basis_size / 4, basis_size / 2, basis_size})
    if (q >= std::max(4, 2 * k_max)) sizes.push_back(q);
  if (sizes.size() < 3)
    throw std::invalid_argument("basis_size too small for extrapolation");

  std::vector<FullSolve> runs;
  for (double q : sizes)
    runs.push_back(solve_at_quanta(n, ell, g, int(q), k_max + 2));

  int k_avail = k_max;
  for (auto& r : runs)
    k_avail = std::min(k_avail, static_cast<int>(r.energies.size()));
  sp.window_ok = k_avail >= k_max;
  double max_defect = 0.0;
  for (int k = 0; k < k_avail; ++k) {
    std::vector<double> v;
    for (auto& r : runs) v.push_back(r.energies[k]);
    const double full = extrapolate_half_powers(sizes, v);
    const std::size_t np = sizes.size() - 1;  // drop the smallest size
    std::vector<double> s3(sizes.end() - np, sizes.end());
    std::vector<double> v3(v.end() - np, v.end());
    const double part = extrapolate_half_powers(s3, v3);
    sp.energies.push_back(full);
    sp.energies_raw.push_back(runs.back().energies[k]);
    sp.delta_expectation.push_back(runs.back().delta_exp[k]);
    max_defect = std::max(
        max_defect, std::abs(full - part) / std::max(1.0, std::abs(full)));
  }
  sp.conv_defect = max_defect;
  return sp;
}

}  // namespace dimred
