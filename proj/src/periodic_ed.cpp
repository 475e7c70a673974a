#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dimred/lieb_liniger.hpp"
#include "dimred/numerics.hpp"

namespace dimred {

namespace {

using State = std::vector<int>;  // sorted single-particle momentum indices

void gen_states(int n, int pos, int prev, int remaining_sum, int cutoff,
                State& cur, std::vector<State>& out) {
  if (pos == n) {
    if (remaining_sum == 0) out.push_back(cur);
    return;
  }
  for (int m = prev; m <= cutoff; ++m) {
    // the remaining pos..n-1 entries are >= m, so the sum can still reach
    // remaining_sum only if m*(n-pos) <= remaining_sum + slack from cutoff
    if (1LL * m * (n - pos) > remaining_sum) break;
    if (remaining_sum - m > 1LL * cutoff * (n - pos - 1)) continue;
    cur[pos] = m;
    gen_states(n, pos + 1, m, remaining_sum - m, cutoff, cur, out);
  }
}

}  // namespace

std::vector<double> ed_periodic_levels(int n, double ell, double g,
                                       int total_q, int cutoff, int k_max) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("plane-wave ED supports n in [2,4]");
  if (!(g >= 0.0) || std::isinf(g))
    throw std::invalid_argument("plane-wave ED needs finite g >= 0");

  std::vector<State> basis;
  {
    State cur(n);
    gen_states(n, 0, -cutoff, total_q, cutoff, cur, basis);
  }
  if (basis.empty()) throw NumericalError("empty plane-wave basis");
  std::map<State, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = static_cast<int>(i);

  const int dim = static_cast<int>(basis.size());
  const double kin_unit = std::pow(2.0 * M_PI / ell, 2);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);

  for (int col = 0; col < dim; ++col) {
    const State& s = basis[col];
    std::map<int, int> occ;
    for (int m : s) occ[m]++;
    double kin = 0.0;
    for (int m : s) kin += kin_unit * m * m;
    H(col, col) += kin;

    // (g / 2 ell) sum over ordered pairs and momentum transfers
    for (const auto& [p, np] : occ) {
      for (const auto& [q, nq] : occ) {
        const double amp1 = std::sqrt(double(np) * (nq - (p == q ? 1 : 0)));
        if (amp1 <= 0.0) continue;
        std::map<int, int> occ2 = occ;
        if (--occ2[p] == 0) occ2.erase(p);
        if (--occ2[q] == 0) occ2.erase(q);
        for (int r = -cutoff; r <= cutoff; ++r) {
          const int t = p + q - r;
          if (t < -cutoff || t > cutoff) continue;
          auto occ3 = occ2;
          const int nr = occ3[r]++;
          const int nt = occ3[t]++;  // includes the r bump when r == t
          const double amp2 = std::sqrt(double(nr + 1) * double(nt + 1));
          State ns;
          ns.reserve(n);
          for (const auto& [m, c] : occ3)
            for (int i = 0; i < c; ++i) ns.push_back(m);
          auto it = index.find(ns);
          if (it == index.end()) continue;  // outside the cutoff box
          H(it->second, col) += 0.5 * g / ell * amp1 * amp2;
        }
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int i = 0; i < std::min(k_max, dim); ++i)
    out.push_back(es.eigenvalues()(i));
  return out;
}

double ed_periodic_extrapolated(int n, double ell, double g, int total_q,
                                int k_index, const std::vector<int>& cutoffs) {
  if (cutoffs.size() != 3)
    throw std::invalid_argument("extrapolation expects three cutoffs");
  std::vector<double> xs, vs;
  for (int c : cutoffs) {
    xs.push_back(double(c));
    vs.push_back(ed_periodic_levels(n, ell, g, total_q, c, k_index + 1)
                     .at(k_index));
  }
  return extrapolate_inverse_powers(xs, vs);
}

}  // namespace dimred
