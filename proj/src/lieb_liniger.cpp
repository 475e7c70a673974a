#include "dimred/lieb_liniger.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "dimred/numerics.hpp"

namespace dimred {

namespace {

void check_quantum_numbers(int n, const std::vector<int>& I2) {
  if (static_cast<int>(I2.size()) != n)
    throw std::invalid_argument("need n quantum numbers");
  const int want_parity = (n % 2 == 0) ? 1 : 0;  // doubled: odd for even n
  for (int v : I2)
    if (((v % 2) + 2) % 2 != want_parity)
      throw std::invalid_argument("quantum numbers have wrong parity");
  std::vector<int> s = I2;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("quantum numbers must be distinct");
}

// Yang-Yang action whose gradient is the Bethe system; strictly convex for
// c > 0, so damped Newton converges from any start.
double bethe_action(const Eigen::VectorXd& k, const std::vector<int>& I2,
                    double ell, double c) {
  const int n = static_cast<int>(k.size());
  double B = 0.0;
  for (int j = 0; j < n; ++j)
    B += 0.5 * ell * k(j) * k(j) - M_PI * I2[j] * k(j);
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l) {
      const double x = k(j) - k(l);
      B += 2.0 * (x * std::atan(x / c)) - c * std::log1p(x * x / (c * c));
    }
  return B;
}

}  // namespace

std::vector<int> bethe_ground_numbers(int n) {
  std::vector<int> I2(n);
  for (int j = 0; j < n; ++j) I2[j] = 2 * (j + 1) - n - 1;
  return I2;
}

BetheState bethe_solve(int n, double ell, double g,
                       const std::vector<int>& quantum_numbers_2x) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(ell > 0.0)) throw std::invalid_argument("ell must be > 0");
  if (!(g >= 0.0)) throw std::invalid_argument("coupling g must be >= 0");
  check_quantum_numbers(n, quantum_numbers_2x);

  BetheState st;
  st.n = n;
  st.ell = ell;
  st.g = g;
  st.quantum_numbers_2x = quantum_numbers_2x;
  std::sort(st.quantum_numbers_2x.begin(), st.quantum_numbers_2x.end());
  const auto& I2 = st.quantum_numbers_2x;

  st.rapidities.resize(n);
  int sum_I2 = 0;
  for (int v : I2) sum_I2 += v;
  st.momentum = M_PI * sum_I2 / ell;

  // decoupled branches: free momenta at g = 0 (by convention) and g = inf
  if (g == 0.0 || std::isinf(g)) {
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      st.rapidities[j] = M_PI * I2[j] / ell;
      e += st.rapidities[j] * st.rapidities[j];
    }
    st.energy = e;
    st.newton_residual = 0.0;
    return st;
  }

  const double c = 0.5 * g;
  Eigen::VectorXd k(n);
  for (int j = 0; j < n; ++j) k(j) = M_PI * I2[j] / ell;

  auto system = [&](const Eigen::VectorXd& kk, Eigen::VectorXd& F,
                    Eigen::MatrixXd* J) {
    F.setZero(n);
    if (J) J->setZero(n, n);
    for (int j = 0; j < n; ++j) {
      F(j) = kk(j) * ell - M_PI * I2[j];
      if (J) (*J)(j, j) = ell;
      for (int l = 0; l < n; ++l) {
        if (l == j) continue;
        const double x = kk(j) - kk(l);
        F(j) += 2.0 * std::atan(x / c);
        if (J) {
          const double w = 2.0 * c / (c * c + x * x);
          (*J)(j, j) += w;
          (*J)(j, l) -= w;
        }
      }
    }
  };

  Eigen::VectorXd F(n);
  Eigen::MatrixXd J(n, n);
  double B = bethe_action(k, I2, ell, c);
  for (int it = 0; it < 300; ++it) {
    system(k, F, &J);
    const double res = F.lpNorm<Eigen::Infinity>();
    if (res < 1e-13 * std::max(1.0, ell)) break;
    const Eigen::VectorXd dk = J.ldlt().solve(-F);
    if (res < 1e-6) {  // quadratic endgame: no damping needed
      k += dk;
      continue;
    }
    const double slope = F.dot(dk);  // < 0 along the Newton direction
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      const double Bn = bethe_action(k + step * dk, I2, ell, c);
      if (Bn <= B + 1e-4 * step * slope + 1e-14 * (std::abs(B) + 1.0)) {
        k += step * dk;
        B = Bn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {  // at the numerical floor of the action
      k += dk;
      B = bethe_action(k, I2, ell, c);
    }
  }
  system(k, F, nullptr);
  st.newton_residual = F.lpNorm<Eigen::Infinity>();
  if (st.newton_residual > 1e-11)
    throw NumericalError("Bethe Newton did not converge, residual " +
                         std::to_string(st.newton_residual));
  double e = 0.0;
  for (int j = 0; j < n; ++j) {
    st.rapidities[j] = k(j);
    e += k(j) * k(j);
  }
  st.energy = e;
  return st;
}

namespace {

// Nondecreasing integer multisets (free-boson occupancies) with sum of
// squares below the cut, in ascending sum-of-squares order.
std::vector<std::vector<int>> boson_multisets(int n, long long max_sum_sq) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  // lower bound for the first entry: |m| <= sqrt(max)
  const int lim = static_cast<int>(std::sqrt(double(max_sum_sq))) + 1;
  std::function<void(int, int, long long)> rec = [&](int pos, int prev,
                                                     long long left) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int m = prev; m <= lim; ++m) {
      const long long s = 1LL * m * m;
      // remaining n-pos entries each at least m^2 if m >= 0; prune loosely
      if (s > left) {
        if (m >= 0) break;
        continue;
      }
      cur[pos] = m;
      rec(pos + 1, m, left - s);
    }
  };
  rec(0, -lim, max_sum_sq);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    long long sa = 0, sb = 0;
    for (int v : a) sa += 1LL * v * v;
    for (int v : b) sb += 1LL * v * v;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

std::vector<int> multiset_to_bethe_numbers(const std::vector<int>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> I2(n);
  for (int j = 0; j < n; ++j) I2[j] = 2 * m[j] + 2 * (j + 1) - n - 1;
  return I2;
}

}  // namespace

std::vector<double> tg_levels(int n, double ell, int k_max) {
  if (n < 1 || k_max < 1) throw std::invalid_argument("n, k_max must be >= 1");
  // enumerate distinct quantum-number sets via the occupancy bijection and
  // order by the impenetrable energy (pi/ell)^2 sum I2^2
  long long cut = 4 * n * n + 8;
  std::vector<double> energies;
  for (int round = 0; round < 20; ++round) {
    energies.clear();
    for (const auto& m : boson_multisets(n, cut)) {
      const auto I2 = multiset_to_bethe_numbers(m);
      long long s = 0;
      for (int v : I2) s += 1LL * v * v;
      energies.push_back(std::pow(M_PI / ell, 2) * double(s));
    }
    std::sort(energies.begin(), energies.end());
    // any omitted occupancy has sum m^2 > cut, hence
    // sum I2^2 >= 4 cut - 4(n-1) sqrt(n cut)
    const double bound =
        std::max(0.0, 4.0 * double(cut) -
                          4.0 * (n - 1) * std::sqrt(double(n) * double(cut)));
    const double horizon = std::pow(M_PI / ell, 2) * bound;
    if (static_cast<int>(energies.size()) >= k_max &&
        energies[k_max - 1] < horizon)
      break;
    cut *= 2;
  }
  if (static_cast<int>(energies.size()) < k_max)
    throw NumericalError("tg_levels enumeration window too small");
  energies.resize(k_max);
  return energies;
}

LLSpectrum ll_spectrum_periodic(int n, double ell, double g, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  LLSpectrum sp;
  sp.n = n;
  sp.ell = ell;
  sp.g = g;
  sp.trap = TrapKind::Periodic;

  const double unit = std::pow(2.0 * M_PI / ell, 2);

  if (g == 0.0) {
    // free bosons on the parity lattice (repetitions allowed)
    const double q = M_PI / ell;  // second momentum quantum is 2q
    std::vector<double> energies;
    long long cut = 2 * (k_max + n) + 16;
    for (const auto& m : boson_multisets(n, cut)) {
      double e = 0.0;
      for (int v : m) {
        const double kj = (n % 2 == 0) ? q * (2 * v + 1) : q * (2 * v);
        e += kj * kj;
      }
      energies.push_back(e);
    }
    std::sort(energies.begin(), energies.end());
    energies.resize(std::min<std::size_t>(energies.size(), k_max));
    sp.energies = energies;
    sp.window_ok = true;
    return sp;
  }

  if (std::isinf(g)) {
    sp.energies = tg_levels(n, ell, k_max);
    return sp;
  }

  long long cut = 4 * (k_max + n);
  std::vector<std::pair<double, BetheState>> solved;  // (free lower bound, st)
  for (int round = 0; round < 24; ++round) {
    solved.clear();
    auto sets = boson_multisets(n, cut);
    if (sets.size() > 40000) {
      sp.window_ok = false;
      break;
    }
    for (const auto& m : sets) {
      long long s = 0;
      for (int v : m) s += 1LL * v * v;
      const double e0 = unit * double(s);  // free-boson lower bound
      auto st = bethe_solve(n, ell, g, multiset_to_bethe_numbers(m));
      solved.emplace_back(e0, std::move(st));
    }
    std::vector<double> energies;
    for (auto& [e0, st] : solved) energies.push_back(st.energy);
    std::sort(energies.begin(), energies.end());
    if (static_cast<int>(energies.size()) >= k_max) {
      // certified complete if every omitted state's lower bound exceeds the
      // k_max-th found energy
      const double horizon = unit * double(cut);
      if (energies[k_max - 1] < horizon) break;
    }
    cut *= 2;
  }

  std::sort(solved.begin(), solved.end(), [](const auto& a, const auto& b) {
    return a.second.energy < b.second.energy;
  });
  for (const auto& [e0, st] : solved) {
    if (static_cast<int>(sp.energies.size()) >= k_max) break;
    sp.energies.push_back(st.energy);
    sp.momenta.push_back(st.momentum);
    sp.states.push_back(st);
  }
  if (static_cast<int>(sp.energies.size()) < k_max) sp.window_ok = false;
  return sp;
}

Branches excitation_branches(int n, double ell, double g) {
  if (!(g > 0.0)) throw std::invalid_argument("branches need g > 0");
  Branches br;
  const auto gs = bethe_ground_numbers(n);
  const double e0 = bethe_solve(n, ell, g, gs).energy;
  br.p.push_back(0.0);
  br.eps_type_i.push_back(0.0);
  br.eps_type_ii.push_back(0.0);
  for (int q = 1; q <= n; ++q) {
    // type I: promote the top quantum number by q units
    auto I_a = gs;
    I_a[n - 1] += 2 * q;
    // type II: dig a hole q slots below the top edge, add one above it
    auto I_b = gs;
    I_b.erase(I_b.begin() + (n - q));
    I_b.push_back(gs[n - 1] + 2);
    br.p.push_back(2.0 * M_PI * q / ell);
    br.eps_type_i.push_back(bethe_solve(n, ell, g, I_a).energy - e0);
    br.eps_type_ii.push_back(bethe_solve(n, ell, g, I_b).energy - e0);
  }
  return br;
}

std::vector<int> degeneracy_index(const std::vector<double>& energies,
                                  double tol) {
  for (std::size_t i = 1; i < energies.size(); ++i)
    if (energies[i] < energies[i - 1] - 1e-12)
      throw std::invalid_argument("energies must be ascending");
  std::vector<int> starts;
  if (energies.empty()) return starts;
  starts.push_back(1);
  double anchor = energies[0];
  for (std::size_t k = 1; k < energies.size(); ++k) {
    if (energies[k] > anchor + tol * std::max(1.0, std::abs(anchor))) {
      starts.push_back(static_cast<int>(k) + 1);
      anchor = energies[k];
    }
  }
  return starts;
}

}  // namespace dimred
