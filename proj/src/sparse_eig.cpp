#include "dimred/sparse_eig.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

#include "dimred/numerics.hpp"

namespace dimred {

namespace {

// Eigenvalue count below x for the standard symmetric tridiagonal (d, o)
// via the LDL^T pivot sign sequence.
int sturm_count(const std::vector<double>& d, const std::vector<double>& o,
                double x) {
  int count = 0;
  double p = d[0] - x;
  if (p < 0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    double denom = p;
    if (std::abs(denom) < 1e-300) denom = (denom < 0 ? -1e-300 : 1e-300);
    p = d[i] - x - o[i - 1] * o[i - 1] / denom;
    if (p < 0) ++count;
  }
  return count;
}

// Tridiagonal solve (T - s I) x = b via LU with partial pivoting
// (LAPACK gttrf/gttrs layout).
void tridiag_shifted_solve(const std::vector<double>& d,
                           const std::vector<double>& o, double s,
                           Eigen::VectorXd& b) {
  const int n = static_cast<int>(d.size());
  std::vector<double> dl(n - 1), dm(n), du(n - 1), du2(n >= 2 ? n - 2 : 0);
  std::vector<bool> swp(n - 1, false);
  for (int i = 0; i < n; ++i) dm[i] = d[i] - s;
  for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = o[i];

  auto guard = [](double x) {
    return (std::abs(x) < 1e-300) ? (x < 0 ? -1e-300 : 1e-300) : x;
  };
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(dm[i]) >= std::abs(dl[i])) {
      const double fact = dl[i] / guard(dm[i]);
      dm[i + 1] -= fact * du[i];
      dl[i] = fact;
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      swp[i] = true;
      const double fact = dm[i] / dl[i];
      dm[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = dm[i + 1];
      dm[i + 1] = temp - fact * dm[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
    }
  }
  // forward pass
  for (int i = 0; i + 1 < n; ++i) {
    if (swp[i]) std::swap(b(i), b(i + 1));
    b(i + 1) -= dl[i] * b(i);
  }
  // back substitution
  b(n - 1) /= guard(dm[n - 1]);
  if (n >= 2) b(n - 2) = (b(n - 2) - du[n - 2] * b(n - 1)) / guard(dm[n - 2]);
  for (int i = n - 3; i >= 0; --i)
    b(i) = (b(i) - du[i] * b(i + 1) - du2[i] * b(i + 2)) / guard(dm[i]);
}

}  // namespace

TridiagPairs tridiag_smallest(const std::vector<double>& diag,
                              const std::vector<double>& off,
                              const std::vector<double>& mass, int n_pairs,
                              bool want_vectors) {
  const int n = static_cast<int>(diag.size());
  if (n < 2 || static_cast<int>(off.size()) != n - 1 ||
      static_cast<int>(mass.size()) != n)
    throw NumericalError("tridiag_smallest: inconsistent sizes");
  // scale to the standard problem
  std::vector<double> d(n), o(n - 1);
  for (int i = 0; i < n; ++i) d[i] = diag[i] / mass[i];
  for (int i = 0; i + 1 < n; ++i)
    o[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);

  double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(o[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(o[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }

  TridiagPairs out;
  for (int k = 1; k <= n_pairs; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 120 && (b - a) > 1e-15 * std::max(1.0, std::abs(b));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(d, o, mid) >= k)
        b = mid;
      else
        a = mid;
    }
    const double lam = 0.5 * (a + b);
    out.values.push_back(lam);
    if (want_vectors) {
      Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0);
      // slight offset keeps the shifted matrix nonsingular
      const double shift = lam + (b - a + 1e-14 * std::abs(lam) + 1e-30);
      for (int it = 0; it < 4; ++it) {
        tridiag_shifted_solve(d, o, shift, x);
        x.normalize();
      }
      // back to the generalized problem: v = D^{-1/2} x
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = x(i) / std::sqrt(mass[i]);
      out.vectors.push_back(v);
    }
  }
  return out;
}

EigenPairs smallest_eigenpairs(const Eigen::SparseMatrix<double>& A,
                               const Eigen::VectorXd& M_diag,
                               const ShiftInvertOptions& opts) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd s_inv = M_diag.cwiseSqrt().cwiseInverse();

  Eigen::SparseMatrix<double> Ahat(n, n);
  {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(A.nonZeros());
    for (int kcol = 0; kcol < A.outerSize(); ++kcol)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, kcol); it; ++it)
        trips.emplace_back(it.row(), it.col(),
                           it.value() * s_inv(it.row()) * s_inv(it.col()));
    Ahat.setFromTriplets(trips.begin(), trips.end());
  }

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(Ahat);
  if (solver.info() != Eigen::Success)
    throw NumericalError("sparse factorization failed");

  const int m_max = std::min(opts.max_basis, n);
  std::vector<Eigen::VectorXd> V;
  V.reserve(m_max);
  std::vector<double> alpha, beta;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = 1.0 + 0.05 * gauss(rng);
  v.normalize();
  V.push_back(v);

  Eigen::VectorXd w(n);
  int converged_at = -1;
  Eigen::MatrixXd small_vecs;
  Eigen::VectorXd small_vals;

  for (int j = 0; j < m_max; ++j) {
    w = solver.solve(V[j]);
    if (j > 0) w -= beta[j - 1] * V[j - 1];
    double a = V[j].dot(w);
    alpha.push_back(a);
    w -= a * V[j];
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : V) w -= u.dot(w) * u;
    const double b = w.norm();
    const int m = j + 1;
    const bool last = (m == m_max) || b < 1e-14;

    if ((m >= std::max(2 * opts.n_pairs + 2, 12) && m % 6 == 0) || last) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta.size() > size_t(i)
                                                       ? beta[i]
                                                       : 0.0;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      small_vals = es.eigenvalues();  // ascending; want the largest mu
      small_vecs = es.eigenvectors();
      bool all_ok = true;
      for (int p = 0; p < opts.n_pairs; ++p) {
        const int idx = m - 1 - p;
        if (idx < 0) {
          all_ok = false;
          break;
        }
        const double mu = small_vals(idx);
        const double res = b * std::abs(small_vecs(m - 1, idx));
        if (!(mu > 0.0) || res > opts.tol * mu) {
          all_ok = false;
          break;
        }
      }
      if (all_ok) {
        converged_at = m;
        break;
      }
      if (last)
        throw NumericalError("Lanczos did not converge within the basis");
    }
    if (b < 1e-14) break;  // invariant subspace found
    beta.push_back(b);
    V.push_back(w / b);
  }
  if (converged_at < 0)
    throw NumericalError("Lanczos did not converge");

  const int m = converged_at;
  EigenPairs out;
  out.iterations = m;
  for (int p = 0; p < opts.n_pairs; ++p) {
    const int idx = m - 1 - p;
    const double mu = small_vals(idx);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) y += small_vecs(i, idx) * V[i];
    y.normalize();
    // explicit residual in the inverted metric
    Eigen::VectorXd r = solver.solve(y) - mu * y;
    out.values.push_back(1.0 / mu);
    out.residuals.push_back(r.norm() / mu);
    Eigen::VectorXd x = y.cwiseProduct(s_inv);
    out.vectors.push_back(x);
  }
  // ascending eigenvalues
  std::vector<int> order(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return out.values[i] < out.values[j]; });
  EigenPairs sorted;
  sorted.iterations = out.iterations;
  for (int i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(out.vectors[i]);
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

}  // namespace dimred
