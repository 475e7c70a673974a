#include "dimred/numerics.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace dimred {

namespace {
// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace

double gauss_integrate(const std::function<double(double)>& f, double a,
                       double b, int pieces) {
  if (b <= a) return 0.0;
  const double h = (b - a) / pieces;
  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
      s += kGlW[i] * (f(mid + half * kGlX[i]) + f(mid - half * kGlX[i]));
    }
    total += s * half;
  }
  return total;
}

double lerp_table(const std::vector<double>& x, const std::vector<double>& y,
                  double xq) {
  if (x.empty()) throw NumericalError("lerp_table: empty table");
  if (xq <= x.front()) return y.front();
  if (xq >= x.back()) return y.back();
  auto it = std::lower_bound(x.begin(), x.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - t) * y[i - 1] + t * y[i];
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw NumericalError("fit_slope: bad input");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw NumericalError("fit_slope: degenerate abscissa");
  return (n * sxy - sx * sy) / denom;
}

double extrapolate_half_powers(const std::vector<double>& sizes,
                               const std::vector<double>& values) {
  const int m = static_cast<int>(sizes.size());
  if (m < 2 || values.size() != sizes.size())
    throw NumericalError("extrapolate_half_powers: need >= 2 points");
  Eigen::MatrixXd V(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs(i) = values[i];
    for (int j = 0; j < m; ++j) V(i, j) = std::pow(sizes[i], -0.5 * j);
  }
  Eigen::VectorXd coef = V.fullPivLu().solve(rhs);
  return coef(0);
}

double extrapolate_inverse_powers(const std::vector<double>& x,
                                  const std::vector<double>& v) {
  if (x.size() != 3 || v.size() != 3)
    throw NumericalError("extrapolate_inverse_powers: need 3 points");
  Eigen::Matrix3d V;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    const double u = 1.0 / x[i];
    V(i, 0) = 1.0;
    V(i, 1) = u;
    V(i, 2) = u * u;
    rhs(i) = v[i];
  }
  return V.fullPivLu().solve(rhs)(0);
}

}  // namespace dimred
