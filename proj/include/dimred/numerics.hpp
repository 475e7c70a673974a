#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dimred {

/// Numerical failure of a solver or quadrature (distinct from config errors).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Composite 16-point Gauss-Legendre quadrature of f on [a,b] split into
/// `pieces` equal subintervals.
double gauss_integrate(const std::function<double(double)>& f, double a,
                       double b, int pieces = 8);

/// Linear interpolation on a sorted abscissa table; clamps outside the range.
double lerp_table(const std::vector<double>& x, const std::vector<double>& y,
                  double xq);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Powers-of-x^(-1/2) Richardson fit: given values v_i at sizes s_i
/// (ascending), fit v = v_inf + sum_j c_j s^(-j/2) using all points and
/// return v_inf.  Used for basis-size extrapolation of contact interactions.
double extrapolate_half_powers(const std::vector<double>& sizes,
                               const std::vector<double>& values);

/// Solve v(x) = v_inf + b/x + c/x^2 through three (x, v) points, return v_inf.
double extrapolate_inverse_powers(const std::vector<double>& x,
                                  const std::vector<double>& v);

}  // namespace dimred
