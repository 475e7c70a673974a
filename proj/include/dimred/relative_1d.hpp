#pragma once

#include <vector>

namespace dimred {

/// Even-sector eigenpair of the 1D relative problem
///   -2 psi'' + z^2/(2 ell^4) psi + g delta(z) psi = E psi,
/// solved by shooting with the derivative-jump condition
/// psi'(0+) = (g/4) psi(0).  g = inf maps the even levels onto the odd
/// oscillator ladder.
struct Relative1DLevel {
  double energy = 0.0;
  std::vector<double> z;    // half-line samples
  std::vector<double> psi;  // normalized on the full line
};

std::vector<double> relative_1d_levels(double ell, double g, int k_max);
Relative1DLevel relative_1d_level(double ell, double g, int k);
double relative_1d_eval(const Relative1DLevel& lvl, double z);

}  // namespace dimred
