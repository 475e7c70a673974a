#pragma once

#include <vector>

#include "dimred/potential.hpp"

namespace dimred {

struct ScatterGridPolicy {
  int nodes_per_feature = 400;  // ODE steps across each length scale
  double t_max_factor = 3.0;    // exported grid extends to t_max_factor * core
};

/// Zero-energy solution f0 of the scaled pair problem
///   (-d^2/dt^2 - (2/t) d/dt + v(t/a)/(2 a^2)) f0 = 0,  f0 -> 1 at infinity.
/// Outside the core, f0(t) = 1 - scattering_length/t exactly.
struct ScatteringSolution {
  PotentialSpec spec;
  double a = 1.0;               // length scale of the scaled potential
  double scattering_length = 0.0;
  std::vector<double> grid;     // radial nodes (graded)
  std::vector<double> f0;       // f0 at the nodes
  std::vector<double> f0_prime;
  double residual = 0.0;        // max local ODE defect (relative)
  // dense evaluation table (tabulated potentials only)
  std::vector<double> dense_t, dense_f0, dense_f0p;

  double core_radius() const { return a * spec.range_R0; }
  /// Evaluate f0 / f0' anywhere (closed form where available, else table).
  double f0_at(double t) const;
  double f0_prime_at(double t) const;
};

ScatteringSolution solve_zero_energy(const PotentialSpec& spec, double a,
                                     const ScatterGridPolicy& policy = {});

/// Rescale range/strength so that the potential has scattering length 1 in
/// its own units.  Throws on a zero potential (a_s = 0).
PotentialSpec calibrate_unit_scattering_length(const PotentialSpec& spec);

/// Cutoff pair correlation: f(t) = f0(t)/f0(R) for t <= R, f = 1 beyond.
struct JastrowCutoff {
  ScatteringSolution sol;
  double R = 0.0;
  double f0_at_R = 1.0;

  double value(double t) const;
  double deriv(double t) const;
};

JastrowCutoff build_jastrow(const ScatteringSolution& sol, double R);

/// Even 1D kernels obtained by integrating the pair correlation over the
/// transverse plane:
///   h(z) = 2 pi Int_{|z|}^{R} [ f'(t)^2 + v(t/a) f(t)^2 / (2 a^2) ] t dt
///   m(z) = 2 pi Int_{|z|}^{R} f'(t) t dt
/// Both vanish for |z| >= R.
struct KernelPair {
  std::vector<double> z;  // samples on [0, R]; kernels are even
  std::vector<double> h;
  std::vector<double> m;
  double integral_h = 0.0;  // over the whole real line
  double integral_m = 0.0;
  double sup_m = 0.0;
  double R = 0.0;
};

KernelPair kernels(const JastrowCutoff& f, int z_samples = 129);

}  // namespace dimred
