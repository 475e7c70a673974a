#include "dimred/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dimred/numerics.hpp"

namespace dimred {

namespace {

double sinhc(double x) {  // sinh(x)/x, stable near 0
  if (std::abs(x) < 1e-5) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

// Graded radial grid: uniform across the core, geometric tail beyond.
std::vector<double> make_export_grid(double core, double t_max) {
  std::vector<double> g;
  const int n_core = 140;
  for (int i = 0; i <= n_core; ++i) g.push_back(core * i / n_core);
  double h = core / n_core;
  double t = core;
  while (t < t_max) {
    t += h;
    h *= 1.06;
    g.push_back(std::min(t, t_max));
  }
  return g;
}

// RK4 for u'' = q(t) u with u(0) = 0, u'(0) = 1 on [0, T]; fills the dense
// tables and returns (u(T), u'(T)).
std::pair<double, double> integrate_u(const PotentialSpec& spec, double a,
                                      int steps, std::vector<double>* t_out,
                                      std::vector<double>* u_out,
                                      std::vector<double>* up_out) {
  const double T = a * spec.range_R0;
  const double h = T / steps;
  auto q = [&](double t) { return spec.value(t / a) / (2.0 * a * a); };
  double u = 0.0, up = 1.0;
  if (t_out) {
    t_out->push_back(0.0);
    u_out->push_back(0.0);
    up_out->push_back(1.0);
  }
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const double k1u = up, k1p = q(t) * u;
    const double k2u = up + 0.5 * h * k1p,
                 k2p = q(t + 0.5 * h) * (u + 0.5 * h * k1u);
    const double k3u = up + 0.5 * h * k2p,
                 k3p = q(t + 0.5 * h) * (u + 0.5 * h * k2u);
    const double k4u = up + h * k3p, k4p = q(t + h) * (u + h * k3u);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    up += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    if (t_out) {
      t_out->push_back((i + 1) * h);
      u_out->push_back(u);
      up_out->push_back(up);
    }
  }
  return {u, up};
}

}  // namespace

ScatteringSolution solve_zero_energy(const PotentialSpec& spec, double a,
                                     const ScatterGridPolicy& policy) {
  spec.validate();
  if (!(a > 0.0)) throw std::invalid_argument("scattering scale a must be > 0");
  ScatteringSolution sol;
  sol.spec = spec;
  sol.a = a;
  const double core = a * spec.range_R0;

  switch (spec.kind) {
    case PotentialKind::HardCore:
      sol.scattering_length = core;
      sol.residual = 0.0;
      break;
    case PotentialKind::SquareBarrier: {
      const double kap = std::sqrt(spec.strength_v0 / 2.0) / a;
      if (kap * core < 1e-8) {
        sol.scattering_length = kap * kap * core * core * core / 3.0;
      } else {
        sol.scattering_length = core - std::tanh(kap * core) / kap;
      }
      sol.residual = 0.0;
      break;
    }
    case PotentialKind::TabulatedRadial: {
      const int steps =
          std::max(20000, policy.nodes_per_feature *
                              static_cast<int>(spec.table_t.size()) * 8);
      auto [uT, upT] = integrate_u(spec, a, steps, &sol.dense_t, &sol.dense_f0,
                                   &sol.dense_f0p);
      if (!(upT > 0.0))
        throw NumericalError("zero-energy integration lost positivity");
      sol.scattering_length = core - uT / upT;
      // residual: scattering-length shift under step halving
      auto [uT2, upT2] = integrate_u(spec, a, 2 * steps, nullptr, nullptr,
                                     nullptr);
      const double as2 = core - uT2 / upT2;
      sol.residual = std::abs(sol.scattering_length - as2) / std::max(a, core);
      sol.scattering_length = as2;
      // convert dense (t, u, u') into (t, f0, f0')
      const double alpha = upT;
      for (std::size_t i = 0; i < sol.dense_t.size(); ++i) {
        const double t = sol.dense_t[i];
        const double u = sol.dense_f0[i], up = sol.dense_f0p[i];
        if (t == 0.0) {
          sol.dense_f0[i] = 1.0 / alpha;
          sol.dense_f0p[i] = 0.0;
        } else {
          sol.dense_f0[i] = u / (alpha * t);
          sol.dense_f0p[i] = (up * t - u) / (alpha * t * t);
        }
      }
      break;
    }
  }

  const double t_max =
      policy.t_max_factor * std::max({core, sol.scattering_length, a});
  sol.grid = make_export_grid(core, t_max);
  sol.f0.resize(sol.grid.size());
  sol.f0_prime.resize(sol.grid.size());
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    sol.f0[i] = sol.f0_at(sol.grid[i]);
    sol.f0_prime[i] = sol.f0_prime_at(sol.grid[i]);
  }
  return sol;
}

double ScatteringSolution::f0_at(double t) const {
  const double core = core_radius();
  const double as = scattering_length;
  if (t >= core) return t > 0.0 ? 1.0 - as / t : 1.0;
  switch (spec.kind) {
    case PotentialKind::HardCore:
      return 0.0;
    case PotentialKind::SquareBarrier: {
      const double kap = std::sqrt(spec.strength_v0 / 2.0) / a;
      const double alpha = std::cosh(kap * core);
      return sinhc(kap * t) / (alpha);
    }
    case PotentialKind::TabulatedRadial:
      return lerp_table(dense_t, dense_f0, t);
  }
  return 0.0;
}

double ScatteringSolution::f0_prime_at(double t) const {
  const double core = core_radius();
  const double as = scattering_length;
  if (t >= core) return t > 0.0 ? as / (t * t) : 0.0;
  switch (spec.kind) {
    case PotentialKind::HardCore:
      return 0.0;
    case PotentialKind::SquareBarrier: {
      if (t <= 0.0) return 0.0;
      const double kap = std::sqrt(spec.strength_v0 / 2.0) / a;
      const double alpha = kap * std::cosh(kap * core);
      return (kap * std::cosh(kap * t) * t - std::sinh(kap * t)) /
             (alpha * t * t);
    }
    case PotentialKind::TabulatedRadial:
      return lerp_table(dense_t, dense_f0p, t);
  }
  return 0.0;
}

PotentialSpec calibrate_unit_scattering_length(const PotentialSpec& spec) {
  PotentialSpec cur = spec;
  for (int iter = 0; iter < 6; ++iter) {
    const double as = solve_zero_energy(cur, 1.0).scattering_length;
    if (!(as > 0.0))
      throw std::invalid_argument(
          "calibration impossible: potential has zero scattering length");
    if (std::abs(as - 1.0) <= 1e-10) return cur;
    PotentialSpec next = cur;
    next.range_R0 = cur.range_R0 / as;
    next.strength_v0 = cur.strength_v0 * as * as;
    if (cur.kind == PotentialKind::TabulatedRadial) {
      for (auto& t : next.table_t) t /= as;
      for (auto& v : next.table_v) v *= as * as;
    }
    cur = next;
  }
  const double as = solve_zero_energy(cur, 1.0).scattering_length;
  if (std::abs(as - 1.0) > 1e-8)
    throw NumericalError("calibration did not converge");
  return cur;
}

JastrowCutoff build_jastrow(const ScatteringSolution& sol, double R) {
  if (R < sol.core_radius())
    throw std::invalid_argument(
        "Jastrow cutoff R must not be smaller than the core radius");
  JastrowCutoff f;
  f.sol = sol;
  f.R = R;
  f.f0_at_R = sol.f0_at(R);
  if (!(f.f0_at_R > 0.0))
    throw std::invalid_argument("f0(R) must be positive for the cutoff");
  return f;
}

double JastrowCutoff::value(double t) const {
  if (t >= R) return 1.0;
  return sol.f0_at(t) / f0_at_R;
}

double JastrowCutoff::deriv(double t) const {
  if (t >= R) return 0.0;
  return sol.f0_prime_at(t) / f0_at_R;
}

KernelPair kernels(const JastrowCutoff& f, int z_samples) {
  const double R = f.R;
  const double a = f.sol.a;
  const double core = f.sol.core_radius();
  KernelPair k;
  k.R = R;

  const bool hard = f.sol.spec.is_hard_core();
  const double as = f.sol.scattering_length;
  const double A = 1.0 / f.f0_at_R;  // = 1/(1 - a_s/R) outside the core

  auto fp2_term = [&](double t) {
    const double d = f.deriv(t);
    return d * d * t;
  };
  auto v_term = [&](double t) {
    const double fv = f.value(t);
    return f.sol.spec.value(t / a) / (2.0 * a * a) * fv * fv * t;
  };

  auto h_of = [&](double z) {
    const double lo = std::abs(z);
    if (lo >= R) return 0.0;
    if (hard) {
      const double l = std::max(lo, core);
      // f' = A a_s / t^2 on (core, R); no interior contribution
      return M_PI * A * A * as * as * (1.0 / (l * l) - 1.0 / (R * R));
    }
    double val = gauss_integrate(fp2_term, lo, std::min(core, R), 48) +
                 gauss_integrate(fp2_term, std::min(core, R), R, 48) +
                 gauss_integrate(v_term, lo, std::min(core, R), 48);
    return 2.0 * M_PI * val;
  };
  auto m_of = [&](double z) {
    const double lo = std::abs(z);
    if (lo >= R) return 0.0;
    if (hard) {
      const double l = std::max(lo, core);
      return 2.0 * M_PI * A * as * std::log(R / l);
    }
    auto fp1 = [&](double t) { return f.deriv(t) * t; };
    return 2.0 * M_PI * (gauss_integrate(fp1, lo, std::min(core, R), 48) +
                         gauss_integrate(fp1, std::min(core, R), R, 48));
  };

  k.z.resize(z_samples);
  k.h.resize(z_samples);
  k.m.resize(z_samples);
  for (int i = 0; i < z_samples; ++i) {
    const double z = R * i / (z_samples - 1);
    k.z[i] = z;
    k.h[i] = h_of(z);
    k.m[i] = m_of(z);
  }
  k.sup_m = k.m[0];

  if (hard) {
    k.integral_h = 4.0 * M_PI * as / (1.0 - as / R);
    k.integral_m = 4.0 * M_PI * as * R;
  } else {
    auto h_rad = [&](double t) {
      const double d = f.deriv(t);
      const double fv = f.value(t);
      return (d * d +
              f.sol.spec.value(t / a) / (2.0 * a * a) * fv * fv) *
             t * t;
    };
    auto m_rad = [&](double t) { return f.deriv(t) * t * t; };
    k.integral_h =
        4.0 * M_PI * (gauss_integrate(h_rad, 0.0, std::min(core, R), 64) +
                      gauss_integrate(h_rad, std::min(core, R), R, 64));
    k.integral_m =
        4.0 * M_PI * (gauss_integrate(m_rad, 0.0, std::min(core, R), 64) +
                      gauss_integrate(m_rad, std::min(core, R), R, 64));
  }
  return k;
}

}  // namespace dimred
