#include "dimred/relative_1d.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dimred/numerics.hpp"

namespace dimred {

namespace {

// Integrate u'' = (s^2 - E) u inward from s_max with a decaying start;
// returns (u(0), u'(0)) and optionally the trajectory.
struct ShootResult {
  double u0, up0;
  std::vector<double> s, u;
};

ShootResult shoot(double E, double s_max, int steps, bool keep) {
  const double h = -s_max / steps;  // marching inward
  double s = s_max;
  double u = 1e-150;
  double up = -u * std::sqrt(std::max(s_max * s_max - E, 1.0));
  ShootResult res;
  if (keep) {
    res.s.reserve(steps + 1);
    res.u.reserve(steps + 1);
    res.s.push_back(s);
    res.u.push_back(u);
  }
  auto acc = [&](double ss, double uu) { return (ss * ss - E) * uu; };
  for (int i = 0; i < steps; ++i) {
    const double k1u = up, k1p = acc(s, u);
    const double k2u = up + 0.5 * h * k1p, k2p = acc(s + 0.5 * h, u + 0.5 * h * k1u);
    const double k3u = up + 0.5 * h * k2p, k3p = acc(s + 0.5 * h, u + 0.5 * h * k2u);
    const double k4u = up + h * k3p, k4p = acc(s + h, u + h * k3u);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    up += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    s += h;
    if (keep) {
      res.s.push_back(s);
      res.u.push_back(u);
    }
  }
  res.u0 = u;
  res.up0 = up;
  return res;
}

// Even-sector eigencondition in reduced units: -psi'' + s^2 psi = E psi with
// psi'(0+) = lam psi(0); roots live in (4j+1, 4j+3) for finite positive lam.
double reduced_level(double lam, int j) {
  const double lo = 4.0 * j + 1.0 + 1e-9;
  const double hi = 4.0 * j + 3.0 - 1e-9;
  const double s_max = std::sqrt(hi) + 8.0;
  const int steps = 12000;
  auto G = [&](double E) {
    auto r = shoot(E, s_max, steps, false);
    // normalize against the trajectory scale to avoid over/underflow bias
    const double scale = std::max(std::abs(r.u0), std::abs(r.up0 / lam));
    return (r.up0 - lam * r.u0) / std::max(scale, 1e-300);
  };
  // locate the sign change, then bisect
  const int n_scan = 48;
  double a = lo, b = hi, ga = G(a);
  bool found = false;
  for (int i = 1; i <= n_scan; ++i) {
    const double x = lo + (hi - lo) * i / n_scan;
    const double gx = G(x);
    if (ga * gx <= 0.0) {
      b = x;
      a = lo + (hi - lo) * (i - 1) / n_scan;
      found = true;
      break;
    }
    ga = gx;
  }
  if (!found) throw NumericalError("relative 1D shooting: no bracket found");
  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (a + b);
    if (G(a) * G(mid) <= 0.0)
      b = mid;
    else
      a = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> relative_1d_levels(double ell, double g, int k_max) {
  if (!(ell > 0.0) || !(g >= 0.0))
    throw std::invalid_argument("relative 1D: need ell > 0, g >= 0");
  std::vector<double> out;
  if (g == 0.0) {
    for (int j = 0; j < k_max; ++j) out.push_back((4.0 * j + 1.0) / (ell * ell));
    return out;
  }
  if (std::isinf(g)) {
    for (int j = 0; j < k_max; ++j) out.push_back((4.0 * j + 3.0) / (ell * ell));
    return out;
  }
  const double lam = g * ell / (2.0 * std::sqrt(2.0));
  for (int j = 0; j < k_max; ++j)
    out.push_back(reduced_level(lam, j) / (ell * ell));
  return out;
}

Relative1DLevel relative_1d_level(double ell, double g, int k) {
  Relative1DLevel lvl;
  const double Ered = relative_1d_levels(ell, g, k + 1).back() * ell * ell;
  lvl.energy = Ered / (ell * ell);
  const double s_max = std::sqrt(4.0 * k + 3.0) + 8.0;
  const int steps = 12000;
  auto r = shoot(Ered, s_max, steps, true);
  // trajectory arrives reversed (s_max -> 0)
  const double zscale = std::sqrt(2.0) * ell;
  const std::size_t n = r.s.size();
  lvl.z.resize(n);
  lvl.psi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lvl.z[i] = zscale * r.s[n - 1 - i];
    lvl.psi[i] = r.u[n - 1 - i];
  }
  // normalize on the full line: 2 Int_0^inf psi^2 dz = 1 (trapezoid)
  double nrm = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    nrm += 0.5 * (lvl.psi[i] * lvl.psi[i] + lvl.psi[i + 1] * lvl.psi[i + 1]) *
           (lvl.z[i + 1] - lvl.z[i]);
  nrm *= 2.0;
  const double s = ((lvl.psi[0] < 0) ? -1.0 : 1.0) / std::sqrt(nrm);
  for (auto& v : lvl.psi) v *= s;
  return lvl;
}

double relative_1d_eval(const Relative1DLevel& lvl, double z) {
  const double az = std::abs(z);
  if (az >= lvl.z.back()) return 0.0;
  return lerp_table(lvl.z, lvl.psi, az);
}

}  // namespace dimred
