#include "dimred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dimred/numerics.hpp"

namespace dimred {

void GeometryParams::validate() const {
  if (n < 1) throw std::invalid_argument("geometry: n must be >= 1");
  if (!(r > 0.0) || !(ell > 0.0))
    throw std::invalid_argument("geometry: r and ell must be positive");
  if (!(a >= 0.0)) throw std::invalid_argument("geometry: a must be >= 0");
}

double effective_g(const GeometryParams& geom, const TransverseMode& mode) {
  geom.validate();
  return 8.0 * M_PI * geom.a * mode.norm4_4 / (geom.r * geom.r);
}

double eta_lower(const GeometryParams& geom, double D) {
  if (!(D > 0.0)) throw std::invalid_argument("eta_lower: D must be > 0");
  const double x = geom.na_over_r();
  return D * (std::pow(x, 1.0 / 8.0) +
              double(geom.n) * geom.n * std::pow(x, 3.0 / 8.0));
}

double eta_upper(const GeometryParams& geom, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("eta_upper: C must be > 0");
  return C * std::pow(geom.na_over_r(), 2.0 / 3.0);
}

BoundEnvelope theorem1_envelope(const std::vector<double>& E1d,
                                const GeometryParams& geom,
                                const TransverseMode& mode, double C,
                                double D) {
  BoundEnvelope env;
  env.C = C;
  env.D = D;
  env.g = effective_g(geom, mode);
  env.eta_L = eta_lower(geom, D);
  env.eta_U = eta_upper(geom, C);
  const double gap_over_r2 = mode.gap / (geom.r * geom.r);
  for (double e : E1d) {
    env.e1d.push_back(e);
    const bool vl = e <= gap_over_r2;
    const bool vu = env.eta_U < 1.0;
    env.valid_lower.push_back(vl);
    env.valid_upper.push_back(vu);
    env.lower.push_back(e * (1.0 - env.eta_L) * (1.0 - e / gap_over_r2));
    env.upper.push_back(vu ? e / (1.0 - env.eta_U)
                           : std::numeric_limits<double>::infinity());
  }
  return env;
}

UpperChain upper_chain_explicit(const GeometryParams& geom,
                                const TransverseMode& mode, double g,
                                double R_core_dimensionless,
                                double R_override) {
  geom.validate();
  const double n = geom.n;
  const double r = geom.r, a = geom.a;
  UpperChain ch;
  ch.R = (R_override > 0.0)
             ? R_override
             : std::cbrt(a * r * r / (n * n));  // R^3 = a r^2 / n^2
  const double core = a * R_core_dimensionless;
  if (!(ch.R > core)) {
    ch.vacuous = true;
    ch.vacuous_reason = "cutoff R below the interaction core";
    return ch;
  }
  const double aR = a / ch.R;
  if (!(aR < 1.0)) {
    ch.vacuous = true;
    ch.vacuous_reason = "a/R >= 1";
    return ch;
  }
  const double pair_count = 0.5 * n * (n - 1.0);
  const double area = M_PI * ch.R * ch.R / (r * r);
  ch.K = (2.0 * M_PI / 3.0) * (n - 2.0) * aR * (1.0 + std::log(ch.R / a)) /
         (1.0 - aR) * (ch.R / r) * (ch.R / r) * mode.sup_b * mode.sup_b;
  const double smear = (1.0 + ch.K) / (1.0 - aR) *
                       (std::sqrt(2.0 * ch.R * g * (n - 1.0)) +
                        (n - 1.0) * ch.R * g);
  ch.energy_factor = 1.0 + pair_count * area * mode.norm4_4 +
                     (aR + ch.K) / (1.0 - aR) + smear;
  ch.norm_lower = 1.0 - pair_count * area * mode.norm4_4;
  if (!(ch.norm_lower > 0.0)) {
    ch.vacuous = true;
    ch.vacuous_reason = "trial-state norm bound nonpositive";
    return ch;
  }
  ch.factor = ch.energy_factor / ch.norm_lower;
  const double x = geom.na_over_r();
  ch.induced_C = (x > 0.0) ? (ch.factor - 1.0) / std::pow(x, 2.0 / 3.0) : 0.0;
  return ch;
}

LowerChainParams LowerChainParams::defaults(const GeometryParams& geom) {
  const double x = geom.na_over_r();
  LowerChainParams p;
  p.R = geom.n * std::pow(x, 0.25) * geom.r;
  p.delta = std::pow(x, 1.0 / 8.0);
  p.eps = p.delta;
  p.eta = p.delta;
  p.kappa = std::pow(x, 5.0 / 12.0) / geom.n;
  p.gamma = 0.0;
  return p;
}

void LowerChainParams::validate() const {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("lower chain: need 0 <= eps <= 1");
  if (!((1.0 - eps) * (1.0 + eta) <= 1.0 + 1e-12))
    throw std::invalid_argument("lower chain: need (1-eps)(1+eta) <= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("lower chain: kappa > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("lower chain: delta > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("lower chain: need 0 <= gamma <= 1");
  if (!(R > 0.0)) throw std::invalid_argument("lower chain: R > 0");
}

LowerChain lower_chain_explicit(const GeometryParams& geom,
                                const TransverseMode& mode,
                                const LowerChainParams& params,
                                const PotentialSpec& spec) {
  geom.validate();
  params.validate();
  LowerChain ch;
  ch.params = params;
  const double n = geom.n, r = geom.r, a = geom.a;
  const double R = params.R;
  const double core = a * spec.range_R0;
  if (!(R > core))
    throw std::invalid_argument("lower chain: R must exceed the core radius");

  ch.g = 8.0 * M_PI * a * mode.norm4_4 / (r * r);
  ch.U_norm = 3.0 / (R * R * R - core * core * core);
  ch.d_integral_lower =
      4.0 * M_PI / (r * r) *
      (mode.norm4_4 - params.delta - R * mode.sup_grad_b2 / r);

  const double grad_term = R * mode.sup_grad_b2 / r;
  ch.P_eps = 1.0 - params.eps;
  ch.P_grad = 1.0 - 2.0 * grad_term / params.delta;
  ch.P_exclude =
      1.0 - (n - 2.0) * M_PI * R * R / (r * r) * mode.sup_b * mode.sup_b;
  const double core_frac = std::pow(core / R, 3);
  const double inner = 1.0 - (n * n / (params.eps * mode.gap)) * (a / R) *
                                 3.0 * M_PI * mode.norm4_4 /
                                 (1.0 - core_frac);
  if (inner > 0.0) {
    ch.P_gap = 1.0 - (3.0 * n / (params.eps * mode.gap)) *
                         (a * r * r / (R * R * R)) / (1.0 - core_frac) /
                         inner;
  } else {
    ch.P_gap = -1.0;  // bracket lost positivity: vacuous
  }
  ch.P_level = 1.0 - params.delta / mode.norm4_4 - grad_term / mode.norm4_4;

  ch.g_prime =
      ch.g * ch.P_eps * ch.P_grad * ch.P_exclude * ch.P_gap * ch.P_level;
  ch.P_smear = (ch.g_prime > 0.0)
                   ? 1.0 - std::sqrt(2.0 * ch.g_prime * R / params.kappa)
                   : -1.0;
  ch.g_dprime = (ch.g_prime > 0.0) ? ch.g_prime * ch.P_smear : ch.g_prime;

  ch.kinetic_factor = 1.0 -
                      (1.0 - params.eps) * (1.0 + 1.0 / params.eta) * 0.5 * n *
                          (n - 1.0) * M_PI * R * R / (r * r) * mode.norm4_4 -
                      (n - 1.0) * params.kappa;
  ch.effective_lower_factor =
      std::min(ch.kinetic_factor, (ch.g > 0.0) ? ch.g_dprime / ch.g : 1.0);

  const struct {
    const char* name;
    double value;
  } factors[] = {{"P_eps", ch.P_eps},         {"P_grad", ch.P_grad},
                 {"P_exclude", ch.P_exclude}, {"P_gap", ch.P_gap},
                 {"P_level", ch.P_level},     {"P_smear", ch.P_smear},
                 {"kinetic_factor", ch.kinetic_factor}};
  for (const auto& f : factors) {
    if (!(f.value > 0.0)) {
      ch.vacuous = true;
      ch.first_nonpositive = f.name;
      break;
    }
  }
  return ch;
}

double d_integral_quadrature(const GeometryParams& geom,
                             const TransverseMode& mode, double R,
                             double delta, double core_radius) {
  // Int d(z) dz = Int b^2(x) b^2(y) u1(r|x-y|) chi_{b^2(y)>=delta} dx dy in
  // units of the unscaled mode, with u1 the line integral of the shell U.
  const double r = geom.r;
  const double U0 = 3.0 / (std::pow(R, 3) - std::pow(core_radius, 3));
  auto u1 = [&](double s) {
    const double outer = (s < R) ? 2.0 * std::sqrt(R * R - s * s) : 0.0;
    const double inner = (s < core_radius)
                             ? 2.0 * std::sqrt(core_radius * core_radius - s * s)
                             : 0.0;
    return U0 * (outer - inner);
  };
  const int nrad = 160, nang = 96;
  const double rho_max = mode.rho.back();
  double total = 0.0;
  for (int i = 0; i < nrad; ++i) {
    const double x = rho_max * (i + 0.5) / nrad;
    const double bx2 = std::pow(mode.b_at(x), 2);
    if (bx2 <= 0.0) continue;
    for (int j = 0; j < nrad; ++j) {
      const double y = rho_max * (j + 0.5) / nrad;
      const double by2 = std::pow(mode.b_at(y), 2);
      if (by2 < delta) continue;
      double ang = 0.0;
      for (int t = 0; t < nang; ++t) {
        const double th = M_PI * (t + 0.5) / nang;
        const double dist = std::sqrt(std::max(
            x * x + y * y - 2.0 * x * y * std::cos(th), 0.0));
        ang += u1(r * dist);
      }
      ang *= 2.0 * M_PI / nang;  // even in the angle
      total += bx2 * by2 * ang * x * y;
    }
  }
  total *= std::pow(rho_max / nrad, 2) * 2.0 * M_PI;
  return total;
}

double lemma2_overlap(const std::vector<double>& energies, double eta, int l) {
  const int k = static_cast<int>(energies.size()) - 1;
  if (k < 1) throw std::invalid_argument("lemma2: need E_1..E_{k+1}");
  if (!(eta >= 1.0)) throw std::invalid_argument("lemma2: need eta >= 1");
  if (l < 0 || l >= k) throw std::invalid_argument("lemma2: need 0 <= l < k");
  for (int i = 1; i <= k; ++i)
    if (energies[i] < energies[i - 1] - 1e-12)
      throw std::invalid_argument("lemma2: energies must be ascending");
  const double top_gap = energies[k] - energies[k - 1];
  if (!(top_gap > 0.0))
    throw std::invalid_argument("lemma2: degenerate top gap");
  double sum_k = 0.0;
  for (int i = 0; i < k; ++i) sum_k += energies[i];
  double bound = double(k - l) - (eta - 1.0) * sum_k / top_gap;
  if (l >= 1) {
    const double low_gap = energies[l] - energies[l - 1];
    if (!(low_gap > 0.0))
      throw std::invalid_argument("lemma2: degenerate lower gap");
    double sum_l = 0.0;
    for (int i = 0; i < l; ++i) sum_l += energies[i];
    bound -= (eta - 1.0) * sum_l / low_gap;
  }
  return bound;
}

OverlapBound theorem2_bound(const std::vector<double>& E1d,
                            const std::vector<int>& group_starts, int group_i,
                            const GeometryParams& geom,
                            const TransverseMode& mode, double C, double D) {
  OverlapBound ob;
  if (group_i < 0 || group_i >= static_cast<int>(group_starts.size()))
    throw std::invalid_argument("theorem2: bad group index");
  ob.k_lo = group_starts[group_i];
  ob.k_hi = (group_i + 1 < static_cast<int>(group_starts.size()))
                ? group_starts[group_i + 1]
                : static_cast<int>(E1d.size()) + 1;
  if (ob.k_hi > static_cast<int>(E1d.size())) {
    ob.valid = false;
    ob.invalid_reason = "group extends past the computed spectrum";
    return ob;
  }
  const double e_group = E1d[ob.k_lo - 1];
  const double eta_L = eta_lower(geom, D);
  const double eta_U = eta_upper(geom, C);
  const double gap_over_r2 = mode.gap / (geom.r * geom.r);
  const double gamma = e_group / gap_over_r2;
  if (!(eta_U < 1.0) || !(eta_L < 1.0) || !(gamma < 1.0)) {
    ob.valid = false;
    ob.invalid_reason = !(eta_U < 1.0)
                            ? "eta_U >= 1"
                            : (!(eta_L < 1.0) ? "eta_L >= 1" : "gamma >= 1");
    return ob;
  }
  const double upper_gap = E1d[ob.k_hi - 1] - E1d[ob.k_lo - 1];
  if (!(upper_gap > 0.0)) {
    ob.valid = false;
    ob.invalid_reason = "zero gap above the group";
    return ob;
  }
  double bracket = 0.0;
  {
    double s = 0.0;
    for (int i = 1; i <= ob.k_hi - 1; ++i) s += E1d[i - 1];
    bracket += s / upper_gap;
  }
  if (ob.k_lo > 1) {
    const double lower_gap = E1d[ob.k_lo - 1] - E1d[ob.k_lo - 2];
    if (!(lower_gap > 0.0)) {
      ob.valid = false;
      ob.invalid_reason = "zero gap below the group";
      return ob;
    }
    double s = 0.0;
    for (int i = 1; i <= ob.k_lo - 1; ++i) s += E1d[i - 1];
    bracket += s / lower_gap;
  }
  const double prefactor =
      1.0 / ((1.0 - gamma) * (1.0 - eta_U) * (1.0 - eta_L)) - 1.0;
  ob.value = 1.0 - prefactor * bracket;
  ob.valid = true;
  return ob;
}

}  // namespace dimred
