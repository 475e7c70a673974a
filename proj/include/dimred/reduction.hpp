#pragma once

#include <string>
#include <vector>

#include "dimred/potential.hpp"
#include "dimred/transverse.hpp"

namespace dimred {

struct GeometryParams {
  int n = 2;
  double r = 0.1;    // transverse trap size
  double ell = 1.0;  // longitudinal trap size
  double a = 0.0;    // scattering length

  double a_over_r() const { return a / r; }
  double r_over_ell() const { return r / ell; }
  double na_over_r() const { return n * a / r; }
  void validate() const;
};

/// Effective 1D coupling g = 8 pi a ||b||_4^4 / r^2.
double effective_g(const GeometryParams& geom, const TransverseMode& mode);

/// eta_L = D [ (na/r)^(1/8) + n^2 (na/r)^(3/8) ].
double eta_lower(const GeometryParams& geom, double D);

/// eta_U = C (na/r)^(2/3).
double eta_upper(const GeometryParams& geom, double C);

/// Per-level sandwich around the excess energy E_3d - n e_perp / r^2:
///   lower = E_1d (1 - eta_L)(1 - r^2 E_1d / gap)   [needs E_1d <= gap/r^2]
///   upper = E_1d / (1 - eta_U)                     [needs eta_U < 1]
struct BoundEnvelope {
  double g = 0.0;
  double eta_L = 0.0, eta_U = 0.0;
  double C = 1.0, D = 1.0;
  std::vector<double> e1d;
  std::vector<double> lower, upper;
  std::vector<bool> valid_lower, valid_upper;
};

BoundEnvelope theorem1_envelope(const std::vector<double>& E1d,
                                const GeometryParams& geom,
                                const TransverseMode& mode, double C,
                                double D);

/// Fully explicit variational upper-bound factor: the trial-state energy
/// estimate divided by its norm lower bound.  Default cutoff R^3 = a r^2/n^2.
struct UpperChain {
  double R = 0.0;
  double K = 0.0;
  double energy_factor = 0.0;   // multiplies E_1d before norm correction
  double norm_lower = 0.0;      // 1 - n(n-1)/2 * pi R^2 ||b||_4^4 / r^2
  double factor = 0.0;          // energy_factor / norm_lower
  double induced_C = 0.0;       // (factor - 1) / (na/r)^(2/3)
  bool vacuous = false;
  std::string vacuous_reason;
};

UpperChain upper_chain_explicit(const GeometryParams& geom,
                                const TransverseMode& mode, double g,
                                double R_core_dimensionless,
                                double R_override = 0.0);

/// Free parameters of the explicit lower-bound chain; defaults follow the
/// schedule R/r = n (na/r)^(1/4), delta = eps = eta = (na/r)^(1/8),
/// kappa = (na/r)^(5/12) / n.
struct LowerChainParams {
  double R = 0.0;      // absolute length
  double delta = 0.0;  // level-set threshold on b^2
  double eps = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;  // spectral split weight; 0 = choose per level

  static LowerChainParams defaults(const GeometryParams& geom);
  void validate() const;
};

/// Explicit chain for the operator lower bound.  Factor breakdown:
///   P_eps      = 1 - eps
///   P_grad     = 1 - 2 R ||grad b^2||_inf / (r delta)
///   P_exclude  = 1 - (n-2) pi R^2 ||b||_inf^2 / r^2
///   P_gap      = soft-potential energy retention (transverse-gap term)
///   P_level    = 1 - delta/||b||_4^4 - R ||grad b^2||_inf / (r ||b||_4^4)
///   P_smear    = 1 - sqrt(2 g' R / kappa)
/// g'  = g * P_eps P_grad P_exclude P_gap P_level,  g'' = g' * P_smear,
/// kinetic_factor = 1 - (1-eps)(1+1/eta) n(n-1)/2 pi R^2 ||b||_4^4 / r^2
///                  - (n-1) kappa.
struct LowerChain {
  LowerChainParams params;
  double g = 0.0;
  double P_eps = 0.0, P_grad = 0.0, P_exclude = 0.0, P_gap = 0.0,
         P_level = 0.0, P_smear = 0.0;
  double g_prime = 0.0;
  double g_dprime = 0.0;
  double kinetic_factor = 0.0;
  double effective_lower_factor = 0.0;  // min(kinetic_factor, g''/g)
  double d_integral_lower = 0.0;        // 4 pi (||b||_4^4 - delta - ...)/r^2
  double U_norm = 0.0;                  // 3 / (R^3 - (a R0)^3)
  bool vacuous = false;
  std::string first_nonpositive;
};

LowerChain lower_chain_explicit(const GeometryParams& geom,
                                const TransverseMode& mode,
                                const LowerChainParams& params,
                                const PotentialSpec& spec);

/// Quadrature of the smeared pair kernel integral Int d(z) dz, for checking
/// the analytic lower bound used by the chain (single-pair normalization).
double d_integral_quadrature(const GeometryParams& geom,
                             const TransverseMode& mode, double R,
                             double delta, double core_radius);

/// Lemma bound on the projected overlap sum for k trial states with energy
/// overshoot eta > 1:  k - l - (eta-1) [sum_{i<=k} E_i / (E_{k+1}-E_k)
///                                     + sum_{i<=l} E_i / (E_{l+1}-E_l)].
/// energies must contain E_1..E_{k+1}; l = 0 recovers the plain bound.
double lemma2_overlap(const std::vector<double>& energies, double eta,
                      int l = 0);

struct OverlapBound {
  int k_lo = 0;       // first level of the group (1-based)
  int k_hi = 0;       // first level past the group (1-based)
  double value = 0.0; // lower bound on the projected overlap sum
  bool valid = false;
  std::string invalid_reason;
};

/// Theorem-2 style overlap bound for degeneracy group `group_i` (0-based
/// index into the group starts) of the 1D spectrum.
OverlapBound theorem2_bound(const std::vector<double>& E1d,
                            const std::vector<int>& group_starts, int group_i,
                            const GeometryParams& geom,
                            const TransverseMode& mode, double C, double D);

}  // namespace dimred
