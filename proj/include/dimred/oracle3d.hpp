#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dimred/potential.hpp"
#include "dimred/reduction.hpp"

namespace dimred {

/// Tensor-product graded mesh for the relative two-body problem in
/// cylindrical coordinates (m = 0 sector, z-even).  Half z-domain.
struct MeshPolicy {
  double core_points_per_a = 24;    // resolution across the interaction
  double trans_points_per_scale = 28;  // across the transverse width sqrt(2) r
  double mid_points_per_r = 16;     // crossover region |z| <~ r
  double far_points_per_scale = 24; // across the longitudinal width sqrt(2) l
  double singular_grade = 12.0;     // h <= x / grade around the pair cusp
  double growth = 1.08;
  double rho_extent_scales = 7.0;
  double z_extent_scales = 7.0;

  MeshPolicy refined() const;  // every density doubled
};

struct Mesh {
  std::vector<double> rho;  // includes axis rho = 0; last node is Dirichlet
  std::vector<double> z;    // includes z = 0 (even sector); last is Dirichlet
  int n_rho_free() const { return static_cast<int>(rho.size()) - 1; }
  int n_z_free() const { return static_cast<int>(z.size()) - 1; }
  int dof() const { return n_rho_free() * n_z_free(); }
  int index(int i, int j) const { return i * n_z_free() + j; }
};

Mesh build_relative_mesh(const GeometryParams& geom, double core_radius,
                         const MeshPolicy& policy);
Mesh build_relative_mesh(const GeometryParams& geom, double core_radius,
                         double barrier_strength, const MeshPolicy& policy);

struct TwoBodyConfig {
  GeometryParams geom;       // n must be 2
  PotentialSpec spec;        // calibrated, finite strength
  TransverseKind transverse_kind = TransverseKind::Harmonic;
  bool longitudinal_harmonic = true;
  MeshPolicy mesh;
  int k_max = 4;             // combined 3D levels requested
  int n_rel_levels = 6;      // relative eigenpairs to compute
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  bool richardson = true;    // solve coarse+fine and extrapolate

  void validate() const;
};

/// Analytic center-of-mass data for equal harmonic traps.
struct ComSeparation {
  double e_perp_over_r2 = 0.0;   // transverse COM ground energy
  double omega_z = 0.0;          // COM longitudinal frequency 2/ell^2
  std::vector<double> z_levels;  // (2N+1)/ell^2
};

ComSeparation com_separation(const GeometryParams& geom, int n_z_levels);

/// Eigenpairs of the relative operator measured from the exact transverse
/// ground energy: lambda = E_rel - e_perp/r^2.  The solve works in the
/// ground-mode-weighted representation, so no large energies are subtracted
/// numerically.
struct RelativeSolve {
  std::vector<double> lambda;            // extrapolated when richardson
  std::vector<double> lambda_fine;       // fine-mesh values
  std::vector<double> grid_defect;       // |fine - coarse| / 3 per level
  std::vector<double> solver_residual;   // shift-inverted residual per level
  std::vector<Eigen::VectorXd> vectors;  // fine-mesh, M-orthonormal
  Mesh mesh;                             // fine mesh
  std::vector<double> mass;              // diagonal M on the fine mesh
};

RelativeSolve solve_relative(const TwoBodyConfig& config);

/// Combined spectrum, excess energies and product-state overlaps.
struct Spectrum3D {
  std::vector<double> total;      // E_3d^k ascending
  std::vector<double> excess;     // E_3d^k - 2 e_perp / r^2
  std::vector<int> com_index;     // COM longitudinal quantum number N
  std::vector<int> rel_index;     // relative eigenpair index
  std::vector<double> overlap_group;  // per level: overlap^2 summed over the
                                      // matching 1D degeneracy group
  std::vector<double> e1d;        // 1D reference spectrum (same count)
  std::vector<int> e1d_groups;    // degeneracy group starts of e1d
  double grid_defect = 0.0;       // max over used relative levels
  bool window_ok = true;          // top of window below the transverse gap
  double g = 0.0;                 // effective coupling used for the 1D side
};

Spectrum3D assemble_spectrum(const TwoBodyConfig& config,
                             const RelativeSolve& rel,
                             const TransverseMode& mode);

/// One-call oracle: relative solve + assembly.
Spectrum3D verify_two_body(const TwoBodyConfig& config,
                           const TransverseMode& mode);

struct ScalingCheckResult {
  std::vector<double> excess_base;    // at (n, r, ell, a)
  std::vector<double> excess_scaled;  // at (n, r/ell, 1, a/ell), times 1/ell^2
  std::vector<double> rel_diff;
  std::vector<double> defect;         // combined grid defects (relative)
};

/// Verifies E_3d^k(n, r, ell, a) = E_3d^k(n, r/ell, 1, a/ell) / ell^2 on the
/// excess energies for k = 1..k_max.
ScalingCheckResult scaling_check(const TwoBodyConfig& config,
                                 const TransverseMode& mode);

}  // namespace dimred
