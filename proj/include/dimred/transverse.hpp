#pragma once

#include <vector>

namespace dimred {

enum class TransverseKind { Harmonic, TabulatedRadial };

/// Radial confining potential on the plane; harmonic means V(rho) = rho^2.
struct TransversePotential {
  TransverseKind kind = TransverseKind::Harmonic;
  std::vector<double> rho;  // tabulated samples
  std::vector<double> V;

  double value(double r) const;
  void validate() const;
};

struct RadialGridPolicy {
  int n_nodes = 1600;      // coarse grid; a refined grid drives extrapolation
  double rho_max = 8.0;
  double grading = 1.25;   // rho(s) = rho_max * s^grading
};

/// Ground mode of -Laplacian + V on R^2 with the norms entering the
/// effective coupling and the bound chains.
struct TransverseMode {
  double e_perp = 0.0;        // ground energy (extrapolated)
  double gap = 0.0;           // spectral gap over m in {0,1,2}
  std::vector<double> rho;    // fine radial grid
  std::vector<double> b;      // positive, unit L2 norm on the plane
  double norm4_4 = 0.0;       // ||b||_4^4
  double sup_b = 0.0;         // ||b||_inf
  double sup_grad_b2 = 0.0;   // ||grad b^2||_inf
  double rayleigh_defect = 0.0;  // |<b|H|b> - e| / e on the fine grid
  double grid_defect = 0.0;      // coarse/fine eigenvalue shift
  int gap_sector = 0;            // angular sector realizing the gap

  double b_at(double r) const;
};

TransverseMode solve_transverse(const TransversePotential& pot,
                                const RadialGridPolicy& policy = {});

/// Quantities of the trap scaled to transverse size r:
/// energies divide by r^2 and b_r(x) = b(x/r)/r keeps unit norm.
struct ScaledMode {
  double r = 1.0;
  double e_perp_over_r2 = 0.0;
  double gap_over_r2 = 0.0;
  double norm4_4_r = 0.0;  // ||b_r||_4^4 = ||b||_4^4 / r^2
  const TransverseMode* mode = nullptr;

  double b_r(double rho) const;
};

ScaledMode scaled_mode(const TransverseMode& mode, double r);

}  // namespace dimred
