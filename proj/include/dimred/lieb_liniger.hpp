#pragma once

#include <limits>
#include <vector>

namespace dimred {

inline constexpr double kInfiniteCoupling =
    std::numeric_limits<double>::infinity();

/// One Bethe-ansatz eigenstate of n delta-interacting bosons on a ring of
/// length ell.  Quantum numbers are stored doubled so integer and
/// half-integer branches share one representation (odd/even n).
struct BetheState {
  int n = 0;
  double ell = 1.0;
  double g = 0.0;
  std::vector<int> quantum_numbers_2x;
  std::vector<double> rapidities;
  double energy = 0.0;
  double momentum = 0.0;
  double newton_residual = 0.0;
};

/// Solve the Bethe system  k_j ell = 2 pi I_j - 2 sum_l atan((k_j-k_l)/c)
/// with c = g/2.  g = 0 returns the decoupled momenta 2 pi I_j / ell;
/// g = inf returns the impenetrable (free-fermion) values.
BetheState bethe_solve(int n, double ell, double g,
                       const std::vector<int>& quantum_numbers_2x);

/// Ground-state quantum numbers (doubled): consecutive around zero.
std::vector<int> bethe_ground_numbers(int n);

enum class TrapKind { Periodic, Harmonic };

struct LLSpectrum {
  int n = 0;
  double ell = 1.0;
  double g = 0.0;
  TrapKind trap = TrapKind::Periodic;
  std::vector<double> energies;          // ascending
  std::vector<double> momenta;           // periodic case
  std::vector<BetheState> states;        // periodic case, same order
  std::vector<double> delta_expectation; // trapped case: <sum delta> per level
  std::vector<double> energies_raw;      // trapped case: largest-basis values
  int basis_size = 0;                    // trapped case: quanta cutoff
  bool window_ok = true;   // enumeration/basis wide enough for k_max
  double conv_defect = 0.0;  // trapped: level shift under basis doubling
};

LLSpectrum ll_spectrum_periodic(int n, double ell, double g, int k_max);

/// Lieb's two excitation branches over the ground state, tabulated against
/// total momentum p = 2 pi q / ell, q = 0..n.
struct Branches {
  std::vector<double> p;
  std::vector<double> eps_type_i;   // particle branch
  std::vector<double> eps_type_ii;  // hole branch
};

Branches excitation_branches(int n, double ell, double g);

/// Energies of n free fermions on the ring (impenetrable-boson limit),
/// lowest k_max values.
std::vector<double> tg_levels(int n, double ell, int k_max);

/// Trapped spectrum (V_par(z) = z^2) by exact diagonalization in the
/// symmetrized oscillator basis, extrapolated in the quanta cutoff.
/// g = inf uses the fermionized level set directly.
LLSpectrum ll_spectrum_trapped(int n, double ell, double g, int basis_size,
                               int k_max);

/// Group starts k_1 = 1 < k_2 < ... separating distinct energy values;
/// equality is relative: |E - E_group| <= tol * max(1, |E_group|).
std::vector<int> degeneracy_index(const std::vector<double>& energies,
                                  double tol = 1e-8);

// ---- independent plane-wave route (verification oracle) -------------------

/// Lowest k_max levels of the periodic gas in the momentum block
/// P = 2 pi total_q / ell, by dense diagonalization over single-particle
/// momenta |m| <= cutoff.
std::vector<double> ed_periodic_levels(int n, double ell, double g,
                                       int total_q, int cutoff, int k_max);

/// Cutoff-extrapolated level (fit E = E_inf + b/L + c/L^2 through three
/// cutoffs).
double ed_periodic_extrapolated(int n, double ell, double g, int total_q,
                                int k_index, const std::vector<int>& cutoffs);

}  // namespace dimred
