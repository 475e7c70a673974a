#pragma once

#include <string>
#include <vector>

namespace dimred {

enum class PotentialKind { HardCore, SquareBarrier, TabulatedRadial };

/// Repulsive pair potential of finite range, in its own dimensionless units:
/// v(t) >= 0 everywhere and v(t) = 0 for t > range_R0.  The physical pair
/// interaction is a^-2 v(|x|/a) for a scattering-length scale a.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::SquareBarrier;
  double range_R0 = 1.0;
  double strength_v0 = 0.0;  // ignored for hard core (infinite wall)
  std::vector<double> table_t;  // tabulated_radial samples on [0, range_R0]
  std::vector<double> table_v;

  /// v(t); returns 0 beyond range_R0.  Hard core handled by callers
  /// (value() would be infinite inside).
  double value(double t) const;

  bool is_hard_core() const { return kind == PotentialKind::HardCore; }

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;

  static PotentialSpec hard_core(double R0);
  static PotentialSpec square_barrier(double v0, double R0);
  static PotentialSpec tabulated(std::vector<double> t, std::vector<double> v);
};

std::string to_string(PotentialKind k);
PotentialKind potential_kind_from_string(const std::string& s);

}  // namespace dimred
