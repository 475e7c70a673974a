#include "dimred/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "dimred/numerics.hpp"

namespace dimred {

double PotentialSpec::value(double t) const {
  if (t > range_R0) return 0.0;
  switch (kind) {
    case PotentialKind::HardCore:
      throw NumericalError("hard-core potential has no finite value inside");
    case PotentialKind::SquareBarrier:
      return strength_v0;
    case PotentialKind::TabulatedRadial:
      return lerp_table(table_t, table_v, t);
  }
  return 0.0;
}

void PotentialSpec::validate() const {
  if (!(range_R0 > 0.0))
    throw std::invalid_argument("potential range_R0 must be positive");
  switch (kind) {
    case PotentialKind::HardCore:
      break;
    case PotentialKind::SquareBarrier:
      if (!(strength_v0 >= 0.0) || !std::isfinite(strength_v0))
        throw std::invalid_argument(
            "square barrier strength_v0 must be finite and nonnegative");
      break;
    case PotentialKind::TabulatedRadial: {
      if (table_t.size() < 2 || table_t.size() != table_v.size())
        throw std::invalid_argument("tabulated potential needs >= 2 samples");
      for (std::size_t i = 1; i < table_t.size(); ++i)
        if (!(table_t[i] > table_t[i - 1]))
          throw std::invalid_argument("tabulated abscissae must increase");
      for (double v : table_v)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw std::invalid_argument("tabulated values must be >= 0");
      if (table_t.back() > range_R0 + 1e-12)
        throw std::invalid_argument("tabulated samples exceed range_R0");
      break;
    }
  }
}

PotentialSpec PotentialSpec::hard_core(double R0) {
  PotentialSpec s;
  s.kind = PotentialKind::HardCore;
  s.range_R0 = R0;
  s.strength_v0 = 0.0;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::square_barrier(double v0, double R0) {
  PotentialSpec s;
  s.kind = PotentialKind::SquareBarrier;
  s.range_R0 = R0;
  s.strength_v0 = v0;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> t,
                                       std::vector<double> v) {
  PotentialSpec s;
  s.kind = PotentialKind::TabulatedRadial;
  s.table_t = std::move(t);
  s.table_v = std::move(v);
  s.range_R0 = s.table_t.empty() ? 0.0 : s.table_t.back();
  s.validate();
  return s;
}

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::HardCore: return "hard_core";
    case PotentialKind::SquareBarrier: return "square_barrier";
    case PotentialKind::TabulatedRadial: return "tabulated_radial";
  }
  return "?";
}

PotentialKind potential_kind_from_string(const std::string& s) {
  if (s == "hard_core") return PotentialKind::HardCore;
  if (s == "square_barrier") return PotentialKind::SquareBarrier;
  if (s == "tabulated_radial") return PotentialKind::TabulatedRadial;
  throw std::invalid_argument("unknown potential kind: " + s);
}

}  // namespace dimred
