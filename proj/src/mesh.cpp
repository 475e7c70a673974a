#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dimred/oracle3d.hpp"

namespace dimred {

MeshPolicy MeshPolicy::refined() const {
  MeshPolicy p = *this;
  p.core_points_per_a *= 2;
  p.trans_points_per_scale *= 2;
  p.mid_points_per_r *= 2;
  p.far_points_per_scale *= 2;
  p.singular_grade *= 2;
  return p;
}

namespace {

// Spacing is a pure function of position, continuous, and every piece halves
// when the policy densities double, so refined-policy meshes coincide with
// midpoint refinements up to rounding.
std::vector<double> march_axis(double extent,
                               const std::function<double(double)>& h_of) {
  std::vector<double> nodes{0.0};
  double x = 0.0;
  while (x < extent) {
    const double h = h_of(x);
    x += h;
    if (x >= extent * (1.0 - 1e-12)) {
      nodes.push_back(extent);
      break;
    }
    nodes.push_back(x);
  }
  return nodes;
}

}  // namespace

Mesh build_relative_mesh(const GeometryParams& geom, double core_radius,
                         const MeshPolicy& policy) {
  return build_relative_mesh(geom, core_radius, 0.0, policy);
}

Mesh build_relative_mesh(const GeometryParams& geom, double core_radius,
                         double barrier_strength, const MeshPolicy& policy) {
  const double r = geom.r, ell = geom.ell, a = geom.a;
  const double s_rho = std::sqrt(2.0) * r;   // transverse oscillator width
  const double s_z = std::sqrt(2.0) * ell;   // longitudinal width
  const double fine_zone = 2.5 * core_radius;
  const bool with_core = a > 0.0 && core_radius > 0.0;
  // the barrier skin decays on a / sqrt(v0/2); keep several points across it
  const double skin_points =
      (barrier_strength > 0.0)
          ? 5.0 * std::sqrt(barrier_strength / 2.0) *
                (policy.core_points_per_a / 24.0)
          : 0.0;
  const double h_core =
      with_core ? a / std::max(policy.core_points_per_a, skin_points) : 1e300;

  const double h_trans = s_rho / policy.trans_points_per_scale;
  const double h_mid = r / policy.mid_points_per_r;
  const double h_far = s_z / policy.far_points_per_scale;
  const double grade = policy.singular_grade;

  // pair structure varies on the scale of the distance itself beyond the
  // core; ramp the spacing linearly from there (continuous at the zone edge)
  auto core_ramp = [&](double x) {
    if (!with_core) return 1e300;
    return (x <= fine_zone) ? h_core : h_core + (x - fine_zone) / grade;
  };
  auto mid_ramp = [&](double x) {
    return (x <= 4.0 * r) ? h_mid : h_mid + (x - 4.0 * r) / grade;
  };

  Mesh mesh;
  mesh.rho = march_axis(policy.rho_extent_scales * s_rho, [&](double x) {
    return std::min(h_trans, core_ramp(x));
  });
  mesh.z = march_axis(policy.z_extent_scales * s_z, [&](double x) {
    return std::min({h_far, mid_ramp(x), core_ramp(x)});
  });
  return mesh;
}

}  // namespace dimred
