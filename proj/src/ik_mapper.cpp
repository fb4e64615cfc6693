#include "striderig/ik_mapper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "striderig/errors.hpp"

namespace striderig {

MapperConstants MapperConstants::from_config(const EngineConfig& cfg) {
  return {cfg.z_max, cfg.y_max, cfg.l_leg, cfg.vertical_scale};
}

double clamp_height(double h, const MapperConstants& k) {
  return std::clamp(h, 0.0, k.y_max);
}

// Phase angle of the stride curves: h sweeps [0, y_max], the angle sweeps
// [0, pi/2] over a quarter of the full cosine period 4*y_max.
static double stride_angle(double h, const MapperConstants& k) {
  return 2.0 * std::numbers::pi * h / k.period();
}

DepthPair first_step_depths(double h, bool ascending, const MapperConstants& k) {
  const double u = 0.25 * k.z_max * std::cos(stride_angle(h, k));
  const double q = 0.25 * k.z_max;
  DepthPair d;
  // Swing rises 0 -> z_max/4 at the crest, lands at z_max/2; the support
  // foot mirrors it backward exactly (same u, same q, opposite signs), so
  // d.other == -d.swing bit for bit.
  if (ascending) {
    d.swing = -u + q;
    d.other = u - q;
  } else {
    d.swing = u + q;
    d.other = -u - q;
  }
  return d;
}

DepthPair consecutive_depths(double h, bool ascending, const MapperConstants& k) {
  const double ang = stride_angle(h, k);
  const double c = 0.5 * k.z_max * std::cos(ang);
  DepthPair d;
  if (ascending) {
    d.swing = -c;
    d.other = +c;
  } else {
    // The double-frequency sine pushes the landing foot backward through
    // touchdown instead of letting it dead-stop at the front.
    d.swing = +c + 0.25 * k.z_max * std::sin(2.0 * ang);
    d.other = -c;
  }
  return d;
}

double pelvis_drop(double z, const MapperConstants& k) {
  const double under = k.l_leg * k.l_leg - z * z;
  if (!(under > 0.0))
    throw LegOverextension("stride depth " + std::to_string(z) +
                           " m exceeds leg reach " + std::to_string(k.l_leg) + " m");
  return k.l_leg - std::sqrt(under);
}

VerticalPair vertical_targets(double h, double dh, const MapperConstants& k) {
  VerticalPair v;
  v.swing = k.vertical_scale * h + dh;
  v.support = dh;
  return v;
}

double smooth_toward(double current, double desired, double alpha) {
  return current + alpha * (desired - current);
}

void TargetChannels::advance(const Values& desired, double alpha) {
  cur_.z_left = smooth_toward(cur_.z_left, desired.z_left, alpha);
  cur_.z_right = smooth_toward(cur_.z_right, desired.z_right, alpha);
  cur_.y_left = smooth_toward(cur_.y_left, desired.y_left, alpha);
  cur_.y_right = smooth_toward(cur_.y_right, desired.y_right, alpha);
  cur_.dh = smooth_toward(cur_.dh, desired.dh, alpha);
}

bool TargetChannels::retract(double alpha, double eps) {
  advance(Values{}, alpha);  // everything lerps toward rest
  const double peak = std::max({std::abs(cur_.z_left), std::abs(cur_.z_right),
                                std::abs(cur_.y_left), std::abs(cur_.y_right),
                                std::abs(cur_.dh)});
  if (peak < eps) {
    cur_ = Values{};  // snap exactly to neutral
    return true;
  }
  return false;
}

}  // namespace striderig
