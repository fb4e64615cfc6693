// Maps the swing foot's vertical height onto forward/backward stride-depth
// targets, the pelvis drop, and vertical foot targets, then smooths every
// output channel with a per-tick lerp.
#pragma once

#include "striderig/config.hpp"
#include "striderig/frame.hpp"
#include "striderig/gait_fsm.hpp"

namespace striderig {

struct MapperConstants {
  double z_max = 0.6;
  double y_max = 0.3;
  double l_leg = 0.8;
  double vertical_scale = 0.5;

  double period() const { return 4.0 * y_max; }
  static MapperConstants from_config(const EngineConfig& cfg);
};

// Depth pair produced by one mapping evaluation. "swing" is the moving foot,
// "other" the planted one (support for a first step, trailing otherwise).
struct DepthPair {
  double swing = 0.0;
  double other = 0.0;
};

double clamp_height(double h, const MapperConstants& k);

// First step out of neutral stance: the swing foot advances 0 -> +z_max/2
// while the support foot mirrors it backward. Exact odd symmetry by
// construction: other == -swing bit for bit.
DepthPair first_step_depths(double h, bool ascending, const MapperConstants& k);

// Consecutive steps: the swing foot sweeps -z_max/2 -> +z_max/2; its descent
// adds a double-frequency sine term so the foot lands moving backward. The
// trailing foot sweeps the plain cosine in the opposite direction.
DepthPair consecutive_depths(double h, bool ascending, const MapperConstants& k);

// Pelvis drop for a planted foot at depth z: how much the hip sinks when the
// leg is extended to reach that depth. Throws LegOverextension if |z| >= leg.
double pelvis_drop(double z, const MapperConstants& k);

// Vertical foot targets: the swing foot tracks a scaled copy of its measured
// height plus the pelvis drop; a planted foot rides the pelvis drop alone.
struct VerticalPair {
  double swing = 0.0;
  double support = 0.0;
};
VerticalPair vertical_targets(double h, double dh, const MapperConstants& k);

// One lerp step toward the desired value.
double smooth_toward(double current, double desired, double alpha);

// The smoothed output state of the animation channels. The engine computes
// desired values per tick from the walk context and calls advance(); during
// stop retraction the desired values are all zero and convergence snaps the
// channels exactly to rest.
class TargetChannels {
 public:
  struct Values {
    double z_left = 0.0, z_right = 0.0;
    double y_left = 0.0, y_right = 0.0;
    double dh = 0.0;
  };

  void advance(const Values& desired, double alpha);
  // Lerp everything toward zero; returns true once max |channel| dropped
  // below eps, at which point all channels are set to exactly zero.
  bool retract(double alpha, double eps);

  const Values& current() const { return cur_; }
  void snap(const Values& v) { cur_ = v; }

 private:
  Values cur_;
};

}  // namespace striderig
