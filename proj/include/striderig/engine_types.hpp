// Per-tick output record of the engine. Kept in its own header so metrics
// and serialization can use it without pulling in the whole engine.
#pragma once

#include <optional>

#include "striderig/frame.hpp"
#include "striderig/gait_fsm.hpp"

namespace striderig {

struct TickRecord {
  double t = 0.0;

  // Animation channels (smoothed).
  double zl = 0.0, zr = 0.0;       // stride depth targets, meters
  double yl = 0.0, yr = 0.0;       // vertical foot targets, meters
  double dh = 0.0;                 // pelvis drop, meters
  double ycurr = 0.0;              // avatar root height = y_init - dh

  // Locomotion state.
  double speed = 0.0;              // forward speed, m/s
  double dist = 0.0;               // integrated distance, meters
  GaitPhase phase_l = GaitPhase::InitialDoubleSupport;
  GaitPhase phase_r = GaitPhase::InitialDoubleSupport;

  // Conditioned signals, carried so metrics can be recomputed from files.
  double hl = 0.0, hr = 0.0;       // filtered floor-relative heights
  double sl = 0.0, sr = 0.0;       // vertical speeds
  std::optional<Foot> swing;       // current swing owner, if any
};

}  // namespace striderig
