// Basic data carriers shared across the pipeline.
#pragma once

namespace striderig {

enum class Foot { Left, Right };

inline const char* foot_letter(Foot f) { return f == Foot::Left ? "L" : "R"; }

// One tracker sample: timestamp plus both ankle heights in the sensor frame.
struct TrackingFrame {
  double t = 0.0;   // seconds
  double ly = 0.0;  // left ankle height, meters
  double ry = 0.0;  // right ankle height, meters
};

// Per-foot signal after floor referencing: filtered height above the floor,
// signed vertical velocity from raw positions, and vertical speed |v|.
struct FootSignal {
  double h = 0.0;  // meters, low-pass filtered, floor-relative
  double v = 0.0;  // m/s, first difference of raw positions
  double s = 0.0;  // m/s, |v|
};

}  // namespace striderig
