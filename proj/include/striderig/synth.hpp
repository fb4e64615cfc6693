// Synthetic gait generator with exact ground truth, plus the scorer that
// matches detected events against truth.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "striderig/frame.hpp"
#include "striderig/gait_fsm.hpp"

namespace striderig {

// Half-wave-rectified sinusoid stepper: cadence_hz steps per second total,
// feet alternating, each swing lasting 1/cadence seconds. A standing lead-in
// precedes the active window (for floor calibration) and a standing tail
// follows it (so the last step settles and the stop fires inside the
// session). Heights are gated to complete swings; a partial swing at the end
// of the active window is dropped from both the signal and the truth.
struct SynthGaitSpec {
  double cadence_hz = 1.5;   // steps per second, [0.5, 3]
  double amplitude = 0.25;   // peak lift, meters, [0, 0.35]
  double duration_s = 30.0;  // active stepping window, seconds
  double noise_sigma = 0.0;  // additive Gaussian noise on positions, meters
  double phase_offset = 0.5; // right foot offset, fraction of a foot cycle
  std::uint64_t seed = 0;

  double lead_in_s = 3.0;    // standing prefix
  double tail_s = 2.5;       // standing suffix
  double base_y = 0.08;      // sensor-frame floor height
  double rate_hz = 30.0;

  void validate() const;  // throws InvalidSpec
};

struct SynthResult {
  std::vector<TrackingFrame> frames;
  // Analytic lift-off / peak / touchdown instants per swing, plus one stop
  // event at last-touchdown + 1.5 s when there was at least one swing.
  std::vector<GaitEvent> truth;
};

SynthResult generate(const SynthGaitSpec& spec);

struct DetectionScore {
  double precision = 1.0;
  double recall = 1.0;
  int matched = 0;
  int truth_count = 0;
  int detected_count = 0;
};

// Greedy one-to-one matching of same-type same-foot events within the time
// tolerance (stop events match on time alone: a stop has no natural foot).
// Empty denominators score 1.0 by convention.
DetectionScore score_detection(std::span<const GaitEvent> truth,
                               std::span<const GaitEvent> detected,
                               double tolerance_s = 0.15);

}  // namespace striderig
