// Engine configuration: every tunable in one flat struct, loadable from a
// key = value text file. Defaults reproduce the reference rig, so an empty
// config runs the stock setup.
#pragma once

#include <iosfwd>
#include <string>

namespace striderig {

struct EngineConfig {
  // Sampling and filtering.
  double sample_hz = 30.0;
  double cutoff_hz = 4.0;
  int filter_order = 2;
  // first_difference | central_difference
  std::string velocity_estimator = "first_difference";

  // Rig geometry and animation limits.
  double z_max = 0.6;           // stride depth peak-to-peak/2 per foot, meters
  double y_max = 0.3;           // step height ceiling, meters
  double l_leg = 0.8;           // leg length for the pelvis-drop model, meters
  double vertical_scale = 0.5;  // swing-foot vertical target = scale*h + dh
  double alpha = 0.3;           // per-tick lerp factor for all output channels
  double y_init = 0.0;          // avatar root height when standing tall
  double ik_hint_forward_m = 0.29;  // forward knee-hint offset, metadata only

  // Gait detection thresholds.
  double p1 = 0.1;     // height gate, meters
  double v1 = 0.2;     // lift/settle velocity threshold, m/s
  double v2 = 0.6;     // spike-rejection velocity bound, m/s
  double t_stop = 1.5; // double-support seconds before a stop is declared
  // corroborated | strict | off
  std::string spike_guard = "corroborated";

  // Forward speed model.
  double gain_k = 1.0;
  double speed_cap = 3.5;            // m/s
  double decay_min_s = 0.8;          // floor of the no-event decay timeout
  double decay_period_factor = 1.5;  // timeout = max(factor*step_period, min)
  double speed_decay_alpha = 0.3;    // lerp-to-zero rate while decaying

  // Session-level knobs.
  double goal_m = 50.0;        // distance goal for completion metrics
  double calib_min_s = 3.0;    // standing data required for calibration
  double calib_max_std = 0.02; // motion guard on the calibration window
  double stop_epsilon = 1e-3;  // retraction convergence threshold

  // Derived: full cosine period of the stride curves.
  double period() const { return 4.0 * y_max; }

  // Throws ConfigError when any bound is violated.
  void validate() const;
};

// Parses a key = value file ('#' comments, blank lines allowed). Unknown keys
// are rejected. The optional key H, if present, must equal 4*y_max.
EngineConfig load_config(std::istream& in);
EngineConfig load_config_file(const std::string& path);

}  // namespace striderig
